//! Finite-dimensional Lie algebras presented by structure constants, with
//! optional symmetric decompositions, the Killing form, Inonu-Wigner
//! contraction and the classical Yang-Baxter checker.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{dense_det, dense_rank, Eliminator};
use crate::scalars::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LieError {
    #[error("generator index {0} out of range (dimension {1})")]
    IndexOutOfRange(usize, usize),
    #[error("tensor over algebra {0:?} used with algebra {1:?}")]
    AlgebraMismatch(String, String),
    #[error("algebra {0:?} carries no symmetric decomposition")]
    NoDecomposition(String),
    #[error("unknown registry algebra {0:?}")]
    UnknownAlgebra(String),
    #[error("unknown generator label {0:?}")]
    UnknownLabel(String),
    #[error("malformed algebra file: {0}")]
    BadFile(String),
}

/// Parity of a generator under the decomposition involution: `H` is fixed,
/// `P` is negated, `None` when the algebra carries no decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    #[serde(rename = "H")]
    H,
    #[serde(rename = "P")]
    P,
    #[serde(rename = "NONE")]
    None,
}

/// A Lie algebra over the rationals: ordered generators and the sparse
/// structure map `(a, b) -> [g_a, g_b]` stored for `a < b` only. Generators
/// are listed with all `H`-parity ones before all `P`-parity ones; that
/// order is also the PBW order used by the enveloping-algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub generators: Vec<Generator>,
    /// brackets[(a,b)] with a < b; each entry is the list of (c, coeff).
    #[serde(with = "bracket_serde")]
    pub structure: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub label: String,
    pub parity: Parity,
}

mod bracket_serde {
    use super::*;
    use serde::ser::SerializeSeq;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        a: usize,
        b: usize,
        terms: Vec<Term>,
    }

    #[derive(Serialize, Deserialize)]
    struct Term {
        c: usize,
        coeff: Rational,
    }

    pub fn serialize<S: serde::Serializer>(
        map: &BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(map.len()))?;
        for ((a, b), terms) in map {
            seq.serialize_element(&Entry {
                a: *a,
                b: *b,
                terms: terms.iter().map(|(c, k)| Term { c: *c, coeff: k.clone() }).collect(),
            })?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(usize, usize), Vec<(usize, Rational)>>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        let mut map = BTreeMap::new();
        for e in entries {
            map.insert((e.a, e.b), e.terms.into_iter().map(|t| (t.c, t.coeff)).collect());
        }
        Ok(map)
    }
}

/// Report of the structural checks on an algebra presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub jacobi: bool,
    pub decomposition: bool,
    pub span_pp: bool,
}

impl ValidationReport {
    pub fn all_ok(&self) -> bool {
        self.jacobi && self.decomposition && self.span_pp
    }
}

impl LieAlgebraSpec {
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn parity(&self, idx: usize) -> Parity {
        self.generators[idx].parity
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.generators[idx].label
    }

    pub fn index_of(&self, label: &str) -> Result<usize, LieError> {
        self.generators
            .iter()
            .position(|g| g.label == label)
            .ok_or_else(|| LieError::UnknownLabel(label.to_string()))
    }

    pub fn has_decomposition(&self) -> bool {
        self.generators.iter().any(|g| g.parity != Parity::None)
    }

    pub fn h_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::H).collect()
    }

    pub fn p_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == Parity::P).collect()
    }

    /// `[g_a, g_b]` as a sparse coefficient vector, any index order.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Vec<(usize, Rational)> {
        if a == b {
            return Vec::new();
        }
        let (key, sign) = if a < b { ((a, b), false) } else { ((b, a), true) };
        let terms = self.structure.get(&key).cloned().unwrap_or_default();
        if sign {
            terms.into_iter().map(|(c, k)| (c, -k)).collect()
        } else {
            terms
        }
    }

    fn check_indices(&self) -> Result<(), LieError> {
        let d = self.dim();
        for ((a, b), terms) in &self.structure {
            for idx in [*a, *b].into_iter().chain(terms.iter().map(|(c, _)| *c)) {
                if idx >= d {
                    return Err(LieError::IndexOutOfRange(idx, d));
                }
            }
        }
        Ok(())
    }

    /// Structural validation: exact Jacobi on all triples, the decomposition
    /// bracket rules, and the rank test that `span [p, p]` equals the span of
    /// the `H` generators (vacuous without a decomposition).
    pub fn validate(&self) -> Result<ValidationReport, LieError> {
        self.check_indices()?;
        let d = self.dim();

        let mut jacobi = true;
        'outer: for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        for (m, k) in self.bracket_basis(x, y) {
                            for (e, k2) in self.bracket_basis(m, z) {
                                *acc.entry(e).or_insert_with(Rational::zero) += &(&k * &k2);
                            }
                        }
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        jacobi = false;
                        break 'outer;
                    }
                }
            }
        }

        let mut decomposition = true;
        let mut span_pp = true;
        if self.has_decomposition() {
            if self.generators.iter().any(|g| g.parity == Parity::None) {
                decomposition = false;
            }
            let sector_of = |idx: usize| self.parity(idx);
            for a in 0..d {
                for b in a + 1..d {
                    let expected = match (sector_of(a), sector_of(b)) {
                        (Parity::H, Parity::H) => Parity::H,
                        (Parity::P, Parity::P) => Parity::H,
                        _ => Parity::P,
                    };
                    for (c, k) in self.bracket_basis(a, b) {
                        if !k.is_zero() && sector_of(c) != expected {
                            decomposition = false;
                        }
                    }
                }
            }

            let h = self.h_indices();
            let p = self.p_indices();
            let mut rows = Vec::new();
            for (i, &a) in p.iter().enumerate() {
                for &b in p.iter().skip(i + 1) {
                    let mut row = vec![Rational::zero(); d];
                    for (c, k) in self.bracket_basis(a, b) {
                        row[c] = k;
                    }
                    rows.push(row);
                }
            }
            span_pp = dense_rank(&rows) == h.len();
        }

        Ok(ValidationReport { jacobi, decomposition, span_pp })
    }

    /// ad_x as a dense matrix: column b holds the coefficients of [g_x, g_b].
    fn ad_matrix(&self, x: usize) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let mut m = vec![vec![Rational::zero(); d]; d];
        for b in 0..d {
            for (c, k) in self.bracket_basis(x, b) {
                m[c][b] = k;
            }
        }
        m
    }

    /// Killing form K(x, y) = trace(ad_x ad_y) on the generator basis.
    pub fn killing_form(&self) -> Vec<Vec<Rational>> {
        let d = self.dim();
        let ads: Vec<_> = (0..d).map(|x| self.ad_matrix(x)).collect();
        let mut k = vec![vec![Rational::zero(); d]; d];
        for a in 0..d {
            for b in a..d {
                let mut tr = Rational::zero();
                for i in 0..d {
                    for j in 0..d {
                        if !ads[a][i][j].is_zero() && !ads[b][j][i].is_zero() {
                            tr += &(&ads[a][i][j] * &ads[b][j][i]);
                        }
                    }
                }
                k[a][b] = tr.clone();
                k[b][a] = tr;
            }
        }
        k
    }

    pub fn killing_det(&self) -> Rational {
        dense_det(&self.killing_form())
    }

    /// Inonu-Wigner contraction along the decomposition: `[H,H]` and `[H,P]`
    /// structure constants are copied, every `[P,P]` bracket becomes zero.
    pub fn iw_contract(&self) -> Result<LieAlgebraSpec, LieError> {
        if !self.has_decomposition() {
            return Err(LieError::NoDecomposition(self.name.clone()));
        }
        let mut structure = BTreeMap::new();
        for ((a, b), terms) in &self.structure {
            if self.parity(*a) == Parity::P && self.parity(*b) == Parity::P {
                continue;
            }
            structure.insert((*a, *b), terms.clone());
        }
        Ok(LieAlgebraSpec {
            name: format!("{}-contracted", self.name),
            generators: self.generators.clone(),
            structure,
        })
    }

    /// Same generators (labels and parities) and same structure constants.
    pub fn same_structure(&self, other: &LieAlgebraSpec) -> bool {
        self.generators == other.generators && self.structure == other.structure
    }
}

impl fmt::Display for LieAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

/// Sparse element of g^{otimes k} with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieTensor {
    pub algebra: String,
    pub rank: usize,
    pub entries: BTreeMap<Vec<usize>, Rational>,
}

impl LieTensor {
    pub fn zero(algebra: &LieAlgebraSpec, rank: usize) -> Self {
        assert!(rank >= 1);
        LieTensor { algebra: algebra.name.clone(), rank, entries: BTreeMap::new() }
    }

    pub fn basis(algebra: &LieAlgebraSpec, idx: usize) -> Self {
        let mut t = LieTensor::zero(algebra, 1);
        t.insert(vec![idx], Rational::one());
        t
    }

    pub fn insert(&mut self, key: Vec<usize>, coeff: Rational) {
        assert_eq!(key.len(), self.rank);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.entries.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_algebra(&self, spec: &LieAlgebraSpec) -> Result<(), LieError> {
        if self.algebra != spec.name {
            return Err(LieError::AlgebraMismatch(self.algebra.clone(), spec.name.clone()));
        }
        for key in self.entries.keys() {
            for &i in key {
                if i >= spec.dim() {
                    return Err(LieError::IndexOutOfRange(i, spec.dim()));
                }
            }
        }
        Ok(())
    }
}

/// Bracket of two rank-1 tensors via the structure constants.
pub fn bracket(
    spec: &LieAlgebraSpec,
    x: &LieTensor,
    y: &LieTensor,
) -> Result<LieTensor, LieError> {
    x.check_algebra(spec)?;
    y.check_algebra(spec)?;
    assert_eq!(x.rank, 1);
    assert_eq!(y.rank, 1);
    let mut out = LieTensor::zero(spec, 1);
    for (kx, cx) in &x.entries {
        for (ky, cy) in &y.entries {
            for (c, k) in spec.bracket_basis(kx[0], ky[0]) {
                out.insert(vec![c], &(cx * cy) * &k);
            }
        }
    }
    Ok(out)
}

/// `[[r, r]] = [r12, r13] + [r12, r23] + [r13, r23]` for rank-2 `r`.
pub fn cybe_bracket(spec: &LieAlgebraSpec, r: &LieTensor) -> Result<LieTensor, LieError> {
    r.check_algebra(spec)?;
    assert_eq!(r.rank, 2);
    let mut out = LieTensor::zero(spec, 3);
    for (k1, c1) in &r.entries {
        let (a, b) = (k1[0], k1[1]);
        for (k2, c2) in &r.entries {
            let (c, d) = (k2[0], k2[1]);
            let coeff = c1 * c2;
            // [r12, r13]: bracket in leg 1
            for (m, k) in spec.bracket_basis(a, c) {
                out.insert(vec![m, b, d], &coeff * &k);
            }
            // [r12, r23]: bracket in leg 2
            for (m, k) in spec.bracket_basis(b, c) {
                out.insert(vec![a, m, d], &coeff * &k);
            }
            // [r13, r23]: bracket in leg 3
            for (m, k) in spec.bracket_basis(b, d) {
                out.insert(vec![a, c, m], &coeff * &k);
            }
        }
    }
    Ok(out)
}

/// True iff the diagonal adjoint action of every generator annihilates `T`;
/// otherwise the first violating generator index is returned.
pub fn ad_invariant(spec: &LieAlgebraSpec, t: &LieTensor) -> Result<(bool, Option<usize>), LieError> {
    t.check_algebra(spec)?;
    for x in 0..spec.dim() {
        let mut acted = LieTensor::zero(spec, t.rank);
        for (key, coeff) in &t.entries {
            for (leg, &b) in key.iter().enumerate() {
                for (c, k) in spec.bracket_basis(x, b) {
                    let mut nk = key.clone();
                    nk[leg] = c;
                    acted.insert(nk, coeff * &k);
                }
            }
        }
        if !acted.is_zero() {
            return Ok((false, Some(x)));
        }
    }
    Ok((true, None))
}

/// Exact nullspace-based orthogonality helper used by tests: rank of the
/// span of a list of coefficient vectors.
pub fn span_rank(vectors: &[Vec<Rational>]) -> usize {
    dense_rank(vectors)
}

/// H-invariance and `[p,p]`-invariance agree on the registry pairs; this
/// helper exposes the stacked action nullspace dimension for such checks.
pub fn action_nullspace_dim(
    spec: &LieAlgebraSpec,
    acting: &[usize],
    rank: usize,
) -> usize {
    // basis of g^{otimes rank} indexed lexicographically
    let d = spec.dim();
    let ncols = d.pow(rank as u32);
    let index_of = |key: &[usize]| key.iter().fold(0usize, |acc, &i| acc * d + i);
    let mut elim = Eliminator::new(ncols);
    let mut keys = vec![vec![0usize; rank]];
    for pos in 0..rank {
        let mut next = Vec::new();
        for k in keys {
            for i in 0..d {
                let mut nk = k.clone();
                nk[pos] = i;
                next.push(nk);
            }
        }
        keys = next;
    }
    for &x in acting {
        // action matrix rows indexed by output slot, columns by input slot
        let mut rows: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
        for key in &keys {
            let col = index_of(key);
            for (leg, &b) in key.iter().enumerate() {
                for (c, k) in spec.bracket_basis(x, b) {
                    let mut nk = key.clone();
                    nk[leg] = c;
                    *rows
                        .entry(index_of(&nk))
                        .or_default()
                        .entry(col)
                        .or_insert_with(Rational::zero) += &k;
                }
            }
        }
        for (_, row) in rows {
            elim.push_homogeneous(crate::linalg::row_from_map(row));
        }
    }
    elim.kernel_dim()
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

struct Builder {
    name: String,
    generators: Vec<Generator>,
    structure: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl Builder {
    fn new(name: &str) -> Self {
        Builder { name: name.to_string(), generators: Vec::new(), structure: BTreeMap::new() }
    }

    fn gen(&mut self, label: &str, parity: Parity) -> usize {
        self.generators.push(Generator { label: label.to_string(), parity });
        self.generators.len() - 1
    }

    fn set(&mut self, a: usize, b: usize, terms: Vec<(usize, Rational)>) {
        let terms: Vec<_> = terms.into_iter().filter(|(_, k)| !k.is_zero()).collect();
        if terms.is_empty() {
            return;
        }
        if a < b {
            self.structure.insert((a, b), terms);
        } else {
            assert!(b < a);
            self.structure
                .insert((b, a), terms.into_iter().map(|(c, k)| (c, -k)).collect());
        }
    }

    fn build(self) -> LieAlgebraSpec {
        LieAlgebraSpec { name: self.name, generators: self.generators, structure: self.structure }
    }
}

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

/// so(3) in the raw matrix basis M_ab = E_ab - E_ba, 1 <= a < b <= 3.
fn build_so3() -> LieAlgebraSpec {
    let mut b = Builder::new("so3");
    let m12 = b.gen("M12", Parity::None);
    let m13 = b.gen("M13", Parity::None);
    let m23 = b.gen("M23", Parity::None);
    b.set(m12, m13, vec![(m23, int(-1))]);
    b.set(m12, m23, vec![(m13, int(1))]);
    b.set(m13, m23, vec![(m12, int(-1))]);
    b.build()
}

/// so(3) with the so(2) symmetric decomposition; the obstruction pair.
fn build_so3_so2() -> LieAlgebraSpec {
    let mut b = Builder::new("so3-so2");
    let m = b.gen("M12", Parity::H);
    let p1 = b.gen("P1", Parity::P);
    let p2 = b.gen("P2", Parity::P);
    b.set(m, p1, vec![(p2, int(1))]);
    b.set(m, p2, vec![(p1, int(-1))]);
    b.set(p1, p2, vec![(m, int(1))]);
    b.build()
}

/// sl(2) with the AI decomposition: h spanned by the antisymmetric
/// generator, p by the symmetric traceless ones.
fn build_sl2() -> LieAlgebraSpec {
    let mut b = Builder::new("sl2");
    let a = b.gen("A", Parity::H);
    let s1 = b.gen("S1", Parity::P);
    let s2 = b.gen("S2", Parity::P);
    b.set(a, s1, vec![(s2, int(-2))]);
    b.set(a, s2, vec![(s1, int(2))]);
    b.set(s1, s2, vec![(a, int(2))]);
    b.build()
}

/// Common core of iso(n) and its semisimple parent: rotation sector
/// M_ij (1 <= i < j <= n-1), boosts N_i, translations P_i and E. `pp_scale`
/// is the coefficient of [P_i, P_j] = pp_scale * M_ij and
/// [P_i, E] = pp_scale * N_i; zero gives the contracted algebra.
fn build_kappa_basis(name: &str, n: usize, pp_scale: i64) -> LieAlgebraSpec {
    assert!(n >= 3);
    let s = n - 1; // spatial index range 1..=s
    let mut b = Builder::new(name);
    let mut m = BTreeMap::new();
    for i in 1..=s {
        for j in i + 1..=s {
            m.insert((i, j), b.gen(&format!("M{i}{j}"), Parity::H));
        }
    }
    let n_gens: Vec<usize> = (1..=s).map(|i| b.gen(&format!("N{i}"), Parity::H)).collect();
    let p_gens: Vec<usize> = (1..=s).map(|i| b.gen(&format!("P{i}"), Parity::P)).collect();
    let e = b.gen("E", Parity::P);

    // m_idx(i, j) with sign for i > j
    let m_idx = |i: usize, j: usize| -> Option<(usize, i64)> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => Some((m[&(i, j)], 1)),
            Greater => Some((m[&(j, i)], -1)),
            Equal => None,
        }
    };
    let delta = |i: usize, j: usize| if i == j { 1i64 } else { 0 };

    // [M_ij, M_kl] = d_ik M_jl - d_jk M_il - d_il M_jk + d_jl M_ik
    let pairs: Vec<(usize, usize)> = m.keys().cloned().collect();
    for (ai, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in pairs.iter().skip(ai + 1) {
            let mut terms: BTreeMap<usize, i64> = BTreeMap::new();
            for (d, a, bb) in [
                (delta(i, k), j, l),
                (-delta(j, k), i, l),
                (-delta(i, l), j, k),
                (delta(j, l), i, k),
            ] {
                if d != 0 {
                    if let Some((idx, sign)) = m_idx(a, bb) {
                        *terms.entry(idx).or_insert(0) += d * sign;
                    }
                }
            }
            b.set(
                m[&(i, j)],
                m[&(k, l)],
                terms.into_iter().map(|(c, k)| (c, int(k))).collect(),
            );
        }
    }
    // [M_ij, N_k] = d_ik N_j - d_jk N_i ; same pattern on P_k; [M_ij, E] = 0
    for &(i, j) in &pairs {
        for k in 1..=s {
            let mut nt = Vec::new();
            let mut pt = Vec::new();
            if delta(i, k) != 0 {
                nt.push((n_gens[j - 1], int(1)));
                pt.push((p_gens[j - 1], int(1)));
            }
            if delta(j, k) != 0 {
                nt.push((n_gens[i - 1], int(-1)));
                pt.push((p_gens[i - 1], int(-1)));
            }
            b.set(m[&(i, j)], n_gens[k - 1], nt);
            b.set(m[&(i, j)], p_gens[k - 1], pt);
        }
    }
    // [N_i, N_j] = -M_ij ; [N_i, P_j] = d_ij E ; [N_i, E] = P_i
    for i in 1..=s {
        for j in i + 1..=s {
            b.set(n_gens[i - 1], n_gens[j - 1], vec![(m[&(i, j)], int(-1))]);
        }
        for j in 1..=s {
            if i == j {
                b.set(n_gens[i - 1], p_gens[j - 1], vec![(e, int(1))]);
            }
        }
        b.set(n_gens[i - 1], e, vec![(p_gens[i - 1], int(1))]);
    }
    // [P_i, P_j] = pp_scale M_ij ; [P_i, E] = pp_scale N_i
    if pp_scale != 0 {
        for i in 1..=s {
            for j in i + 1..=s {
                b.set(p_gens[i - 1], p_gens[j - 1], vec![(m[&(i, j)], int(pp_scale))]);
            }
            b.set(p_gens[i - 1], e, vec![(n_gens[i - 1], int(pp_scale))]);
        }
    }
    b.build()
}

/// Diagonal symmetric pair so(3) + so(3) over the diagonal subalgebra.
fn build_diag_so3() -> LieAlgebraSpec {
    let mut b = Builder::new("so3so3-diag");
    let h: Vec<usize> = (1..=3).map(|i| b.gen(&format!("H{i}"), Parity::H)).collect();
    let q: Vec<usize> = (1..=3).map(|i| b.gen(&format!("Q{i}"), Parity::P)).collect();
    let eps = |i: usize, j: usize, k: usize| -> i64 {
        match (i, j, k) {
            (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1,
            (1, 3, 2) | (3, 2, 1) | (2, 1, 3) => -1,
            _ => 0,
        }
    };
    for i in 1..=3 {
        for j in 1..=3 {
            if i == j {
                continue;
            }
            for k in 1..=3 {
                let e = eps(i, j, k);
                if e == 0 {
                    continue;
                }
                if i < j {
                    b.set(h[i - 1], h[j - 1], vec![(h[k - 1], int(e))]);
                    b.set(q[i - 1], q[j - 1], vec![(h[k - 1], int(e))]);
                }
                b.set(h[i - 1], q[j - 1], vec![(q[k - 1], int(e))]);
            }
        }
    }
    b.build()
}

/// Built-in algebras. `so4`/`so5` are presented in the same generator basis
/// as `iso3`/`iso4`, so that contraction is literally the removal of the
/// `[P,P]` structure constants.
pub fn registry(name: &str) -> Result<LieAlgebraSpec, LieError> {
    match name {
        "so3" => Ok(build_so3()),
        "so4" => Ok(build_kappa_basis("so4", 3, 1)),
        "so5" => Ok(build_kappa_basis("so5", 4, 1)),
        "iso3" => Ok(build_kappa_basis("iso3", 3, 0)),
        "iso4" => Ok(build_kappa_basis("iso4", 4, 0)),
        "sl2" => Ok(build_sl2()),
        "so3-so2" => Ok(build_so3_so2()),
        "so3so3-diag" => Ok(build_diag_so3()),
        _ => Err(LieError::UnknownAlgebra(name.to_string())),
    }
}

pub const REGISTRY_NAMES: [&str; 8] =
    ["so3", "so4", "so5", "iso3", "iso4", "sl2", "so3-so2", "so3so3-diag"];

/// Declared `span [p,p] = h` verdict per registry entry: true for the
/// semisimple pairs (Lemma-style generation) and vacuously for algebras
/// without a decomposition; false for the contracted algebras, whose
/// translation sector is abelian.
pub fn expected_span_pp(name: &str) -> bool {
    !matches!(name, "iso3" | "iso4")
}

/// Load an algebra from its JSON file form.
pub fn from_json(text: &str) -> Result<LieAlgebraSpec, LieError> {
    let spec: LieAlgebraSpec =
        serde_json::from_str(text).map_err(|e| LieError::BadFile(e.to_string()))?;
    spec.check_indices()?;
    Ok(spec)
}
