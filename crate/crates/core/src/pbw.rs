//! The enveloping-algebra engine: PBW normal ordering for undeformed and
//! series-deformed commutation rules, tensor powers, element exponentials,
//! generator-determined maps, and the operational contractibility grading.
//!
//! Generators are totally ordered with every H-parity generator before every
//! P-parity one, so the per-monomial count of P factors realizes the second
//! index of the bifiltration with no subspace solve.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::lie::{LieAlgebraSpec, Parity};
use crate::scalars::{Rational, Series};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PbwError {
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("tensor ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("truncation orders differ: {0} vs {1}")]
    MismatchedOrder(usize, usize),
    #[error("rewrite system is deformed but an undeformed one is required")]
    DeformedInput,
    #[error("generator order must place every H generator before every P generator")]
    BadGeneratorOrder,
    #[error("order-0 correction for ({0},{1}) does not match the Lie bracket")]
    CorrectionMismatch(usize, usize),
    #[error("order-0 correction for ({0},{1}) has a monomial of degree > 1")]
    UnboundedCorrection(usize, usize),
    #[error("rewrite rules are inconsistent on the word {0:?}")]
    InconsistentRules(Vec<usize>),
    #[error("exponential argument has a term of lambda-valuation 0")]
    NonNilpotentArgument,
    #[error("invalid leg placement {0:?} into rank {1}")]
    BadPlacement(String, usize),
    #[error("derivation maps must have rank-1 images")]
    BadDerivationRank,
    #[error("generator {0} has no image under this map")]
    MissingImage(usize),
}

/// A sorted PBW word (multiset of generator indices).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(idx: usize) -> Self {
        Monomial(vec![idx])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn p_degree(&self, algebra: &LieAlgebraSpec) -> usize {
        self.0.iter().filter(|&&i| algebra.parity(i) == Parity::P).count()
    }
}

/// Sparse element of the k-fold tensor power of the (possibly deformed)
/// envelope, with truncated-series coefficients. Rank 1 is a plain element.
/// Invariant: keys are sorted monomial tuples and no zero series is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub rank: usize,
    pub order: usize,
    pub terms: BTreeMap<Vec<Monomial>, Series>,
}

pub type Element = Tensor;

impl Tensor {
    pub fn zero(rank: usize, order: usize) -> Self {
        Tensor { rank, order, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize, order: usize) -> Self {
        let mut t = Tensor::zero(rank, order);
        t.terms.insert(vec![Monomial::unit(); rank], Series::one(order));
        t
    }

    pub fn generator(idx: usize, order: usize) -> Self {
        let mut t = Tensor::zero(1, order);
        t.terms.insert(vec![Monomial::gen(idx)], Series::one(order));
        t
    }

    pub fn monomial(key: Vec<Monomial>, coeff: Series) -> Self {
        let rank = key.len();
        let order = coeff.order();
        let mut t = Tensor::zero(rank, order);
        t.add_term(key, coeff);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Monomial>, coeff: Series) {
        assert_eq!(key.len(), self.rank);
        assert_eq!(coeff.order(), self.order);
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.rank, other.rank);
        assert_eq!(self.order, other.order);
        let mut out = self.clone();
        for (k, s) in &other.terms {
            out.add_term(k.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Tensor {
        Tensor {
            rank: self.rank,
            order: self.order,
            terms: self.terms.iter().map(|(k, s)| (k.clone(), -s)).collect(),
        }
    }

    pub fn scale(&self, s: &Series) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn scale_rat(&self, r: &Rational) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.order);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.scale(r));
        }
        out
    }

    /// Coefficient extraction: the rank-k tensor of plain monomials sitting
    /// at the given lambda order, re-embedded at order 0 of a fresh series.
    pub fn lambda_coefficient(&self, n: usize) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.order);
        for (k, s) in &self.terms {
            let c = s.coeff(n);
            if !c.is_zero() {
                out.add_term(k.clone(), Series::constant(c.clone(), self.order));
            }
        }
        out
    }

    /// Keep only terms whose series valuation is at least `n`.
    pub fn truncate_below(&self, n: usize) -> Tensor {
        let mut out = Tensor::zero(self.rank, self.order);
        for (k, s) in &self.terms {
            let mut coeffs = s.coeffs().to_vec();
            let cut = n.min(coeffs.len());
            for c in coeffs.iter_mut().take(cut) {
                *c = Rational::zero();
            }
            out.add_term(k.clone(), Series::from_coeffs(coeffs));
        }
        out
    }

    /// Lowest lambda order carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.terms.values().filter_map(Series::valuation).min()
    }

    pub fn total_p_degree(&self, key: &[Monomial], algebra: &LieAlgebraSpec) -> usize {
        key.iter().map(|m| m.p_degree(algebra)).sum()
    }

    /// Swap the two legs of a rank-2 tensor.
    pub fn swap_legs(&self) -> Tensor {
        assert_eq!(self.rank, 2);
        let mut out = Tensor::zero(2, self.order);
        for (k, s) in &self.terms {
            out.add_term(vec![k[1].clone(), k[0].clone()], s.clone());
        }
        out
    }

    /// Permute the legs of a rank-k tensor: new leg i = old leg perm[i].
    pub fn permute_legs(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.rank);
        let mut out = Tensor::zero(self.rank, self.order);
        for (k, s) in &self.terms {
            let nk: Vec<Monomial> = perm.iter().map(|&i| k[i].clone()).collect();
            out.add_term(nk, s.clone());
        }
        out
    }

    pub fn serialize_with(&self, algebra: &LieAlgebraSpec) -> serde_json::Value {
        #[derive(Serialize)]
        struct Term {
            monomials: Vec<Vec<String>>,
            coeff: Series,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(k, s)| Term {
                monomials: k
                    .iter()
                    .map(|m| m.0.iter().map(|&i| algebra.label(i).to_string()).collect())
                    .collect(),
                coeff: s.clone(),
            })
            .collect();
        serde_json::json!({ "rank": self.rank, "terms": terms })
    }

    pub fn deserialize_with(
        value: &serde_json::Value,
        algebra: &LieAlgebraSpec,
        order: usize,
    ) -> Result<Tensor, String> {
        let rank = value["rank"].as_u64().ok_or("missing rank")? as usize;
        let mut out = Tensor::zero(rank, order);
        for term in value["terms"].as_array().ok_or("missing terms")? {
            let monos = term["monomials"].as_array().ok_or("missing monomials")?;
            if monos.len() != rank {
                return Err(format!("term with {} legs in rank-{rank} tensor", monos.len()));
            }
            let mut key = Vec::with_capacity(rank);
            for leg in monos {
                let mut word = Vec::new();
                for lbl in leg.as_array().ok_or("leg must be a list")? {
                    let lbl = lbl.as_str().ok_or("labels must be strings")?;
                    word.push(algebra.index_of(lbl).map_err(|e| e.to_string())?);
                }
                key.push(Monomial(word));
            }
            let coeff: Series =
                serde_json::from_value(term["coeff"].clone()).map_err(|e| e.to_string())?;
            if coeff.order() != order {
                return Err("coefficient order mismatch".into());
            }
            out.add_term(key, coeff);
        }
        Ok(out)
    }
}

/// Rewriting rules `g_a g_b = g_b g_a + corrections(a, b)` for `a` after `b`
/// in the PBW order, with series-valued corrections. The order-0 part of
/// every correction is the Lie bracket (degree <= 1, so order-0 rewriting
/// terminates); positive-order parts may raise the degree but spend
/// lambda-budget, which is capped by the truncation.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub algebra: Arc<LieAlgebraSpec>,
    pub order: usize,
    corrections: BTreeMap<(usize, usize), Element>,
    pub deformed: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Strategy {
    Leftmost,
    Rightmost,
}

impl RewriteSystem {
    /// The undeformed envelope U(g) at the given truncation.
    pub fn undeformed(algebra: Arc<LieAlgebraSpec>, order: usize) -> Result<Self, PbwError> {
        let mut corrections = BTreeMap::new();
        for a in 0..algebra.dim() {
            for b in 0..a {
                let mut corr = Tensor::zero(1, order);
                for (c, k) in algebra.bracket_basis(a, b) {
                    corr.add_term(vec![Monomial::gen(c)], Series::constant(k, order));
                }
                if !corr.is_zero() {
                    corrections.insert((a, b), corr);
                }
            }
        }
        Self::with_corrections(algebra, order, corrections, false)
    }

    /// A deformed system. `corrections` must cover every out-of-order pair
    /// whose rewrite is nontrivial; order-0 parts must reproduce the Lie
    /// bracket of the algebra and the rule set must pass the diamond check.
    pub fn deformed(
        algebra: Arc<LieAlgebraSpec>,
        order: usize,
        corrections: BTreeMap<(usize, usize), Element>,
    ) -> Result<Self, PbwError> {
        Self::with_corrections(algebra, order, corrections, true)
    }

    fn with_corrections(
        algebra: Arc<LieAlgebraSpec>,
        order: usize,
        corrections: BTreeMap<(usize, usize), Element>,
        check_deformed: bool,
    ) -> Result<Self, PbwError> {
        let mut seen_p = false;
        for i in 0..algebra.dim() {
            match algebra.parity(i) {
                Parity::P => seen_p = true,
                _ if seen_p => return Err(PbwError::BadGeneratorOrder),
                _ => {}
            }
        }
        for ((a, b), corr) in &corrections {
            if *a >= algebra.dim() || *b >= algebra.dim() {
                return Err(PbwError::UnknownGenerator((*a).max(*b)));
            }
            assert!(a > b, "corrections are keyed by out-of-order pairs");
            let mut order0: BTreeMap<usize, Rational> = BTreeMap::new();
            for (key, s) in &corr.terms {
                let c0 = s.coeff(0);
                if !c0.is_zero() {
                    if key[0].degree() > 1 {
                        return Err(PbwError::UnboundedCorrection(*a, *b));
                    }
                    if key[0].degree() == 1 {
                        order0.insert(key[0].0[0], c0.clone());
                    }
                    // degree-0 order-0 corrections (central constants) are
                    // permitted by the termination guard but unused here
                }
            }
            let bracket: BTreeMap<usize, Rational> =
                algebra.bracket_basis(*a, *b).into_iter().collect();
            if order0 != bracket {
                return Err(PbwError::CorrectionMismatch(*a, *b));
            }
        }
        let deformed = check_deformed
            && corrections.values().any(|c| {
                c.terms.values().any(|s| (1..=order).any(|k| !s.coeff(k).is_zero()))
            });
        let rs = RewriteSystem { algebra, order, corrections, deformed };
        rs.diamond_check()?;
        Ok(rs)
    }

    /// Associativity of the rewriting on all generator triples: the leftmost
    /// and rightmost reduction strategies must agree modulo the truncation.
    fn diamond_check(&self) -> Result<(), PbwError> {
        let d = self.algebra.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let word = vec![a, b, c];
                    let left = self.normal_form_with(&word, &Series::one(self.order), Strategy::Leftmost);
                    let right =
                        self.normal_form_with(&word, &Series::one(self.order), Strategy::Rightmost);
                    if left != right {
                        return Err(PbwError::InconsistentRules(word));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn correction(&self, a: usize, b: usize) -> Option<&Element> {
        self.corrections.get(&(a, b))
    }

    /// PBW normal form of an arbitrary word with the given coefficient.
    pub fn normal_form(&self, word: &[usize], coeff: &Series) -> Result<Element, PbwError> {
        for &g in word {
            if g >= self.algebra.dim() {
                return Err(PbwError::UnknownGenerator(g));
            }
        }
        if coeff.order() != self.order {
            return Err(PbwError::MismatchedOrder(coeff.order(), self.order));
        }
        Ok(self.normal_form_with(word, coeff, Strategy::Leftmost))
    }

    fn normal_form_with(&self, word: &[usize], coeff: &Series, strategy: Strategy) -> Element {
        let mut out = Tensor::zero(1, self.order);
        let mut work: Vec<(Vec<usize>, Series)> = vec![(word.to_vec(), coeff.clone())];
        while let Some((w, c)) = work.pop() {
            if c.is_zero() {
                continue;
            }
            let inversion = match strategy {
                Strategy::Leftmost => w.windows(2).position(|p| p[0] > p[1]),
                Strategy::Rightmost => w.windows(2).rposition(|p| p[0] > p[1]),
            };
            match inversion {
                None => out.add_term(vec![Monomial(w)], c),
                Some(i) => {
                    let (a, b) = (w[i], w[i + 1]);
                    let mut swapped = w.clone();
                    swapped.swap(i, i + 1);
                    work.push((swapped, c.clone()));
                    if let Some(corr) = self.corrections.get(&(a, b)) {
                        for (key, s) in &corr.terms {
                            let mut nw = Vec::with_capacity(w.len() + key[0].degree());
                            nw.extend_from_slice(&w[..i]);
                            nw.extend_from_slice(&key[0].0);
                            nw.extend_from_slice(&w[i + 2..]);
                            work.push((nw, &c * s));
                        }
                    }
                }
            }
        }
        out
    }

    /// Product of tensors of equal rank, leg by leg, in normal form.
    pub fn mul(&self, x: &Tensor, y: &Tensor) -> Result<Tensor, PbwError> {
        if x.rank != y.rank {
            return Err(PbwError::RankMismatch(x.rank, y.rank));
        }
        if x.order != self.order || y.order != self.order {
            return Err(PbwError::MismatchedOrder(x.order.max(y.order), self.order));
        }
        let mut out = Tensor::zero(x.rank, self.order);
        for (kx, sx) in &x.terms {
            for (ky, sy) in &y.terms {
                let coeff = sx * sy;
                if coeff.is_zero() {
                    continue;
                }
                // per-leg normal forms of the concatenated words
                let legs: Vec<Element> = kx
                    .iter()
                    .zip(ky)
                    .map(|(mx, my)| {
                        let mut w = mx.0.clone();
                        w.extend_from_slice(&my.0);
                        self.normal_form_with(&w, &Series::one(self.order), Strategy::Leftmost)
                    })
                    .collect();
                // outer product over the per-leg expansions
                let mut partial: Vec<(Vec<Monomial>, Series)> = vec![(Vec::new(), coeff)];
                for leg in &legs {
                    let mut next = Vec::with_capacity(partial.len() * leg.terms.len());
                    for (key, s) in &partial {
                        for (mk, ms) in &leg.terms {
                            let prod = s * ms;
                            if prod.is_zero() {
                                continue;
                            }
                            let mut nk = key.clone();
                            nk.push(mk[0].clone());
                            next.push((nk, prod));
                        }
                    }
                    partial = next;
                }
                for (key, s) in partial {
                    out.add_term(key, s);
                }
            }
        }
        Ok(out)
    }

    /// Commutator [x, y] in the (possibly deformed) algebra.
    pub fn commutator(&self, x: &Tensor, y: &Tensor) -> Result<Tensor, PbwError> {
        Ok(self.mul(x, y)?.sub(&self.mul(y, x)?))
    }

    /// exp(x) truncated; every term of `x` must carry a positive lambda
    /// power, so the sum stops at the truncation order.
    pub fn exp(&self, x: &Tensor) -> Result<Tensor, PbwError> {
        if x.terms.values().any(|s| s.valuation() == Some(0)) {
            return Err(PbwError::NonNilpotentArgument);
        }
        let mut out = Tensor::one(x.rank, self.order);
        let mut power = Tensor::one(x.rank, self.order);
        for k in 1..=self.order {
            power = self.mul(&power, x)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale_rat(&Rational::inv_factorial(k)));
        }
        Ok(out)
    }

    /// Multiplicative inverse of a tensor congruent to the unit mod lambda.
    pub fn inverse(&self, x: &Tensor) -> Result<Tensor, PbwError> {
        let unit = Tensor::one(x.rank, self.order);
        let a = x.sub(&unit);
        assert!(
            a.valuation().map_or(true, |v| v >= 1),
            "inverse requires a tensor congruent to the unit mod lambda"
        );
        let mut out = Tensor::one(x.rank, self.order);
        let mut power = Tensor::one(x.rank, self.order);
        for _ in 1..=self.order {
            power = self.mul(&power, &a)?;
            if power.is_zero() {
                break;
            }
            power = power.neg();
            out = out.add(&power);
        }
        Ok(out)
    }
}

/// Outcome of a contractibility check: per-violation witnesses are the
/// lambda order and the offending monomial tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractibilityReport {
    pub ok: bool,
    pub witnesses: Vec<(usize, Vec<Monomial>)>,
}

/// True iff every lambda-order-n coefficient of `x` only carries monomial
/// tuples of total P-degree at most `n + offset`.
pub fn contractibility_check(
    x: &Tensor,
    algebra: &LieAlgebraSpec,
    offset: i64,
) -> ContractibilityReport {
    let mut witnesses = Vec::new();
    for (key, s) in &x.terms {
        let p = x.total_p_degree(key, algebra) as i64;
        for n in 0..=x.order {
            if !s.coeff(n).is_zero() && p > n as i64 + offset {
                witnesses.push((n, key.clone()));
                break;
            }
        }
    }
    ContractibilityReport { ok: witnesses.is_empty(), witnesses }
}

/// Insert unit legs into a rank-2 tensor, or swap its legs.
pub fn leg_embed(x: &Tensor, placement: &str, target_rank: usize) -> Result<Tensor, PbwError> {
    if x.rank != 2 {
        return Err(PbwError::RankMismatch(x.rank, 2));
    }
    let positions: [usize; 2] = match (placement, target_rank) {
        ("12", 3) => [0, 1],
        ("13", 3) => [0, 2],
        ("23", 3) => [1, 2],
        ("12", 2) => [0, 1],
        ("21", 2) => [1, 0],
        _ => return Err(PbwError::BadPlacement(placement.to_string(), target_rank)),
    };
    let mut out = Tensor::zero(target_rank, x.order);
    for (key, s) in &x.terms {
        let mut nk = vec![Monomial::unit(); target_rank];
        nk[positions[0]] = key[0].clone();
        nk[positions[1]] = key[1].clone();
        out.add_term(nk, s.clone());
    }
    Ok(out)
}

/// How generator images extend to the whole envelope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtensionMode {
    AlgebraHom,
    AlgebraAntiHom,
    Derivation,
}

/// A map determined by its values on generators. Images all share one rank;
/// hom and anti-hom extensions send the unit to the unit, derivations kill
/// it.
#[derive(Debug, Clone)]
pub struct GenMap {
    pub target_rank: usize,
    pub order: usize,
    pub mode: ExtensionMode,
    pub images: BTreeMap<usize, Tensor>,
}

impl GenMap {
    pub fn new(target_rank: usize, order: usize, mode: ExtensionMode) -> Self {
        if mode == ExtensionMode::Derivation {
            assert_eq!(target_rank, 1);
        }
        GenMap { target_rank, order, mode, images: BTreeMap::new() }
    }

    pub fn identity(algebra: &LieAlgebraSpec, order: usize) -> Self {
        let mut map = GenMap::new(1, order, ExtensionMode::AlgebraHom);
        for i in 0..algebra.dim() {
            map.images.insert(i, Tensor::generator(i, order));
        }
        map
    }

    pub fn set_image(&mut self, gen: usize, img: Tensor) {
        assert_eq!(img.rank, self.target_rank);
        assert_eq!(img.order, self.order);
        self.images.insert(gen, img);
    }

    pub fn image(&self, gen: usize) -> Result<&Tensor, PbwError> {
        self.images.get(&gen).ok_or(PbwError::MissingImage(gen))
    }

    /// Apply to a rank-1 tensor. Products of images are taken in `target`,
    /// the rewrite system of the codomain.
    pub fn apply(&self, target: &RewriteSystem, x: &Tensor) -> Result<Tensor, PbwError> {
        if x.rank != 1 {
            return Err(PbwError::RankMismatch(x.rank, 1));
        }
        let mut out = Tensor::zero(self.target_rank, self.order);
        for (key, s) in &x.terms {
            let word = &key[0].0;
            match self.mode {
                ExtensionMode::AlgebraHom | ExtensionMode::AlgebraAntiHom => {
                    let mut acc = Tensor::one(self.target_rank, self.order);
                    let iter: Vec<usize> = if self.mode == ExtensionMode::AlgebraHom {
                        word.clone()
                    } else {
                        word.iter().rev().cloned().collect()
                    };
                    for g in iter {
                        acc = target.mul(&acc, self.image(g)?)?;
                        if acc.is_zero() {
                            break;
                        }
                    }
                    out = out.add(&acc.scale(s));
                }
                ExtensionMode::Derivation => {
                    for i in 0..word.len() {
                        let mut acc = Tensor::one(1, self.order);
                        for (j, &g) in word.iter().enumerate() {
                            let factor = if i == j {
                                self.image(g)?.clone()
                            } else {
                                Tensor::generator(g, self.order)
                            };
                            acc = target.mul(&acc, &factor)?;
                        }
                        out = out.add(&acc.scale(s));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Apply to one leg of a tensor, expanding that leg into `target_rank`
    /// legs. For a rank-2 coproduct map this realizes (Delta x id) etc.
    pub fn apply_leg(
        &self,
        target: &RewriteSystem,
        x: &Tensor,
        leg: usize,
    ) -> Result<Tensor, PbwError> {
        assert!(leg < x.rank);
        let new_rank = x.rank - 1 + self.target_rank;
        let mut out = Tensor::zero(new_rank, self.order);
        for (key, s) in &x.terms {
            let img = self.apply(
                target,
                &Tensor::monomial(vec![key[leg].clone()], Series::one(self.order)),
            )?;
            for (ikey, is) in &img.terms {
                let mut nk = Vec::with_capacity(new_rank);
                nk.extend_from_slice(&key[..leg]);
                nk.extend(ikey.iter().cloned());
                nk.extend_from_slice(&key[leg + 1..]);
                out.add_term(nk, s * is);
            }
        }
        Ok(out)
    }

    /// Composite map g -> self(other(g)); both must be rank-1 extensions.
    pub fn compose(&self, target: &RewriteSystem, other: &GenMap) -> Result<GenMap, PbwError> {
        assert_eq!(other.target_rank, 1);
        let mut out = GenMap::new(self.target_rank, self.order, self.mode);
        for (g, img) in &other.images {
            out.images.insert(*g, self.apply(target, img)?);
        }
        Ok(out)
    }

    /// Order-by-order inverse of a rank-1 algebra-hom map congruent with the
    /// identity mod lambda, as a map of the same kind.
    pub fn invert(&self, target: &RewriteSystem) -> Result<GenMap, PbwError> {
        assert_eq!(self.target_rank, 1);
        assert_eq!(self.mode, ExtensionMode::AlgebraHom);
        let algebra = &target.algebra;
        let mut inv = GenMap::identity(algebra, self.order);
        for n in 1..=self.order {
            let mut corrections: Vec<(usize, Tensor)> = Vec::new();
            for g in 0..algebra.dim() {
                let defect = inv.apply(target, self.image(g)?)?
                    .sub(&Tensor::generator(g, self.order));
                debug_assert!(defect.valuation().map_or(true, |v| v >= n));
                let q_n = defect.lambda_coefficient(n);
                if !q_n.is_zero() {
                    // shift back to lambda order n and subtract
                    let mut shifted = Tensor::zero(1, self.order);
                    for (key, s) in &q_n.terms {
                        shifted.add_term(key.clone(), s.shift(n));
                    }
                    corrections.push((g, shifted));
                }
            }
            for (g, corr) in corrections {
                let img = inv.images.get(&g).unwrap().sub(&corr);
                inv.images.insert(g, img);
            }
        }
        Ok(inv)
    }

    /// Generator images pass the contractibility check with the offsets of a
    /// deformation-Hopf typing: 0 on H generators, 1 on P generators.
    pub fn parity_contractible(&self, algebra: &LieAlgebraSpec) -> bool {
        self.images.iter().all(|(g, img)| {
            let offset = match algebra.parity(*g) {
                Parity::P => 1,
                _ => 0,
            };
            contractibility_check(img, algebra, offset).ok
        })
    }
}

/// Seeded random words, elements and generator maps for checks and tests.
pub mod sampling {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub fn rng(seed: u64) -> StdRng {
        StdRng::seed_from_u64(seed)
    }

    pub fn random_word(rng: &mut StdRng, dim: usize, max_len: usize) -> Vec<usize> {
        let len = rng.random_range(0..=max_len);
        (0..len).map(|_| rng.random_range(0..dim)).collect()
    }

    pub fn random_element(
        rng: &mut StdRng,
        rs: &RewriteSystem,
        max_len: usize,
        terms: usize,
    ) -> Element {
        let mut out = Tensor::zero(1, rs.order);
        for _ in 0..terms {
            let word = random_word(rng, rs.algebra.dim(), max_len);
            let num = rng.random_range(-4i64..=4);
            let den = rng.random_range(1i64..=3);
            let coeff = Series::constant(Rational::new(num, den), rs.order);
            out = out.add(&rs.normal_form(&word, &coeff).unwrap());
        }
        out
    }

    /// A p-contractible algebra-hom map congruent with the identity mod
    /// lambda: each generator image is the generator plus random terms whose
    /// order-n part has P-degree at most n + parity offset.
    pub fn random_contractible_genmap(rng: &mut StdRng, rs: &RewriteSystem) -> GenMap {
        let algebra = &rs.algebra;
        let mut map = GenMap::identity(algebra, rs.order);
        let p_gens = algebra.p_indices();
        let h_gens = algebra.h_indices();
        for g in 0..algebra.dim() {
            let offset = if algebra.parity(g) == Parity::P { 1usize } else { 0 };
            let mut img = Tensor::generator(g, rs.order);
            for n in 1..=rs.order {
                for _ in 0..rng.random_range(0..=2) {
                    let p_budget = (n + offset).min(2);
                    let p_count = rng.random_range(0..=p_budget);
                    let h_count = rng.random_range(0..=1usize);
                    let mut word = Vec::new();
                    for _ in 0..h_count {
                        if h_gens.is_empty() {
                            continue;
                        }
                        word.push(h_gens[rng.random_range(0..h_gens.len())]);
                    }
                    for _ in 0..p_count {
                        if p_gens.is_empty() {
                            continue;
                        }
                        word.push(p_gens[rng.random_range(0..p_gens.len())]);
                    }
                    let num = rng.random_range(-3i64..=3);
                    let coeff = Series::monomial(Rational::from_int(num), n, rs.order);
                    img = img.add(&rs.normal_form(&word, &coeff).unwrap());
                }
            }
            map.set_image(g, img);
        }
        map
    }
}
