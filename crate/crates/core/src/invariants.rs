//! Symmetric tensor modules over a doubled Lie algebra, invariant subspaces
//! by exact nullspace computation, the symmetrization map into the envelope,
//! and the restriction-property checker for symmetric pairs.

use std::collections::BTreeMap;


use thiserror::Error;

use crate::lie::{LieAlgebraSpec, Parity};
use crate::linalg::{row_from_map, Eliminator};
use crate::pbw::{RewriteSystem, Tensor};
#[cfg(test)]
use crate::pbw::Monomial;
use crate::scalars::{Rational, Series};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantsError {
    #[error("ambient dimension {0} exceeds the configured cap {1}")]
    DimensionTooLarge(usize, usize),
    #[error("operation requires a single-copy tensor")]
    NeedsSingleCopy,
    #[error("algebra carries no symmetric decomposition")]
    NoDecomposition,
}

/// A symmetric tensor over `copies` commuting copies of the algebra's
/// underlying module. Basis slots are indexed by `copy * dim + generator`;
/// keys are non-decreasing index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymTensor {
    pub algebra: String,
    pub copies: usize,
    pub degree: usize,
    pub entries: BTreeMap<Vec<usize>, Rational>,
}

impl SymTensor {
    pub fn zero(spec: &LieAlgebraSpec, copies: usize, degree: usize) -> Self {
        SymTensor { algebra: spec.name.clone(), copies, degree, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, mut key: Vec<usize>, coeff: Rational) {
        assert_eq!(key.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        key.sort_unstable();
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

    pub fn scale(&self, c: &Rational) -> SymTensor {
        let mut out = self.clone();
        for v in out.entries.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn add(&self, other: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    /// (H-count, P-count) of one slot tuple.
    pub fn bigrade_of(spec: &LieAlgebraSpec, key: &[usize]) -> (usize, usize) {
        let dim = spec.dim();
        let mut h = 0;
        let mut p = 0;
        for &slot in key {
            match spec.parity(slot % dim) {
                Parity::P => p += 1,
                _ => h += 1,
            }
        }
        (h, p)
    }

    pub fn serialize_with(&self, spec: &LieAlgebraSpec) -> serde_json::Value {
        let dim = spec.dim();
        let copy_tag = |slot: usize| format!("{}{}", ["X", "Y", "Z"][slot / dim], spec.label(slot % dim));
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(k, v)| {
                serde_json::json!({
                    "slots": k.iter().map(|&s| copy_tag(s)).collect::<Vec<_>>(),
                    "coeff": v,
                })
            })
            .collect();
        serde_json::json!({ "degree": self.degree, "copies": self.copies, "entries": entries })
    }
}

/// Derivation extension of the diagonal adjoint action on a symmetric
/// tensor; the bracket acts inside each copy.
pub fn sym_action(spec: &LieAlgebraSpec, x: usize, t: &SymTensor) -> SymTensor {
    let dim = spec.dim();
    let mut out = SymTensor::zero(spec, t.copies, t.degree);
    for (key, coeff) in &t.entries {
        for (slot_pos, &slot) in key.iter().enumerate() {
            let copy = slot / dim;
            let g = slot % dim;
            for (c, k) in spec.bracket_basis(x, g) {
                let mut nk = key.clone();
                nk[slot_pos] = copy * dim + c;
                out.insert(nk, coeff * &k);
            }
        }
    }
    out
}

/// Which generators act when carving out invariants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Acting {
    HOnly,
    FullG,
}

/// Restriction of the ambient tuple basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BigradeFilter {
    All,
    /// Exactly (h-count, p-count).
    Exact(usize, usize),
}

/// A computed invariant subspace: the ambient tuple count and an
/// independent basis.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub degree: usize,
    pub ambient_dim: usize,
    pub basis: Vec<SymTensor>,
}

fn enumerate_tuples(
    spec: &LieAlgebraSpec,
    copies: usize,
    degree: usize,
    filter: BigradeFilter,
    cap: usize,
) -> Result<Vec<Vec<usize>>, InvariantsError> {
    let nslots = copies * spec.dim();
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..degree {
        let mut next = Vec::new();
        for t in &out {
            let start = t.last().copied().unwrap_or(0);
            for s in start..nslots {
                let mut nt = t.clone();
                nt.push(s);
                next.push(nt);
                if next.len() > cap {
                    return Err(InvariantsError::DimensionTooLarge(next.len(), cap));
                }
            }
        }
        out = next;
    }
    Ok(out
        .into_iter()
        .filter(|t| match filter {
            BigradeFilter::All => true,
            BigradeFilter::Exact(h, p) => SymTensor::bigrade_of(spec, t) == (h, p),
        })
        .collect())
}

/// Exact nullspace of the stacked action matrices of the acting generators
/// on the filtered tuple basis.
pub fn invariant_subspace(
    spec: &LieAlgebraSpec,
    copies: usize,
    degree: usize,
    filter: BigradeFilter,
    acting: Acting,
    ambient_cap: usize,
) -> Result<SubspaceBasis, InvariantsError> {
    let acting_gens: Vec<usize> = match acting {
        Acting::HOnly => {
            if !spec.has_decomposition() {
                return Err(InvariantsError::NoDecomposition);
            }
            spec.h_indices()
        }
        Acting::FullG => (0..spec.dim()).collect(),
    };
    let tuples = enumerate_tuples(spec, copies, degree, filter, ambient_cap)?;
    let ncols = tuples.len();

    // rows: (acting generator, output tuple); the action can leave the
    // filtered block, in which case the output tuple gets its own row
    let mut row_index: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    for (j, tuple) in tuples.iter().enumerate() {
        let mut t = SymTensor::zero(spec, copies, degree);
        t.insert(tuple.clone(), Rational::one());
        for &x in &acting_gens {
            let image = sym_action(spec, x, &t);
            for (key, coeff) in &image.entries {
                let next = rows.len();
                let r = *row_index.entry((x, key.clone())).or_insert(next);
                if r == rows.len() {
                    rows.push(BTreeMap::new());
                }
                *rows[r].entry(j).or_insert_with(Rational::zero) += coeff;
            }
        }
    }
    let mut elim = Eliminator::new(ncols);
    for row in rows {
        elim.push_homogeneous(row_from_map(row));
    }
    let basis = elim
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut t = SymTensor::zero(spec, copies, degree);
            for (j, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    t.insert(tuples[j].clone(), c);
                }
            }
            t
        })
        .collect();
    Ok(SubspaceBasis { degree, ambient_dim: ncols, basis })
}

/// Outcome of the restriction-property check at one degree.
#[derive(Debug, Clone)]
pub struct RestrictionReport {
    pub degree: usize,
    pub full_invariant_dim: usize,
    pub restricted_invariant_dim: usize,
    pub projected_rank: usize,
    pub surjective: bool,
    pub cokernel_basis: Vec<SymTensor>,
}

impl RestrictionReport {
    pub fn serialize_with(&self, spec: &LieAlgebraSpec) -> serde_json::Value {
        serde_json::json!({
            "degree": self.degree,
            "full_invariant_dim": self.full_invariant_dim,
            "restricted_invariant_dim": self.restricted_invariant_dim,
            "projected_rank": self.projected_rank,
            "surjective": self.surjective,
            "cokernel": self.cokernel_basis.iter().map(|t| t.serialize_with(spec)).collect::<Vec<_>>(),
        })
    }
}

/// Zero out every tuple containing an H-parity slot; the projection dual to
/// restricting arguments to the P sector.
fn project_to_p(spec: &LieAlgebraSpec, t: &SymTensor) -> SymTensor {
    let dim = spec.dim();
    let mut out = SymTensor::zero(spec, t.copies, t.degree);
    for (key, coeff) in &t.entries {
        if key.iter().all(|&s| spec.parity(s % dim) == Parity::P) {
            out.insert(key.clone(), coeff.clone());
        }
    }
    out
}

/// Does the projection to the P sector map the full invariants of degree p
/// onto the H-invariants supported on P slots? Reports the dimensions, the
/// verdict, and cokernel witnesses when not surjective.
pub fn restriction_check(
    spec: &LieAlgebraSpec,
    degree: usize,
    ambient_cap: usize,
) -> Result<RestrictionReport, InvariantsError> {
    if !spec.has_decomposition() {
        return Err(InvariantsError::NoDecomposition);
    }
    let full = invariant_subspace(spec, 2, degree, BigradeFilter::All, Acting::FullG, ambient_cap)?;
    let restricted = invariant_subspace(
        spec,
        2,
        degree,
        BigradeFilter::Exact(0, degree),
        Acting::HOnly,
        ambient_cap,
    )?;

    // coordinates on the (0, degree) block
    let tuples = enumerate_tuples(spec, 2, degree, BigradeFilter::Exact(0, degree), ambient_cap)?;
    let index: BTreeMap<Vec<usize>, usize> =
        tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let coords = |t: &SymTensor| -> BTreeMap<usize, Rational> {
        t.entries
            .iter()
            .map(|(k, v)| (*index.get(k).expect("tuple in block"), v.clone()))
            .collect()
    };

    let mut elim = Eliminator::new(tuples.len());
    for t in &full.basis {
        let p = project_to_p(spec, t);
        if !p.is_zero() {
            elim.push_homogeneous(row_from_map(coords(&p)));
        }
    }
    let projected_rank = elim.rank();
    let mut cokernel = Vec::new();
    for b in &restricted.basis {
        if elim.push_homogeneous(row_from_map(coords(b))) {
            cokernel.push(b.clone());
        }
    }
    Ok(RestrictionReport {
        degree,
        full_invariant_dim: full.basis.len(),
        restricted_invariant_dim: restricted.basis.len(),
        projected_rank,
        surjective: cokernel.is_empty(),
        cokernel_basis: cokernel,
    })
}

/// Average over all slot orderings and normal-order the result: the
/// symmetrization map from degree-k symmetric tensors into the envelope.
pub fn symmetrize(rs: &RewriteSystem, t: &SymTensor) -> Result<Tensor, InvariantsError> {
    if t.copies != 1 {
        return Err(InvariantsError::NeedsSingleCopy);
    }
    let order = rs.order;
    let mut out = Tensor::zero(1, order);
    for (key, coeff) in &t.entries {
        let mut perm = key.clone();
        let mut words: Vec<Vec<usize>> = Vec::new();
        permutations(&mut perm, 0, &mut words);
        let scale = &Rational::inv_factorial(key.len()) * coeff;
        for w in words {
            out = out.add(
                &rs.normal_form(&w, &Series::constant(scale.clone(), order))
                    .expect("indices in range"),
            );
        }
    }
    Ok(out)
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}
