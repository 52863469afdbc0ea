//! Direct pathway: compute inside the full bigraded exterior algebra.
//!
//! All slice computations decompose by total weight. Invariants live in the
//! zero-weight block; the relation-ideal slice is spanned by generator-times-
//! monomial products, each of which is weight homogeneous.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::chevalley::LieAlgebra;
use crate::error::{Error, Result};
use crate::grassmann::{
    bidegree_monomials_by_weight, lie_derivative_basis, mono_weight, wedge, ActionSide,
    IdealGenerators, MonoKey, Multivector,
};
use crate::linalg::{nullspace_of_rows, SparseVec, SubspaceBasis};
use crate::rational::rat;
use crate::rep::Weight;

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u128;
    for i in 0..k.min(n - k) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial fits u64")
}

/// Deterministic flat indexing of one bidegree slice of the big algebra.
#[derive(Debug, Clone)]
pub struct SliceIndex {
    pub p: usize,
    pub q: usize,
    pub monos: Vec<MonoKey>,
    pub pos: BTreeMap<MonoKey, usize>,
}

impl SliceIndex {
    pub fn new(alg: &LieAlgebra, p: usize, q: usize) -> Self {
        let xs = crate::grassmann::degree_masks(alg.dim, p);
        let ys = crate::grassmann::degree_masks(alg.dim, q);
        let mut monos = Vec::with_capacity(xs.len() * ys.len());
        for &x in &xs {
            for &y in &ys {
                monos.push(MonoKey { x, y });
            }
        }
        let pos = monos.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        SliceIndex { p, q, monos, pos }
    }

    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    pub fn to_vec(&self, mv: &Multivector) -> SparseVec {
        let mut v: SparseVec = mv.terms().map(|(k, c)| (self.pos[k], c.clone())).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    }

    pub fn to_multivector(&self, v: &SparseVec) -> Multivector {
        let mut mv = Multivector::zero();
        for (i, c) in v {
            mv.add_term(self.monos[*i], c.clone());
        }
        mv
    }
}

/// The Chevalley generator basis indices (e_i, f_i over simple roots): the
/// smallest operator set whose joint kernel cuts out the invariants.
pub fn chevalley_generator_indices(alg: &LieAlgebra) -> Vec<usize> {
    let mut gens = Vec::with_capacity(2 * alg.rank);
    for i in 0..alg.rank {
        let mut coords = vec![0i64; alg.rank];
        coords[i] = 1;
        let ri = alg.root_system.index_of(&coords).expect("simple root");
        gens.push(alg.e_index(ri));
        gens.push(alg.f_index(ri));
    }
    gens
}

/// One fully computed bidegree cell of the direct pathway.
#[derive(Debug)]
pub struct DirectCell {
    pub p: usize,
    pub q: usize,
    pub dim_ambient: u64,
    pub dim_ideal: u64,
    pub dim_invariants: u64,
    pub dim_invariants_in_ideal: u64,
    /// Ordered zero-weight monomials of the slice.
    pub zero_monos: Vec<MonoKey>,
    pub zero_pos: BTreeMap<MonoKey, usize>,
    /// Relation-ideal slice restricted to the zero-weight block.
    pub ideal_zero: SubspaceBasis,
    /// Invariant basis over the zero-weight coordinates.
    pub invariant_rows: Vec<SparseVec>,
}

impl DirectCell {
    /// Residue of a zero-weight multivector modulo the ideal slice.
    pub fn reduce_mod_ideal(&self, mv: &Multivector) -> Result<SparseVec> {
        let mut v: SparseVec = Vec::new();
        for (k, c) in mv.terms() {
            let i = self
                .zero_pos
                .get(k)
                .ok_or_else(|| Error::Internal("vector is not zero-weight in this slice".into()))?;
            v.push((*i, c.clone()));
        }
        v.sort_by_key(|(i, _)| *i);
        Ok(self.ideal_zero.reduce(&v))
    }
}

/// Per-slice size guard for the direct pathway: the larger of the monomial
/// count and the generator-product count must stay within the cap.
pub fn direct_cell_estimate(alg: &LieAlgebra, p: usize, q: usize) -> u64 {
    let n = alg.dim;
    let ambient = binomial(n, p) * binomial(n, q);
    let mut gens = 0u64;
    if p >= 2 {
        gens += n as u64 * binomial(n, p - 2) * binomial(n, q);
    }
    if p >= 1 && q >= 1 {
        gens += n as u64 * binomial(n, p - 1) * binomial(n, q - 1);
    }
    if q >= 2 {
        gens += n as u64 * binomial(n, p) * binomial(n, q - 2);
    }
    ambient.max(gens)
}

pub fn build_direct_cell(
    alg: &LieAlgebra,
    gens: &IdealGenerators,
    p: usize,
    q: usize,
    cap: u64,
    force: bool,
) -> Result<DirectCell> {
    let estimate = direct_cell_estimate(alg, p, q);
    if estimate > cap && !force {
        return Err(Error::SliceTooLarge {
            description: format!("direct slice ({p},{q}) of {}", alg.root_system.cartan_type),
            estimate,
            budget: cap,
        });
    }

    let blocks = bidegree_monomials_by_weight(alg, p, q);
    let dim_ambient: u64 = blocks.values().map(|v| v.len() as u64).sum();
    let zero: Weight = vec![0; alg.rank];

    // Local position maps per weight block.
    let local: BTreeMap<&Weight, BTreeMap<MonoKey, usize>> = blocks
        .iter()
        .map(|(w, monos)| (w, monos.iter().enumerate().map(|(i, k)| (*k, i)).collect()))
        .collect();

    // Ideal slice, echelonized per weight block.
    let mut ideal_blocks: BTreeMap<&Weight, SubspaceBasis> =
        blocks.iter().map(|(w, monos)| (w, SubspaceBasis::new(monos.len()))).collect();
    let mut insert_products =
        |family: &[Multivector], lp: usize, lq: usize| -> Result<()> {
            let lower = bidegree_monomials_by_weight(alg, lp, lq);
            for (k, mu) in family.iter().enumerate() {
                let kw = alg.basis_weight(k).to_vec();
                for (mw, monos) in &lower {
                    let w: Weight = kw.iter().zip(mw).map(|(a, b)| a + b).collect();
                    for mono in monos {
                        let prod = wedge(mu, &Multivector::from_term(*mono, rat(1)));
                        if prod.is_zero() {
                            continue;
                        }
                        let loc = local.get(&w).ok_or_else(|| {
                            Error::Internal("nonzero product weight missing from slice".into())
                        })?;
                        let mut v: SparseVec =
                            prod.terms().map(|(key, c)| (loc[key], c.clone())).collect();
                        v.sort_by_key(|(i, _)| *i);
                        ideal_blocks.get_mut(&w).unwrap().insert(&v)?;
                    }
                }
            }
            Ok(())
        };
    if p >= 2 {
        insert_products(&gens.mu20, p - 2, q)?;
    }
    if p >= 1 && q >= 1 {
        insert_products(&gens.mu11, p - 1, q - 1)?;
    }
    if q >= 2 {
        insert_products(&gens.mu02, p, q - 2)?;
    }
    let dim_ideal: u64 = ideal_blocks.values().map(|b| b.rank() as u64).sum();

    // Invariants: joint kernel of the Chevalley generators on the zero block.
    let zero_monos: Vec<MonoKey> = blocks.get(&zero).cloned().unwrap_or_default();
    let zero_pos: BTreeMap<MonoKey, usize> =
        zero_monos.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let invariant_rows = if zero_monos.is_empty() {
        Vec::new()
    } else {
        let gens_idx = chevalley_generator_indices(alg);
        let mut eq_rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (src, mono) in zero_monos.iter().enumerate() {
            let mv = Multivector::from_term(*mono, rat(1));
            for (gi, &g) in gens_idx.iter().enumerate() {
                let img = lie_derivative_basis(alg, g, ActionSide::Diagonal, &mv);
                for (k, c) in img.terms() {
                    let w = mono_weight(alg, k);
                    let tl = local[&w][k];
                    eq_rows.entry((gi, tl)).or_default().push((src, c.clone()));
                }
            }
        }
        let kernel = nullspace_of_rows(zero_monos.len(), eq_rows.into_values());
        kernel.rows_rational()
    };
    let dim_invariants = invariant_rows.len() as u64;

    // Invariants inside the ideal: inv minus the rank of the residues.
    let ideal_zero = ideal_blocks.remove(&zero).unwrap_or_else(|| SubspaceBasis::new(0));
    let mut residues = SubspaceBasis::new(zero_monos.len().max(1));
    let mut residue_rank = 0usize;
    for row in &invariant_rows {
        let r = ideal_zero.reduce(row);
        if !r.is_empty() && residues.insert(&r)? {
            residue_rank += 1;
        }
    }
    let dim_invariants_in_ideal = dim_invariants - residue_rank as u64;

    Ok(DirectCell {
        p,
        q,
        dim_ambient,
        dim_ideal,
        dim_invariants,
        dim_invariants_in_ideal,
        zero_monos,
        zero_pos,
        ideal_zero,
        invariant_rows,
    })
}

/// k-th wedge power of the degree-(1,1) invariant.
pub fn s_power(alg: &LieAlgebra, k: usize) -> Multivector {
    let s = crate::grassmann::s_element(alg);
    let mut acc = Multivector::one();
    for _ in 0..k {
        acc = wedge(&acc, &s);
    }
    acc
}

/// The relation-ideal slice of one bidegree as a subspace of the flat slice
/// coordinates (all weights together).
pub fn ideal_slice_direct(
    alg: &LieAlgebra,
    gens: &IdealGenerators,
    p: usize,
    q: usize,
    cap: u64,
    force: bool,
) -> Result<SubspaceBasis> {
    let estimate = direct_cell_estimate(alg, p, q);
    if estimate > cap && !force {
        return Err(Error::SliceTooLarge {
            description: format!("direct slice ({p},{q}) of {}", alg.root_system.cartan_type),
            estimate,
            budget: cap,
        });
    }
    let idx = SliceIndex::new(alg, p, q);
    let mut basis = SubspaceBasis::new(idx.dim());
    let mut push_products = |family: &[Multivector], lp: usize, lq: usize| -> Result<()> {
        let xs = crate::grassmann::degree_masks(alg.dim, lp);
        let ys = crate::grassmann::degree_masks(alg.dim, lq);
        for mu in family {
            for &x in &xs {
                for &y in &ys {
                    let prod = wedge(mu, &Multivector::from_term(MonoKey { x, y }, rat(1)));
                    if !prod.is_zero() {
                        basis.insert(&idx.to_vec(&prod))?;
                    }
                }
            }
        }
        Ok(())
    };
    if p >= 2 {
        push_products(&gens.mu20, p - 2, q)?;
    }
    if p >= 1 && q >= 1 {
        push_products(&gens.mu11, p - 1, q - 1)?;
    }
    if q >= 2 {
        push_products(&gens.mu02, p, q - 2)?;
    }
    Ok(basis)
}

/// Invariants of an action-stable subspace of one bidegree slice: the joint
/// kernel of the Chevalley generators restricted to the space. Rejects any
/// space that is not stable, naming the violating generator.
pub fn invariants_in(
    alg: &LieAlgebra,
    idx: &SliceIndex,
    space: &SubspaceBasis,
) -> Result<SubspaceBasis> {
    let rows = space.rows_rational();
    let gens_idx = chevalley_generator_indices(alg);
    // images[r][g] in slice coordinates
    let mut images: Vec<Vec<SparseVec>> = Vec::with_capacity(rows.len());
    for row in &rows {
        let mv = idx.to_multivector(row);
        let mut per_gen = Vec::with_capacity(gens_idx.len());
        for &g in &gens_idx {
            let img = lie_derivative_basis(alg, g, ActionSide::Diagonal, &mv);
            let iv = idx.to_vec(&img);
            if !space.member(&iv)? {
                return Err(Error::NotStable(format!(
                    "L_{} leaves the subspace",
                    alg.basis_label(g)
                )));
            }
            per_gen.push(iv);
        }
        images.push(per_gen);
    }
    // Solve for coefficient vectors x with sum_r x_r L_g(row_r) = 0 for all g.
    let mut eq: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for (r, per_gen) in images.iter().enumerate() {
        for (g, img) in per_gen.iter().enumerate() {
            for (t, c) in img {
                eq.entry((g, *t)).or_default().push((r, c.clone()));
            }
        }
    }
    let kernel = nullspace_of_rows(rows.len(), eq.into_values());
    // Map coefficient vectors back to ambient slice vectors.
    let mut out = SubspaceBasis::new(idx.dim());
    for combo in kernel.rows_rational() {
        let mut acc: BTreeMap<usize, crate::rational::Rat> = BTreeMap::new();
        for (r, c) in combo {
            for (i, rc) in &rows[r] {
                let e = acc.entry(*i).or_insert_with(crate::rational::Rat::zero);
                *e += c.clone() * rc.clone();
            }
        }
        let v: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.insert(&v)?;
    }
    out.canonicalize();
    Ok(out)
}

/// Full-slice echelon of one bidegree (all weights), for single-slice queries.
pub fn full_slice_basis(alg: &LieAlgebra, p: usize, q: usize) -> SliceIndex {
    SliceIndex::new(alg, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, Series};
    use crate::chevalley::lie_algebra;
    use crate::grassmann::ideal_generators;

    fn setup(s: Series, n: usize) -> (LieAlgebra, IdealGenerators) {
        let a = lie_algebra(CartanType::new(s, n).unwrap()).unwrap();
        let g = ideal_generators(&a).unwrap();
        (a, g)
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(14, 4), 1001);
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn sl2_cell_1_1() {
        let (a, g) = setup(Series::A, 1);
        let cell = build_direct_cell(&a, &g, 1, 1, 1 << 20, false).unwrap();
        assert_eq!(cell.dim_ambient, 9);
        assert_eq!(cell.dim_ideal, 3); // the adjoint copy
        assert_eq!(cell.dim_invariants, 1); // spanned by S
        assert_eq!(cell.dim_invariants_in_ideal, 0);
    }

    #[test]
    fn sl2_cell_1_0_has_no_invariants() {
        let (a, g) = setup(Series::A, 1);
        let cell = build_direct_cell(&a, &g, 1, 0, 1 << 20, false).unwrap();
        assert_eq!(cell.dim_invariants, 0);
        assert_eq!(cell.dim_ideal, 0);
    }

    #[test]
    fn sl2_s_squared_in_ideal() {
        let (a, g) = setup(Series::A, 1);
        let cell = build_direct_cell(&a, &g, 2, 2, 1 << 20, false).unwrap();
        let s2 = s_power(&a, 2);
        assert!(!s2.is_zero());
        let residue = cell.reduce_mod_ideal(&s2).unwrap();
        assert!(residue.is_empty(), "S^2 must die for sl2");
        let s1 = s_power(&a, 1);
        let cell11 = build_direct_cell(&a, &g, 1, 1, 1 << 20, false).unwrap();
        assert!(!cell11.reduce_mod_ideal(&s1).unwrap().is_empty());
    }

    #[test]
    fn ideal_slice_2_0_contains_generators() {
        let (a, g) = setup(Series::B, 2);
        let basis = ideal_slice_direct(&a, &g, 2, 0, 1 << 20, false).unwrap();
        assert!(basis.rank() >= a.dim);
        let idx = SliceIndex::new(&a, 2, 0);
        for mu in &g.mu20 {
            assert!(basis.member(&idx.to_vec(mu)).unwrap());
        }
    }

    #[test]
    fn guard_refuses_oversized_slices() {
        let (a, g) = setup(Series::G, 2);
        let err = build_direct_cell(&a, &g, 4, 4, 2_000_000, false);
        assert!(matches!(err, Err(Error::SliceTooLarge { .. })));
    }

    #[test]
    fn invariants_in_full_slice_1_1() {
        let (a, _) = setup(Series::A, 1);
        let idx = SliceIndex::new(&a, 1, 1);
        // The full slice as a subspace of itself.
        let mut space = SubspaceBasis::new(idx.dim());
        for i in 0..idx.dim() {
            space.insert(&vec![(i, rat(1))]).unwrap();
        }
        let inv = invariants_in(&a, &idx, &space).unwrap();
        assert_eq!(inv.rank(), 1);
        let s = crate::grassmann::s_element(&a);
        assert!(inv.member(&idx.to_vec(&s)).unwrap());
    }

    #[test]
    fn invariants_in_rejects_unstable_space() {
        let (a, _) = setup(Series::A, 1);
        let idx = SliceIndex::new(&a, 1, 0);
        let mut space = SubspaceBasis::new(idx.dim());
        // span of a single root vector: not stable
        let e_mono = MonoKey { x: 1 << a.e_index(0), y: 0 };
        space.insert(&vec![(idx.pos[&e_mono], rat(1))]).unwrap();
        assert!(matches!(invariants_in(&a, &idx, &space), Err(Error::NotStable(_))));
    }

    #[test]
    fn sl2_invariant_dim_2_2_matches_character_oracle() {
        let (a, g) = setup(Series::A, 1);
        let cell = build_direct_cell(&a, &g, 2, 2, 1 << 20, false).unwrap();
        let ch2 = crate::rep::character_of_exterior_power(&a, 2);
        let oracle = crate::rep::invariant_dimension(&a.root_system, &ch2, &ch2).unwrap();
        assert_eq!(cell.dim_invariants, oracle);
        assert_eq!(oracle, 1);
    }
}
