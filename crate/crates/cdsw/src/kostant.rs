//! The algebra B of functions on the square-zero cone, through Kostant's
//! description: abelian ideals of the Borel, the modules they generate inside
//! the exterior algebra, top Casimir eigenspaces, and the bracket kernel map.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;

use crate::chevalley::LieAlgebra;
use crate::error::{Error, Result};
use crate::grassmann::{
    degree_masks, ideal_generators, lie_derivative_basis, mono_weight, wedge_mono, ActionSide,
    MonoKey, Multivector, Side,
};
use crate::linalg::{nullspace_of_rows, OperatorSlice, SparseVec, SubspaceBasis};
use crate::rational::{rat, Rat};
use crate::rep::{weyl_dimension, Weight};
use crate::roots::RootSystem;

/// An abelian ideal of the Borel subalgebra: a set of positive roots, upward
/// closed, with pairwise sums never roots. Stored as sorted indices into the
/// fixed positive-root order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AbelianIdeal {
    pub roots: Vec<usize>,
}

impl AbelianIdeal {
    pub fn size(&self) -> usize {
        self.roots.len()
    }
}

fn is_upward_closed(rs: &RootSystem, set: &BTreeSet<usize>) -> bool {
    for &a in set {
        for b in 0..rs.positive_roots.len() {
            let sum: Vec<i64> = rs.positive_roots[a]
                .iter()
                .zip(&rs.positive_roots[b])
                .map(|(x, y)| x + y)
                .collect();
            if let Some(s) = rs.index_of(&sum) {
                if !set.contains(&s) {
                    return false;
                }
            }
        }
    }
    true
}

fn is_abelian(rs: &RootSystem, set: &BTreeSet<usize>) -> bool {
    for &a in set {
        for &b in set {
            let sum: Vec<i64> = rs.positive_roots[a]
                .iter()
                .zip(&rs.positive_roots[b])
                .map(|(x, y)| x + y)
                .collect();
            if rs.is_positive_root(&sum) {
                return false;
            }
        }
    }
    true
}

/// All abelian ideals, found by growing from the empty set one root at a
/// time. Their number must be 2^rank; anything else is an internal error.
pub fn enumerate_abelian_ideals(rs: &RootSystem) -> Result<Vec<AbelianIdeal>> {
    let npos = rs.positive_roots.len();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: VecDeque<BTreeSet<usize>> = VecDeque::new();
    seen.insert(Vec::new());
    queue.push_back(BTreeSet::new());
    while let Some(cur) = queue.pop_front() {
        for r in 0..npos {
            if cur.contains(&r) {
                continue;
            }
            let mut next = cur.clone();
            next.insert(r);
            let key: Vec<usize> = next.iter().copied().collect();
            if seen.contains(&key) {
                continue;
            }
            if is_upward_closed(rs, &next) && is_abelian(rs, &next) {
                seen.insert(key);
                queue.push_back(next);
            }
        }
    }
    let expected = 1usize << rs.rank;
    if seen.len() != expected {
        return Err(Error::Internal(format!(
            "{}: found {} abelian ideals, expected 2^{} = {}",
            rs.cartan_type,
            seen.len(),
            rs.rank,
            expected
        )));
    }
    let mut out: Vec<AbelianIdeal> = seen.into_iter().map(|roots| AbelianIdeal { roots }).collect();
    out.sort_by_key(|a| (a.roots.len(), a.roots.clone()));
    Ok(out)
}

/// Highest weight, dimension and Casimir data of the module generated by the
/// top exterior power of an abelian ideal.
#[derive(Debug, Clone)]
pub struct ModuleDescriptor {
    pub ideal: AbelianIdeal,
    pub highest_weight: Weight,
    pub dimension: u64,
    pub degree: usize,
    pub casimir_eigenvalue: Rat,
}

pub fn module_of_ideal(rs: &RootSystem, a: &AbelianIdeal) -> Result<ModuleDescriptor> {
    let mut lam = vec![0i64; rs.rank];
    for &r in &a.roots {
        for (acc, c) in lam.iter_mut().zip(rs.root_to_fund(&rs.positive_roots[r])) {
            *acc += c;
        }
    }
    if lam.iter().any(|&c| c < 0) {
        return Err(Error::Internal(format!("ideal {:?} sums to non-dominant weight {lam:?}", a.roots)));
    }
    let dimension = weyl_dimension(rs, &lam)?;
    let eig = rs.casimir_eigenvalue(&lam);
    if eig != rat(a.size() as i64) {
        return Err(Error::Internal(format!(
            "ideal {:?}: Casimir eigenvalue {eig} of weight {lam:?} differs from ideal size {}",
            a.roots,
            a.size()
        )));
    }
    Ok(ModuleDescriptor {
        ideal: a.clone(),
        highest_weight: lam,
        dimension,
        degree: a.size(),
        casimir_eigenvalue: eig,
    })
}

/// Wedge of the root vectors of an ideal, in the fixed root order: a single
/// monomial in the exterior algebra of one copy.
pub fn ideal_top_wedge_mask(alg: &LieAlgebra, a: &AbelianIdeal) -> u64 {
    let mut mask = 0u64;
    for &r in &a.roots {
        mask |= 1 << alg.e_index(r);
    }
    mask
}

// ---------------------------------------------------------------------------
// Weight-blocked exterior degree
// ---------------------------------------------------------------------------

/// The degree-d slice of the exterior algebra of one copy, indexed by masks
/// in ascending numeric order and partitioned into weight blocks.
#[derive(Debug, Clone)]
pub struct ExteriorDegree {
    pub d: usize,
    pub masks: Vec<u64>,
    pub mask_pos: BTreeMap<u64, usize>,
    /// weight -> positions into `masks`.
    pub blocks: BTreeMap<Weight, Vec<usize>>,
}

impl ExteriorDegree {
    pub fn new(alg: &LieAlgebra, d: usize) -> Self {
        let masks = degree_masks(alg.dim, d);
        let mask_pos: BTreeMap<u64, usize> =
            masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut blocks: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (i, &m) in masks.iter().enumerate() {
            let w = mono_weight(alg, &MonoKey { x: m, y: 0 });
            blocks.entry(w).or_default().push(i);
        }
        ExteriorDegree { d, masks, mask_pos, blocks }
    }

    pub fn dim(&self) -> usize {
        self.masks.len()
    }

    /// Convert a single-copy multivector into a sparse vector over this slice.
    pub fn to_vec(&self, mv: &Multivector) -> SparseVec {
        let mut out: SparseVec = mv
            .terms()
            .map(|(k, c)| {
                debug_assert_eq!(k.y, 0);
                (*self.mask_pos.get(&k.x).expect("monomial outside slice"), c.clone())
            })
            .collect();
        out.sort_by_key(|(i, _)| *i);
        out
    }

    pub fn to_multivector(&self, v: &SparseVec) -> Multivector {
        let mut mv = Multivector::zero();
        for (i, c) in v {
            mv.add_term(MonoKey { x: self.masks[*i], y: 0 }, c.clone());
        }
        mv
    }
}

/// The scalar by which the raw contraction sum_{ij} gram^{-1}_{ij} L_i L_j
/// acts on the adjoint representation; the normalization divisor.
fn adjoint_casimir_scalar(alg: &LieAlgebra) -> Result<Rat> {
    let mut scalar: Option<Rat> = None;
    for b in 0..alg.dim {
        let gen = Multivector::generator(Side::X, b);
        let img = raw_casimir_apply(alg, &gen);
        // img must be scalar * gen
        let c = img.coeff(&MonoKey { x: 1 << b, y: 0 });
        let expect = gen.scale(&c);
        if img != expect {
            return Err(Error::Internal(format!(
                "raw Casimir not scalar on adjoint at {}",
                alg.basis_label(b)
            )));
        }
        match &scalar {
            None => scalar = Some(c),
            Some(s) => {
                if *s != c {
                    return Err(Error::Internal("raw Casimir scalar varies over the adjoint".into()));
                }
            }
        }
    }
    let s = scalar.unwrap();
    if s.is_zero() {
        return Err(Error::Internal("adjoint Casimir scalar is zero".into()));
    }
    Ok(s)
}

fn raw_casimir_apply(alg: &LieAlgebra, v: &Multivector) -> Multivector {
    let ginv = alg.gram_inverse();
    let mut acc = Multivector::zero();
    for j in 0..alg.dim {
        let lj = lie_derivative_basis(alg, j, ActionSide::X, v);
        if lj.is_zero() {
            continue;
        }
        for (i, g) in (0..alg.dim).map(|i| (i, &ginv[i][j])) {
            if g.is_zero() {
                continue;
            }
            let lij = lie_derivative_basis(alg, i, ActionSide::X, &lj);
            acc = acc.add(&lij.scale(g));
        }
    }
    acc
}

/// Normalized Casimir applied to a single-copy multivector.
pub fn casimir_apply(alg: &LieAlgebra, v: &Multivector) -> Result<Multivector> {
    let s = adjoint_casimir_scalar(alg)?;
    Ok(raw_casimir_apply(alg, v).scale(&(rat(1) / s)))
}

/// The normalized Casimir acting on the degree-d exterior slice.
pub fn casimir_on_exterior(alg: &LieAlgebra, d: usize) -> Result<OperatorSlice> {
    let ext = ExteriorDegree::new(alg, d);
    let s = adjoint_casimir_scalar(alg)?;
    let inv_s = rat(1) / s;
    let mut cols = Vec::with_capacity(ext.dim());
    for &m in &ext.masks {
        let v = Multivector::from_term(MonoKey { x: m, y: 0 }, rat(1));
        let img = raw_casimir_apply(alg, &v).scale(&inv_s);
        cols.push(ext.to_vec(&img));
    }
    Ok(OperatorSlice::new(ext.dim(), ext.dim(), cols))
}

/// B[d] realized inside the degree-d exterior slice: the kernel of
/// (Casimir - d), computed block by block over weights. The dimension is
/// cross-checked against the Weyl dimensions of the size-d abelian ideals.
pub fn b_component(alg: &LieAlgebra, d: usize) -> Result<SubspaceBasis> {
    let (basis, _) = b_component_blocks(alg, d)?;
    Ok(basis)
}

/// B[d] with its per-block kernel rows: (global basis, weight -> block-local
/// rows over block positions).
pub fn b_component_blocks(
    alg: &LieAlgebra,
    d: usize,
) -> Result<(SubspaceBasis, BTreeMap<Weight, Vec<SparseVec>>)> {
    let ext = ExteriorDegree::new(alg, d);
    let s = adjoint_casimir_scalar(alg)?;
    let inv_s = rat(1) / s;
    let mut global = SubspaceBasis::new(ext.dim());
    let mut per_block: BTreeMap<Weight, Vec<SparseVec>> = BTreeMap::new();
    for (w, positions) in &ext.blocks {
        let local: BTreeMap<usize, usize> =
            positions.iter().enumerate().map(|(loc, glob)| (*glob, loc)).collect();
        // Equation rows of (C - d) restricted to this block.
        let mut rows: Vec<SparseVec> = vec![Vec::new(); positions.len()];
        for (loc, &glob) in positions.iter().enumerate() {
            let v = Multivector::from_term(MonoKey { x: ext.masks[glob], y: 0 }, rat(1));
            let img = raw_casimir_apply(alg, &v).scale(&inv_s);
            for (k, c) in img.terms() {
                let tp = *ext.mask_pos.get(&k.x).expect("Casimir image outside slice");
                let tl = *local
                    .get(&tp)
                    .ok_or_else(|| Error::Internal("Casimir image escapes weight block".into()))?;
                rows[tl].push((loc, c.clone()));
            }
            rows[loc].push((loc, -rat(d as i64)));
        }
        for r in rows.iter_mut() {
            r.sort_by_key(|(i, _)| *i);
            // merge duplicate indices (diagonal entry may appear twice)
            let mut merged: SparseVec = Vec::with_capacity(r.len());
            for (i, c) in r.drain(..) {
                match merged.last_mut() {
                    Some((li, lc)) if *li == i => *lc += c,
                    _ => merged.push((i, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            *r = merged;
        }
        let kernel = nullspace_of_rows(positions.len(), rows.into_iter());
        if kernel.rank() == 0 {
            continue;
        }
        let local_rows = kernel.rows_rational();
        for lr in &local_rows {
            let gv: SparseVec = lr.iter().map(|(i, c)| (positions[*i], c.clone())).collect();
            global.insert(&gv)?;
        }
        per_block.insert(w.clone(), local_rows);
    }
    // Dimension must match the Kostant prediction.
    let ideals = enumerate_abelian_ideals(&alg.root_system)?;
    let mut predicted = 0u64;
    for a in ideals.iter().filter(|a| a.size() == d) {
        predicted += module_of_ideal(&alg.root_system, a)?.dimension;
    }
    if global.rank() as u64 != predicted {
        return Err(Error::Internal(format!(
            "B[{d}] has dimension {}, Kostant predicts {predicted}",
            global.rank()
        )));
    }
    Ok((global, per_block))
}

/// The alternating bracket map from the degree-(d+1) slice to
/// (algebra) tensor (degree-(d-1) slice):
/// p_1 ^ ... ^ p_{d+1} -> sum_{r<s} (-1)^{r+s} [p_s, p_r] (x) p_1 ^ ...
/// omitting p_r, p_s. Target coordinates are (basis index, mask) pairs.
pub fn kernel_map(alg: &LieAlgebra, d: usize) -> Result<OperatorSlice> {
    let src = ExteriorDegree::new(alg, d + 1);
    if d == 0 {
        return Ok(OperatorSlice::new(src.dim(), 0, vec![Vec::new(); src.dim()]));
    }
    let tgt = ExteriorDegree::new(alg, d - 1);
    let target_dim = alg.dim * tgt.dim();
    let mut cols = Vec::with_capacity(src.dim());
    for &m in &src.masks {
        let mut bits: Vec<usize> = Vec::with_capacity(d + 1);
        let mut mm = m;
        while mm != 0 {
            bits.push(mm.trailing_zeros() as usize);
            mm &= mm - 1;
        }
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for r in 0..bits.len() {
            for s in (r + 1)..bits.len() {
                // positions are 1-based in the alternating sign
                let sign = if (r + s) % 2 == 0 { 1 } else { -1 };
                let rest = m & !(1u64 << bits[r]) & !(1u64 << bits[s]);
                let rest_pos = *tgt.mask_pos.get(&rest).expect("rest mask in target slice");
                for (k, c) in alg.bracket(bits[s], bits[r]) {
                    let t = k * tgt.dim() + rest_pos;
                    let e = acc.entry(t).or_insert_with(Rat::zero);
                    *e += rat(*c * sign);
                }
            }
        }
        cols.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
    }
    Ok(OperatorSlice::new(src.dim(), target_dim, cols))
}

/// Basis of the module generated by the top wedge of an abelian ideal,
/// obtained by closing under the simple lowering operators.
pub fn module_basis(alg: &LieAlgebra, a: &AbelianIdeal) -> Result<Vec<SparseVec>> {
    let d = a.size();
    let ext = ExteriorDegree::new(alg, d);
    let mask = ideal_top_wedge_mask(alg, a);
    let start: SparseVec = vec![(ext.mask_pos[&mask], rat(1))];
    let mut span = SubspaceBasis::new(ext.dim());
    span.insert(&start)?;
    let mut rows = vec![start.clone()];
    let mut queue: VecDeque<SparseVec> = VecDeque::new();
    queue.push_back(start);
    // Lowering operators for the simple roots.
    let mut lowers = Vec::new();
    for i in 0..alg.rank {
        let mut coords = vec![0i64; alg.rank];
        coords[i] = 1;
        let ri = alg.root_system.index_of(&coords).expect("simple root");
        lowers.push(alg.f_index(ri));
    }
    while let Some(v) = queue.pop_front() {
        let mv = ext.to_multivector(&v);
        for &f in &lowers {
            let img = lie_derivative_basis(alg, f, ActionSide::X, &mv);
            if img.is_zero() {
                continue;
            }
            let iv = ext.to_vec(&img);
            if span.insert(&iv)? {
                rows.push(iv.clone());
                queue.push_back(iv);
            }
        }
    }
    let expected = module_of_ideal(&alg.root_system, a)?.dimension;
    if rows.len() as u64 != expected {
        return Err(Error::Internal(format!(
            "module of ideal {:?} closed at dimension {}, Weyl formula gives {expected}",
            a.roots,
            rows.len()
        )));
    }
    Ok(rows)
}

/// Invariant-form pairing of two degree-d monomials: the Gram determinant of
/// their factors.
///
/// The form pairs root vectors only with their opposites and Cartan elements
/// only among themselves, so a nonzero determinant forces the root parts to
/// be mirror images and the Cartan counts to agree; that structural test
/// rejects almost every pair without touching the Gram matrix.
pub fn mono_pairing(alg: &LieAlgebra, a: u64, b: u64) -> Rat {
    let cartan_mask = (1u64 << alg.rank) - 1;
    let e_shift = alg.rank;
    let f_shift = alg.rank + alg.num_pos;
    let root_mirror = |m: u64| -> u64 {
        let e_part = (m >> e_shift) & ((1u64 << alg.num_pos) - 1);
        let f_part = m >> f_shift;
        (e_part << f_shift) | (f_part << e_shift)
    };
    if root_mirror(a & !cartan_mask) != (b & !cartan_mask)
        || (a & cartan_mask).count_ones() != (b & cartan_mask).count_ones()
    {
        return rat(0);
    }
    let bits = |m: u64| {
        let mut v = Vec::new();
        let mut mm = m;
        while mm != 0 {
            v.push(mm.trailing_zeros() as usize);
            mm &= mm - 1;
        }
        v
    };
    let ba = bits(a);
    let bb = bits(b);
    debug_assert_eq!(ba.len(), bb.len());
    let n = ba.len();
    if n == 0 {
        return rat(1);
    }
    let mut m: Vec<Vec<Rat>> =
        ba.iter().map(|&i| bb.iter().map(|&j| alg.gram[i][j].clone()).collect()).collect();
    // small dense determinant by fraction-free elimination
    let mut det = rat(1);
    let mut sign = rat(1);
    for col in 0..n {
        let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
            None => return rat(0),
            Some(p) => p,
        };
        if piv != col {
            m.swap(col, piv);
            sign = -sign;
        }
        let p = m[col][col].clone();
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone() / p.clone();
            for c in col..n {
                let sub = f.clone() * m[col][c].clone();
                m[r][c] -= sub;
            }
        }
        det *= p;
    }
    det * sign
}

/// Pairing of two sparse vectors over the same exterior-degree slice.
pub fn slice_pairing(alg: &LieAlgebra, ext: &ExteriorDegree, u: &SparseVec, v: &SparseVec) -> Rat {
    let mut acc = rat(0);
    for (i, ci) in u {
        for (j, cj) in v {
            let p = mono_pairing(alg, ext.masks[*i], ext.masks[*j]);
            if !p.is_zero() {
                acc += ci.clone() * cj.clone() * p;
            }
        }
    }
    acc
}

/// mu20 generator family restricted to one copy: mask -> coefficient maps.
pub fn single_copy_mu(alg: &LieAlgebra) -> Result<Vec<Vec<(u64, Rat)>>> {
    let gens = ideal_generators(alg)?;
    Ok(gens
        .mu20
        .iter()
        .map(|m| m.terms().map(|(k, c)| (k.x, c.clone())).collect())
        .collect())
}

/// The Kostant relation ideal slice J[d] inside one exterior copy, per weight
/// block: span of mu ^ (degree d-2 monomials).
pub fn j_component_blocks(
    alg: &LieAlgebra,
    d: usize,
    ext: &ExteriorDegree,
) -> Result<BTreeMap<Weight, SubspaceBasis>> {
    let mut out: BTreeMap<Weight, SubspaceBasis> = BTreeMap::new();
    for (w, positions) in &ext.blocks {
        out.insert(w.clone(), SubspaceBasis::new(positions.len()));
    }
    if d < 2 {
        return Ok(out);
    }
    let mu = single_copy_mu(alg)?;
    let lower = degree_masks(alg.dim, d - 2);
    let local: BTreeMap<Weight, BTreeMap<usize, usize>> = ext
        .blocks
        .iter()
        .map(|(w, positions)| {
            (w.clone(), positions.iter().enumerate().map(|(l, g)| (*g, l)).collect())
        })
        .collect();
    for (k, fam) in mu.iter().enumerate() {
        let wk = mono_weight(alg, &MonoKey { x: 0, y: 0 });
        debug_assert_eq!(wk.len(), alg.rank);
        let kw: Weight = alg
            .basis_weight(k)
            .to_vec();
        for &m in &lower {
            let mut vec_terms: BTreeMap<u64, Rat> = BTreeMap::new();
            for (mask, c) in fam {
                if let Some((res, sign)) =
                    wedge_mono(MonoKey { x: *mask, y: 0 }, MonoKey { x: m, y: 0 })
                {
                    let e = vec_terms.entry(res.x).or_insert_with(Rat::zero);
                    *e += c.clone() * rat(sign);
                }
            }
            vec_terms.retain(|_, c| !c.is_zero());
            if vec_terms.is_empty() {
                continue;
            }
            let mut w = mono_weight(alg, &MonoKey { x: m, y: 0 });
            for (acc, c) in w.iter_mut().zip(&kw) {
                *acc += c;
            }
            let loc = &local[&w];
            let mut v: SparseVec = vec_terms
                .into_iter()
                .map(|(mask, c)| (loc[&ext.mask_pos[&mask]], c))
                .collect();
            v.sort_by_key(|(i, _)| *i);
            out.get_mut(&w).unwrap().insert(&v)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, Series};
    use crate::chevalley::lie_algebra;
    use crate::roots::build_root_system;

    fn alg(s: Series, n: usize) -> LieAlgebra {
        lie_algebra(CartanType::new(s, n).unwrap()).unwrap()
    }

    /// Brute-force oracle: test every subset of positive roots.
    fn brute_force_ideals(rs: &RootSystem) -> Vec<Vec<usize>> {
        let n = rs.positive_roots.len();
        assert!(n <= 16);
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let set: BTreeSet<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if is_upward_closed(rs, &set) && is_abelian(rs, &set) {
                out.push(set.into_iter().collect());
            }
        }
        out.sort_by_key(|a: &Vec<usize>| (a.len(), a.clone()));
        out
    }

    #[test]
    fn a1_two_ideals() {
        let rs = build_root_system(CartanType::new(Series::A, 1).unwrap()).unwrap();
        let ideals = enumerate_abelian_ideals(&rs).unwrap();
        assert_eq!(ideals.len(), 2);
        assert_eq!(ideals[0].roots, Vec::<usize>::new());
        assert_eq!(ideals[1].roots, vec![0]);
    }

    #[test]
    fn g2_ideals_match_known_chain() {
        let a = alg(Series::G, 2);
        let rs = &a.root_system;
        let ideals = enumerate_abelian_ideals(rs).unwrap();
        assert_eq!(ideals.len(), 4);
        let as_roots: Vec<Vec<Vec<i64>>> = ideals
            .iter()
            .map(|i| i.roots.iter().map(|&r| rs.positive_roots[r].clone()).collect())
            .collect();
        assert_eq!(as_roots[0], Vec::<Vec<i64>>::new());
        assert_eq!(as_roots[1], vec![vec![3, 2]]);
        // sets, order-insensitive
        let to_set = |v: &Vec<Vec<i64>>| -> BTreeSet<Vec<i64>> { v.iter().cloned().collect() };
        assert_eq!(to_set(&as_roots[2]), BTreeSet::from([vec![3, 2], vec![3, 1]]));
        assert_eq!(to_set(&as_roots[3]), BTreeSet::from([vec![3, 2], vec![3, 1], vec![2, 1]]));
    }

    #[test]
    fn rank_two_counts_match_brute_force() {
        for (s, n) in [(Series::A, 2), (Series::B, 2), (Series::G, 2)] {
            let rs = build_root_system(CartanType::new(s, n).unwrap()).unwrap();
            let fast: Vec<Vec<usize>> =
                enumerate_abelian_ideals(&rs).unwrap().into_iter().map(|a| a.roots).collect();
            let brute = brute_force_ideals(&rs);
            assert_eq!(fast, brute, "{s:?}{n}");
            assert_eq!(fast.len(), 4);
        }
    }

    #[test]
    fn counts_are_powers_of_two_up_to_rank_four() {
        for (s, n) in [
            (Series::A, 3),
            (Series::A, 4),
            (Series::B, 3),
            (Series::B, 4),
            (Series::C, 3),
            (Series::C, 4),
            (Series::D, 4),
        ] {
            let rs = build_root_system(CartanType::new(s, n).unwrap()).unwrap();
            let ideals = enumerate_abelian_ideals(&rs).unwrap();
            assert_eq!(ideals.len(), 1 << n, "{s:?}{n}");
        }
    }

    #[test]
    fn module_descriptors() {
        let a = alg(Series::G, 2);
        let rs = &a.root_system;
        let ideals = enumerate_abelian_ideals(rs).unwrap();
        let descs: Vec<ModuleDescriptor> =
            ideals.iter().map(|i| module_of_ideal(rs, i).unwrap()).collect();
        assert_eq!(descs[0].highest_weight, vec![0, 0]);
        assert_eq!(descs[0].dimension, 1);
        assert_eq!(descs[1].highest_weight, vec![0, 1]); // adjoint
        assert_eq!(descs[1].dimension, 14);
        assert_eq!(descs[1].casimir_eigenvalue, rat(1));
        assert_eq!(descs[2].highest_weight, vec![3, 0]);
        assert_eq!(descs[2].dimension, 77);
        // Degree 3: the root sum is 8a1+4a2 = 4 omega_1.
        assert_eq!(descs[3].highest_weight, vec![4, 0]);
        assert_eq!(descs[3].dimension, 182);
        assert_eq!(descs[3].casimir_eigenvalue, rat(3));
    }

    #[test]
    fn casimir_identity_on_degree_one() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2)] {
            let a = alg(s, n);
            let op = casimir_on_exterior(&a, 1).unwrap();
            for (i, col) in op.cols.iter().enumerate() {
                assert_eq!(col, &vec![(i, rat(1))], "{s:?}{n} column {i}");
            }
        }
    }

    #[test]
    fn casimir_zero_on_degree_zero() {
        let a = alg(Series::A, 2);
        let op = casimir_on_exterior(&a, 0).unwrap();
        assert_eq!(op.cols, vec![Vec::new()]);
    }

    #[test]
    fn sl2_wedge2_casimir_spectrum() {
        let a = alg(Series::A, 1);
        let op = casimir_on_exterior(&a, 2).unwrap();
        // wedge^2 sl2 is the adjoint again: C = identity, so (C-1) kernel is
        // everything and (C-2) kernel is zero.
        for (i, col) in op.cols.iter().enumerate() {
            assert_eq!(col, &vec![(i, rat(1))]);
        }
        assert_eq!(b_component(&a, 2).unwrap().rank(), 0);
    }

    #[test]
    fn casimir_self_adjoint_small() {
        for (s, n, d) in [(Series::A, 1, 2), (Series::A, 2, 2), (Series::B, 2, 2)] {
            let a = alg(s, n);
            let ext = ExteriorDegree::new(&a, d);
            let op = casimir_on_exterior(&a, d).unwrap();
            for i in 0..ext.dim() {
                for j in 0..ext.dim() {
                    let ci: SparseVec = vec![(i, rat(1))];
                    let cj: SparseVec = vec![(j, rat(1))];
                    let lhs = slice_pairing(&a, &ext, &op.apply(&ci), &cj);
                    let rhs = slice_pairing(&a, &ext, &ci, &op.apply(&cj));
                    assert_eq!(lhs, rhs, "{s:?}{n} d={d} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn b_component_dimensions_small_types() {
        let a1 = alg(Series::A, 1);
        assert_eq!(b_component(&a1, 0).unwrap().rank(), 1);
        assert_eq!(b_component(&a1, 1).unwrap().rank(), 3);
        assert_eq!(b_component(&a1, 2).unwrap().rank(), 0);

        let b2 = alg(Series::B, 2);
        let dims: Vec<usize> = (0..=4).map(|d| b_component(&b2, d).unwrap().rank()).collect();
        assert_eq!(dims, vec![1, 10, 35, 30, 0]);
    }

    #[test]
    fn g2_b2_is_77_dimensional() {
        let g2 = alg(Series::G, 2);
        assert_eq!(b_component(&g2, 2).unwrap().rank(), 77);
    }

    #[test]
    fn full_b_dimension_sum_small_types() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
            let a = alg(s, n);
            let rs = &a.root_system;
            let ideals = enumerate_abelian_ideals(rs).unwrap();
            let predicted: u64 =
                ideals.iter().map(|i| module_of_ideal(rs, i).unwrap().dimension).sum();
            let mut total = 0u64;
            for d in 0..=a.dim {
                total += b_component(&a, d).unwrap().rank() as u64;
            }
            assert_eq!(total, predicted, "{s:?}{n}");
        }
    }

    #[test]
    fn top_wedges_are_casimir_eigenvectors() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2)] {
            let a = alg(s, n);
            let ideals = enumerate_abelian_ideals(&a.root_system).unwrap();
            for ideal in &ideals {
                let mask = ideal_top_wedge_mask(&a, ideal);
                let v = Multivector::from_term(MonoKey { x: mask, y: 0 }, rat(1));
                let cv = casimir_apply(&a, &v).unwrap();
                assert_eq!(cv, v.scale(&rat(ideal.size() as i64)), "{s:?}{n} {:?}", ideal.roots);
            }
        }
    }

    #[test]
    fn kernel_map_degree_zero_is_zero() {
        let a = alg(Series::A, 2);
        let km = kernel_map(&a, 0).unwrap();
        assert_eq!(km.target_dim, 0);
        assert!(km.cols.iter().all(|c| c.is_empty()));
    }

    #[test]
    fn top_wedges_lie_in_kernel_map_kernel() {
        for (s, n) in [(Series::A, 2), (Series::B, 2), (Series::G, 2)] {
            let a = alg(s, n);
            let ideals = enumerate_abelian_ideals(&a.root_system).unwrap();
            for ideal in ideals.iter().filter(|i| i.size() >= 1) {
                let d = ideal.size() - 1;
                if d == 0 {
                    continue;
                }
                let km = kernel_map(&a, d).unwrap();
                let ext = ExteriorDegree::new(&a, d + 1);
                let mask = ideal_top_wedge_mask(&a, ideal);
                let v: SparseVec = vec![(ext.mask_pos[&mask], rat(1))];
                assert!(km.apply(&v).is_empty(), "{s:?}{n} {:?}", ideal.roots);
            }
        }
    }

    #[test]
    fn g2_kernel_map_kernel_equals_b2_component() {
        let a = alg(Series::G, 2);
        let km = kernel_map(&a, 1).unwrap();
        let ker = km.nullspace();
        assert_eq!(ker.rank(), 77);
        let b = b_component(&a, 2).unwrap();
        assert_eq!(b.rank(), 77);
        for row in b.rows_rational() {
            assert!(ker.member(&row).unwrap());
        }
    }

    #[test]
    fn b_component_contained_in_kernel_map_kernel() {
        for (s, n, dmax) in [(Series::A, 2, 2), (Series::B, 2, 3)] {
            let a = alg(s, n);
            for d in 1..=dmax {
                let b = b_component(&a, d + 1).unwrap();
                if b.rank() == 0 {
                    continue;
                }
                let km = kernel_map(&a, d).unwrap();
                for row in b.rows_rational() {
                    assert!(km.apply(&row).is_empty(), "{s:?}{n} d={d}");
                }
            }
        }
    }

    #[test]
    fn module_bases_close_at_weyl_dimension() {
        for (s, n) in [(Series::A, 2), (Series::B, 2)] {
            let a = alg(s, n);
            let ideals = enumerate_abelian_ideals(&a.root_system).unwrap();
            for ideal in &ideals {
                if ideal.size() == 0 {
                    continue;
                }
                let rows = module_basis(&a, ideal).unwrap();
                let desc = module_of_ideal(&a.root_system, ideal).unwrap();
                assert_eq!(rows.len() as u64, desc.dimension, "{s:?}{n} {:?}", ideal.roots);
                // Contained in B[d].
                let b = b_component(&a, ideal.size()).unwrap();
                for r in &rows {
                    assert!(b.member(r).unwrap());
                }
            }
        }
    }

    #[test]
    fn b_component_stable_under_action() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
            let a = alg(s, n);
            for d in 0..=3.min(a.dim) {
                let ext = ExteriorDegree::new(&a, d);
                let b = b_component(&a, d).unwrap();
                if b.rank() == 0 {
                    continue;
                }
                for row in b.rows_rational() {
                    let mv = ext.to_multivector(&row);
                    for g in 0..a.dim {
                        let img = lie_derivative_basis(&a, g, ActionSide::X, &mv);
                        if img.is_zero() {
                            continue;
                        }
                        assert!(b.member(&ext.to_vec(&img)).unwrap(), "{s:?}{n} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn j_blocks_complement_b_blocks() {
        for (s, n, d) in [(Series::A, 1, 2), (Series::A, 2, 2), (Series::B, 2, 3)] {
            let a = alg(s, n);
            let ext = ExteriorDegree::new(&a, d);
            let (_, b_blocks) = b_component_blocks(&a, d).unwrap();
            let j_blocks = j_component_blocks(&a, d, &ext).unwrap();
            for (w, positions) in &ext.blocks {
                let bk = b_blocks.get(w).map(|r| r.len()).unwrap_or(0);
                let jk = j_blocks[w].rank();
                assert_eq!(bk + jk, positions.len(), "{s:?}{n} d={d} block {w:?}");
            }
        }
    }
}
