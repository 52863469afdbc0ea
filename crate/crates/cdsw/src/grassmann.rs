//! Sparse exact arithmetic in the bigraded exterior algebra on two copies of
//! the algebra (the X copy and the Y copy).
//!
//! A monomial is a pair of bitmasks over the fixed Chevalley basis order, all
//! X factors before all Y factors, bits sorted ascending within each mask.
//! Signs come from counted transpositions against that canonical form, so
//! equality and hashing are exact.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::chevalley::{LieAlgebra, SparseRat};
use crate::error::{Error, Result};
use crate::rational::{rat, Rat};
use crate::rep::Weight;

/// Which copy of the algebra an operator acts through.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Action through the X copy, the Y copy, or both at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionSide {
    X,
    Y,
    Diagonal,
}

/// Canonical monomial: subsets of basis indices for the X and Y copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonoKey {
    pub x: u64,
    pub y: u64,
}

impl MonoKey {
    pub const ONE: MonoKey = MonoKey { x: 0, y: 0 };

    pub fn bidegree(&self) -> (usize, usize) {
        (self.x.count_ones() as usize, self.y.count_ones() as usize)
    }

    pub fn total_degree(&self) -> usize {
        (self.x.count_ones() + self.y.count_ones()) as usize
    }
}

/// Parity of the number of pairs (i in a, j in b) with i > j; the sign of
/// merging two internally sorted masks.
fn merge_sign(a: u64, b: u64) -> i64 {
    let mut swaps = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        // bits of a strictly above j
        let above = if j + 1 >= 64 { 0 } else { a >> (j + 1) };
        swaps += above.count_ones();
        bb &= bb - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Wedge of two monomials: None if a factor repeats.
pub fn wedge_mono(a: MonoKey, b: MonoKey) -> Option<(MonoKey, i64)> {
    if a.x & b.x != 0 || a.y & b.y != 0 {
        return None;
    }
    // Move b's X block left past a's Y block.
    let cross = (a.y.count_ones() * b.x.count_ones()) % 2;
    let mut sign = if cross == 0 { 1 } else { -1 };
    sign *= merge_sign(a.x, b.x);
    sign *= merge_sign(a.y, b.y);
    Some((MonoKey { x: a.x | b.x, y: a.y | b.y }, sign))
}

/// Sparse bigraded multivector with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    terms: BTreeMap<MonoKey, Rat>,
}

impl Multivector {
    pub fn zero() -> Self {
        Multivector { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Multivector::from_term(MonoKey::ONE, rat(1))
    }

    pub fn from_term(key: MonoKey, coeff: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Multivector { terms }
    }

    /// Single basis generator of one copy.
    pub fn generator(side: Side, index: usize) -> Self {
        let key = match side {
            Side::X => MonoKey { x: 1 << index, y: 0 },
            Side::Y => MonoKey { x: 0, y: 1 << index },
        };
        Multivector::from_term(key, rat(1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MonoKey, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &MonoKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, key: MonoKey, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Rat::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Multivector {
        if c.is_zero() {
            return Multivector::zero();
        }
        Multivector { terms: self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())).collect() }
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.scale(&rat(-1)))
    }

    /// True if every term has the given bidegree.
    pub fn is_homogeneous(&self, p: usize, q: usize) -> bool {
        self.terms.keys().all(|k| k.bidegree() == (p, q))
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| format!("{c} * (x:{:b}, y:{:b})", k.x, k.y))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Associative graded-commutative product.
pub fn wedge(u: &Multivector, v: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for (ka, ca) in &u.terms {
        for (kb, cb) in &v.terms {
            if let Some((k, s)) = wedge_mono(*ka, *kb) {
                out.add_term(k, ca.clone() * cb.clone() * rat(s));
            }
        }
    }
    out
}

/// Contraction by a covector on one copy: the odd derivation of bidegree
/// (-1,0) or (0,-1) sending the generator b_i of that copy to xi(b_i).
///
/// `xi` is given by its values on the basis, as a sparse vector.
pub fn contraction(xi: &SparseRat, side: Side, u: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for (key, c) in &u.terms {
        let mask = match side {
            Side::X => key.x,
            Side::Y => key.y,
        };
        let base_parity = match side {
            Side::X => 0,
            Side::Y => key.x.count_ones(),
        };
        for (i, xv) in xi {
            let bit = 1u64 << i;
            if mask & bit == 0 {
                continue;
            }
            let below = (mask & (bit - 1)).count_ones();
            let sign = if (base_parity + below) % 2 == 0 { 1 } else { -1 };
            let nk = match side {
                Side::X => MonoKey { x: key.x & !bit, y: key.y },
                Side::Y => MonoKey { x: key.x, y: key.y & !bit },
            };
            out.add_term(nk, c.clone() * xv.clone() * rat(sign));
        }
    }
    out
}

/// Covector paired with `a` through the invariant form: v -> (a, v).
pub fn form_covector(alg: &LieAlgebra, a: &SparseRat) -> SparseRat {
    let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
    for (i, c) in a {
        for (j, g) in alg.gram[*i].iter().enumerate() {
            if !g.is_zero() {
                let e = acc.entry(j).or_insert_with(Rat::zero);
                *e += c.clone() * g.clone();
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Lie derivative: the even derivation acting on generators of the chosen
/// copy (or both) by the adjoint action of `a`.
pub fn lie_derivative(
    alg: &LieAlgebra,
    a: &SparseRat,
    side: ActionSide,
    u: &Multivector,
) -> Multivector {
    let mut out = Multivector::zero();
    for (key, c) in &u.terms {
        if matches!(side, ActionSide::X | ActionSide::Diagonal) {
            derive_mask(alg, a, key, c, Side::X, &mut out);
        }
        if matches!(side, ActionSide::Y | ActionSide::Diagonal) {
            derive_mask(alg, a, key, c, Side::Y, &mut out);
        }
    }
    out
}

fn derive_mask(
    alg: &LieAlgebra,
    a: &SparseRat,
    key: &MonoKey,
    c: &Rat,
    side: Side,
    out: &mut Multivector,
) {
    let mask = match side {
        Side::X => key.x,
        Side::Y => key.y,
    };
    let mut mm = mask;
    while mm != 0 {
        let p = mm.trailing_zeros() as usize;
        mm &= mm - 1;
        let bracket = alg.bracket_vec_basis(a, p);
        for (m, bc) in &bracket {
            if *m == p {
                out.add_term(*key, c.clone() * bc.clone());
                continue;
            }
            let mbit = 1u64 << m;
            if mask & mbit != 0 {
                continue; // repeated factor
            }
            let pbit = 1u64 << p;
            let removed = mask & !pbit;
            let pos_p = (mask & (pbit - 1)).count_ones();
            let pos_m = (removed & (mbit - 1)).count_ones();
            let sign = if (pos_p + pos_m) % 2 == 0 { 1 } else { -1 };
            let nk = match side {
                Side::X => MonoKey { x: (key.x & !pbit) | mbit, y: key.y },
                Side::Y => MonoKey { x: key.x, y: (key.y & !pbit) | mbit },
            };
            out.add_term(nk, c.clone() * bc.clone() * rat(sign));
        }
    }
}

/// Lie derivative by a single basis element.
pub fn lie_derivative_basis(
    alg: &LieAlgebra,
    basis_index: usize,
    side: ActionSide,
    u: &Multivector,
) -> Multivector {
    lie_derivative(alg, &vec![(basis_index, rat(1))], side, u)
}

/// Exact bidegree-(p, q) component.
pub fn component(u: &Multivector, p: usize, q: usize) -> Multivector {
    Multivector {
        terms: u
            .terms
            .iter()
            .filter(|(k, _)| k.bidegree() == (p, q))
            .map(|(k, c)| (*k, c.clone()))
            .collect(),
    }
}

/// The unique (up to scale) diagonal-invariant element of bidegree (1,1):
/// the form-dual of the identity, S = sum_{i,j} gram^{-1}_{ij} x_i wedge y_j.
pub fn s_element(alg: &LieAlgebra) -> Multivector {
    let mut out = Multivector::zero();
    let ginv = alg.gram_inverse();
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            if !ginv[i][j].is_zero() {
                out.add_term(MonoKey { x: 1 << i, y: 1 << j }, ginv[i][j].clone());
            }
        }
    }
    out
}

/// The three adjoint families generating the relation ideal: for each basis
/// element b_k,
///   mu20_k = sum_i b^i wedge [b_i, b_k]   (both factors in the X copy),
///   mu11_k = sum_i b^i_X wedge [b_i, b_k]_Y,
///   mu02_k = the X-copy family moved to the Y copy,
/// with b^i the form-dual basis. Each family spans the unique adjoint
/// submodule of its bidegree slice and is permuted into itself by the
/// diagonal action.
#[derive(Debug, Clone)]
pub struct IdealGenerators {
    pub mu20: Vec<Multivector>,
    pub mu11: Vec<Multivector>,
    pub mu02: Vec<Multivector>,
}

pub fn ideal_generators(alg: &LieAlgebra) -> Result<IdealGenerators> {
    let ginv = alg.gram_inverse();
    if ginv.is_empty() {
        return Err(Error::Internal("degenerate invariant form".into()));
    }
    let dim = alg.dim;
    let mut mu20 = Vec::with_capacity(dim);
    let mut mu11 = Vec::with_capacity(dim);
    let mut mu02 = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut m20 = Multivector::zero();
        let mut m11 = Multivector::zero();
        let mut m02 = Multivector::zero();
        for i in 0..dim {
            for (m, n) in alg.bracket(i, k) {
                let n = rat(*n);
                for (ip, g) in ginv[i].iter().enumerate() {
                    if g.is_zero() {
                        continue;
                    }
                    let coeff = g.clone() * n.clone();
                    // X^ip wedge X^m
                    if ip != *m {
                        let (lo, hi, sgn) = if ip < *m { (ip, *m, 1) } else { (*m, ip, -1) };
                        m20.add_term(
                            MonoKey { x: (1 << lo) | (1 << hi), y: 0 },
                            coeff.clone() * rat(sgn),
                        );
                        m02.add_term(
                            MonoKey { x: 0, y: (1 << lo) | (1 << hi) },
                            coeff.clone() * rat(sgn),
                        );
                    }
                    // X^ip wedge Y^m: already in canonical order.
                    m11.add_term(MonoKey { x: 1 << ip, y: 1 << *m }, coeff);
                }
            }
        }
        mu20.push(m20);
        mu11.push(m11);
        mu02.push(m02);
    }
    Ok(IdealGenerators { mu20, mu11, mu02 })
}

/// Weight (fundamental coordinates) of a monomial: sum over its factors.
pub fn mono_weight(alg: &LieAlgebra, key: &MonoKey) -> Weight {
    let mut w = vec![0i64; alg.rank];
    for mask in [key.x, key.y] {
        let mut mm = mask;
        while mm != 0 {
            let i = mm.trailing_zeros() as usize;
            mm &= mm - 1;
            for (acc, &c) in w.iter_mut().zip(alg.basis_weight(i)) {
                *acc += c;
            }
        }
    }
    w
}

/// All d-subsets of {0..dim-1} as masks, ascending numeric order.
pub fn degree_masks(dim: usize, d: usize) -> Vec<u64> {
    assert!(dim <= 64);
    let mut out = Vec::new();
    if d > dim {
        return out;
    }
    if d == 0 {
        out.push(0);
        return out;
    }
    // Gosper-style enumeration from the smallest mask.
    let mut v: u64 = (1u64 << d) - 1;
    let limit: u64 = if dim == 64 { u64::MAX } else { (1u64 << dim) - 1 };
    loop {
        out.push(v);
        // next combination
        let c = v & v.wrapping_neg();
        let r = v + c;
        if r > limit || r == 0 {
            break;
        }
        v = (((r ^ v) >> 2) / c) | r;
        if v > limit {
            break;
        }
    }
    out
}

/// Monomials of one bidegree grouped by weight; deterministic order inside
/// each group.
pub fn bidegree_monomials_by_weight(
    alg: &LieAlgebra,
    p: usize,
    q: usize,
) -> BTreeMap<Weight, Vec<MonoKey>> {
    let xs = degree_masks(alg.dim, p);
    let ys = degree_masks(alg.dim, q);
    let mut xw: Vec<Weight> = Vec::with_capacity(xs.len());
    for &m in &xs {
        xw.push(mono_weight(alg, &MonoKey { x: m, y: 0 }));
    }
    let mut out: BTreeMap<Weight, Vec<MonoKey>> = BTreeMap::new();
    for (xi, &xm) in xs.iter().enumerate() {
        for &ym in &ys {
            let key = MonoKey { x: xm, y: ym };
            let mut w = xw[xi].clone();
            let yweight = mono_weight(alg, &MonoKey { x: ym, y: 0 });
            for (a, b) in w.iter_mut().zip(&yweight) {
                *a += b;
            }
            out.entry(w).or_default().push(key);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{CartanType, Series};
    use crate::chevalley::lie_algebra;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn alg(s: Series, n: usize) -> LieAlgebra {
        lie_algebra(CartanType::new(s, n).unwrap()).unwrap()
    }

    // Independent sign oracle: monomials as letter sequences, signs by
    // explicit bubble sort with an odd-swap count.
    fn oracle_wedge(a: &[(u8, usize)], b: &[(u8, usize)]) -> Option<(Vec<(u8, usize)>, i64)> {
        let mut letters: Vec<(u8, usize)> = a.iter().chain(b.iter()).cloned().collect();
        let mut sign = 1i64;
        let n = letters.len();
        for i in 0..n {
            for j in 0..n.saturating_sub(i + 1) {
                if letters[j] > letters[j + 1] {
                    letters.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        for w in letters.windows(2) {
            if w[0] == w[1] {
                return None;
            }
        }
        Some((letters, sign))
    }

    fn key_letters(k: MonoKey) -> Vec<(u8, usize)> {
        let mut out = Vec::new();
        for i in 0..64 {
            if k.x & (1 << i) != 0 {
                out.push((0u8, i));
            }
        }
        for i in 0..64 {
            if k.y & (1 << i) != 0 {
                out.push((1u8, i));
            }
        }
        out
    }

    fn random_key(rng: &mut StdRng, dim: usize, p: usize, q: usize) -> MonoKey {
        let mut x = 0u64;
        while (x.count_ones() as usize) < p {
            x |= 1 << rng.gen_range(0..dim);
        }
        let mut y = 0u64;
        while (y.count_ones() as usize) < q {
            y |= 1 << rng.gen_range(0..dim);
        }
        MonoKey { x, y }
    }

    fn random_mv(rng: &mut StdRng, dim: usize, p: usize, q: usize, terms: usize) -> Multivector {
        let mut mv = Multivector::zero();
        for _ in 0..terms {
            let k = random_key(rng, dim, p, q);
            mv.add_term(k, rat(rng.gen_range(-5..=5)));
        }
        mv
    }

    fn random_elem(rng: &mut StdRng, dim: usize) -> SparseRat {
        let mut v: SparseRat = Vec::new();
        for i in 0..dim {
            if rng.gen_bool(0.3) {
                let c = rng.gen_range(-3..=3i64);
                if c != 0 {
                    v.push((i, rat(c)));
                }
            }
        }
        v
    }

    #[test]
    fn odd_square_is_zero() {
        let x1 = Multivector::generator(Side::X, 1);
        assert!(wedge(&x1, &x1).is_zero());
    }

    #[test]
    fn x_before_y_convention() {
        let x1 = Multivector::generator(Side::X, 1);
        let y1 = Multivector::generator(Side::Y, 1);
        let p = wedge(&x1, &y1);
        assert_eq!(p.coeff(&MonoKey { x: 2, y: 2 }), rat(1));
        let q = wedge(&y1, &x1);
        assert_eq!(q.coeff(&MonoKey { x: 2, y: 2 }), rat(-1));
    }

    #[test]
    fn wedge_signs_match_permutation_oracle() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..2000 {
            let (pa, qa) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let (pb, qb) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let a = random_key(&mut rng, 10, pa, qa);
            let b = random_key(&mut rng, 10, pb, qb);
            let ours = wedge_mono(a, b);
            let oracle = oracle_wedge(&key_letters(a), &key_letters(b));
            match (ours, oracle) {
                (None, None) => {}
                (Some((k, s)), Some((letters, os))) => {
                    assert_eq!(key_letters(k), letters);
                    assert_eq!(s, os, "sign mismatch for {a:?} {b:?}");
                }
                (x, y) => panic!("collision disagreement {a:?} {b:?}: {x:?} vs {y:?}"),
            }
        }
    }

    #[test]
    fn graded_commutativity_and_associativity() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..300 {
            let (p1, q1) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let (p2, q2) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let u = random_mv(&mut rng, 8, p1, q1, 3);
            let v = random_mv(&mut rng, 8, p2, q2, 3);
            let (pw, qw) = (rng.gen_range(0..2), rng.gen_range(0..2));
            let w = random_mv(&mut rng, 8, pw, qw, 3);
            let uv = wedge(&u, &v);
            let vu = wedge(&v, &u);
            let sign = if ((p1 + q1) * (p2 + q2)) % 2 == 0 { rat(1) } else { rat(-1) };
            assert_eq!(uv, vu.scale(&sign));
            assert_eq!(wedge(&wedge(&u, &v), &w), wedge(&u, &wedge(&v, &w)));
        }
    }

    #[test]
    fn contraction_basics() {
        // I_{x1*}(x1 ^ x2) = x2, and I on the unit vanishes.
        let x1 = Multivector::generator(Side::X, 1);
        let x2 = Multivector::generator(Side::X, 2);
        let u = wedge(&x1, &x2);
        let xi: SparseRat = vec![(1, rat(1))];
        let c = contraction(&xi, Side::X, &u);
        assert_eq!(c, x2);
        assert!(contraction(&xi, Side::X, &Multivector::one()).is_zero());
        // I_xi I_xi = 0.
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let u = random_mv(&mut rng, 8, 3, 2, 4);
            let xi = random_elem(&mut rng, 8);
            let c2 = contraction(&xi, Side::X, &contraction(&xi, Side::X, &u));
            assert!(c2.is_zero());
        }
    }

    #[test]
    fn contraction_wedge_anticommutator() {
        // I_xi W_v + W_v I_xi = xi(v) id on each copy.
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..300 {
            let side = if rng.gen_bool(0.5) { Side::X } else { Side::Y };
            let (pu, qu) = (rng.gen_range(0..4), rng.gen_range(0..4));
            let u = random_mv(&mut rng, 8, pu, qu, 4);
            let xi = random_elem(&mut rng, 8);
            let vvec = random_elem(&mut rng, 8);
            let mut v = Multivector::zero();
            let mut pairing = rat(0);
            for (i, c) in &vvec {
                v.add_term(
                    match side {
                        Side::X => MonoKey { x: 1 << i, y: 0 },
                        Side::Y => MonoKey { x: 0, y: 1 << i },
                    },
                    c.clone(),
                );
                if let Some((_, xc)) = xi.iter().find(|(j, _)| j == i) {
                    pairing += xc.clone() * c.clone();
                }
            }
            let lhs = contraction(&xi, side, &wedge(&v, &u)).add(&wedge(&v, &contraction(&xi, side, &u)));
            assert_eq!(lhs, u.scale(&pairing));
        }
    }

    #[test]
    fn contraction_is_odd_derivation() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..300 {
            let (p1, q1) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let u = random_mv(&mut rng, 8, p1, q1, 3);
            let (pv, qv) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let v = random_mv(&mut rng, 8, pv, qv, 3);
            let xi = random_elem(&mut rng, 8);
            let side = if rng.gen_bool(0.5) { Side::X } else { Side::Y };
            let lhs = contraction(&xi, side, &wedge(&u, &v));
            let sign = if (p1 + q1) % 2 == 0 { rat(1) } else { rat(-1) };
            let rhs = wedge(&contraction(&xi, side, &u), &v)
                .add(&wedge(&u, &contraction(&xi, side, &v)).scale(&sign));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lie_derivative_weight_vectors() {
        // L_h e_alpha-generator = alpha(h) times it.
        let a = alg(Series::G, 2);
        for r in 0..a.num_pos {
            let e = Multivector::generator(Side::X, a.e_index(r));
            for i in 0..a.rank {
                let l = lie_derivative_basis(&a, a.h_index(i), ActionSide::Diagonal, &e);
                let alpha_h = a.basis_weight(a.e_index(r))[i];
                assert_eq!(l, e.scale(&rat(alpha_h)));
            }
        }
    }

    #[test]
    fn lie_derivative_is_even_derivation_and_commutator_law() {
        let a = alg(Series::A, 2);
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..150 {
            let (pu, qu) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let u = random_mv(&mut rng, a.dim, pu, qu, 3);
            let (pv, qv) = (rng.gen_range(0..3), rng.gen_range(0..3));
            let v = random_mv(&mut rng, a.dim, pv, qv, 3);
            let x = random_elem(&mut rng, a.dim);
            let y = random_elem(&mut rng, a.dim);
            for side in [ActionSide::X, ActionSide::Diagonal] {
                // Derivation law.
                let lhs = lie_derivative(&a, &x, side, &wedge(&u, &v));
                let rhs = wedge(&lie_derivative(&a, &x, side, &u), &v)
                    .add(&wedge(&u, &lie_derivative(&a, &x, side, &v)));
                assert_eq!(lhs, rhs);
                // L_[x,y] = L_x L_y - L_y L_x.
                let br = a.bracket_vecs(&x, &y);
                let lhs2 = lie_derivative(&a, &br, side, &u);
                let rhs2 = lie_derivative(&a, &x, side, &lie_derivative(&a, &y, side, &u))
                    .sub(&lie_derivative(&a, &y, side, &lie_derivative(&a, &x, side, &u)));
                assert_eq!(lhs2, rhs2);
            }
        }
    }

    #[test]
    fn commutator_law_on_wedge2_sl2_e_f() {
        let a = alg(Series::A, 1);
        let (e, f) = (a.e_index(0), a.f_index(0));
        let ev: SparseRat = vec![(e, rat(1))];
        let fv: SparseRat = vec![(f, rat(1))];
        let br = a.bracket_vecs(&ev, &fv); // = h
        for mask in degree_masks(3, 2) {
            let u = Multivector::from_term(MonoKey { x: mask, y: 0 }, rat(1));
            let lhs = lie_derivative(&a, &br, ActionSide::X, &u);
            let rhs = lie_derivative(&a, &ev, ActionSide::X, &lie_derivative(&a, &fv, ActionSide::X, &u))
                .sub(&lie_derivative(&a, &fv, ActionSide::X, &lie_derivative(&a, &ev, ActionSide::X, &u)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn s_element_shape_and_invariance() {
        let a1 = alg(Series::A, 1);
        let s = s_element(&a1);
        assert!(s.is_homogeneous(1, 1));
        // Chevalley basis of sl2: 1/2 h^h pairing plus two e/f cross terms.
        assert_eq!(s.num_terms(), 3);
        for t in [Series::A, Series::G] {
            let a = alg(t, if t == Series::G { 2 } else { 2 });
            let s = s_element(&a);
            for i in 0..a.dim {
                let l = lie_derivative_basis(&a, i, ActionSide::Diagonal, &s);
                assert!(l.is_zero(), "L_{} S != 0 for {t:?}", a.basis_label(i));
            }
        }
    }

    #[test]
    fn s_squared_nonzero_in_full_algebra_sl2() {
        let a = alg(Series::A, 1);
        let s = s_element(&a);
        let s2 = wedge(&s, &s);
        assert!(!s2.is_zero());
        assert!(s2.is_homogeneous(2, 2));
        assert_eq!(component(&s2, 2, 2), s2);
        assert!(component(&s2, 2, 0).is_zero());
        assert_eq!(component(&s, 1, 1), s);
    }

    #[test]
    fn ideal_generator_bidegrees_and_equivariance() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2)] {
            let a = alg(s, n);
            let gens = ideal_generators(&a).unwrap();
            assert_eq!(gens.mu20.len(), a.dim);
            for k in 0..a.dim {
                assert!(gens.mu20[k].is_homogeneous(2, 0));
                assert!(gens.mu11[k].is_homogeneous(1, 1));
                assert!(gens.mu02[k].is_homogeneous(0, 2));
            }
            // Equivariance: L_a mu_k = mu([a, b_k]) for every basis a.
            for i in 0..a.dim {
                for k in 0..a.dim {
                    for (fam, side) in [(&gens.mu20, 0), (&gens.mu11, 1), (&gens.mu02, 2)] {
                        let lhs = lie_derivative_basis(&a, i, ActionSide::Diagonal, &fam[k]);
                        let mut rhs = Multivector::zero();
                        for (m, c) in a.bracket(i, k) {
                            rhs = rhs.add(&fam[*m].scale(&rat(*c)));
                        }
                        assert_eq!(lhs, rhs, "{s:?}{n} family {side} index ({i},{k})");
                    }
                }
            }
        }
    }

    #[test]
    fn sl2_mu20_span_is_all_of_wedge2() {
        use crate::linalg::echelonize;
        let a = alg(Series::A, 1);
        let gens = ideal_generators(&a).unwrap();
        let masks = degree_masks(3, 2);
        let index: BTreeMap<u64, usize> =
            masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let vecs: Vec<crate::linalg::SparseVec> = gens
            .mu20
            .iter()
            .map(|m| {
                m.terms().map(|(k, c)| (index[&k.x], c.clone())).collect::<Vec<_>>()
            })
            .collect();
        let b = echelonize(3, &vecs).unwrap();
        assert_eq!(b.rank(), 3); // so B[2] = 0 for sl2
    }

    #[test]
    fn degree_masks_count() {
        assert_eq!(degree_masks(14, 2).len(), 91);
        assert_eq!(degree_masks(14, 4).len(), 1001);
        assert_eq!(degree_masks(5, 0), vec![0]);
        let m3 = degree_masks(5, 3);
        assert_eq!(m3.len(), 10);
        let mut sorted = m3.clone();
        sorted.sort();
        assert_eq!(m3, sorted);
    }
}
