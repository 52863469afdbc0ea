//! Character-level representation theory.
//!
//! Weights live in fundamental-weight coordinates (integer vectors), so
//! dominance is a sign check. Everything here is independent of the
//! exterior-algebra machinery and doubles as the oracle for it.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::chevalley::LieAlgebra;
use crate::error::{Error, Result};
use crate::rational::{is_integer, rat, Rat};
use crate::roots::RootSystem;

/// A weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;

/// Formal character: finite multiset of weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    pub mults: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new() -> Self {
        Character { mults: BTreeMap::new() }
    }

    pub fn from_weights<I: IntoIterator<Item = Weight>>(ws: I) -> Self {
        let mut ch = Character::new();
        for w in ws {
            ch.add(w, 1);
        }
        ch
    }

    pub fn add(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        match self.mults.entry(w) {
            Entry::Vacant(e) => {
                e.insert(m);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += m;
                if *e.get() == 0 {
                    e.remove();
                }
            }
        }
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    /// Total mass: sum of multiplicities.
    pub fn mass(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    /// Character of the dual representation: negate every weight.
    pub fn dual(&self) -> Character {
        let mut ch = Character::new();
        for (w, m) in &self.mults {
            ch.add(w.iter().map(|c| -c).collect(), *m);
        }
        ch
    }

    /// Product character (character of the tensor product).
    pub fn product(&self, other: &Character) -> Character {
        let mut ch = Character::new();
        for (w1, m1) in &self.mults {
            for (w2, m2) in &other.mults {
                let w: Weight = w1.iter().zip(w2).map(|(a, b)| a + b).collect();
                ch.add(w, m1 * m2);
            }
        }
        ch
    }
}

impl Default for Character {
    fn default() -> Self {
        Character::new()
    }
}

pub fn is_dominant(w: &Weight) -> bool {
    w.iter().all(|&c| c >= 0)
}

/// Cached weight geometry for one root system.
struct WeightGeom<'a> {
    rs: &'a RootSystem,
    /// (omega_i, omega_j).
    q: Vec<Vec<Rat>>,
    /// For each positive root alpha: the linear functional x -> (x, alpha)
    /// on fundamental coordinates.
    root_pair: Vec<Vec<Rat>>,
    /// Positive roots in fundamental coordinates.
    root_fund: Vec<Weight>,
}

impl<'a> WeightGeom<'a> {
    fn new(rs: &'a RootSystem) -> Self {
        let r = rs.rank;
        let mut q = vec![vec![Rat::zero(); r]; r];
        for i in 0..r {
            for j in 0..r {
                q[i][j] = rs.inner_rat(&rs.fundamental_weights[i], &rs.fundamental_weights[j]);
            }
        }
        let mut root_pair = Vec::new();
        let mut root_fund = Vec::new();
        for alpha in &rs.positive_roots {
            let a_rat: Vec<Rat> = alpha.iter().map(|&c| rat(c)).collect();
            let pair: Vec<Rat> = (0..r)
                .map(|j| rs.inner_rat(&rs.fundamental_weights[j], &a_rat))
                .collect();
            root_pair.push(pair);
            root_fund.push(rs.root_to_fund(alpha));
        }
        WeightGeom { rs, q, root_pair, root_fund }
    }

    fn inner(&self, x: &Weight, y: &Weight) -> Rat {
        let mut acc = Rat::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                acc += rat(xi * yj) * self.q[i][j].clone();
            }
        }
        acc
    }

    fn pair_root(&self, x: &Weight, alpha_idx: usize) -> Rat {
        let mut acc = Rat::zero();
        for (j, &xj) in x.iter().enumerate() {
            if xj != 0 {
                acc += rat(xj) * self.root_pair[alpha_idx][j].clone();
            }
        }
        acc
    }
}

/// Weyl dimension formula; exact, guaranteed integral.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<u64> {
    if lam.len() != rs.rank {
        return Err(Error::DimensionMismatch { expected: rs.rank, got: lam.len() });
    }
    if !is_dominant(lam) {
        return Err(Error::NotDominant(format!("{lam:?}")));
    }
    let geom = WeightGeom::new(rs);
    let rho = rs.rho_fund();
    let shifted: Weight = lam.iter().zip(&rho).map(|(&l, &r)| l + r).collect();
    let mut num = Rat::from_integer(1.into());
    let mut den = Rat::from_integer(1.into());
    for a in 0..rs.positive_roots.len() {
        num *= geom.pair_root(&shifted, a);
        den *= geom.pair_root(&rho, a);
    }
    let dim = num / den;
    if !is_integer(&dim) || dim.is_negative() {
        return Err(Error::Internal(format!("Weyl dimension of {lam:?} not a positive integer: {dim}")));
    }
    let n = dim.to_integer();
    u64::try_from(n).map_err(|_| Error::Internal("dimension exceeds u64".into()))
}

/// Full weight diagram of V(lambda) by Freudenthal's recursion.
pub fn freudenthal_multiplicities(rs: &RootSystem, lam: &Weight) -> Result<Character> {
    if !is_dominant(lam) {
        return Err(Error::NotDominant(format!("{lam:?}")));
    }
    let geom = WeightGeom::new(rs);
    let rho = rs.rho_fund();
    let lam_rho: Weight = lam.iter().zip(&rho).map(|(&l, &r)| l + r).collect();
    let top_norm = geom.inner(&lam_rho, &lam_rho);

    let mut mults: BTreeMap<Weight, i64> = BTreeMap::new();
    mults.insert(lam.clone(), 1);
    let mut frontier: Vec<Weight> = vec![lam.clone()];

    while !frontier.is_empty() {
        // Candidates one level down: frontier minus each simple root.
        let mut candidates: Vec<Weight> = Vec::new();
        for w in &frontier {
            for j in 0..rs.rank {
                let mut v = w.clone();
                for k in 0..rs.rank {
                    v[k] -= rs.cartan_matrix[j][k];
                }
                candidates.push(v);
            }
        }
        candidates.sort();
        candidates.dedup();

        let mut next_frontier = Vec::new();
        for mu in candidates {
            if mults.contains_key(&mu) {
                continue;
            }
            let mu_rho: Weight = mu.iter().zip(&rho).map(|(&m, &r)| m + r).collect();
            let divisor = top_norm.clone() - geom.inner(&mu_rho, &mu_rho);
            if divisor.is_zero() {
                continue; // not a weight of V(lambda)
            }
            let mut num = Rat::zero();
            for (a, alpha_f) in geom.root_fund.iter().enumerate() {
                let mut k = 1i64;
                loop {
                    let shifted: Weight =
                        mu.iter().zip(alpha_f).map(|(&m, &af)| m + k * af).collect();
                    match mults.get(&shifted) {
                        Some(&m_up) if m_up != 0 => {
                            num += rat(2 * m_up) * geom.pair_root(&shifted, a);
                        }
                        _ => {
                            // Weight strings have no gaps; stop at the first miss
                            // beyond the known support.
                            if !mults.contains_key(&shifted) {
                                break;
                            }
                        }
                    }
                    k += 1;
                }
            }
            let m = num / divisor;
            if !is_integer(&m) || m.is_negative() {
                return Err(Error::Internal(format!(
                    "Freudenthal multiplicity of {mu:?} in V({lam:?}) is {m}"
                )));
            }
            let m = m.to_integer();
            let m: i64 = i64::try_from(m).map_err(|_| Error::Internal("multiplicity overflow".into()))?;
            if m > 0 {
                mults.insert(mu.clone(), m);
                next_frontier.push(mu);
            }
        }
        frontier = next_frontier;
    }

    let ch = Character { mults };
    let dim = weyl_dimension(rs, lam)?;
    if ch.mass() != dim as i64 {
        return Err(Error::Internal(format!(
            "character mass {} of V({lam:?}) disagrees with Weyl dimension {dim}",
            ch.mass()
        )));
    }
    Ok(ch)
}

/// Formal character of the d-th exterior power of the adjoint representation:
/// elementary "symmetric function" in the basis weights.
pub fn character_of_exterior_power(alg: &LieAlgebra, d: usize) -> Character {
    assert!(d <= alg.dim, "exterior degree {d} exceeds dim {}", alg.dim);
    let zero: Weight = vec![0; alg.rank];
    let mut layers: Vec<BTreeMap<Weight, i64>> = vec![BTreeMap::new(); d + 1];
    layers[0].insert(zero, 1);
    for b in 0..alg.dim {
        let w = alg.basis_weight(b).to_vec();
        for k in (1..=d.min(b + 1)).rev() {
            let prev: Vec<(Weight, i64)> =
                layers[k - 1].iter().map(|(a, b)| (a.clone(), *b)).collect();
            for (mu, m) in prev {
                let nu: Weight = mu.iter().zip(&w).map(|(a, b)| a + b).collect();
                *layers[k].entry(nu).or_insert(0) += m;
            }
        }
    }
    Character { mults: layers.pop().unwrap() }
}

/// Height functional used for the stripping order: (mu, rho).
fn strip_height(geom: &WeightGeom, mu: &Weight) -> Rat {
    geom.pair_rho(mu)
}

impl<'a> WeightGeom<'a> {
    fn pair_rho(&self, x: &Weight) -> Rat {
        let rho = self.rs.rho_fund();
        self.inner(x, &rho)
    }
}

/// Decompose a genuine character into irreducibles by highest-weight
/// stripping. The maximal weight is chosen by the exact (mu, rho) height,
/// tie-broken lexicographically; the result is reconstruction-checked.
pub fn decompose(rs: &RootSystem, ch: &Character) -> Result<Vec<(Weight, u64)>> {
    let geom = WeightGeom::new(rs);
    let mut rem = ch.clone();
    let mut parts: Vec<(Weight, u64)> = Vec::new();
    let mut freud_cache: BTreeMap<Weight, Character> = BTreeMap::new();

    while !rem.is_empty() {
        // Maximal remaining weight.
        let mut best: Option<(&Weight, Rat)> = None;
        for w in rem.mults.keys() {
            let h = strip_height(&geom, w);
            match &best {
                None => best = Some((w, h)),
                Some((bw, bh)) => {
                    if h > *bh || (h == *bh && w > *bw) {
                        best = Some((w, h));
                    }
                }
            }
        }
        let top = best.unwrap().0.clone();
        let m = rem.mult(&top);
        if m < 0 {
            return Err(Error::NotACharacter(format!(
                "weight {top:?} has negative multiplicity {m}"
            )));
        }
        if !is_dominant(&top) {
            return Err(Error::NotACharacter(format!(
                "maximal weight {top:?} is not dominant"
            )));
        }
        let irr = match freud_cache.get(&top) {
            Some(c) => c.clone(),
            None => {
                let c = freudenthal_multiplicities(rs, &top)?;
                freud_cache.insert(top.clone(), c.clone());
                c
            }
        };
        for (w, im) in &irr.mults {
            rem.add(w.clone(), -m * im);
        }
        // Any weight pushed negative means the input was not a character.
        if let Some((w, bad)) = rem.mults.iter().find(|(_, &v)| v < 0) {
            return Err(Error::NotACharacter(format!(
                "weight {w:?} reaches multiplicity {bad} after stripping {top:?}"
            )));
        }
        parts.push((top, m as u64));
    }

    // Reconstruction check.
    let mut rebuilt = Character::new();
    for (lam, m) in &parts {
        let irr = &freud_cache[lam];
        for (w, im) in &irr.mults {
            rebuilt.add(w.clone(), *im * *m as i64);
        }
    }
    if rebuilt != *ch {
        return Err(Error::Internal("decomposition does not reconstruct the input".into()));
    }
    Ok(parts)
}

/// -w0(lambda): the dominant representative of the Weyl orbit of -lambda.
pub fn dual_weight(rs: &RootSystem, lam: &Weight) -> Result<Weight> {
    if !is_dominant(lam) {
        return Err(Error::NotDominant(format!("{lam:?}")));
    }
    let mut x: Weight = lam.iter().map(|c| -c).collect();
    loop {
        match x.iter().position(|&c| c < 0) {
            None => return Ok(x),
            Some(j) => x = rs.reflect_fund(&x, j),
        }
    }
}

/// Dimension of the space of invariants in V tensor W, computed from the
/// irreducible decompositions of the two characters.
pub fn invariant_dimension(rs: &RootSystem, ch_v: &Character, ch_w: &Character) -> Result<u64> {
    let dv = decompose(rs, ch_v)?;
    let dw: BTreeMap<Weight, u64> = decompose(rs, ch_w)?.into_iter().collect();
    let mut acc = 0u64;
    for (lam, m) in dv {
        let dual = dual_weight(rs, &lam)?;
        if let Some(mw) = dw.get(&dual) {
            acc += m * mw;
        }
    }
    Ok(acc)
}

/// Multiplicity of V(target) in the product of two characters.
pub fn multiplicity_in_product(
    rs: &RootSystem,
    target: &Weight,
    ch_a: &Character,
    ch_b: &Character,
) -> Result<u64> {
    let prod = ch_a.product(ch_b);
    let parts = decompose(rs, &prod)?;
    Ok(parts.into_iter().find(|(w, _)| w == target).map(|(_, m)| m).unwrap_or(0))
}

/// Character of the adjoint representation read off the algebra basis.
pub fn adjoint_character(alg: &LieAlgebra) -> Character {
    Character::from_weights((0..alg.dim).map(|i| alg.basis_weight(i).to_vec()))
}
