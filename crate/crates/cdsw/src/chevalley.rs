//! Chevalley bases: integer structure constants and the invariant form.
//!
//! Basis order is Cartan elements h_1..h_r first, then e_alpha by the fixed
//! root order, then f_alpha mirroring it. Signs of the structure constants
//! N_{alpha,beta} are pinned by choosing N > 0 on extraspecial pairs (the
//! special pair whose first member is minimal in the root order); every other
//! constant is propagated through the standard two identities
//!
//!   alpha+beta+gamma = 0:
//!     N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)
//!   alpha+beta+gamma+delta = 0, no two opposite:
//!     N_{a,b}N_{c,d}/(a+b,a+b) + N_{b,c}N_{a,d}/(b+c,b+c)
//!       + N_{c,a}N_{b,d}/(c+a,c+a) = 0.
//!
//! Everything is validated at construction: Jacobi on all basis triples,
//! |N_{alpha,beta}| = p+1 on root strings, invariance and nondegeneracy of
//! the form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::Zero;

use crate::cartan::CartanType;
use crate::error::{Error, Result};
use crate::rational::{is_integer, rat, to_i64, Rat};
use crate::roots::{build_root_system, RootSystem};

/// Sparse integer vector over basis indices.
pub type SparseInt = Vec<(usize, i64)>;
/// Sparse rational vector over basis indices.
pub type SparseRat = Vec<(usize, Rat)>;
/// Dense rational matrix, row-major.
pub type Mat = Vec<Vec<Rat>>;

/// A simple Lie algebra in a Chevalley basis.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    pub root_system: RootSystem,
    pub dim: usize,
    pub rank: usize,
    pub num_pos: usize,
    /// brackets[i][j] = [b_i, b_j] as a sparse integer vector.
    brackets: Vec<Vec<SparseInt>>,
    /// Gram matrix of the invariant form, (theta, theta) = 2 normalization.
    pub gram: Mat,
    gram_inv: Mat,
    /// Weight of each basis element in fundamental coordinates.
    basis_weights: Vec<Vec<i64>>,
}

impl LieAlgebra {
    pub fn h_index(&self, i: usize) -> usize {
        debug_assert!(i < self.rank);
        i
    }

    pub fn e_index(&self, root: usize) -> usize {
        debug_assert!(root < self.num_pos);
        self.rank + root
    }

    pub fn f_index(&self, root: usize) -> usize {
        debug_assert!(root < self.num_pos);
        self.rank + self.num_pos + root
    }

    /// Inverse of `e_index`/`f_index`: (root index, is_f) for a root-vector
    /// basis element; None for Cartan elements.
    pub fn root_of_index(&self, idx: usize) -> Option<(usize, bool)> {
        if idx < self.rank {
            None
        } else if idx < self.rank + self.num_pos {
            Some((idx - self.rank, false))
        } else {
            Some((idx - self.rank - self.num_pos, true))
        }
    }

    pub fn bracket(&self, i: usize, j: usize) -> &SparseInt {
        &self.brackets[i][j]
    }

    /// [x, b_m] for x a sparse rational combination of basis elements.
    pub fn bracket_vec_basis(&self, x: &SparseRat, m: usize) -> SparseRat {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, c) in x {
            for (k, n) in &self.brackets[*i][m] {
                let e = acc.entry(*k).or_insert_with(Rat::zero);
                *e += c.clone() * rat(*n);
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// [x, y] for sparse rational combinations.
    pub fn bracket_vecs(&self, x: &SparseRat, y: &SparseRat) -> SparseRat {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (i, a) in x {
            for (j, b) in y {
                for (k, n) in &self.brackets[*i][*j] {
                    let e = acc.entry(*k).or_insert_with(Rat::zero);
                    *e += a.clone() * b.clone() * rat(*n);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn gram_inverse(&self) -> &Mat {
        &self.gram_inv
    }

    pub fn basis_weight(&self, i: usize) -> &[i64] {
        &self.basis_weights[i]
    }

    pub fn basis_label(&self, i: usize) -> String {
        match self.root_of_index(i) {
            None => format!("h{}", i + 1),
            Some((r, false)) => format!("e[{}]", self.root_system.root_name(&self.root_system.positive_roots[r])),
            Some((r, true)) => format!("f[{}]", self.root_system.root_name(&self.root_system.positive_roots[r])),
        }
    }

    /// Adjoint action matrices ad(b_i), dense, one per basis element.
    pub fn adjoint_matrices(&self) -> Vec<Mat> {
        let n = self.dim;
        (0..n)
            .map(|i| {
                let mut m = vec![vec![Rat::zero(); n]; n];
                for j in 0..n {
                    for (k, c) in &self.brackets[i][j] {
                        m[*k][j] = rat(*c);
                    }
                }
                m
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

struct NTable {
    /// N over ordered pairs of positive-root indices with a root sum.
    pos: BTreeMap<(usize, usize), i64>,
}

fn build_n_table(rs: &RootSystem) -> Result<NTable> {
    let pos = &rs.positive_roots;
    let npos = pos.len();
    let mut all_roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    for r in pos {
        all_roots.insert(r.clone());
        all_roots.insert(r.iter().map(|c| -c).collect());
    }
    let diff = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(a, b)| a - b).collect() };
    let is_root = |v: &Vec<i64>| all_roots.contains(v);

    // p_{alpha,beta} = max k with beta - k alpha a root.
    let string_p = |alpha: &[i64], beta: &[i64]| -> i64 {
        let mut k = 0i64;
        loop {
            let cand: Vec<i64> = beta.iter().zip(alpha).map(|(b, a)| b - (k + 1) * a).collect();
            if is_root(&cand) {
                k += 1;
            } else {
                return k;
            }
        }
    };

    let norm2 = |v: &[i64]| rs.inner_int(v, v);

    let mut n_pos: BTreeMap<(usize, usize), i64> = BTreeMap::new();

    // Positive roots are ordered by height, so index order is a valid
    // induction order on the height of the sum.
    for g in 0..npos {
        let gamma = &pos[g];
        let mut specials: Vec<(usize, usize)> = Vec::new();
        for a in 0..npos {
            for b in (a + 1)..npos {
                let s: Vec<i64> = pos[a].iter().zip(&pos[b]).map(|(x, y)| x + y).collect();
                if &s == gamma {
                    specials.push((a, b));
                }
            }
        }
        if specials.is_empty() {
            continue;
        }
        let (eps, eta) = specials[0]; // minimal first member: extraspecial
        {
            let p = string_p(&pos[eps], &pos[eta]);
            n_pos.insert((eps, eta), p + 1);
            n_pos.insert((eta, eps), -(p + 1));
        }
        for &(ai, bi) in specials.iter().skip(1) {
            let alpha = &pos[ai];
            let beta = &pos[bi];
            let epsilon = &pos[eps];
            let eta_r = &pos[eta];
            let n_eps_eta = rat(n_pos[&(eps, eta)]);

            let mut rhs = Rat::zero();
            let u = diff(beta, epsilon);
            if is_root(&u) {
                let ui = rs.index_of(&u).ok_or_else(|| Error::Internal("u not positive".into()))?;
                let n_alpha_u = rat(*n_pos.get(&(ai, ui)).ok_or_else(|| miss(ai, ui))?);
                let n_eps_u = rat(*n_pos.get(&(eps, ui)).ok_or_else(|| miss(eps, ui))?);
                rhs += norm2(&u) * n_alpha_u * n_eps_u / (norm2(eta_r) * norm2(beta));
            }
            let v = diff(alpha, epsilon);
            if is_root(&v) {
                let vi = rs.index_of(&v).ok_or_else(|| Error::Internal("v not positive".into()))?;
                let n_eps_v = rat(*n_pos.get(&(eps, vi)).ok_or_else(|| miss(eps, vi))?);
                let n_beta_v = rat(*n_pos.get(&(bi, vi)).ok_or_else(|| miss(bi, vi))?);
                rhs -= norm2(&v) * n_eps_v * n_beta_v / (norm2(alpha) * norm2(eta_r));
            }
            let n_ab = norm2(gamma) * rhs / n_eps_eta;
            if !is_integer(&n_ab) {
                return Err(Error::Internal(format!(
                    "non-integral structure constant for pair ({ai},{bi}): {n_ab}"
                )));
            }
            let n_ab = to_i64(&n_ab);
            let p = string_p(alpha, beta);
            if n_ab.abs() != p + 1 {
                return Err(Error::Internal(format!(
                    "|N| mismatch for pair ({ai},{bi}): got {n_ab}, string gives {}",
                    p + 1
                )));
            }
            n_pos.insert((ai, bi), n_ab);
            n_pos.insert((bi, ai), -n_ab);
        }
    }
    Ok(NTable { pos: n_pos })
}

fn miss(a: usize, b: usize) -> Error {
    Error::Internal(format!("missing lower structure constant ({a},{b})"))
}

/// Build the Chevalley basis over a finished root system.
pub fn chevalley_basis(rs: &RootSystem) -> Result<LieAlgebra> {
    let rank = rs.rank;
    let npos = rs.positive_roots.len();
    let dim = rank + 2 * npos;
    let nt = build_n_table(rs)?;

    let norm2 = |idx: usize| rs.inner_int(&rs.positive_roots[idx], &rs.positive_roots[idx]);
    let diff = |x: &[i64], y: &[i64]| -> Vec<i64> { x.iter().zip(y).map(|(a, b)| a - b).collect() };
    let is_pos = |v: &Vec<i64>| rs.index_of(v).is_some();
    let neg = |v: &[i64]| -> Vec<i64> { v.iter().map(|c| -c).collect() };

    // N for a positive pair by index.
    let n_pp = |a: usize, b: usize| -> Option<i64> { nt.pos.get(&(a, b)).copied() };
    // N_{alpha, -delta} for positive indices alpha, delta with alpha != delta.
    let n_pm = |a: usize, d: usize| -> Option<(Vec<i64>, i64)> {
        let e = diff(&rs.positive_roots[a], &rs.positive_roots[d]);
        if is_pos(&e) {
            let ei = rs.index_of(&e).unwrap();
            let n_de = n_pp(d, ei)?;
            let val = -(norm2(ei) / norm2(a)) * rat(n_de);
            assert!(is_integer(&val));
            Some((e, to_i64(&val)))
        } else if is_pos(&neg(&e)) {
            let ei = rs.index_of(&neg(&e)).unwrap();
            let n_ae = n_pp(a, ei)?;
            let val = -(norm2(ei) / norm2(d)) * rat(n_ae);
            assert!(is_integer(&val));
            Some((e, to_i64(&val)))
        } else {
            None
        }
    };

    // h_alpha = sum_i c_i h_i, the coroot in the simple-coroot basis.
    let coroot_coeffs = |idx: usize| -> Result<Vec<i64>> {
        let alpha = &rs.positive_roots[idx];
        let na = norm2(idx);
        let mut out = Vec::with_capacity(rank);
        for (i, &m) in alpha.iter().enumerate() {
            let c = rat(m) * rat(2) * rs.simple_norms_half[i].clone() / na.clone();
            if !is_integer(&c) {
                return Err(Error::Internal(format!("non-integral coroot coefficient for root {idx}")));
            }
            out.push(to_i64(&c));
        }
        Ok(out)
    };

    let e_of = |r: usize| rank + r;
    let f_of = |r: usize| rank + npos + r;

    let mut brackets: Vec<Vec<SparseInt>> = vec![vec![Vec::new(); dim]; dim];
    let set = |br: &mut Vec<Vec<SparseInt>>, i: usize, j: usize, v: SparseInt| {
        br[j][i] = v.iter().map(|(k, c)| (*k, -c)).collect();
        br[i][j] = v;
    };

    // [h_i, e/f_alpha].
    for r in 0..npos {
        let fund = rs.root_to_fund(&rs.positive_roots[r]);
        for i in 0..rank {
            if fund[i] != 0 {
                set(&mut brackets, i, e_of(r), vec![(e_of(r), fund[i])]);
                set(&mut brackets, i, f_of(r), vec![(f_of(r), -fund[i])]);
            }
        }
    }
    // [e_alpha, f_alpha] = h_alpha.
    for r in 0..npos {
        let cc = coroot_coeffs(r)?;
        let h: SparseInt = cc.into_iter().enumerate().filter(|(_, c)| *c != 0).collect();
        set(&mut brackets, e_of(r), f_of(r), h);
    }
    // [e_alpha, e_beta] and [f_alpha, f_beta].
    for a in 0..npos {
        for b in (a + 1)..npos {
            let s: Vec<i64> = rs.positive_roots[a]
                .iter()
                .zip(&rs.positive_roots[b])
                .map(|(x, y)| x + y)
                .collect();
            if let Some(si) = rs.index_of(&s) {
                let n = n_pp(a, b).ok_or_else(|| miss(a, b))?;
                set(&mut brackets, e_of(a), e_of(b), vec![(e_of(si), n)]);
                set(&mut brackets, f_of(a), f_of(b), vec![(f_of(si), -n)]);
            }
        }
    }
    // [e_alpha, f_delta], alpha != delta.
    for a in 0..npos {
        for d in 0..npos {
            if a == d {
                continue;
            }
            if let Some((e, n)) = n_pm(a, d) {
                let target = if let Some(ei) = rs.index_of(&e) {
                    e_of(ei)
                } else {
                    f_of(rs.index_of(&neg(&e)).unwrap())
                };
                set(&mut brackets, e_of(a), f_of(d), vec![(target, n)]);
            }
        }
    }

    // Invariant form.
    let mut gram = vec![vec![Rat::zero(); dim]; dim];
    for i in 0..rank {
        for j in 0..rank {
            gram[i][j] = rs.simple_inner(i, j)
                / (rs.simple_norms_half[i].clone() * rs.simple_norms_half[j].clone());
        }
    }
    for r in 0..npos {
        let v = rat(2) / norm2(r);
        gram[e_of(r)][f_of(r)] = v.clone();
        gram[f_of(r)][e_of(r)] = v;
    }
    let gram_inv = invert(&gram).ok_or_else(|| Error::Internal("degenerate invariant form".into()))?;

    let mut basis_weights = vec![vec![0i64; rank]; dim];
    for r in 0..npos {
        let fund = rs.root_to_fund(&rs.positive_roots[r]);
        basis_weights[e_of(r)] = fund.clone();
        basis_weights[f_of(r)] = fund.iter().map(|c| -c).collect();
    }

    let alg = LieAlgebra {
        root_system: rs.clone(),
        dim,
        rank,
        num_pos: npos,
        brackets,
        gram,
        gram_inv,
        basis_weights,
    };
    validate(&alg)?;
    Ok(alg)
}

/// Build the algebra directly from a Cartan type.
pub fn lie_algebra(ct: CartanType) -> Result<LieAlgebra> {
    let rs = build_root_system(ct)?;
    chevalley_basis(&rs)
}

fn validate(alg: &LieAlgebra) -> Result<()> {
    let n = alg.dim;
    // Antisymmetry including [x,x] = 0.
    for i in 0..n {
        if !alg.brackets[i][i].is_empty() {
            return Err(Error::Internal(format!("[b_{i}, b_{i}] != 0")));
        }
        for j in 0..n {
            let mut m: BTreeMap<usize, i64> = alg.brackets[i][j].iter().cloned().collect();
            for (k, c) in &alg.brackets[j][i] {
                *m.entry(*k).or_insert(0) += c;
            }
            if m.values().any(|c| *c != 0) {
                return Err(Error::Internal(format!("antisymmetry fails at ({i},{j})")));
            }
        }
    }
    // Jacobi on all triples.
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                if !jacobi_holds(alg, i, j, k) {
                    return Err(Error::Internal(format!(
                        "Jacobi fails on ({}, {}, {})",
                        alg.basis_label(i),
                        alg.basis_label(j),
                        alg.basis_label(k)
                    )));
                }
            }
        }
    }
    // Form invariance ([a,b],c) + (b,[a,c]) = 0.
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut s = Rat::zero();
                for (m, c) in &alg.brackets[i][j] {
                    s += rat(*c) * alg.gram[*m][k].clone();
                }
                for (m, c) in &alg.brackets[i][k] {
                    s += rat(*c) * alg.gram[j][*m].clone();
                }
                if !s.is_zero() {
                    return Err(Error::Internal(format!("form invariance fails at ({i},{j},{k})")));
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn jacobi_holds(alg: &LieAlgebra, i: usize, j: usize, k: usize) -> bool {
    let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
    let add = |outer: usize, inner: &SparseInt, acc: &mut BTreeMap<usize, i64>| {
        for (m, c) in inner {
            for (t, d) in &alg.brackets[outer][*m] {
                *acc.entry(*t).or_insert(0) += c * d;
            }
        }
    };
    add(i, alg.bracket(j, k), &mut acc);
    add(j, alg.bracket(k, i), &mut acc);
    add(k, alg.bracket(i, j), &mut acc);
    acc.values().all(|c| *c == 0)
}

// ---------------------------------------------------------------------------
// Casimir from an operator family
// ---------------------------------------------------------------------------

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for (i, arow) in a.iter().enumerate() {
        for (l, av) in arow.iter().enumerate().take(k) {
            if av.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += av.clone() * b[l][j].clone();
                }
            }
        }
    }
    out
}

fn mat_lin_comb(mats: &[Mat], coeffs: &SparseRat) -> Mat {
    let n = mats[0].len();
    let m = mats[0][0].len();
    let mut out = vec![vec![Rat::zero(); m]; n];
    for (idx, c) in coeffs {
        for i in 0..n {
            for j in 0..m {
                if !mats[*idx][i][j].is_zero() {
                    out[i][j] += c.clone() * mats[*idx][i][j].clone();
                }
            }
        }
    }
    out
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    ab.into_iter()
        .zip(ba)
        .map(|(r1, r2)| r1.into_iter().zip(r2).map(|(x, y)| x - y).collect())
        .collect()
}

fn representation_check(alg: &LieAlgebra, action: &[Mat]) -> Result<()> {
    if action.len() != alg.dim {
        return Err(Error::DimensionMismatch { expected: alg.dim, got: action.len() });
    }
    let v = action[0].len();
    for m in action {
        if m.len() != v || m.iter().any(|row| row.len() != v) {
            return Err(Error::NotARepresentation("ragged operator matrices".into()));
        }
    }
    // Chevalley generators e_i, f_i for simple roots generate the algebra.
    let mut gens: Vec<usize> = Vec::new();
    for i in 0..alg.rank {
        let ri = alg
            .root_system
            .index_of(&{
                let mut v = vec![0i64; alg.rank];
                v[i] = 1;
                v
            })
            .expect("simple root present");
        gens.push(alg.e_index(ri));
        gens.push(alg.f_index(ri));
    }
    for &x in &gens {
        for &y in &gens {
            let lhs = commutator(&action[x], &action[y]);
            let coeffs: SparseRat = alg.bracket(x, y).iter().map(|(k, c)| (*k, rat(*c))).collect();
            let rhs = mat_lin_comb(action, &coeffs);
            if lhs != rhs {
                return Err(Error::NotARepresentation(format!(
                    "bracket relation fails on ({}, {})",
                    alg.basis_label(x),
                    alg.basis_label(y)
                )));
            }
        }
    }
    Ok(())
}

/// Quadratic Casimir of an operator family, normalized so the same expression
/// acts as the identity on the adjoint representation.
///
/// `action[i]` is the operator for basis element `b_i`; the family is checked
/// to be a representation on Chevalley generators before any contraction.
pub fn casimir_operator(alg: &LieAlgebra, action: &[Mat]) -> Result<Mat> {
    representation_check(alg, action)?;
    let raw = raw_casimir(alg, action);
    let ad = alg.adjoint_matrices();
    let raw_ad = raw_casimir(alg, &ad);
    // raw_ad must be a scalar.
    let c = raw_ad[0][0].clone();
    if c.is_zero() {
        return Err(Error::Internal("adjoint Casimir scalar is zero".into()));
    }
    for (i, row) in raw_ad.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            let expect = if i == j { c.clone() } else { Rat::zero() };
            if *x != expect {
                return Err(Error::Internal("raw Casimir is not scalar on the adjoint".into()));
            }
        }
    }
    Ok(raw.into_iter().map(|row| row.into_iter().map(|x| x / c.clone()).collect()).collect())
}

fn raw_casimir(alg: &LieAlgebra, action: &[Mat]) -> Mat {
    let v = action[0].len();
    let mut acc = vec![vec![Rat::zero(); v]; v];
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            let g = &alg.gram_inv[i][j];
            if g.is_zero() {
                continue;
            }
            let prod = mat_mul(&action[i], &action[j]);
            for (arow, prow) in acc.iter_mut().zip(&prod) {
                for (a, p) in arow.iter_mut().zip(prow) {
                    if !p.is_zero() {
                        *a += g.clone() * p.clone();
                    }
                }
            }
        }
    }
    acc
}

fn invert(m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { rat(1) } else { rat(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x /= p.clone();
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * n {
                    let sub = f.clone() * aug[col][c].clone();
                    aug[r][c] -= sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

// ---------------------------------------------------------------------------
// Structure-constant cache (versioned text format)
// ---------------------------------------------------------------------------

const CACHE_HEADER: &str = "cdsw-structure-constants v1";

impl LieAlgebra {
    /// One line per nonzero c^k_{ij} with i < j; the mirrored half is implied
    /// by antisymmetry.
    pub fn to_cache_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{CACHE_HEADER}");
        let _ = writeln!(s, "type {}", self.root_system.cartan_type);
        let _ = writeln!(s, "dim {}", self.dim);
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for (k, c) in &self.brackets[i][j] {
                    let _ = writeln!(s, "{i} {j} {k} {c}");
                }
            }
        }
        let _ = writeln!(s, "end");
        s
    }

    /// Parse and fully validate a cached table. The root system and form are
    /// rebuilt from the type line; the constants must pass the same Jacobi
    /// and invariance sweeps as a fresh construction.
    pub fn from_cache_text(text: &str) -> Result<LieAlgebra> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::BadCacheFile("empty file".into()))?;
        if header.trim() != CACHE_HEADER {
            return Err(Error::BadCacheFile(format!("bad header '{header}'")));
        }
        let type_line = lines.next().ok_or_else(|| Error::BadCacheFile("missing type line".into()))?;
        let ct: CartanType = type_line
            .strip_prefix("type ")
            .ok_or_else(|| Error::BadCacheFile("missing 'type'".into()))?
            .trim()
            .parse()?;
        let dim_line = lines.next().ok_or_else(|| Error::BadCacheFile("missing dim line".into()))?;
        let dim: usize = dim_line
            .strip_prefix("dim ")
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| Error::BadCacheFile("bad 'dim' line".into()))?;
        if dim != ct.dimension() {
            return Err(Error::BadCacheFile(format!(
                "dim {dim} does not match type {ct} (expected {})",
                ct.dimension()
            )));
        }

        let rs = build_root_system(ct)?;
        let fresh = chevalley_basis(&rs)?;
        let mut brackets: Vec<Vec<SparseInt>> = vec![vec![Vec::new(); dim]; dim];
        let mut saw_end = false;
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "end" {
                saw_end = true;
                break;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<i64> {
                tok.and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::BadCacheFile(format!("bad line '{line}'")))
            };
            let i = parse(it.next())? as usize;
            let j = parse(it.next())? as usize;
            let k = parse(it.next())? as usize;
            let c = parse(it.next())?;
            if i >= dim || j >= dim || k >= dim || it.next().is_some() {
                return Err(Error::BadCacheFile(format!("bad line '{line}'")));
            }
            brackets[i][j].push((k, c));
        }
        if !saw_end {
            return Err(Error::BadCacheFile("missing 'end' terminator".into()));
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                brackets[i][j].sort_by_key(|(k, _)| *k);
                brackets[j][i] = brackets[i][j].iter().map(|(k, c)| (*k, -c)).collect();
            }
        }
        let alg = LieAlgebra { brackets, ..fresh };
        validate(&alg).map_err(|e| Error::BadCacheFile(format!("validation failed: {e}")))?;
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;

    fn alg(series: Series, rank: usize) -> LieAlgebra {
        lie_algebra(CartanType::new(series, rank).unwrap()).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let a = alg(Series::A, 1);
        assert_eq!(a.dim, 3);
        let (h, e, f) = (a.h_index(0), a.e_index(0), a.f_index(0));
        assert_eq!(a.bracket(e, f), &vec![(h, 1)]);
        assert_eq!(a.bracket(h, e), &vec![(e, 2)]);
        assert_eq!(a.bracket(h, f), &vec![(f, -2)]);
    }

    #[test]
    fn g2_passes_full_construction_sweep() {
        // chevalley_basis runs the exhaustive Jacobi and invariance sweeps.
        let a = alg(Series::G, 2);
        assert_eq!(a.dim, 14);
    }

    #[test]
    fn all_types_jacobi_exhaustive() {
        for (s, n) in [
            (Series::A, 1),
            (Series::A, 2),
            (Series::A, 3),
            (Series::A, 4),
            (Series::B, 2),
            (Series::B, 3),
            (Series::B, 4),
            (Series::C, 2),
            (Series::C, 3),
            (Series::C, 4),
            (Series::D, 3),
            (Series::D, 4),
            (Series::G, 2),
        ] {
            // Construction fails loudly if any triple breaks Jacobi.
            let a = alg(s, n);
            assert_eq!(a.dim, CartanType::new(s, n).unwrap().dimension());
        }
    }

    #[test]
    fn structure_constants_match_root_strings() {
        for (s, n) in [(Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::C, 3)] {
            let a = alg(s, n);
            let rs = &a.root_system;
            for i in 0..a.num_pos {
                for j in 0..a.num_pos {
                    if i == j {
                        continue;
                    }
                    let sum: Vec<i64> = rs.positive_roots[i]
                        .iter()
                        .zip(&rs.positive_roots[j])
                        .map(|(x, y)| x + y)
                        .collect();
                    if let Some(_k) = rs.index_of(&sum) {
                        let br = a.bracket(a.e_index(i), a.e_index(j));
                        assert_eq!(br.len(), 1);
                        let mut p = 0i64;
                        loop {
                            let cand: Vec<i64> = rs.positive_roots[j]
                                .iter()
                                .zip(&rs.positive_roots[i])
                                .map(|(b, a0)| b - (p + 1) * a0)
                                .collect();
                            let negc: Vec<i64> = cand.iter().map(|c| -c).collect();
                            if rs.is_positive_root(&cand) || rs.is_positive_root(&negc) {
                                p += 1;
                            } else {
                                break;
                            }
                        }
                        assert_eq!(br[0].1.abs(), p + 1, "{s:?}{n} pair ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn casimir_identity_on_adjoint() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2)] {
            let a = alg(s, n);
            let ad = a.adjoint_matrices();
            let c = casimir_operator(&a, &ad).unwrap();
            for (i, row) in c.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let expect = if i == j { rat(1) } else { rat(0) };
                    assert_eq!(*x, expect, "{s:?}{n} at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn casimir_zero_on_trivial() {
        let a = alg(Series::B, 2);
        let action: Vec<Mat> = (0..a.dim).map(|_| vec![vec![rat(0)]]).collect();
        let c = casimir_operator(&a, &action).unwrap();
        assert_eq!(c, vec![vec![rat(0)]]);
    }

    #[test]
    fn non_representation_rejected() {
        let a = alg(Series::A, 1);
        // Swap e and f actions: breaks [h,e] = 2e.
        let ad = a.adjoint_matrices();
        let action = vec![ad[0].clone(), ad[2].clone(), ad[1].clone()];
        assert!(matches!(casimir_operator(&a, &action), Err(Error::NotARepresentation(_))));
    }

    #[test]
    fn cache_round_trip_and_tamper_detection() {
        let a = alg(Series::G, 2);
        let text = a.to_cache_text();
        let b = LieAlgebra::from_cache_text(&text).unwrap();
        assert_eq!(a.brackets, b.brackets);
        assert_eq!(a.gram, b.gram);

        // Corrupt the first constant line: flip its coefficient.
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let idx = lines.iter().position(|l| l.split_whitespace().count() == 4).unwrap();
        let mut toks: Vec<String> = lines[idx].split_whitespace().map(String::from).collect();
        let c: i64 = toks[3].parse().unwrap();
        toks[3] = (c + 5).to_string();
        lines[idx] = toks.join(" ");
        let tampered = lines.join("\n");
        assert!(LieAlgebra::from_cache_text(&tampered).is_err());
        assert!(LieAlgebra::from_cache_text("garbage").is_err());
    }
}
