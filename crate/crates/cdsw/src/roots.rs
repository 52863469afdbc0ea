//! Root systems in simple-root coordinates with exact rational inner products.
//!
//! Roots are integer vectors of coefficients over the simple roots. The
//! invariant form is normalized so that the highest root has squared length 2,
//! which keeps every Gram entry a small rational.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::cartan::{CartanType, Series};
use crate::error::{Error, Result};
use crate::rational::{frac, is_integer, rat, to_i64, Rat};

/// A root system of one of the supported Cartan types.
///
/// `cartan_matrix[i][j]` is the pairing of the i-th simple root against the
/// j-th simple coroot. `simple_norms_half[i]` is half the squared length of
/// the i-th simple root under the fixed normalization.
#[derive(Debug, Clone)]
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    pub simple_norms_half: Vec<Rat>,
    /// Positive roots in the fixed order: by height, then reverse-lexicographic
    /// on simple-root coefficients. This order pins every downstream sign.
    pub positive_roots: Vec<Vec<i64>>,
    /// Fundamental weights in simple-root coordinates.
    pub fundamental_weights: Vec<Vec<Rat>>,
    /// Half-sum of positive roots, in simple-root coordinates.
    pub weyl_vector: Vec<Rat>,
    pub highest_root: Vec<i64>,
    pub highest_root_index: usize,
    index_of_root: BTreeMap<Vec<i64>, usize>,
}

fn series_cartan_matrix(ct: CartanType) -> Vec<Vec<i64>> {
    let n = ct.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match ct.series {
        Series::A => chain(&mut a, n - 1),
        Series::B => {
            chain(&mut a, n - 1);
            a[n - 2][n - 1] = -2;
            a[n - 1][n - 2] = -1;
        }
        Series::C => {
            chain(&mut a, n - 1);
            a[n - 2][n - 1] = -1;
            a[n - 1][n - 2] = -2;
        }
        Series::D => {
            chain(&mut a, n - 2);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        Series::G => {
            a[0][1] = -1;
            a[1][0] = -3;
        }
    }
    a
}

fn series_norms_half(ct: CartanType) -> Vec<Rat> {
    let n = ct.rank;
    match ct.series {
        Series::A | Series::D => vec![rat(1); n],
        Series::B => {
            let mut d = vec![rat(1); n];
            d[n - 1] = frac(1, 2);
            d
        }
        Series::C => {
            let mut d = vec![frac(1, 2); n];
            d[n - 1] = rat(1);
            d
        }
        Series::G => vec![frac(1, 3), rat(1)],
    }
}

/// Build the root system for `ct`, closing the simple roots under simple
/// reflections and fixing the (theta, theta) = 2 normalization.
pub fn build_root_system(ct: CartanType) -> Result<RootSystem> {
    let n = ct.rank;
    let a = series_cartan_matrix(ct);
    let d = series_norms_half(ct);

    // Close {±alpha_i} under all simple reflections.
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        queue.push(v.clone());
        all.insert(v.clone());
        let neg: Vec<i64> = v.iter().map(|c| -c).collect();
        all.insert(neg.clone());
        queue.push(neg);
    }
    while let Some(beta) = queue.pop() {
        for j in 0..n {
            let pairing: i64 = (0..n).map(|i| beta[i] * a[i][j]).sum();
            let mut refl = beta.clone();
            refl[j] -= pairing;
            if all.insert(refl.clone()) {
                queue.push(refl);
            }
        }
    }

    let mut positive: Vec<Vec<i64>> = all
        .iter()
        .filter(|r| r.iter().all(|&c| c >= 0) && r.iter().any(|&c| c != 0))
        .cloned()
        .collect();
    // Every root must be all-nonnegative or all-nonpositive.
    for r in &all {
        let pos = r.iter().all(|&c| c >= 0);
        let neg = r.iter().all(|&c| c <= 0);
        if !pos && !neg {
            return Err(Error::Internal(format!("mixed-sign root {r:?} in closure")));
        }
    }
    positive.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| y.cmp(x))
    });
    if positive.len() != ct.num_positive_roots() {
        return Err(Error::Internal(format!(
            "{ct}: found {} positive roots, expected {}",
            positive.len(),
            ct.num_positive_roots()
        )));
    }

    let index_of_root: BTreeMap<Vec<i64>, usize> =
        positive.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();

    let highest_root_index = positive.len() - 1;
    let highest_root = positive[highest_root_index].clone();
    // theta strictly dominates: max height is attained once.
    if positive.len() >= 2 {
        let h_top: i64 = highest_root.iter().sum();
        let h_next: i64 = positive[highest_root_index - 1].iter().sum();
        if h_top == h_next {
            return Err(Error::Internal("highest root is not unique by height".into()));
        }
    }
    for r in &positive {
        if highest_root.iter().zip(r).any(|(t, c)| t < c) {
            return Err(Error::Internal(format!("theta does not dominate root {r:?}")));
        }
    }

    // Fundamental weights: solve sum_k c_k a[k][j] = delta_ij over the rationals.
    let fundamental_weights = solve_fundamental_weights(&a)?;
    let mut weyl_vector = vec![Rat::zero(); n];
    for w in &fundamental_weights {
        for (acc, c) in weyl_vector.iter_mut().zip(w) {
            *acc += c;
        }
    }
    // Cross-check: rho equals the half-sum of positive roots.
    let mut half_sum = vec![Rat::zero(); n];
    for r in &positive {
        for (acc, &c) in half_sum.iter_mut().zip(r) {
            *acc += frac(c, 2);
        }
    }
    if half_sum != weyl_vector {
        return Err(Error::Internal(format!(
            "{ct}: sum of fundamental weights {weyl_vector:?} differs from half-sum of positive roots {half_sum:?}"
        )));
    }

    let rs = RootSystem {
        cartan_type: ct,
        rank: n,
        cartan_matrix: a,
        simple_norms_half: d,
        positive_roots: positive,
        fundamental_weights,
        weyl_vector,
        highest_root,
        highest_root_index,
        index_of_root,
    };

    let theta_norm = rs.inner_int(&rs.highest_root, &rs.highest_root);
    if theta_norm != rat(2) {
        return Err(Error::Internal(format!("{ct}: (theta, theta) = {theta_norm}, expected 2")));
    }
    for j in 0..n {
        if rs.coroot_pairing_int(&rs.highest_root, j) < 0 {
            return Err(Error::Internal(format!("{ct}: theta not dominant at node {j}")));
        }
    }
    Ok(rs)
}

fn solve_fundamental_weights(a: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let n = a.len();
    // Augmented system: rows index the unknown expansion coefficients.
    // M[k][j] = a[k][j]; solve c * M = I row by row, i.e. M^T x = e_i.
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|k| {
            let mut row: Vec<Rat> = (0..n).map(|j| rat(a[k][j])).collect();
            row.extend((0..n).map(|i| if i == k { rat(1) } else { rat(0) }));
            row
        })
        .collect();
    // Rows of `aug` are (row k of M | e_k); Gauss-Jordan on the left block
    // turns the right block into M^{-1} acting on the left.
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
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
    // omega_i = sum_k inv[i][k] alpha_k: row i of the inverse.
    let mut omegas = Vec::with_capacity(n);
    for i in 0..n {
        let coords: Vec<Rat> = (0..n).map(|k| aug[i][n + k].clone()).collect();
        omegas.push(coords);
    }
    Ok(omegas)
}

impl RootSystem {
    /// (alpha_i, alpha_j) under the fixed normalization.
    pub fn simple_inner(&self, i: usize, j: usize) -> Rat {
        rat(self.cartan_matrix[i][j]) * self.simple_norms_half[j].clone()
    }

    /// Inner product of two vectors in simple-root coordinates (integer).
    pub fn inner_int(&self, x: &[i64], y: &[i64]) -> Rat {
        let mut acc = Rat::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                acc += rat(xi * yj) * self.simple_inner(i, j);
            }
        }
        acc
    }

    /// Inner product of two vectors in simple-root coordinates (rational).
    pub fn inner_rat(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut acc = Rat::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                acc += xi.clone() * yj.clone() * self.simple_inner(i, j);
            }
        }
        acc
    }

    /// Pairing of an integer root-coordinate vector against the j-th simple coroot.
    pub fn coroot_pairing_int(&self, beta: &[i64], j: usize) -> i64 {
        (0..self.rank).map(|i| beta[i] * self.cartan_matrix[i][j]).sum()
    }

    /// Fundamental-weight coordinates of a root (always integral).
    pub fn root_to_fund(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| self.coroot_pairing_int(beta, j)).collect()
    }

    /// Simple-root coordinates of a weight given in fundamental coordinates.
    pub fn fund_to_root_coords(&self, fund: &[i64]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.rank];
        for (i, &ci) in fund.iter().enumerate() {
            if ci == 0 {
                continue;
            }
            for (k, w) in self.fundamental_weights[i].iter().enumerate() {
                out[k] += rat(ci) * w.clone();
            }
        }
        out
    }

    /// Inner product of two weights in fundamental coordinates.
    pub fn inner_fund(&self, lam: &[i64], mu: &[i64]) -> Rat {
        let x = self.fund_to_root_coords(lam);
        let y = self.fund_to_root_coords(mu);
        self.inner_rat(&x, &y)
    }

    /// (lam, alpha) for lam in fundamental coordinates and alpha a root in
    /// simple-root coordinates.
    pub fn inner_fund_root(&self, lam: &[i64], alpha: &[i64]) -> Rat {
        let x = self.fund_to_root_coords(lam);
        let y: Vec<Rat> = alpha.iter().map(|&c| rat(c)).collect();
        self.inner_rat(&x, &y)
    }

    /// rho in fundamental coordinates: (1, 1, ..., 1).
    pub fn rho_fund(&self) -> Vec<i64> {
        vec![1; self.rank]
    }

    pub fn index_of(&self, root: &[i64]) -> Option<usize> {
        self.index_of_root.get(root).copied()
    }

    pub fn is_positive_root(&self, coords: &[i64]) -> bool {
        self.index_of_root.contains_key(coords)
    }

    pub fn height(&self, root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Simple reflection s_j applied to a weight in fundamental coordinates.
    pub fn reflect_fund(&self, lam: &[i64], j: usize) -> Vec<i64> {
        let cj = lam[j];
        (0..self.rank).map(|k| lam[k] - cj * self.cartan_matrix[j][k]).collect()
    }

    /// 1 + sum of the comarks: coefficients of theta over the simple coroots.
    pub fn dual_coxeter_number(&self) -> usize {
        let mut acc = rat(1);
        for (i, &m) in self.highest_root.iter().enumerate() {
            acc += rat(m) * self.simple_norms_half[i].clone();
        }
        assert!(is_integer(&acc), "dual Coxeter number must be integral, got {acc}");
        to_i64(&acc) as usize
    }

    /// Quadratic Casimir eigenvalue on V(lambda), normalized so the adjoint
    /// representation has eigenvalue 1: (lam, lam + 2 rho) / (2 h_vee).
    pub fn casimir_eigenvalue(&self, lam_fund: &[i64]) -> Rat {
        let rho = self.rho_fund();
        let shifted: Vec<i64> = lam_fund.iter().zip(&rho).map(|(&l, &r)| l + 2 * r).collect();
        let num = self.inner_fund(lam_fund, &shifted);
        num / rat(2 * self.dual_coxeter_number() as i64)
    }

    /// Human-readable form of a root, e.g. "3a1+2a2".
    pub fn root_name(&self, root: &[i64]) -> String {
        let mut s = String::new();
        for (i, &c) in root.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !s.is_empty() && c > 0 {
                s.push('+');
            }
            if c == -1 {
                s.push('-');
            } else if c != 1 {
                s.push_str(&c.to_string());
            }
            s.push_str(&format!("a{}", i + 1));
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }
}

/// Convenience wrapper matching the operation name used throughout.
pub fn dual_coxeter_number(rs: &RootSystem) -> usize {
    rs.dual_coxeter_number()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Series;

    fn rs(series: Series, rank: usize) -> RootSystem {
        build_root_system(CartanType::new(series, rank).unwrap()).unwrap()
    }

    #[test]
    fn a1_single_root() {
        let r = rs(Series::A, 1);
        assert_eq!(r.positive_roots, vec![vec![1]]);
        assert_eq!(r.highest_root, vec![1]);
        assert_eq!(r.inner_int(&r.highest_root, &r.highest_root), rat(2));
    }

    #[test]
    fn a2_three_roots() {
        let r = rs(Series::A, 2);
        assert_eq!(r.positive_roots.len(), 3);
        assert_eq!(r.highest_root, vec![1, 1]);
    }

    #[test]
    fn g2_six_positive_roots_in_fixed_order() {
        let r = rs(Series::G, 2);
        let expected: Vec<Vec<i64>> = vec![
            vec![1, 0],
            vec![0, 1],
            vec![1, 1],
            vec![2, 1],
            vec![3, 1],
            vec![3, 2],
        ];
        assert_eq!(r.positive_roots, expected);
        assert_eq!(r.highest_root, vec![3, 2]);
        assert_eq!(r.inner_int(&r.highest_root, &r.highest_root), rat(2));
    }

    #[test]
    fn closure_under_reflections() {
        for (s, n) in [
            (Series::A, 3),
            (Series::B, 2),
            (Series::B, 3),
            (Series::C, 3),
            (Series::D, 4),
            (Series::G, 2),
        ] {
            let r = rs(s, n);
            for root in &r.positive_roots {
                for j in 0..n {
                    let p = r.coroot_pairing_int(root, j);
                    let mut refl = root.clone();
                    refl[j] -= p;
                    let neg: Vec<i64> = refl.iter().map(|c| -c).collect();
                    assert!(
                        r.is_positive_root(&refl) || r.is_positive_root(&neg),
                        "{s:?}{n}: reflection of {root:?} at {j} escapes the system"
                    );
                }
            }
        }
    }

    #[test]
    fn dual_coxeter_numbers_match_closed_form() {
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
            let ct = CartanType::new(s, n).unwrap();
            let r = build_root_system(ct).unwrap();
            assert_eq!(r.dual_coxeter_number(), ct.dual_coxeter_table(), "{ct}");
        }
    }

    #[test]
    fn g2_fundamental_weights() {
        let r = rs(Series::G, 2);
        // omega_1 = 2a1 + a2, omega_2 = 3a1 + 2a2 = theta.
        assert_eq!(r.fundamental_weights[0], vec![rat(2), rat(1)]);
        assert_eq!(r.fundamental_weights[1], vec![rat(3), rat(2)]);
        assert_eq!(r.root_to_fund(&r.highest_root), vec![0, 1]);
    }

    #[test]
    fn adjoint_casimir_eigenvalue_is_one() {
        for (s, n) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2), (Series::C, 3)] {
            let r = rs(s, n);
            let theta = r.root_to_fund(&r.highest_root.clone());
            assert_eq!(r.casimir_eigenvalue(&theta), rat(1), "{s:?}{n}");
        }
    }

    #[test]
    fn invalid_type_rejected() {
        assert!(CartanType::new(Series::B, 1).is_err());
    }
}
