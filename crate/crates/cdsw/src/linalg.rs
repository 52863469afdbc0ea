//! Exact sparse rational linear algebra.
//!
//! Rows are kept as primitive integer vectors (content divided out) and
//! combined fraction-free: r' = pivot_coeff * r - row_coeff * pivot_row,
//! followed by a gcd strip. Pivots sit at the leftmost column of each row and
//! strictly increase down the basis, so reduced echelon output is the unique
//! canonical basis of the span.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{Int, Rat};

/// Sparse rational vector: strictly increasing indices, nonzero entries.
pub type SparseVec = Vec<(usize, Rat)>;

/// Sparse primitive integer row.
type IRow = Vec<(usize, Int)>;

fn to_irow(v: &SparseVec) -> IRow {
    if v.is_empty() {
        return Vec::new();
    }
    let mut lcm = Int::from(1);
    for (_, c) in v {
        lcm = lcm.lcm(c.denom());
    }
    let mut row: IRow = v
        .iter()
        .map(|(i, c)| (*i, c.numer() * (&lcm / c.denom())))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    strip_content(&mut row);
    row
}

fn strip_content(row: &mut IRow) {
    if row.is_empty() {
        return;
    }
    let mut g = Int::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g == Int::from(1) {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if g != Int::from(1) {
        for (_, c) in row.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// r' = b*r - a*p over sorted sparse rows.
fn combine(r: &IRow, b: &Int, p: &IRow, a: &Int) -> IRow {
    let mut out = IRow::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push((r[i].0, b * &r[i].1));
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(a * &p[j].1)));
            j += 1;
        } else {
            let c = b * &r[i].1 - a * &p[j].1;
            if !c.is_zero() {
                out.push((r[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelonized basis of a subspace of a fixed ambient coordinate space.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    ambient: usize,
    /// Rows sorted by strictly increasing pivot column.
    rows: Vec<IRow>,
    pivots: Vec<usize>,
    reduced: bool,
}

impl SubspaceBasis {
    pub fn new(ambient: usize) -> Self {
        SubspaceBasis { ambient, rows: Vec::new(), pivots: Vec::new(), reduced: false }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminate every pivot-column entry, scanning left to right. A pivot
    /// row never has support below its own pivot, so already-cleared prefix
    /// entries stay cleared (up to overall scaling) and one pass suffices.
    fn reduce_irow(&self, mut row: IRow) -> IRow {
        let mut i = 0;
        while i < row.len() {
            let idx = row[i].0;
            match self.pivots.binary_search(&idx) {
                Ok(k) => {
                    let a = row[i].1.clone();
                    let b = self.rows[k][0].1.clone();
                    row = combine(&row, &b, &self.rows[k], &a);
                    strip_content(&mut row);
                }
                Err(_) => i += 1,
            }
        }
        row
    }

    /// Insert a vector; returns true iff it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> Result<bool> {
        for (i, _) in v {
            if *i >= self.ambient {
                return Err(Error::DimensionMismatch { expected: self.ambient, got: *i + 1 });
            }
        }
        Ok(self.insert_irow(to_irow(v)))
    }

    fn insert_irow(&mut self, row: IRow) -> bool {
        let mut row = self.reduce_irow(row);
        if row.is_empty() {
            return false;
        }
        strip_content(&mut row);
        let lead = row[0].0;
        let pos = self.pivots.binary_search(&lead).unwrap_err();
        if self.reduced {
            // Keep the basis fully reduced: eliminate the new pivot column
            // from every earlier row.
            for k in 0..self.rows.len() {
                if let Some(p) = self.rows[k].iter().position(|(i, _)| *i == lead) {
                    let a = self.rows[k][p].1.clone();
                    let b = row[0].1.clone();
                    let mut nr = combine(&self.rows[k], &b, &row, &a);
                    strip_content(&mut nr);
                    self.rows[k] = nr;
                }
            }
        }
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, row);
        true
    }

    /// Residue of `v` after elimination against the basis, primitive-scaled.
    /// Zero residue means membership; nonzero residues are canonical only for
    /// a fully reduced basis.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let row = self.reduce_irow(to_irow(v));
        row.into_iter().map(|(i, c)| (i, Rat::from_integer(c))).collect()
    }

    pub fn member(&self, v: &SparseVec) -> Result<bool> {
        for (i, _) in v {
            if *i >= self.ambient {
                return Err(Error::DimensionMismatch { expected: self.ambient, got: *i + 1 });
            }
        }
        Ok(self.reduce_irow(to_irow(v)).is_empty())
    }

    /// Back-eliminate into the canonical reduced echelon basis.
    pub fn canonicalize(&mut self) {
        if self.reduced {
            return;
        }
        for k in (0..self.rows.len()).rev() {
            let piv_row = self.rows[k].clone();
            let lead = piv_row[0].0;
            for r in 0..k {
                if let Some(p) = self.rows[r].iter().position(|(i, _)| *i == lead) {
                    let a = self.rows[r][p].1.clone();
                    let b = piv_row[0].1.clone();
                    let mut nr = combine(&self.rows[r], &b, &piv_row, &a);
                    strip_content(&mut nr);
                    self.rows[r] = nr;
                }
            }
        }
        self.reduced = true;
    }

    /// Rows as rational vectors with pivot scaled to 1.
    pub fn rows_rational(&self) -> Vec<SparseVec> {
        self.rows
            .iter()
            .map(|row| {
                let lead = row[0].1.clone();
                row.iter()
                    .map(|(i, c)| (*i, Rat::new(c.clone(), lead.clone())))
                    .collect()
            })
            .collect()
    }

    /// Raw primitive integer rows (for deterministic serialization in tests).
    pub fn rows_primitive(&self) -> Vec<Vec<(usize, String)>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(i, c)| (*i, c.to_string())).collect())
            .collect()
    }
}

/// Echelonize a list of vectors sharing one ambient space.
pub fn echelonize(ambient: usize, vectors: &[SparseVec]) -> Result<SubspaceBasis> {
    let mut b = SubspaceBasis::new(ambient);
    for v in vectors {
        b.insert(v)?;
    }
    Ok(b)
}

/// A linear map between two finite coordinate spaces, stored column-sparse.
#[derive(Debug, Clone)]
pub struct OperatorSlice {
    pub source_dim: usize,
    pub target_dim: usize,
    /// cols[s] = image of the s-th source basis vector.
    pub cols: Vec<SparseVec>,
}

impl OperatorSlice {
    pub fn new(source_dim: usize, target_dim: usize, cols: Vec<SparseVec>) -> Self {
        assert_eq!(cols.len(), source_dim);
        OperatorSlice { source_dim, target_dim, cols }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (s, c) in v {
            for (t, a) in &self.cols[*s] {
                let e = acc.entry(*t).or_insert_with(Rat::zero);
                *e += c.clone() * a.clone();
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Equation rows (the transpose), indexed by target coordinate.
    pub fn equation_rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = vec![Vec::new(); self.target_dim];
        for (s, col) in self.cols.iter().enumerate() {
            for (t, c) in col {
                rows[*t].push((s, c.clone()));
            }
        }
        rows
    }

    /// Exact kernel basis. dim kernel + rank = source dimension.
    pub fn nullspace(&self) -> SubspaceBasis {
        nullspace_of_rows(self.source_dim, self.equation_rows().into_iter())
    }
}

/// Kernel of the homogeneous system given by equation rows over `cols`
/// unknowns.
pub fn nullspace_of_rows<I: Iterator<Item = SparseVec>>(cols: usize, rows: I) -> SubspaceBasis {
    let mut ech = SubspaceBasis::new(cols);
    for r in rows {
        ech.insert_irow(to_irow(&r));
    }
    ech.canonicalize();
    let pivot_set: BTreeMap<usize, usize> =
        ech.pivots.iter().enumerate().map(|(k, p)| (*p, k)).collect();
    let mut kernel = SubspaceBasis::new(cols);
    for free in 0..cols {
        if pivot_set.contains_key(&free) {
            continue;
        }
        // x_free = 1, x_pivot = -row[free]/row[pivot].
        let mut v: SparseVec = vec![(free, Rat::from_integer(1.into()))];
        for (k, row) in ech.rows.iter().enumerate() {
            if let Some((_, c)) = row.iter().find(|(i, _)| *i == free) {
                let piv = &row[0].1;
                v.push((ech.pivots[k], -Rat::new(c.clone(), piv.clone())));
            }
        }
        v.sort_by_key(|(i, _)| *i);
        kernel.insert(&v).expect("kernel vector in ambient");
    }
    kernel.canonicalize();
    kernel
}

/// Dense exact inverse by Gauss-Jordan; None if singular.
pub fn invert_dense(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let one = Rat::from_integer(1.into());
    let mut aug: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n);
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { one.clone() } else { Rat::zero() }));
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
                for c in col..2 * n {
                    let sub = f.clone() * aug[col][c].clone();
                    aug[r][c] -= sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Exact intersection of two subspaces of the same ambient space
/// (Zassenhaus: echelonize stacked [u|u] and [v|0] rows; rows with zero left
/// half carry the intersection in the right half).
pub fn intersect(b1: &SubspaceBasis, b2: &SubspaceBasis) -> Result<SubspaceBasis> {
    if b1.ambient != b2.ambient {
        return Err(Error::DimensionMismatch { expected: b1.ambient, got: b2.ambient });
    }
    let n = b1.ambient;
    let mut ech = SubspaceBasis::new(2 * n);
    for row in &b1.rows {
        let mut v: IRow = Vec::with_capacity(2 * row.len());
        for (i, c) in row {
            v.push((*i, c.clone()));
        }
        for (i, c) in row {
            v.push((i + n, c.clone()));
        }
        ech.insert_irow(v);
    }
    for row in &b2.rows {
        let v: IRow = row.iter().map(|(i, c)| (*i, c.clone())).collect();
        ech.insert_irow(v);
    }
    let mut out = SubspaceBasis::new(n);
    for row in &ech.rows {
        if row[0].0 >= n {
            let v: SparseVec =
                row.iter().map(|(i, c)| (i - n, Rat::from_integer(c.clone()))).collect();
            out.insert(&v)?;
        }
    }
    out.canonicalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(i, c)| (*i, rat(*c))).collect()
    }

    #[test]
    fn empty_set_has_rank_zero() {
        let b = echelonize(5, &[]).unwrap();
        assert_eq!(b.rank(), 0);
    }

    #[test]
    fn scaled_copies_have_rank_one() {
        let v = sv(&[(0, 1), (2, 3)]);
        let w: SparseVec = vec![(0, rat(2)), (2, rat(6))];
        let b = echelonize(4, &[v, w]).unwrap();
        assert_eq!(b.rank(), 1);
    }

    #[test]
    fn rank_invariant_under_scaling_and_permutation() {
        let vs = vec![
            sv(&[(0, 1), (1, 2), (3, -1)]),
            sv(&[(1, 1), (2, 1)]),
            sv(&[(0, 2), (1, 5), (2, 1), (3, -2)]), // sum of the first two
            sv(&[(0, 0), (3, 7)]),
        ];
        let b1 = echelonize(4, &vs).unwrap();
        let mut perm = vs.clone();
        perm.reverse();
        let scaled: Vec<SparseVec> = perm
            .into_iter()
            .map(|v| v.into_iter().map(|(i, c)| (i, c * frac(7, 3))).collect())
            .collect();
        let b2 = echelonize(4, &scaled).unwrap();
        assert_eq!(b1.rank(), b2.rank());
        assert_eq!(b1.rank(), 3);
        // Canonical reduced rows agree no matter the input order.
        let mut c1 = b1.clone();
        c1.canonicalize();
        let mut c2 = b2.clone();
        c2.canonicalize();
        assert_eq!(c1.rows_primitive(), c2.rows_primitive());
    }

    #[test]
    fn membership() {
        let b = echelonize(3, &[sv(&[(0, 1), (1, 1)]), sv(&[(1, 2)])]).unwrap();
        assert!(b.member(&sv(&[])).unwrap());
        assert!(b.member(&sv(&[(0, 3), (1, 5)])).unwrap());
        assert!(!b.member(&sv(&[(2, 1)])).unwrap());
        assert!(b.member(&sv(&[(5, 1)])).is_err());
    }

    #[test]
    fn nullspace_zero_and_identity() {
        let zero = OperatorSlice::new(4, 3, vec![Vec::new(); 4]);
        assert_eq!(zero.nullspace().rank(), 4);
        let id = OperatorSlice::new(3, 3, (0..3).map(|i| sv(&[(i, 1)])).collect());
        assert_eq!(id.nullspace().rank(), 0);
    }

    #[test]
    fn rank_nullity_exact() {
        // 3x4 map with rank 2.
        let cols = vec![
            sv(&[(0, 1), (1, 2)]),
            sv(&[(0, 2), (1, 4)]),
            sv(&[(2, 1)]),
            sv(&[(0, 1), (1, 2), (2, 5)]),
        ];
        let op = OperatorSlice::new(4, 3, cols.clone());
        let ker = op.nullspace();
        let image = echelonize(3, &cols).unwrap();
        assert_eq!(ker.rank() + image.rank(), 4);
        // Every kernel vector maps to zero.
        for row in ker.rows_rational() {
            assert!(op.apply(&row).is_empty());
        }
    }

    #[test]
    fn intersection_basics() {
        let b = echelonize(4, &[sv(&[(0, 1)]), sv(&[(1, 1)])]).unwrap();
        let same = intersect(&b, &b).unwrap();
        assert_eq!(same.rank(), 2);
        let zero = SubspaceBasis::new(4);
        assert_eq!(intersect(&b, &zero).unwrap().rank(), 0);
        // dim(B1 cap B2) >= dim B1 + dim B2 - ambient.
        let c = echelonize(4, &[sv(&[(0, 1), (1, 1)]), sv(&[(2, 1)]), sv(&[(3, 1)])]).unwrap();
        let cap = intersect(&b, &c).unwrap();
        assert!(cap.rank() + 4 >= b.rank() + c.rank());
        assert_eq!(cap.rank(), 1);
        assert!(cap.member(&sv(&[(0, 2), (1, 2)])).unwrap());
    }

    #[test]
    fn reduce_residue_detects_quotient_rank() {
        let b = echelonize(3, &[sv(&[(0, 1), (1, 1)])]).unwrap();
        let r = b.reduce(&sv(&[(0, 1)]));
        assert!(!r.is_empty());
        let r0 = b.reduce(&sv(&[(0, 2), (1, 2)]));
        assert!(r0.is_empty());
    }

    #[test]
    fn residues_are_true_residues() {
        // v1 + v2 lies in the span, so the residues must be proportional even
        // when the span's echelon rows still hold entries on later pivot
        // columns.
        let span = echelonize(4, &[sv(&[(0, 1), (2, 1)]), sv(&[(1, 1), (2, -1)])]).unwrap();
        let v1 = sv(&[(0, 1), (3, 5)]);
        // v1 + v2 = v_a + v_b is in the span.
        let v2 = sv(&[(1, 1), (3, -5)]);
        let r1 = span.reduce(&v1);
        let r2 = span.reduce(&v2);
        assert!(!r1.is_empty() && !r2.is_empty());
        let mut residues = SubspaceBasis::new(4);
        residues.insert(&r1).unwrap();
        assert!(!residues.insert(&r2).unwrap(), "residues must be dependent");
        // And residues never touch pivot columns.
        for r in [&r1, &r2] {
            for (i, _) in r {
                assert!(span.pivots().binary_search(i).is_err());
            }
        }
    }
}
