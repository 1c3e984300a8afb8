//! Exact rational scalars, dense/sparse matrices and row-space reduction.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Q = BigRational;

pub fn qz(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// q^k for integer k (k may be negative).
pub fn qpow(q: &Q, k: i64) -> Q {
    if k >= 0 {
        num::pow::pow(q.clone(), k as usize)
    } else {
        num::pow::pow(q.recip(), (-k) as usize)
    }
}

/// Quantum integer [n]_q = (q^n - q^{-n}) / (q - q^{-1}).
pub fn qint(q: &Q, n: i64) -> Q {
    let d = q - q.recip();
    if d.is_zero() {
        return qz(n);
    }
    (qpow(q, n) - qpow(q, -n)) / d
}

/// Quantum factorial [n]_q!.
pub fn qfact(q: &Q, n: i64) -> Q {
    let mut acc = Q::one();
    for k in 1..=n {
        acc *= qint(q, k);
    }
    acc
}

/// Quantum binomial coefficient [n choose k]_q.
pub fn qbinom(q: &Q, n: i64, k: i64) -> Q {
    qfact(q, n) / (qfact(q, k) * qfact(q, n - k))
}

pub fn q_to_f64(x: &Q) -> f64 {
    let numer = x.numer();
    let denom = x.denom();
    // Scale down large magnitudes to stay in f64 range.
    let nf = bigint_to_f64(numer);
    let df = bigint_to_f64(denom);
    nf / df
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

// ---------------------------------------------------------------------------
// Dense rational matrices
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl RatMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        RatMat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMat {
        let mut t = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *out.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        let mut out = vec![Q::zero(); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() && !v[j].is_zero() {
                    out[i] += a * &v[j];
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, s: &Q) -> RatMat {
        let mut m = self.clone();
        for x in &mut m.data {
            *x *= s;
        }
        m
    }

    pub fn add_assign(&mut self, other: &RatMat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a += b;
        }
    }

    /// Row-reduce in place; returns the rank. Deterministic first-nonzero pivoting.
    pub fn rref(&mut self) -> usize {
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(rank, pivot);
            let inv = self.at(rank, col).recip();
            for j in col..self.cols {
                let v = self.at(rank, j) * &inv;
                *self.at_mut(rank, j) = v;
            }
            for r in 0..self.rows {
                if r != rank && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let v = self.at(r, j) - &factor * self.at(rank, j);
                        *self.at_mut(r, j) = v;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref()
    }

    /// Basis of the right nullspace {x : Ax = 0}.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        m.rref();
        // Identify pivot columns.
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row < m.rows && !m.at(row, col).is_zero() {
                pivot_cols.push(col);
                row += 1;
            }
        }
        let free_cols: Vec<usize> =
            (0..m.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free_cols {
            let mut v = vec![Q::zero(); m.cols];
            v[fc] = Q::one();
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = -m.at(r, fc).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve Ax = b exactly. Returns None when inconsistent; when the system is
    /// underdetermined an arbitrary solution (free variables zero) is returned.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(self.rows, b.len());
        let mut aug = RatMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        aug.rref();
        let mut x = vec![Q::zero(); self.cols];
        let mut row = 0;
        for col in 0..self.cols {
            if row < aug.rows && !aug.at(row, col).is_zero() {
                x[col] = aug.at(row, aug.cols - 1).clone();
                row += 1;
            }
        }
        // Consistency: any leftover row with nonzero last entry only.
        for r in row..aug.rows {
            let lead = (0..self.cols).all(|c| aug.at(r, c).is_zero());
            if lead && !aug.at(r, self.cols).is_zero() {
                return None;
            }
        }
        Some(x)
    }

    /// Solve AX = B exactly for a matrix of right-hand sides, with one
    /// elimination pass. Returns None when any column is inconsistent; free
    /// variables are set to zero.
    pub fn solve_multi(&self, b: &RatMat) -> Option<RatMat> {
        assert_eq!(self.rows, b.rows);
        let mut aug = RatMat::zero(self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            for j in 0..b.cols {
                *aug.at_mut(i, self.cols + j) = b.at(i, j).clone();
            }
        }
        aug.rref();
        let mut x = RatMat::zero(self.cols, b.cols);
        let mut row = 0;
        for col in 0..self.cols {
            if row < aug.rows && !aug.at(row, col).is_zero() {
                for j in 0..b.cols {
                    *x.at_mut(col, j) = aug.at(row, self.cols + j).clone();
                }
                row += 1;
            }
        }
        for r in row..aug.rows {
            if (0..self.cols).all(|c| aug.at(r, c).is_zero())
                && (0..b.cols).any(|j| !aug.at(r, self.cols + j).is_zero())
            {
                return None;
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Q::one();
        }
        aug.rref();
        // Invertible iff the left block reduced to the identity.
        for i in 0..n {
            if !aug.at(i, i).is_one() {
                return None;
            }
        }
        let mut inv = RatMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(inv)
    }
}

// ---------------------------------------------------------------------------
// Column-sparse rational matrices (module action matrices)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Default)]
pub struct SparseMat {
    pub rows: usize,
    /// cols[j] = entries (row, value) of column j.
    pub cols: Vec<Vec<(usize, Q)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat { rows, cols: vec![Vec::new(); cols] }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn set_col(&mut self, j: usize, entries: Vec<(usize, Q)>) {
        self.cols[j] = entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, a) in col {
                out[*i] += a * &v[j];
            }
        }
        out
    }

    pub fn to_dense(&self) -> RatMat {
        let mut m = RatMat::zero(self.rows, self.ncols());
        for (j, col) in self.cols.iter().enumerate() {
            for (i, a) in col {
                *m.at_mut(*i, j) = a.clone();
            }
        }
        m
    }

    /// Entry accessor (linear scan of the column).
    pub fn get(&self, i: usize, j: usize) -> Q {
        self.cols[j]
            .iter()
            .find(|(r, _)| *r == i)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Q::zero)
    }

    /// self * diag(d) (column scaling).
    pub fn scale_cols(&self, d: &[Q]) -> SparseMat {
        let mut out = self.clone();
        for (j, col) in out.cols.iter_mut().enumerate() {
            for (_, v) in col.iter_mut() {
                *v *= &d[j];
            }
        }
        out
    }

    /// diag(d) * self (row scaling).
    pub fn scale_rows(&self, d: &[Q]) -> SparseMat {
        let mut out = self.clone();
        for col in out.cols.iter_mut() {
            for (i, v) in col.iter_mut() {
                *v *= &d[*i];
            }
        }
        out
    }

    pub fn neg(&self) -> SparseMat {
        let mut out = self.clone();
        for col in out.cols.iter_mut() {
            for (_, v) in col.iter_mut() {
                *v = -v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zero(self.ncols(), self.rows);
        for (j, col) in self.cols.iter().enumerate() {
            for (i, a) in col {
                out.cols[*i].push((j, a.clone()));
            }
        }
        for col in out.cols.iter_mut() {
            col.sort_by_key(|(r, _)| *r);
        }
        out
    }

    /// Kronecker product; block order: index (i1, i2) -> i1 * rows2 + i2.
    pub fn kron(&self, other: &SparseMat) -> SparseMat {
        let rows = self.rows * other.rows;
        let mut out = SparseMat::zero(rows, self.ncols() * other.ncols());
        for (j1, col1) in self.cols.iter().enumerate() {
            for (j2, col2) in other.cols.iter().enumerate() {
                let mut entries = Vec::with_capacity(col1.len() * col2.len());
                for (i1, a) in col1 {
                    for (i2, b) in col2 {
                        entries.push((i1 * other.rows + i2, a * b));
                    }
                }
                out.cols[j1 * other.ncols() + j2] = entries;
            }
        }
        out
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.ncols(), other.ncols());
        let mut out = SparseMat::zero(self.rows, self.ncols());
        for j in 0..self.ncols() {
            let mut entries: Vec<(usize, Q)> = self.cols[j].clone();
            for (i, b) in &other.cols[j] {
                if let Some((_, v)) = entries.iter_mut().find(|(r, _)| r == i) {
                    *v += b;
                } else {
                    entries.push((*i, b.clone()));
                }
            }
            entries.retain(|(_, v)| !v.is_zero());
            entries.sort_by_key(|(r, _)| *r);
            out.cols[j] = entries;
        }
        out
    }

    pub fn from_diag(d: &[Q]) -> SparseMat {
        let mut out = SparseMat::zero(d.len(), d.len());
        for (j, v) in d.iter().enumerate() {
            if !v.is_zero() {
                out.cols[j].push((j, v.clone()));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Incremental row space (exact span building)
// ---------------------------------------------------------------------------

/// A subspace of Q^n maintained in echelon form. Rows are normalized so the
/// leading entry is 1; insertion order is deterministic.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    pub dim: usize,
    /// (pivot column, row) sorted by pivot column.
    rows: Vec<(usize, Vec<Q>)>,
}

impl RowSpace {
    pub fn new(dim: usize) -> Self {
        RowSpace { dim, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> impl Iterator<Item = &Vec<Q>> {
        self.rows.iter().map(|(_, r)| r)
    }

    /// Reduce v against the current basis; returns the residual.
    pub fn reduce(&self, v: &[Q]) -> Vec<Q> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for j in *p..self.dim {
                    if !row[j].is_zero() {
                        v[j] -= &f * &row[j];
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert a vector; returns true when the rank grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        assert_eq!(v.len(), self.dim);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        // Back-substitute into existing rows to keep reduced form.
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for j in p..self.dim {
                    if !v[j].is_zero() {
                        let d = &f * &v[j];
                        row[j] -= d;
                    }
                }
            }
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, v));
        true
    }

    /// Subspace equality test.
    pub fn equals(&self, other: &RowSpace) -> bool {
        self.rank() == other.rank() && other.basis().all(|v| self.contains(v))
    }

    /// Containment: is self a subspace of other?
    pub fn contained_in(&self, other: &RowSpace) -> bool {
        self.basis().all(|v| other.contains(v))
    }
}

/// Convenience: absolute value of a rational.
pub fn qabs(x: &Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers() {
        let q = qfrac(1, 2);
        assert_eq!(qint(&q, 1), Q::one());
        // [2]_q = q + q^{-1} = 5/2 at q = 1/2
        assert_eq!(qint(&q, 2), qfrac(5, 2));
        assert_eq!(qbinom(&q, 2, 1), qfrac(5, 2));
        // [3]_q = q^2 + 1 + q^{-2} = 21/4
        assert_eq!(qint(&q, 3), qfrac(21, 4));
    }

    #[test]
    fn rank_and_nullspace() {
        let m = RatMat::from_rows(vec![
            vec![qz(1), qz(2), qz(3)],
            vec![qz(2), qz(4), qz(6)],
            vec![qz(1), qz(0), qz(1)],
        ]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn solve_and_inverse() {
        let m = RatMat::from_rows(vec![vec![qz(2), qz(1)], vec![qz(1), qz(1)]]);
        let x = m.solve(&[qz(3), qz(2)]).unwrap();
        assert_eq!(x, vec![qz(1), qz(1)]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
        let sing = RatMat::from_rows(vec![vec![qz(1), qz(1)], vec![qz(1), qz(1)]]);
        assert!(sing.inverse().is_none());
        assert!(sing.solve(&[qz(0), qz(1)]).is_none());
    }

    #[test]
    fn row_space_insertion() {
        let mut rs = RowSpace::new(3);
        assert!(rs.insert(&[qz(1), qz(1), qz(0)]));
        assert!(rs.insert(&[qz(0), qz(1), qz(1)]));
        assert!(!rs.insert(&[qz(1), qz(2), qz(1)]));
        assert_eq!(rs.rank(), 2);
        assert!(rs.contains(&[qz(2), qz(3), qz(1)]));
        assert!(!rs.contains(&[qz(0), qz(0), qz(1)]));
    }

    #[test]
    fn sparse_kron_matches_dense() {
        let mut a = SparseMat::zero(2, 2);
        a.set_col(0, vec![(1, qz(2))]);
        a.set_col(1, vec![(0, qz(3))]);
        let b = SparseMat::from_diag(&[qz(1), qz(-1)]);
        let k = a.kron(&b).to_dense();
        assert_eq!(k.at(2, 0), &qz(2));
        assert_eq!(k.at(3, 1), &qz(-2));
        assert_eq!(k.at(0, 2), &qz(3));
        assert_eq!(k.at(1, 3), &qz(-3));
    }
}
