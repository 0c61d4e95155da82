//! Exact dense linear algebra over Z (arbitrary precision) and Q.
//!
//! Everything here is deliberately small and dense: the complexes handled by
//! this crate have a few dozen cells, so clarity and exactness win over
//! asymptotics. Smith normal form is the workhorse: it drives homology
//! computations, cokernel presentations of lattice maps, and the canonical
//! coordinates used to label twisted conjugacy classes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense matrix over `BigInt`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn to_rational(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| BigRational::from_integer(x.clone())).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form: `u * m * v = s` with `u`, `v` unimodular and `s`
/// diagonal with non-negative entries forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IMat,
    pub u: IMat,
    pub v: IMat,
    /// Nonzero diagonal entries (the invariant factors, in chain order).
    pub factors: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

pub fn smith_normal_form(m: &IMat) -> Smith {
    let mut s = m.clone();
    let mut u = IMat::identity(m.rows);
    let mut v = IMat::identity(m.cols);
    let n = m.rows.min(m.cols);

    for t in 0..n {
        // Find a pivot: the entry of smallest nonzero absolute value in the
        // remaining block (deterministic scan order for reproducibility).
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..s.rows {
                for j in t..s.cols {
                    if !s[(i, j)].is_zero()
                        && pivot.map_or(true, |(pi, pj)| s[(i, j)].abs() < s[(pi, pj)].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                // Remaining block is zero; we are done.
                return finish(s, u, v);
            };
            swap_rows(&mut s, &mut u, t, pi);
            swap_cols(&mut s, &mut v, t, pj);

            // Clear the pivot row and column by Euclidean reduction.
            let mut dirty = false;
            for i in t + 1..s.rows {
                if !s[(i, t)].is_zero() {
                    let q = div_round(&s[(i, t)], &s[(t, t)]);
                    row_axpy(&mut s, &mut u, i, t, &-q);
                    if !s[(i, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..s.cols {
                if !s[(t, j)].is_zero() {
                    let q = div_round(&s[(t, j)], &s[(t, t)]);
                    col_axpy(&mut s, &mut v, j, t, &-q);
                    if !s[(t, j)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue; // pivot may have shrunk; repeat
            }

            // Row and column are clear. Enforce divisibility: the pivot must
            // divide every entry of the remaining block.
            let mut offender = None;
            'scan: for i in t + 1..s.rows {
                for j in t + 1..s.cols {
                    if !(&s[(i, j)] % &s[(t, t)]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            if let Some(i) = offender {
                // Add the offending row to the pivot row and restart.
                let one = BigInt::one();
                row_axpy(&mut s, &mut u, t, i, &one);
                continue;
            }
            break;
        }
    }
    finish(s, u, v)
}

fn finish(mut s: IMat, mut u: IMat, v: IMat) -> Smith {
    // Normalize signs on the diagonal.
    let n = s.rows.min(s.cols);
    for t in 0..n {
        if s[(t, t)].is_negative() {
            for j in 0..s.cols {
                let neg = -s[(t, j)].clone();
                s[(t, j)] = neg;
            }
            for j in 0..u.cols {
                let neg = -u[(t, j)].clone();
                u[(t, j)] = neg;
            }
        }
    }
    let factors = (0..n).map(|t| s[(t, t)].clone()).filter(|x| !x.is_zero()).collect();
    Smith { s, u, v, factors }
}

fn swap_rows(s: &mut IMat, u: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..s.cols {
        s.data.swap(a * s.cols + j, b * s.cols + j);
    }
    for j in 0..u.cols {
        u.data.swap(a * u.cols + j, b * u.cols + j);
    }
}

fn swap_cols(s: &mut IMat, v: &mut IMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..s.rows {
        s.data.swap(i * s.cols + a, i * s.cols + b);
    }
    for i in 0..v.rows {
        v.data.swap(i * v.cols + a, i * v.cols + b);
    }
}

/// row a += q * row b (on both s and its row-transform accumulator u).
fn row_axpy(s: &mut IMat, u: &mut IMat, a: usize, b: usize, q: &BigInt) {
    for j in 0..s.cols {
        let add = q * &s[(b, j)];
        s[(a, j)] += add;
    }
    for j in 0..u.cols {
        let add = q * &u[(b, j)];
        u[(a, j)] += add;
    }
}

/// col a += q * col b (on both s and its column-transform accumulator v).
fn col_axpy(s: &mut IMat, v: &mut IMat, a: usize, b: usize, q: &BigInt) {
    for i in 0..s.rows {
        let add = q * &s[(i, b)];
        s[(i, a)] += add;
    }
    for i in 0..v.rows {
        let add = q * &v[(i, b)];
        v[(i, a)] += add;
    }
}

/// Rounded division, so remainders have magnitude at most |d|/2. Keeps SNF
/// coefficient growth tame.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_rem(n, d);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > d.abs() {
        if (n.is_negative()) == (d.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

/// Dense matrix over `BigRational`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    /// Determinant by fraction elimination. Returns 0 for the empty matrix's
    /// convention det = 1 handled by the caller? No: det of 0x0 is 1.
    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigRational::one();
        }
        let mut m = self.clone();
        let mut det = BigRational::one();
        for t in 0..n {
            let Some(p) = (t..n).find(|&i| !m[(i, t)].is_zero()) else {
                return BigRational::zero();
            };
            if p != t {
                for j in 0..n {
                    m.data.swap(t * n + j, p * n + j);
                }
                det = -det;
            }
            det *= m[(t, t)].clone();
            let inv = m[(t, t)].recip();
            for i in t + 1..n {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let f = &m[(i, t)] * &inv;
                for j in t..n {
                    let sub = &f * &m[(t, j)];
                    m[(i, j)] -= sub;
                }
            }
        }
        det
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, p * self.cols + j);
            }
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let val = &self[(r, j)] * &inv;
                self[(r, j)] = val;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let sub = &f * &self[(r, j)];
                        self[(i, j)] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis of the right kernel, as columns stacked into a matrix
    /// (cols = nullity). Deterministic: free variables in increasing order.
    pub fn kernel_basis(&self) -> QMat {
        let mut m = self.clone();
        let pivots = m.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = QMat::zero(self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out[(fc, k)] = BigRational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                out[(pc, k)] = -m[(r, fc)].clone();
            }
        }
        out
    }

    /// Solve self * x = b for each column of b. Returns None if inconsistent.
    /// When underdetermined, free variables are set to zero (deterministic).
    pub fn solve(&self, b: &QMat) -> Option<QMat> {
        assert_eq!(self.rows, b.rows);
        let mut aug = QMat::zero(self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..b.cols {
                aug[(i, self.cols + j)] = b[(i, j)].clone();
            }
        }
        let pivots = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None; // a pivot in the augmented part: inconsistent
        }
        let mut x = QMat::zero(self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = aug[(r, self.cols + j)].clone();
            }
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_snf(m: &IMat) {
        let snf = smith_normal_form(m);
        assert_eq!(snf.u.mul(m).mul(&snf.v), snf.s, "UMV = S");
        // Unimodularity via rational determinant = +-1.
        let du = snf.u.to_rational().det();
        let dv = snf.v.to_rational().det();
        assert!(du.abs() == BigRational::one() && dv.abs() == BigRational::one());
        // Divisibility chain.
        for w in snf.factors.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "chain {:?}", snf.factors);
        }
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IMat::zero(3, 2);
        let snf = smith_normal_form(&m);
        assert!(snf.s.is_zero());
        assert!(snf.factors.is_empty());
        check_snf(&m);
    }

    #[test]
    fn snf_one_by_one() {
        for d in [-3i64, -1, 0, 1, 2, 5] {
            let m = IMat::from_rows(&[vec![d]]);
            let snf = smith_normal_form(&m);
            if d == 0 {
                assert!(snf.factors.is_empty());
            } else {
                assert_eq!(snf.factors, vec![BigInt::from(d.abs())]);
            }
            check_snf(&m);
        }
    }

    #[test]
    fn snf_diag_2_3_gives_1_6() {
        let m = IMat::from_rows(&[vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.factors, vec![BigInt::from(1), BigInt::from(6)]);
        check_snf(&m);
    }

    #[test]
    fn snf_random_small() {
        // Deterministic pseudo-random matrices; structural checks only.
        let mut seed = 12345u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 11) as i64 - 5
        };
        for _ in 0..30 {
            let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..5).map(|_| next()).collect()).collect();
            check_snf(&IMat::from_rows(&rows));
        }
    }

    #[test]
    fn rref_and_kernel() {
        // boundary of a hexagon circle: 6x6, rank 5, kernel rank 1
        let mut d1 = QMat::zero(6, 6);
        for e in 0..6 {
            d1[(e, e)] = int(-1); // tail
            d1[((e + 1) % 6, e)] = int(1); // head
        }
        let k = d1.kernel_basis();
        assert_eq!(k.cols, 1);
        // kernel vector is the fundamental cycle (all entries equal)
        let v0 = k[(0, 0)].clone();
        assert!(!v0.is_zero());
        for i in 1..6 {
            assert_eq!(k[(i, 0)], v0);
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = QMat { rows: 2, cols: 2, data: vec![int(1), int(2), int(2), int(4)] };
        let b_ok = QMat { rows: 2, cols: 1, data: vec![int(3), int(6)] };
        let b_bad = QMat { rows: 2, cols: 1, data: vec![int(3), int(7)] };
        let x = a.solve(&b_ok).unwrap();
        assert_eq!(a.mul(&x), b_ok);
        assert!(a.solve(&b_bad).is_none());
    }

    #[test]
    fn det_signs() {
        let a = QMat { rows: 2, cols: 2, data: vec![int(0), int(1), int(1), int(0)] };
        assert_eq!(a.det(), int(-1));
        let b = QMat::identity(3);
        assert_eq!(b.det(), int(1));
        assert_eq!(QMat::zero(0, 0).det(), int(1));
    }
}
