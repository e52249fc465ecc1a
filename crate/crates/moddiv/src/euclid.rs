//! Hermite and Smith normal forms, kernels and inhomogeneous solving over a
//! Euclidean domain, generic in the coefficient arithmetic.
//!
//! Only two coefficient domains are instantiated: the integers (`IntOps`) and
//! GF(p)[x] (`PolyDomOps`). Every other supported ring reaches this engine
//! through a lift (see `linalg`).
//!
//! Conventions:
//! - `hnf` is column-style: `A * V = H` with `V` invertible, `H` in column
//!   echelon form, pivots canonical (positive over Z, monic over GF(p)[x]) and
//!   entries left of a pivot in its row reduced to canonical range. Zero
//!   columns sit at the right.
//! - `snf` produces `U * A * V = D` diagonal with `d1 | d2 | ...` and
//!   canonical pivots.
//! Pivot selection takes the entry of minimal Euclidean size (absolute value
//! or degree), ties broken by lowest (row, col), which keeps runs
//! deterministic and coefficient growth tame.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt::Debug;

use crate::poly::{self, FpPoly};

pub trait EuclideanOps {
    type El: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, a: &Self::El) -> bool;
    fn add(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn sub(&self, a: &Self::El, b: &Self::El) -> Self::El;
    fn neg(&self, a: &Self::El) -> Self::El;
    fn mul(&self, a: &Self::El, b: &Self::El) -> Self::El;
    /// Floor-style division with canonical remainder; `b` nonzero.
    fn divmod(&self, a: &Self::El, b: &Self::El) -> (Self::El, Self::El);
    /// Compare Euclidean sizes of two nonzero elements.
    fn cmp_norm(&self, a: &Self::El, b: &Self::El) -> Ordering;
    /// The unit `u` such that `a * u` is canonical (positive / monic); `a` nonzero.
    fn normalizing_unit(&self, a: &Self::El) -> Self::El;
    fn is_unit(&self, a: &Self::El) -> bool;

    fn exact_div(&self, a: &Self::El, b: &Self::El) -> Option<Self::El> {
        let (q, r) = self.divmod(a, b);
        self.is_zero(&r).then_some(q)
    }
}

pub struct IntOps;

impl EuclideanOps for IntOps {
    type El = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn divmod(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }
    fn cmp_norm(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.abs().cmp(&b.abs())
    }
    fn normalizing_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
}

pub struct PolyDomOps {
    pub p: u64,
}

impl EuclideanOps for PolyDomOps {
    type El = FpPoly;

    fn zero(&self) -> FpPoly {
        vec![]
    }
    fn one(&self) -> FpPoly {
        vec![1]
    }
    fn is_zero(&self, a: &FpPoly) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        poly::add(a, b, self.p)
    }
    fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        poly::sub(a, b, self.p)
    }
    fn neg(&self, a: &FpPoly) -> FpPoly {
        poly::neg(a, self.p)
    }
    fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        poly::mul(a, b, self.p)
    }
    fn divmod(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        poly::divmod(a, b, self.p)
    }
    fn cmp_norm(&self, a: &FpPoly, b: &FpPoly) -> Ordering {
        a.len().cmp(&b.len())
    }
    fn normalizing_unit(&self, a: &FpPoly) -> FpPoly {
        vec![poly::inv_mod(*a.last().expect("nonzero"), self.p)]
    }
    fn is_unit(&self, a: &FpPoly) -> bool {
        a.len() == 1
    }
}

/// Row-major rectangular array over a Euclidean domain.
#[derive(Clone, Debug, PartialEq)]
pub struct EMat<El> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<El>,
}

impl<El: Clone + PartialEq + Debug> EMat<El> {
    pub fn new(rows: usize, cols: usize, data: Vec<El>) -> Self {
        assert_eq!(data.len(), rows * cols);
        EMat { rows, cols, data }
    }

    pub fn fill(rows: usize, cols: usize, v: El) -> Self {
        EMat {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    pub fn identity<E: EuclideanOps<El = El>>(ops: &E, n: usize) -> Self {
        let mut m = Self::fill(n, n, ops.zero());
        for i in 0..n {
            m.set(i, i, ops.one());
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &El {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: El) {
        self.data[i * self.cols + j] = v;
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn col(&self, j: usize) -> Vec<El> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul<E: EuclideanOps<El = El>>(&self, ops: &E, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::fill(self.rows, other.cols, ops.zero());
        for i in 0..self.rows {
            for k in 0..self.cols {
                if ops.is_zero(self.get(i, k)) {
                    continue;
                }
                for j in 0..other.cols {
                    let t = ops.mul(self.get(i, k), other.get(k, j));
                    let s = ops.add(out.get(i, j), &t);
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    /// col_dst += q * col_src
    fn add_col_mul<E: EuclideanOps<El = El>>(&mut self, ops: &E, dst: usize, src: usize, q: &El) {
        for i in 0..self.rows {
            let t = ops.mul(q, self.get(i, src));
            let s = ops.add(self.get(i, dst), &t);
            self.set(i, dst, s);
        }
    }

    /// row_dst += q * row_src
    fn add_row_mul<E: EuclideanOps<El = El>>(&mut self, ops: &E, dst: usize, src: usize, q: &El) {
        for j in 0..self.cols {
            let t = ops.mul(q, self.get(src, j));
            let s = ops.add(self.get(dst, j), &t);
            self.set(dst, j, s);
        }
    }

    fn scale_col<E: EuclideanOps<El = El>>(&mut self, ops: &E, j: usize, u: &El) {
        for i in 0..self.rows {
            let t = ops.mul(self.get(i, j), u);
            self.set(i, j, t);
        }
    }

    fn scale_row<E: EuclideanOps<El = El>>(&mut self, ops: &E, i: usize, u: &El) {
        for j in 0..self.cols {
            let t = ops.mul(self.get(i, j), u);
            self.set(i, j, t);
        }
    }
}

pub struct HnfResult<El> {
    pub h: EMat<El>,
    pub v: EMat<El>,
    /// (row, col) of each pivot, in increasing row and column order.
    pub pivots: Vec<(usize, usize)>,
    /// Determinant of `v`, tracked through the elementary operations.
    pub det_v: El,
}

/// Column-style Hermite normal form; `a * v = h`.
pub fn hnf<E: EuclideanOps>(ops: &E, a: &EMat<E::El>) -> HnfResult<E::El> {
    let mut h = a.clone();
    let mut v = EMat::identity(ops, a.cols);
    let mut det_v = ops.one();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut gamma = 0usize; // next pivot column

    for rho in 0..h.rows {
        if gamma == h.cols {
            break;
        }
        loop {
            // Minimal-norm nonzero entry in row rho among columns >= gamma.
            let mut best: Option<usize> = None;
            for j in gamma..h.cols {
                if ops.is_zero(h.get(rho, j)) {
                    continue;
                }
                best = match best {
                    None => Some(j),
                    Some(b) => {
                        if ops.cmp_norm(h.get(rho, j), h.get(rho, b)) == Ordering::Less {
                            Some(j)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            let Some(jstar) = best else {
                break; // row has no pivot; move to the next row
            };
            if jstar != gamma {
                h.swap_cols(gamma, jstar);
                v.swap_cols(gamma, jstar);
                det_v = ops.neg(&det_v);
            }
            // Reduce the other columns in this row.
            let mut clean = true;
            for j in gamma + 1..h.cols {
                if ops.is_zero(h.get(rho, j)) {
                    continue;
                }
                let (q, r) = ops.divmod(h.get(rho, j), h.get(rho, gamma));
                let nq = ops.neg(&q);
                h.add_col_mul(ops, j, gamma, &nq);
                v.add_col_mul(ops, j, gamma, &nq);
                if !ops.is_zero(&r) {
                    clean = false;
                }
            }
            if clean {
                // Canonical pivot, then reduce entries left of it in this row.
                let u = ops.normalizing_unit(h.get(rho, gamma));
                if u != ops.one() {
                    h.scale_col(ops, gamma, &u);
                    v.scale_col(ops, gamma, &u);
                    det_v = ops.mul(&det_v, &u);
                }
                for j in 0..gamma {
                    if ops.is_zero(h.get(rho, j)) {
                        continue;
                    }
                    let (q, _) = ops.divmod(h.get(rho, j), h.get(rho, gamma));
                    if ops.is_zero(&q) {
                        continue;
                    }
                    let nq = ops.neg(&q);
                    h.add_col_mul(ops, j, gamma, &nq);
                    v.add_col_mul(ops, j, gamma, &nq);
                }
                pivots.push((rho, gamma));
                gamma += 1;
                break;
            }
        }
    }

    HnfResult {
        h,
        v,
        pivots,
        det_v,
    }
}

pub struct SnfResult<El> {
    pub d: EMat<El>,
    pub u: EMat<El>,
    pub v: EMat<El>,
    pub det_u: El,
    pub det_v: El,
}

/// Smith normal form; `u * a * v = d`.
pub fn snf<E: EuclideanOps>(ops: &E, a: &EMat<E::El>) -> SnfResult<E::El> {
    let mut d = a.clone();
    let mut u = EMat::identity(ops, a.rows);
    let mut v = EMat::identity(ops, a.cols);
    let mut det_u = ops.one();
    let mut det_v = ops.one();

    let limit = d.rows.min(d.cols);
    for t in 0..limit {
        'refine: loop {
            // Minimal-norm nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if ops.is_zero(d.get(i, j)) {
                        continue;
                    }
                    best = match best {
                        None => Some((i, j)),
                        Some(b) => {
                            if ops.cmp_norm(d.get(i, j), d.get(b.0, b.1)) == Ordering::Less {
                                Some((i, j))
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some((pi, pj)) = best else {
                break; // trailing block is zero
            };
            if pi != t {
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                det_u = ops.neg(&det_u);
            }
            if pj != t {
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);
                det_v = ops.neg(&det_v);
            }
            // Clear the pivot row and column.
            let mut clean = true;
            for i in t + 1..d.rows {
                if ops.is_zero(d.get(i, t)) {
                    continue;
                }
                let (q, r) = ops.divmod(d.get(i, t), d.get(t, t));
                let nq = ops.neg(&q);
                d.add_row_mul(ops, i, t, &nq);
                u.add_row_mul(ops, i, t, &nq);
                if !ops.is_zero(&r) {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                if ops.is_zero(d.get(t, j)) {
                    continue;
                }
                let (q, r) = ops.divmod(d.get(t, j), d.get(t, t));
                let nq = ops.neg(&q);
                d.add_col_mul(ops, j, t, &nq);
                v.add_col_mul(ops, j, t, &nq);
                if !ops.is_zero(&r) {
                    clean = false;
                }
            }
            if !clean {
                continue 'refine;
            }
            // Divisibility fix-up: the pivot must divide the trailing block.
            for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if ops.exact_div(d.get(i, j), d.get(t, t)).is_none() {
                        d.add_col_mul(ops, t, j, &ops.one());
                        v.add_col_mul(ops, t, j, &ops.one());
                        continue 'refine;
                    }
                }
            }
            break;
        }
        if ops.is_zero(d.get(t, t)) {
            break;
        }
        let nu = ops.normalizing_unit(d.get(t, t));
        if nu != ops.one() {
            d.scale_row(ops, t, &nu);
            u.scale_row(ops, t, &nu);
            det_u = ops.mul(&det_u, &nu);
        }
    }

    SnfResult {
        d,
        u,
        v,
        det_u,
        det_v,
    }
}

pub struct SolveResult<El> {
    /// One solution per right-hand-side column (cols of `x` = cols of `b`).
    pub particular: EMat<El>,
    /// Kernel generators as columns.
    pub kernel: EMat<El>,
}

/// Solve `a * x = b` (matrix right-hand side) over the domain.
///
/// Returns the canonical particular solution (reduced against the kernel via
/// the Hermite form) together with a kernel basis, or `None` when some column
/// is unsolvable.
pub fn solve<E: EuclideanOps>(
    ops: &E,
    a: &EMat<E::El>,
    b: &EMat<E::El>,
) -> Option<SolveResult<E::El>> {
    assert_eq!(a.rows, b.rows, "right-hand side row mismatch");
    let HnfResult { h, v, pivots, .. } = hnf(ops, a);
    let rank = pivots.len();

    // Solve h * y = b column by column, walking rows top to bottom.
    let mut y = EMat::fill(a.cols, b.cols, ops.zero());
    for bc in 0..b.cols {
        let mut next_pivot = 0usize;
        for rho in 0..a.rows {
            // Residual of row rho: b[rho] - sum_j h[rho][j] * y[j].
            let mut res = b.get(rho, bc).clone();
            for j in 0..rank.min(next_pivot) {
                if ops.is_zero(h.get(rho, j)) {
                    continue;
                }
                let t = ops.mul(h.get(rho, j), y.get(j, bc));
                res = ops.sub(&res, &t);
            }
            if next_pivot < rank && pivots[next_pivot].0 == rho {
                let q = ops.exact_div(&res, h.get(rho, next_pivot))?;
                y.set(next_pivot, bc, q);
                next_pivot += 1;
            } else if !ops.is_zero(&res) {
                return None;
            }
        }
    }
    let mut x = v.mul(ops, &y);

    // Kernel basis: columns of v beyond the rank.
    let kernel_cols: Vec<usize> = (rank..a.cols).collect();
    let mut kernel = EMat::fill(a.cols, kernel_cols.len(), ops.zero());
    for (kj, &j) in kernel_cols.iter().enumerate() {
        for i in 0..a.cols {
            kernel.set(i, kj, v.get(i, j).clone());
        }
    }

    reduce_mod_kernel(ops, &mut x, &kernel);
    Some(SolveResult {
        particular: x,
        kernel,
    })
}

/// Reduce each column of `x` against the column lattice of `kernel`, using
/// the Hermite form of the kernel; deterministic canonical representative.
pub fn reduce_mod_kernel<E: EuclideanOps>(ops: &E, x: &mut EMat<E::El>, kernel: &EMat<E::El>) {
    if kernel.cols == 0 || x.cols == 0 {
        return;
    }
    let HnfResult { h, pivots, .. } = hnf(ops, kernel);
    for bc in 0..x.cols {
        for &(rho, j) in &pivots {
            let (q, _) = ops.divmod(x.get(rho, bc), h.get(rho, j));
            if ops.is_zero(&q) {
                continue;
            }
            for i in 0..x.rows {
                let t = ops.mul(&q, h.get(i, j));
                let s = ops.sub(x.get(i, bc), &t);
                x.set(i, bc, s);
            }
        }
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination; works over any
/// integral domain with exact division.
pub fn det_bareiss<E: EuclideanOps>(ops: &E, a: &EMat<E::El>) -> E::El {
    assert_eq!(a.rows, a.cols, "determinant of a non-square matrix");
    let n = a.rows;
    if n == 0 {
        return ops.one();
    }
    let mut m = a.clone();
    let mut sign_flip = false;
    let mut prev = ops.one();
    for k in 0..n - 1 {
        if ops.is_zero(m.get(k, k)) {
            let Some(swap) = (k + 1..n).find(|&i| !ops.is_zero(m.get(i, k))) else {
                return ops.zero();
            };
            m.swap_rows(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t1 = ops.mul(m.get(i, j), m.get(k, k));
                let t2 = ops.mul(m.get(i, k), m.get(k, j));
                let num = ops.sub(&t1, &t2);
                let q = ops
                    .exact_div(&num, &prev)
                    .expect("Bareiss intermediate division is exact");
                m.set(i, j, q);
            }
            m.set(i, k, ops.zero());
        }
        prev = m.get(k, k).clone();
    }
    let d = m.get(n - 1, n - 1).clone();
    if sign_flip {
        ops.neg(&d)
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmat(data: &[&[i64]]) -> EMat<BigInt> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        let mut v = Vec::new();
        for r in data {
            for &e in *r {
                v.push(BigInt::from(e));
            }
        }
        EMat::new(rows, cols, v)
    }

    #[test]
    fn hnf_of_gcd_row() {
        let a = zmat(&[&[6, 4]]);
        let r = hnf(&IntOps, &a);
        assert_eq!(r.h, zmat(&[&[2, 0]]));
        assert_eq!(a.mul(&IntOps, &r.v), r.h);
        assert!(IntOps.is_unit(&det_bareiss(&IntOps, &r.v)));
    }

    #[test]
    fn snf_examples() {
        let a = zmat(&[&[2, 4], &[6, 8]]);
        let r = snf(&IntOps, &a);
        assert_eq!(r.d, zmat(&[&[2, 0], &[0, 4]]));
        assert_eq!(r.u.mul(&IntOps, &a).mul(&IntOps, &r.v), r.d);

        let a = zmat(&[&[2, 0], &[0, 3]]);
        let r = snf(&IntOps, &a);
        assert_eq!(r.d, zmat(&[&[1, 0], &[0, 6]]));

        let a = EMat::identity(&IntOps, 3);
        let r = snf(&IntOps, &a);
        assert_eq!(r.d, a);
        assert_eq!(r.u, EMat::identity(&IntOps, 3));
        assert_eq!(r.v, EMat::identity(&IntOps, 3));
    }

    #[test]
    fn hnf_poly_common_factor() {
        // [x, x^2 + x] -> [x, 0] over GF(2)[x]
        let ops = PolyDomOps { p: 2 };
        let a = EMat::new(1, 2, vec![vec![0, 1], vec![0, 1, 1]]);
        let r = hnf(&ops, &a);
        assert_eq!(r.h, EMat::new(1, 2, vec![vec![0, 1], vec![]]));
        assert_eq!(a.mul(&ops, &r.v), r.h);
    }

    #[test]
    fn solve_parity_and_exact() {
        let a = zmat(&[&[2]]);
        assert!(solve(&IntOps, &a, &zmat(&[&[3]])).is_none());
        let r = solve(&IntOps, &a, &zmat(&[&[6]])).unwrap();
        assert_eq!(r.particular, zmat(&[&[3]]));
        assert_eq!(r.kernel.cols, 0);
    }

    #[test]
    fn solve_underdetermined_kernel() {
        // x + y = 0 over Z: kernel rank 1.
        let a = zmat(&[&[1, 1]]);
        let r = solve(&IntOps, &a, &zmat(&[&[0]])).unwrap();
        assert_eq!(r.kernel.cols, 1);
        let k0 = r.kernel.col(0);
        assert_eq!(&k0[0] + &k0[1], BigInt::zero());
        assert!(!k0[0].is_zero());
    }

    #[test]
    fn zero_matrix_hnf() {
        let a = zmat(&[&[0, 0], &[0, 0]]);
        let r = hnf(&IntOps, &a);
        assert_eq!(r.h, a);
        assert_eq!(r.v, EMat::identity(&IntOps, 2));
        assert!(r.pivots.is_empty());
    }
}
