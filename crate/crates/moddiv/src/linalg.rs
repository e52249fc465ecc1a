//! Ring-level normal forms and linear solving.
//!
//! One Euclidean engine (over Z and over GF(p)[x]) serves every supported
//! ring class:
//! - `Z/n`, `GF(p)` systems are lifted to Z with `n*I` relation columns
//!   appended,
//! - `GF(p)[x]/(f)` systems are lifted to GF(p)[x] with `f*I` appended,
//! - table-ring systems are compiled to base-ring systems through the
//!   structure constants,
//! - product-ring systems split componentwise.
//!
//! Normal forms over modular rings are the reduced images of the integral
//! forms of the canonical lifts, which keeps the output deterministic and the
//! reconstruction identities valid.

use crate::error::{Error, Result};
use crate::euclid::{self, EMat, IntOps, PolyDomOps};
use crate::matrix::RingMatrix;
use crate::poly::FpPoly;
use crate::ring::{Ring, RingElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

#[derive(Clone, Debug)]
pub struct NormalFormResult {
    pub d: RingMatrix,
    pub u: RingMatrix,
    pub v: RingMatrix,
    pub pivots: Vec<(usize, usize)>,
    pub det_u: RingElement,
    pub det_v: RingElement,
}

#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// `a * particular = b`; one column per right-hand-side column.
    pub particular: RingMatrix,
    /// Kernel generators as columns (a generating set, not necessarily minimal).
    pub kernel: RingMatrix,
}

// ---- element/lift conversions ----

fn elem_to_bigint(e: &RingElement) -> BigInt {
    match e {
        RingElement::Int(x) => x.clone(),
        RingElement::Res(x) => BigInt::from(*x),
        _ => panic!("not an integer-like element: {e:?}"),
    }
}

fn bigint_to_elem(ring: &Ring, x: &BigInt) -> RingElement {
    match ring {
        Ring::Integers => RingElement::Int(x.clone()),
        Ring::IntegersMod(n) | Ring::PrimeField(n) => {
            let m = x.mod_floor(&BigInt::from(*n));
            RingElement::Res(m.to_u64().expect("reduced residue fits u64"))
        }
        _ => panic!("not an integer-like ring"),
    }
}

fn elem_to_poly(e: &RingElement) -> FpPoly {
    match e {
        RingElement::Poly(c) => c.clone(),
        _ => panic!("not a polynomial element: {e:?}"),
    }
}

fn poly_to_elem(ring: &Ring, c: &FpPoly) -> RingElement {
    match ring {
        Ring::PolyOverPrimeField(_) => RingElement::Poly(c.clone()),
        Ring::PolyQuotient { p, modulus } => RingElement::Poly(crate::poly::rem(c, modulus, *p)),
        _ => panic!("not a polynomial ring"),
    }
}

fn to_int_mat(a: &RingMatrix) -> EMat<BigInt> {
    EMat::new(
        a.rows,
        a.cols,
        a.entries().iter().map(elem_to_bigint).collect(),
    )
}

fn from_int_mat(ring: &Ring, m: &EMat<BigInt>) -> RingMatrix {
    RingMatrix::new(
        ring.clone(),
        m.rows,
        m.cols,
        m.data.iter().map(|x| bigint_to_elem(ring, x)).collect(),
    )
}

fn to_poly_mat(a: &RingMatrix) -> EMat<FpPoly> {
    EMat::new(
        a.rows,
        a.cols,
        a.entries().iter().map(elem_to_poly).collect(),
    )
}

fn from_poly_mat(ring: &Ring, m: &EMat<FpPoly>) -> RingMatrix {
    RingMatrix::new(
        ring.clone(),
        m.rows,
        m.cols,
        m.data.iter().map(|c| poly_to_elem(ring, c)).collect(),
    )
}

fn unsupported(op: &'static str, ring: &Ring) -> Error {
    Error::Unsupported {
        op,
        ring: ring.descriptor(),
    }
}

// ---- normal forms ----

/// Column-style Hermite normal form with transform: `a * v = d`, `u = I`.
pub fn hnf(a: &RingMatrix) -> Result<NormalFormResult> {
    match &a.ring {
        Ring::Integers | Ring::IntegersMod(_) | Ring::PrimeField(_) => {
            let r = euclid::hnf(&IntOps, &to_int_mat(a));
            Ok(NormalFormResult {
                d: from_int_mat(&a.ring, &r.h),
                u: RingMatrix::identity(a.ring.clone(), a.rows),
                v: from_int_mat(&a.ring, &r.v),
                pivots: r.pivots,
                det_u: a.ring.one(),
                det_v: bigint_to_elem(&a.ring, &r.det_v),
            })
        }
        Ring::PolyOverPrimeField(p) | Ring::PolyQuotient { p, .. } => {
            let ops = PolyDomOps { p: *p };
            let r = euclid::hnf(&ops, &to_poly_mat(a));
            Ok(NormalFormResult {
                d: from_poly_mat(&a.ring, &r.h),
                u: RingMatrix::identity(a.ring.clone(), a.rows),
                v: from_poly_mat(&a.ring, &r.v),
                pivots: r.pivots,
                det_u: a.ring.one(),
                det_v: poly_to_elem(&a.ring, &r.det_v),
            })
        }
        _ => Err(unsupported("hnf", &a.ring)),
    }
}

/// Smith normal form with transforms: `u * a * v = d`, diagonal, divisibility chain.
pub fn snf(a: &RingMatrix) -> Result<NormalFormResult> {
    match &a.ring {
        Ring::Integers | Ring::IntegersMod(_) | Ring::PrimeField(_) => {
            let r = euclid::snf(&IntOps, &to_int_mat(a));
            Ok(NormalFormResult {
                d: from_int_mat(&a.ring, &r.d),
                u: from_int_mat(&a.ring, &r.u),
                v: from_int_mat(&a.ring, &r.v),
                pivots: diag_pivots(&r.d, |x| x.eq(&BigInt::from(0))),
                det_u: bigint_to_elem(&a.ring, &r.det_u),
                det_v: bigint_to_elem(&a.ring, &r.det_v),
            })
        }
        Ring::PolyOverPrimeField(p) | Ring::PolyQuotient { p, .. } => {
            let ops = PolyDomOps { p: *p };
            let r = euclid::snf(&ops, &to_poly_mat(a));
            Ok(NormalFormResult {
                d: from_poly_mat(&a.ring, &r.d),
                u: from_poly_mat(&a.ring, &r.u),
                v: from_poly_mat(&a.ring, &r.v),
                pivots: diag_pivots(&r.d, |x| x.is_empty()),
                det_u: poly_to_elem(&a.ring, &r.det_u),
                det_v: poly_to_elem(&a.ring, &r.det_v),
            })
        }
        _ => Err(unsupported("snf", &a.ring)),
    }
}

fn diag_pivots<El: Clone + PartialEq + std::fmt::Debug>(
    d: &EMat<El>,
    is_zero: impl Fn(&El) -> bool,
) -> Vec<(usize, usize)> {
    (0..d.rows.min(d.cols))
        .take_while(|&i| !is_zero(d.get(i, i)))
        .map(|i| (i, i))
        .collect()
}

// ---- linear solving ----

/// Solve `a * x = b` exactly; returns a deterministic canonical particular
/// solution plus kernel generators, or `None` when no solution exists.
pub fn solve_linear(a: &RingMatrix, b: &RingMatrix) -> Result<Option<LinearSolution>> {
    if a.rows != b.rows {
        return Err(Error::Dimension(format!(
            "coefficient matrix has {} rows but right-hand side has {}",
            a.rows, b.rows
        )));
    }
    assert_eq!(
        a.ring, b.ring,
        "ring mismatch between system and right-hand side"
    );
    match &a.ring {
        Ring::Integers => {
            let res = euclid::solve(&IntOps, &to_int_mat(a), &to_int_mat(b));
            Ok(res.map(|s| LinearSolution {
                particular: from_int_mat(&a.ring, &s.particular),
                kernel: from_int_mat(&a.ring, &s.kernel),
            }))
        }
        Ring::PolyOverPrimeField(p) => {
            let ops = PolyDomOps { p: *p };
            let res = euclid::solve(&ops, &to_poly_mat(a), &to_poly_mat(b));
            Ok(res.map(|s| LinearSolution {
                particular: from_poly_mat(&a.ring, &s.particular),
                kernel: from_poly_mat(&a.ring, &s.kernel),
            }))
        }
        Ring::IntegersMod(n) | Ring::PrimeField(n) => {
            solve_via_modulus_lift(a, b, &BigInt::from(*n))
        }
        Ring::PolyQuotient { p, modulus } => solve_via_poly_lift(a, b, *p, modulus),
        Ring::Table(_) => solve_table(a, b),
        Ring::Product(_) => solve_product(a, b),
    }
}

/// Kernel generators of `a` (columns) — shorthand for a homogeneous solve.
pub fn kernel(a: &RingMatrix) -> Result<RingMatrix> {
    let zero = RingMatrix::zero(a.ring.clone(), a.rows, 1);
    let sol = solve_linear(a, &zero)?.expect("homogeneous systems are always solvable");
    Ok(sol.kernel)
}

fn solve_via_modulus_lift(
    a: &RingMatrix,
    b: &RingMatrix,
    n: &BigInt,
) -> Result<Option<LinearSolution>> {
    let al = to_int_mat(a);
    let bl = to_int_mat(b);
    // [A | n*I] (x; w) = b over Z.
    let mut ext = EMat::fill(a.rows, a.cols + a.rows, BigInt::from(0));
    for i in 0..a.rows {
        for j in 0..a.cols {
            ext.set(i, j, al.get(i, j).clone());
        }
        ext.set(i, a.cols + i, n.clone());
    }
    let Some(sol) = euclid::solve(&IntOps, &ext, &bl) else {
        return Ok(None);
    };
    let particular = project_rows(&sol.particular, a.cols);
    let kernel = project_rows(&sol.kernel, a.cols);
    Ok(Some(LinearSolution {
        particular: from_int_mat(&a.ring, &particular),
        kernel: from_int_mat(
            &a.ring,
            &dedup_nonzero_cols(
                &kernel,
                |x| x.mod_floor(n) == BigInt::from(0),
                |x| x.mod_floor(n),
            ),
        ),
    }))
}

fn solve_via_poly_lift(
    a: &RingMatrix,
    b: &RingMatrix,
    p: u64,
    modulus: &FpPoly,
) -> Result<Option<LinearSolution>> {
    let ops = PolyDomOps { p };
    let al = to_poly_mat(a);
    let bl = to_poly_mat(b);
    let mut ext = EMat::fill(a.rows, a.cols + a.rows, vec![]);
    for i in 0..a.rows {
        for j in 0..a.cols {
            ext.set(i, j, al.get(i, j).clone());
        }
        ext.set(i, a.cols + i, modulus.clone());
    }
    let Some(sol) = euclid::solve(&ops, &ext, &bl) else {
        return Ok(None);
    };
    let particular = project_rows(&sol.particular, a.cols);
    let kernel = project_rows(&sol.kernel, a.cols);
    let red = |c: &FpPoly| crate::poly::rem(c, modulus, p);
    Ok(Some(LinearSolution {
        particular: from_poly_mat(&a.ring, &particular),
        kernel: from_poly_mat(
            &a.ring,
            &dedup_nonzero_cols(&kernel, |c| red(c).is_empty(), red),
        ),
    }))
}

fn project_rows<El: Clone + PartialEq + std::fmt::Debug>(m: &EMat<El>, keep: usize) -> EMat<El> {
    let mut data = Vec::with_capacity(keep * m.cols);
    for i in 0..keep {
        for j in 0..m.cols {
            data.push(m.get(i, j).clone());
        }
    }
    EMat::new(keep, m.cols, data)
}

/// Reduce kernel columns, drop those that become zero, dedupe the rest.
fn dedup_nonzero_cols<El: Clone + PartialEq + std::fmt::Debug>(
    m: &EMat<El>,
    is_zero_red: impl Fn(&El) -> bool,
    reduce: impl Fn(&El) -> El,
) -> EMat<El> {
    let mut cols: Vec<Vec<El>> = Vec::new();
    for j in 0..m.cols {
        let col: Vec<El> = (0..m.rows).map(|i| reduce(m.get(i, j))).collect();
        if col.iter().all(|e| is_zero_red(e)) {
            continue;
        }
        if !cols.contains(&col) {
            cols.push(col);
        }
    }
    let data: Vec<El> = (0..m.rows)
        .flat_map(|i| cols.iter().map(move |c| c[i].clone()))
        .collect();
    EMat::new(m.rows, cols.len(), data)
}

fn solve_table(a: &RingMatrix, b: &RingMatrix) -> Result<Option<LinearSolution>> {
    let (table, base) = match &a.ring {
        Ring::Table(t) => (t.clone(), Ring::IntegersMod(t.base_mod)),
        _ => unreachable!(),
    };
    let d = table.dim;
    // Flatten: each table-ring unknown becomes d base unknowns; multiplication
    // by an entry becomes its d x d structure-constant matrix.
    let flat_a = RingMatrix::from_fn(base.clone(), a.rows * d, a.cols * d, |fi, fj| {
        let (i, t) = (fi / d, fi % d);
        let (j, u) = (fj / d, fj % d);
        let m = a.ring.table_mult_matrix(a.get(i, j));
        RingElement::Res(m[t][u])
    });
    let flat_b = RingMatrix::from_fn(base.clone(), b.rows * d, b.cols, |fi, j| {
        let (i, t) = (fi / d, fi % d);
        match b.get(i, j) {
            RingElement::Vector(v) => RingElement::Res(v[t]),
            other => panic!("non-vector entry {other:?} in table-ring system"),
        }
    });
    let Some(sol) = solve_linear(&flat_a, &flat_b)? else {
        return Ok(None);
    };
    let unflatten = |m: &RingMatrix| -> RingMatrix {
        RingMatrix::from_fn(a.ring.clone(), m.rows / d, m.cols, |i, j| {
            let coords: Vec<u64> = (0..d)
                .map(|t| match m.get(i * d + t, j) {
                    RingElement::Res(v) => *v,
                    _ => unreachable!(),
                })
                .collect();
            RingElement::Vector(coords)
        })
    };
    Ok(Some(LinearSolution {
        particular: unflatten(&sol.particular),
        kernel: unflatten(&sol.kernel),
    }))
}

fn solve_product(a: &RingMatrix, b: &RingMatrix) -> Result<Option<LinearSolution>> {
    let factors = match &a.ring {
        Ring::Product(fs) => fs.clone(),
        _ => unreachable!(),
    };
    let component = |m: &RingMatrix, idx: usize, ring: &Ring| -> RingMatrix {
        RingMatrix::from_fn(ring.clone(), m.rows, m.cols, |i, j| match m.get(i, j) {
            RingElement::Tuple(xs) => xs[idx].clone(),
            other => panic!("non-tuple entry {other:?} in product-ring system"),
        })
    };
    let mut parts = Vec::with_capacity(factors.len());
    for (idx, fr) in factors.iter().enumerate() {
        let Some(sol) = solve_linear(&component(a, idx, fr), &component(b, idx, fr))? else {
            return Ok(None);
        };
        parts.push(sol);
    }
    let particular = RingMatrix::from_fn(a.ring.clone(), a.cols, b.cols, |i, j| {
        RingElement::Tuple(
            parts
                .iter()
                .map(|s| s.particular.get(i, j).clone())
                .collect(),
        )
    });
    // Embed each factor's kernel generators with zeros elsewhere.
    let mut kernel_cols: Vec<Vec<RingElement>> = Vec::new();
    for (idx, (sol, _fr)) in parts.iter().zip(&factors).enumerate() {
        for kj in 0..sol.kernel.cols {
            let col: Vec<RingElement> = (0..a.cols)
                .map(|i| {
                    RingElement::Tuple(
                        factors
                            .iter()
                            .enumerate()
                            .map(|(fi, f)| {
                                if fi == idx {
                                    sol.kernel.get(i, kj).clone()
                                } else {
                                    f.zero()
                                }
                            })
                            .collect(),
                    )
                })
                .collect();
            kernel_cols.push(col);
        }
    }
    let kernel = RingMatrix::from_cols(a.ring.clone(), a.cols, &kernel_cols);
    Ok(Some(LinearSolution { particular, kernel }))
}

/// Kernel of a matrix over Z/n given as plain residue rows; used for
/// structure-constant computations inside ring construction.
pub(crate) fn kernel_mod_n(rows: &[Vec<u64>], n: u64) -> Vec<Vec<u64>> {
    let ring = Ring::IntegersMod(n);
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let a = RingMatrix::from_fn(ring, nrows, ncols, |i, j| RingElement::Res(rows[i][j] % n));
    let k = kernel(&a).expect("Z/n kernels are always computable");
    (0..k.cols)
        .map(|j| {
            (0..k.rows)
                .map(|i| match k.get(i, j) {
                    RingElement::Res(v) => *v,
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect()
}

/// Decide membership of every column of `b` in the column span of `a`.
pub fn in_column_span(a: &RingMatrix, b: &RingMatrix) -> Result<bool> {
    Ok(solve_linear(a, b)?.is_some())
}

/// Canonical representative of each column of `v` modulo the column span of
/// `c`, computed by reducing against the Hermite form of the (lifted) span.
/// Over table and product rings the input is returned unchanged; coordinates
/// there are already canonical ring elements.
pub fn reduce_mod_span(c: &RingMatrix, v: &RingMatrix) -> Result<RingMatrix> {
    assert_eq!(c.rows, v.rows, "span and vectors need matching heights");
    match &c.ring {
        Ring::Integers => {
            let mut x = to_int_mat(v);
            euclid::reduce_mod_kernel(&IntOps, &mut x, &to_int_mat(c));
            Ok(from_int_mat(&c.ring, &x))
        }
        Ring::PolyOverPrimeField(p) => {
            let ops = PolyDomOps { p: *p };
            let mut x = to_poly_mat(v);
            euclid::reduce_mod_kernel(&ops, &mut x, &to_poly_mat(c));
            Ok(from_poly_mat(&c.ring, &x))
        }
        Ring::IntegersMod(n) | Ring::PrimeField(n) => {
            let rows = c.rows;
            let mut ext = EMat::fill(rows, c.cols + rows, BigInt::from(0));
            for i in 0..rows {
                for j in 0..c.cols {
                    ext.set(i, j, elem_to_bigint(c.get(i, j)));
                }
                ext.set(i, c.cols + i, BigInt::from(*n));
            }
            let mut x = to_int_mat(v);
            euclid::reduce_mod_kernel(&IntOps, &mut x, &ext);
            Ok(from_int_mat(&c.ring, &x))
        }
        Ring::PolyQuotient { p, modulus } => {
            let ops = PolyDomOps { p: *p };
            let rows = c.rows;
            let mut ext = EMat::fill(rows, c.cols + rows, Vec::new());
            for i in 0..rows {
                for j in 0..c.cols {
                    ext.set(i, j, elem_to_poly(c.get(i, j)));
                }
                ext.set(i, c.cols + i, modulus.clone());
            }
            let mut x = to_poly_mat(v);
            euclid::reduce_mod_kernel(&ops, &mut x, &ext);
            Ok(from_poly_mat(&c.ring, &x))
        }
        Ring::Table(_) | Ring::Product(_) => Ok(v.clone()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hnf_gcd_example() {
        let a = RingMatrix::from_ints(Ring::Integers, &[&[6, 4]]);
        let r = hnf(&a).unwrap();
        assert_eq!(r.d, RingMatrix::from_ints(Ring::Integers, &[&[2, 0]]));
        assert_eq!(a.mul(&r.v), r.d);
        assert!(Ring::Integers.is_unit(&r.det_v));
    }

    #[test]
    fn hnf_zero_matrix() {
        let a = RingMatrix::zero(Ring::Integers, 2, 2);
        let r = hnf(&a).unwrap();
        assert!(r.d.is_zero());
        assert_eq!(r.v, RingMatrix::identity(Ring::Integers, 2));
    }

    #[test]
    fn snf_diag_2_3_gives_1_6() {
        let a = RingMatrix::from_ints(Ring::Integers, &[&[2, 0], &[0, 3]]);
        let r = snf(&a).unwrap();
        assert_eq!(
            r.d,
            RingMatrix::from_ints(Ring::Integers, &[&[1, 0], &[0, 6]])
        );
        assert_eq!(r.u.mul(&a).mul(&r.v), r.d);
    }

    #[test]
    fn solve_over_z6_matches_enumeration() {
        // 2x = 4 mod 6: solutions {2, 5}.
        let ring = Ring::IntegersMod(6);
        let a = RingMatrix::from_ints(ring.clone(), &[&[2]]);
        let b = RingMatrix::from_ints(ring.clone(), &[&[4]]);
        let sol = solve_linear(&a, &b).unwrap().unwrap();
        assert_eq!(sol.particular, RingMatrix::from_ints(ring.clone(), &[&[2]]));
        assert_eq!(sol.kernel, RingMatrix::from_ints(ring.clone(), &[&[3]]));
        let mut found = Vec::new();
        for x in 0u64..6 {
            if (2 * x) % 6 == 4 {
                found.push(x);
            }
        }
        assert_eq!(found, vec![2, 5]);
    }

    #[test]
    fn solve_over_table_ring() {
        // x * c = 0 over GF(2)[x,y]/(x^2,xy,y^2): c in Ann(x) = {0, x, y, x+y}.
        let ring = crate::ring::parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap();
        let x = RingElement::Vector(vec![0, 1, 0]);
        let a = RingMatrix::new(ring.clone(), 1, 1, vec![x]);
        let b = RingMatrix::zero(ring.clone(), 1, 1);
        let sol = solve_linear(&a, &b).unwrap().unwrap();
        // Kernel generators must span the 4-element annihilator.
        let mut span = std::collections::BTreeSet::new();
        span.insert(ring.zero());
        let elems = ring.enumerate().unwrap();
        let gens: Vec<RingElement> = (0..sol.kernel.cols)
            .map(|j| sol.kernel.get(0, j).clone())
            .collect();
        let mut frontier: Vec<RingElement> = vec![ring.zero()];
        while let Some(v) = frontier.pop() {
            for g in &gens {
                for s in &elems {
                    let w = ring.add(&v, &ring.mul(g, s));
                    if span.insert(w.clone()) {
                        frontier.push(w);
                    }
                }
            }
        }
        assert_eq!(span.len(), 4);
    }

    #[test]
    fn solve_over_product_componentwise() {
        let ring = crate::ring::parse_ring("Z/4 x GF(3)").unwrap();
        // (2,1) * c = (2, 2)
        let two_one = RingElement::Tuple(vec![RingElement::Res(2), RingElement::Res(1)]);
        let rhs = RingElement::Tuple(vec![RingElement::Res(2), RingElement::Res(2)]);
        let a = RingMatrix::new(ring.clone(), 1, 1, vec![two_one.clone()]);
        let b = RingMatrix::new(ring.clone(), 1, 1, vec![rhs.clone()]);
        let sol = solve_linear(&a, &b).unwrap().unwrap();
        let x = sol.particular.get(0, 0);
        assert_eq!(ring.mul(&two_one, x), rhs);
    }

    #[test]
    fn solve_infeasible_over_z() {
        let a = RingMatrix::from_ints(Ring::Integers, &[&[2]]);
        let b = RingMatrix::from_ints(Ring::Integers, &[&[3]]);
        assert!(solve_linear(&a, &b).unwrap().is_none());
    }
}
