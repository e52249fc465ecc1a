//! Property tests for the structural invariants: normal-form reconstruction,
//! transform unimodularity, divisibility chains, division soundness, and the
//! containment of divisible maps among seemingly divisible ones.

use moddiv::divisibility::{divide, is_seemingly_divisible, DivisionCertificate};
use moddiv::linalg::{hnf, snf, solve_linear};
use moddiv::module::{FPModule, ModuleHom};
use moddiv::ring::{Ring, RingElement};
use moddiv::suite::IntMatrix;
use moddiv::RingMatrix;
use proptest::prelude::*;

fn z_matrix(max_dim: usize, max_entry: i64) -> impl Strategy<Value = RingMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(-max_entry..=max_entry, r * c).prop_map(move |vals| {
            let ring = Ring::Integers;
            let mut it = vals.into_iter();
            RingMatrix::from_fn(ring.clone(), r, c, |_, _| ring.from_int(it.next().unwrap()))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_reconstructs_with_unimodular_transforms(a in z_matrix(5, 1000)) {
        let nf = snf(&a).unwrap();
        prop_assert_eq!(nf.u.mul(&a).mul(&nf.v), nf.d.clone());
        prop_assert_eq!(IntMatrix::from_ring_matrix(&nf.u).det_bareiss().magnitude().to_string(), "1");
        prop_assert_eq!(IntMatrix::from_ring_matrix(&nf.v).det_bareiss().magnitude().to_string(), "1");
        // Diagonal with divisibility chain.
        let ring = Ring::Integers;
        for i in 0..nf.d.rows {
            for j in 0..nf.d.cols {
                if i != j {
                    prop_assert!(ring.is_zero(nf.d.get(i, j)));
                }
            }
        }
        for i in 1..nf.d.rows.min(nf.d.cols) {
            let prev = nf.d.get(i - 1, i - 1);
            let cur = nf.d.get(i, i);
            if !ring.is_zero(prev) {
                prop_assert!(ring.try_divide(cur, prev).is_some());
            } else {
                prop_assert!(ring.is_zero(cur));
            }
        }
    }

    #[test]
    fn hnf_reconstructs_and_is_echelon(a in z_matrix(5, 1000)) {
        let nf = hnf(&a).unwrap();
        prop_assert_eq!(a.mul(&nf.v), nf.d.clone());
        prop_assert_eq!(IntMatrix::from_ring_matrix(&nf.v).det_bareiss().magnitude().to_string(), "1");
        // Pivot rows strictly increase and pivots sit on consecutive columns.
        for (k, (row, col)) in nf.pivots.iter().enumerate() {
            prop_assert_eq!(*col, k);
            if k > 0 {
                prop_assert!(nf.pivots[k - 1].0 < *row);
            }
            // Zeros above the pivot in its column.
            for i in 0..*row {
                prop_assert!(Ring::Integers.is_zero(nf.d.get(i, *col)));
            }
        }
    }

    #[test]
    fn solutions_actually_solve(a in z_matrix(4, 50), rhs in proptest::collection::vec(-50i64..=50, 4)) {
        let ring = Ring::Integers;
        let b = RingMatrix::from_fn(ring.clone(), a.rows, 1, |i, _| ring.from_int(rhs[i]));
        if let Some(sol) = solve_linear(&a, &b).unwrap() {
            prop_assert_eq!(a.mul(&sol.particular), b);
            let kernel_image = a.mul(&sol.kernel);
            prop_assert!(kernel_image.is_zero());
        }
    }

    #[test]
    fn try_divide_is_sound_mod_n(n in 2u64..60, a in 0u64..60, b in 0u64..60) {
        let ring = Ring::IntegersMod(n);
        let a = RingElement::Res(a % n);
        let b = RingElement::Res(b % n);
        match ring.try_divide(&a, &b) {
            Some(c) => prop_assert_eq!(ring.mul(&b, &c), a),
            None => {
                for c in ring.enumerate().unwrap() {
                    prop_assert!(ring.mul(&b, &c) != a);
                }
            }
        }
    }

    #[test]
    fn divisible_implies_seemingly_divisible_over_z6(
        rel_s in 0i64..6, rel_t in 0i64..6, entry in 0i64..6, r in 0i64..6,
    ) {
        let ring = Ring::IntegersMod(6);
        let source = FPModule::cyclic(ring.clone(), ring.from_int(rel_s));
        let target = FPModule::cyclic(ring.clone(), ring.from_int(rel_t));
        let f = ModuleHom::new(
            source,
            target,
            RingMatrix::from_fn(ring.clone(), 1, 1, |_, _| ring.from_int(entry)),
        )
        .unwrap();
        if !f.is_well_defined().unwrap() {
            return Ok(());
        }
        let r = ring.from_int(r);
        if let DivisionCertificate::Divisible { divisor } = divide(&f, &r).unwrap() {
            prop_assert!(divisor.scale(&r).equals(&f).unwrap());
            prop_assert!(is_seemingly_divisible(&f, &r).unwrap().verdict());
        }
    }
}
