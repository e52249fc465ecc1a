//! The core question: when does a map that looks divisible by r actually
//! factor as r times another map?
//!
//! Over the integers the two notions coincide. Over the 8-element ring
//! GF(2)[x,y]/(x^2,xy,y^2) they split apart, and the oracle certifies the
//! failure by exhausting the whole hom module.
//!
//! Run with `cargo run --example divisibility_check`.

use moddiv::divisibility::{divide, is_seemingly_divisible, oracle_divide, seeming_vs_divisible};
use moddiv::module::{FPModule, ModuleHom};
use moddiv::ring::{parse_ring, Ring, RingElement};
use moddiv::{Budget, RingMatrix};

fn main() -> moddiv::Result<()> {
    // Multiplication by 6 on Z divides by 3, with divisor multiplication by 2.
    let z = Ring::Integers;
    let free = FPModule::free(z.clone(), 1);
    let times6 = ModuleHom::new(
        free.clone(),
        free.clone(),
        RingMatrix::from_ints(z.clone(), &[&[6]]),
    )?;
    let three = z.from_int(3);
    let report = is_seemingly_divisible(&times6, &three)?;
    println!(
        "multiplication by 6, r = 3: seemingly divisible = {}",
        report.verdict()
    );
    if let Some(g) = divide(&times6, &three)?.divisor() {
        println!(
            "divisor found: 1 |-> {}",
            z.display_elem(g.matrix.get(0, 0))
        );
    }

    // 1 |-> 2 from Z/2 to Z/4 fails the torsion clause for r = 2: the
    // report carries a witness.
    let z2 = FPModule::cyclic(z.clone(), z.from_int(2));
    let z4 = FPModule::cyclic(z.clone(), z.from_int(4));
    let f = ModuleHom::new(z2, z4, RingMatrix::from_ints(z.clone(), &[&[2]]))?;
    let report = is_seemingly_divisible(&f, &z.from_int(2))?;
    println!(
        "\nZ/2 -> Z/4, 1 |-> 2, r = 2: kills torsion = {}, witness = {:?}",
        report.kills_torsion, report.torsion_witness
    );

    // The counterexample ring: mult-by-x from R/(y) to R seems divisible by
    // x but is not, and the oracle proves it by scanning all 4 homs.
    let ring = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)")?;
    let x = RingElement::Vector(vec![0, 1, 0]);
    let y = RingElement::Vector(vec![0, 0, 1]);
    let src = FPModule::cyclic(ring.clone(), y);
    let tgt = FPModule::free(ring.clone(), 1);
    let f = ModuleHom::new(
        src,
        tgt,
        RingMatrix::new(ring.clone(), 1, 1, vec![x.clone()]),
    )?;
    println!("\nover {}:", ring.descriptor());
    match seeming_vs_divisible(&f, &x)? {
        moddiv::divisibility::Comparison::Counterexample { .. } => {
            println!("  mult-by-x on R/(y): seemingly divisible by x, NOT divisible")
        }
        moddiv::divisibility::Comparison::Agree { .. } => println!("  verdicts agree"),
    }
    match oracle_divide(&f, &x, &Budget::default())? {
        moddiv::divisibility::DivisionCertificate::NotDivisible { reason } => {
            println!("  oracle: {reason:?}")
        }
        _ => unreachable!(),
    }
    Ok(())
}
