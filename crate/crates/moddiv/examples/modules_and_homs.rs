//! Finitely presented modules: construction, element identities, torsion,
//! hom validation and exhaustive hom enumeration over finite rings.
//!
//! Run with `cargo run --example modules_and_homs`.

use moddiv::module::{enumerate_homs, FPModule, ModuleHom};
use moddiv::ring::{parse_ring, Ring};
use moddiv::{Budget, RingMatrix};

fn main() -> moddiv::Result<()> {
    let z = Ring::Integers;

    // Z/4 as the cokernel of [4]; the class of 4 is zero, the class of 2 is not.
    let z4 = FPModule::cyclic(z.clone(), z.from_int(4));
    println!("in Z/4: [4] = 0? {}", z4.is_zero_elem(&[z.from_int(4)])?);
    println!("in Z/4: [2] = 0? {}", z4.is_zero_elem(&[z.from_int(2)])?);

    // 2-torsion of Z/4 is {0, 2}.
    let torsion = z4.torsion_gens(&z.from_int(2))?;
    println!("generators of (Z/4)[2]: {torsion:?}");

    // Well-definedness: 1 |-> 1 does not define a map Z/2 -> Z/4, 1 |-> 2 does.
    let z2 = FPModule::cyclic(z.clone(), z.from_int(2));
    let bad = ModuleHom::new(
        z2.clone(),
        z4.clone(),
        RingMatrix::from_ints(z.clone(), &[&[1]]),
    )?;
    let good = ModuleHom::new(
        z2.clone(),
        z4.clone(),
        RingMatrix::from_ints(z.clone(), &[&[2]]),
    )?;
    println!("\n1 |-> 1 well defined? {}", bad.is_well_defined()?);
    println!("1 |-> 2 well defined? {}", good.is_well_defined()?);

    // Over a finite ring the whole hom module can be enumerated, each hom
    // exactly once in deterministic order.
    let budget = Budget::default();
    let ring = parse_ring("Z/4")?;
    let src = FPModule::cyclic(ring.clone(), ring.from_int(2));
    let tgt = FPModule::free(ring.clone(), 1);
    let homs = enumerate_homs(&src, &tgt, &budget)?;
    println!("\n|Hom(Z/2, Z/4)| over Z/4 = {}", homs.len());
    for h in &homs {
        println!("  1 |-> {}", ring.display_elem(h.matrix.get(0, 0)));
    }

    // Direct sums multiply cardinalities.
    let sum = FPModule::direct_sum(&[src.clone(), tgt.clone()])?;
    println!(
        "\n|Z/2 ⊕ Z/4| over Z/4 = {}",
        sum.element_table(&budget)?.len()
    );
    Ok(())
}
