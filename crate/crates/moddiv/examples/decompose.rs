//! Module classification: invariant factors via the Smith form over Z, and
//! the certified cyclic splitting over a finite local principal ring.
//!
//! Run with `cargo run --example decompose`.

use moddiv::decomposition::{invariant_factors, modules_isomorphic, split_cyclic};
use moddiv::module::FPModule;
use moddiv::ring::{parse_ring, Ring};
use moddiv::{Budget, RingMatrix};

fn main() -> moddiv::Result<()> {
    let z = Ring::Integers;

    // coker diag(2, 3) over Z is cyclic of order 6.
    let m = FPModule::new(
        z.clone(),
        RingMatrix::from_ints(z.clone(), &[&[2, 0], &[0, 3]]),
    )?;
    let inv = invariant_factors(&m)?;
    println!(
        "invariant factors of coker diag(2,3): {:?}, free rank {}",
        inv.factors
            .iter()
            .map(|f| z.display_elem(f))
            .collect::<Vec<_>>(),
        inv.free_rank
    );
    let z6 = FPModule::cyclic(z.clone(), z.from_int(6));
    println!(
        "coker diag(2,3) isomorphic to Z/6? {}",
        modules_isomorphic(&m, &z6, &Budget::default())?
    );

    // Over Z/8, split Z/2 ⊕ Z/8 into its cyclic part and free remainder,
    // with an explicit isomorphism certificate.
    let ring = parse_ring("Z/8")?;
    let m = FPModule::new(
        ring.clone(),
        RingMatrix::from_ints(ring.clone(), &[&[2, 0], &[0, 8]]),
    )?;
    let dec = split_cyclic(&m, &ring.from_int(2), 3, &Budget::default())?;
    println!("\nZ/2 ⊕ Z/8 over Z/8:");
    for f in &dec.factors {
        println!(
            "  cyclic factor R/p^{} with multiplicity {}",
            f.exponent, f.multiplicity
        );
    }
    println!("  free remainder of rank {}", dec.free_rank);
    println!("  freeness ladder holds: {}", dec.freeness.holds());
    println!(
        "  certificate: forward ∘ backward = id? {}",
        dec.forward
            .compose_after(&dec.backward)?
            .equals(&moddiv::module::ModuleHom::identity(&m))?
    );
    Ok(())
}
