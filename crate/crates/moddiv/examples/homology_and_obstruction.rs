//! The homological view: induced maps on the two-term complexes, the
//! null-homotopy criterion, and the Ext^1 obstruction class.
//!
//! Run with `cargo run --example homology_and_obstruction`.

use moddiv::homology::{homology_maps, null_homotopy, obstruction_class, ExtClass, TwoTermComplex};
use moddiv::module::{FPModule, ModuleHom};
use moddiv::ring::Ring;
use moddiv::RingMatrix;

fn main() -> moddiv::Result<()> {
    let z = Ring::Integers;

    // The complex [Z/4 --2--> Z/4] has H0 = Z/2 and H1 = {0, 2}.
    let z4 = FPModule::cyclic(z.clone(), z.from_int(4));
    let complex = TwoTermComplex::new(z4.clone(), z.from_int(2));
    let (h1, embed) = complex.h1()?;
    println!(
        "H1 of [Z/4 -2-> Z/4]: {} generator(s), embedded as {}",
        h1.gens, embed
    );

    // A map that misses the torsion clause has nonzero H1.
    let z2 = FPModule::cyclic(z.clone(), z.from_int(2));
    let f = ModuleHom::new(z2, z4, RingMatrix::from_ints(z.clone(), &[&[2]]))?;
    let maps = homology_maps(&f, &z.from_int(2))?;
    println!(
        "Z/2 -> Z/4, 1 |-> 2 at r = 2: H0 zero = {}, H1 zero = {}",
        maps.h0_zero()?,
        maps.h1_zero()?
    );

    // Null-homotopy is the same linear problem as division, stated on the
    // cones; for multiplication by 4 at r = 4 the homotopy is the identity.
    let free = FPModule::free(z.clone(), 1);
    let times4 = ModuleHom::new(
        free.clone(),
        free.clone(),
        RingMatrix::from_ints(z.clone(), &[&[4]]),
    )?;
    let h = null_homotopy(&times4, &z.from_int(4))?.expect("homotopy exists");
    println!(
        "\nmultiplication by 4, r = 4: homotopy h with f = 4h sends 1 to {}",
        z.display_elem(h.matrix.get(0, 0))
    );

    // The full obstruction report: here R/4 = Z/4 is not even a field, yet
    // the class vanishes and the divisor exists.
    let report = obstruction_class(&times4, &z.from_int(4))?;
    println!(
        "obstruction report: h0Zero = {}, h1Zero = {}, class = {}",
        report.h0_zero,
        report.h1_zero,
        match report.ext_class {
            ExtClass::Zero => "zero".to_string(),
            ExtClass::Nonzero { .. } => "nonzero".to_string(),
            ExtClass::NotComputed { reason } => format!("not computed ({reason})"),
        }
    );
    Ok(())
}
