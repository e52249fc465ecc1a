//! Hermite and Smith normal forms with tracked transforms.
//!
//! Run with `cargo run --example normal_forms`.

use moddiv::linalg::{hnf, snf};
use moddiv::ring::Ring;
use moddiv::RingMatrix;

fn main() -> moddiv::Result<()> {
    let z = Ring::Integers;

    let a = RingMatrix::from_ints(z.clone(), &[&[2, 4], &[6, 8]]);
    println!("A = {a}");
    let nf = snf(&a)?;
    println!("Smith form D = {}", nf.d);
    println!(
        "U*A*V = D reconstructs: {}",
        nf.u.mul(&a).mul(&nf.v) == nf.d
    );
    println!(
        "det U = {}, det V = {} (units)",
        z.display_elem(&nf.det_u),
        z.display_elem(&nf.det_v)
    );

    // Hermite form works column-style: A*V = H, pivots canonical.
    let b = RingMatrix::from_ints(z.clone(), &[&[6, 4]]);
    let h = hnf(&b)?;
    println!("\nB = {b}");
    println!("Hermite form H = {}", h.d);
    println!("pivots at {:?}", h.pivots);

    // The same engine runs over GF(p)[x].
    let f2x = Ring::PolyOverPrimeField(2);
    let x = moddiv::RingElement::Poly(vec![0, 1]);
    let x2px = moddiv::RingElement::Poly(vec![0, 1, 1]);
    let c = RingMatrix::new(f2x.clone(), 1, 2, vec![x, x2px]);
    let h = hnf(&c)?;
    println!("\nover GF(2)[x]: [x, x^2+x] has Hermite form {}", h.d);
    Ok(())
}
