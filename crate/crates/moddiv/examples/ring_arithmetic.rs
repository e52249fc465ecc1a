//! Parse ring descriptors and do exact element arithmetic: units, zero
//! divisors, annihilators, element division.
//!
//! Run with `cargo run --example ring_arithmetic`.

use moddiv::ring::{parse_ring, RingElement};

fn main() -> moddiv::Result<()> {
    // The descriptor grammar covers Z, Z/n, GF(p), GF(p)[x], quotients, and
    // products; quotients by monomial ideals compile to table rings.
    let z6 = parse_ring("Z/6")?;
    let a = z6.from_int(4);
    let b = z6.from_int(5);
    println!("in Z/6: 4 * 5 = {}", z6.display_elem(&z6.mul(&a, &b)));
    println!("is 5 a unit mod 6? {}", z6.is_unit(&b));
    println!(
        "Ann(2) in Z/6 is generated by {:?}",
        z6.annihilator_gens(&z6.from_int(2))
            .iter()
            .map(|g| z6.display_elem(g))
            .collect::<Vec<_>>()
    );
    // try_divide picks the smallest witness in the canonical element order.
    let c = z6.try_divide(&z6.from_int(2), &z6.from_int(4));
    println!(
        "smallest c with 4*c = 2 mod 6: {}",
        c.map(|c| z6.display_elem(&c)).unwrap_or_default()
    );

    // An 8-element local ring where x kills itself.
    let table = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)")?;
    let x = RingElement::Vector(vec![0, 1, 0]);
    println!(
        "\nin {}: x * x = {}, zero divisor: {}",
        table.descriptor(),
        table.display_elem(&table.mul(&x, &x)),
        table.is_zero_divisor(&x)
    );
    println!(
        "Ann(x) is spanned by {:?}",
        table
            .annihilator_gens(&x)
            .iter()
            .map(|g| table.display_elem(g))
            .collect::<Vec<_>>()
    );

    // Products work componentwise and enumerate deterministically.
    let prod = parse_ring("Z/4 x GF(3)")?;
    println!(
        "\n{} has {} elements; the first five: {:?}",
        prod.descriptor(),
        prod.size().unwrap(),
        prod.enumerate()?
            .iter()
            .take(5)
            .map(|e| prod.display_elem(e))
            .collect::<Vec<_>>()
    );
    Ok(())
}
