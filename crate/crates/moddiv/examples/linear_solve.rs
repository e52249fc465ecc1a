//! Exact inhomogeneous solving with kernel generators, across ring classes:
//! the same call works over Z, Z/n, table rings and products.
//!
//! Run with `cargo run --example linear_solve`.

use moddiv::linalg::solve_linear;
use moddiv::ring::{parse_ring, Ring, RingElement};
use moddiv::RingMatrix;

fn main() -> moddiv::Result<()> {
    // 2x = 6 over Z: unique solution.
    let z = Ring::Integers;
    let a = RingMatrix::from_ints(z.clone(), &[&[2]]);
    let b = RingMatrix::from_ints(z.clone(), &[&[6]]);
    let sol = solve_linear(&a, &b)?.expect("solvable");
    println!("2x = 6 over Z: x = {}", sol.particular);

    // 2x = 3 over Z: no solution, decided exactly.
    let b = RingMatrix::from_ints(z.clone(), &[&[3]]);
    println!(
        "2x = 3 over Z solvable? {}",
        solve_linear(&a, &b)?.is_some()
    );

    // 2x = 4 over Z/6: particular solution 2, kernel generated by 3, so the
    // full solution set is {2, 5}.
    let z6 = parse_ring("Z/6")?;
    let a = RingMatrix::from_ints(z6.clone(), &[&[2]]);
    let b = RingMatrix::from_ints(z6.clone(), &[&[4]]);
    let sol = solve_linear(&a, &b)?.expect("solvable");
    println!(
        "\n2x = 4 over Z/6: x0 = {} kernel = {}",
        sol.particular, sol.kernel
    );

    // Table-ring systems compile down to the base ring through the structure
    // constants: solve x * c = 0 in the 8-element ring.
    let table = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)")?;
    let x = RingElement::Vector(vec![0, 1, 0]);
    let a = RingMatrix::new(table.clone(), 1, 1, vec![x]);
    let b = RingMatrix::zero(table.clone(), 1, 1);
    let sol = solve_linear(&a, &b)?.expect("homogeneous");
    println!(
        "x*c = 0 over {} has {} kernel generators",
        table.descriptor(),
        sol.kernel.cols
    );
    Ok(())
}
