//! Exact decision procedures for divisibility of homomorphisms between
//! finitely presented modules over computable commutative rings.
//!
//! The crate decides, with machine-checkable certificates, when a module
//! homomorphism `f: M -> N` that *looks* divisible by a ring element `r`
//! (it kills the r-torsion of `M` and lands in `r*N`) actually factors as
//! `f = r*g`, and it can cross-check every verdict against exhaustive
//! enumeration over finite rings. On top of the kernel sit homological
//! reformulations (null-homotopies of two-term complexes and an Ext^1
//! obstruction class), module decomposition over local principal rings, a
//! finite-ring classifier predicting on which rings the two notions agree,
//! and a scenario gallery plus seeded random probes exercising all of it.
//!
//! Entry points:
//! - [`ring`]: ring descriptors, parsing, exact element arithmetic
//! - [`matrix`] and [`linalg`]: dense matrices, Hermite/Smith normal forms,
//!   exact linear solving over every supported ring class
//! - [`module`]: finitely presented modules, homomorphisms, torsion,
//!   enumeration
//! - [`divisibility`]: seeming divisibility, division with certificates, the
//!   exhaustive oracle
//! - [`homology`]: induced maps on two-term complexes, null-homotopy,
//!   obstruction class
//! - [`decomposition`]: invariant factors and cyclic splitting with
//!   isomorphism certificates
//! - [`gallery`]: finite-ring classification, counterexample construction,
//!   seeded probes, scenario bundles
//! - [`cli`]: the `moddiv` command-line front end
//! - [`suite`]: the acceptance checks run by `moddiv suite` and the
//!   integration tests

pub mod budget;
pub mod cli;
pub mod decomposition;
pub mod divisibility;
pub mod error;
pub mod euclid;
pub mod gallery;
pub mod homology;
pub mod jsonio;
pub mod linalg;
pub mod matrix;
pub mod module;
pub(crate) mod poly;
pub mod ring;
pub mod suite;

pub use budget::Budget;
pub use error::{Error, Result};
pub use matrix::RingMatrix;
pub use ring::{parse_ring, Ring, RingElement};
