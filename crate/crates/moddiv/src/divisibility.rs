//! Seeming divisibility, genuine divisibility with certificates, and the
//! exhaustive oracle.
//!
//! A hom `f: M -> N` is *seemingly divisible* by `r` when it kills the
//! r-torsion of `M` and its image lies in `r*N`. It is *divisible* when
//! `f = r*g` for some hom `g`. Divisible always implies seemingly divisible;
//! the whole point of this crate is deciding when the converse holds.
//!
//! `divide` poses one combined linear system over the ring — unknown matrix
//! `G` with `F = r*G + rel_N*X` and `G*rel_M` inside the relation span of the
//! target — and returns the canonical solution. `oracle_divide` instead scans
//! every hom of a finite hom set, providing independent ground truth.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::solve_linear;
use crate::matrix::RingMatrix;
use crate::module::{Coords, ModuleHom};
use crate::ring::RingElement;

/// The two clauses of seeming divisibility, with witnesses on failure.
#[derive(Clone, Debug)]
pub struct SeemingReport {
    pub kills_torsion: bool,
    /// A torsion generator with nonzero image, when `kills_torsion` fails.
    pub torsion_witness: Option<Coords>,
    pub image_divisible: bool,
    /// A generator index whose image is not in `r*N`, when `image_divisible` fails.
    pub image_witness: Option<usize>,
}

impl SeemingReport {
    pub fn verdict(&self) -> bool {
        self.kills_torsion && self.image_divisible
    }
}

#[derive(Clone, Debug)]
pub enum NotDivisibleReason {
    LinearSystemInfeasible,
    OracleExhausted { count: u64 },
}

#[derive(Clone, Debug)]
pub enum DivisionCertificate {
    Divisible { divisor: ModuleHom },
    NotDivisible { reason: NotDivisibleReason },
}

impl DivisionCertificate {
    pub fn is_divisible(&self) -> bool {
        matches!(self, DivisionCertificate::Divisible { .. })
    }

    pub fn divisor(&self) -> Option<&ModuleHom> {
        match self {
            DivisionCertificate::Divisible { divisor } => Some(divisor),
            DivisionCertificate::NotDivisible { .. } => None,
        }
    }
}

fn require_well_defined(f: &ModuleHom) -> Result<()> {
    match f.validate()? {
        crate::module::HomCheck::WellDefined => Ok(()),
        crate::module::HomCheck::BadRelation(j) => Err(Error::Hypothesis(format!(
            "hom is not well defined: source relation {j} maps outside the target's relation span"
        ))),
    }
}

/// Decide `f(M[r]) = 0` and `f(M) ⊆ r*N`, with witnesses.
pub fn is_seemingly_divisible(f: &ModuleHom, r: &RingElement) -> Result<SeemingReport> {
    require_well_defined(f)?;
    let ring = f.ring();
    assert!(ring.contains(r), "r does not belong to the hom's ring");

    let mut kills_torsion = true;
    let mut torsion_witness = None;
    for v in f.source.torsion_gens(r)? {
        let image = f.apply(&v);
        if !f.target.is_zero_elem(&image)? {
            kills_torsion = false;
            torsion_witness = Some(v);
            break;
        }
    }

    // Image divisibility: F_j = r*w + rel_N*z, one generator at a time so a
    // failing index can be reported.
    let r_block = RingMatrix::identity(ring.clone(), f.target.gens).scale(r);
    let combined = r_block.hstack(&f.target.relations);
    let mut image_divisible = true;
    let mut image_witness = None;
    for j in 0..f.source.gens {
        let col = RingMatrix::from_cols(ring.clone(), f.target.gens, &[f.matrix.col(j)]);
        if solve_linear(&combined, &col)?.is_none() {
            image_divisible = false;
            image_witness = Some(j);
            break;
        }
    }

    Ok(SeemingReport {
        kills_torsion,
        torsion_witness,
        image_divisible,
        image_witness,
    })
}

/// Decide `f = r*g` by one combined linear solve; the returned divisor is
/// re-verified before it is emitted.
pub fn divide(f: &ModuleHom, r: &RingElement) -> Result<DivisionCertificate> {
    require_well_defined(f)?;
    let ring = f.ring().clone();
    assert!(ring.contains(r), "r does not belong to the hom's ring");

    let s = f.source.gens;
    let t = f.target.gens;
    let nrel_m = f.source.relations.cols;
    let nrel_n = f.target.relations.cols;

    // Unknown layout: G columns (t*s), then X columns (nrel_n*s), then Y
    // columns (nrel_n*nrel_m).
    let g_off = 0usize;
    let x_off = t * s;
    let y_off = x_off + nrel_n * s;
    let ncols = y_off + nrel_n * nrel_m;
    let nrows = t * s + t * nrel_m;

    let mut a = RingMatrix::zero(ring.clone(), nrows, ncols);
    let mut b = RingMatrix::zero(ring.clone(), nrows, 1);

    // Block (i): for each source generator j, r*G_j + rel_N*X_j = F_j.
    for j in 0..s {
        for i in 0..t {
            let row = j * t + i;
            a.set(row, g_off + j * t + i, r.clone());
            for k in 0..nrel_n {
                a.set(
                    row,
                    x_off + j * nrel_n + k,
                    f.target.relations.get(i, k).clone(),
                );
            }
            b.set(row, 0, f.matrix.get(i, j).clone());
        }
    }
    // Block (ii): for each source relation rho, sum_j relM[j][rho]*G_j = rel_N*Y_rho.
    for rho in 0..nrel_m {
        for i in 0..t {
            let row = t * s + rho * t + i;
            for j in 0..s {
                a.set(
                    row,
                    g_off + j * t + i,
                    f.source.relations.get(j, rho).clone(),
                );
            }
            for k in 0..nrel_n {
                let e = ring.neg(f.target.relations.get(i, k));
                a.set(row, y_off + rho * nrel_n + k, e);
            }
        }
    }

    let Some(sol) = solve_linear(&a, &b)? else {
        return Ok(DivisionCertificate::NotDivisible {
            reason: NotDivisibleReason::LinearSystemInfeasible,
        });
    };

    let g_matrix = RingMatrix::from_fn(ring.clone(), t, s, |i, j| {
        sol.particular.get(g_off + j * t + i, 0).clone()
    });
    let g = ModuleHom::new(f.source.clone(), f.target.clone(), g_matrix)?;

    // Soundness gate: r*g = f as homs and g well defined, on every call.
    if !g.is_well_defined()? {
        return Err(Error::Internal(
            "division solver produced a divisor that is not well defined".into(),
        ));
    }
    if !g.scale(r).equals(f)? {
        return Err(Error::Internal(
            "division solver produced g with r*g != f".into(),
        ));
    }
    Ok(DivisionCertificate::Divisible { divisor: g })
}

/// Independent ground truth over finite rings: scan every hom `M -> N` for a
/// `g` with `r*g = f`, in deterministic enumeration order.
pub fn oracle_divide(
    f: &ModuleHom,
    r: &RingElement,
    budget: &Budget,
) -> Result<DivisionCertificate> {
    require_well_defined(f)?;
    let homs = crate::module::enumerate_homs(&f.source, &f.target, budget)?;
    let table = f.target.element_table(budget)?;
    let f_canon: Vec<&Coords> = (0..f.source.gens)
        .map(|j| table.canonical(&f.matrix.col(j)))
        .collect();
    for g in &homs {
        let rg = g.scale(r);
        let matches = (0..f.source.gens).all(|j| table.canonical(&rg.matrix.col(j)) == f_canon[j]);
        if matches {
            return Ok(DivisionCertificate::Divisible { divisor: g.clone() });
        }
    }
    Ok(DivisionCertificate::NotDivisible {
        reason: NotDivisibleReason::OracleExhausted {
            count: homs.len() as u64,
        },
    })
}

/// Outcome of comparing the two notions on one instance.
#[derive(Clone, Debug)]
pub enum Comparison {
    Agree {
        seeming: SeemingReport,
        certificate: DivisionCertificate,
    },
    /// Seemingly divisible but not divisible — the interesting direction.
    Counterexample {
        seeming: SeemingReport,
        certificate: DivisionCertificate,
    },
}

impl Comparison {
    pub fn is_counterexample(&self) -> bool {
        matches!(self, Comparison::Counterexample { .. })
    }
}

/// Compare the verdicts. Divisible-but-not-seeming contradicts the
/// containment of divisible maps among seemingly divisible ones and is
/// reported as an internal error with diagnostics.
pub fn seeming_vs_divisible(f: &ModuleHom, r: &RingElement) -> Result<Comparison> {
    let seeming = is_seemingly_divisible(f, r)?;
    let certificate = divide(f, r)?;
    match (seeming.verdict(), certificate.is_divisible()) {
        (false, true) => Err(Error::Internal(format!(
            "divisible map failed the seeming-divisibility check; this contradicts the \
             containment of divisible maps. f matrix: {:?}, r: {:?}, report: {:?}",
            f.matrix, r, seeming
        ))),
        (true, false) => Ok(Comparison::Counterexample {
            seeming,
            certificate,
        }),
        _ => Ok(Comparison::Agree {
            seeming,
            certificate,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::FPModule;
    use crate::ring::{parse_ring, Ring};

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn mult_by_2_on_z_is_seemingly_divisible_by_2() {
        let free = FPModule::free(z(), 1);
        let f = ModuleHom::new(free.clone(), free, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        let rep = is_seemingly_divisible(&f, &z().from_int(2)).unwrap();
        assert!(rep.verdict());
    }

    #[test]
    fn z2_to_z4_mult_2_fails_torsion_clause() {
        let src = FPModule::cyclic(z(), z().from_int(2));
        let tgt = FPModule::cyclic(z(), z().from_int(4));
        let f = ModuleHom::new(src, tgt, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        let rep = is_seemingly_divisible(&f, &z().from_int(2)).unwrap();
        assert!(!rep.kills_torsion);
        assert!(rep.torsion_witness.is_some());
        assert!(rep.image_divisible);
        assert!(!rep.verdict());
    }

    #[test]
    fn table_ring_step2_map_is_seemingly_divisible() {
        let r = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap();
        let x = RingElement::Vector(vec![0, 1, 0]);
        let y = RingElement::Vector(vec![0, 0, 1]);
        let src = FPModule::cyclic(r.clone(), y);
        let tgt = FPModule::free(r.clone(), 1);
        let f = ModuleHom::new(src, tgt, RingMatrix::new(r, 1, 1, vec![x.clone()])).unwrap();
        let rep = is_seemingly_divisible(&f, &x).unwrap();
        assert!(rep.verdict());
    }

    #[test]
    fn divide_mult_6_by_3_gives_mult_2() {
        let free = FPModule::free(z(), 1);
        let f = ModuleHom::new(free.clone(), free, RingMatrix::from_ints(z(), &[&[6]])).unwrap();
        let cert = divide(&f, &z().from_int(3)).unwrap();
        let g = cert.divisor().expect("divisible");
        assert_eq!(g.matrix, RingMatrix::from_ints(z(), &[&[2]]));
    }

    #[test]
    fn divide_identity_on_z2_by_3() {
        // 3 is invertible mod 2, so the identity divides by 3.
        let m = FPModule::cyclic(z(), z().from_int(2));
        let f = ModuleHom::identity(&m);
        let cert = divide(&f, &z().from_int(3)).unwrap();
        let g = cert.divisor().expect("divisible");
        assert!(g.scale(&z().from_int(3)).equals(&f).unwrap());
    }

    #[test]
    fn step2_map_is_not_divisible() {
        let r = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap();
        let x = RingElement::Vector(vec![0, 1, 0]);
        let y = RingElement::Vector(vec![0, 0, 1]);
        let src = FPModule::cyclic(r.clone(), y);
        let tgt = FPModule::free(r.clone(), 1);
        let f = ModuleHom::new(src, tgt, RingMatrix::new(r, 1, 1, vec![x.clone()])).unwrap();
        let cert = divide(&f, &x).unwrap();
        assert!(!cert.is_divisible());
        // Oracle confirms, exhausting exactly the 4 homs of Hom(R/(y), R).
        let oracle = oracle_divide(&f, &x, &Budget::default()).unwrap();
        match oracle {
            DivisionCertificate::NotDivisible {
                reason: NotDivisibleReason::OracleExhausted { count },
            } => assert_eq!(count, 4),
            other => panic!("expected oracle exhaustion, got {other:?}"),
        }
        // And the whole instance is a counterexample.
        assert!(seeming_vs_divisible(&f, &x).unwrap().is_counterexample());
    }

    #[test]
    fn oracle_divide_examples_over_z4() {
        let ring = Ring::IntegersMod(4);
        let budget = Budget::default();
        // Zero map Z/2 -> Z/4 over Z/4 divides by 2 with g = 0.
        let src = FPModule::cyclic(ring.clone(), ring.from_int(2));
        let tgt = FPModule::free(ring.clone(), 1);
        let f = ModuleHom::zero(src, tgt.clone()).unwrap();
        assert!(oracle_divide(&f, &ring.from_int(2), &budget)
            .unwrap()
            .is_divisible());

        // Mult by 2 on Z/4 over Z/4 divides by 2; the first divisor found is 1 |-> 1.
        let m = FPModule::free(ring.clone(), 1);
        let f = ModuleHom::new(m.clone(), m, RingMatrix::from_ints(ring.clone(), &[&[2]])).unwrap();
        let cert = oracle_divide(&f, &ring.from_int(2), &budget).unwrap();
        let g = cert.divisor().expect("divisible");
        assert_eq!(g.matrix.get(0, 0), &ring.from_int(1));
        // Solver and oracle agree.
        assert!(divide(&f, &ring.from_int(2)).unwrap().is_divisible());
    }

    #[test]
    fn r_zero_degenerate_case() {
        // Divisibility by 0 means f = 0, and only the zero map seems divisible by 0.
        let src = FPModule::cyclic(z(), z().from_int(2));
        let tgt = FPModule::cyclic(z(), z().from_int(4));
        let zero_hom = ModuleHom::zero(src.clone(), tgt.clone()).unwrap();
        let f = ModuleHom::new(src, tgt, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        let r0 = z().from_int(0);

        assert!(is_seemingly_divisible(&zero_hom, &r0).unwrap().verdict());
        assert!(divide(&zero_hom, &r0).unwrap().is_divisible());
        assert!(!is_seemingly_divisible(&f, &r0).unwrap().verdict());
        assert!(!divide(&f, &r0).unwrap().is_divisible());
    }

    #[test]
    fn unit_r_always_divides() {
        let ring = Ring::IntegersMod(6);
        let m = FPModule::cyclic(ring.clone(), ring.from_int(3));
        let f = ModuleHom::new(m.clone(), m, RingMatrix::from_ints(ring.clone(), &[&[2]])).unwrap();
        let cert = divide(&f, &ring.from_int(5)).unwrap();
        assert!(cert.is_divisible());
    }

    #[test]
    fn zero_hom_agrees_for_every_r() {
        let src = FPModule::cyclic(z(), z().from_int(4));
        let tgt = FPModule::free(z(), 1);
        let f = ModuleHom::zero(src, tgt).unwrap();
        for r in [0i64, 1, 2, 5] {
            let cmp = seeming_vs_divisible(&f, &z().from_int(r)).unwrap();
            assert!(!cmp.is_counterexample());
        }
    }

    #[test]
    fn oracle_agreement_over_small_finite_rings() {
        // Exhaustively compare divide and oracle_divide on every hom and
        // every r over a couple of small rings.
        let budget = Budget::default();
        for ring in [Ring::IntegersMod(4), Ring::IntegersMod(6)] {
            let mods = [
                FPModule::free(ring.clone(), 1),
                FPModule::cyclic(ring.clone(), ring.from_int(2)),
            ];
            for src in &mods {
                for tgt in &mods {
                    for f in crate::module::enumerate_homs(src, tgt, &budget).unwrap() {
                        for r in ring.enumerate().unwrap() {
                            let a = divide(&f, &r).unwrap().is_divisible();
                            let b = oracle_divide(&f, &r, &budget).unwrap().is_divisible();
                            assert_eq!(a, b, "solver/oracle disagreement");
                            if a {
                                assert!(is_seemingly_divisible(&f, &r).unwrap().verdict());
                            }
                        }
                    }
                }
            }
        }
    }
}
