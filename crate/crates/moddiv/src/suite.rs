//! The acceptance checks behind `moddiv suite` and the `acceptance`
//! integration test: exhaustive, exact, seeded.
//!
//! Every check is all-or-nothing (tolerance: equality); failures carry a
//! description of the first offending instance. Instance streams are fully
//! determined by hard-coded seeds so failures reproduce byte for byte.

use crate::budget::Budget;
use crate::decomposition::{invariant_factors, split_cyclic};
use crate::divisibility::{divide, is_seemingly_divisible, oracle_divide, DivisionCertificate};
use crate::error::Result;
use crate::gallery::{
    classify_finite_ring, hom_from_kernel_combination, local_counterexample, probe_ring,
    restrict_to_factor, well_definedness_kernel, ProbeOptions, ProbePhase,
};
use crate::homology::{homology_maps, null_homotopy, obstruction_class};
use crate::linalg::{hnf, snf, solve_linear};
use crate::matrix::RingMatrix;
use crate::module::{FPModule, ModuleHom};
use crate::ring::{parse_ring, Ring, RingElement};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "criterion {}: {} — {} ({})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

pub const CRITERIA: [(u32, &str); 9] = [
    (1, "seeming equals divisible over Z"),
    (2, "seeming equals divisible over GF(2)[x] and GF(3)[x]"),
    (
        3,
        "finite principal rings are clean under probe with oracle cross-check",
    ),
    (
        4,
        "constructive counterexample on the non-principal 8- and 16-element rings",
    ),
    (5, "classifier and probe agree across the ring panel"),
    (
        6,
        "null-homotopy matches division; homology matches the seeming clauses",
    ),
    (
        7,
        "obstruction class vanishes for prime r whenever homology does",
    ),
    (
        8,
        "cyclic splitting agrees with Smith-form invariant factors",
    ),
    (
        9,
        "normal forms, determinantal divisors and solver completeness",
    ),
];

pub fn run_criterion(id: u32) -> CriterionReport {
    let (name, result) = match id {
        1 => ("seeming equals divisible over Z", criterion_1()),
        2 => (
            "seeming equals divisible over GF(2)[x] and GF(3)[x]",
            criterion_2(),
        ),
        3 => (
            "finite principal rings are clean under probe with oracle cross-check",
            criterion_3(),
        ),
        4 => (
            "constructive counterexample on the non-principal 8- and 16-element rings",
            criterion_4(),
        ),
        5 => (
            "classifier and probe agree across the ring panel",
            criterion_5(),
        ),
        6 => (
            "null-homotopy matches division; homology matches the seeming clauses",
            criterion_6(),
        ),
        7 => (
            "obstruction class vanishes for prime r whenever homology does",
            criterion_7(),
        ),
        8 => (
            "cyclic splitting agrees with Smith-form invariant factors",
            criterion_8(),
        ),
        9 => (
            "normal forms, determinantal divisors and solver completeness",
            criterion_9(),
        ),
        other => {
            return CriterionReport {
                id: other,
                name: "unknown",
                passed: false,
                detail: "no such criterion".into(),
            }
        }
    };
    match result {
        Ok(detail) => CriterionReport {
            id,
            name,
            passed: true,
            detail,
        },
        Err(e) => CriterionReport {
            id,
            name,
            passed: false,
            detail: e,
        },
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=9).map(run_criterion).collect()
}

type Check = std::result::Result<String, String>;

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---- seeded instance generators ----

/// Random f.g. Z-modules with <= 4 generators and relation entries |.| <= 50,
/// paired with a valid hom sampled from the well-definedness kernel.
pub fn z_instances(count: usize, seed: u64) -> Result<Vec<ModuleHom>> {
    let ring = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let module = |rng: &mut ChaCha8Rng| {
            let gens = rng.gen_range(1..=4usize);
            let rels = rng.gen_range(0..=4usize);
            FPModule {
                ring: ring.clone(),
                gens,
                relations: RingMatrix::from_fn(ring.clone(), gens, rels, |_, _| {
                    ring.from_int(rng.gen_range(-50..=50i64))
                }),
            }
        };
        let source = module(&mut rng);
        let target = module(&mut rng);
        let kernel = well_definedness_kernel(&source, &target)?;
        let coefficients: Vec<RingElement> = (0..kernel.cols)
            .map(|_| ring.from_int(rng.gen_range(-3..=3i64)))
            .collect();
        out.push(hom_from_kernel_combination(
            &source,
            &target,
            &kernel,
            &coefficients,
        )?);
    }
    Ok(out)
}

/// Same over GF(p)[x] with random low-degree relation entries.
pub fn poly_instances(p: u64, count: usize, seed: u64) -> Result<Vec<ModuleHom>> {
    let ring = Ring::PolyOverPrimeField(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_poly = move |rng: &mut ChaCha8Rng, max_deg: usize| -> RingElement {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<u64> = (0..=deg).map(|_| rng.gen_range(0..p)).collect();
        RingElement::Poly(crate::poly::normalize(coeffs))
    };
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let module = |rng: &mut ChaCha8Rng| {
            let gens = rng.gen_range(1..=3usize);
            let rels = rng.gen_range(0..=3usize);
            FPModule {
                ring: ring.clone(),
                gens,
                relations: RingMatrix::from_fn(ring.clone(), gens, rels, |_, _| {
                    random_poly(rng, 2)
                }),
            }
        };
        let source = module(&mut rng);
        let target = module(&mut rng);
        let kernel = well_definedness_kernel(&source, &target)?;
        let coefficients: Vec<RingElement> =
            (0..kernel.cols).map(|_| random_poly(&mut rng, 1)).collect();
        out.push(hom_from_kernel_combination(
            &source,
            &target,
            &kernel,
            &coefficients,
        )?);
    }
    Ok(out)
}

fn z_r_values() -> Vec<RingElement> {
    [0i64, 1, 2, 3, 4, 6, 12]
        .iter()
        .map(|&r| Ring::Integers.from_int(r))
        .collect()
}

fn poly_r_values(p: u64) -> Vec<RingElement> {
    let mut out = vec![
        RingElement::Poly(vec![]),        // 0
        RingElement::Poly(vec![1]),       // 1
        RingElement::Poly(vec![0, 1]),    // x
        RingElement::Poly(vec![0, 0, 1]), // x^2
        RingElement::Poly(vec![0, 1, 1]), // x^2 + x
    ];
    for c in 2..p {
        out.push(RingElement::Poly(vec![c])); // remaining unit constants
    }
    out
}

// ---- criteria ----

/// Seeming divisibility coincides with divisibility over Z, with every
/// returned divisor re-verified.
fn criterion_1() -> Check {
    let started = Instant::now();
    let instances = lift(z_instances(1000, 0xD15C0))?;
    let rs = z_r_values();
    let mut checked = 0u64;
    for f in &instances {
        for r in &rs {
            let seeming = lift(is_seemingly_divisible(f, r))?.verdict();
            let cert = lift(divide(f, r))?;
            if seeming != cert.is_divisible() {
                return Err(format!(
                    "mismatch over Z: seeming={seeming}, divisible={} on f={:?}, r={:?}",
                    cert.is_divisible(),
                    f.matrix,
                    r
                ));
            }
            if let DivisionCertificate::Divisible { divisor } = &cert {
                let ok = divisor.scale(r).equals(f).map_err(|e| e.to_string())?;
                if !ok {
                    return Err("returned divisor fails r*g = f".into());
                }
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{} instances x {} r-values = {} checks, zero exceptions, {:.1}s",
        instances.len(),
        rs.len(),
        checked,
        started.elapsed().as_secs_f64()
    ))
}

/// The same over GF(2)[x] and GF(3)[x].
fn criterion_2() -> Check {
    let started = Instant::now();
    let mut checked = 0u64;
    for (p, seed) in [(2u64, 0xF2u64), (3, 0xF3)] {
        let instances = lift(poly_instances(p, 500, seed))?;
        let rs = poly_r_values(p);
        for f in &instances {
            for r in &rs {
                let seeming = lift(is_seemingly_divisible(f, r))?.verdict();
                let cert = lift(divide(f, r))?;
                if seeming != cert.is_divisible() {
                    return Err(format!(
                        "mismatch over GF({p})[x]: seeming={seeming}, divisible={} on f={:?}, r={:?}",
                        cert.is_divisible(),
                        f.matrix,
                        r
                    ));
                }
                if let DivisionCertificate::Divisible { divisor } = &cert {
                    if !divisor.scale(r).equals(f).map_err(|e| e.to_string())? {
                        return Err("returned divisor fails r*g = f".into());
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "1000 instances across GF(2)[x], GF(3)[x]; {} checks, zero exceptions, {:.1}s",
        checked,
        started.elapsed().as_secs_f64()
    ))
}

/// Probing finite principal rings stays clean, with every divide verdict
/// cross-checked by the exhaustive oracle.
fn criterion_3() -> Check {
    let started = Instant::now();
    let budget = Budget::default();
    let rings = ["Z/4", "Z/6", "Z/8", "Z/9", "GF(2)[x]/(x^3)", "Z/4 x GF(3)"];
    for desc in rings {
        let ring = lift(parse_ring(desc))?;
        let opts = ProbeOptions {
            trials: 500,
            seed: 0xAC3,
            oracle_check: true,
            ..ProbeOptions::default()
        };
        let verdict = lift(probe_ring(&ring, &opts, &budget))?;
        if let Some(rec) = verdict.counterexample {
            return Err(format!(
                "unexpected counterexample on {desc}: phase {:?}",
                rec.phase
            ));
        }
    }
    Ok(format!(
        "6 rings x 500 oracle-checked trials, no counterexamples, no disagreements, {:.1}s",
        started.elapsed().as_secs_f64()
    ))
}

/// The constructive counterexample works on both non-principal rings, with
/// the oracle exhausting exactly the 4 homs on the minimal one.
fn criterion_4() -> Check {
    let started = Instant::now();
    let budget = Budget::default();

    let ring = lift(parse_ring("GF(2)[x,y]/(x^2,xy,y^2)"))?;
    let x = RingElement::Vector(vec![0, 1, 0]);
    let y = RingElement::Vector(vec![0, 0, 1]);
    let instance = lift(local_counterexample(&ring, &x, &y, &budget))?;
    if !lift(is_seemingly_divisible(&instance.f, &instance.r))?.verdict() {
        return Err("minimal instance is not seemingly divisible".into());
    }
    if lift(divide(&instance.f, &instance.r))?.is_divisible() {
        return Err("minimal instance unexpectedly divides".into());
    }
    match lift(oracle_divide(&instance.f, &instance.r, &budget))? {
        DivisionCertificate::NotDivisible {
            reason: crate::divisibility::NotDivisibleReason::OracleExhausted { count },
        } => {
            if count != 4 {
                return Err(format!("oracle scanned {count} homs, expected exactly 4"));
            }
        }
        other => return Err(format!("oracle returned {other:?}")),
    }

    let ring2 = lift(parse_ring("GF(2)[x,y]/(x^2,y^2)"))?;
    // Basis 1, x, y, xy.
    let x2 = RingElement::Vector(vec![0, 1, 0, 0]);
    let y2 = RingElement::Vector(vec![0, 0, 1, 0]);
    let instance2 = lift(local_counterexample(&ring2, &x2, &y2, &budget))?;
    if !lift(is_seemingly_divisible(&instance2.f, &instance2.r))?.verdict() {
        return Err("16-element instance is not seemingly divisible".into());
    }
    if lift(divide(&instance2.f, &instance2.r))?.is_divisible() {
        return Err("16-element instance unexpectedly divides".into());
    }
    if lift(oracle_divide(&instance2.f, &instance2.r, &budget))?.is_divisible() {
        return Err("oracle disagrees on the 16-element instance".into());
    }

    Ok(format!(
        "both counterexamples verified; oracle exhausted exactly 4 homs on the minimal ring, {:.2}s",
        started.elapsed().as_secs_f64()
    ))
}

/// Classification and probe agree on the ring panel; non-principal entries
/// fail in the deterministic phase; the product counterexample restricts to
/// exactly the non-principal factor.
fn criterion_5() -> Check {
    let started = Instant::now();
    let budget = Budget::default();
    let panel = [
        "Z/8",
        "Z/12",
        "GF(2)[x]/(x^2+x+1)",
        "GF(2)[x]/(x^3)",
        "GF(2)[x,y]/(x^2,xy,y^2)",
        "GF(2)[x,y]/(x^2,y^2)",
        "GF(3)[x,y]/(x^2,xy,y^2)",
        "Z/4 x GF(2)[x,y]/(x^2,xy,y^2)",
    ];
    for desc in panel {
        let ring = lift(parse_ring(desc))?;
        let classification = lift(classify_finite_ring(&ring, &budget))?;
        let opts = ProbeOptions {
            trials: 300,
            seed: 0xB5,
            ..ProbeOptions::default()
        };
        let verdict = lift(probe_ring(&ring, &opts, &budget))?;
        match (classification.predicted_sp, &verdict.counterexample) {
            (true, None) => {}
            (false, Some(rec)) => {
                if !matches!(rec.phase, ProbePhase::Deterministic { .. }) {
                    return Err(format!(
                        "{desc}: counterexample found only in the random phase"
                    ));
                }
                // The counterexample must restrict to exactly the
                // non-principal factors.
                for factor in &classification.factors {
                    let hit = lift(restrict_to_factor(rec, factor))?;
                    if hit == factor.is_principal {
                        return Err(format!(
                            "{desc}: factor restriction disagrees with principality"
                        ));
                    }
                }
            }
            (true, Some(_)) => {
                return Err(format!(
                    "{desc}: predicted clean but found a counterexample"
                ))
            }
            (false, None) => {
                return Err(format!(
                    "{desc}: predicted a counterexample but probe is clean"
                ))
            }
        }
    }
    Ok(format!(
        "8-ring panel consistent; deterministic-phase counterexamples restrict to non-principal factors, {:.1}s",
        started.elapsed().as_secs_f64()
    ))
}

/// Null-homotopy exists iff division succeeds, and seeming divisibility is
/// exactly vanishing of both homology maps, on every domain instance with
/// r a non-zero divisor.
fn criterion_6() -> Check {
    let started = Instant::now();
    let mut checked = 0u64;
    let z_set = lift(z_instances(1000, 0xD15C0))?;
    let z_rs: Vec<RingElement> = z_r_values()
        .into_iter()
        .filter(|r| !Ring::Integers.is_zero(r))
        .collect();
    for f in &z_set {
        for r in &z_rs {
            checked += check_homological_instance(f, r)?;
        }
    }
    for (p, seed) in [(2u64, 0xF2u64), (3, 0xF3)] {
        let ring = Ring::PolyOverPrimeField(p);
        let instances = lift(poly_instances(p, 500, seed))?;
        let rs: Vec<RingElement> = poly_r_values(p)
            .into_iter()
            .filter(|r| !ring.is_zero(r))
            .collect();
        for f in &instances {
            for r in &rs {
                checked += check_homological_instance(f, r)?;
            }
        }
    }
    Ok(format!(
        "{checked} homological checks, zero exceptions, {:.1}s",
        started.elapsed().as_secs_f64()
    ))
}

fn check_homological_instance(f: &ModuleHom, r: &RingElement) -> std::result::Result<u64, String> {
    let homotopy = lift(null_homotopy(f, r))?;
    let divisible = lift(divide(f, r))?.is_divisible();
    if homotopy.is_some() != divisible {
        return Err(format!(
            "null-homotopy ({}) disagrees with divide ({divisible}) on f={:?}, r={:?}",
            homotopy.is_some(),
            f.matrix,
            r
        ));
    }
    let maps = lift(homology_maps(f, r))?;
    let both_zero = lift(maps.h0_zero())? && lift(maps.h1_zero())?;
    let seeming = lift(is_seemingly_divisible(f, r))?.verdict();
    if both_zero != seeming {
        return Err(format!(
            "homology vanishing ({both_zero}) disagrees with seeming ({seeming}) on f={:?}, r={:?}",
            f.matrix, r
        ));
    }
    Ok(1)
}

/// For prime r over Z, whenever both homology maps vanish the Ext^1 class is
/// zero and division succeeds.
fn criterion_7() -> Check {
    let started = Instant::now();
    let instances = lift(z_instances(1000, 0xD15C0))?;
    let primes = [Ring::Integers.from_int(2), Ring::Integers.from_int(3)];
    let mut vanishing = 0u64;
    for f in &instances {
        for r in &primes {
            let maps = lift(homology_maps(f, r))?;
            if !(lift(maps.h0_zero())? && lift(maps.h1_zero())?) {
                continue;
            }
            let report = lift(obstruction_class(f, r))?;
            if report.class_is_zero() != Some(true) {
                return Err(format!(
                    "nonzero or uncomputed class for prime r on f={:?}, r={:?}: {:?}",
                    f.matrix, r, report.ext_class
                ));
            }
            if report.null_homotopy.is_none() {
                return Err(format!(
                    "class vanishes but division fails on f={:?}, r={:?}",
                    f.matrix, r
                ));
            }
            vanishing += 1;
        }
    }
    Ok(format!(
        "{vanishing} seeming instances with prime r, all classes zero and divisible, {:.1}s",
        started.elapsed().as_secs_f64()
    ))
}

/// Cyclic splitting agrees with the Smith-form invariant factors of the
/// lifted presentation, certificates compose to identities, and remainders
/// pass the freeness ladder.
fn criterion_8() -> Check {
    let started = Instant::now();
    let budget = Budget::default();
    let mut checked = 0u64;

    // (descriptor, p as i64, n, max generators)
    let cases: [(&str, i64, u32, usize); 3] = [
        ("Z/8", 2, 3, 3),
        ("Z/27", 3, 3, 2),
        ("GF(2)[x]/(x^3)", 0, 3, 3), // p = x, flagged by the 0 sentinel
    ];
    for (desc, p_int, n, max_gens) in cases {
        let ring = lift(parse_ring(desc))?;
        let p = if p_int == 0 {
            RingElement::Poly(vec![0, 1])
        } else {
            ring.from_int(p_int)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0xDEC0 + p_int as u64);
        let elems = lift(ring.enumerate())?;
        for _ in 0..100 {
            let gens = rng.gen_range(1..=max_gens);
            let rels = rng.gen_range(0..=3usize);
            let module = FPModule {
                ring: ring.clone(),
                gens,
                relations: RingMatrix::from_fn(ring.clone(), gens, rels, |_, _| {
                    elems[rng.gen_range(0..elems.len())].clone()
                }),
            };
            let dec = lift(split_cyclic(&module, &p, n, &budget))?;

            // Independent route: Smith form of the lifted presentation.
            let lifted_exponents = lift(lifted_invariant_exponents(&module, &p, n))?;
            let mut split_exponents: Vec<u32> = Vec::new();
            for f in &dec.factors {
                for _ in 0..f.multiplicity {
                    split_exponents.push(f.exponent);
                }
            }
            let expected_cyclic: Vec<u32> = lifted_exponents
                .iter()
                .copied()
                .filter(|&a| a < n)
                .collect();
            let expected_free = lifted_exponents.iter().filter(|&&a| a == n).count();
            if split_exponents != expected_cyclic || dec.free_rank != expected_free {
                return Err(format!(
                    "{desc}: split gives exponents {split_exponents:?} + free {}, Smith form gives {expected_cyclic:?} + free {expected_free}",
                    dec.free_rank
                ));
            }

            // Certificates: both composites are identities.
            let id_m = ModuleHom::identity(&module);
            let id_sum = ModuleHom::identity(&dec.sum);
            let fwd_bwd = lift(dec.forward.compose_after(&dec.backward))?;
            let bwd_fwd = lift(dec.backward.compose_after(&dec.forward))?;
            if !lift(fwd_bwd.equals(&id_m))? || !lift(bwd_fwd.equals(&id_sum))? {
                return Err(format!(
                    "{desc}: isomorphism certificate does not compose to identity"
                ));
            }
            if !dec.freeness.holds() {
                return Err(format!("{desc}: remainder failed the freeness ladder"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} random modules split and cross-validated, {:.1}s",
        started.elapsed().as_secs_f64()
    ))
}

/// Exponents a_i of the invariant factors p^(a_i) of the lifted presentation
/// [relations | p^n I] over Z or GF(q)[x].
fn lifted_invariant_exponents(module: &FPModule, p: &RingElement, n: u32) -> Result<Vec<u32>> {
    let (lift_ring, lift_p): (Ring, RingElement) = match &module.ring {
        Ring::IntegersMod(_) => {
            let p_int = match p {
                RingElement::Res(v) => *v,
                _ => unreachable!(),
            };
            (Ring::Integers, Ring::Integers.from_int(p_int as i64))
        }
        Ring::PolyQuotient { p: q, .. } => (Ring::PolyOverPrimeField(*q), p.clone()),
        _ => unreachable!("validated by split_cyclic"),
    };
    let lifted_rel = RingMatrix::from_fn(
        lift_ring.clone(),
        module.gens,
        module.relations.cols,
        |i, j| lift_elem(&lift_ring, module.relations.get(i, j)),
    );
    let mut pn = lift_ring.one();
    for _ in 0..n {
        pn = lift_ring.mul(&pn, &lift_p);
    }
    let full = lifted_rel.hstack(&RingMatrix::identity(lift_ring.clone(), module.gens).scale(&pn));
    let inv = invariant_factors(&FPModule::new(lift_ring.clone(), full)?)?;
    let mut exponents = Vec::new();
    for d in inv.factors {
        let mut a = 0u32;
        let mut cur = d;
        while !lift_ring.is_unit(&cur) {
            cur = lift_ring
                .try_divide(&cur, &lift_p)
                .expect("invariant factor of a p-power-killed module is a p-power");
            a += 1;
        }
        exponents.push(a);
    }
    Ok(exponents)
}

fn lift_elem(lift_ring: &Ring, e: &RingElement) -> RingElement {
    match (lift_ring, e) {
        (Ring::Integers, RingElement::Res(v)) => Ring::Integers.from_int(*v as i64),
        (Ring::PolyOverPrimeField(_), RingElement::Poly(c)) => RingElement::Poly(c.clone()),
        _ => unreachable!(),
    }
}

/// Normal forms on 1000 random integer matrices: reconstruction,
/// unimodularity by independent determinant, divisibility chain, and
/// determinantal-divisor agreement; plus solver completeness against
/// exhaustive enumeration over finite rings.
fn criterion_9() -> Check {
    let started = Instant::now();
    let ring = Ring::Integers;
    let mut rng = ChaCha8Rng::seed_from_u64(0x11A);
    for trial in 0..1000 {
        let rows = rng.gen_range(1..=8usize);
        let cols = rng.gen_range(1..=8usize);
        let a = RingMatrix::from_fn(ring.clone(), rows, cols, |_, _| {
            ring.from_int(rng.gen_range(-1_000_000..=1_000_000i64))
        });

        let h = lift(hnf(&a))?;
        if a.mul(&h.v) != h.d {
            return Err(format!("trial {trial}: A*V != H"));
        }
        if !lift(unimodular(&h.v))? {
            return Err(format!("trial {trial}: Hermite transform not unimodular"));
        }

        let s = lift(snf(&a))?;
        if s.u.mul(&a).mul(&s.v) != s.d {
            return Err(format!("trial {trial}: U*A*V != D"));
        }
        if !lift(unimodular(&s.u))? || !lift(unimodular(&s.v))? {
            return Err(format!("trial {trial}: Smith transforms not unimodular"));
        }
        // Divisibility chain and determinantal-divisor agreement.
        let diag: Vec<BigInt> = (0..rows.min(cols))
            .map(|i| to_bigint(s.d.get(i, i)))
            .collect();
        for w in diag.windows(2) {
            if !w[0].is_zero() && !w[1].is_rem_zero(&w[0]) {
                return Err(format!("trial {trial}: divisibility chain broken"));
            }
            if w[0].is_zero() && !w[1].is_zero() {
                return Err(format!(
                    "trial {trial}: zero before nonzero on the diagonal"
                ));
            }
        }
        let ints = IntMatrix::from_ring_matrix(&a);
        let mut product = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            product *= d;
            let oracle = ints.determinantal_divisor(k + 1);
            if oracle != product.abs() {
                return Err(format!(
                    "trial {trial}: determinantal divisor D_{} = {oracle} but d-product = {}",
                    k + 1,
                    product.abs()
                ));
            }
        }
    }

    // Solver completeness against exhaustive enumeration over finite rings.
    let budget_cases = [
        ("Z/6", 2usize, 3usize),
        ("Z/8", 2, 3),
        ("GF(3)", 2, 3),
        ("GF(2)[x,y]/(x^2,xy,y^2)", 1, 2),
    ];
    let mut systems = 0u64;
    for (desc, max_rows, max_cols) in budget_cases {
        let r = lift(parse_ring(desc))?;
        let elems = lift(r.enumerate())?;
        for _ in 0..50 {
            let rows = rng.gen_range(1..=max_rows);
            let cols = rng.gen_range(1..=max_cols);
            let a = RingMatrix::from_fn(r.clone(), rows, cols, |_, _| {
                elems[rng.gen_range(0..elems.len())].clone()
            });
            let b = RingMatrix::from_fn(r.clone(), rows, 1, |_, _| {
                elems[rng.gen_range(0..elems.len())].clone()
            });
            check_solver_completeness(&r, &elems, &a, &b)?;
            systems += 1;
        }
    }
    Ok(format!(
        "1000 integer matrices + {systems} finite-ring systems verified, {:.1}s",
        started.elapsed().as_secs_f64()
    ))
}

fn check_solver_completeness(
    ring: &Ring,
    elems: &[RingElement],
    a: &RingMatrix,
    b: &RingMatrix,
) -> std::result::Result<(), String> {
    use std::collections::HashSet;
    // Exhaustive solution set.
    let cols = a.cols;
    let mut all: Vec<Vec<RingElement>> = vec![vec![]];
    for _ in 0..cols {
        let mut next = Vec::with_capacity(all.len() * elems.len());
        for prefix in &all {
            for e in elems {
                let mut v = prefix.clone();
                v.push(e.clone());
                next.push(v);
            }
        }
        all = next;
    }
    let target: Vec<RingElement> = (0..a.rows).map(|i| b.get(i, 0).clone()).collect();
    let brute: HashSet<Vec<RingElement>> =
        all.into_iter().filter(|x| a.apply(x) == target).collect();

    let sol = solve_linear(a, b).map_err(|e| e.to_string())?;
    match sol {
        None => {
            if !brute.is_empty() {
                return Err(format!(
                    "solver says infeasible but enumeration found {} solutions over {}",
                    brute.len(),
                    ring.descriptor()
                ));
            }
        }
        Some(sol) => {
            let x0: Vec<RingElement> = (0..cols)
                .map(|i| sol.particular.get(i, 0).clone())
                .collect();
            if !brute.contains(&x0) {
                return Err("particular solution is not a solution".into());
            }
            // Span the kernel generators and shift by x0.
            let mut span: HashSet<Vec<RingElement>> = HashSet::new();
            let zero: Vec<RingElement> = vec![ring.zero(); cols];
            span.insert(zero.clone());
            let mut gen_multiples: Vec<Vec<RingElement>> = Vec::new();
            for j in 0..sol.kernel.cols {
                let col: Vec<RingElement> =
                    (0..cols).map(|i| sol.kernel.get(i, j).clone()).collect();
                for s in elems {
                    let m: Vec<RingElement> = col.iter().map(|e| ring.mul(s, e)).collect();
                    if m != zero && !gen_multiples.contains(&m) {
                        gen_multiples.push(m);
                    }
                }
            }
            let mut frontier = vec![zero];
            while let Some(v) = frontier.pop() {
                for g in &gen_multiples {
                    let w: Vec<RingElement> =
                        v.iter().zip(g).map(|(x, y)| ring.add(x, y)).collect();
                    if span.insert(w.clone()) {
                        frontier.push(w);
                    }
                }
            }
            let reconstructed: HashSet<Vec<RingElement>> = span
                .into_iter()
                .map(|s| {
                    s.iter()
                        .zip(&x0)
                        .map(|(a, b)| ring.add(a, b))
                        .collect::<Vec<RingElement>>()
                })
                .collect();
            if reconstructed != brute {
                return Err(format!(
                    "solution space mismatch over {}: solver {} vs enumeration {}",
                    ring.descriptor(),
                    reconstructed.len(),
                    brute.len()
                ));
            }
        }
    }
    Ok(())
}

fn to_bigint(e: &RingElement) -> BigInt {
    match e {
        RingElement::Int(x) => x.clone(),
        RingElement::Res(x) => BigInt::from(*x),
        _ => panic!("not an integer entry"),
    }
}

fn unimodular(m: &RingMatrix) -> Result<bool> {
    let ints = IntMatrix::from_ring_matrix(m);
    let det = ints.det_bareiss();
    Ok(det.abs().is_one())
}

trait RemZero {
    fn is_rem_zero(&self, d: &BigInt) -> bool;
}

impl RemZero for BigInt {
    fn is_rem_zero(&self, d: &BigInt) -> bool {
        self.mod_floor(d).is_zero() || (-self).mod_floor(d).is_zero()
    }
}

/// Plain integer matrix helper for the independent oracles: Bareiss
/// determinants and determinantal divisors (gcds of k x k minors).
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_ring_matrix(m: &RingMatrix) -> Self {
        IntMatrix {
            rows: m.rows,
            cols: m.cols,
            data: m.entries().iter().map(to_bigint).collect(),
        }
    }

    fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn det_bareiss(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    assert!(r.is_zero(), "Bareiss division must be exact");
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }

    fn submatrix_det(&self, rows: &[usize], cols: &[usize]) -> BigInt {
        let k = rows.len();
        let sub = IntMatrix {
            rows: k,
            cols: k,
            data: rows
                .iter()
                .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
                .collect(),
        };
        sub.det_bareiss()
    }

    /// gcd of all k x k minors (0 when every minor vanishes), with early
    /// exit once the gcd reaches 1.
    pub fn determinantal_divisor(&self, k: usize) -> BigInt {
        let mut gcd = BigInt::zero();
        let row_sets = combinations(self.rows, k);
        let col_sets = combinations(self.cols, k);
        'outer: for rs in &row_sets {
            for cs in &col_sets {
                let minor = self.submatrix_det(rs, cs);
                gcd = gcd.gcd(&minor);
                if gcd.is_one() {
                    break 'outer;
                }
            }
        }
        gcd
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        // Advance the last index that can move.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + 1 <= n - (k - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 4).len(), 1);
        assert_eq!(combinations(3, 4).len(), 0);
    }

    #[test]
    fn determinantal_divisors_of_known_matrix() {
        // diag(2, 4): D_1 = gcd(2, 4) = 2, D_2 = 8.
        let ring = Ring::Integers;
        let a = RingMatrix::from_ints(ring, &[&[2, 0], &[0, 4]]);
        let m = IntMatrix::from_ring_matrix(&a);
        assert_eq!(m.determinantal_divisor(1), BigInt::from(2));
        assert_eq!(m.determinantal_divisor(2), BigInt::from(8));
    }

    #[test]
    fn bareiss_det_matches_known_values() {
        let ring = Ring::Integers;
        let a = RingMatrix::from_ints(ring.clone(), &[&[1, 2], &[3, 4]]);
        assert_eq!(
            IntMatrix::from_ring_matrix(&a).det_bareiss(),
            BigInt::from(-2)
        );
        let b = RingMatrix::from_ints(ring, &[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(
            IntMatrix::from_ring_matrix(&b).det_bareiss(),
            BigInt::from(5)
        );
    }

    #[test]
    fn generators_are_deterministic() {
        let a = z_instances(5, 42).unwrap();
        let b = z_instances(5, 42).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.matrix, y.matrix);
        }
    }
}
