//! Ring-level instruments over finite rings: classification, constructive
//! counterexamples, and seeded probes.
//!
//! A finite commutative ring splits uniquely into local factors along its
//! primitive idempotents. [`classify_finite_ring`] computes that splitting by
//! exhaustive scan, decides for each factor whether the maximal ideal is
//! principal, and predicts from this whether seeming divisibility and
//! divisibility coincide on the ring: they do exactly when every local factor
//! is a principal ideal ring.
//!
//! [`local_counterexample`] makes the failure constructive: on a local ring
//! whose maximal ideal is not principal, pick `t` in `m` but not `m^2` and
//! `y` in `m` outside both `(t)` and `m^2`; then multiplication by `t`, as a
//! map `R/(y) -> R/m^2`, is seemingly divisible by `t` but not divisible.
//! [`probe_ring`] first runs that construction deterministically on every
//! non-principal factor (through the factor's idempotent, so products are
//! handled componentwise) and then hammers the ring with seeded random
//! instances.

use crate::budget::Budget;
use crate::divisibility::{
    divide, oracle_divide, seeming_vs_divisible, Comparison, DivisionCertificate, SeemingReport,
};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RingMatrix;
use crate::module::{FPModule, ModuleHom};
use crate::ring::{Ring, RingElement};
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

#[derive(Clone, Debug)]
pub struct LocalFactor {
    /// The primitive idempotent cutting this factor out; also its identity.
    pub idempotent: RingElement,
    /// All elements of the factor, in canonical order.
    pub elements: Vec<RingElement>,
    /// Non-units of the factor (the maximal ideal), in canonical order.
    pub max_ideal: Vec<RingElement>,
    /// A deterministic generating set of the maximal ideal.
    pub max_ideal_gens: Vec<RingElement>,
    pub is_principal: bool,
    pub is_field: bool,
}

#[derive(Clone, Debug)]
pub struct RingClassification {
    pub ring: Ring,
    pub factors: Vec<LocalFactor>,
    /// True iff every local factor is a principal ideal ring.
    pub predicted_sp: bool,
}

fn budget_check(ring: &Ring, budget: &Budget) -> Result<Vec<RingElement>> {
    let size = ring
        .size()
        .ok_or_else(|| Error::InfiniteRing(ring.descriptor()))?;
    let size = size.to_u64().unwrap_or(u64::MAX);
    if size > budget.max_ring_size {
        return Err(Error::Budget {
            what: "ring elements",
            needed: size.to_string(),
            budget: budget.max_ring_size,
        });
    }
    ring.enumerate()
}

/// Additive closure of factor-multiples of `gens` inside a factor with
/// element list `elements`.
fn ideal_span(ring: &Ring, elements: &[RingElement], gens: &[RingElement]) -> HashSet<RingElement> {
    let zero = ring.zero();
    let mut multiples: Vec<RingElement> = Vec::new();
    for g in gens {
        for a in elements {
            let m = ring.mul(a, g);
            if m != zero && !multiples.contains(&m) {
                multiples.push(m);
            }
        }
    }
    let mut span: HashSet<RingElement> = HashSet::new();
    span.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for m in &multiples {
            let w = ring.add(&v, m);
            if span.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    span
}

/// Split a finite ring into local factors and decide principality of each
/// maximal ideal by scan.
pub fn classify_finite_ring(ring: &Ring, budget: &Budget) -> Result<RingClassification> {
    let elems = budget_check(ring, budget)?;
    let one = ring.one();
    let zero = ring.zero();

    // Unit set, once.
    let units: HashSet<RingElement> = elems.iter().filter(|a| ring.is_unit(a)).cloned().collect();

    // All idempotents, then the primitive (minimal nonzero) ones.
    let idempotents: Vec<RingElement> = elems
        .iter()
        .filter(|e| ring.mul(e, e) == **e)
        .cloned()
        .collect();
    let primitive: Vec<RingElement> = idempotents
        .iter()
        .filter(|e| {
            **e != zero
                && !idempotents
                    .iter()
                    .any(|g| *g != zero && *g != **e && ring.mul(g, e) == *g)
        })
        .cloned()
        .collect();

    // Structural sanity: orthogonal, summing to 1.
    let mut total = zero.clone();
    for (i, e) in primitive.iter().enumerate() {
        for f in &primitive[i + 1..] {
            if ring.mul(e, f) != zero {
                return Err(Error::Internal(
                    "primitive idempotents are not orthogonal".into(),
                ));
            }
        }
        total = ring.add(&total, e);
    }
    if total != one {
        return Err(Error::Internal(
            "primitive idempotents do not sum to 1".into(),
        ));
    }

    let mut factors = Vec::with_capacity(primitive.len());
    for e in &primitive {
        let mut felems: Vec<RingElement> = elems.iter().map(|x| ring.mul(e, x)).collect();
        felems.sort();
        felems.dedup();
        // Units of the factor: u with u v = e for some v in the factor.
        let funits: HashSet<RingElement> = felems
            .iter()
            .filter(|u| felems.iter().any(|v| ring.mul(u, v) == *e))
            .cloned()
            .collect();
        let max_ideal: Vec<RingElement> = felems
            .iter()
            .filter(|x| !funits.contains(*x))
            .cloned()
            .collect();
        // Locality: the non-units must be closed under addition.
        let mset: HashSet<&RingElement> = max_ideal.iter().collect();
        for a in &max_ideal {
            for b in &max_ideal {
                let s = ring.add(a, b);
                if !mset.contains(&s) {
                    return Err(Error::Internal(
                        "idempotent factor is not local: non-units not closed under addition"
                            .into(),
                    ));
                }
            }
        }
        // Greedy generating set, preferring elements that generate the most
        // (ties broken by canonical order), so principal ideals report a
        // single generator.
        let mut by_reach: Vec<(usize, RingElement)> = max_ideal
            .iter()
            .map(|x| {
                (
                    ideal_span(ring, &felems, std::slice::from_ref(x)).len(),
                    x.clone(),
                )
            })
            .collect();
        by_reach.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        let mut gens: Vec<RingElement> = Vec::new();
        for (_, x) in &by_reach {
            if !ideal_span(ring, &felems, &gens).contains(x) {
                gens.push(x.clone());
            }
        }
        let mtarget: HashSet<RingElement> = max_ideal.iter().cloned().collect();
        let is_field = max_ideal.len() == 1; // just zero
        let is_principal = is_field
            || max_ideal
                .iter()
                .any(|t| ideal_span(ring, &felems, std::slice::from_ref(t)) == mtarget);
        factors.push(LocalFactor {
            idempotent: e.clone(),
            elements: felems,
            max_ideal,
            max_ideal_gens: gens,
            is_principal,
            is_field,
        });
    }

    // Certify the splitting on elements: the componentwise map is injective
    // and the factor sizes multiply up to |R|.
    let mut seen = HashSet::new();
    for x in &elems {
        let tuple: Vec<RingElement> = factors.iter().map(|f| ring.mul(&f.idempotent, x)).collect();
        if !seen.insert(tuple) {
            return Err(Error::Internal(
                "idempotent splitting is not injective on elements".into(),
            ));
        }
    }
    let product_size: u128 = factors.iter().map(|f| f.elements.len() as u128).product();
    if product_size != elems.len() as u128 {
        return Err(Error::Internal(
            "factor sizes do not multiply up to the ring size".into(),
        ));
    }

    // Radical cross-check: x is in every maximal ideal iff 1 + x y is a unit
    // for every y.
    for x in &elems {
        let by_scan = elems
            .iter()
            .all(|y| units.contains(&ring.add(&one, &ring.mul(x, y))));
        let by_factors = factors
            .iter()
            .all(|f| !f.is_unit_in_factor(ring, &ring.mul(&f.idempotent, x)));
        if by_scan != by_factors {
            return Err(Error::Internal(
                "Jacobson radical scan disagrees with the factor decomposition".into(),
            ));
        }
    }

    let predicted_sp = factors.iter().all(|f| f.is_principal);
    Ok(RingClassification {
        ring: ring.clone(),
        factors,
        predicted_sp,
    })
}

impl LocalFactor {
    fn is_unit_in_factor(&self, ring: &Ring, x: &RingElement) -> bool {
        self.elements
            .iter()
            .any(|v| ring.mul(x, v) == self.idempotent)
    }

    /// The square of the maximal ideal, as a set.
    pub fn max_ideal_squared(&self, ring: &Ring) -> HashSet<RingElement> {
        let mut products: Vec<RingElement> = Vec::new();
        for a in &self.max_ideal {
            for b in &self.max_ideal {
                let p = ring.mul(a, b);
                if !products.contains(&p) {
                    products.push(p);
                }
            }
        }
        ideal_span(ring, &self.elements, &products)
    }

    /// The principal ideal (t) within the factor, as a set.
    pub fn principal_ideal(&self, ring: &Ring, t: &RingElement) -> HashSet<RingElement> {
        ideal_span(ring, &self.elements, std::slice::from_ref(t))
    }
}

/// The constructed instance: a hom that is seemingly divisible by `r` but
/// not divisible.
#[derive(Clone, Debug)]
pub struct CounterexampleInstance {
    pub f: ModuleHom,
    pub r: RingElement,
}

/// Build the multiplication-by-t counterexample on a finite local ring.
///
/// Requires `t` in `m` but not `m^2`, and `y` in `m` outside both `(t)` and
/// `m^2`; each condition is checked by scan and reported on failure. The map
/// is `R/(y) -> R/m^2` (the target is `R` itself when `m^2 = 0`), sending 1
/// to `t`, paired with `r = t`.
pub fn local_counterexample(
    ring: &Ring,
    t: &RingElement,
    y: &RingElement,
    budget: &Budget,
) -> Result<CounterexampleInstance> {
    let classification = classify_finite_ring(ring, budget)?;
    if classification.factors.len() != 1 {
        return Err(Error::Hypothesis(format!(
            "ring {} is not local: it splits into {} factors",
            ring.descriptor(),
            classification.factors.len()
        )));
    }
    let factor = &classification.factors[0];
    embedded_counterexample(ring, factor, t, y)
}

/// The same construction through a factor's idempotent, so it also works for
/// one non-principal factor of a product: the other components carry the
/// zero map with a unit component of `r`.
fn embedded_counterexample(
    ring: &Ring,
    factor: &LocalFactor,
    t: &RingElement,
    y: &RingElement,
) -> Result<CounterexampleInstance> {
    let e = &factor.idempotent;
    let u = ring.sub(&ring.one(), e); // complementary idempotent
    let mset: HashSet<&RingElement> = factor.max_ideal.iter().collect();
    if !mset.contains(t) {
        return Err(Error::Hypothesis("t is not in the maximal ideal".into()));
    }
    let m2 = factor.max_ideal_squared(ring);
    if m2.contains(t) {
        return Err(Error::Hypothesis("t lies in m^2".into()));
    }
    if !mset.contains(y) {
        return Err(Error::Hypothesis("y is not in the maximal ideal".into()));
    }
    if factor.principal_ideal(ring, t).contains(y) {
        return Err(Error::Hypothesis(
            "y lies in the principal ideal (t)".into(),
        ));
    }
    if m2.contains(y) {
        return Err(Error::Hypothesis(
            "y lies in m^2, where multiplication by t becomes divisible".into(),
        ));
    }

    // Source: R/(y) in the factor, zero elsewhere — one relation y + u.
    let source = FPModule::cyclic(ring.clone(), ring.add(y, &u));
    // Target: R/m^2 in the factor, zero elsewhere.
    let mut target_gens: Vec<RingElement> = factor
        .max_ideal_gens
        .iter()
        .flat_map(|a| factor.max_ideal_gens.iter().map(move |b| (a, b)))
        .map(|(a, b)| ring.mul(a, b))
        .filter(|p| !ring.is_zero(p))
        .collect();
    target_gens.push(u.clone());
    let target = FPModule::free(ring.clone(), 1).quotient_by_ideal(&target_gens);

    let f = ModuleHom::new(
        source,
        target,
        RingMatrix::new(ring.clone(), 1, 1, vec![t.clone()]),
    )?;
    if !f.is_well_defined()? {
        return Err(Error::Internal(
            "the multiplication-by-t map failed validation".into(),
        ));
    }
    let r = ring.add(t, &u);
    Ok(CounterexampleInstance { f, r })
}

#[derive(Clone, Debug)]
pub enum ProbePhase {
    /// Found by the deterministic constructive sweep.
    Deterministic {
        factor: usize,
        t: RingElement,
        y: RingElement,
    },
    /// Found by a seeded random trial.
    Trial { index: u64 },
}

#[derive(Clone, Debug)]
pub struct CounterexampleRecord {
    pub phase: ProbePhase,
    pub f: ModuleHom,
    pub r: RingElement,
    pub seeming: SeemingReport,
    pub certificate: DivisionCertificate,
}

#[derive(Clone, Debug)]
pub struct ProbeVerdict {
    pub trials: u64,
    pub seed: u64,
    pub counterexample: Option<CounterexampleRecord>,
}

#[derive(Clone, Copy, Debug)]
pub struct ProbeOptions {
    pub trials: u64,
    pub seed: u64,
    pub max_gens: usize,
    pub max_relations: usize,
    /// Cross-check every divide verdict against the exhaustive oracle.
    pub oracle_check: bool,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            trials: 100,
            seed: 0,
            max_gens: 2,
            max_relations: 3,
            oracle_check: false,
        }
    }
}

/// Empirically test whether seeming divisibility equals divisibility on a
/// finite ring.
///
/// Phase one deterministically runs the constructive counterexample for
/// every admissible `(t, y)` pair on every non-principal local factor; phase
/// two runs seeded random trials: random presentations, homs sampled from
/// the solution space of the well-definedness system, and non-unit non-zero
/// `r`. The verdict is reproducible from `(seed, trials, bounds)` alone.
pub fn probe_ring(ring: &Ring, opts: &ProbeOptions, budget: &Budget) -> Result<ProbeVerdict> {
    let classification = classify_finite_ring(ring, budget)?;

    // Deterministic constructive phase.
    for (fi, factor) in classification.factors.iter().enumerate() {
        if factor.is_principal {
            continue;
        }
        let m2 = factor.max_ideal_squared(ring);
        for t in &factor.max_ideal {
            if m2.contains(t) {
                continue;
            }
            let ideal_t = factor.principal_ideal(ring, t);
            for y in &factor.max_ideal {
                if ideal_t.contains(y) || m2.contains(y) {
                    continue;
                }
                let instance = embedded_counterexample(ring, factor, t, y)?;
                match seeming_vs_divisible(&instance.f, &instance.r)? {
                    Comparison::Counterexample {
                        seeming,
                        certificate,
                    } => {
                        return Ok(ProbeVerdict {
                            trials: opts.trials,
                            seed: opts.seed,
                            counterexample: Some(CounterexampleRecord {
                                phase: ProbePhase::Deterministic {
                                    factor: fi,
                                    t: t.clone(),
                                    y: y.clone(),
                                },
                                f: instance.f,
                                r: instance.r,
                                seeming,
                                certificate,
                            }),
                        })
                    }
                    Comparison::Agree { .. } => {
                        return Err(Error::Internal(
                            "constructive instance unexpectedly passed division".into(),
                        ))
                    }
                }
            }
        }
    }

    // Seeded random phase.
    let elems = ring.enumerate()?;
    let r_candidates: Vec<RingElement> = elems
        .iter()
        .filter(|r| !ring.is_zero(r) && !ring.is_unit(r))
        .cloned()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    if !r_candidates.is_empty() {
        for index in 0..opts.trials {
            let (f, r) = random_instance(ring, &elems, &r_candidates, opts, &mut rng)?;
            let cmp = seeming_vs_divisible(&f, &r)?;
            if opts.oracle_check {
                let fast = divide(&f, &r)?.is_divisible();
                let slow = oracle_divide(&f, &r, budget)?.is_divisible();
                if fast != slow {
                    return Err(Error::Internal(format!(
                        "solver and oracle disagree on trial {index}"
                    )));
                }
            }
            if let Comparison::Counterexample {
                seeming,
                certificate,
            } = cmp
            {
                return Ok(ProbeVerdict {
                    trials: opts.trials,
                    seed: opts.seed,
                    counterexample: Some(CounterexampleRecord {
                        phase: ProbePhase::Trial { index },
                        f,
                        r,
                        seeming,
                        certificate,
                    }),
                });
            }
        }
    }
    Ok(ProbeVerdict {
        trials: opts.trials,
        seed: opts.seed,
        counterexample: None,
    })
}

/// One random, valid instance: module pair, a hom sampled from the kernel of
/// the well-definedness system, and a non-unit non-zero r.
fn random_instance(
    ring: &Ring,
    elems: &[RingElement],
    r_candidates: &[RingElement],
    opts: &ProbeOptions,
    rng: &mut ChaCha8Rng,
) -> Result<(ModuleHom, RingElement)> {
    let random_module = |rng: &mut ChaCha8Rng| -> FPModule {
        let gens = rng.gen_range(1..=opts.max_gens);
        let rels = rng.gen_range(0..=opts.max_relations);
        let relations = RingMatrix::from_fn(ring.clone(), gens, rels, |_, _| {
            elems[rng.gen_range(0..elems.len())].clone()
        });
        FPModule {
            ring: ring.clone(),
            gens,
            relations,
        }
    };
    let source = random_module(rng);
    let target = random_module(rng);
    let f = sample_hom(&source, &target, rng, elems)?;
    let r = r_candidates[rng.gen_range(0..r_candidates.len())].clone();
    Ok((f, r))
}

/// Kernel generators of the hom well-definedness system: unknowns are the
/// hom matrix entries (column-major, `target.gens * source.gens` of them)
/// plus slack for each source relation; every well-defined hom matrix is an
/// R-combination of the F-blocks of the returned kernel columns.
pub fn well_definedness_kernel(source: &FPModule, target: &FPModule) -> Result<RingMatrix> {
    let ring = source.ring.clone();
    let s = source.gens;
    let t = target.gens;
    let nrel_m = source.relations.cols;
    let nrel_n = target.relations.cols;
    let f_cols = t * s;
    let ncols = f_cols + nrel_n * nrel_m;
    let nrows = t * nrel_m;
    let mut a = RingMatrix::zero(ring.clone(), nrows, ncols);
    for rho in 0..nrel_m {
        for i in 0..t {
            let row = rho * t + i;
            for j in 0..s {
                a.set(row, j * t + i, source.relations.get(j, rho).clone());
            }
            for k in 0..nrel_n {
                a.set(
                    row,
                    f_cols + rho * nrel_n + k,
                    ring.neg(target.relations.get(i, k)),
                );
            }
        }
    }
    linalg::kernel(&a)
}

/// Assemble a hom matrix from coefficients applied to the kernel generators.
pub fn hom_from_kernel_combination(
    source: &FPModule,
    target: &FPModule,
    kernel: &RingMatrix,
    coefficients: &[RingElement],
) -> Result<ModuleHom> {
    let ring = source.ring.clone();
    let f_cols = target.gens * source.gens;
    assert_eq!(
        coefficients.len(),
        kernel.cols,
        "one coefficient per kernel generator"
    );
    let mut combo = vec![ring.zero(); f_cols];
    for (kj, lambda) in coefficients.iter().enumerate() {
        if ring.is_zero(lambda) {
            continue;
        }
        for (i, acc) in combo.iter_mut().enumerate() {
            *acc = ring.add(acc, &ring.mul(lambda, kernel.get(i, kj)));
        }
    }
    let matrix = RingMatrix::from_fn(ring, target.gens, source.gens, |i, j| {
        combo[j * target.gens + i].clone()
    });
    ModuleHom::new(source.clone(), target.clone(), matrix)
}

/// Uniformly sample a well-defined hom by drawing random coefficients for
/// the kernel generators of the well-definedness system.
pub fn sample_hom(
    source: &FPModule,
    target: &FPModule,
    rng: &mut ChaCha8Rng,
    elems: &[RingElement],
) -> Result<ModuleHom> {
    let kernel = well_definedness_kernel(source, target)?;
    let coefficients: Vec<RingElement> = (0..kernel.cols)
        .map(|_| elems[rng.gen_range(0..elems.len())].clone())
        .collect();
    let f = hom_from_kernel_combination(source, target, &kernel, &coefficients)?;
    debug_assert!(f.is_well_defined()?);
    Ok(f)
}

/// Restrict a counterexample over a (possibly product) ring to one factor:
/// quotient both modules by the complementary idempotent and make `r` a unit
/// outside the factor. Returns whether the restricted instance is itself a
/// counterexample.
pub fn restrict_to_factor(record: &CounterexampleRecord, factor: &LocalFactor) -> Result<bool> {
    let ring = record.f.ring().clone();
    let u = ring.sub(&ring.one(), &factor.idempotent);
    let source = record.f.source.quotient_by_ideal(&[u.clone()]);
    let target = record.f.target.quotient_by_ideal(&[u.clone()]);
    let f = ModuleHom::new(source, target, record.f.matrix.clone())?;
    let r = ring.add(&ring.mul(&factor.idempotent, &record.r), &u);
    Ok(seeming_vs_divisible(&f, &r)?.is_counterexample())
}

// ---- scenario catalog ----

#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub seeming: Option<bool>,
    pub divisible: Option<bool>,
    pub counterexample: Option<bool>,
    pub predicted_sp: Option<bool>,
    pub probe_clean: Option<bool>,
    pub oracle_hom_count: Option<u64>,
    pub counterexample_factor: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub description: String,
    pub ring: Ring,
    pub modules: Vec<FPModule>,
    pub homs: Vec<ModuleHom>,
    pub r: Option<RingElement>,
    pub expected: Expected,
}

pub const SCENARIO_NAMES: [&str; 5] = [
    "prop-thomas-basic",
    "step2-minimal",
    "vnr-product",
    "principal-chain",
    "product-split",
];

/// Build a named scenario from the documented catalog.
pub fn build_scenario(name: &str) -> Result<Scenario> {
    let budget = Budget::default();
    match name {
        "prop-thomas-basic" => {
            let ring = Ring::Integers;
            let m = FPModule::cyclic(ring.clone(), ring.from_int(9));
            let n = FPModule::cyclic(ring.clone(), ring.from_int(27));
            let f = ModuleHom::new(
                m.clone(),
                n.clone(),
                RingMatrix::from_ints(ring.clone(), &[&[9]]),
            )?;
            Ok(Scenario {
                name: name.into(),
                description: "Multiplication by 9 from Z/9 to Z/27 with r = 3: over the integers \
                              a prime divides a map exactly when it seems to"
                    .into(),
                ring: ring.clone(),
                modules: vec![m, n],
                homs: vec![f],
                r: Some(ring.from_int(3)),
                expected: Expected {
                    seeming: Some(true),
                    divisible: Some(true),
                    counterexample: Some(false),
                    ..Expected::default()
                },
            })
        }
        "step2-minimal" => {
            let ring = crate::ring::parse_ring("GF(2)[x,y]/(x^2,xy,y^2)")?;
            let x = RingElement::Vector(vec![0, 1, 0]);
            let y = RingElement::Vector(vec![0, 0, 1]);
            let instance = local_counterexample(&ring, &x, &y, &budget)?;
            Ok(Scenario {
                name: name.into(),
                description: "The 8-element local ring with 2-dimensional m/m^2: multiplication \
                              by x from R/(y) to R seems divisible by x but is not"
                    .into(),
                ring,
                modules: vec![instance.f.source.clone(), instance.f.target.clone()],
                homs: vec![instance.f],
                r: Some(instance.r),
                expected: Expected {
                    seeming: Some(true),
                    divisible: Some(false),
                    counterexample: Some(true),
                    oracle_hom_count: Some(4),
                    predicted_sp: Some(false),
                    ..Expected::default()
                },
            })
        }
        "vnr-product" => {
            let ring = crate::ring::parse_ring("GF(2) x GF(3) x GF(5)")?;
            Ok(Scenario {
                name: name.into(),
                description: "A product of fields: every element is a unit times an idempotent, \
                              so no counterexample can exist"
                    .into(),
                ring,
                modules: vec![],
                homs: vec![],
                r: None,
                expected: Expected {
                    predicted_sp: Some(true),
                    probe_clean: Some(true),
                    ..Expected::default()
                },
            })
        }
        "principal-chain" => {
            let ring = crate::ring::parse_ring("Z/4 x GF(2)[x]/(x^3)")?;
            Ok(Scenario {
                name: name.into(),
                description: "Both factors are local with principal maximal ideal, so seeming \
                              divisibility and divisibility coincide"
                    .into(),
                ring,
                modules: vec![],
                homs: vec![],
                r: None,
                expected: Expected {
                    predicted_sp: Some(true),
                    probe_clean: Some(true),
                    ..Expected::default()
                },
            })
        }
        "product-split" => {
            let ring = crate::ring::parse_ring("Z/4 x GF(2)[x,y]/(x^2,xy,y^2)")?;
            let classification = classify_finite_ring(&ring, &budget)?;
            let (fi, factor) = classification
                .factors
                .iter()
                .enumerate()
                .find(|(_, f)| !f.is_principal)
                .ok_or_else(|| Error::Internal("expected a non-principal factor".into()))?;
            let m2 = factor.max_ideal_squared(&ring);
            let t = factor
                .max_ideal
                .iter()
                .find(|t| !m2.contains(*t))
                .cloned()
                .ok_or_else(|| Error::Internal("no t outside m^2".into()))?;
            let ideal_t = factor.principal_ideal(&ring, &t);
            let y = factor
                .max_ideal
                .iter()
                .find(|y| !ideal_t.contains(*y) && !m2.contains(*y))
                .cloned()
                .ok_or_else(|| Error::Internal("no y outside (t) and m^2".into()))?;
            let instance = embedded_counterexample(&ring, factor, &t, &y)?;
            Ok(Scenario {
                name: name.into(),
                description: "A principal factor times a non-principal one: the componentwise \
                              verdict pins the counterexample to the non-principal factor"
                    .into(),
                ring,
                modules: vec![instance.f.source.clone(), instance.f.target.clone()],
                homs: vec![instance.f],
                r: Some(instance.r),
                expected: Expected {
                    seeming: Some(true),
                    divisible: Some(false),
                    counterexample: Some(true),
                    predicted_sp: Some(false),
                    counterexample_factor: Some(fi),
                    ..Expected::default()
                },
            })
        }
        other => Err(Error::Parse(format!(
            "unknown scenario {other:?}; known: {}",
            SCENARIO_NAMES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring;

    #[test]
    fn classify_z12() {
        let ring = Ring::IntegersMod(12);
        let c = classify_finite_ring(&ring, &Budget::default()).unwrap();
        assert_eq!(c.factors.len(), 2);
        let mut sizes: Vec<usize> = c.factors.iter().map(|f| f.elements.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![3, 4]);
        assert!(c.predicted_sp);
    }

    #[test]
    fn classify_non_principal_table_ring() {
        let ring = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap();
        let c = classify_finite_ring(&ring, &Budget::default()).unwrap();
        assert_eq!(c.factors.len(), 1);
        let f = &c.factors[0];
        assert!(!f.is_principal);
        assert!(!f.is_field);
        // m = (x, y) needs two generators.
        assert_eq!(f.max_ideal_gens.len(), 2);
        assert!(!c.predicted_sp);
    }

    #[test]
    fn classify_gf4_is_a_field() {
        let ring = parse_ring("GF(2)[x]/(x^2+x+1)").unwrap();
        let c = classify_finite_ring(&ring, &Budget::default()).unwrap();
        assert_eq!(c.factors.len(), 1);
        assert!(c.factors[0].is_field);
        assert!(c.factors[0].is_principal);
        assert!(c.predicted_sp);
    }

    #[test]
    fn step2_on_minimal_ring() {
        let ring = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap();
        let x = RingElement::Vector(vec![0, 1, 0]);
        let y = RingElement::Vector(vec![0, 0, 1]);
        let instance = local_counterexample(&ring, &x, &y, &Budget::default()).unwrap();
        let cmp = seeming_vs_divisible(&instance.f, &instance.r).unwrap();
        assert!(cmp.is_counterexample());
    }

    #[test]
    fn step2_rejects_principal_ring() {
        // Z/4 is principal: m = (2), so no valid y exists.
        let ring = Ring::IntegersMod(4);
        let err = local_counterexample(
            &ring,
            &ring.from_int(2),
            &ring.from_int(2),
            &Budget::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Hypothesis(_)));
    }

    #[test]
    fn probe_z8_clean() {
        let ring = Ring::IntegersMod(8);
        let opts = ProbeOptions {
            trials: 50,
            seed: 7,
            ..ProbeOptions::default()
        };
        let verdict = probe_ring(&ring, &opts, &Budget::default()).unwrap();
        assert!(verdict.counterexample.is_none());
    }

    #[test]
    fn probe_finds_deterministic_counterexample() {
        let ring = parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap();
        let opts = ProbeOptions {
            trials: 10,
            seed: 1,
            ..ProbeOptions::default()
        };
        let verdict = probe_ring(&ring, &opts, &Budget::default()).unwrap();
        let record = verdict.counterexample.expect("counterexample expected");
        assert!(matches!(record.phase, ProbePhase::Deterministic { .. }));
    }

    #[test]
    fn probe_field_is_trivially_clean() {
        let ring = Ring::PrimeField(3);
        let opts = ProbeOptions {
            trials: 20,
            seed: 3,
            ..ProbeOptions::default()
        };
        let verdict = probe_ring(&ring, &opts, &Budget::default()).unwrap();
        assert!(verdict.counterexample.is_none());
    }

    #[test]
    fn product_counterexample_splits_through_bad_factor() {
        let scenario = build_scenario("product-split").unwrap();
        let ring = scenario.ring.clone();
        let budget = Budget::default();
        let c = classify_finite_ring(&ring, &budget).unwrap();
        let opts = ProbeOptions {
            trials: 5,
            seed: 2,
            ..ProbeOptions::default()
        };
        let verdict = probe_ring(&ring, &opts, &budget).unwrap();
        let record = verdict.counterexample.expect("counterexample expected");
        let mut hits = Vec::new();
        for factor in &c.factors {
            hits.push(restrict_to_factor(&record, factor).unwrap());
        }
        // Exactly the non-principal factor carries the counterexample.
        for (factor, hit) in c.factors.iter().zip(&hits) {
            assert_eq!(*hit, !factor.is_principal);
        }
    }

    #[test]
    fn scenarios_build() {
        for name in SCENARIO_NAMES {
            let s = build_scenario(name).unwrap();
            assert_eq!(s.name, name);
        }
        assert!(build_scenario("nope").is_err());
    }
}
