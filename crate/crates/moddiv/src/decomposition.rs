//! Module classification over principal rings.
//!
//! Two independent routes that validate each other:
//! - `invariant_factors`: Smith normal form of the presentation over a
//!   Euclidean domain;
//! - `split_cyclic`: over a finite local principal ring R = Z/p^n or
//!   GF(q)[x]/(x^n), iteratively find an element `x` with `p^(m-1) x = 0` and
//!   `x` outside `pM`, split off the cyclic summand `R/p^(m-1)` it generates
//!   (self-injectivity of `R/p^(m-1)` made concrete as a retraction solve),
//!   and repeat until the remainder is free. The output carries explicit
//!   mutually inverse homs certifying the decomposition and a basis-lift
//!   certificate for the freeness of the remainder.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::{self, snf, solve_linear};
use crate::matrix::RingMatrix;
use crate::module::{enumerate_homs, Coords, FPModule, ModuleHom};
use crate::ring::{Ring, RingElement};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    /// Nontrivial diagonal entries of the Smith form, in divisibility order.
    pub factors: Vec<RingElement>,
    pub free_rank: usize,
}

/// Invariant factors of coker(relations) over Z or GF(p)[x].
pub fn invariant_factors(module: &FPModule) -> Result<InvariantFactors> {
    match module.ring {
        Ring::Integers | Ring::PolyOverPrimeField(_) => {}
        _ => {
            return Err(Error::Unsupported {
                op: "invariant_factors",
                ring: module.ring.descriptor(),
            })
        }
    }
    let nf = snf(&module.relations)?;
    let ring = &module.ring;
    let mut factors = Vec::new();
    let mut rank = 0usize;
    for i in 0..nf.d.rows.min(nf.d.cols) {
        let d = nf.d.get(i, i);
        if ring.is_zero(d) {
            break;
        }
        rank += 1;
        if !ring.is_unit(d) {
            factors.push(d.clone());
        }
    }
    Ok(InvariantFactors {
        factors,
        free_rank: module.gens - rank,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFactor {
    /// The summand is R/(p^exponent).
    pub exponent: u32,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    /// Generator indices of the remainder whose images form a basis of
    /// remainder/p.
    pub basis: Vec<usize>,
    /// The surjection from the free module on `basis` hits every generator.
    pub surjective: bool,
    /// Injectivity of the surjection mod p^k for k = 1..=n.
    pub injective_mod_pk: Vec<bool>,
}

impl FreenessCertificate {
    pub fn holds(&self) -> bool {
        self.surjective && self.injective_mod_pk.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub p: RingElement,
    pub n: u32,
    pub factors: Vec<CyclicFactor>,
    pub remainder: FPModule,
    pub free_rank: usize,
    /// The assembled direct sum of cyclic factors and remainder.
    pub sum: FPModule,
    /// Mutually inverse isomorphisms sum -> M and M -> sum.
    pub forward: ModuleHom,
    pub backward: ModuleHom,
    pub freeness: FreenessCertificate,
}

/// Additive closure of all ring multiples of the given coordinate columns.
fn span_set(ring: &Ring, dim: usize, columns: &[Coords]) -> Result<HashSet<Coords>> {
    let elems = ring.enumerate()?;
    let zero: Coords = vec![ring.zero(); dim];
    let mut gens: Vec<Coords> = Vec::new();
    for col in columns {
        for s in &elems {
            let g: Coords = col.iter().map(|e| ring.mul(s, e)).collect();
            if g != zero && !gens.contains(&g) {
                gens.push(g);
            }
        }
    }
    let mut span = HashSet::new();
    span.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in &gens {
            let w: Coords = v.iter().zip(g).map(|(a, b)| ring.add(a, b)).collect();
            if span.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    Ok(span)
}

fn pow_elem(ring: &Ring, e: &RingElement, k: u32) -> RingElement {
    let mut acc = ring.one();
    for _ in 0..k {
        acc = ring.mul(&acc, e);
    }
    acc
}

/// Check that the ring is Z/p^n or GF(q)[x]/(x^n) with maximal ideal (p).
fn validate_local_shape(ring: &Ring, p: &RingElement, n: u32) -> Result<()> {
    match (ring, p) {
        (Ring::IntegersMod(m), RingElement::Res(q)) => {
            if !crate::ring::is_prime_u64(*q) {
                return Err(Error::Hypothesis(format!("{q} is not prime")));
            }
            let mut acc: u128 = 1;
            for _ in 0..n {
                acc *= *q as u128;
            }
            if acc != *m as u128 {
                return Err(Error::Hypothesis(format!(
                    "Z/{m} is not Z/{q}^{n}; the splitting needs a local principal ring"
                )));
            }
            Ok(())
        }
        (Ring::PolyQuotient { modulus, .. }, RingElement::Poly(c)) => {
            let expected: Vec<u64> = (0..n).map(|_| 0).chain(std::iter::once(1)).collect();
            if *modulus != expected {
                return Err(Error::Hypothesis(format!(
                    "the modulus is not x^{n}; the splitting needs GF(q)[x]/(x^n)"
                )));
            }
            if *c != vec![0, 1] {
                return Err(Error::Hypothesis("p must be the class of x".into()));
            }
            Ok(())
        }
        _ => Err(Error::Hypothesis(format!(
            "ring {} is not of local principal shape Z/p^n or GF(q)[x]/(x^n)",
            ring.descriptor()
        ))),
    }
}

/// Decompose a finite module over Z/p^n or GF(q)[x]/(x^n) into cyclic
/// factors R/p^m (m < n) plus a remainder that is free; certified by an
/// explicit isomorphism pair.
pub fn split_cyclic(
    module: &FPModule,
    p: &RingElement,
    n: u32,
    budget: &Budget,
) -> Result<Decomposition> {
    let ring = module.ring.clone();
    validate_local_shape(&ring, p, n)?;
    let g = module.gens;

    // Accumulated splits: (exponent, inclusion column in M-coordinates, retraction row).
    let mut splits: Vec<(u32, Coords, RingMatrix)> = Vec::new();
    // Chain product of the complement projectors, mapping coordinates of the
    // current module into M-coordinates.
    let mut chain = RingMatrix::identity(ring.clone(), g);
    let mut current = module.clone();

    for m in 2..=n {
        let pm1 = pow_elem(&ring, p, m - 1);
        loop {
            let table = current.element_table(budget)?;
            // x in pA: the span of [p*I | relations].
            let mut pa_cols: Vec<Coords> = (0..g)
                .map(|i| {
                    let mut v = vec![ring.zero(); g];
                    v[i] = p.clone();
                    v
                })
                .collect();
            for j in 0..current.relations.cols {
                pa_cols.push(current.relations.col(j));
            }
            let pa_span = span_set(&ring, g, &pa_cols)?;

            let witness = table.reps.iter().find(|x| {
                let killed: Coords = x.iter().map(|e| ring.mul(&pm1, e)).collect();
                table.is_zero(&killed) && !pa_span.contains(*x)
            });
            let Some(x) = witness.cloned() else {
                break;
            };

            // Retraction h: current -> R/p^(m-1) with h(x) = 1; existence is
            // the concrete form of self-injectivity of R/p^(m-1).
            let h = solve_retraction(&current, &x, &pm1)?;

            // Complement presentation: generators (I - x h) e_i, relations =
            // kernel of [P | relations].
            let x_col = RingMatrix::from_cols(ring.clone(), g, &[x.clone()]);
            let proj = RingMatrix::identity(ring.clone(), g).sub(&x_col.mul(&h));
            let k = linalg::kernel(&proj.hstack(&current.relations))?;
            let mut rel_cols: Vec<Coords> = Vec::new();
            for j in 0..k.cols {
                let w: Coords = (0..g).map(|i| k.get(i, j).clone()).collect();
                if w.iter().any(|e| !ring.is_zero(e)) && !rel_cols.contains(&w) {
                    rel_cols.push(w);
                }
            }
            let complement = FPModule::new(
                ring.clone(),
                RingMatrix::from_cols(ring.clone(), g, &rel_cols),
            )?;

            // Record the split with M-level data.
            let incl: Coords = chain.apply(&x);
            splits.push((m - 1, incl, h));
            chain = chain.mul(&proj);
            current = complement;
        }
    }

    let remainder = current;
    let freeness = freeness_certificate(&remainder, p, n, budget)?;
    if !freeness.holds() {
        return Err(Error::Internal(
            "splitting terminated but the remainder failed its freeness certificate".into(),
        ));
    }
    let free_rank = freeness.basis.len();

    // Assemble the certified isomorphism.
    let mut summands: Vec<FPModule> = splits
        .iter()
        .map(|(e, _, _)| FPModule::cyclic(ring.clone(), pow_elem(&ring, p, *e)))
        .collect();
    summands.push(remainder.clone());
    let sum = FPModule::direct_sum(&summands)?;

    let mut forward_cols: Vec<Coords> = splits.iter().map(|(_, incl, _)| incl.clone()).collect();
    for j in 0..g {
        forward_cols.push(chain.col(j));
    }
    let forward = ModuleHom::new(
        sum.clone(),
        module.clone(),
        RingMatrix::from_cols(ring.clone(), g, &forward_cols),
    )?;

    let mut backward_rows: Vec<RingMatrix> = splits.iter().map(|(_, _, h)| h.clone()).collect();
    backward_rows.push(RingMatrix::identity(ring.clone(), g));
    let mut backward_matrix = backward_rows.remove(0);
    for r in backward_rows {
        backward_matrix = backward_matrix.vstack(&r);
    }
    let backward = ModuleHom::new(module.clone(), sum.clone(), backward_matrix)?;

    // Certificate check: both composites are identities and both maps are
    // well defined.
    if !forward.is_well_defined()? || !backward.is_well_defined()? {
        return Err(Error::Internal(
            "decomposition maps are not well defined".into(),
        ));
    }
    let id_m = ModuleHom::identity(module);
    let id_sum = ModuleHom::identity(&sum);
    if !forward.compose_after(&backward)?.equals(&id_m)? {
        return Err(Error::Internal(
            "forward ∘ backward is not the identity".into(),
        ));
    }
    if !backward.compose_after(&forward)?.equals(&id_sum)? {
        return Err(Error::Internal(
            "backward ∘ forward is not the identity".into(),
        ));
    }

    // Multiset of cyclic factors.
    let mut exps: Vec<u32> = splits.iter().map(|(e, _, _)| *e).collect();
    exps.sort();
    let mut factors: Vec<CyclicFactor> = Vec::new();
    for e in exps {
        match factors.last_mut() {
            Some(f) if f.exponent == e => f.multiplicity += 1,
            _ => factors.push(CyclicFactor {
                exponent: e,
                multiplicity: 1,
            }),
        }
    }

    Ok(Decomposition {
        p: p.clone(),
        n,
        factors,
        remainder,
        free_rank,
        sum,
        forward,
        backward,
        freeness,
    })
}

/// Solve for h: module -> R/(q) with h(x) = 1, where q = p^(m-1).
fn solve_retraction(module: &FPModule, x: &[RingElement], q: &RingElement) -> Result<RingMatrix> {
    let ring = module.ring.clone();
    let g = module.gens;
    let nrel = module.relations.cols;
    // Unknowns: h (g), slack u (nrel), slack v (1).
    let ncols = g + nrel + 1;
    let nrows = nrel + 1;
    let mut a = RingMatrix::zero(ring.clone(), nrows, ncols);
    let mut b = RingMatrix::zero(ring.clone(), nrows, 1);
    for rho in 0..nrel {
        for i in 0..g {
            a.set(rho, i, module.relations.get(i, rho).clone());
        }
        a.set(rho, g + rho, ring.neg(q));
    }
    for i in 0..g {
        a.set(nrel, i, x[i].clone());
    }
    a.set(nrel, g + nrel, ring.neg(q));
    b.set(nrel, 0, ring.one());
    let sol = solve_linear(&a, &b)?.ok_or_else(|| {
        Error::Internal(
            "no retraction exists for the chosen witness; self-injectivity should guarantee one"
                .into(),
        )
    })?;
    Ok(RingMatrix::from_fn(ring, 1, g, |_, j| {
        sol.particular.get(j, 0).clone()
    }))
}

/// Basis-lift freeness certificate for remainder/p^n (= remainder, since
/// p^n = 0 in the ring): a basis of remainder/p lifts to a surjection that
/// is injective mod p^k for every k <= n.
fn freeness_certificate(
    remainder: &FPModule,
    p: &RingElement,
    n: u32,
    budget: &Budget,
) -> Result<FreenessCertificate> {
    let ring = remainder.ring.clone();
    let g = remainder.gens;
    let _ = budget;

    // Greedy basis of remainder/p from the generator images.
    let mod_p = remainder.quotient_by_ideal(&[p.clone()]);
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..g {
        let mut cols: Vec<Coords> = basis.iter().map(|&j| mod_p.gen_elem(j)).collect();
        for c in 0..mod_p.relations.cols {
            cols.push(mod_p.relations.col(c));
        }
        let span = span_set(&ring, g, &cols)?;
        if !span.contains(&mod_p.gen_elem(i)) {
            basis.push(i);
        }
    }

    let basis_matrix = RingMatrix::from_cols(
        ring.clone(),
        g,
        &basis
            .iter()
            .map(|&j| remainder.gen_elem(j))
            .collect::<Vec<_>>(),
    );

    // Surjectivity: every generator lies in the image.
    let gens_matrix = RingMatrix::identity(ring.clone(), g);
    let surjective =
        solve_linear(&basis_matrix.hstack(&remainder.relations), &gens_matrix)?.is_some();

    // Injectivity ladder: mod p^k, any w with B w = 0 must have every
    // coordinate divisible by p^k.
    let mut injective_mod_pk = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let pk = pow_elem(&ring, p, k);
        let pk_block = RingMatrix::identity(ring.clone(), g).scale(&pk);
        let kernel = linalg::kernel(&basis_matrix.hstack(&remainder.relations).hstack(&pk_block))?;
        let mut injective = true;
        for j in 0..kernel.cols {
            for i in 0..basis.len() {
                if ring.try_divide(kernel.get(i, j), &pk).is_none() {
                    injective = false;
                }
            }
        }
        injective_mod_pk.push(injective);
    }

    Ok(FreenessCertificate {
        basis,
        surjective,
        injective_mod_pk,
    })
}

/// Exact isomorphism decision: invariant factors over Euclidean domains,
/// exhaustive search for a bijective hom over finite rings.
pub fn modules_isomorphic(a: &FPModule, b: &FPModule, budget: &Budget) -> Result<bool> {
    if a.ring != b.ring {
        return Ok(false);
    }
    match a.ring {
        Ring::Integers | Ring::PolyOverPrimeField(_) => {
            Ok(invariant_factors(a)? == invariant_factors(b)?)
        }
        _ => {
            let ta = a.element_table(budget)?;
            let tb = b.element_table(budget)?;
            if ta.len() != tb.len() {
                return Ok(false);
            }
            for f in enumerate_homs(a, b, budget)? {
                let mut images = HashSet::new();
                for v in &ta.reps {
                    images.insert(tb.canonical(&f.apply(v)).clone());
                }
                if images.len() == tb.len() {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn invariant_factors_examples() {
        // coker diag(2,3) over Z: [6], rank 0.
        let m = FPModule::new(z(), RingMatrix::from_ints(z(), &[&[2, 0], &[0, 3]])).unwrap();
        let inv = invariant_factors(&m).unwrap();
        assert_eq!(inv.factors, vec![z().from_int(6)]);
        assert_eq!(inv.free_rank, 0);

        let m = FPModule::cyclic(z(), z().from_int(4));
        let inv = invariant_factors(&m).unwrap();
        assert_eq!(inv.factors, vec![z().from_int(4)]);

        let m = FPModule::free(z(), 2);
        let inv = invariant_factors(&m).unwrap();
        assert!(inv.factors.is_empty());
        assert_eq!(inv.free_rank, 2);
    }

    #[test]
    fn split_z2_plus_z8_over_z8() {
        let ring = Ring::IntegersMod(8);
        let m = FPModule::new(
            ring.clone(),
            RingMatrix::from_ints(ring.clone(), &[&[2, 0], &[0, 8]]),
        )
        .unwrap();
        let dec = split_cyclic(&m, &ring.from_int(2), 3, &Budget::default()).unwrap();
        assert_eq!(
            dec.factors,
            vec![CyclicFactor {
                exponent: 1,
                multiplicity: 1
            }]
        );
        assert_eq!(dec.free_rank, 1);
        assert!(dec.freeness.holds());
    }

    #[test]
    fn split_free_module_has_no_factors() {
        let ring = Ring::IntegersMod(8);
        let m = FPModule::free(ring.clone(), 2);
        let dec = split_cyclic(&m, &ring.from_int(2), 3, &Budget::default()).unwrap();
        assert!(dec.factors.is_empty());
        assert_eq!(dec.free_rank, 2);
    }

    #[test]
    fn split_over_poly_quotient() {
        // F2[x]/(x) ⊕ F2[x]/(x^2) over F2[x]/(x^2): one R/(x) factor, free rank 1.
        let ring = crate::ring::parse_ring("GF(2)[x]/(x^2)").unwrap();
        let x = RingElement::Poly(vec![0, 1]);
        let m = FPModule::new(
            ring.clone(),
            RingMatrix::from_cols(
                ring.clone(),
                2,
                &[
                    vec![x.clone(), ring.zero()],
                    vec![ring.zero(), ring.mul(&x, &x)],
                ],
            ),
        )
        .unwrap();
        let dec = split_cyclic(&m, &x, 2, &Budget::default()).unwrap();
        assert_eq!(
            dec.factors,
            vec![CyclicFactor {
                exponent: 1,
                multiplicity: 1
            }]
        );
        assert_eq!(dec.free_rank, 1);
    }

    #[test]
    fn isomorphic_crt_and_not() {
        let budget = Budget::default();
        let z6 = FPModule::cyclic(z(), z().from_int(6));
        let z2z3 = FPModule::new(z(), RingMatrix::from_ints(z(), &[&[2, 0], &[0, 3]])).unwrap();
        assert!(modules_isomorphic(&z6, &z2z3, &budget).unwrap());

        let z4 = FPModule::cyclic(z(), z().from_int(4));
        let z2z2 = FPModule::new(z(), RingMatrix::from_ints(z(), &[&[2, 0], &[0, 2]])).unwrap();
        assert!(!modules_isomorphic(&z4, &z2z2, &budget).unwrap());
    }

    #[test]
    fn isomorphic_over_finite_ring_different_presentations() {
        let ring = Ring::IntegersMod(4);
        let budget = Budget::default();
        let a = FPModule::cyclic(ring.clone(), ring.from_int(2));
        let b = FPModule::new(
            ring.clone(),
            RingMatrix::from_ints(ring.clone(), &[&[2, 4]]),
        )
        .unwrap();
        assert!(modules_isomorphic(&a, &b, &budget).unwrap());
    }

    #[test]
    fn split_certificate_composes_to_identity() {
        let ring = Ring::IntegersMod(9);
        // coker [[3, 0], [3, 9]] over Z/9.
        let m = FPModule::new(
            ring.clone(),
            RingMatrix::from_ints(ring.clone(), &[&[3, 0], &[3, 9]]),
        )
        .unwrap();
        let dec = split_cyclic(&m, &ring.from_int(3), 2, &Budget::default()).unwrap();
        // The constructor already verifies both composites; spot-check the
        // factor count against the element count.
        let budget = Budget::default();
        let size_m = m.element_table(&budget).unwrap().len();
        let size_sum = dec.sum.element_table(&budget).unwrap().len();
        assert_eq!(size_m, size_sum);
    }
}
