//! The homological route to divisibility.
//!
//! The two-term complex `[M --r--> M]` (degrees 1, 0) has homology `M/rM` in
//! degree 0 and the torsion `M[r]` in degree 1. A hom `f` induces maps on
//! both, and for a non-zero divisor `r`:
//! - `f` is seemingly divisible by `r` iff both induced maps vanish,
//! - `f` is divisible by `r` iff the chain map is null-homotopic, which is
//!   the same linear problem as `divide`,
//! - when both homology maps vanish, the remaining obstruction is a class in
//!   `Ext^1_{R/r}(M/rM, N[r])`, represented here as an explicit cocycle that
//!   is zero exactly when a divisor exists.
//!
//! The obstruction cocycle is concrete: choose `W` with `F = r*W + rel_N*Z`
//! (possible since the image clause holds); for each source relation `a`, the
//! vector `W*a` is r-torsion in `N` (because `f` is well defined), and it is
//! zero in `N` up to a correction exactly when `W` can be repaired to a well
//! defined divisor. Expressing `W*a` in the torsion generators of `N` gives a
//! matrix over `R/r`; killing the r-torsion of the source is precisely the
//! cocycle condition, and the class is zero iff the coboundary equation is
//! solvable over `R/r`.

use crate::divisibility::{divide, DivisionCertificate};
use crate::error::{Error, Result};
use crate::linalg::{self, solve_linear};
use crate::matrix::RingMatrix;
use crate::module::{FPModule, ModuleHom};
use crate::poly::{self, FpPoly};
use crate::ring::{Ring, RingElement};
use num_traits::{Signed, ToPrimitive};

/// The complex `[module --r--> module]` in degrees 1 and 0.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    pub module: FPModule,
    pub r: RingElement,
}

impl TwoTermComplex {
    pub fn new(module: FPModule, r: RingElement) -> Self {
        assert!(module.ring.contains(&r), "r outside the module's ring");
        TwoTermComplex { module, r }
    }

    /// Degree-0 homology: M/rM.
    pub fn h0(&self) -> FPModule {
        self.module.quotient_by_ideal(&[self.r.clone()])
    }

    /// Degree-1 homology: M[r], presented on its own generators together
    /// with the embedding of those generators into M.
    pub fn h1(&self) -> Result<(FPModule, RingMatrix)> {
        self.module.torsion_submodule(&self.r)
    }
}

/// A chain map between two cones of multiplication by the same `r`; both
/// components are the same hom, which automatically commutes with the
/// differentials.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub f: ModuleHom,
    pub r: RingElement,
}

impl ChainMap {
    pub fn induced(&self) -> Result<HomologyMaps> {
        homology_maps(&self.f, &self.r)
    }
}

#[derive(Clone, Debug)]
pub struct HomologyMaps {
    /// Induced map M/rM -> N/rN (same matrix as f).
    pub h0: ModuleHom,
    /// Induced map M[r] -> N[r] in torsion-generator coordinates.
    pub h1: ModuleHom,
    /// Generators of M[r] as columns in M-coordinates.
    pub source_torsion: RingMatrix,
    /// Generators of N[r] as columns in N-coordinates.
    pub target_torsion: RingMatrix,
    /// Whether the cone of multiplication models the quotient coefficients,
    /// i.e. whether `r` is a non-zero divisor.
    pub cone_applicable: bool,
}

impl HomologyMaps {
    pub fn h0_zero(&self) -> Result<bool> {
        self.h0.is_zero_hom()
    }

    pub fn h1_zero(&self) -> Result<bool> {
        self.h1.is_zero_hom()
    }
}

/// The two induced maps on homology of the cones.
pub fn homology_maps(f: &ModuleHom, r: &RingElement) -> Result<HomologyMaps> {
    if !f.is_well_defined()? {
        return Err(Error::Hypothesis("hom is not well defined".into()));
    }
    let ring = f.ring().clone();
    assert!(ring.contains(r), "r outside the hom's ring");

    let h0 = ModuleHom::new(
        f.source.quotient_by_ideal(&[r.clone()]),
        f.target.quotient_by_ideal(&[r.clone()]),
        f.matrix.clone(),
    )?;

    let (src_t, src_embed) = f.source.torsion_submodule(r)?;
    let (tgt_t, tgt_embed) = f.target.torsion_submodule(r)?;
    // Images of the source torsion generators, expressed in the target
    // torsion generators: solve [U_N | rel_N] (c; z) = F * U_M.
    let images = f.matrix.mul(&src_embed);
    let combined = tgt_embed.hstack(&f.target.relations);
    let sol = solve_linear(&combined, &images)?.ok_or_else(|| {
        Error::Internal(
            "torsion image could not be expressed in the target's torsion generators; \
             this contradicts f(M[r]) ⊆ N[r] for a well-defined f"
                .into(),
        )
    })?;
    let c = RingMatrix::from_fn(ring.clone(), tgt_t.gens, src_t.gens, |i, j| {
        sol.particular.get(i, j).clone()
    });
    let h1 = ModuleHom::new(src_t, tgt_t, c)?;

    Ok(HomologyMaps {
        h0,
        h1,
        source_torsion: src_embed,
        target_torsion: tgt_embed,
        cone_applicable: !ring.is_zero_divisor(r),
    })
}

fn require_non_zero_divisor(ring: &Ring, r: &RingElement) -> Result<()> {
    if ring.is_zero_divisor(r) {
        return Err(Error::Hypothesis(format!(
            "r = {} is a zero divisor in {}; the derived-category criterion needs a non-zero divisor",
            ring.display_elem(r),
            ring.descriptor()
        )));
    }
    Ok(())
}

/// Solve the homotopy equation `f = r*h` for a non-zero divisor `r`.
///
/// This is the same linear system as `divide`; the two must agree on every
/// instance.
pub fn null_homotopy(f: &ModuleHom, r: &RingElement) -> Result<Option<ModuleHom>> {
    require_non_zero_divisor(f.ring(), r)?;
    Ok(match divide(f, r)? {
        DivisionCertificate::Divisible { divisor } => Some(divisor),
        DivisionCertificate::NotDivisible { .. } => None,
    })
}

#[derive(Clone, Debug)]
pub enum ExtClass {
    Zero,
    /// A cocycle matrix over R/r (torsion coordinates x source relations),
    /// reduced against the coboundary space.
    Nonzero {
        cocycle: RingMatrix,
    },
    NotComputed {
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub struct ObstructionReport {
    pub h0_zero: bool,
    pub h1_zero: bool,
    /// The homotopy `h` with `f = r*h`, when one exists.
    pub null_homotopy: Option<ModuleHom>,
    pub ext_class: ExtClass,
}

impl ObstructionReport {
    pub fn class_is_zero(&self) -> Option<bool> {
        match &self.ext_class {
            ExtClass::Zero => Some(true),
            ExtClass::Nonzero { .. } => Some(false),
            ExtClass::NotComputed { .. } => None,
        }
    }
}

/// Quotient coefficients R/r for the supported base rings.
enum QuotientMap {
    IntMod(u64),
    PolyMod { p: u64, modulus: FpPoly },
}

impl QuotientMap {
    fn for_ring(ring: &Ring, r: &RingElement) -> Option<QuotientMap> {
        match (ring, r) {
            (Ring::Integers, RingElement::Int(n)) => {
                let m = n.abs().to_u64()?;
                (m >= 2).then_some(QuotientMap::IntMod(m))
            }
            (Ring::PolyOverPrimeField(p), RingElement::Poly(c)) => {
                if c.len() < 2 {
                    return None;
                }
                Some(QuotientMap::PolyMod {
                    p: *p,
                    modulus: poly::monic(c, *p),
                })
            }
            _ => None,
        }
    }

    fn ring(&self) -> Ring {
        match self {
            QuotientMap::IntMod(n) => Ring::IntegersMod(*n),
            QuotientMap::PolyMod { p, modulus } => Ring::PolyQuotient {
                p: *p,
                modulus: modulus.clone(),
            },
        }
    }

    fn reduce(&self, e: &RingElement) -> RingElement {
        match (self, e) {
            (QuotientMap::IntMod(n), RingElement::Int(x)) => {
                use num_integer::Integer;
                let m = x.mod_floor(&num_bigint::BigInt::from(*n));
                RingElement::Res(m.to_u64().expect("reduced residue fits u64"))
            }
            (QuotientMap::PolyMod { p, modulus }, RingElement::Poly(c)) => {
                RingElement::Poly(poly::rem(c, modulus, *p))
            }
            _ => panic!("element does not match the quotient map"),
        }
    }

    fn reduce_matrix(&self, m: &RingMatrix) -> RingMatrix {
        RingMatrix::from_fn(self.ring(), m.rows, m.cols, |i, j| self.reduce(m.get(i, j)))
    }
}

/// Compute the obstruction class of a seemingly divisible map.
///
/// Preconditions: `r` a non-zero divisor; both homology maps zero (otherwise
/// the class is reported as not computed). Coefficients `R/r` are available
/// for the integers and for GF(p)[x]; over every other ring class a non-unit
/// non-zero divisor does not arise in the supported finite settings and the
/// class is reported as not computed.
pub fn obstruction_class(f: &ModuleHom, r: &RingElement) -> Result<ObstructionReport> {
    let ring = f.ring().clone();
    require_non_zero_divisor(&ring, r)?;
    let maps = homology_maps(f, r)?;
    let h0_zero = maps.h0_zero()?;
    let h1_zero = maps.h1_zero()?;
    let homotopy = null_homotopy(f, r)?;

    if !(h0_zero && h1_zero) {
        return Ok(ObstructionReport {
            h0_zero,
            h1_zero,
            null_homotopy: homotopy,
            ext_class: ExtClass::NotComputed {
                reason: "homology maps nonzero".into(),
            },
        });
    }
    if ring.is_unit(r) {
        // R/r is the zero ring; nothing can obstruct.
        return Ok(ObstructionReport {
            h0_zero,
            h1_zero,
            null_homotopy: homotopy,
            ext_class: ExtClass::Zero,
        });
    }
    let Some(q) = QuotientMap::for_ring(&ring, r) else {
        return Ok(ObstructionReport {
            h0_zero,
            h1_zero,
            null_homotopy: homotopy,
            ext_class: ExtClass::NotComputed {
                reason: "unsupported coefficient ring".into(),
            },
        });
    };

    let ext_class = compute_ext_class(f, r, &q, &maps)?;
    // Soundness: the class vanishes exactly when a homotopy exists.
    let zero = matches!(ext_class, ExtClass::Zero);
    if zero != homotopy.is_some() {
        return Err(Error::Internal(format!(
            "obstruction class verdict ({zero}) disagrees with the homotopy solver ({})",
            homotopy.is_some()
        )));
    }
    Ok(ObstructionReport {
        h0_zero,
        h1_zero,
        null_homotopy: homotopy,
        ext_class,
    })
}

fn compute_ext_class(
    f: &ModuleHom,
    r: &RingElement,
    q: &QuotientMap,
    maps: &HomologyMaps,
) -> Result<ExtClass> {
    let ring = f.ring().clone();
    let s_ring = q.ring();
    let t = f.target.gens;
    let s = f.source.gens;
    let nrel_m = f.source.relations.cols;

    // W with F = r*W + rel_N*Z, one solve for all generator columns.
    let r_block = RingMatrix::identity(ring.clone(), t).scale(r);
    let combined = r_block.hstack(&f.target.relations);
    let sol = solve_linear(&combined, &f.matrix)?.ok_or_else(|| {
        Error::Internal("image clause held but the lift W could not be computed".into())
    })?;
    let w = RingMatrix::from_fn(ring.clone(), t, s, |i, j| sol.particular.get(i, j).clone());

    // Torsion presentation of the target, shared with the homology data.
    let tgt_embed = &maps.target_torsion; // t x k
    let k = tgt_embed.cols;
    let rel_t_bar = q.reduce_matrix(&maps.h1.target.relations); // k x m_t over S
    let m_t = rel_t_bar.cols;

    // Cocycle phi: express W*a_rho in the torsion generators, then reduce mod r.
    let torsion_images = w.mul(&f.source.relations); // t x nrel_m
    let expr = solve_linear(&tgt_embed.hstack(&f.target.relations), &torsion_images)?.ok_or_else(
        || {
            Error::Internal(
                "W*a is r-torsion but could not be expressed in the torsion generators".into(),
            )
        },
    )?;
    let phi = RingMatrix::from_fn(s_ring.clone(), k, nrel_m, |i, j| {
        q.reduce(expr.particular.get(i, j))
    });

    // Cocycle condition: phi composed with the syzygies of rel_M over S is
    // zero in the torsion module. This is exactly the torsion clause of
    // seeming divisibility; a failure means an internal inconsistency.
    let rel_m_bar = q.reduce_matrix(&f.source.relations); // s x nrel_m over S
    let d2 = linalg::kernel(&rel_m_bar)?; // nrel_m x c
    let composed = phi.mul(&d2); // k x c
    if !linalg::in_column_span(&rel_t_bar, &composed)? {
        return Err(Error::Internal(
            "obstruction cocycle fails the cocycle condition".into(),
        ));
    }

    // Zero test: phi = psi . d1 + rel_T * lambda for some psi: S^s -> T.
    // Unknowns: psi (k*s), lambda (m_t per source relation).
    let psi_cols = k * s;
    let lam_off = psi_cols;
    let ncols = lam_off + m_t * nrel_m;
    let nrows = k * nrel_m;
    let mut a = RingMatrix::zero(s_ring.clone(), nrows, ncols);
    let mut b = RingMatrix::zero(s_ring.clone(), nrows, 1);
    for rho in 0..nrel_m {
        for kappa in 0..k {
            let row = rho * k + kappa;
            for j in 0..s {
                a.set(row, j * k + kappa, rel_m_bar.get(j, rho).clone());
            }
            for mu in 0..m_t {
                a.set(
                    row,
                    lam_off + rho * m_t + mu,
                    rel_t_bar.get(kappa, mu).clone(),
                );
            }
            b.set(row, 0, phi.get(kappa, rho).clone());
        }
    }
    if solve_linear(&a, &b)?.is_some() {
        return Ok(ExtClass::Zero);
    }

    // Nonzero: normalize the representative against the coboundary space.
    let reduced_vec = linalg::reduce_mod_span(&a, &b)?;
    let cocycle = RingMatrix::from_fn(s_ring, k, nrel_m, |kappa, rho| {
        reduced_vec.get(rho * k + kappa, 0).clone()
    });
    Ok(ExtClass::Nonzero { cocycle })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisibility::is_seemingly_divisible;

    fn z() -> Ring {
        Ring::Integers
    }

    #[test]
    fn homology_of_mult_2_on_z() {
        let free = FPModule::free(z(), 1);
        let f = ModuleHom::new(free.clone(), free, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        let maps = homology_maps(&f, &z().from_int(2)).unwrap();
        assert!(maps.h0_zero().unwrap());
        assert!(maps.h1_zero().unwrap());
        assert!(maps.cone_applicable);
        // H1 is a map out of the zero module.
        assert_eq!(maps.h1.source.gens, 0);
    }

    #[test]
    fn homology_of_z2_to_z4_detects_torsion_failure() {
        let src = FPModule::cyclic(z(), z().from_int(2));
        let tgt = FPModule::cyclic(z(), z().from_int(4));
        let f = ModuleHom::new(src, tgt, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        let r = z().from_int(2);
        let maps = homology_maps(&f, &r).unwrap();
        assert!(maps.h0_zero().unwrap());
        assert!(!maps.h1_zero().unwrap());
        // Matches the seeming-divisibility clauses.
        let rep = is_seemingly_divisible(&f, &r).unwrap();
        assert_eq!(rep.image_divisible, maps.h0_zero().unwrap());
        assert_eq!(rep.kills_torsion, maps.h1_zero().unwrap());
    }

    #[test]
    fn homology_of_identity_on_z3() {
        let m = FPModule::cyclic(z(), z().from_int(3));
        let f = ModuleHom::identity(&m);
        let maps = homology_maps(&f, &z().from_int(3)).unwrap();
        // H0 = identity on Z/3, H1 = identity on Z/3: both nonzero.
        assert!(!maps.h0_zero().unwrap());
        assert!(!maps.h1_zero().unwrap());
    }

    #[test]
    fn null_homotopy_agrees_with_divide() {
        let free = FPModule::free(z(), 1);
        let f = ModuleHom::new(free.clone(), free, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        let h = null_homotopy(&f, &z().from_int(2)).unwrap().unwrap();
        assert_eq!(h.matrix, RingMatrix::from_ints(z(), &[&[1]]));

        let src = FPModule::cyclic(z(), z().from_int(2));
        let tgt = FPModule::cyclic(z(), z().from_int(4));
        let f = ModuleHom::new(src, tgt, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        assert!(null_homotopy(&f, &z().from_int(2)).unwrap().is_none());
    }

    #[test]
    fn null_homotopy_rejects_zero_divisors() {
        let ring = Ring::IntegersMod(4);
        let m = FPModule::free(ring.clone(), 1);
        let f = ModuleHom::identity(&m);
        assert!(matches!(
            null_homotopy(&f, &ring.from_int(2)),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn homotopy_exists_over_poly_quotient_source() {
        // f: F2[x]/(x^2) -> F2[x]/(x^2) over F2[x], 1 |-> x, r = x:
        // h = identity works since x*1 = x.
        let ring = Ring::PolyOverPrimeField(2);
        let x = RingElement::Poly(vec![0, 1]);
        let x2 = RingElement::Poly(vec![0, 0, 1]);
        let m = FPModule::cyclic(ring.clone(), x2);
        let f = ModuleHom::new(
            m.clone(),
            m,
            RingMatrix::new(ring.clone(), 1, 1, vec![x.clone()]),
        )
        .unwrap();
        let h = null_homotopy(&f, &x).unwrap().expect("homotopy exists");
        assert!(h.scale(&x).equals(&f).unwrap());
    }

    #[test]
    fn obstruction_vanishes_for_mult_4_by_4() {
        let free = FPModule::free(z(), 1);
        let f = ModuleHom::new(free.clone(), free, RingMatrix::from_ints(z(), &[&[4]])).unwrap();
        let rep = obstruction_class(&f, &z().from_int(4)).unwrap();
        assert!(rep.h0_zero && rep.h1_zero);
        assert_eq!(rep.class_is_zero(), Some(true));
        let h = rep.null_homotopy.expect("h exists");
        assert_eq!(h.matrix, RingMatrix::from_ints(z(), &[&[1]]));
    }

    #[test]
    fn obstruction_of_zero_map_is_zero() {
        let src = FPModule::cyclic(z(), z().from_int(6));
        let tgt = FPModule::cyclic(z(), z().from_int(9));
        let f = ModuleHom::zero(src, tgt).unwrap();
        let rep = obstruction_class(&f, &z().from_int(3)).unwrap();
        assert_eq!(rep.class_is_zero(), Some(true));
        assert!(rep.null_homotopy.unwrap().is_zero_hom().unwrap());
    }

    #[test]
    fn obstruction_not_computed_when_homology_nonzero() {
        let src = FPModule::cyclic(z(), z().from_int(2));
        let tgt = FPModule::cyclic(z(), z().from_int(4));
        let f = ModuleHom::new(src, tgt, RingMatrix::from_ints(z(), &[&[2]])).unwrap();
        let rep = obstruction_class(&f, &z().from_int(2)).unwrap();
        assert!(!rep.h1_zero);
        assert!(matches!(
            rep.ext_class,
            ExtClass::NotComputed { ref reason } if reason == "homology maps nonzero"
        ));
    }

    #[test]
    fn obstruction_zero_for_prime_r_on_seeming_instances() {
        // A seemingly divisible map over Z with prime r: class must vanish
        // and division must succeed.
        let m = FPModule::cyclic(z(), z().from_int(9));
        let n = FPModule::cyclic(z(), z().from_int(27));
        let f = ModuleHom::new(m, n, RingMatrix::from_ints(z(), &[&[9]])).unwrap();
        let r = z().from_int(3);
        assert!(is_seemingly_divisible(&f, &r).unwrap().verdict());
        let rep = obstruction_class(&f, &r).unwrap();
        assert_eq!(rep.class_is_zero(), Some(true));
        assert!(rep.null_homotopy.is_some());
    }
}
