//! Ring descriptors and exact element arithmetic.
//!
//! A [`Ring`] is a descriptor for one of the supported computable commutative
//! rings; a [`RingElement`] stores canonical coordinates relative to its ring,
//! so element equality is plain structural equality. Arithmetic on elements of
//! the wrong ring is a programming error and panics; everything reachable from
//! user input is validated when the input is parsed.

mod parse;

pub use parse::parse_ring;

use crate::error::{Error, Result};
use crate::poly::{self, FpPoly};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::sync::Arc;

/// Structure constants of a finite commutative algebra over Z/n.
///
/// `mul_table[i][j]` is the coordinate vector of `basis_i * basis_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableData {
    pub base_mod: u64,
    pub dim: usize,
    pub mul_table: Vec<Vec<Vec<u64>>>,
    pub one: Vec<u64>,
    pub basis_names: Vec<String>,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    /// The integers Z.
    Integers,
    /// Z/n for n >= 2.
    IntegersMod(u64),
    /// GF(p) for p prime.
    PrimeField(u64),
    /// The polynomial ring GF(p)[x].
    PolyOverPrimeField(u64),
    /// GF(p)[x]/(f) for a monic modulus f of degree >= 1 (ascending coefficients).
    PolyQuotient { p: u64, modulus: FpPoly },
    /// A finite product, flattened and indexed left to right; always >= 2 factors.
    Product(Vec<Ring>),
    /// A finite algebra given by structure constants.
    Table(Arc<TableData>),
}

/// Canonical coordinates of a ring element.
///
/// Two elements of the same ring are equal iff their coordinates are
/// identical; the derived `Ord` is the lexicographic canonical ordering used
/// for deterministic tie-breaking and enumeration throughout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    /// An integer (ring `Integers`).
    Int(BigInt),
    /// A residue in [0, n) (rings `IntegersMod`, `PrimeField`).
    Res(u64),
    /// Ascending coefficients, no trailing zeros (polynomial rings).
    Poly(FpPoly),
    /// Exactly `dim` coordinates in [0, base_mod) (table rings).
    Vector(Vec<u64>),
    /// One component per product factor.
    Tuple(Vec<RingElement>),
}

/// Inverse of `a` mod `n` for gcd(a, n) = 1 (extended Euclid; n need not be prime).
fn inv_mod_u64(a: u64, n: u64) -> u64 {
    poly::inv_mod(a, n)
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= n).unwrap_or(false) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl TableData {
    /// Multiply two coordinate vectors through the structure constants.
    pub fn mul_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.base_mod as u128;
        let mut out = vec![0u128; self.dim];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let c = (ai as u128 * bj as u128) % n;
                for (k, &t) in self.mul_table[i][j].iter().enumerate() {
                    out[k] = (out[k] + c * t as u128) % n;
                }
            }
        }
        out.into_iter().map(|v| v as u64).collect()
    }

    /// Verify commutativity, associativity and unitality on all basis
    /// triples / pairs. Reports the failing triple on error.
    pub fn check_axioms(&self) -> Result<()> {
        let d = self.dim;
        if self.mul_table.len() != d
            || self.mul_table.iter().any(|r| r.len() != d)
            || self
                .mul_table
                .iter()
                .flatten()
                .any(|v| v.len() != d || v.iter().any(|&c| c >= self.base_mod))
        {
            return Err(Error::Invariant(format!(
                "mulTable of {} is not a {d}x{d} array of length-{d} vectors below {}",
                self.label, self.base_mod
            )));
        }
        if self.one.len() != d {
            return Err(Error::Invariant(format!(
                "oneVector of {} has wrong length",
                self.label
            )));
        }
        let basis = |i: usize| -> Vec<u64> {
            let mut v = vec![0u64; d];
            v[i] = 1;
            v
        };
        for i in 0..d {
            if self.mul_coords(&self.one, &basis(i)) != basis(i) {
                return Err(Error::Invariant(format!(
                    "oneVector is not an identity on basis element {i}"
                )));
            }
            for j in 0..d {
                if self.mul_table[i][j] != self.mul_table[j][i] {
                    return Err(Error::Invariant(format!(
                        "mulTable is not commutative on the pair ({i}, {j})"
                    )));
                }
                for k in 0..d {
                    let left = self.mul_coords(&self.mul_coords(&basis(i), &basis(j)), &basis(k));
                    let right = self.mul_coords(&basis(i), &self.mul_coords(&basis(j), &basis(k)));
                    if left != right {
                        return Err(Error::Invariant(format!(
                            "mulTable is not associative on the triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

impl Ring {
    /// Construct a table ring, running the exhaustive axiom checks.
    pub fn table(data: TableData) -> Result<Ring> {
        if data.base_mod < 2 {
            return Err(Error::Invariant(
                "table ring base modulus must be >= 2".into(),
            ));
        }
        if data.dim == 0 {
            return Err(Error::Invariant("table ring dimension must be >= 1".into()));
        }
        data.check_axioms()?;
        Ok(Ring::Table(Arc::new(data)))
    }

    /// Construct a product, flattening nested products.
    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                Ring::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => Err(Error::Invariant("empty product ring".into())),
            1 => Ok(flat.pop().unwrap()),
            _ => Ok(Ring::Product(flat)),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            Ring::Integers => "Z".to_string(),
            Ring::IntegersMod(n) => format!("Z/{n}"),
            Ring::PrimeField(p) => format!("GF({p})"),
            Ring::PolyOverPrimeField(p) => format!("GF({p})[x]"),
            Ring::PolyQuotient { p, modulus } => {
                format!("GF({p})[x]/({})", poly::to_string(modulus, "x"))
            }
            Ring::Product(fs) => fs
                .iter()
                .map(Ring::descriptor)
                .collect::<Vec<_>>()
                .join(" x "),
            Ring::Table(t) => t.label.clone(),
        }
    }

    pub fn zero(&self) -> RingElement {
        match self {
            Ring::Integers => RingElement::Int(BigInt::zero()),
            Ring::IntegersMod(_) | Ring::PrimeField(_) => RingElement::Res(0),
            Ring::PolyOverPrimeField(_) | Ring::PolyQuotient { .. } => RingElement::Poly(vec![]),
            Ring::Product(fs) => RingElement::Tuple(fs.iter().map(Ring::zero).collect()),
            Ring::Table(t) => RingElement::Vector(vec![0; t.dim]),
        }
    }

    pub fn one(&self) -> RingElement {
        match self {
            Ring::Integers => RingElement::Int(BigInt::one()),
            Ring::IntegersMod(_) | Ring::PrimeField(_) => RingElement::Res(1),
            Ring::PolyOverPrimeField(_) | Ring::PolyQuotient { .. } => RingElement::Poly(vec![1]),
            Ring::Product(fs) => RingElement::Tuple(fs.iter().map(Ring::one).collect()),
            Ring::Table(t) => RingElement::Vector(t.one.clone()),
        }
    }

    /// Map an integer into the ring (n * 1).
    pub fn from_int(&self, n: i64) -> RingElement {
        match self {
            Ring::Integers => RingElement::Int(BigInt::from(n)),
            Ring::IntegersMod(m) | Ring::PrimeField(m) => RingElement::Res(
                BigInt::from(n)
                    .mod_floor(&BigInt::from(*m))
                    .try_into()
                    .unwrap(),
            ),
            Ring::PolyOverPrimeField(p) | Ring::PolyQuotient { p, .. } => {
                let c: u64 = BigInt::from(n)
                    .mod_floor(&BigInt::from(*p))
                    .try_into()
                    .unwrap();
                RingElement::Poly(poly::constant(c, *p))
            }
            Ring::Product(fs) => RingElement::Tuple(fs.iter().map(|f| f.from_int(n)).collect()),
            Ring::Table(t) => {
                let c: u64 = BigInt::from(n)
                    .mod_floor(&BigInt::from(t.base_mod))
                    .try_into()
                    .unwrap();
                let mut v = vec![0u64; t.dim];
                for (k, &o) in t.one.iter().enumerate() {
                    v[k] = ((c as u128 * o as u128) % t.base_mod as u128) as u64;
                }
                RingElement::Vector(v)
            }
        }
    }

    /// Whether `a` is a canonical element of this ring.
    pub fn contains(&self, a: &RingElement) -> bool {
        match (self, a) {
            (Ring::Integers, RingElement::Int(_)) => true,
            (Ring::IntegersMod(n), RingElement::Res(v)) => v < n,
            (Ring::PrimeField(p), RingElement::Res(v)) => v < p,
            (Ring::PolyOverPrimeField(p), RingElement::Poly(c)) => {
                c.last() != Some(&0) && c.iter().all(|&x| x < *p)
            }
            (Ring::PolyQuotient { p, modulus }, RingElement::Poly(c)) => {
                c.last() != Some(&0) && c.iter().all(|&x| x < *p) && c.len() < modulus.len()
            }
            (Ring::Product(fs), RingElement::Tuple(xs)) => {
                fs.len() == xs.len() && fs.iter().zip(xs).all(|(f, x)| f.contains(x))
            }
            (Ring::Table(t), RingElement::Vector(v)) => {
                v.len() == t.dim && v.iter().all(|&x| x < t.base_mod)
            }
            _ => false,
        }
    }

    fn expect_member<'a>(&self, a: &'a RingElement) -> &'a RingElement {
        assert!(
            self.contains(a),
            "element {a:?} does not belong to ring {}",
            self.descriptor()
        );
        a
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.expect_member(a);
        self.expect_member(b);
        match (self, a, b) {
            (Ring::Integers, RingElement::Int(x), RingElement::Int(y)) => RingElement::Int(x + y),
            (
                Ring::IntegersMod(n) | Ring::PrimeField(n),
                RingElement::Res(x),
                RingElement::Res(y),
            ) => RingElement::Res(((*x as u128 + *y as u128) % *n as u128) as u64),
            (
                Ring::PolyOverPrimeField(p) | Ring::PolyQuotient { p, .. },
                RingElement::Poly(x),
                RingElement::Poly(y),
            ) => RingElement::Poly(poly::add(x, y, *p)),
            (Ring::Product(fs), RingElement::Tuple(xs), RingElement::Tuple(ys)) => {
                RingElement::Tuple(
                    fs.iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(f, (x, y))| f.add(x, y))
                        .collect(),
                )
            }
            (Ring::Table(t), RingElement::Vector(x), RingElement::Vector(y)) => {
                RingElement::Vector(
                    x.iter()
                        .zip(y)
                        .map(|(&u, &v)| ((u as u128 + v as u128) % t.base_mod as u128) as u64)
                        .collect(),
                )
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        self.expect_member(a);
        match (self, a) {
            (Ring::Integers, RingElement::Int(x)) => RingElement::Int(-x),
            (Ring::IntegersMod(n) | Ring::PrimeField(n), RingElement::Res(x)) => {
                RingElement::Res(if *x == 0 { 0 } else { n - x })
            }
            (Ring::PolyOverPrimeField(p) | Ring::PolyQuotient { p, .. }, RingElement::Poly(x)) => {
                RingElement::Poly(poly::neg(x, *p))
            }
            (Ring::Product(fs), RingElement::Tuple(xs)) => {
                RingElement::Tuple(fs.iter().zip(xs).map(|(f, x)| f.neg(x)).collect())
            }
            (Ring::Table(t), RingElement::Vector(x)) => RingElement::Vector(
                x.iter()
                    .map(|&u| if u == 0 { 0 } else { t.base_mod - u })
                    .collect(),
            ),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.expect_member(a);
        self.expect_member(b);
        match (self, a, b) {
            (Ring::Integers, RingElement::Int(x), RingElement::Int(y)) => RingElement::Int(x * y),
            (
                Ring::IntegersMod(n) | Ring::PrimeField(n),
                RingElement::Res(x),
                RingElement::Res(y),
            ) => RingElement::Res(((*x as u128 * *y as u128) % *n as u128) as u64),
            (Ring::PolyOverPrimeField(p), RingElement::Poly(x), RingElement::Poly(y)) => {
                RingElement::Poly(poly::mul(x, y, *p))
            }
            (Ring::PolyQuotient { p, modulus }, RingElement::Poly(x), RingElement::Poly(y)) => {
                RingElement::Poly(poly::rem(&poly::mul(x, y, *p), modulus, *p))
            }
            (Ring::Product(fs), RingElement::Tuple(xs), RingElement::Tuple(ys)) => {
                RingElement::Tuple(
                    fs.iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(f, (x, y))| f.mul(x, y))
                        .collect(),
                )
            }
            (Ring::Table(t), RingElement::Vector(x), RingElement::Vector(y)) => {
                RingElement::Vector(t.mul_coords(x, y))
            }
            _ => unreachable!(),
        }
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        *a == self.zero()
    }

    pub fn is_one(&self, a: &RingElement) -> bool {
        *a == self.one()
    }

    /// Number of elements, or `None` for an infinite ring.
    pub fn size(&self) -> Option<BigUint> {
        match self {
            Ring::Integers | Ring::PolyOverPrimeField(_) => None,
            Ring::IntegersMod(n) | Ring::PrimeField(n) => Some(BigUint::from(*n)),
            Ring::PolyQuotient { p, modulus } => {
                Some(BigUint::from(*p).pow((modulus.len() - 1) as u32))
            }
            Ring::Product(fs) => {
                let mut acc = BigUint::one();
                for f in fs {
                    acc *= f.size()?;
                }
                Some(acc)
            }
            Ring::Table(t) => Some(BigUint::from(t.base_mod).pow(t.dim as u32)),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// All elements in the canonical (lexicographic-coordinate) order.
    pub fn enumerate(&self) -> Result<Vec<RingElement>> {
        let mut out = match self {
            Ring::Integers | Ring::PolyOverPrimeField(_) => {
                return Err(Error::InfiniteRing(self.descriptor()))
            }
            Ring::IntegersMod(n) | Ring::PrimeField(n) => {
                (0..*n).map(RingElement::Res).collect::<Vec<_>>()
            }
            Ring::PolyQuotient { p, modulus } => {
                let deg = modulus.len() - 1;
                coordinate_vectors(*p, deg)
                    .into_iter()
                    .map(|v| RingElement::Poly(poly::normalize(v)))
                    .collect()
            }
            Ring::Table(t) => coordinate_vectors(t.base_mod, t.dim)
                .into_iter()
                .map(RingElement::Vector)
                .collect(),
            Ring::Product(fs) => {
                let parts: Vec<Vec<RingElement>> =
                    fs.iter().map(Ring::enumerate).collect::<Result<_>>()?;
                let mut acc: Vec<Vec<RingElement>> = vec![vec![]];
                for part in &parts {
                    let mut next = Vec::with_capacity(acc.len() * part.len());
                    for prefix in &acc {
                        for el in part {
                            let mut v = prefix.clone();
                            v.push(el.clone());
                            next.push(v);
                        }
                    }
                    acc = next;
                }
                acc.into_iter().map(RingElement::Tuple).collect()
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        self.expect_member(a);
        match (self, a) {
            (Ring::Integers, RingElement::Int(x)) => x.abs().is_one(),
            (Ring::IntegersMod(n), RingElement::Res(x)) => x.gcd(n) == 1,
            (Ring::PrimeField(_), RingElement::Res(x)) => *x != 0,
            (Ring::PolyOverPrimeField(_), RingElement::Poly(c)) => c.len() == 1,
            (Ring::PolyQuotient { p, modulus }, RingElement::Poly(c)) => {
                poly::gcd(c, modulus, *p) == vec![1]
            }
            (Ring::Product(fs), RingElement::Tuple(xs)) => {
                fs.iter().zip(xs).all(|(f, x)| f.is_unit(x))
            }
            (Ring::Table(_), RingElement::Vector(_)) => self
                .enumerate()
                .expect("table rings are finite")
                .iter()
                .any(|b| self.is_one(&self.mul(a, b))),
            _ => unreachable!(),
        }
    }

    /// Whether `a` kills some nonzero element; 0 counts as a zero divisor
    /// (every supported ring is nonzero).
    pub fn is_zero_divisor(&self, a: &RingElement) -> bool {
        self.expect_member(a);
        match (self, a) {
            (Ring::Integers, RingElement::Int(x)) => x.is_zero(),
            (Ring::PolyOverPrimeField(_), RingElement::Poly(c)) => c.is_empty(),
            (Ring::PrimeField(_), RingElement::Res(x)) => *x == 0,
            (Ring::IntegersMod(n), RingElement::Res(x)) => x.gcd(n) != 1,
            (Ring::PolyQuotient { p, modulus }, RingElement::Poly(c)) => {
                poly::gcd(c, modulus, *p) != vec![1]
            }
            (Ring::Product(fs), RingElement::Tuple(xs)) => {
                fs.iter().zip(xs).any(|(f, x)| f.is_zero_divisor(x))
            }
            (Ring::Table(_), RingElement::Vector(_)) => {
                let zero = self.zero();
                self.enumerate()
                    .expect("table rings are finite")
                    .iter()
                    .any(|b| *b != zero && self.mul(a, b) == zero)
            }
            _ => unreachable!(),
        }
    }

    /// The multiplicative inverse when `a` is a unit.
    pub fn inverse(&self, a: &RingElement) -> Option<RingElement> {
        self.try_divide(&self.one(), a)
    }

    /// A `c` with `b * c = a`, or `None`; the smallest such `c` in the
    /// canonical element ordering.
    pub fn try_divide(&self, a: &RingElement, b: &RingElement) -> Option<RingElement> {
        self.expect_member(a);
        self.expect_member(b);
        match (self, a, b) {
            (Ring::Integers, RingElement::Int(x), RingElement::Int(y)) => {
                if y.is_zero() {
                    return x.is_zero().then(|| RingElement::Int(BigInt::zero()));
                }
                let (q, r) = x.div_rem(y);
                r.is_zero().then(|| RingElement::Int(q))
            }
            (Ring::PolyOverPrimeField(p), RingElement::Poly(x), RingElement::Poly(y)) => {
                if y.is_empty() {
                    return x.is_empty().then(|| RingElement::Poly(vec![]));
                }
                let (q, r) = poly::divmod(x, y, *p);
                r.is_empty().then(|| RingElement::Poly(q))
            }
            (
                Ring::IntegersMod(n) | Ring::PrimeField(n),
                RingElement::Res(x),
                RingElement::Res(y),
            ) => {
                // y c = x mod n is solvable iff gcd(y, n) divides x; the
                // solutions are c0 + k*(n/g), so the smallest lies in [0, n/g).
                let g = y.gcd(n);
                if x % g != 0 {
                    return None;
                }
                let n1 = n / g;
                let c = if n1 == 1 {
                    0
                } else {
                    let y1 = (y / g) % n1;
                    let x1 = (x / g) % n1;
                    ((x1 as u128 * inv_mod_u64(y1, n1) as u128) % n1 as u128) as u64
                };
                debug_assert_eq!((*y as u128 * c as u128) % *n as u128, (*x % n) as u128);
                Some(RingElement::Res(c))
            }
            (Ring::Product(fs), RingElement::Tuple(xs), RingElement::Tuple(ys)) => {
                let mut out = Vec::with_capacity(fs.len());
                for (f, (x, y)) in fs.iter().zip(xs.iter().zip(ys)) {
                    out.push(f.try_divide(x, y)?);
                }
                Some(RingElement::Tuple(out))
            }
            _ => {
                // PolyQuotient, Table: finite scan in canonical order.
                let elems = self.enumerate().ok()?;
                elems.into_iter().find(|c| self.mul(b, c) == *a)
            }
        }
    }

    /// Generators of Ann(a) = ker(a * -) as an ideal. The empty list encodes
    /// the zero ideal.
    pub fn annihilator_gens(&self, a: &RingElement) -> Vec<RingElement> {
        self.expect_member(a);
        match (self, a) {
            (Ring::Integers, RingElement::Int(x)) => {
                if x.is_zero() {
                    vec![self.one()]
                } else {
                    vec![]
                }
            }
            (Ring::PolyOverPrimeField(_), RingElement::Poly(c)) => {
                if c.is_empty() {
                    vec![self.one()]
                } else {
                    vec![]
                }
            }
            (Ring::PrimeField(_), RingElement::Res(x)) => {
                if *x == 0 {
                    vec![self.one()]
                } else {
                    vec![]
                }
            }
            (Ring::IntegersMod(n), RingElement::Res(x)) => {
                // Ann(x) = (n / gcd(x, n)); for a unit x this is (n) = 0.
                let g = x.gcd(n);
                let k = (n / g) % n;
                if k == 0 {
                    vec![]
                } else {
                    vec![RingElement::Res(k)]
                }
            }
            (Ring::PolyQuotient { p, modulus }, RingElement::Poly(c)) => {
                let g = poly::gcd(c, modulus, *p);
                let (k, _) = poly::divmod(modulus, &g, *p);
                let k = poly::rem(&k, modulus, *p);
                if k.is_empty() {
                    vec![]
                } else {
                    vec![RingElement::Poly(k)]
                }
            }
            (Ring::Product(fs), RingElement::Tuple(xs)) => {
                let mut out = Vec::new();
                for (i, (f, x)) in fs.iter().zip(xs).enumerate() {
                    for g in f.annihilator_gens(x) {
                        let mut tuple: Vec<RingElement> = fs.iter().map(Ring::zero).collect();
                        tuple[i] = g;
                        out.push(RingElement::Tuple(tuple));
                    }
                }
                out
            }
            (Ring::Table(t), RingElement::Vector(_)) => {
                // Kernel of the multiplication-by-a matrix over the base ring.
                let mult = self.table_mult_matrix(a);
                let kernel = crate::linalg::kernel_mod_n(&mult, t.base_mod);
                kernel
                    .into_iter()
                    .map(RingElement::Vector)
                    .filter(|v| !self.is_zero(v))
                    .collect()
            }
            _ => unreachable!(),
        }
    }

    /// Multiplication by `a` as a dim x dim matrix over the base of a table ring.
    pub(crate) fn table_mult_matrix(&self, a: &RingElement) -> Vec<Vec<u64>> {
        let (t, av) = match (self, a) {
            (Ring::Table(t), RingElement::Vector(v)) => (t, v),
            _ => panic!("table_mult_matrix on a non-table ring"),
        };
        let mut cols = Vec::with_capacity(t.dim);
        for j in 0..t.dim {
            let mut basis = vec![0u64; t.dim];
            basis[j] = 1;
            cols.push(t.mul_coords(av, &basis));
        }
        // Return row-major: rows[i][j] = coefficient of basis_i in a*basis_j.
        (0..t.dim)
            .map(|i| (0..t.dim).map(|j| cols[j][i]).collect())
            .collect()
    }

    /// Render an element for human-readable output.
    pub fn display_elem(&self, a: &RingElement) -> String {
        match (self, a) {
            (_, RingElement::Int(x)) => x.to_string(),
            (_, RingElement::Res(x)) => x.to_string(),
            (_, RingElement::Poly(c)) => poly::to_string(c, "x"),
            (Ring::Product(fs), RingElement::Tuple(xs)) => {
                let parts: Vec<String> =
                    fs.iter().zip(xs).map(|(f, x)| f.display_elem(x)).collect();
                format!("({})", parts.join(", "))
            }
            (Ring::Table(t), RingElement::Vector(v)) => {
                let mut parts = Vec::new();
                for (i, &c) in v.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let name = &t.basis_names[i];
                    if name == "1" {
                        parts.push(format!("{c}"));
                    } else if c == 1 {
                        parts.push(name.clone());
                    } else {
                        parts.push(format!("{c}{name}"));
                    }
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join("+")
                }
            }
            _ => format!("{a:?}"),
        }
    }
}

fn coordinate_vectors(base: u64, len: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * base as usize);
        for prefix in &out {
            for c in 0..base {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u64) -> Ring {
        Ring::IntegersMod(n)
    }

    #[test]
    fn arithmetic_mod_6() {
        let r = zmod(6);
        assert_eq!(
            r.mul(&RingElement::Res(4), &RingElement::Res(5)),
            RingElement::Res(2)
        );
    }

    #[test]
    fn product_addition_is_componentwise() {
        let r = Ring::product(vec![zmod(4), Ring::PrimeField(3)]).unwrap();
        let a = RingElement::Tuple(vec![RingElement::Res(3), RingElement::Res(2)]);
        let b = RingElement::Tuple(vec![RingElement::Res(1), RingElement::Res(2)]);
        assert_eq!(
            r.add(&a, &b),
            RingElement::Tuple(vec![RingElement::Res(0), RingElement::Res(1)])
        );
    }

    #[test]
    fn try_divide_integers() {
        let z = Ring::Integers;
        assert_eq!(
            z.try_divide(&z.from_int(6), &z.from_int(3)),
            Some(z.from_int(2))
        );
        assert_eq!(z.try_divide(&z.from_int(3), &z.from_int(2)), None);
    }

    #[test]
    fn try_divide_mod_6_smallest() {
        let r = zmod(6);
        // 4 * c = 2 mod 6 has solutions c = 2, 5; the canonical pick is 2.
        assert_eq!(
            r.try_divide(&RingElement::Res(2), &RingElement::Res(4)),
            Some(RingElement::Res(2))
        );
    }

    #[test]
    fn annihilators() {
        assert!(Ring::Integers
            .annihilator_gens(&RingElement::Int(BigInt::from(5)))
            .is_empty());
        assert_eq!(
            zmod(6).annihilator_gens(&RingElement::Res(2)),
            vec![RingElement::Res(3)]
        );
    }

    #[test]
    fn units_and_zero_divisors_partition_finite_rings() {
        let rings = vec![
            zmod(6),
            zmod(8),
            Ring::PrimeField(5),
            parse_ring("GF(2)[x]/(x^3)").unwrap(),
            parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap(),
            parse_ring("Z/4 x GF(3)").unwrap(),
        ];
        for r in rings {
            for a in r.enumerate().unwrap() {
                if !r.is_zero(&a) {
                    assert!(
                        r.is_unit(&a) != r.is_zero_divisor(&a),
                        "{a:?} over {}",
                        r.descriptor()
                    );
                }
            }
        }
        assert!(zmod(6).is_unit(&RingElement::Res(5)));
    }

    #[test]
    fn enumerate_z4() {
        let elems = zmod(4).enumerate().unwrap();
        assert_eq!(elems, (0..4).map(RingElement::Res).collect::<Vec<_>>());
    }

    #[test]
    fn ring_axioms_exhaustive_small_rings() {
        let rings = vec![
            zmod(6),
            zmod(8),
            Ring::PrimeField(5),
            Ring::PolyQuotient {
                p: 2,
                modulus: vec![0, 0, 0, 1],
            },
            Ring::product(vec![zmod(4), Ring::PrimeField(3)]).unwrap(),
            parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap(),
        ];
        for r in rings {
            let elems = r.enumerate().unwrap();
            assert!(elems.len() <= 64);
            for a in &elems {
                for b in &elems {
                    assert_eq!(r.add(a, b), r.add(b, a));
                    assert_eq!(r.mul(a, b), r.mul(b, a));
                    for c in &elems {
                        assert_eq!(r.add(&r.add(a, b), c), r.add(a, &r.add(b, c)));
                        assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
                        assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn try_divide_soundness_on_finite_rings() {
        let rings = vec![
            zmod(12),
            Ring::PrimeField(7),
            parse_ring("GF(2)[x]/(x^3)").unwrap(),
        ];
        for r in rings {
            let elems = r.enumerate().unwrap();
            for a in &elems {
                for b in &elems {
                    if let Some(c) = r.try_divide(a, b) {
                        assert_eq!(r.mul(b, &c), *a);
                    } else {
                        assert!(elems.iter().all(|c| r.mul(b, c) != *a));
                    }
                }
            }
        }
    }

    #[test]
    fn annihilator_complete_on_finite_rings() {
        let rings = vec![zmod(12), parse_ring("GF(2)[x,y]/(x^2,xy,y^2)").unwrap()];
        for r in rings {
            let elems = r.enumerate().unwrap();
            for x in &elems {
                let gens = r.annihilator_gens(x);
                for g in &gens {
                    assert!(r.is_zero(&r.mul(x, g)), "unsound annihilator");
                }
                // Completeness: every z with xz = 0 is an R-combination of the
                // gens; over these small rings, check membership in the ideal
                // they generate.
                let mut ideal: std::collections::BTreeSet<RingElement> =
                    std::iter::once(r.zero()).collect();
                let mut frontier = vec![r.zero()];
                let scaled: Vec<RingElement> = gens
                    .iter()
                    .flat_map(|g| elems.iter().map(move |s| (g, s)))
                    .map(|(g, s)| r.mul(g, s))
                    .collect();
                while let Some(v) = frontier.pop() {
                    for s in &scaled {
                        let w = r.add(&v, s);
                        if ideal.insert(w.clone()) {
                            frontier.push(w);
                        }
                    }
                }
                for z in &elems {
                    if r.is_zero(&r.mul(x, z)) {
                        assert!(ideal.contains(z), "missing annihilator {z:?} of {x:?}");
                    }
                }
            }
        }
    }
}
