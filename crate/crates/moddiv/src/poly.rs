//! Dense univariate polynomial arithmetic over a prime field GF(p).
//!
//! Coefficients are stored ascending with no trailing zeros, so the empty
//! vector is the zero polynomial and `coeffs.len() - 1` is the degree.
//! All functions take the prime `p` explicitly; coefficients stay in `[0, p)`.

pub type FpPoly = Vec<u64>;

pub fn normalize(mut c: FpPoly) -> FpPoly {
    while c.last() == Some(&0) {
        c.pop();
    }
    c
}

pub fn is_zero(a: &[u64]) -> bool {
    a.is_empty()
}

pub fn constant(c: u64, p: u64) -> FpPoly {
    normalize(vec![c % p])
}

fn addc(a: u64, b: u64, p: u64) -> u64 {
    let s = (a as u128 + b as u128) % p as u128;
    s as u64
}

fn mulc(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn negc(a: u64, p: u64) -> u64 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

/// Inverse of a nonzero residue mod the prime p, by extended Euclid.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "inv_mod of a non-unit residue");
    (t.rem_euclid(p as i128)) as u64
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out.push(addc(x, y, p));
    }
    normalize(out)
}

pub fn neg(a: &[u64], p: u64) -> FpPoly {
    a.iter().map(|&c| negc(c, p)).collect()
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    add(a, &neg(b, p), p)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addc(out[i + j], mulc(x, y, p), p);
        }
    }
    normalize(out)
}

pub fn scale(a: &[u64], c: u64, p: u64) -> FpPoly {
    normalize(a.iter().map(|&x| mulc(x, c, p)).collect())
}

/// Division with remainder: a = q*b + r with deg r < deg b. Panics when b = 0.
pub fn divmod(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut rem: FpPoly = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], normalize(rem));
    }
    let mut quot = vec![0u64; rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !is_zero(&normalize(rem.clone())) {
        rem = normalize(rem);
        if rem.len() < b.len() {
            break;
        }
        let shift = rem.len() - b.len();
        let coef = mulc(*rem.last().unwrap(), lead_inv, p);
        quot[shift] = coef;
        for (i, &bc) in b.iter().enumerate() {
            let t = mulc(coef, bc, p);
            rem[shift + i] = addc(rem[shift + i], negc(t, p), p);
        }
    }
    (normalize(quot), normalize(rem))
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divmod(a, b, p).1
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut x = normalize(a.to_vec());
    let mut y = normalize(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Scale to leading coefficient 1 (zero stays zero).
pub fn monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => vec![],
        Some(&l) => scale(a, inv_mod(l, p), p),
    }
}

pub fn to_string(a: &[u64], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match i {
            0 => format!("{c}"),
            1 if c == 1 => var.to_string(),
            1 => format!("{c}{var}"),
            _ if c == 1 => format!("{var}^{i}"),
            _ => format!("{c}{var}^{i}"),
        };
        parts.push(part);
    }
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divmod_exact_over_gf2() {
        // x^2 + x = x * (x + 1)
        let a = vec![0, 1, 1];
        let b = vec![0, 1];
        let (q, r) = divmod(&a, &b, 2);
        assert_eq!(q, vec![1, 1]);
        assert!(r.is_empty());
    }

    #[test]
    fn gcd_is_monic() {
        // gcd(2x^2, 2x) = x over GF(5)
        let g = gcd(&[0, 0, 2], &[0, 2], 5);
        assert_eq!(g, vec![0, 1]);
    }

    #[test]
    fn inverse_roundtrip() {
        for p in [2u64, 3, 5, 7, 101] {
            for a in 1..p.min(50) {
                assert_eq!((a as u128 * inv_mod(a, p) as u128) % p as u128, 1);
            }
        }
    }
}
