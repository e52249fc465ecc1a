//! Parser for the ASCII ring descriptor grammar:
//!
//! ```text
//! ring    := atom ( " x " atom )*
//! atom    := "Z" | "Z/<n>" | "GF(<p>)" | "GF(<p>)[v]" | "GF(<p>)[v]/(<monic poly>)"
//!          | "GF(<p>)[v1,...,vk]/(<monomials>)"
//! ```
//!
//! The product separator is the letter `x` at nesting depth 0 surrounded by
//! whitespace. A quotient by monomials (one generator per comma) is compiled
//! at parse time into an explicit table ring, provided the standard monomial
//! basis is finite; the structure-constant axioms are then checked
//! exhaustively on basis triples.

use super::{is_prime_u64, Ring, TableData};
use crate::error::{Error, Result};
use crate::poly::FpPoly;

pub fn parse_ring(text: &str) -> Result<Ring> {
    let parts = split_product(text)?;
    if parts.len() == 1 {
        parse_atom(parts[0].trim())
    } else {
        let factors: Vec<Ring> = parts
            .iter()
            .map(|p| parse_atom(p.trim()))
            .collect::<Result<_>>()?;
        Ring::product(factors)
    }
}

fn split_product(text: &str) -> Result<Vec<&str>> {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    let mut parts = Vec::new();
    let mut start = 0usize;
    let mut i = 0usize;
    while i < bytes.len() {
        match bytes[i] {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'x' if depth == 0 => {
                let before_ws = i > 0 && bytes[i - 1].is_ascii_whitespace();
                let after_ws = i + 1 < bytes.len() && bytes[i + 1].is_ascii_whitespace();
                if before_ws && after_ws {
                    parts.push(&text[start..i]);
                    start = i + 1;
                }
            }
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {text:?}")));
        }
        i += 1;
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {text:?}")));
    }
    parts.push(&text[start..]);
    Ok(parts)
}

fn parse_atom(text: &str) -> Result<Ring> {
    if text == "Z" {
        return Ok(Ring::Integers);
    }
    if let Some(rest) = text.strip_prefix("Z/") {
        let n: u64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {text:?}")))?;
        if n < 2 {
            return Err(Error::Invariant(format!("Z/{n} needs modulus >= 2")));
        }
        return Ok(Ring::IntegersMod(n));
    }
    if let Some(rest) = text.strip_prefix("GF(") {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("missing ) in {text:?}")))?;
        let p: u64 = rest[..close]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic in {text:?}")))?;
        if !is_prime_u64(p) {
            return Err(Error::Invariant(format!(
                "GF({p}) needs a prime characteristic; spell non-prime fields as polynomial quotients"
            )));
        }
        let tail = rest[close + 1..].trim();
        if tail.is_empty() {
            return Ok(Ring::PrimeField(p));
        }
        return parse_poly_ring(p, tail, text);
    }
    Err(Error::Parse(format!(
        "unrecognized ring descriptor {text:?}"
    )))
}

fn parse_poly_ring(p: u64, tail: &str, whole: &str) -> Result<Ring> {
    let tail = tail.trim();
    if !tail.starts_with('[') {
        return Err(Error::Parse(format!("expected [vars] in {whole:?}")));
    }
    let close = tail
        .find(']')
        .ok_or_else(|| Error::Parse(format!("missing ] in {whole:?}")))?;
    let vars: Vec<String> = tail[1..close]
        .split(',')
        .map(|v| v.trim().to_string())
        .collect();
    if vars.is_empty() || vars.iter().any(|v| !is_identifier(v)) {
        return Err(Error::Parse(format!("bad variable list in {whole:?}")));
    }
    let after = tail[close + 1..].trim();
    if after.is_empty() {
        if vars.len() != 1 {
            return Err(Error::Parse(format!(
                "multivariate polynomial rings need a quotient: {whole:?}"
            )));
        }
        return Ok(Ring::PolyOverPrimeField(p));
    }
    let after = after
        .strip_prefix('/')
        .ok_or_else(|| Error::Parse(format!("expected /(...) in {whole:?}")))?
        .trim();
    let inner = after
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected parenthesized ideal in {whole:?}")))?;
    let gens: Vec<&str> = inner.split(',').map(str::trim).collect();
    if gens.iter().any(|g| g.is_empty()) {
        return Err(Error::Parse(format!("empty ideal generator in {whole:?}")));
    }

    // Single variable, single generator, general monic polynomial: quotient of GF(p)[x].
    if vars.len() == 1 && gens.len() == 1 {
        if let Ok(coeffs) = parse_univariate(gens[0], &vars[0], p) {
            if coeffs.len() < 2 {
                return Err(Error::Invariant(format!(
                    "quotient modulus must have degree >= 1 in {whole:?}"
                )));
            }
            if coeffs.last() != Some(&1) {
                return Err(Error::Invariant(format!(
                    "quotient modulus must be monic in {whole:?}"
                )));
            }
            return Ok(Ring::PolyQuotient { p, modulus: coeffs });
        }
    }

    // Otherwise every generator must be a monomial; compile to a table ring.
    let gen_exps: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| parse_monomial(g, &vars))
        .collect::<Result<_>>()?;
    build_monomial_quotient(p, &vars, &gen_exps, whole)
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s.chars().next().unwrap().is_ascii_alphabetic()
        && s.chars().all(|c| c.is_ascii_alphanumeric())
}

/// Parse `c0 + c1 v + c2 v^2 + ...` over GF(p), ascending output.
fn parse_univariate(text: &str, var: &str, p: u64) -> Result<FpPoly> {
    let mut coeffs: Vec<u64> = Vec::new();
    for term in split_terms(text) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (p - 1, rest.trim()),
            None => (1, term.trim_start_matches('+').trim()),
        };
        let (coeff, deg) = parse_term(body, var, p)?;
        let coeff = (coeff as u128 * sign as u128 % p as u128) as u64;
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, 0);
        }
        coeffs[deg] = ((coeffs[deg] as u128 + coeff as u128) % p as u128) as u64;
    }
    Ok(crate::poly::normalize(coeffs))
}

fn split_terms(text: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    for (i, c) in text.chars().enumerate() {
        if (c == '+' || c == '-') && i > 0 {
            terms.push(cur.clone());
            cur.clear();
            if c == '-' {
                cur.push('-');
            }
        } else {
            cur.push(c);
        }
    }
    terms.push(cur);
    terms.into_iter().filter(|t| !t.trim().is_empty()).collect()
}

/// Parse one additive term like `3`, `x`, `2x^3`, `2*x^3`.
fn parse_term(body: &str, var: &str, p: u64) -> Result<(u64, usize)> {
    let body = body.trim().replace('*', "");
    if let Ok(c) = body.parse::<u64>() {
        return Ok((c % p, 0));
    }
    let idx = body
        .find(var)
        .ok_or_else(|| Error::Parse(format!("unknown variable in term {body:?}")))?;
    let coeff_str = body[..idx].trim();
    let coeff = if coeff_str.is_empty() {
        1
    } else {
        coeff_str
            .parse::<u64>()
            .map_err(|_| Error::Parse(format!("bad coefficient in term {body:?}")))?
    };
    let rest = body[idx + var.len()..].trim();
    let deg = if rest.is_empty() {
        1
    } else if let Some(e) = rest.strip_prefix('^') {
        e.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad exponent in term {body:?}")))?
    } else {
        return Err(Error::Parse(format!("trailing junk in term {body:?}")));
    };
    Ok((coeff % p, deg))
}

/// Parse a product of variable powers like `x^2`, `xy`, `x^2y`, `x*y`.
fn parse_monomial(text: &str, vars: &[String]) -> Result<Vec<u32>> {
    let mut exps = vec![0u32; vars.len()];
    let cleaned = text.replace('*', "");
    let mut rest = cleaned.trim();
    if rest == "1" {
        return Ok(exps);
    }
    'outer: while !rest.is_empty() {
        // Longest variable name match first.
        let mut order: Vec<usize> = (0..vars.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(vars[i].len()));
        for i in order {
            if let Some(after) = rest.strip_prefix(vars[i].as_str()) {
                let mut after = after.trim_start();
                let mut e = 1u32;
                if let Some(stripped) = after.strip_prefix('^') {
                    let digits: String = stripped
                        .chars()
                        .take_while(|c| c.is_ascii_digit())
                        .collect();
                    if digits.is_empty() {
                        return Err(Error::Parse(format!("bad exponent in monomial {text:?}")));
                    }
                    e = digits
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in monomial {text:?}")))?;
                    after = stripped[digits.len()..].trim_start();
                }
                exps[i] += e;
                rest = after;
                continue 'outer;
            }
        }
        return Err(Error::Parse(format!(
            "not a monomial in the declared variables: {text:?}"
        )));
    }
    if exps.iter().all(|&e| e == 0) {
        return Err(Error::Invariant(format!(
            "the unit ideal generator {text:?} is not allowed"
        )));
    }
    Ok(exps)
}

fn divides(gen: &[u32], mono: &[u32]) -> bool {
    gen.iter().zip(mono).all(|(g, m)| g <= m)
}

fn build_monomial_quotient(
    p: u64,
    vars: &[String],
    gens: &[Vec<u32>],
    whole: &str,
) -> Result<Ring> {
    // The standard monomials form a finite basis iff every variable has a pure
    // power inside the ideal.
    let mut bounds = Vec::with_capacity(vars.len());
    for (i, v) in vars.iter().enumerate() {
        let bound = gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(j, &e)| e == 0 || j == i))
            .map(|g| g[i])
            .min();
        match bound {
            Some(b) if b > 0 => bounds.push(b),
            _ => {
                return Err(Error::Invariant(format!(
                    "the monomial ideal in {whole:?} does not contain a pure power of {v}, \
                     so the quotient is not finite-dimensional"
                )))
            }
        }
    }

    // Enumerate standard monomials below the bounds, sorted by total degree
    // then lexicographic exponent vector.
    let mut basis: Vec<Vec<u32>> = vec![vec![]];
    for &b in &bounds {
        let mut next = Vec::new();
        for prefix in &basis {
            for e in 0..b {
                let mut v = prefix.clone();
                v.push(e);
                next.push(v);
            }
        }
        basis = next;
    }
    basis.retain(|m| !gens.iter().any(|g| divides(g, m)));
    // Graded order with earlier variables first: 1, x, y, x^2, xy, y^2, ...
    basis.sort_by(|a, b| {
        let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
        da.cmp(&db).then_with(|| b.cmp(a))
    });

    let dim = basis.len();
    let index_of = |m: &[u32]| basis.iter().position(|b| b == m);
    let mut mul_table = vec![vec![vec![0u64; dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod: Vec<u32> = basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            if gens.iter().any(|g| divides(g, &prod)) {
                continue; // zero in the quotient
            }
            let k = index_of(&prod).ok_or_else(|| {
                Error::Internal(format!(
                    "standard monomial product escaped the basis in {whole:?}"
                ))
            })?;
            mul_table[i][j][k] = 1;
        }
    }
    let one_idx = index_of(&vec![0u32; vars.len()])
        .ok_or_else(|| Error::Invariant(format!("1 lies in the ideal of {whole:?}")))?;
    let mut one = vec![0u64; dim];
    one[one_idx] = 1;

    let basis_names = basis
        .iter()
        .map(|m| {
            let mut s = String::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => s.push_str(&vars[i]),
                    _ => s.push_str(&format!("{}^{}", vars[i], e)),
                }
            }
            if s.is_empty() {
                "1".to_string()
            } else {
                s
            }
        })
        .collect();

    Ring::table(TableData {
        base_mod: p,
        dim,
        mul_table,
        one,
        basis_names,
        label: whole.to_string(),
    })
}
