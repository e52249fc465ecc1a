//! JSON wire formats.
//!
//! Elements serialize as a JSON integer, an integer list, or a nested list,
//! matching the ring descriptor; parsing is therefore context dependent and
//! every function here takes the ring. Integers round-trip at arbitrary
//! precision. Matrices are `{"ring", "rows", "cols", "entries"}` with
//! row-major nested entries; modules are `{"ring", "gens", "relations"}`;
//! homs are `{"source", "target", "matrix"}`.

use crate::decomposition::Decomposition;
use crate::divisibility::{DivisionCertificate, NotDivisibleReason, SeemingReport};
use crate::error::{Error, Result};
use crate::gallery::{
    CounterexampleRecord, ProbePhase, ProbeVerdict, RingClassification, Scenario,
};
use crate::homology::{ExtClass, HomologyMaps, ObstructionReport};
use crate::linalg::NormalFormResult;
use crate::matrix::RingMatrix;
use crate::module::{FPModule, ModuleHom};
use crate::ring::{parse_ring, Ring, RingElement};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use std::str::FromStr;

fn bigint_to_value(x: &BigInt) -> Value {
    if let Some(v) = x.to_i64() {
        Value::Number(v.into())
    } else {
        let n = serde_json::Number::from_str(&x.to_string())
            .expect("decimal integer literal is a valid JSON number");
        Value::Number(n)
    }
}

fn value_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            let s = n.to_string();
            if s.contains(['.', 'e', 'E']) {
                return Err(Error::Parse(format!("expected an integer, got {s}")));
            }
            BigInt::from_str(&s).map_err(|e| Error::Parse(format!("bad integer {s}: {e}")))
        }
        other => Err(Error::Parse(format!("expected an integer, got {other}"))),
    }
}

fn value_to_u64_list(v: &Value) -> Result<Vec<BigInt>> {
    match v {
        Value::Array(items) => items.iter().map(value_to_bigint).collect(),
        other => Err(Error::Parse(format!(
            "expected an integer list, got {other}"
        ))),
    }
}

pub fn elem_to_json(ring: &Ring, e: &RingElement) -> Value {
    match (ring, e) {
        (_, RingElement::Int(x)) => bigint_to_value(x),
        (_, RingElement::Res(x)) => Value::Number((*x).into()),
        (_, RingElement::Poly(c)) => {
            Value::Array(c.iter().map(|&x| Value::Number(x.into())).collect())
        }
        (_, RingElement::Vector(v)) => {
            Value::Array(v.iter().map(|&x| Value::Number(x.into())).collect())
        }
        (Ring::Product(fs), RingElement::Tuple(xs)) => {
            Value::Array(fs.iter().zip(xs).map(|(f, x)| elem_to_json(f, x)).collect())
        }
        _ => unreachable!("element does not match ring"),
    }
}

/// Parse an element in the context of `ring`, canonicalizing on the way in
/// (integers are reduced modulo the relevant modulus).
pub fn elem_from_json(ring: &Ring, v: &Value) -> Result<RingElement> {
    use num_integer::Integer;
    match ring {
        Ring::Integers => Ok(RingElement::Int(value_to_bigint(v)?)),
        Ring::IntegersMod(n) | Ring::PrimeField(n) => {
            let x = value_to_bigint(v)?;
            let m = x.mod_floor(&BigInt::from(*n));
            Ok(RingElement::Res(m.to_u64().expect("residue fits u64")))
        }
        Ring::PolyOverPrimeField(p) | Ring::PolyQuotient { p, .. } => {
            let coeffs = match v {
                Value::Number(_) => vec![value_to_bigint(v)?],
                _ => value_to_u64_list(v)?,
            };
            let reduced: Vec<u64> = coeffs
                .iter()
                .map(|c| {
                    c.mod_floor(&BigInt::from(*p))
                        .to_u64()
                        .expect("residue fits u64")
                })
                .collect();
            let poly = crate::poly::normalize(reduced);
            match ring {
                Ring::PolyQuotient { p, modulus } => {
                    Ok(RingElement::Poly(crate::poly::rem(&poly, modulus, *p)))
                }
                _ => Ok(RingElement::Poly(poly)),
            }
        }
        Ring::Table(t) => {
            let coords = value_to_u64_list(v)?;
            if coords.len() != t.dim {
                return Err(Error::Parse(format!(
                    "table-ring element needs {} coordinates, got {}",
                    t.dim,
                    coords.len()
                )));
            }
            let reduced: Vec<u64> = coords
                .iter()
                .map(|c| {
                    c.mod_floor(&BigInt::from(t.base_mod))
                        .to_u64()
                        .expect("residue fits u64")
                })
                .collect();
            Ok(RingElement::Vector(reduced))
        }
        Ring::Product(fs) => {
            let items = match v {
                Value::Array(items) if items.len() == fs.len() => items,
                other => {
                    return Err(Error::Parse(format!(
                        "product element needs {} components, got {other}",
                        fs.len()
                    )))
                }
            };
            let xs: Vec<RingElement> = fs
                .iter()
                .zip(items)
                .map(|(f, item)| elem_from_json(f, item))
                .collect::<Result<_>>()?;
            Ok(RingElement::Tuple(xs))
        }
    }
}

pub fn matrix_to_json(m: &RingMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows)
        .map(|i| {
            Value::Array(
                (0..m.cols)
                    .map(|j| elem_to_json(&m.ring, m.get(i, j)))
                    .collect(),
            )
        })
        .collect();
    json!({
        "ring": m.ring.descriptor(),
        "rows": m.rows,
        "cols": m.cols,
        "entries": entries,
    })
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| Error::Parse(format!("field {key:?} must be a non-negative integer")))
}

pub fn matrix_from_json(v: &Value) -> Result<RingMatrix> {
    let ring_str = get(v, "ring")?
        .as_str()
        .ok_or_else(|| Error::Parse("field \"ring\" must be a descriptor string".into()))?;
    let ring = parse_ring(ring_str)?;
    matrix_from_json_with_ring(&ring, v)
}

pub fn matrix_from_json_with_ring(ring: &Ring, v: &Value) -> Result<RingMatrix> {
    let rows = get_usize(v, "rows")?;
    let cols = get_usize(v, "cols")?;
    let entries = match get(v, "entries")? {
        Value::Array(rows) => rows,
        other => {
            return Err(Error::Parse(format!(
                "entries must be an array, got {other}"
            )))
        }
    };
    if entries.len() != rows {
        return Err(Error::Parse(format!(
            "entries has {} rows, expected {rows}",
            entries.len()
        )));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = row
            .as_array()
            .ok_or_else(|| Error::Parse("each entries row must be an array".into()))?;
        if row.len() != cols {
            return Err(Error::Parse(format!(
                "a row has {} entries, expected {cols}",
                row.len()
            )));
        }
        for item in row {
            flat.push(elem_from_json(ring, item)?);
        }
    }
    Ok(RingMatrix::new(ring.clone(), rows, cols, flat))
}

pub fn module_to_json(m: &FPModule) -> Value {
    json!({
        "ring": m.ring.descriptor(),
        "gens": m.gens,
        "relations": matrix_to_json(&m.relations),
    })
}

pub fn module_from_json(v: &Value) -> Result<FPModule> {
    let ring_str = get(v, "ring")?
        .as_str()
        .ok_or_else(|| Error::Parse("field \"ring\" must be a descriptor string".into()))?;
    let ring = parse_ring(ring_str)?;
    let gens = get_usize(v, "gens")?;
    let relations = matrix_from_json_with_ring(&ring, get(v, "relations")?)?;
    if relations.rows != gens {
        return Err(Error::Parse(format!(
            "relations matrix has {} rows but the module declares {gens} generators",
            relations.rows
        )));
    }
    FPModule::new(ring, relations)
}

pub fn hom_to_json(h: &ModuleHom) -> Value {
    json!({
        "source": module_to_json(&h.source),
        "target": module_to_json(&h.target),
        "matrix": matrix_to_json(&h.matrix),
    })
}

pub fn hom_from_json(v: &Value) -> Result<ModuleHom> {
    let source = module_from_json(get(v, "source")?)?;
    let target = module_from_json(get(v, "target")?)?;
    let matrix = matrix_from_json_with_ring(&source.ring, get(v, "matrix")?)?;
    ModuleHom::new(source, target, matrix)
}

pub fn coords_to_json(ring: &Ring, coords: &[RingElement]) -> Value {
    Value::Array(coords.iter().map(|e| elem_to_json(ring, e)).collect())
}

pub fn normal_form_to_json(nf: &NormalFormResult) -> Value {
    json!({
        "d": matrix_to_json(&nf.d),
        "u": matrix_to_json(&nf.u),
        "v": matrix_to_json(&nf.v),
        "pivots": nf.pivots.iter().map(|(r, c)| json!([r, c])).collect::<Vec<_>>(),
        "detU": elem_to_json(&nf.d.ring, &nf.det_u),
        "detV": elem_to_json(&nf.d.ring, &nf.det_v),
    })
}

pub fn seeming_to_json(f: &ModuleHom, r: &RingElement, rep: &SeemingReport) -> Value {
    let ring = f.ring();
    json!({
        "verdict": rep.verdict(),
        "killsTorsion": rep.kills_torsion,
        "torsionWitness": rep.torsion_witness.as_ref().map(|w| coords_to_json(ring, w)),
        "imageDivisible": rep.image_divisible,
        "imageWitness": rep.image_witness,
        "checkable": true,
        "f": hom_to_json(f),
        "r": elem_to_json(ring, r),
    })
}

pub fn certificate_to_json(f: &ModuleHom, r: &RingElement, cert: &DivisionCertificate) -> Value {
    let ring = f.ring();
    let mut obj = Map::new();
    match cert {
        DivisionCertificate::Divisible { divisor } => {
            obj.insert("verdict".into(), json!("divisible"));
            obj.insert("g".into(), hom_to_json(divisor));
        }
        DivisionCertificate::NotDivisible { reason } => {
            obj.insert("verdict".into(), json!("notDivisible"));
            let reason = match reason {
                NotDivisibleReason::LinearSystemInfeasible => json!("linear-system-infeasible"),
                NotDivisibleReason::OracleExhausted { count } => {
                    json!({ "oracle-exhausted": count })
                }
            };
            obj.insert("reason".into(), reason);
        }
    }
    obj.insert("checkable".into(), json!(true));
    obj.insert("f".into(), hom_to_json(f));
    obj.insert("r".into(), elem_to_json(ring, r));
    Value::Object(obj)
}

pub fn homology_to_json(maps: &HomologyMaps) -> Result<Value> {
    Ok(json!({
        "h0": hom_to_json(&maps.h0),
        "h1": hom_to_json(&maps.h1),
        "h0Zero": maps.h0_zero()?,
        "h1Zero": maps.h1_zero()?,
        "sourceTorsion": matrix_to_json(&maps.source_torsion),
        "targetTorsion": matrix_to_json(&maps.target_torsion),
        "coneApplicable": maps.cone_applicable,
    }))
}

pub fn obstruction_to_json(rep: &ObstructionReport) -> Value {
    let null_homotopic = match &rep.null_homotopy {
        Some(h) => json!({ "yes": hom_to_json(h) }),
        None => json!("no"),
    };
    let ext_class = match &rep.ext_class {
        ExtClass::Zero => json!("zero"),
        ExtClass::Nonzero { cocycle } => {
            json!({ "nonzeroRepresentative": matrix_to_json(cocycle) })
        }
        ExtClass::NotComputed { reason } => json!({ "notComputed": reason }),
    };
    json!({
        "h0Zero": rep.h0_zero,
        "h1Zero": rep.h1_zero,
        "nullHomotopic": null_homotopic,
        "extClass": ext_class,
    })
}

pub fn decomposition_to_json(dec: &Decomposition) -> Value {
    let ring = &dec.remainder.ring;
    json!({
        "p": elem_to_json(ring, &dec.p),
        "n": dec.n,
        "factors": dec.factors.iter().map(|f| json!({
            "p": elem_to_json(ring, &dec.p),
            "exponent": f.exponent,
            "multiplicity": f.multiplicity,
        })).collect::<Vec<_>>(),
        "remainder": module_to_json(&dec.remainder),
        "freeRank": dec.free_rank,
        "iso": {
            "forward": hom_to_json(&dec.forward),
            "backward": hom_to_json(&dec.backward),
        },
        "freeness": {
            "basis": dec.freeness.basis,
            "surjective": dec.freeness.surjective,
            "injectiveModPk": dec.freeness.injective_mod_pk,
        },
    })
}

pub fn classification_to_json(c: &RingClassification) -> Value {
    let ring = &c.ring;
    json!({
        "ring": ring.descriptor(),
        "localFactors": c.factors.iter().map(|f| json!({
            "idempotent": elem_to_json(ring, &f.idempotent),
            "size": f.elements.len(),
            "maximalIdealGens": f.max_ideal_gens.iter().map(|g| elem_to_json(ring, g)).collect::<Vec<_>>(),
            "isPrincipal": f.is_principal,
            "isField": f.is_field,
        })).collect::<Vec<_>>(),
        "predictedSP": c.predicted_sp,
    })
}

pub fn probe_to_json(v: &ProbeVerdict) -> Value {
    json!({
        "trials": v.trials,
        "seed": v.seed,
        "counterexample": v.counterexample.as_ref().map(counterexample_to_json),
    })
}

pub fn counterexample_to_json(rec: &CounterexampleRecord) -> Value {
    let ring = rec.f.ring();
    let phase = match &rec.phase {
        ProbePhase::Deterministic { factor, t, y } => json!({
            "deterministic": {
                "factor": factor,
                "t": elem_to_json(ring, t),
                "y": elem_to_json(ring, y),
            }
        }),
        ProbePhase::Trial { index } => json!({ "trial": index }),
    };
    json!({
        "phase": phase,
        "seeming": seeming_to_json(&rec.f, &rec.r, &rec.seeming),
        "certificate": certificate_to_json(&rec.f, &rec.r, &rec.certificate),
    })
}

pub fn scenario_to_json(s: &Scenario) -> Value {
    let ring = &s.ring;
    let mut expected = Map::new();
    let e = &s.expected;
    if let Some(v) = e.seeming {
        expected.insert("seeming".into(), json!(v));
    }
    if let Some(v) = e.divisible {
        expected.insert("divisible".into(), json!(v));
    }
    if let Some(v) = e.counterexample {
        expected.insert("counterexample".into(), json!(v));
    }
    if let Some(v) = e.predicted_sp {
        expected.insert("predictedSP".into(), json!(v));
    }
    if let Some(v) = e.probe_clean {
        expected.insert("probeClean".into(), json!(v));
    }
    if let Some(v) = e.oracle_hom_count {
        expected.insert("oracleHomCount".into(), json!(v));
    }
    if let Some(v) = e.counterexample_factor {
        expected.insert("counterexampleFactor".into(), json!(v));
    }
    json!({
        "name": s.name,
        "description": s.description,
        "ring": ring.descriptor(),
        "modules": s.modules.iter().map(module_to_json).collect::<Vec<_>>(),
        "homs": s.homs.iter().map(hom_to_json).collect::<Vec<_>>(),
        "r": s.r.as_ref().map(|r| elem_to_json(ring, r)),
        "expected": Value::Object(expected),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_roundtrip_across_ring_classes() {
        let rings = [
            "Z",
            "Z/12",
            "GF(7)",
            "GF(2)[x]",
            "GF(2)[x]/(x^3)",
            "GF(2)[x,y]/(x^2,xy,y^2)",
            "Z/4 x GF(3)",
        ];
        for desc in rings {
            let ring = parse_ring(desc).unwrap();
            let sample: Vec<RingElement> = match ring.size() {
                Some(_) => ring.enumerate().unwrap().into_iter().take(12).collect(),
                None => (-3..3).map(|i| ring.from_int(i)).collect(),
            };
            for e in sample {
                let v = elem_to_json(&ring, &e);
                let back = elem_from_json(&ring, &v).unwrap();
                assert_eq!(back, e, "roundtrip failed over {desc}");
            }
        }
    }

    #[test]
    fn big_integers_roundtrip() {
        let ring = Ring::Integers;
        let big = RingElement::Int(BigInt::from_str("123456789012345678901234567890").unwrap());
        let v = elem_to_json(&ring, &big);
        assert_eq!(elem_from_json(&ring, &v).unwrap(), big);
    }

    #[test]
    fn matrix_roundtrip() {
        let ring = parse_ring("Z/6").unwrap();
        let m = RingMatrix::from_ints(ring, &[&[1, 2, 3], &[4, 5, 0]]);
        let v = matrix_to_json(&m);
        assert_eq!(matrix_from_json(&v).unwrap(), m);
    }

    #[test]
    fn hom_roundtrip() {
        let ring = Ring::Integers;
        let src = FPModule::cyclic(ring.clone(), ring.from_int(2));
        let tgt = FPModule::cyclic(ring.clone(), ring.from_int(4));
        let h = ModuleHom::new(src, tgt, RingMatrix::from_ints(ring, &[&[2]])).unwrap();
        let v = hom_to_json(&h);
        let back = hom_from_json(&v).unwrap();
        assert_eq!(back.matrix, h.matrix);
        assert_eq!(back.source, h.source);
    }

    #[test]
    fn residues_are_canonicalized_on_input() {
        let ring = parse_ring("Z/6").unwrap();
        let e = elem_from_json(&ring, &json!(13)).unwrap();
        assert_eq!(e, RingElement::Res(1));
        let neg = elem_from_json(&ring, &json!(-1)).unwrap();
        assert_eq!(neg, RingElement::Res(5));
    }

    #[test]
    fn floats_rejected() {
        assert!(elem_from_json(&Ring::Integers, &json!(1.5)).is_err());
    }
}
