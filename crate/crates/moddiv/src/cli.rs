//! The `moddiv` command line: parse scenario files, dispatch to the library,
//! emit JSON certificates.
//!
//! Exit status: 0 for any computed verdict (a `notDivisible` or a
//! counterexample is an answer, not an error), 2 for input or validation
//! errors, 3 for exceeded enumeration budgets. Output is deterministic:
//! identical inputs and flags produce byte-identical JSON.

use crate::budget::Budget;
use crate::divisibility::{
    divide, is_seemingly_divisible, oracle_divide, seeming_vs_divisible, Comparison,
};
use crate::error::Error;
use crate::gallery::{
    build_scenario, classify_finite_ring, local_counterexample, probe_ring, ProbeOptions,
};
use crate::homology::{homology_maps, obstruction_class};
use crate::jsonio::*;
use crate::linalg::{hnf, snf, solve_linear};
use crate::module::HomCheck;
use crate::ring::parse_ring;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "moddiv",
    about = "Decide divisibility and seeming divisibility of homomorphisms between finitely presented modules",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pretty,
}

#[derive(Args)]
struct Common {
    /// Input: a file path, or inline JSON when the argument starts with '{'
    #[arg(short = 'i', long)]
    input: Option<String>,
    /// Write the output JSON to this path instead of stdout
    #[arg(short = 'o', long)]
    output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Raise the module-element enumeration budget
    #[arg(long)]
    max_module_size: Option<u64>,
    /// Raise the ring-size budget for classification and probes
    #[arg(long)]
    max_ring_size: Option<u64>,
}

#[derive(Subcommand)]
enum Verb {
    /// Smith normal form with transforms
    Snf(Common),
    /// Column-style Hermite normal form with transform
    Hnf(Common),
    /// Solve A*x = b exactly; input {"a": matrix, "b": matrix}
    Solve(Common),
    /// Validate a homomorphism; input is a hom object
    #[command(name = "check-hom")]
    CheckHom(Common),
    /// Decide seeming divisibility; input {"hom": ..., "r": ...}
    Seeming(Common),
    /// Decide divisibility with a certificate; input {"hom": ..., "r": ...}
    Divide(Common),
    /// Exhaustive-oracle divisibility over a finite ring; input {"hom": ..., "r": ...}
    Oracle(Common),
    /// Induced maps on the two-term complexes; input {"hom": ..., "r": ...}
    Homology(Common),
    /// Ext^1 obstruction report; input {"hom": ..., "r": ...}
    Obstruction(Common),
    /// Split a module over Z/p^n or GF(q)[x]/(x^n); input {"module": ..., "p": ..., "n": ...}
    Decompose(Common),
    /// Invariant factors over Z or GF(p)[x]; input is a module object
    Invariants(Common),
    /// Split a finite ring into local factors and predict agreement
    #[command(name = "classify-ring")]
    ClassifyRing {
        #[command(flatten)]
        common: Common,
        /// Ring descriptor, e.g. "Z/12" or "GF(2)[x,y]/(x^2,xy,y^2)"
        #[arg(short = 'r', long)]
        ring: Option<String>,
    },
    /// Build the multiplication-by-t counterexample; input {"ring": ..., "t": ..., "y": ...}
    Step2(Common),
    /// Probe a finite ring with seeded random instances
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'r', long)]
        ring: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cross-check every divide verdict against the exhaustive oracle
        #[arg(long, default_value_t = false)]
        oracle_check: bool,
    },
    /// Emit a named scenario bundle from the catalog
    Gallery {
        #[command(flatten)]
        common: Common,
        /// Scenario name; see the catalog in the README
        name: String,
    },
    /// Run the acceptance checks and print one pass/fail line per criterion
    Suite {
        #[command(flatten)]
        common: Common,
        /// Criteria to run (default: all)
        ids: Vec<u32>,
    },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn read_input(common: &Common) -> Result<(String, Value), Error> {
    let raw = match &common.input {
        Some(text) if text.trim_start().starts_with(['{', '[']) => text.clone(),
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            return Err(Error::Parse(
                "this verb needs -i/--input (a path or inline JSON)".into(),
            ))
        }
    };
    let value: Value = serde_json::from_str(&raw)
        .map_err(|e| Error::Parse(format!("malformed JSON input: {e}")))?;
    Ok((raw, value))
}

fn budget_for(common: &Common) -> Budget {
    let mut b = Budget::from_env();
    if let Some(n) = common.max_module_size {
        b.max_elements = n;
    }
    if let Some(n) = common.max_ring_size {
        b.max_ring_size = n;
    }
    b
}

fn digest(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("sha256:{:x}", hasher.finalize())
}

fn emit(
    common: &Common,
    verb: &str,
    input_digest: &str,
    seed: Option<u64>,
    result: Value,
) -> Result<(), Error> {
    let mut envelope = serde_json::Map::new();
    envelope.insert("verb".into(), json!(verb));
    envelope.insert("inputDigest".into(), json!(input_digest));
    if let Some(s) = seed {
        envelope.insert("seed".into(), json!(s));
    }
    envelope.insert("result".into(), result);
    let value = Value::Object(envelope);
    let text = match common.format {
        Format::Json => serde_json::to_string(&value)?,
        Format::Pretty => serde_json::to_string_pretty(&value)?,
    };
    match &common.output {
        Some(path) => std::fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn hom_and_r(value: &Value) -> Result<(crate::module::ModuleHom, crate::ring::RingElement), Error> {
    let hom = hom_from_json(
        value
            .get("hom")
            .ok_or_else(|| Error::Parse("missing field \"hom\"".into()))?,
    )?;
    let r = elem_from_json(
        hom.ring(),
        value
            .get("r")
            .ok_or_else(|| Error::Parse("missing field \"r\"".into()))?,
    )?;
    Ok((hom, r))
}

/// Run the CLI; returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.verb) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(verb: Verb) -> Result<i32, Error> {
    match verb {
        Verb::Snf(common) => {
            let (raw, value) = read_input(&common)?;
            let m = matrix_from_json(&value)?;
            let nf = snf(&m)?;
            emit(
                &common,
                "snf",
                &digest(raw.as_bytes()),
                None,
                normal_form_to_json(&nf),
            )?;
            Ok(0)
        }
        Verb::Hnf(common) => {
            let (raw, value) = read_input(&common)?;
            let m = matrix_from_json(&value)?;
            let nf = hnf(&m)?;
            emit(
                &common,
                "hnf",
                &digest(raw.as_bytes()),
                None,
                normal_form_to_json(&nf),
            )?;
            Ok(0)
        }
        Verb::Solve(common) => {
            let (raw, value) = read_input(&common)?;
            let a = matrix_from_json(
                value
                    .get("a")
                    .ok_or_else(|| Error::Parse("missing field \"a\"".into()))?,
            )?;
            let b = matrix_from_json_with_ring(
                &a.ring,
                value
                    .get("b")
                    .ok_or_else(|| Error::Parse("missing field \"b\"".into()))?,
            )?;
            let result = match solve_linear(&a, &b)? {
                Some(sol) => json!({
                    "solvable": true,
                    "particular": matrix_to_json(&sol.particular),
                    "kernel": matrix_to_json(&sol.kernel),
                }),
                None => json!({ "solvable": false }),
            };
            emit(&common, "solve", &digest(raw.as_bytes()), None, result)?;
            Ok(0)
        }
        Verb::CheckHom(common) => {
            let (raw, value) = read_input(&common)?;
            let hom = hom_from_json(&value)?;
            let result = match hom.validate()? {
                HomCheck::WellDefined => json!({ "wellDefined": true }),
                HomCheck::BadRelation(j) => json!({ "wellDefined": false, "badRelation": j }),
            };
            emit(&common, "check-hom", &digest(raw.as_bytes()), None, result)?;
            Ok(0)
        }
        Verb::Seeming(common) => {
            let (raw, value) = read_input(&common)?;
            let (hom, r) = hom_and_r(&value)?;
            let rep = is_seemingly_divisible(&hom, &r)?;
            emit(
                &common,
                "seeming",
                &digest(raw.as_bytes()),
                None,
                seeming_to_json(&hom, &r, &rep),
            )?;
            Ok(0)
        }
        Verb::Divide(common) => {
            let (raw, value) = read_input(&common)?;
            let (hom, r) = hom_and_r(&value)?;
            // Also compare with seeming divisibility so counterexamples are
            // surfaced directly in the certificate.
            let cmp = seeming_vs_divisible(&hom, &r)?;
            let (seeming, cert, counterexample) = match &cmp {
                Comparison::Agree {
                    seeming,
                    certificate,
                } => (seeming, certificate, false),
                Comparison::Counterexample {
                    seeming,
                    certificate,
                } => (seeming, certificate, true),
            };
            let mut result = certificate_to_json(&hom, &r, cert);
            result["seeminglyDivisible"] = json!(seeming.verdict());
            result["counterexample"] = json!(counterexample);
            emit(&common, "divide", &digest(raw.as_bytes()), None, result)?;
            Ok(0)
        }
        Verb::Oracle(common) => {
            let budget = budget_for(&common);
            let (raw, value) = read_input(&common)?;
            let (hom, r) = hom_and_r(&value)?;
            let cert = oracle_divide(&hom, &r, &budget)?;
            emit(
                &common,
                "oracle",
                &digest(raw.as_bytes()),
                None,
                certificate_to_json(&hom, &r, &cert),
            )?;
            Ok(0)
        }
        Verb::Homology(common) => {
            let (raw, value) = read_input(&common)?;
            let (hom, r) = hom_and_r(&value)?;
            let maps = homology_maps(&hom, &r)?;
            emit(
                &common,
                "homology",
                &digest(raw.as_bytes()),
                None,
                homology_to_json(&maps)?,
            )?;
            Ok(0)
        }
        Verb::Obstruction(common) => {
            let (raw, value) = read_input(&common)?;
            let (hom, r) = hom_and_r(&value)?;
            let rep = obstruction_class(&hom, &r)?;
            emit(
                &common,
                "obstruction",
                &digest(raw.as_bytes()),
                None,
                obstruction_to_json(&rep),
            )?;
            Ok(0)
        }
        Verb::Decompose(common) => {
            let budget = budget_for(&common);
            let (raw, value) = read_input(&common)?;
            let module = module_from_json(
                value
                    .get("module")
                    .ok_or_else(|| Error::Parse("missing field \"module\"".into()))?,
            )?;
            let p = elem_from_json(
                &module.ring,
                value
                    .get("p")
                    .ok_or_else(|| Error::Parse("missing field \"p\"".into()))?,
            )?;
            let n = value
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("missing or bad field \"n\"".into()))?
                as u32;
            let dec = crate::decomposition::split_cyclic(&module, &p, n, &budget)?;
            emit(
                &common,
                "decompose",
                &digest(raw.as_bytes()),
                None,
                decomposition_to_json(&dec),
            )?;
            Ok(0)
        }
        Verb::Invariants(common) => {
            let (raw, value) = read_input(&common)?;
            let module = module_from_json(&value)?;
            let inv = crate::decomposition::invariant_factors(&module)?;
            let result = json!({
                "factors": inv.factors.iter().map(|f| elem_to_json(&module.ring, f)).collect::<Vec<_>>(),
                "freeRank": inv.free_rank,
            });
            emit(&common, "invariants", &digest(raw.as_bytes()), None, result)?;
            Ok(0)
        }
        Verb::ClassifyRing { common, ring } => {
            let budget = budget_for(&common);
            let (digest_src, ring) = match (&ring, &common.input) {
                (Some(desc), _) => (desc.clone(), parse_ring(desc)?),
                (None, Some(_)) => {
                    let (raw, value) = read_input(&common)?;
                    let desc = value
                        .get("ring")
                        .and_then(Value::as_str)
                        .ok_or_else(|| Error::Parse("missing field \"ring\"".into()))?;
                    (raw, parse_ring(desc)?)
                }
                (None, None) => return Err(Error::Parse("classify-ring needs -r or -i".into())),
            };
            let c = classify_finite_ring(&ring, &budget)?;
            emit(
                &common,
                "classify-ring",
                &digest(digest_src.as_bytes()),
                None,
                classification_to_json(&c),
            )?;
            Ok(0)
        }
        Verb::Step2(common) => {
            let budget = budget_for(&common);
            let (raw, value) = read_input(&common)?;
            let ring = parse_ring(
                value
                    .get("ring")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("missing field \"ring\"".into()))?,
            )?;
            let t = elem_from_json(
                &ring,
                value
                    .get("t")
                    .ok_or_else(|| Error::Parse("missing field \"t\"".into()))?,
            )?;
            let y = elem_from_json(
                &ring,
                value
                    .get("y")
                    .ok_or_else(|| Error::Parse("missing field \"y\"".into()))?,
            )?;
            let instance = local_counterexample(&ring, &t, &y, &budget)?;
            let seeming = is_seemingly_divisible(&instance.f, &instance.r)?;
            let cert = divide(&instance.f, &instance.r)?;
            let result = json!({
                "f": hom_to_json(&instance.f),
                "r": elem_to_json(&ring, &instance.r),
                "seeming": seeming_to_json(&instance.f, &instance.r, &seeming),
                "certificate": certificate_to_json(&instance.f, &instance.r, &cert),
            });
            emit(&common, "step2", &digest(raw.as_bytes()), None, result)?;
            Ok(0)
        }
        Verb::Probe {
            common,
            ring,
            trials,
            seed,
            oracle_check,
        } => {
            let budget = budget_for(&common);
            let r = parse_ring(&ring)?;
            let opts = ProbeOptions {
                trials,
                seed,
                oracle_check,
                ..ProbeOptions::default()
            };
            let verdict = probe_ring(&r, &opts, &budget)?;
            let digest_src =
                format!("ring={ring};trials={trials};seed={seed};oracle={oracle_check}");
            emit(
                &common,
                "probe",
                &digest(digest_src.as_bytes()),
                Some(seed),
                probe_to_json(&verdict),
            )?;
            Ok(0)
        }
        Verb::Gallery { common, name } => {
            let scenario = build_scenario(&name)?;
            emit(
                &common,
                "gallery",
                &digest(name.as_bytes()),
                None,
                scenario_to_json(&scenario),
            )?;
            Ok(0)
        }
        Verb::Suite { common, ids } => {
            let ids = if ids.is_empty() {
                (1..=9).collect()
            } else {
                ids
            };
            let mut reports = Vec::new();
            let mut all_passed = true;
            for id in ids {
                let rep = crate::suite::run_criterion(id);
                eprintln!("{}", rep.line());
                all_passed &= rep.passed;
                reports.push(json!({
                    "id": rep.id,
                    "name": rep.name,
                    "passed": rep.passed,
                    "detail": rep.detail,
                }));
            }
            let result = json!({ "criteria": reports, "allPassed": all_passed });
            let digest_src = "suite".to_string();
            emit(
                &common,
                "suite",
                &digest(digest_src.as_bytes()),
                None,
                result,
            )?;
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}
