//! Classify finite rings into local factors, predict where seeming
//! divisibility equals divisibility, and verify the prediction by probe.
//!
//! Run with `cargo run --example classify_and_probe`.

use moddiv::gallery::{build_scenario, classify_finite_ring, probe_ring, ProbeOptions};
use moddiv::ring::parse_ring;
use moddiv::Budget;

fn main() -> moddiv::Result<()> {
    let budget = Budget::default();

    for desc in ["Z/12", "GF(2)[x]/(x^3)", "GF(2)[x,y]/(x^2,xy,y^2)"] {
        let ring = parse_ring(desc)?;
        let c = classify_finite_ring(&ring, &budget)?;
        println!("{desc}:");
        for f in &c.factors {
            println!(
                "  local factor of size {}, maximal ideal on {} generator(s), principal: {}",
                f.elements.len(),
                f.max_ideal_gens.len(),
                f.is_principal
            );
        }
        println!(
            "  predicted agreement of seeming and genuine divisibility: {}",
            c.predicted_sp
        );

        let opts = ProbeOptions {
            trials: 50,
            seed: 42,
            ..ProbeOptions::default()
        };
        let verdict = probe_ring(&ring, &opts, &budget)?;
        match &verdict.counterexample {
            None => println!("  probe: clean after {} trials", verdict.trials),
            Some(rec) => println!("  probe: counterexample found ({:?})", rec.phase),
        }
        println!();
    }

    // The scenario catalog bundles ready-made instances.
    let scenario = build_scenario("step2-minimal")?;
    println!("scenario {:?}: {}", scenario.name, scenario.description);
    Ok(())
}
