//! Bounded scans for the q-Rado, minimal-uniqueness and representability
//! statements, with replay of whatever they report.
//!
//! ```text
//! cargo run --release --example conjecture_scans -- [max_dim] [max_family]
//! ```

use qtransversal::lab::{
    replay_counterexample, replay_outcome, scan_minimal_uniqueness, scan_q_rado, scan_representability,
    standard_matroids, ScanConfig, ScanMode,
};

fn main() -> qtransversal::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let max_dim = args.first().copied().unwrap_or(2);
    let max_family = args.get(1).copied().unwrap_or(2);
    let cfg = ScanConfig::exhaustive(2, max_dim, max_family).with_shards(4);

    let rado = scan_q_rado(&cfg, standard_matroids)?;
    println!("q-Rado: {} instances, {} counterexamples, {:.2?}", rado.instances_checked, rado.counterexamples.len(), rado.elapsed);
    for c in &rado.counterexamples {
        println!("  replays: {}\n{c:#}", replay_counterexample(c)?);
    }

    let uniq = scan_minimal_uniqueness(&cfg)?;
    println!("minimal uniqueness: {} families, {} counterexamples", uniq.instances_checked, uniq.counterexamples.len());

    let reps = scan_representability(&cfg, 4)?;
    let found = reps.outcomes.iter().filter(|o| o["status"] == "found").count();
    println!("representability: {found} of {} matroids represented", reps.instances_checked);
    for o in &reps.outcomes {
        assert!(replay_outcome(o)?);
    }

    let sampled = ScanConfig { mode: ScanMode::Random { seed: 2024, count: 200 }, ..ScanConfig::exhaustive(2, 3, 3) };
    let r = scan_minimal_uniqueness(&sampled)?;
    println!("random uniqueness sample over GF(2)^3: {} families, {} counterexamples", r.instances_checked, r.counterexamples.len());
    Ok(())
}
