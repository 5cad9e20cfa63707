//! `validate`: run the acceptance criteria and print one line each.

use crate::acceptance;
use crate::commands::ValidateArgs;

/// Run the suite; returns the per-criterion lines and whether all passed.
pub fn run(args: &ValidateArgs) -> (Vec<String>, bool) {
    let seed = args
        .seed
        .or_else(|| std::env::var("QPCA_SEED").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(qpca_core::synth::DEFAULT_SEED);
    let outcomes = acceptance::run(args.only.as_deref(), seed);
    let mut all_passed = !outcomes.is_empty();
    let mut lines = Vec::new();
    for o in &outcomes {
        all_passed &= o.passed;
        lines.push(format!(
            "{} [{:>2}] {:<22} {:>6.2}s/{:>3.0}s  {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.index,
            o.name,
            o.seconds,
            o.budget,
            o.detail
        ));
    }
    if outcomes.is_empty() {
        lines.push("no criteria matched the filter".to_owned());
    }
    (lines, all_passed)
}
