//! `bench`: exponentiation-channel convergence regression.

use qpca_core::dme;
use qpca_core::synth;

use crate::commands::BenchArgs;
use crate::config::{self, FileSettings};

/// Run the benchmark; returns the CSV table and the fitted log-log slope.
pub fn run(args: &BenchArgs) -> Result<(String, f64), String> {
    let file = match &args.common.config {
        Some(path) => FileSettings::load(path)?,
        None => FileSettings::default(),
    };
    let seed = config::resolve_seed(args.common.seed, &file)?;
    let steps: Vec<u64> = args
        .steps
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<u64>()
                .map_err(|_| format!("bad step count {s:?}"))
        })
        .collect::<Result<_, _>>()?;
    if steps.is_empty() {
        return Err("no step counts given".into());
    }
    if !args.dim.is_power_of_two() || args.dim < 2 {
        return Err(format!("dim {} must be a power of two ≥ 2", args.dim));
    }

    let mut rng = synth::rng(seed);
    let rho = synth::random_density(2, args.dim, &mut rng).map_err(|e| e.to_string())?;

    let mut points = Vec::new();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["steps", "empirical_error", "rho_copies", "circuit_depth"])
        .map_err(|e| e.to_string())?;
    for &n in &steps {
        // ε chosen so ⌈t²/ε⌉ realizes exactly n steps.
        let eps = args.t * args.t / (n as f64 - 0.5);
        let res = dme::exponentiate_density(&rho, args.t, eps.min(0.999))
            .map_err(|e| format!("exponentiation at {n} steps failed: {e}"))?;
        points.push((n as f64, res.empirical_error));
        w.write_record([
            format!("{}", res.steps()),
            format!("{:.8e}", res.empirical_error),
            format!("{}", res.ledger.rho_copies),
            format!("{:.3}", res.ledger.circuit_depth),
        ])
        .map_err(|e| e.to_string())?;
    }
    let slope = log_log_slope(&points);
    let csv =
        String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    Ok((csv, slope))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.max(1e-300).ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
