//! `compare`: analytic (and optionally empirical) cost tables for both
//! methods under both probability conventions.

use qpca_core::baseline::{self, Convention, CostParams, Method};
use qpca_core::power;
use qpca_core::synth;

use crate::commands::{parse_f64_list, parse_usize_list, CompareArgs};
use crate::config::{self, FileSettings};

/// One table row, already formatted.
#[derive(Debug)]
pub struct Row {
    gamma: f64,
    r_max: f64,
    r_min: f64,
    eps: f64,
    components: usize,
    dim: usize,
    method: &'static str,
    convention: &'static str,
    copies: f64,
    depth: f64,
    depth_alt: f64,
    winner: &'static str,
    empirical_copies: Option<f64>,
}

/// Produce the CSV table. Configuration errors (including an empty grid)
/// come back as `Err`.
pub fn run(args: &CompareArgs) -> Result<String, String> {
    let file = match &args.common.config {
        Some(path) => FileSettings::load(path)?,
        None => FileSettings::default(),
    };
    let seed = config::resolve_seed(args.common.seed, &file)?;

    let gammas = parse_f64_list(&args.gamma)?;
    let r_maxes = parse_f64_list(&args.r_max)?;
    let r_mins = parse_f64_list(&args.r_min)?;
    let epses = parse_f64_list(&args.eps)?;
    let components = parse_usize_list(&args.components)?;
    if gammas.is_empty()
        || r_maxes.is_empty()
        || r_mins.is_empty()
        || epses.is_empty()
        || components.is_empty()
    {
        return Err("comparison grid is empty".into());
    }

    let mut rows: Vec<Row> = Vec::new();
    for &gamma in &gammas {
        for &r_max in &r_maxes {
            for &r_min in &r_mins {
                for &eps in &epses {
                    for &r_count in &components {
                        let params = CostParams {
                            r_max,
                            r_min,
                            gamma,
                            eps,
                            r_count,
                            dim: args.dim,
                        };
                        for convention in [Convention::BornWeight, Convention::AmplitudeSquared] {
                            push_pair(&mut rows, &params, convention, args.empirical, seed)?;
                        }
                    }
                }
            }
        }
    }

    render_csv(&rows)
}

fn push_pair(
    rows: &mut Vec<Row>,
    params: &CostParams,
    convention: Convention,
    empirical: bool,
    seed: u64,
) -> Result<(), String> {
    let orig =
        baseline::cost_model(Method::Original, convention, params).map_err(|e| e.to_string())?;
    let new = baseline::cost_model(Method::New, convention, params).map_err(|e| e.to_string())?;
    let winner = if orig.copies <= new.copies {
        "original"
    } else {
        "new"
    };
    let (emp_orig, emp_new) = if empirical {
        empirical_costs(params, seed)
    } else {
        (None, None)
    };
    let conv_name = match convention {
        Convention::BornWeight => "born",
        Convention::AmplitudeSquared => "amplitude-squared",
    };
    rows.push(Row {
        gamma: params.gamma,
        r_max: params.r_max,
        r_min: params.r_min,
        eps: params.eps,
        components: params.r_count,
        dim: params.dim,
        method: "original",
        convention: conv_name,
        copies: orig.copies,
        depth: orig.depth,
        depth_alt: orig.depth_alt,
        winner,
        empirical_copies: emp_orig,
    });
    rows.push(Row {
        gamma: params.gamma,
        r_max: params.r_max,
        r_min: params.r_min,
        eps: params.eps,
        components: params.r_count,
        dim: params.dim,
        method: "new",
        convention: conv_name,
        copies: new.copies,
        depth: new.depth,
        depth_alt: new.depth_alt,
        winner,
        empirical_copies: emp_new,
    });
    Ok(())
}

/// Small-scale realized costs on a planted spectrum matching the grid
/// point, where one is constructible; `None` otherwise.
fn empirical_costs(params: &CostParams, seed: u64) -> (Option<f64>, Option<f64>) {
    if params.eps < 5e-3 {
        return (None, None);
    }
    let Some(spectrum) = planted_spectrum(params) else {
        return (None, None);
    };
    let mut rng = synth::rng(seed);
    let Ok(rho) = synth::density_with_spectrum(&spectrum, params.dim.next_power_of_two(), &mut rng)
    else {
        return (None, None);
    };

    let orig = baseline::sample_components(&rho, params.eps, params.r_count, seed)
        .ok()
        .map(|run| run.copies);
    let cfg = power::PowerConfig {
        seed,
        ..power::PowerConfig::default()
    };
    let new = power::qpca_components(&rho, params.r_count, params.eps.max(1e-2), &cfg)
        .ok()
        .map(|list| list.total_ledger.rho_copies as f64);
    (orig, new)
}

/// Spectrum with top eigenvalue `r_max`, gap `gamma`, and the R-th
/// eigenvalue near `r_min`, when those constraints are satisfiable.
fn planted_spectrum(params: &CostParams) -> Option<Vec<f64>> {
    let r1 = params.r_max;
    let mut top = vec![r1];
    if params.r_count >= 2 {
        let r2 = r1 - params.gamma;
        if r2 <= 0.0 || r2 < params.r_min - 1e-12 {
            return None;
        }
        top.push(r2);
        for i in 2..params.r_count {
            // Geometric interpolation from r₂ down to r_min.
            let frac = (i - 1) as f64 / (params.r_count - 1) as f64;
            top.push(r2 * (params.r_min / r2).powf(frac));
        }
    }
    let used: f64 = top.iter().sum();
    if used >= 1.0 {
        return None;
    }
    // Spread the rest uniformly below the smallest planted value so the
    // planted eigenvalues really are the top R.
    let dim = params.dim.next_power_of_two();
    let tail_slots = dim - top.len();
    if tail_slots > 0 {
        let tail = (1.0 - used) / tail_slots as f64;
        if tail > *top.last().unwrap() {
            return None;
        }
        top.extend(std::iter::repeat_n(tail, tail_slots));
    } else if (used - 1.0).abs() > 1e-9 {
        return None;
    }
    Some(top)
}

fn render_csv(rows: &[Row]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "gamma",
        "r_max",
        "r_min",
        "eps",
        "components",
        "dim",
        "method",
        "convention",
        "copies",
        "depth",
        "depth_alt",
        "winner",
        "empirical_copies",
    ])
    .map_err(|e| e.to_string())?;
    for r in rows {
        w.write_record([
            format!("{}", r.gamma),
            format!("{}", r.r_max),
            format!("{}", r.r_min),
            format!("{}", r.eps),
            format!("{}", r.components),
            format!("{}", r.dim),
            r.method.to_owned(),
            r.convention.to_owned(),
            format!("{:.6e}", r.copies),
            format!("{:.6e}", r.depth),
            format!("{:.6e}", r.depth_alt),
            r.winner.to_owned(),
            r.empirical_copies
                .map(|c| format!("{c:.6e}"))
                .unwrap_or_default(),
        ])
        .map_err(|e| e.to_string())?;
    }
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}
