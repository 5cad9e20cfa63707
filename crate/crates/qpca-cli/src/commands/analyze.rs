//! `analyze`: extract principal components from a dataset or a synthetic
//! spectrum, with classical-oracle ground truth embedded in the report.

use serde_json::{json, Value};

use qpca_core::covariance::{self, Route};
use qpca_core::linalg::{eigh, vector, Spectrum};
use qpca_core::power::{self, ComponentList, EncodingSource, PowerError};
use qpca_core::synth;

use crate::commands::AnalyzeArgs;
use crate::config::{self, FileSettings};
use crate::dataset::{load_dataset, WeightMode};
use crate::exit_codes;
use crate::report;

/// Outcome of an analyze run: the report document and the process exit code.
pub struct AnalyzeOutcome {
    /// Full report document.
    pub report: Value,
    /// 0 on success, 3 when the gap floor aborted extraction (partial
    /// results are still in the report).
    pub exit: i32,
}

/// Run the analysis. Configuration errors come back as `Err` (exit 2, no
/// partial report).
pub fn run(args: &AnalyzeArgs) -> Result<AnalyzeOutcome, String> {
    let file = match &args.common.config {
        Some(path) => FileSettings::load(path)?,
        None => FileSettings::default(),
    };
    let seed = config::resolve_seed(args.common.seed, &file)?;
    let eps = config::resolve_f64(args.eps, &file, "eps", 1e-2)?;
    let gap_floor = config::resolve_f64(args.gap_floor, &file, "gap-floor", 1e-3)?;
    let c_dme = config::resolve_f64(args.c_dme, &file, "c-dme", 1.0)?;
    let mode = config::parse_mode(&args.mode)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(format!("eps {eps} outside (0, 1)"));
    }
    if args.components == 0 {
        return Err("need at least one component".into());
    }

    let cfg = config::power_config(seed, gap_floor, c_dme, mode, args.sampled_shots);
    let mut warnings: Vec<String> = Vec::new();
    let mut covariance_section: Option<Value> = None;
    let mut dump: Option<Value> = None;

    let (source, oracle, config_echo) = if let Some(raw) = &args.spectrum {
        let weights = crate::commands::parse_f64_list(raw)?;
        if weights.is_empty() {
            return Err("spectrum list is empty".into());
        }
        if weights.iter().any(|&w| w < 0.0) {
            return Err("spectrum entries must be nonnegative".into());
        }
        let dim = args
            .dim
            .unwrap_or(weights.len())
            .max(weights.len())
            .next_power_of_two();
        let mut rng = synth::rng(seed);
        let rho = synth::density_with_spectrum(&weights, dim, &mut rng)
            .map_err(|e| format!("invalid spectrum: {e}"))?;
        let oracle = rho.spectrum();
        if args.dump_encoding.is_some() {
            let enc = qpca_core::qsvt::block_encode_density_with(&rho, eps, mode, c_dme)
                .map_err(|e| format!("encoding dump failed: {e}"))?;
            dump = Some(report::block_encoding_json(&enc.encoding));
        }
        let source = EncodingSource::Density { rho, mode, c_dme };
        let echo = json!({
            "spectrum": weights,
            "dim": dim,
            "eps": eps,
            "components": args.components,
            "mode": config::mode_name(mode),
            "gap_floor": gap_floor,
            "c_dme": c_dme,
            "sampled_shots": args.sampled_shots,
        });
        (source, oracle, echo)
    } else if let Some(path) = &args.data {
        let weight_mode = match args.weights.to_ascii_lowercase().as_str() {
            "uniform" => WeightMode::Uniform,
            "column" => WeightMode::Column,
            other => return Err(format!("unknown weight mode {other:?}")),
        };
        let ds = load_dataset(path, weight_mode).map_err(|e| e.to_string())?;
        warnings.push(
            "data vectors are normalized to unit norm on load; spectra differ from \
             textbook PCA on unnormalized data"
                .to_owned(),
        );
        let route = match args.route.to_ascii_lowercase().as_str() {
            "a" => Route::A,
            "b" => Route::B,
            other => return Err(format!("unknown route {other:?}")),
        };
        let (source, oracle) = if args.uncentered {
            let rho =
                qpca_core::linalg::DensityMatrix::new(covariance::covariance_classical(&ds, false))
                    .map_err(|e| format!("ensemble not a valid state: {e}"))?;
            let oracle = rho.spectrum();
            (EncodingSource::Density { rho, mode, c_dme }, oracle)
        } else {
            let cov = covariance::covariance_classical(&ds, true);
            let oracle = eigh(&cov).map_err(|e| format!("oracle diagonalization: {e}"))?;
            let bundle = covariance::covariance_encoding_with(&ds, route, eps.min(0.49), c_dme)
                .map_err(|e| format!("covariance preparation: {e}"))?;
            covariance_section = Some(report::covariance_json(&bundle));
            if args.dump_encoding.is_some() {
                dump = Some(report::block_encoding_json(&bundle.encoding));
            }
            (covariance::covariance_source(&ds, route, c_dme), oracle)
        };
        let echo = json!({
            "data": path.display().to_string(),
            "weights": args.weights,
            "route": args.route,
            "uncentered": args.uncentered,
            "n": ds.dim(),
            "points": ds.len(),
            "raw_norms": ds.raw_norms(),
            "eps": eps,
            "components": args.components,
            "mode": config::mode_name(mode),
            "gap_floor": gap_floor,
            "c_dme": c_dme,
        });
        (source, oracle, echo)
    } else {
        return Err("provide either --spectrum or --data".into());
    };

    let (list, exit, gap_note) =
        match power::components_from_source(source, args.components, eps, &cfg) {
            Ok(list) => (list, exit_codes::OK, None),
            Err(PowerError::GapTooSmall {
                gap,
                floor,
                partial,
            }) => (
                partial,
                exit_codes::GAP_TOO_SMALL,
                Some(format!("gap {gap:.3e} below floor {floor:.3e}")),
            ),
            Err(e) => return Err(format!("analysis failed: {e}")),
        };

    if let (Some(path), Some(doc)) = (&args.dump_encoding, &dump) {
        std::fs::write(path, report::to_string(doc))
            .map_err(|e| format!("cannot write encoding dump: {e}"))?;
    }

    let body = assemble_body(&list, &oracle, warnings, gap_note, covariance_section);
    let doc = report::wrap_report("analyze", seed, config_echo, body);
    Ok(AnalyzeOutcome { report: doc, exit })
}

fn assemble_body(
    list: &ComponentList,
    oracle: &Spectrum,
    warnings: Vec<String>,
    gap_note: Option<String>,
    covariance_section: Option<Value>,
) -> Value {
    let mut body = report::components_json(list, oracle);
    let obj = body.as_object_mut().unwrap();
    obj.insert("oracle".into(), report::spectrum_json(oracle));
    obj.insert("warnings".into(), json!(warnings));
    if let Some(note) = gap_note {
        obj.insert("gap_too_small".into(), json!(note));
    }
    if let Some(cov) = covariance_section {
        obj.insert("covariance".into(), cov);
    }
    body
}

/// Convenience for tests: overlaps of extracted components with the oracle.
pub fn overlaps(list: &ComponentList, oracle: &Spectrum) -> Vec<f64> {
    list.components
        .iter()
        .enumerate()
        .map(|(i, est)| vector::overlap(&est.vector, &oracle.eigenvector(i)))
        .collect()
}
