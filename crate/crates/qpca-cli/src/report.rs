//! JSON serialization of reports and debug dumps.
//!
//! Complex data is written as row-major `[re, im]` pairs. `serde_json`
//! maps are sorted, so two runs with identical configuration produce
//! byte-identical documents except for the single `timestamp` field.

use serde_json::{json, Map, Value};

use qpca_core::blockenc::{extract_block, BlockEncoding, ResourceLedger};
use qpca_core::covariance::CovarianceBundle;
use qpca_core::linalg::{ComplexMatrix, Spectrum};
use qpca_core::power::{ComponentList, EigenEstimate};
use qpca_core::Complex64;

/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `[re, im]` pair.
pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Row-major matrix of `[re, im]` pairs.
pub fn matrix_json(m: &ComplexMatrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(|&z| complex_json(z)).collect()))
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": rows,
    })
}

/// Complex vector as `[re, im]` pairs.
pub fn vector_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|&z| complex_json(z)).collect())
}

/// Ledger counters.
pub fn ledger_json(l: &ResourceLedger) -> Value {
    json!({
        "rho_copies": l.rho_copies,
        "circuit_depth": l.circuit_depth,
        "ancilla_qubits": l.ancilla_qubits,
        "unitary_calls": l.unitary_calls,
    })
}

/// Debug dump of a block encoding: unitary, parameters, ledger.
pub fn block_encoding_json(be: &BlockEncoding) -> Value {
    json!({
        "alpha": be.alpha(),
        "ancillas": be.ancillas(),
        "eps": be.eps(),
        "target_dim": be.target_dim(),
        "unitary": matrix_json(be.unitary()),
        "block": matrix_json(&extract_block(be)),
        "ledger": ledger_json(be.ledger()),
    })
}

/// One estimated component with its oracle comparison.
pub fn component_json(est: &EigenEstimate, oracle: Option<(f64, f64)>) -> Value {
    let mut m = Map::new();
    m.insert("value".into(), json!(est.value));
    m.insert("vector".into(), vector_json(&est.vector));
    m.insert("residual".into(), json!(est.residual));
    m.insert("ledger".into(), ledger_json(&est.ledger));
    if let Some((oracle_value, overlap)) = oracle {
        m.insert("oracle_value".into(), json!(oracle_value));
        m.insert("overlap_with_oracle".into(), json!(overlap));
    }
    Value::Object(m)
}

/// Components plus total ledger, compared against the classical spectrum.
pub fn components_json(list: &ComponentList, oracle: &Spectrum) -> Value {
    let comps: Vec<Value> = list
        .components
        .iter()
        .enumerate()
        .map(|(i, est)| {
            let oracle_pair = (i < oracle.dim()).then(|| {
                let overlap =
                    qpca_core::linalg::vector::overlap(&est.vector, &oracle.eigenvector(i));
                (oracle.eigenvalue(i), overlap)
            });
            component_json(est, oracle_pair)
        })
        .collect();
    json!({
        "components": comps,
        "total_ledger": ledger_json(&list.total_ledger),
    })
}

/// Spectrum of the classical oracle.
pub fn spectrum_json(s: &Spectrum) -> Value {
    json!({
        "eigenvalues": s.eigenvalues(),
        "gap": s.gap(),
    })
}

/// Covariance bundle export: centroid, target spectrum, route, ledger.
pub fn covariance_json(bundle: &CovarianceBundle) -> Value {
    let spectrum = qpca_core::linalg::eigh(&bundle.centered_target)
        .map(|s| spectrum_json(&s))
        .unwrap_or(Value::Null);
    json!({
        "route": match bundle.route {
            qpca_core::covariance::Route::A => "A",
            qpca_core::covariance::Route::B => "B",
        },
        "centroid": vector_json(&bundle.centroid),
        "centered_spectrum": spectrum,
        "ledger": ledger_json(&bundle.ledger),
        "encoding": {
            "alpha": bundle.encoding.alpha(),
            "ancillas": bundle.encoding.ancillas(),
            "eps": bundle.encoding.eps(),
            "target_dim": bundle.encoding.target_dim(),
        },
    })
}

/// Wrap a report body with version, seed, config echo and timestamp.
pub fn wrap_report(command: &str, seed: u64, config_echo: Value, body: Value) -> Value {
    json!({
        "command": command,
        "version": VERSION,
        "seed": seed,
        "config": config_echo,
        "timestamp": chrono_free_timestamp(),
        "report": body,
    })
}

/// Seconds since the epoch; the only nondeterministic report field.
fn chrono_free_timestamp() -> f64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs_f64())
        .unwrap_or(0.0)
}

/// Render to a stable, pretty-printed string.
pub fn to_string(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("report serialization cannot fail")
}
