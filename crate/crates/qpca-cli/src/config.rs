//! Run configuration: flags > config file (`key = value` lines) > the
//! `QPCA_SEED` environment variable > built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

use qpca_core::power::{PowerConfig, ShotModel};
use qpca_core::qsvt::EncodingMode;
use qpca_core::synth;

/// Parsed `key = value` settings from a config file.
#[derive(Debug, Clone, Default)]
pub struct FileSettings(BTreeMap<String, String>);

impl FileSettings {
    /// Parse a config file. Lines are `key = value`; `#` starts a comment.
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let mut map = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value", lineno + 1))?;
            map.insert(key.trim().to_owned(), value.trim().to_owned());
        }
        Ok(Self(map))
    }

    /// Look up a key.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }
}

/// Resolve the seed: explicit flag > config file > `QPCA_SEED` > default.
pub fn resolve_seed(flag: Option<u64>, file: &FileSettings) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    if let Some(raw) = file.get("seed") {
        return raw
            .parse()
            .map_err(|_| format!("config file seed {raw:?} is not an integer"));
    }
    if let Ok(raw) = std::env::var("QPCA_SEED") {
        return raw
            .parse()
            .map_err(|_| format!("QPCA_SEED={raw:?} is not an integer"));
    }
    Ok(synth::DEFAULT_SEED)
}

/// Resolve an `f64` setting with the same precedence ladder (no env step).
pub fn resolve_f64(
    flag: Option<f64>,
    file: &FileSettings,
    key: &str,
    default: f64,
) -> Result<f64, String> {
    if let Some(v) = flag {
        return Ok(v);
    }
    if let Some(raw) = file.get(key) {
        return raw
            .parse()
            .map_err(|_| format!("config file {key} = {raw:?} is not a number"));
    }
    Ok(default)
}

/// Parse an encoding-mode name.
pub fn parse_mode(name: &str) -> Result<EncodingMode, String> {
    match name.to_ascii_lowercase().as_str() {
        "oracle" => Ok(EncodingMode::Oracle),
        "polynomial" | "poly" => Ok(EncodingMode::Polynomial),
        "sample-faithful" | "sample" | "faithful" => Ok(EncodingMode::SampleFaithful),
        other => Err(format!(
            "unknown mode {other:?} (expected oracle, polynomial, or sample-faithful)"
        )),
    }
}

/// Mode name for reports.
pub fn mode_name(mode: EncodingMode) -> &'static str {
    match mode {
        EncodingMode::Oracle => "oracle",
        EncodingMode::Polynomial => "polynomial",
        EncodingMode::SampleFaithful => "sample-faithful",
    }
}

/// Assemble a [`PowerConfig`] from resolved settings.
pub fn power_config(
    seed: u64,
    gap_floor: f64,
    c_dme: f64,
    mode: EncodingMode,
    sampled_shots: bool,
) -> PowerConfig {
    PowerConfig {
        gap_floor,
        seed,
        c_dme,
        mode,
        shot_model: if sampled_shots {
            ShotModel::Sampled { seed }
        } else {
            ShotModel::Exact
        },
        ..PowerConfig::default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn file_settings_parse_and_precedence() {
        let mut path = std::env::temp_dir();
        path.push(format!("qpca-cfg-{}.conf", std::process::id()));
        let mut f = std::fs::File::create(&path).unwrap();
        writeln!(f, "# comment\nseed = 42\n eps = 0.5 ").unwrap();
        let settings = FileSettings::load(&path).unwrap();
        assert_eq!(settings.get("seed"), Some("42"));
        // Flag wins over file.
        assert_eq!(resolve_seed(Some(7), &settings).unwrap(), 7);
        // File wins over default.
        assert_eq!(resolve_seed(None, &settings).unwrap(), 42);
        assert_eq!(resolve_f64(None, &settings, "eps", 0.1).unwrap(), 0.5);
        assert_eq!(resolve_f64(None, &settings, "missing", 0.1).unwrap(), 0.1);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn mode_names_round_trip() {
        for name in ["oracle", "polynomial", "sample-faithful"] {
            assert_eq!(mode_name(parse_mode(name).unwrap()), name);
        }
        assert!(parse_mode("nope").is_err());
    }
}
