//! Run configuration: the poset spec plus shift range, field, seed and
//! truncation margin. Read from TOML or JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldChoice, FieldError};
use crate::order::{Kind, OrderError, PosetSpec};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bad JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("shift range [{0}, {1}] must lie inside [-4, 4]")]
    ShiftRange(i64, i64),
    #[error("margin must be at least 1")]
    Margin,
}

pub const DEFAULT_SEED: u64 = 20_260_101;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub poset: PosetSpec,
    pub shift_range: (i64, i64),
    pub field: FieldChoice,
    pub seed: u64,
    pub margin: u32,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    kind: Kind,
    t_labels: Vec<String>,
    z_window: (i64, i64),
    #[serde(default = "default_shifts")]
    shift_range: (i64, i64),
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    margin: Option<u32>,
}

fn default_shifts() -> (i64, i64) {
    (-2, 2)
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            poset: PosetSpec::numbered(Kind::TypeA, 1, (-4, 6)).expect("default spec is valid"),
            shift_range: default_shifts(),
            field: FieldChoice::Rational,
            seed: DEFAULT_SEED,
            margin: 2,
        }
    }
}

impl RunConfig {
    pub fn new(poset: PosetSpec) -> Self {
        RunConfig { poset, ..RunConfig::default() }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let (lo, hi) = self.shift_range;
        if lo < -4 || hi > 4 || lo > hi {
            return Err(ConfigError::ShiftRange(lo, hi));
        }
        if self.margin < 1 {
            return Err(ConfigError::Margin);
        }
        Ok(())
    }

    fn from_raw(raw: RawConfig) -> Result<Self, ConfigError> {
        let cfg = RunConfig {
            poset: PosetSpec::new(raw.kind, raw.t_labels, raw.z_window)?,
            shift_range: raw.shift_range,
            field: match raw.field {
                Some(f) => f.parse()?,
                None => FieldChoice::Rational,
            },
            seed: raw.seed.unwrap_or(DEFAULT_SEED),
            margin: raw.margin.unwrap_or(2),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        RunConfig::from_raw(toml::from_str(text)?)
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        RunConfig::from_raw(serde_json::from_str(text)?)
    }

    /// Picks the parser from the extension; anything but `.json` is TOML.
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        if path.extension().is_some_and(|e| e == "json") {
            RunConfig::from_json(&text)
        } else {
            RunConfig::from_toml(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = RunConfig::default();
        assert_eq!(c.poset.z_window(), (-4, 6));
        assert_eq!(c.poset.t_labels(), ["t0"]);
        assert_eq!(c.shift_range, (-2, 2));
        assert_eq!(c.margin, 2);
        c.validate().unwrap();
    }

    #[test]
    fn parse_toml_and_json() {
        let t = RunConfig::from_toml(
            "kind = \"D\"\nt_labels = [\"a\", \"b\"]\nz_window = [-3, 5]\nfield = \"gf2\"\nmargin = 3\n",
        )
        .unwrap();
        assert_eq!(t.poset.kind(), Kind::TypeD);
        assert_eq!(t.field, FieldChoice::Prime(2));
        assert_eq!(t.margin, 3);
        let j = RunConfig::from_json(r#"{"kind":"A","t_labels":["t0"],"z_window":[0,4],"shift_range":[-1,1],"seed":9}"#)
            .unwrap();
        assert_eq!(j.shift_range, (-1, 1));
        assert_eq!(j.seed, 9);
    }

    #[test]
    fn rejects_bad_values() {
        let base = "kind = \"A\"\nt_labels = [\"t0\"]\nz_window = [0, 4]\n";
        assert!(matches!(
            RunConfig::from_toml(&format!("{base}shift_range = [-5, 0]\n")),
            Err(ConfigError::ShiftRange(-5, 0))
        ));
        assert!(matches!(RunConfig::from_toml(&format!("{base}margin = 0\n")), Err(ConfigError::Margin)));
        assert!(matches!(RunConfig::from_toml(&format!("{base}colour = 1\n")), Err(ConfigError::Toml(_))));
        assert!(matches!(
            RunConfig::from_toml("kind = \"A\"\nt_labels = []\nz_window = [0, 4]\n"),
            Err(ConfigError::Order(OrderError::EmptyLabels))
        ));
    }
}
