//! `key = value` run configuration with `#` comments.

use std::path::{Path, PathBuf};

use crate::arith::QuadraticField;
use crate::bounds::BoundConfig;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunConfig {
    pub bound: BoundConfig,
    pub field: Option<QuadraticField>,
    pub output: Option<PathBuf>,
    pub verbosity: u8,
}

fn positive(key: &str, raw: &str) -> Result<f64> {
    let bad = || Error::BadValue {
        key: key.into(),
        value: raw.into(),
    };
    let v: f64 = raw.parse().map_err(|_| bad())?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Parses configuration text. Absent keys keep their defaults; constants
/// must be strictly positive.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (i, raw_line) in text.lines().enumerate() {
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
            line: i + 1,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(Error::ConfigParse {
                line: i + 1,
                msg: "empty key or value".into(),
            });
        }
        let b = &mut cfg.bound;
        match key {
            "C_main" => b.c_main = positive(key, value)?,
            "G_min" => b.g_min = positive(key, value)?,
            "gyory_C13" => b.gyory_c13 = positive(key, value)?,
            "gyory_C14" => b.gyory_c14 = positive(key, value)?,
            "lefourn_C118" => b.lefourn_c118 = positive(key, value)?,
            "lefourn_C119" => b.lefourn_c119 = positive(key, value)?,
            "precision_bits" => {
                b.precision_bits = value.parse().map_err(|_| Error::BadValue {
                    key: key.into(),
                    value: value.into(),
                })?
            }
            "field" => cfg.field = Some(QuadraticField::parse(value)?),
            "output" => cfg.output = Some(PathBuf::from(value)),
            "verbosity" => {
                cfg.verbosity = value.parse().map_err(|_| Error::BadValue {
                    key: key.into(),
                    value: value.into(),
                })?
            }
            _ => return Err(Error::UnknownKey(key.into())),
        }
    }
    cfg.bound.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        assert_eq!(parse_config("").unwrap(), RunConfig::default());
        let c = parse_config("# run\nC_main = 2.5\n\nfield = Q(i)  # gaussian\n").unwrap();
        assert_eq!(c.bound.c_main, 2.5);
        assert_eq!(c.field, Some(QuadraticField::imaginary(-1).unwrap()));
        assert_eq!(c.bound.precision_bits, 64);
    }

    #[test]
    fn rejections() {
        assert!(matches!(
            parse_config("C_main = -1"),
            Err(Error::BadValue { .. })
        ));
        assert!(matches!(
            parse_config("C_main = 0"),
            Err(Error::BadValue { .. })
        ));
        assert_eq!(
            parse_config("colour = red"),
            Err(Error::UnknownKey("colour".into()))
        );
        assert!(matches!(
            parse_config("C_main 2"),
            Err(Error::ConfigParse { line: 1, .. })
        ));
        assert!(matches!(
            parse_config("G_min = 2"),
            Err(Error::BadValue { .. })
        ));
        assert!(matches!(
            parse_config("precision_bits = 32"),
            Err(Error::BadValue { .. })
        ));
        assert!(matches!(
            parse_config("field = Q(sqrt(-5))"),
            Err(Error::UnsupportedField(_))
        ));
    }
}
