//! Key=value configuration files and flag/file/default resolution.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use jc_gqd::SystemParams;

use crate::angle::parse_angle;
use crate::{CliError, CommonArgs, OutputFormat};

/// Parsed configuration file: one `key=value` per line, `#` comments.
#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    entries: HashMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text).map_err(CliError::Usage)
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut entries = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
            entries.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Self { entries })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }
}

/// Fully resolved run settings shared by all commands.
#[derive(Debug, Clone)]
pub struct Settings {
    pub params: SystemParams,
    pub t_max: f64,
    pub samples: usize,
    pub output: PathBuf,
    pub format: OutputFormat,
}

pub struct Defaults {
    pub alpha: f64,
    pub t_max: f64,
    pub samples: usize,
}

pub const EVOLVE_DEFAULTS: Defaults = Defaults {
    alpha: std::f64::consts::FRAC_PI_4,
    t_max: 25.0,
    samples: 2000,
};

pub const SPECTRUM_DEFAULTS: Defaults = Defaults {
    alpha: std::f64::consts::FRAC_PI_4,
    t_max: 200.0,
    samples: 16384,
};

fn parse_from_file<T: std::str::FromStr>(
    file: &FileConfig,
    key: &str,
) -> Result<Option<T>, CliError> {
    match file.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("config key '{key}': cannot parse '{raw}'"))),
    }
}

/// Resolves a [`ValueEnum`] flag against the config file.
pub fn resolve_enum<T: ValueEnum>(
    flag: Option<T>,
    file: &FileConfig,
    key: &str,
) -> Result<Option<T>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match file.get(key) {
        None => Ok(None),
        Some(raw) => T::from_str(raw, true)
            .map(Some)
            .map_err(|_| CliError::Usage(format!("config key '{key}': unknown value '{raw}'"))),
    }
}

pub fn resolve_f64(
    flag: Option<f64>,
    file: &FileConfig,
    key: &str,
) -> Result<Option<f64>, CliError> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => parse_from_file(file, key),
    }
}

/// Loads the config file named in `common` (if any) and resolves every
/// shared setting: flag first, then file, then `defaults`.
pub fn resolve(common: &CommonArgs, defaults: &Defaults) -> Result<(Settings, FileConfig), CliError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };

    let alpha = match common
        .alpha
        .clone()
        .or_else(|| file.get("alpha").map(String::from))
    {
        Some(text) => parse_angle(&text).map_err(CliError::Usage)?,
        None => defaults.alpha,
    };
    let n: u32 = common
        .n
        .or(parse_from_file(&file, "n")?)
        .unwrap_or(0);
    let g: f64 = common.g.or(parse_from_file(&file, "g")?).unwrap_or(1.0);
    let nu: f64 = common.nu.or(parse_from_file(&file, "nu")?).unwrap_or(1.0);
    let params = SystemParams::resonant(alpha, n, g, nu)?;

    let t_max = common
        .t_max
        .or(parse_from_file(&file, "t_max")?)
        .unwrap_or(defaults.t_max);
    let samples = common
        .samples
        .or(parse_from_file(&file, "samples")?)
        .unwrap_or(defaults.samples);
    let output: PathBuf = common
        .output
        .clone()
        .or(parse_from_file(&file, "output")?)
        .ok_or_else(|| CliError::Usage("an --output path is required".into()))?;
    let format = resolve_enum(common.format, &file, "format")?.unwrap_or(OutputFormat::Csv);

    Ok((
        Settings {
            params,
            t_max,
            samples,
            output,
            format,
        },
        file,
    ))
}

/// Uniform time grid over `[0, t_max]`, endpoints included.
pub fn time_grid(t_max: f64, samples: usize) -> Result<Vec<f64>, CliError> {
    if t_max <= 0.0 || t_max.is_nan() || samples < 2 {
        return Err(CliError::Usage(format!(
            "invalid grid: t_max = {t_max}, samples = {samples}"
        )));
    }
    Ok((0..samples)
        .map(|j| t_max * j as f64 / (samples - 1) as f64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_blank_lines() {
        let cfg = FileConfig::parse("# header\nalpha = pi/6\n\nn=3 # trailing\n").unwrap();
        assert_eq!(cfg.get("alpha"), Some("pi/6"));
        assert_eq!(cfg.get("n"), Some("3"));
        assert_eq!(cfg.get("missing"), None);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(FileConfig::parse("alpha pi/6").is_err());
    }

    #[test]
    fn flags_override_file_values() {
        let file = FileConfig::parse("alpha=pi/6\nn=5\ng=2.0\noutput=from_file.csv").unwrap();
        let common = CommonArgs {
            alpha: Some("pi/4".into()),
            n: None,
            g: None,
            nu: None,
            t_max: None,
            samples: None,
            output: None,
            format: None,
            config: None,
        };
        // emulate resolve() with a pre-parsed file
        let alpha = common
            .alpha
            .clone()
            .or_else(|| file.get("alpha").map(String::from))
            .unwrap();
        assert_eq!(parse_angle(&alpha).unwrap(), std::f64::consts::FRAC_PI_4);
        let n: u32 = common
            .n
            .or(parse_from_file(&file, "n").unwrap())
            .unwrap_or(0);
        assert_eq!(n, 5);
    }
}
