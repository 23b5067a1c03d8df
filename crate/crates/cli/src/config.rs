use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde::Deserialize;

use qdeform_core::qgroup::QGroupParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

/// Values read from `--config`; every field is optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub n: Option<usize>,
    pub ell: Option<u32>,
    pub y: Option<u32>,
    pub z: Option<u32>,
    pub restricted: Option<bool>,
    pub height_bound: Option<u32>,
    pub maxdeg: Option<u32>,
    pub working_order: Option<i64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}

/// Fully resolved session settings.
#[derive(Debug, Clone)]
pub struct SessionConfig {
    pub params: QGroupParams,
    pub maxdeg: u32,
    pub working_order: i64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

/// Flag values as given on the command line.
#[derive(Debug, Default, Clone)]
pub struct FlagConfig {
    pub n: Option<usize>,
    pub ell: Option<u32>,
    pub y: Option<u32>,
    pub z: Option<u32>,
    pub restricted: bool,
    pub height_bound: Option<u32>,
    pub maxdeg: Option<u32>,
    pub working_order: Option<i64>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

impl SessionConfig {
    /// Flags override the file; the file overrides the defaults `(2, 2, 0, 1)`.
    pub fn resolve(flags: &FlagConfig, file: Option<FileConfig>) -> Result<Self> {
        let file = file.unwrap_or_default();
        let n = flags.n.or(file.n).unwrap_or(2);
        let ell = flags.ell.or(file.ell).unwrap_or(2);
        let y = flags.y.or(file.y).unwrap_or(0);
        let z = flags.z.or(file.z).unwrap_or(1);
        let restricted = flags.restricted || file.restricted.unwrap_or(false);
        let mut params = QGroupParams::new(n, ell, y, z)?.with_restricted(restricted);
        if let Some(h) = flags.height_bound.or(file.height_bound) {
            params = params.with_height_bound(h);
            params.validate()?;
        }
        let working_order = flags.working_order.or(file.working_order).unwrap_or(4);
        if working_order < 0 {
            bail!("working order must be nonnegative, got {working_order}");
        }
        Ok(SessionConfig {
            params,
            maxdeg: flags.maxdeg.or(file.maxdeg).unwrap_or(3),
            working_order,
            format: flags.format.or(file.format).unwrap_or(OutputFormat::Text),
            out: flags.out.clone().or(file.out),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win_over_file() {
        let file: FileConfig = toml::from_str("n = 3\nell = 3\ny = 1\nz = 2\nmaxdeg = 2\nformat = \"text\"").unwrap();
        let flags = FlagConfig { ell: Some(2), y: Some(0), z: Some(1), maxdeg: Some(4), ..Default::default() };
        let s = SessionConfig::resolve(&flags, Some(file)).unwrap();
        assert_eq!((s.params.n, s.params.ell, s.params.y, s.params.z), (3, 2, 0, 1));
        assert_eq!(s.maxdeg, 4);
        assert_eq!(s.format, OutputFormat::Text);
    }

    #[test]
    fn invalid_params_rejected() {
        let flags = FlagConfig { y: Some(1), z: Some(1), ..Default::default() };
        assert!(SessionConfig::resolve(&flags, None).is_err());
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
