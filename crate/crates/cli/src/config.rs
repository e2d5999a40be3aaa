use crate::{CliError, CliResult};

pub const DEFAULT_DIGITS: usize = 12;
pub const DEFAULT_T_MAX: f64 = 100.0;
/// Hard ceiling for `t_max`; the κ engine covers |t| ≤ 10³.
pub const T_MAX_LIMIT: f64 = 1.0e3;
pub const T_MAX_ENV: &str = "ZETAPHASE_T_MAX";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunConfig {
    /// Significant digits in numeric output.
    pub digits: usize,
    /// Largest |t| (and catalog height) accepted by eval, scan and zeros.
    pub t_max: f64,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            digits: DEFAULT_DIGITS,
            t_max: DEFAULT_T_MAX,
            threads: 0,
            format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn new(digits: usize, t_max: f64, threads: usize, format: OutputFormat) -> CliResult<Self> {
        if !(6..=17).contains(&digits) {
            return Err(CliError::Usage(format!("digits must be in 6..=17, got {digits}")));
        }
        if !(t_max > 0.0 && t_max <= T_MAX_LIMIT) {
            return Err(CliError::Usage(format!("t_max must be in (0, {T_MAX_LIMIT}], got {t_max}")));
        }
        Ok(RunConfig {
            digits,
            t_max,
            threads,
            format,
        })
    }

    /// Rejects |t| > t_max with the range error of the core library.
    pub fn check_t(&self, t: f64) -> CliResult<()> {
        if !t.is_finite() || t.abs() > self.t_max {
            return Err(CliError::Domain(zetaphase::Error::OutOfRange {
                what: "t",
                value: t,
                limit: self.t_max,
            }));
        }
        Ok(())
    }
}
