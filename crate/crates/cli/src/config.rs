use std::fs;
use std::path::Path;

use fricke_core::cert::DEFAULT_PRIME;
use fricke_core::dynamics::DEFAULT_TERM_BUDGET;
use fricke_core::growth::DEFAULT_LENGTH_BUDGET;
use fricke_core::Automorphism;

use crate::error::{CliError, Result};

/// Absolute floor of the comparison tolerance.
pub const ABSOLUTE_TOLERANCE: f64 = 0.05;

/// Default relative comparison tolerance.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 0.1;

pub const DEFAULT_SEED: u64 = 0;

/// Parameters shared by every subcommand. `n_max = None` selects the default
/// iteration count of the delegated estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n_max: Option<usize>,
    pub budget: usize,
    pub term_budget: usize,
    pub prime: u64,
    pub seed: u64,
    pub tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n_max: None,
            budget: DEFAULT_LENGTH_BUDGET,
            term_budget: DEFAULT_TERM_BUDGET,
            prime: DEFAULT_PRIME,
            seed: DEFAULT_SEED,
            tol: DEFAULT_RELATIVE_TOLERANCE,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_max == Some(0) {
            return Err(CliError::Config("--n-max must be positive".into()));
        }
        if self.budget == 0 || self.term_budget == 0 {
            return Err(CliError::Config("budgets must be positive".into()));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(CliError::Config(format!(
                "--tol must lie in (0, 1), got {}",
                self.tol
            )));
        }
        Ok(())
    }

    /// `max(0.05, tol · scale)`.
    pub fn tolerance(&self, scale: f64) -> f64 {
        ABSOLUTE_TOLERANCE.max(self.tol * scale.abs())
    }
}

pub fn load_automorphism(path: &Path) -> Result<Automorphism> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Automorphism::from_json(&text)?)
}
