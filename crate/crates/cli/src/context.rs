use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use lambdacoh::cochain::CochainError;
use lambdacoh::cohomology::CohomologyError;
use lambdacoh::deformation::{Deformation, DeformationError, DeformationFile};
use lambdacoh::lambdaring::{AdamsFamily, LambdaRingError, Preset, PrimeUniverse, RingFile};
use lambdacoh::symfun::SymFunError;

use crate::Options;

/// Anything that makes the run impossible; always exit status 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! from_error {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError(e.to_string())
            }
        })*
    };
}

from_error!(LambdaRingError, CochainError, CohomologyError, DeformationError, SymFunError, std::io::Error);

pub struct Context {
    pub family: Arc<AdamsFamily>,
    pub opts: Options,
    pub bound: u32,
}

pub fn load_family(opts: &Options) -> Result<Arc<AdamsFamily>, CliError> {
    let universe = opts.primes.clone().map(PrimeUniverse::new).transpose()?;
    let family = match &opts.ring {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
            let file = RingFile::from_json(&text)?;
            match universe {
                Some(u) => file.family_for(u)?,
                None => file.family()?,
            }
        }
        None => {
            let preset: Preset = opts.preset.parse()?;
            preset.family(universe.unwrap_or_else(Preset::default_universe))?
        }
    };
    Ok(Arc::new(family))
}

fn load_deformation(family: &Arc<AdamsFamily>, path: &Path) -> Result<Deformation, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(DeformationFile::from_json(&text)?.to_deformation(family.clone())?)
}

impl Context {
    pub fn deformation(&self) -> Result<Deformation, CliError> {
        let path = self.opts.deformation.as_ref().ok_or_else(|| CliError("--deformation is required".into()))?;
        load_deformation(&self.family, path)
    }

    pub fn other_deformation(&self) -> Result<Deformation, CliError> {
        let path = self.opts.other.as_ref().ok_or_else(|| CliError("--other is required".into()))?;
        load_deformation(&self.family, path)
    }
}
