use std::path::PathBuf;

use numlab_core::Exec;

use crate::args::{Format, GlobalOpts};
use crate::report::{CliError, CliResult};

pub const PRECISION_ENV: &str = "DOI2_PRECISION_BITS";
pub const DEFAULT_PRECISION: u32 = 128;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub precision_bits: u32,
    pub workers: usize,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_opts(opts: &GlobalOpts) -> CliResult<Self> {
        let precision_bits = match opts.precision_bits {
            Some(p) => p,
            None => match std::env::var(PRECISION_ENV) {
                Ok(v) => crate::args::parse_u32(&v)
                    .map_err(|e| CliError::Usage(format!("{PRECISION_ENV}: {e}")))?,
                Err(_) => DEFAULT_PRECISION,
            },
        };
        if precision_bits < 32 {
            return Err(CliError::Usage(format!("precision must be at least 32 bits, got {precision_bits}")));
        }
        let workers = match opts.workers {
            Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
            Some(w) => w as usize,
            None => std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        };
        Ok(Self { precision_bits, workers, format: opts.format, output: opts.output.clone() })
    }

    pub fn exec(&self) -> Exec {
        if self.workers == 1 {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    pub fn format_or(&self, fallback: Format) -> Format {
        self.format.unwrap_or(fallback)
    }
}
