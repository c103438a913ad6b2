//! Parameter sweeps, exponent fits and bound verification.
//!
//! A [`SweepSpec`] expands to grid points in a fixed order; [`run_sweep`]
//! evaluates them on `DOUBLE_ELL_WORKERS` threads and returns the rows in
//! grid order, so the CSV does not depend on the worker count.

mod fit;
mod spec;
mod sweep;
mod table;
mod verify;

pub use fit::{fit_exponent, fit_log_log, FitResult};
pub use spec::{CharacterFilter, GridEntry, GridPoint, Quantity, SweepSpec, XiEntry};
pub use sweep::{run_sweep, RowError, SweepOutcome};
pub use table::{read_csv, read_csv_file, to_csv_string, write_csv, write_csv_file, SweepRecord, COLUMNS};
pub use verify::{
    oscillatory_quadrature, verify_bounds, verify_table, BoundPoint, SliceFit, SpotCheck, Status, Suite, Thresholds,
    VerifyConfig, VerifyReport,
};

use crate::error::{Error, Result};

pub const WORKERS_ENV: &str = "DOUBLE_ELL_WORKERS";

/// Worker count from `DOUBLE_ELL_WORKERS`, else the number of CPUs.
pub fn worker_count() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Config(format!("{WORKERS_ENV} must be a positive integer, got {v:?}"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

pub(crate) fn worker_pool() -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(worker_count()?).build().map_err(|e| Error::Config(format!("thread pool: {e}")))
}
