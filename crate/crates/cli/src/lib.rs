//! Monte Carlo error-rate sweeps, pipeline reports and decoder-tree census
//! for the `polar-scl` decoders, as used by the `polar-scl` binary.

mod config;
mod error;
mod report;
mod sweep;

pub use config::{parse_code, parse_quant, parse_snr_list, Settings};
pub use error::{CliError, Result};
pub use report::{run_report, ReportJob};
pub use sweep::{
    emit_csv, fer_crossing, read_csv, run_sweep, run_sweep_with, two_proportion_z, write_csv, CsvRow, SimJob,
    SweepPoint, SweepResult, CSV_COLUMNS,
};
