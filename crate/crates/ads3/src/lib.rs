//! File formats, the command-line interface and the verification suite for `ads3-core`.

pub mod cli;
pub mod formats;
pub mod io;
pub mod oracles;

/// Written into every report.
pub const VERSION: &str = concat!("ads3 ", env!("CARGO_PKG_VERSION"));

/// Worker-count override for the thread pool.
pub const WORKERS_ENV: &str = "ADS3_WORKERS";
