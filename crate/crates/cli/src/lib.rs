//! Command-line front end: problem files, analyses, tables, oracles and
//! reports.

pub mod analyze;
pub mod checks;
pub mod error;
pub mod oracle;
pub mod problem;
pub mod report;
pub mod table;

pub use error::CliError;
pub use problem::Problem;
