//! Command-line front end for the `nsbp` library: reports, verification
//! suites and sampling output.

pub mod commands;
pub mod suites;
