//! File formats, corpus handling and the command line for `flowforms-core`.

pub mod cli;
pub mod formats;
pub mod report;
