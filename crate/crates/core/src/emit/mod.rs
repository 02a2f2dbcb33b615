//! Reports, figures, verification suites and the command-line front end.

pub mod cli;
pub mod erratum;
pub mod format;
pub mod report;
pub mod svg;
pub mod verify;
