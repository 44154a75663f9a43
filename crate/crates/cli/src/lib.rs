//! File formats and generators shared by the `tightcycle` binary and its
//! test suites.

pub mod format;
pub mod gen;
