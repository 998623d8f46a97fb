//! File formats and the command-line front end for `twlist-core`.

pub mod cli;
pub mod format;
