//! Std companion to `duocover-core`: the design file format, the
//! multi-threaded exhaustive sweep, and the `duocover` command line.

pub mod cli;
pub mod io;
pub mod parallel;
pub mod report;

pub use cli::{run, ExitStatus};
