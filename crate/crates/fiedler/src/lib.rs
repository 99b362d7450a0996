//! Files, threads and the command line on top of [`fiedler_core`].

pub mod cli;
pub mod output;
pub mod parallel;
pub mod source;

pub use fiedler_core;
pub use parallel::Parallel;
