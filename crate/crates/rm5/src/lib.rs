//! File formats, literal syntax and the `rm5` command line.

pub mod cli;
pub mod formats;
pub mod literal;
