//! File formats, parallel execution and the `sa2gd` command line on top of
//! [`sa2gd_core`].

pub mod catalog;
pub mod cli;
pub mod config;
pub mod exec;
pub mod io;
pub mod report;
pub mod svg;

pub use exec::Rayon;
