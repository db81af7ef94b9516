//! Library side of the `ratcurve` command: argument parsing, the cache file,
//! golden tables and output rendering.

pub mod app;
pub mod cache;
pub mod golden;
pub mod selftest;
pub mod table;

pub use app::{run, Cli};
