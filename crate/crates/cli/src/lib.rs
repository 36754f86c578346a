//! File formats and shared plumbing behind the `ib` binary.

pub mod io;
