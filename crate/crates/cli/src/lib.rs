//! JSON I/O, reports and exit-code mapping behind the `specfact` binary.

pub mod error;
pub mod io;
pub mod report;
