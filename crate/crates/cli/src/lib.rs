//! Command-line front end: reports, scans and figures for `Y(n,q)`.

pub mod report;
pub mod scan;
pub mod svg;

use cqdef_core::Error;

/// Process exit code for a library error: 1 for bad input, 2 when an
/// internal invariant failed.
pub fn exit_code(err: &Error) -> i32 {
    if err.is_internal() {
        2
    } else {
        1
    }
}
