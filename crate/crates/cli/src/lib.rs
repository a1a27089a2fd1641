//! File formats, the JSON interchange record and the subcommands behind the
//! `lu-general` binary.
//!
//! Exit status: 0 when the factorization exists or the check passes, 1 when
//! it does not, 2 for unreadable input or bad usage.

#![forbid(unsafe_code)]

pub mod commands;
pub mod formats;
pub mod interchange;
