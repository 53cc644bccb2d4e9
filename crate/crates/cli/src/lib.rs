//! Trace front end for `dyntopo` graphs: parse an operation script, replay
//! it, export DOT, or benchmark incremental maintenance against batch
//! recomputation. See [`trace`] for the script format.

pub mod bench;
pub mod dot;
pub mod trace;
