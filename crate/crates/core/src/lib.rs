//! Deprecated-API migration by example.
//!
//! Given a deprecated → replacement API mapping and one after-update example
//! (an SDK-version `if`/`else` using both APIs), [`patchgen`] synthesizes a
//! semantic patch and [`engine`] applies it to target files. Call arguments
//! are hoisted into temporaries before matching and inlined again afterwards
//! ([`normal`]), and values the replacement call needs are resolved from the
//! example by a def-use search ([`dataflow`]).

pub mod jast;
pub mod sigmap;
pub mod dataflow;
pub mod normal;
pub mod patchgen;
pub mod engine;
pub mod pipeline;
pub mod harness;
pub mod cli;
