//! Library surface of the `dops` CLI: JSON wire models, scenario plumbing
//! and the command implementations. The binary in `main.rs` is a thin
//! argument-parsing shell over `commands`.

pub mod commands;
pub mod model;
pub mod pipeline;
