//! A threaded interpreter. Every `fork` gets an OS thread, and every channel
//! is a pair of one-place buffers crossed between its two ends, so sending
//! only blocks while the previous message has not been taken.
//!
//! The interpreter does not re-check types; payloads travel untyped and the
//! type checker guarantees that the receiving side expects them.

mod channel;
mod eval;
mod lower;
mod sched;
mod value;

use std::sync::Arc;

use cfst_core::Program;
use thiserror::Error;

pub use channel::{new_channel, ChannelEnd, Payload, Slot};
pub use eval::builtin;
pub use sched::{RunConfig, Scheduler, ThreadCtx};
pub use value::Value;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RunError {
    /// Every live thread stayed blocked for the quiescence interval.
    #[error("deadlock: {}", .0.join("; "))]
    Deadlock(Vec<String>),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("internal error: {0}")]
    Internal(String),
    /// Released from a blocking operation because `main` has returned.
    #[error("the program has finished")]
    Finished,
}

/// Evaluates `main`. The program must have passed the type checker.
pub fn run(p: &Program, config: &RunConfig) -> Result<Value, RunError> {
    let globals = Arc::new(lower::lower_program(p));
    let interp = eval::Interp { globals };
    Scheduler::new(config.clone()).run_main(move |ctx| interp.eval_global(ctx, Program::ENTRY))
}
