//! One-place buffers and channel ends built from two of them.

use std::sync::{Arc, Condvar, Mutex};
use std::time::Duration;

use super::sched::{Op, ThreadCtx};
use super::value::Value;
use super::RunError;

/// What travels through a slot: a value, or a label sent by `select`.
#[derive(Clone, Debug)]
pub enum Payload {
    Value(Value),
    Label(String),
}

/// How long a blocked thread sleeps before re-checking for an abort.
const ABORT_POLL: Duration = Duration::from_millis(20);

/// A buffer holding at most one payload. `put` blocks while it is full and
/// `take` blocks while it is empty.
#[derive(Debug, Default)]
pub struct Slot {
    cell: Mutex<Option<Payload>>,
    changed: Condvar,
}

impl Slot {
    pub fn new() -> Arc<Slot> {
        Arc::new(Slot::default())
    }

    /// Whether `op` could not proceed right now. A slot that is currently
    /// locked by someone else is assumed to be making progress.
    pub(crate) fn would_block(&self, op: Op) -> bool {
        match self.cell.try_lock() {
            Ok(cell) => match op {
                Op::Put => cell.is_some(),
                Op::Take => cell.is_none(),
            },
            Err(_) => false,
        }
    }

    pub fn put(
        self: &Arc<Self>,
        ctx: &mut ThreadCtx,
        p: Payload,
        site: &str,
    ) -> Result<(), RunError> {
        ctx.maybe_yield();
        let mut cell = self.cell.lock().expect("slot lock");
        if cell.is_some() {
            ctx.blocked(site, self, Op::Put);
            while cell.is_some() {
                if let Some(e) = ctx.aborted() {
                    ctx.unblocked();
                    return Err(e);
                }
                cell = self
                    .changed
                    .wait_timeout(cell, ABORT_POLL)
                    .expect("slot lock")
                    .0;
            }
            ctx.unblocked();
        }
        *cell = Some(p);
        self.changed.notify_all();
        Ok(())
    }

    pub fn take(self: &Arc<Self>, ctx: &mut ThreadCtx, site: &str) -> Result<Payload, RunError> {
        ctx.maybe_yield();
        let mut cell = self.cell.lock().expect("slot lock");
        if cell.is_none() {
            ctx.blocked(site, self, Op::Take);
            while cell.is_none() {
                if let Some(e) = ctx.aborted() {
                    ctx.unblocked();
                    return Err(e);
                }
                cell = self
                    .changed
                    .wait_timeout(cell, ABORT_POLL)
                    .expect("slot lock")
                    .0;
            }
            ctx.unblocked();
        }
        let p = cell.take().expect("slot is full");
        self.changed.notify_all();
        Ok(p)
    }
}

/// One end of a channel: it writes into the slot its peer reads from and
/// reads from the slot its peer writes into.
#[derive(Clone, Debug)]
pub struct ChannelEnd {
    pub read: Arc<Slot>,
    pub write: Arc<Slot>,
}

/// Two fresh slots, crossed between the two ends.
pub fn new_channel() -> (ChannelEnd, ChannelEnd) {
    let (s1, s2) = (Slot::new(), Slot::new());
    (
        ChannelEnd {
            read: s1.clone(),
            write: s2.clone(),
        },
        ChannelEnd {
            read: s2,
            write: s1,
        },
    )
}

impl ChannelEnd {
    pub fn send(&self, ctx: &mut ThreadCtx, p: Payload, site: &str) -> Result<(), RunError> {
        self.write.put(ctx, p, site)
    }

    pub fn receive(&self, ctx: &mut ThreadCtx, site: &str) -> Result<Payload, RunError> {
        self.read.take(ctx, site)
    }

    /// Do the two ends belong to the same channel?
    pub fn is_peer_of(&self, other: &ChannelEnd) -> bool {
        Arc::ptr_eq(&self.read, &other.write) && Arc::ptr_eq(&self.write, &other.read)
    }
}
