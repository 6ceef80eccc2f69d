//! Threads, the deadlock watchdog and optional randomised yielding.

use std::collections::BTreeMap;
use std::sync::mpsc::{self, RecvTimeoutError};
use std::sync::{Arc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::channel::Slot;
use super::RunError;

/// Stack size for interpreter threads; evaluation is recursive.
const STACK_SIZE: usize = 64 * 1024 * 1024;
const WATCH_POLL: Duration = Duration::from_millis(5);

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// When set, threads yield at random before channel operations, with
    /// randomness derived from this seed.
    pub seed: Option<u64>,
    /// How long every live thread must stay blocked before the run is
    /// declared deadlocked.
    pub quiescence: Duration,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: None,
            quiescence: Duration::from_secs(2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Op {
    Put,
    Take,
}

struct Blocked {
    site: String,
    slot: Arc<Slot>,
    op: Op,
}

#[derive(Default)]
struct State {
    live: usize,
    next_id: usize,
    blocked: BTreeMap<usize, Blocked>,
    /// Bumped on every change to `live` or `blocked`.
    epoch: u64,
    failure: Option<RunError>,
}

struct Shared {
    state: Mutex<State>,
    config: RunConfig,
}

impl Shared {
    fn update<T>(&self, f: impl FnOnce(&mut State) -> T) -> T {
        let mut st = self.state.lock().expect("scheduler lock");
        st.epoch += 1;
        f(&mut st)
    }

    fn fail(&self, e: RunError) {
        let mut st = self.state.lock().expect("scheduler lock");
        st.failure.get_or_insert(e);
    }
}

/// Per-thread handle used by channel operations.
pub struct ThreadCtx {
    shared: Arc<Shared>,
    id: usize,
    rng: Option<StdRng>,
}

impl ThreadCtx {
    pub fn id(&self) -> usize {
        self.id
    }

    pub(crate) fn maybe_yield(&mut self) {
        if let Some(rng) = &mut self.rng {
            match rng.gen_range(0..8) {
                0..=3 => {}
                4..=6 => thread::yield_now(),
                _ => thread::sleep(Duration::from_micros(rng.gen_range(1..200))),
            }
        }
    }

    pub(crate) fn blocked(&self, site: &str, slot: &Arc<Slot>, op: Op) {
        let id = self.id;
        let b = Blocked {
            site: site.to_string(),
            slot: slot.clone(),
            op,
        };
        self.shared.update(|st| st.blocked.insert(id, b));
    }

    pub(crate) fn unblocked(&self) {
        let id = self.id;
        self.shared.update(|st| st.blocked.remove(&id));
    }

    /// The reason the run is being torn down, if it is.
    pub(crate) fn aborted(&self) -> Option<RunError> {
        self.shared
            .state
            .lock()
            .expect("scheduler lock")
            .failure
            .clone()
    }

    /// Runs `f` on a new thread that counts as live until it returns.
    pub fn spawn<F>(&mut self, f: F)
    where
        F: FnOnce(&mut ThreadCtx) -> Result<(), RunError> + Send + 'static,
    {
        self.maybe_yield();
        let mut child = register(&self.shared);
        let spawned = thread::Builder::new()
            .name(format!("cfst-{}", child.id))
            .stack_size(STACK_SIZE)
            .spawn(move || {
                if let Err(e) = f(&mut child) {
                    child.shared.fail(e);
                }
                deregister(&child);
            });
        if let Err(e) = spawned {
            self.shared
                .fail(RunError::Internal(format!("cannot spawn a thread: {e}")));
        }
    }
}

fn register(shared: &Arc<Shared>) -> ThreadCtx {
    let id = shared.update(|st| {
        st.live += 1;
        st.next_id += 1;
        st.next_id - 1
    });
    let rng = shared
        .config
        .seed
        .map(|s| StdRng::seed_from_u64(s ^ (id as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)));
    ThreadCtx {
        shared: shared.clone(),
        id,
        rng,
    }
}

fn deregister(ctx: &ThreadCtx) {
    let id = ctx.id;
    ctx.shared.update(|st| {
        st.live -= 1;
        st.blocked.remove(&id);
    });
}

/// Owns the threads of one run.
pub struct Scheduler {
    shared: Arc<Shared>,
}

impl Scheduler {
    pub fn new(config: RunConfig) -> Scheduler {
        Scheduler {
            shared: Arc::new(Shared {
                state: Mutex::new(State::default()),
                config,
            }),
        }
    }

    /// Runs `f` as the main thread while watching for deadlock. Returns as
    /// soon as the main thread finishes; other threads are not awaited and
    /// any of them still blocked is released with an error.
    pub fn run_main<T, F>(&self, f: F) -> Result<T, RunError>
    where
        T: Send + 'static,
        F: FnOnce(&mut ThreadCtx) -> Result<T, RunError> + Send + 'static,
    {
        let (tx, rx) = mpsc::channel();
        let mut ctx = register(&self.shared);
        thread::Builder::new()
            .name("cfst-main".into())
            .stack_size(STACK_SIZE)
            .spawn(move || {
                let r = f(&mut ctx);
                deregister(&ctx);
                let _ = tx.send(r);
            })
            .map_err(|e| RunError::Internal(format!("cannot spawn the main thread: {e}")))?;

        let mut candidate: Option<(u64, Instant)> = None;
        loop {
            match rx.recv_timeout(WATCH_POLL) {
                Ok(r) => {
                    self.shared.fail(RunError::Finished);
                    return r;
                }
                Err(RecvTimeoutError::Disconnected) => {
                    self.shared.fail(RunError::Finished);
                    return Err(RunError::Internal("the main thread panicked".into()));
                }
                Err(RecvTimeoutError::Timeout) => {}
            }
            if let Some(report) = self.watch(&mut candidate) {
                self.shared.fail(RunError::Deadlock(report));
            }
        }
    }

    /// One watchdog step. A deadlock is reported once every live thread has
    /// been blocked, on a slot that still cannot serve it, for the whole
    /// quiescence interval.
    fn watch(&self, candidate: &mut Option<(u64, Instant)>) -> Option<Vec<String>> {
        let (epoch, sites) = {
            let st = self.shared.state.lock().expect("scheduler lock");
            if st.failure.is_some() || st.live == 0 || st.blocked.len() < st.live {
                *candidate = None;
                return None;
            }
            let stuck = st.blocked.values().all(|b| b.slot.would_block(b.op));
            if !stuck {
                *candidate = None;
                return None;
            }
            let sites: Vec<String> = st
                .blocked
                .iter()
                .map(|(id, b)| format!("thread {id} blocked in {}", b.site))
                .collect();
            (st.epoch, sites)
        };
        match *candidate {
            Some((e, since)) if e == epoch => {
                (since.elapsed() >= self.shared.config.quiescence).then_some(sites)
            }
            _ => {
                *candidate = Some((epoch, Instant::now()));
                None
            }
        }
    }
}
