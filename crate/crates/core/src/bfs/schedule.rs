use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use crate::error::Error;

/// How scheduling units are assigned to workers within one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    /// Each worker gets one contiguous block of units.
    #[default]
    Static,
    /// Workers pull units one at a time from a shared queue.
    Dynamic,
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Schedule::Static => "static",
            Schedule::Dynamic => "dynamic",
        })
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "static" => Ok(Schedule::Static),
            "dynamic" => Ok(Schedule::Dynamic),
            other => Err(Error::Parameter(format!(
                "unknown schedule `{other}` (expected static|dynamic)"
            ))),
        }
    }
}

/// Runs `work` on every unit. Each unit owns a disjoint output slice, so
/// workers never synchronize beyond the final join.
pub(crate) fn run_units<U, T, F>(
    units: Vec<(U, &mut [T])>,
    workers: usize,
    schedule: Schedule,
    work: F,
) where
    U: Send,
    T: Send,
    F: Fn(U, &mut [T]) + Sync,
{
    let workers = workers.max(1).min(units.len().max(1));
    if workers == 1 {
        for (unit, out) in units {
            work(unit, out);
        }
        return;
    }
    let work = &work;
    match schedule {
        Schedule::Static => {
            let per = units.len().div_ceil(workers);
            let mut blocks: Vec<Vec<(U, &mut [T])>> = Vec::with_capacity(workers);
            let mut iter = units.into_iter();
            for _ in 0..workers {
                blocks.push(iter.by_ref().take(per).collect());
            }
            std::thread::scope(|scope| {
                for block in blocks {
                    scope.spawn(move || {
                        for (unit, out) in block {
                            work(unit, out);
                        }
                    });
                }
            });
        }
        Schedule::Dynamic => {
            let queue = Mutex::new(units.into_iter());
            std::thread::scope(|scope| {
                for _ in 0..workers {
                    scope.spawn(|| loop {
                        let next = queue.lock().expect("work queue poisoned").next();
                        match next {
                            Some((unit, out)) => work(unit, out),
                            None => break,
                        }
                    });
                }
            });
        }
    }
}
