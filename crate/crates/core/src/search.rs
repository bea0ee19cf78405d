//! Time budgets for exponential searches and the exact-cover engine they share.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Per-call resource limits for exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub time_budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            time_budget: Duration::from_secs(120),
        }
    }
}

impl Limits {
    pub fn with_time(time_budget: Duration) -> Self {
        Limits { time_budget }
    }

    pub(crate) fn start(&self, stage: &'static str) -> Deadline {
        Deadline {
            at: Instant::now().checked_add(self.time_budget),
            budget: self.time_budget,
            stage,
            ticks: 0,
        }
    }
}

pub(crate) struct Deadline {
    at: Option<Instant>,
    budget: Duration,
    stage: &'static str,
    ticks: u32,
}

impl Deadline {
    /// Cheap periodic check; consults the clock every 1024 calls.
    #[inline]
    pub(crate) fn tick(&mut self) -> Result<()> {
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks & 1023 == 0 {
            self.check()?;
        }
        Ok(())
    }

    pub(crate) fn check(&self) -> Result<()> {
        match self.at {
            Some(at) if Instant::now() > at => Err(Error::Budget {
                stage: self.stage,
                budget: self.budget,
            }),
            _ => Ok(()),
        }
    }
}

/// Exact cover by dancing links.
///
/// Items `0..primary` must be covered exactly once, items
/// `primary..primary+secondary` at most once. Branching picks the primary item
/// with the fewest remaining options, lowest index first; options are tried
/// in insertion order, so the first solution found is deterministic.
pub(crate) struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    top: Vec<usize>,
    row: Vec<usize>,
    len: Vec<usize>,
    options: usize,
}

impl ExactCover {
    pub(crate) fn new(primary: usize, secondary: usize) -> Self {
        let items = primary + secondary;
        let headers = items + 1;
        let mut ec = ExactCover {
            left: vec![0; headers],
            right: vec![0; headers],
            up: (0..headers).collect(),
            down: (0..headers).collect(),
            top: (0..headers).collect(),
            row: vec![usize::MAX; headers],
            len: vec![0; headers],
            options: 0,
        };
        // root 0, primary items 1..=primary linked in a ring
        for i in 0..=primary {
            ec.right[i] = if i == primary { 0 } else { i + 1 };
            ec.left[i] = if i == 0 { primary } else { i - 1 };
        }
        for i in primary + 1..headers {
            ec.left[i] = i;
            ec.right[i] = i;
        }
        ec
    }

    /// Append an option covering `items` (0-based, distinct). Returns its index.
    pub(crate) fn add_option(&mut self, items: &[usize]) -> usize {
        let id = self.options;
        self.options += 1;
        let first = self.top.len();
        for (offset, &item) in items.iter().enumerate() {
            let col = item + 1;
            let node = first + offset;
            self.top.push(col);
            self.row.push(id);
            let last = self.up[col];
            self.up.push(last);
            self.down.push(col);
            self.down[last] = node;
            self.up[col] = node;
            self.len[col] += 1;
            let prev = if offset == 0 { node + items.len() - 1 } else { node - 1 };
            let next = if offset + 1 == items.len() { first } else { node + 1 };
            self.left.push(prev);
            self.right.push(next);
        }
        id
    }

    fn cover(&mut self, col: usize) {
        let (l, r) = (self.left[col], self.right[col]);
        self.right[l] = r;
        self.left[r] = l;
        let mut i = self.down[col];
        while i != col {
            let mut j = self.right[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = d;
                self.up[d] = u;
                self.len[self.top[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, col: usize) {
        let mut i = self.up[col];
        while i != col {
            let mut j = self.left[i];
            while j != i {
                let (u, d) = (self.up[j], self.down[j]);
                self.down[u] = j;
                self.up[d] = j;
                self.len[self.top[j]] += 1;
                j = self.left[j];
            }
            i = self.up[i];
        }
        let (l, r) = (self.left[col], self.right[col]);
        self.right[l] = col;
        self.left[r] = col;
    }

    /// First exact cover found, as option indices in branching order.
    pub(crate) fn solve(mut self, deadline: &mut Deadline) -> Result<Option<Vec<usize>>> {
        let mut solution = Vec::new();
        if self.search(&mut solution, deadline)? {
            Ok(Some(solution))
        } else {
            Ok(None)
        }
    }

    fn search(&mut self, solution: &mut Vec<usize>, deadline: &mut Deadline) -> Result<bool> {
        deadline.tick()?;
        if self.right[0] == 0 {
            return Ok(true);
        }
        let mut best = self.right[0];
        let mut c = best;
        while c != 0 {
            if self.len[c] < self.len[best] {
                best = c;
                if self.len[c] == 0 {
                    break;
                }
            }
            c = self.right[c];
        }
        if self.len[best] == 0 {
            return Ok(false);
        }
        self.cover(best);
        let mut r = self.down[best];
        while r != best {
            solution.push(self.row[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.top[j]);
                j = self.right[j];
            }
            if self.search(solution, deadline)? {
                return Ok(true);
            }
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.top[j]);
                j = self.left[j];
            }
            solution.pop();
            r = self.down[r];
        }
        self.uncover(best);
        Ok(false)
    }
}
