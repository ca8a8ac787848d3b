//! Parameter intervals and the deterministic x-grids used by sweeps.

use std::fmt;

/// Upper end of the sweep window used for families on `[0, inf)`.
pub const SWEEP_WINDOW: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Interval {
    pub const fn closed(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub const fn closed_open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: true,
            hi_closed: false,
        }
    }

    pub const fn open(lo: f64, hi: f64) -> Self {
        Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub const fn half_line() -> Self {
        Interval::closed_open(0.0, f64::INFINITY)
    }

    pub fn contains(&self, x: f64) -> bool {
        if x.is_nan() {
            return false;
        }
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        let lo_ok = self.lo > other.lo || (self.lo == other.lo && (other.lo_closed || !self.lo_closed));
        let hi_ok = self.hi < other.hi || (self.hi == other.hi && (other.hi_closed || !self.hi_closed));
        lo_ok && hi_ok
    }

    /// The bounded part swept by grids; `[lo, inf)` becomes `[lo, SWEEP_WINDOW]`.
    pub fn sweep_window(&self) -> Interval {
        if self.hi.is_infinite() {
            Interval {
                lo: self.lo,
                hi: SWEEP_WINDOW,
                lo_closed: self.lo_closed,
                hi_closed: true,
            }
        } else {
            *self
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_closed { '[' } else { '(' };
        let r = if self.hi_closed { ']' } else { ')' };
        if self.hi.is_infinite() {
            write!(f, "{l}{}, inf)", self.lo)
        } else {
            write!(f, "{l}{}, {}{r}", self.lo, self.hi)
        }
    }
}

/// `count` cell midpoints of the sweep window; never touches an endpoint.
pub fn interior_grid(domain: &Interval, count: usize) -> Vec<f64> {
    let w = domain.sweep_window();
    let width = w.hi - w.lo;
    let denom = (2 * count) as f64;
    (0..count)
        .map(|i| w.lo + width * ((2 * i + 1) as f64 / denom))
        .collect()
}

/// Equispaced grid that includes closed endpoints and stops half a step
/// inside open ones.
pub fn domain_grid(domain: &Interval, count: usize) -> Vec<f64> {
    let w = domain.sweep_window();
    if count <= 1 {
        return interior_grid(&w, count);
    }
    let width = w.hi - w.lo;
    // positions measured in half-steps
    let (offset, span) = match (w.lo_closed, w.hi_closed) {
        (true, true) => (0, 2 * (count - 1)),
        (true, false) => (0, 2 * count - 1),
        (false, true) => (1, 2 * count - 1),
        (false, false) => (1, 2 * count),
    };
    (0..count)
        .map(|i| w.lo + width * ((offset + 2 * i) as f64 / span as f64))
        .collect()
}

/// Inclusive equispaced grid `start..=stop` with `count` points.
pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        stop
                    } else {
                        start + (stop - start) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}
