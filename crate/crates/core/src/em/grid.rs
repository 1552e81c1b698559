use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Linearly spaced frequency grid in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    f_start: f64,
    f_stop: f64,
    n_points: usize,
}

impl FrequencyGrid {
    pub fn linear(f_start: f64, f_stop: f64, n_points: usize) -> Result<Self> {
        if !(f_start.is_finite() && f_start > 0.0) {
            return Err(Error::param("f_start", format!("must be positive, got {f_start}")));
        }
        if n_points < 2 {
            return Err(Error::param("n_points", "a swept grid needs at least 2 points"));
        }
        if !(f_stop.is_finite() && f_stop > f_start) {
            return Err(Error::param(
                "f_stop",
                format!("must exceed f_start ({f_start}), got {f_stop}"),
            ));
        }
        Ok(Self {
            f_start,
            f_stop,
            n_points,
        })
    }

    /// Degenerate one-point grid.
    pub fn single(f: f64) -> Result<Self> {
        if !(f.is_finite() && f > 0.0) {
            return Err(Error::param("f", format!("must be positive, got {f}")));
        }
        Ok(Self {
            f_start: f,
            f_stop: f,
            n_points: 1,
        })
    }

    /// Grid covering `[f_start, f_stop]` with spacing no larger than `max_step`.
    pub fn with_max_step(f_start: f64, f_stop: f64, max_step: f64) -> Result<Self> {
        if !(max_step > 0.0) {
            return Err(Error::param("max_step", "must be positive"));
        }
        let n = ((f_stop - f_start) / max_step).ceil() as usize + 1;
        Self::linear(f_start, f_stop, n.max(2))
    }

    pub fn f_start(&self) -> f64 {
        self.f_start
    }

    pub fn f_stop(&self) -> f64 {
        self.f_stop
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn step(&self) -> f64 {
        if self.n_points < 2 {
            0.0
        } else {
            (self.f_stop - self.f_start) / (self.n_points - 1) as f64
        }
    }

    pub fn get(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            // exact endpoint, no accumulated rounding
            self.f_stop
        } else {
            self.f_start + self.step() * i as f64
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.iter().collect()
    }
}
