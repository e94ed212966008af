//! One-dimensional sampling grids for sweeps and maps.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl Grid {
    pub fn new(min: f64, max: f64, count: usize, spacing: Spacing) -> Self {
        Self { min, max, count, spacing }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        Self::new(min, max, count, Spacing::Log)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(invalid("grid has no points"));
        }
        if !(self.min.is_finite() && self.max.is_finite()) || self.min > self.max {
            return Err(invalid(format!("grid bounds [{}, {}] are not an interval", self.min, self.max)));
        }
        if self.count > 1 && self.min == self.max {
            return Err(invalid("grid with several points needs min < max"));
        }
        if self.spacing == Spacing::Log && !(self.min > 0.0) {
            return Err(invalid("log grid needs a positive lower bound"));
        }
        Ok(())
    }

    /// Grid values, endpoints included exactly.
    pub fn points(&self) -> Result<Vec<f64>> {
        self.validate()?;
        if self.count == 1 {
            return Ok(vec![self.min]);
        }
        let n = (self.count - 1) as f64;
        let pts = (0..self.count).map(|i| {
            if i == 0 {
                return self.min;
            }
            if i == self.count - 1 {
                return self.max;
            }
            let t = i as f64 / n;
            match self.spacing {
                Spacing::Linear => self.min + t * (self.max - self.min),
                Spacing::Log => (self.min.ln() + t * (self.max / self.min).ln()).exp(),
            }
        });
        Ok(pts.collect())
    }
}
