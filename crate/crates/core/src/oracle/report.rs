use serde::{Deserialize, Serialize};

use super::fd::{RadialGrid, RichardsonLevel};

/// One analytic-versus-oracle comparison.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub label: String,
    pub analytic: f64,
    pub oracle: f64,
    pub abs_error: f64,
    pub rel_error: f64,
    pub grid: RadialGrid,
    pub richardson: RichardsonLevel,
}

impl OracleEntry {
    pub fn new(label: impl Into<String>, analytic: f64, grid: RadialGrid, richardson: RichardsonLevel) -> Self {
        let oracle = richardson.extrapolated;
        let abs_error = (oracle - analytic).abs();
        Self {
            label: label.into(),
            analytic,
            oracle,
            abs_error,
            rel_error: abs_error / analytic.abs().max(1.0),
            grid,
            richardson,
        }
    }
}

/// Append-only collection of comparisons.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    entries: Vec<OracleEntry>,
}

impl OracleReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: OracleEntry) {
        self.entries.push(entry);
    }

    pub fn extend(&mut self, other: OracleReport) {
        self.entries.extend(other.entries);
    }

    pub fn entries(&self) -> &[OracleEntry] {
        &self.entries
    }

    pub fn max_abs_error(&self) -> f64 {
        self.entries.iter().map(|e| e.abs_error).fold(0.0, f64::max)
    }

    /// Observed convergence orders, one per entry.
    pub fn orders(&self) -> impl Iterator<Item = f64> + '_ {
        self.entries.iter().map(|e| e.richardson.order)
    }
}
