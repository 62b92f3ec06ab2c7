//! Search bounds, truncation depth, and sampling seed shared by the bounded
//! decision procedures (ideal membership, unit search, saturation) and the
//! property suites.
//!
//! All searches driven by a `Config` are deterministic: identical config and
//! inputs yield identical results, including the order in which candidate
//! witnesses are tried.

use serde::{Deserialize, Serialize};

/// Bounds and knobs for every bounded search in the workbench.
///
/// Invariant: spans, bounds and depth are positive; `escalation_steps` says
/// how many times a failed bounded search may double its spans before giving
/// up (0 means never escalate).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Config {
    /// Half-width of the x-exponent box in membership searches.
    pub membership_x_span: usize,
    /// Half-width of the y-exponent box in membership searches.
    pub membership_y_span: usize,
    /// Half-width of the exponent box when searching for monomial units
    /// x^m y^k in ideal comparison.
    pub unit_search_bound: usize,
    /// Truncation depth for skew Laurent series expansions.
    pub series_depth: usize,
    /// Number of times a failed bounded search doubles its spans.
    pub escalation_steps: usize,
    /// Seed for all randomized sampling (property suites, random
    /// right-multiples in normalization checks).
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            membership_x_span: 6,
            membership_y_span: 6,
            unit_search_bound: 4,
            series_depth: 10,
            escalation_steps: 2,
            seed: 0,
        }
    }
}

impl Config {
    /// The sequence of membership spans this config allows: the base spans
    /// followed by up to `escalation_steps` doublings.
    pub fn span_schedule(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.escalation_steps + 1);
        let (mut xs, mut ys) = (self.membership_x_span, self.membership_y_span);
        out.push((xs, ys));
        for _ in 0..self.escalation_steps {
            xs *= 2;
            ys *= 2;
            out.push((xs, ys));
        }
        out
    }
}
