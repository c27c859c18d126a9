use serde::{Deserialize, Serialize};

/// Tolerances and search budgets shared by every approximate check.
///
/// The effective tolerance for a matrix of spectral norm `s` is
/// `atol + rtol * s`, so comparisons stay meaningful when inputs are scaled.
/// All positive-semidefinite tests in the crate are "min eigenvalue of the
/// Hermitian part >= -tau" with this tau.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ToleranceContext {
    /// Absolute floor for every comparison.
    pub atol: f64,
    /// Slack proportional to the spectral norm of the matrix under test.
    pub rtol: f64,
    /// Number of angles scanned over `[0, 2*pi)` by numerical-range searches.
    pub angle_grid: usize,
    /// Cap for truncated power searches (existential and universal exponents).
    pub max_power: u32,
    /// Iteration budget for the local refinement after a grid scan.
    pub max_refine: u32,
}

impl Default for ToleranceContext {
    fn default() -> Self {
        ToleranceContext {
            atol: 1e-10,
            rtol: 1e-12,
            angle_grid: 720,
            max_power: 64,
            max_refine: 40,
        }
    }
}

impl ToleranceContext {
    /// Effective tolerance for a matrix of spectral norm `s`.
    pub fn tau(&self, s: f64) -> f64 {
        self.atol + self.rtol * s
    }

    /// Same context with both tolerances loosened by `factor`.
    pub fn relaxed(&self, factor: f64) -> Self {
        ToleranceContext {
            atol: self.atol * factor,
            rtol: self.rtol * factor,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_combines_absolute_and_relative_parts() {
        let ctx = ToleranceContext::default();
        assert_eq!(ctx.tau(0.0), 1e-10);
        let t = ctx.tau(100.0);
        assert!((t - (1e-10 + 1e-10)).abs() < 1e-24);
    }

    #[test]
    fn defaults_match_documented_values() {
        let ctx = ToleranceContext::default();
        assert_eq!(ctx.atol, 1e-10);
        assert_eq!(ctx.rtol, 1e-12);
        assert_eq!(ctx.angle_grid, 720);
        assert_eq!(ctx.max_power, 64);
        assert_eq!(ctx.max_refine, 40);
    }
}
