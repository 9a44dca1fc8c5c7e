use crate::exec::Execution;
use crate::tolerance::Tolerances;

/// Knobs of the factorization engine. All randomness derives from `seed`.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorConfig {
    pub tol: Tolerances,
    pub seed: u64,
    pub exec: Execution,
    /// Largest affine solution-space dimension handled by the irregular solver.
    pub max_dimension: usize,
    /// Grid points per axis for affine dimension at most 2.
    pub grid_per_axis: usize,
    /// Half-width of the seed box `[-r, r]^d`.
    pub seed_radius: f64,
    /// Random multistart seeds for affine dimension 3 and above.
    pub random_seeds: usize,
    /// Newton iterations per seed.
    pub newton_iterations: usize,
    /// Cap on distinct solutions kept per factor choice.
    pub max_stored: usize,
    /// Number of family members reported as samples.
    pub family_samples: usize,
    /// Distinct solutions with a nontrivial Jacobian kernel needed to call a
    /// solution set infinite.
    pub family_witnesses: usize,
    /// Relative singular-value cutoff for the Jacobian kernel.
    pub jacobian_rank: f64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            tol: Tolerances::default(),
            seed: 0,
            exec: Execution::default(),
            max_dimension: 8,
            grid_per_axis: 101,
            seed_radius: 10.0,
            random_seeds: 10_000,
            newton_iterations: 60,
            max_stored: 256,
            family_samples: 5,
            family_witnesses: 3,
            jacobian_rank: 1e-6,
        }
    }
}

impl FactorConfig {
    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_execution(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}
