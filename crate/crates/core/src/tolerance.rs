/// Numerical thresholds shared by all modules.
///
/// Every threshold is relative: callers multiply by a scale derived from the
/// operands (usually the largest absolute coefficient, or its square for
/// quadratic quantities).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Generic relative tolerance for realness and zero tests.
    pub eps: f64,
    /// Singularity threshold on `max(|q|, |m|)`, scaled by `1 + |x|^2`.
    pub invertibility: f64,
    /// Relative singular-value cutoff for rank decisions.
    pub rank: f64,
    /// Required ratio between the smallest kept and the cutoff singular value.
    pub rank_gap: f64,
    /// Componentwise distance under which two factors are the same.
    pub dedup: f64,
    /// Bound on the reconstruction residual of a factorization.
    pub reconstruction: f64,
    /// Discriminant band, scaled by the squared coefficient scale, inside
    /// which a quadratic counts as having one double root.
    pub discriminant: f64,
    /// Distance under which polynomial roots are merged into one cluster.
    pub root_merge: f64,
}

pub const DEFAULT_EPS: f64 = 1e-9;

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps: DEFAULT_EPS,
            invertibility: 1e-7,
            rank: 1e-9,
            rank_gap: 100.0,
            dedup: 1e-7,
            reconstruction: 1e-8,
            discriminant: 1e-8,
            root_merge: 1e-7,
        }
    }
}

impl Tolerances {
    /// Defaults rescaled so that the generic tolerance equals `eps`.
    pub fn with_eps(eps: f64) -> Self {
        assert!(eps > 0.0 && eps.is_finite(), "tolerance must be positive");
        let f = eps / DEFAULT_EPS;
        let d = Self::default();
        Tolerances {
            eps,
            invertibility: d.invertibility * f,
            rank: d.rank * f,
            rank_gap: d.rank_gap,
            dedup: d.dedup * f,
            reconstruction: d.reconstruction * f,
            discriminant: d.discriminant * f,
            root_merge: d.root_merge * f,
        }
    }
}

/// `max(1, |c|)` over the given magnitudes.
pub(crate) fn scale_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(1.0, |m, v| m.max(v.abs()))
}
