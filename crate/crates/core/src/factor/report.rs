use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::algebra::EvenMultivector;
use crate::poly::{MotionPolynomial, RealPolynomial};

/// How many factorizations a polynomial has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    None,
    Finite(usize),
    Infinite,
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::None => "none",
            Verdict::Finite(_) => "finite",
            Verdict::Infinite => "infinite",
        }
    }

    pub fn count(&self) -> Option<usize> {
        match self {
            Verdict::None => Some(0),
            Verdict::Finite(n) => Some(*n),
            Verdict::Infinite => None,
        }
    }
}

/// Serialized as its display form, e.g. `"finite(3)"`.
impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Finite(n) => write!(f, "finite({n})"),
            v => f.write_str(v.kind()),
        }
    }
}

/// One factorization `C = (t - h1)(t - h2)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Factorization {
    /// Factors in left-to-right order.
    pub factors: Vec<EvenMultivector>,
    /// Irregularity per the division route: the remainder of `C` divided by
    /// the right factor's quadratic has a non-invertible leading coefficient.
    pub irregular: bool,
    /// Largest coefficient of `C - (t - h1)(t - h2)`.
    pub residual: f64,
    /// The quadratic factor of the quadrance this factorization came from.
    pub quadratic: RealPolynomial,
}

impl Factorization {
    pub fn product(&self) -> MotionPolynomial {
        MotionPolynomial::from_factors(&self.factors)
    }
}

/// A positive-dimensional family of factorizations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyDescriptor {
    /// Local dimension of the family.
    pub dimension: usize,
    /// Dimension of the affine subspace searched.
    pub affine_dimension: usize,
    pub base: Factorization,
    /// Tangent directions of the right factor at `base`.
    pub tangents: Vec<EvenMultivector>,
    pub samples: Vec<Factorization>,
    /// Distinct members found before truncation to `samples`.
    pub members_found: usize,
}

/// What happened for one quadratic factor choice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChoiceOutcome {
    pub quadratic: RealPolynomial,
    /// `"regular"`, `"irregular"` or `"rejected"`.
    pub branch: &'static str,
    /// Affine dimension of the irregular linear system, if it was consistent.
    pub affine_dimension: Option<usize>,
    /// Number of factorizations contributed; `None` for a family.
    pub solutions: Option<usize>,
    pub note: Option<String>,
}

/// Result of [`crate::factor::factorize`].
#[derive(Clone, Debug, PartialEq)]
pub struct FactorizationReport {
    /// The monic polynomial that was factored.
    pub polynomial: MotionPolynomial,
    pub quadrance: RealPolynomial,
    pub verdict: Verdict,
    /// Isolated factorizations (for an infinite verdict, those outside the family).
    pub factorizations: Vec<Factorization>,
    pub family: Option<FamilyDescriptor>,
    pub choices: Vec<ChoiceOutcome>,
}

impl FactorizationReport {
    pub fn irregular_flags(&self) -> Vec<bool> {
        self.factorizations.iter().map(|f| f.irregular).collect()
    }

    pub fn residuals(&self) -> Vec<f64> {
        self.factorizations.iter().map(|f| f.residual).collect()
    }

    /// Isolated factorizations followed by family samples.
    pub fn all_factorizations(&self) -> impl Iterator<Item = &Factorization> {
        self.factorizations
            .iter()
            .chain(self.family.iter().flat_map(|f| f.samples.iter()))
    }

    pub fn max_residual(&self) -> f64 {
        self.all_factorizations()
            .fold(0.0, |m, f| m.max(f.residual))
    }

    pub fn is_irregularly_factorizable(&self) -> bool {
        self.all_factorizations().any(|f| f.irregular)
    }
}

impl Serialize for FactorizationReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FactorizationReport", 9)?;
        st.serialize_field("verdict", self.verdict.kind())?;
        st.serialize_field("count", &self.verdict.count())?;
        st.serialize_field("polynomial", &self.polynomial)?;
        st.serialize_field("quadrance", &self.quadrance)?;
        st.serialize_field("factorizations", &self.factorizations)?;
        st.serialize_field("irregular_flags", &self.irregular_flags())?;
        st.serialize_field("residuals", &self.residuals())?;
        st.serialize_field("family", &self.family)?;
        st.serialize_field("choices", &self.choices)?;
        st.end()
    }
}
