//! `A`, `S`, and `beta` invariants for torus-invariant divisors on weighted
//! projective planes carrying torus-invariant boundaries.
//!
//! On `P(a0, a1, a2)` the volume of `O(s)` is `s^2 / (a0 a1 a2)`, so for a
//! boundary of log degree `L(c)` and an invariant divisor of degree `m` the
//! shifted-volume integral collapses to the closed form `S = L / (3m)`
//! (from `int_0^{L/m} (L - m t)^2 dt` over `L^2`). The closed form is
//! cross-checked against a numeric Riemann-sum oracle in the test suite.
//!
//! `beta = A - S` per divisor; the report's overall verdict covers the
//! supplied divisors only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{AffineRational, Positivity, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WpsError {
    #[error("weights must be positive, found {0:?}")]
    BadWeights((u64, u64, u64)),
    #[error("invariant divisor degree must be positive")]
    BadDivisorDegree,
    #[error("pair is not log Fano on the working interval: log degree {0} is not positive there")]
    NotLogFano(Box<AffineRational>),
    #[error("boundary component {component:?} records no order along divisor {divisor:?}")]
    MissingOrd { component: String, divisor: String },
}

/// A weighted projective plane `P(a0, a1, a2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPlane {
    pub weights: (u64, u64, u64),
}

impl WeightedPlane {
    pub fn new(a0: u64, a1: u64, a2: u64) -> Result<Self, WpsError> {
        if a0 == 0 || a1 == 0 || a2 == 0 {
            return Err(WpsError::BadWeights((a0, a1, a2)));
        }
        Ok(WeightedPlane {
            weights: (a0, a1, a2),
        })
    }

    pub fn weight_product(&self) -> i64 {
        (self.weights.0 * self.weights.1 * self.weights.2) as i64
    }

    /// Anticanonical degree `a0 + a1 + a2`.
    pub fn anticanonical_degree(&self) -> i64 {
        (self.weights.0 + self.weights.1 + self.weights.2) as i64
    }

    /// Volume of `O(s)`: `s^2 / (a0 a1 a2)` for `s >= 0`, else 0.
    pub fn volume(&self, s: &Rational) -> Rational {
        if s.is_negative() {
            return Rational::zero();
        }
        (s * s)
            .checked_div(&Rational::from_int(self.weight_product()))
            .expect("positive weights")
    }
}

/// A torus-invariant prime divisor, graded by its degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDivisor {
    pub name: String,
    pub degree: u64,
    /// True for the divisor dominating the quotient of the torus action;
    /// a polystable verdict requires its beta to vanish identically.
    #[serde(default)]
    pub horizontal: bool,
}

impl InvariantDivisor {
    pub fn new(name: impl Into<String>, degree: u64, horizontal: bool) -> Result<Self, WpsError> {
        if degree == 0 {
            return Err(WpsError::BadDivisorDegree);
        }
        Ok(InvariantDivisor {
            name: name.into(),
            degree,
            horizontal,
        })
    }
}

/// One boundary component with its degree, affine coefficient, and the
/// order it attains along each invariant divisor of interest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsBoundary {
    pub name: String,
    pub degree: u64,
    pub coefficient: AffineRational,
    /// Order along each named invariant divisor; every divisor passed to
    /// the invariant computations must be recorded here (possibly 0).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ords: BTreeMap<String, Rational>,
}

/// A weighted plane with a torus-invariant boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WpsPair {
    pub name: String,
    pub plane: WeightedPlane,
    pub boundary: Vec<WpsBoundary>,
}

/// Per-divisor row of [`WpsPair::beta_report`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaRow {
    pub divisor: String,
    pub horizontal: bool,
    pub a: AffineRational,
    pub s: AffineRational,
    pub beta: AffineRational,
    pub beta_positivity: Positivity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum WpsVerdict {
    /// All beta nonnegative on the interval and every horizontal beta
    /// identically zero.
    PolystableCandidate,
    Unstable {
        reason: String,
    },
}

impl std::fmt::Display for WpsVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            WpsVerdict::PolystableCandidate => {
                write!(
                    f,
                    "polystable-candidate (all beta >= 0, horizontal beta = 0)"
                )
            }
            WpsVerdict::Unstable { reason } => write!(f, "unstable ({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaReport {
    pub rows: Vec<BetaRow>,
    pub verdict: WpsVerdict,
    /// The verdict covers the supplied divisors only.
    pub scope: String,
}

impl WpsPair {
    /// Log degree `L(c) = (a0 + a1 + a2) - sum(coeff_i(c) * degree_i)`.
    pub fn log_degree(&self) -> AffineRational {
        let mut l = AffineRational::constant(Rational::from_int(self.plane.anticanonical_degree()));
        for b in &self.boundary {
            l = &l - &b.coefficient.scale(&Rational::from_int(b.degree as i64));
        }
        l
    }

    /// The log Fano condition on `(0, cmax)`: `L(c) > 0` throughout.
    pub fn require_log_fano(&self, cmax: &Rational) -> Result<AffineRational, WpsError> {
        let l = self.log_degree();
        match l.positivity_on(cmax) {
            Positivity::Everywhere => Ok(l),
            _ => Err(WpsError::NotLogFano(Box::new(l))),
        }
    }

    /// `S = L(c) / (3 m)` for a divisor of degree `m`.
    pub fn s_invariant(
        &self,
        divisor: &InvariantDivisor,
        cmax: &Rational,
    ) -> Result<AffineRational, WpsError> {
        let l = self.require_log_fano(cmax)?;
        let denom = Rational::from_int(3 * divisor.degree as i64);
        Ok(l.scale(
            &Rational::one()
                .checked_div(&denom)
                .expect("positive degree"),
        ))
    }

    /// `A = 1 - sum(coeff_i(c) * ord_i(divisor))`; every boundary component
    /// must record an order along the divisor.
    pub fn a_invariant(&self, divisor: &InvariantDivisor) -> Result<AffineRational, WpsError> {
        let mut a = AffineRational::constant(Rational::one());
        for b in &self.boundary {
            let ord = b
                .ords
                .get(&divisor.name)
                .ok_or_else(|| WpsError::MissingOrd {
                    component: b.name.clone(),
                    divisor: divisor.name.clone(),
                })?;
            a = &a - &b.coefficient.scale(ord);
        }
        Ok(a)
    }

    pub fn beta(
        &self,
        divisor: &InvariantDivisor,
        cmax: &Rational,
    ) -> Result<AffineRational, WpsError> {
        Ok(&self.a_invariant(divisor)? - &self.s_invariant(divisor, cmax)?)
    }

    /// beta verdict per divisor with an overall classification, explicitly
    /// scoped to the supplied divisors.
    pub fn beta_report(
        &self,
        divisors: &[InvariantDivisor],
        cmax: &Rational,
    ) -> Result<BetaReport, WpsError> {
        let mut rows = Vec::with_capacity(divisors.len());
        let mut unstable_reason: Option<String> = None;
        for d in divisors {
            let a = self.a_invariant(d)?;
            let s = self.s_invariant(d, cmax)?;
            let beta = &a - &s;
            let positivity = beta.positivity_on(cmax);
            let nonnegative = !beta.constant.is_negative() && !beta.evaluate(cmax).is_negative();
            if d.horizontal && !beta.is_zero() {
                unstable_reason.get_or_insert_with(|| {
                    format!(
                        "beta of horizontal divisor {} is {}, not identically zero",
                        d.name, beta
                    )
                });
            } else if !nonnegative {
                unstable_reason.get_or_insert_with(|| {
                    format!(
                        "beta of {} is negative somewhere on the interval: {}",
                        d.name, beta
                    )
                });
            }
            rows.push(BetaRow {
                divisor: d.name.clone(),
                horizontal: d.horizontal,
                a,
                s,
                beta,
                beta_positivity: positivity,
            });
        }
        let verdict = match unstable_reason {
            None => WpsVerdict::PolystableCandidate,
            Some(reason) => WpsVerdict::Unstable { reason },
        };
        Ok(BetaReport {
            rows,
            verdict,
            scope: "verdict over the supplied invariant divisors only".to_string(),
        })
    }
}
