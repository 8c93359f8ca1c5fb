//! Log discrepancies of pairs along chains of infinitely-near point
//! blow-ups, optionally rooted at a `1/n(1,1)` cyclic-quotient vertex.
//!
//! A [`BlowupChain`] records boundary components (each an affine-in-`c`
//! coefficient times one or more identical curves), an optional vertex
//! start, and a forest of blow-up centers with per-component multiplicity
//! data. The ledger is the standard smooth-point recursion:
//!
//! * vertex exceptional: `A = 2/n - sum(coeff * count * ord)`;
//! * smooth center: `A_k = 2 - sum(coeff * count * mult_k)
//!   - sum over carrying exceptionals of (1 - A_j)`.
//!
//! [`BlowupChain::lc_verdict`] combines the exceptional values with the
//! per-curve coefficient caps `0 <= coeff(c) <= 1` into the sub-interval of
//! `(0, cmax)` on which the pair is log canonical, naming the binding
//! constraint.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{AffineRational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChainError {
    #[error("center {center} references exceptional {reference}, which is not an earlier center")]
    DanglingReference { center: u32, reference: u32 },
    #[error(
        "center {center} lies on {count} earlier exceptionals (at most two can meet at a point)"
    )]
    TooManyExceptionals { center: u32, count: usize },
    #[error("center ids must be 1, 2, ... in order; found {found} at position {position}")]
    NonSequentialIds { found: u32, position: usize },
    #[error("center {center} refers to unknown boundary component {name:?}")]
    UnknownComponent { center: u32, name: String },
    #[error("vertex order must be at least 2, found {0}")]
    BadVertexOrder(u32),
    #[error("vertex ord entry refers to unknown boundary component {0:?}")]
    UnknownVertexComponent(String),
    #[error("duplicate boundary component name {0:?}")]
    DuplicateComponent(String),
    #[error("octic root multiplicities must sum to 8, found {0}")]
    BadOcticPartition(u32),
}

/// One boundary component: `count` identical curves, each entering the
/// boundary with the same affine coefficient and the same incidence data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub name: String,
    /// Per-curve coefficient, e.g. constant `1/2` for a branch curve or
    /// `9c` for a line of multiplicity 9.
    pub coefficient: AffineRational,
    /// Number of identical curves aggregated under this name.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub count: u64,
}

fn one() -> u64 {
    1
}

#[allow(clippy::trivially_copy_pass_by_ref)]
fn is_one(v: &u64) -> bool {
    *v == 1
}

impl BoundaryComponent {
    pub fn new(name: impl Into<String>, coefficient: AffineRational) -> Self {
        BoundaryComponent {
            name: name.into(),
            coefficient,
            count: 1,
        }
    }

    pub fn with_count(name: impl Into<String>, coefficient: AffineRational, count: u64) -> Self {
        BoundaryComponent {
            name: name.into(),
            coefficient,
            count,
        }
    }
}

/// A chain rooted at a `1/n(1,1)` cyclic-quotient point; `ords` records the
/// order of each component along the vertex exceptional (a curve through
/// the vertex has ord `1/n`; omitted components have ord 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStart {
    pub n: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ords: BTreeMap<String, Rational>,
}

/// One blow-up center: a point of the surface, possibly lying on one or two
/// earlier exceptional curves, with the multiplicity of each component's
/// proper transform there (omitted components have multiplicity 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCenter {
    pub id: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub on_exceptionals: Vec<u32>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mults: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupChain {
    pub name: String,
    pub components: Vec<BoundaryComponent>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<VertexStart>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub centers: Vec<ChainCenter>,
}

/// Result of [`BlowupChain::lc_verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcReport {
    /// Log discrepancy of each exceptional, vertex first when present.
    pub exceptionals: Vec<(String, AffineRational)>,
    /// Per-curve coefficient caps `1 - coeff(c)` (nonnegative means the
    /// coefficient stays at most 1).
    pub coefficient_caps: Vec<(String, AffineRational)>,
    /// Components whose coefficient goes negative somewhere on `(0, cmax)`.
    pub coefficient_violations: Vec<String>,
    /// Name and function of the constraint that fails first.
    pub binding_name: String,
    pub binding: AffineRational,
    /// The pair is log canonical on `(0, lc_below)`; clamped at `cmax`.
    pub lc_below: Rational,
    /// True when `lc_below == cmax`, i.e. log canonical on all of
    /// `(0, cmax)`.
    pub holds_on_interval: bool,
}

impl BlowupChain {
    pub fn validate(&self) -> Result<(), ChainError> {
        let mut names = BTreeMap::new();
        for comp in &self.components {
            if names.insert(comp.name.clone(), ()).is_some() {
                return Err(ChainError::DuplicateComponent(comp.name.clone()));
            }
        }
        if let Some(v) = &self.vertex {
            if v.n < 2 {
                return Err(ChainError::BadVertexOrder(v.n));
            }
            for name in v.ords.keys() {
                if !names.contains_key(name) {
                    return Err(ChainError::UnknownVertexComponent(name.clone()));
                }
            }
        }
        for (pos, center) in self.centers.iter().enumerate() {
            if center.id != (pos + 1) as u32 {
                return Err(ChainError::NonSequentialIds {
                    found: center.id,
                    position: pos + 1,
                });
            }
            if center.on_exceptionals.len() > 2 {
                return Err(ChainError::TooManyExceptionals {
                    center: center.id,
                    count: center.on_exceptionals.len(),
                });
            }
            for &prev in &center.on_exceptionals {
                if prev == 0 || prev >= center.id {
                    return Err(ChainError::DanglingReference {
                        center: center.id,
                        reference: prev,
                    });
                }
            }
            for name in center.mults.keys() {
                if !names.contains_key(name) {
                    return Err(ChainError::UnknownComponent {
                        center: center.id,
                        name: name.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Log discrepancy of every exceptional: vertex first when present,
    /// then centers in order.
    pub fn log_discrepancies(&self) -> Result<Vec<AffineRational>, ChainError> {
        Ok(self
            .labelled_discrepancies()?
            .into_iter()
            .map(|(_, a)| a)
            .collect())
    }

    pub fn labelled_discrepancies(&self) -> Result<Vec<(String, AffineRational)>, ChainError> {
        self.validate()?;
        let mut out: Vec<(String, AffineRational)> = Vec::new();
        if let Some(v) = &self.vertex {
            let mut a = AffineRational::constant(Rational::ratio(2, v.n as i64));
            for comp in &self.components {
                if let Some(ord) = v.ords.get(&comp.name) {
                    let weight = ord * &Rational::from_int(comp.count as i64);
                    a = &a - &comp.coefficient.scale(&weight);
                }
            }
            out.push(("vertex".to_string(), a));
        }
        let mut center_a: Vec<AffineRational> = Vec::with_capacity(self.centers.len());
        for center in &self.centers {
            let mut a = AffineRational::constant(Rational::from_int(2));
            for comp in &self.components {
                if let Some(&mult) = center.mults.get(&comp.name) {
                    let weight = Rational::from_int((mult * comp.count) as i64);
                    a = &a - &comp.coefficient.scale(&weight);
                }
            }
            for &prev in &center.on_exceptionals {
                let a_prev = &center_a[(prev - 1) as usize];
                // subtract (1 - A_prev)
                let one = AffineRational::constant(Rational::one());
                a = &a - &(&one - a_prev);
            }
            center_a.push(a.clone());
            out.push((format!("E{}", center.id), a));
        }
        Ok(out)
    }

    /// Log canonicity of the pair over `(0, cmax)`: every exceptional needs
    /// `A >= 0` and every per-curve coefficient must stay in `[0, 1]`.
    pub fn lc_verdict(&self, cmax: &Rational) -> Result<LcReport, ChainError> {
        assert!(cmax.is_positive(), "cmax must be positive");
        let exceptionals = self.labelled_discrepancies()?;

        let mut caps: Vec<(String, AffineRational)> = Vec::new();
        let mut violations: Vec<String> = Vec::new();
        let one = AffineRational::constant(Rational::one());
        for comp in &self.components {
            caps.push((
                format!("coefficient cap on {}", comp.name),
                &one - &comp.coefficient,
            ));
            // nonnegativity: a negative coefficient anywhere on the interval
            // is a data error worth surfacing, not a threshold
            let at0 = comp.coefficient.evaluate(&Rational::zero());
            let at1 = comp.coefficient.evaluate(cmax);
            if at0.is_negative() || at1.is_negative() {
                violations.push(comp.name.clone());
            }
        }

        let mut constraints: Vec<(String, AffineRational)> = Vec::new();
        for (label, a) in &exceptionals {
            constraints.push((format!("A({label})"), a.clone()));
        }
        constraints.extend(caps.iter().cloned());

        // binding = constraint whose nonnegativity fails first as c grows
        // (unclamped); ties broken by the pointwise-smaller function, then
        // declaration order
        let mut binding: Option<(String, AffineRational, Option<Rational>)> = None;
        for (name, f) in &constraints {
            let onset = f.failure_onset();
            let better = match &binding {
                None => true,
                Some((_, current, current_onset)) => match (&onset, current_onset) {
                    (Some(a), Some(b)) => {
                        if a < b {
                            true
                        } else if a == b && !a.is_zero() {
                            let mid = a / &Rational::from_int(2);
                            f.compare_at(current, &mid).is_lt()
                        } else {
                            false
                        }
                    }
                    (Some(_), None) => true,
                    (None, Some(_)) => false,
                    (None, None) => {
                        let mid = cmax / &Rational::from_int(2);
                        f.compare_at(current, &mid).is_lt()
                    }
                },
            };
            if better {
                binding = Some((name.clone(), f.clone(), onset));
            }
        }
        let (binding_name, binding, onset) = binding.unwrap_or((
            "no constraints".to_string(),
            AffineRational::constant(Rational::one()),
            None,
        ));
        let lc_below = match &onset {
            Some(z) if z < cmax => z.clone(),
            _ => cmax.clone(),
        };

        Ok(LcReport {
            exceptionals,
            coefficient_caps: caps,
            coefficient_violations: violations,
            binding_name,
            binding,
            holds_on_interval: lc_below == *cmax,
            lc_below,
        })
    }
}

/// GIT stability class of a plane quartic from its singularity tags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuarticSingularity {
    A1,
    A2,
    Tacnode,
    DoubleConic,
    Worse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GitClass {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl std::fmt::Display for GitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GitClass::Stable => write!(f, "stable"),
            GitClass::StrictlySemistable => write!(f, "strictly-semistable"),
            GitClass::Unstable => write!(f, "unstable"),
        }
    }
}

/// Lookup classification: at worst A1/A2 singularities is stable; a tacnode
/// or a double conic is strictly semistable; anything worse is unstable.
pub fn quartic_git_class(tags: &[QuarticSingularity]) -> GitClass {
    if tags.iter().any(|t| matches!(t, QuarticSingularity::Worse)) {
        return GitClass::Unstable;
    }
    if tags.iter().any(|t| {
        matches!(
            t,
            QuarticSingularity::Tacnode | QuarticSingularity::DoubleConic
        )
    }) {
        return GitClass::StrictlySemistable;
    }
    GitClass::Stable
}

/// A binary octic is GIT-semistable exactly when each of its zeros has
/// multiplicity at most 4. Multiplicities must partition 8.
pub fn octic_semistable(multiplicities: &[u32]) -> Result<bool, ChainError> {
    let total: u32 = multiplicities.iter().sum();
    if total != 8 {
        return Err(ChainError::BadOcticPartition(total));
    }
    Ok(multiplicities.iter().all(|&m| m <= 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn aff(c: Rational, s: Rational) -> AffineRational {
        AffineRational::new(c, s)
    }

    fn one_minus(k: i64) -> AffineRational {
        aff(Rational::one(), Rational::from_int(-k))
    }

    fn slope(k: i64) -> AffineRational {
        AffineRational::multiple_of_c(Rational::from_int(k))
    }

    fn center(id: u32, on: &[u32], mults: &[(&str, u64)]) -> ChainCenter {
        ChainCenter {
            id,
            on_exceptionals: on.to_vec(),
            mults: mults.iter().map(|(n, m)| (n.to_string(), *m)).collect(),
        }
    }

    /// Two smooth conics tangent at two points, half each, with the
    /// degenerate bitangent arrangement 6L_p + 6L_q + 16L_pq.
    fn cateye() -> BlowupChain {
        BlowupChain {
            name: "cateye".to_string(),
            components: vec![
                BoundaryComponent::new("C2", aff(r(1, 2), r(0, 1))),
                BoundaryComponent::new("C2'", aff(r(1, 2), r(0, 1))),
                BoundaryComponent::new("L_p", slope(6)),
                BoundaryComponent::new("L_q", slope(6)),
                BoundaryComponent::new("L_pq", slope(16)),
            ],
            vertex: None,
            centers: vec![
                center(1, &[], &[("C2", 1), ("C2'", 1), ("L_q", 1), ("L_pq", 1)]),
                center(2, &[1], &[("C2", 1), ("C2'", 1), ("L_q", 1)]),
            ],
        }
    }

    #[test]
    fn cateye_ledger() {
        let a = cateye().log_discrepancies().unwrap();
        assert_eq!(a, vec![one_minus(22), one_minus(28)]);
    }

    #[test]
    fn cateye_is_lc_up_to_one_twenty_eighth() {
        let report = cateye().lc_verdict(&r(1, 28)).unwrap();
        assert!(report.holds_on_interval);
        assert_eq!(report.lc_below, r(1, 28));
        assert_eq!(report.binding, one_minus(28));
        assert!(report.coefficient_violations.is_empty());
    }

    #[test]
    fn three_cusps_ledger() {
        // one cusp of the three-cusp quartic: C has multiplicity sequence
        // 2,1,1; 18c of lines meet only the first center
        let chain = BlowupChain {
            name: "three-cusps".to_string(),
            components: vec![
                BoundaryComponent::new("C", aff(r(1, 2), r(0, 1))),
                BoundaryComponent::with_count("lines", slope(9), 2),
            ],
            vertex: None,
            centers: vec![
                center(1, &[], &[("C", 2), ("lines", 1)]),
                center(2, &[1], &[("C", 1)]),
                center(3, &[1, 2], &[("C", 1)]),
            ],
        };
        let a = chain.log_discrepancies().unwrap();
        assert_eq!(
            a,
            vec![
                one_minus(18),
                aff(r(3, 2), r(-18, 1)),
                aff(r(2, 1), r(-36, 1))
            ]
        );
    }

    #[test]
    fn weighted_vertex_value() {
        // the 1/4(1,1) vertex with 56 rulings of coefficient c, ord 1/4
        let chain = BlowupChain {
            name: "vertex".to_string(),
            components: vec![
                BoundaryComponent::new("C", aff(r(1, 2), r(0, 1))),
                BoundaryComponent::with_count("rulings", slope(1), 56),
            ],
            vertex: Some(VertexStart {
                n: 4,
                ords: [("rulings".to_string(), r(1, 4))].into_iter().collect(),
            }),
            centers: vec![],
        };
        let a = chain.log_discrepancies().unwrap();
        assert_eq!(a, vec![aff(r(1, 2), r(-14, 1))]);
    }

    #[test]
    fn empty_boundary_single_blowup() {
        let chain = BlowupChain {
            name: "bare".to_string(),
            components: vec![],
            vertex: None,
            centers: vec![center(1, &[], &[])],
        };
        assert_eq!(
            chain.log_discrepancies().unwrap(),
            vec![AffineRational::constant(Rational::from_int(2))]
        );
    }

    #[test]
    fn coefficient_cap_can_bind() {
        // a 16c component with cmax = 1/10: the cap 1 - 16c binds at 1/16
        let chain = BlowupChain {
            name: "cap".to_string(),
            components: vec![BoundaryComponent::new("L", slope(16))],
            vertex: None,
            centers: vec![center(1, &[], &[("L", 1)])],
        };
        let report = chain.lc_verdict(&r(1, 10)).unwrap();
        assert!(!report.holds_on_interval);
        assert_eq!(report.lc_below, r(1, 16));
        assert_eq!(report.binding, one_minus(16));
        assert!(report.binding_name.contains("coefficient cap on L"));
    }

    #[test]
    fn dangling_reference_is_rejected() {
        let chain = BlowupChain {
            name: "bad".to_string(),
            components: vec![],
            vertex: None,
            centers: vec![center(1, &[1], &[])],
        };
        assert!(matches!(
            chain.log_discrepancies(),
            Err(ChainError::DanglingReference { .. })
        ));
    }

    #[test]
    fn unknown_component_is_rejected() {
        let chain = BlowupChain {
            name: "bad".to_string(),
            components: vec![],
            vertex: None,
            centers: vec![center(1, &[], &[("ghost", 1)])],
        };
        assert!(matches!(
            chain.log_discrepancies(),
            Err(ChainError::UnknownComponent { .. })
        ));
    }

    #[test]
    fn quartic_classification_table() {
        use QuarticSingularity::*;
        assert_eq!(quartic_git_class(&[A1, A1]), GitClass::Stable);
        assert_eq!(quartic_git_class(&[A2]), GitClass::Stable);
        assert_eq!(quartic_git_class(&[]), GitClass::Stable);
        assert_eq!(quartic_git_class(&[Tacnode]), GitClass::StrictlySemistable);
        assert_eq!(
            quartic_git_class(&[DoubleConic]),
            GitClass::StrictlySemistable
        );
        assert_eq!(quartic_git_class(&[Tacnode, Worse]), GitClass::Unstable);
    }

    #[test]
    fn octic_semistability_is_max_multiplicity_four() {
        assert!(octic_semistable(&[4, 2, 1, 1]).unwrap());
        assert!(!octic_semistable(&[5, 3]).unwrap());
        assert!(octic_semistable(&[1; 8]).unwrap());
        assert!(matches!(
            octic_semistable(&[4, 2]),
            Err(ChainError::BadOcticPartition(6))
        ));
    }
}
