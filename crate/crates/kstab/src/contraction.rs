//! Contractions of ADE root configurations: Mumford pull-back,
//! discrepancies, line-degeneration orbits with multiplicities, and
//! boundary log discrepancies as exact affine functions of the boundary
//! coefficient `c`.
//!
//! A [`ContractionModel`] is a set of effective simple (-2)-classes inside
//! the Picard lattice of a blown-up plane, validated to form a negative
//! definite ADE configuration. The model answers:
//!
//! * Mumford pull-back of a class orthogonalized against the contracted
//!   curves (the unique rational coefficients making the result pair to
//!   zero with every root);
//! * the partition of the lattice's lines into degeneration orbits: a
//!   line lands on the curve under a dominant representative (a line
//!   pairing `>= 0` with every root) exactly when it equals the
//!   representative plus a nonnegative integer combination of roots
//!   forming a connected cycle with it. Orbit size is the degeneration
//!   multiplicity of the image line;
//! * per-root log discrepancies `A(c) = 1 - c * sum(mult * pullback)` of
//!   the pair (surface, `c` times the degenerate line divisor), and the
//!   smallest positive zero among them (a wall candidate).
//!
//! The per-root minimum reported here is a minimum over the contraction's
//! exceptional divisors only, not a minimal log discrepancy over all
//! valuations.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::dynkin::{self, AdeType, DynkinError};
use crate::exactnum::{linsys, AffineRational, Rational};
use crate::picard::{DivisorClass, PicardError, PicardLattice};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractionError {
    #[error(transparent)]
    Dynkin(#[from] DynkinError),
    #[error(transparent)]
    Picard(#[from] PicardError),
    #[error(
        "class {class} pairs negatively with root {root}; not the proper transform of its image"
    )]
    NotProperTransform { class: String, root: String },
    #[error("Gram system unexpectedly singular")]
    SingularGram,
    #[error("line block of {class} has no member pairing nonnegatively with every root")]
    NoDominantRepresentative { class: String },
    #[error("line block of {class} has {count} dominant members (expected exactly one)")]
    AmbiguousRepresentative { class: String, count: usize },
    #[error("degree {0} out of range (expected 1..=9)")]
    DegreeOutOfRange(i64),
}

/// A validated contraction of a negative definite ADE root configuration.
#[derive(Debug, Clone)]
pub struct ContractionModel {
    name: String,
    lattice: PicardLattice,
    roots: Vec<DivisorClass>,
    ade: AdeType,
    gram: Vec<Vec<i64>>,
    orbit_cache: std::sync::OnceLock<Vec<LineOrbit>>,
}

/// One line-degeneration orbit.
///
/// The representative is the unique member pairing `>= 0` with every root
/// (the class of the actual proper transform); `multiplicity` is the number
/// of lines on a nearby smooth surface limiting onto its image, and
/// `pullback_coeffs` are the Mumford pull-back coefficients of that image
/// on the contracted roots (model order).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineOrbit {
    pub representative: DivisorClass,
    pub multiplicity: u64,
    pub pullback_coeffs: Vec<Rational>,
}

impl ContractionModel {
    /// Builds and validates a model; the Dynkin type is part of its identity.
    pub fn new(
        name: impl Into<String>,
        lattice: PicardLattice,
        roots: Vec<DivisorClass>,
    ) -> Result<Self, ContractionError> {
        let k = lattice.canonical();
        for r in &roots {
            let self_int = r.pairing(r)?;
            let k_degree = k.pairing(r)?;
            if self_int != -2 || k_degree != 0 {
                return Err(DynkinError::NotAdeConfiguration(format!(
                    "{r} has self-intersection {self_int} and canonical degree {k_degree} (expected -2 and 0)"
                ))
                .into());
            }
        }
        let n = roots.len();
        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = roots[i].pairing(&roots[j])?;
            }
        }
        let ade = dynkin::classify(&gram)?;
        Ok(ContractionModel {
            name: name.into(),
            lattice,
            roots,
            ade,
            gram,
            orbit_cache: std::sync::OnceLock::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    pub fn roots(&self) -> &[DivisorClass] {
        &self.roots
    }

    /// The Dynkin type detected at validation, e.g. `A7`, `2D4`, `3A2`.
    pub fn ade_type(&self) -> &AdeType {
        &self.ade
    }

    /// Solves the Gram system `sum_j a_j (R_j . R_k) = -(cls . R_k)` exactly;
    /// `cls + sum_j a_j R_j` is then orthogonal to every root. Requires
    /// `cls . R >= 0` for all roots (cls is the proper transform of its
    /// image), which forces every `a_j >= 0`; both are checked.
    pub fn mumford_pullback(&self, cls: &DivisorClass) -> Result<Vec<Rational>, ContractionError> {
        for r in &self.roots {
            if cls.pairing(r)? < 0 {
                return Err(ContractionError::NotProperTransform {
                    class: cls.to_string(),
                    root: r.to_string(),
                });
            }
        }
        let coeffs = self.orthogonalizing_coeffs(cls)?;
        for (a, r) in coeffs.iter().zip(&self.roots) {
            assert!(
                !a.is_negative(),
                "pull-back coefficient on {r} is negative: {a}"
            );
        }
        // orthogonality residual must vanish exactly
        debug_assert!(self
            .residuals(cls, &coeffs)
            .unwrap()
            .iter()
            .all(Rational::is_zero));
        Ok(coeffs)
    }

    /// Coefficients `a` with `(cls + sum a_j R_j) . R_k = 0` for all `k`,
    /// without the proper-transform precondition (signs unconstrained).
    fn orthogonalizing_coeffs(
        &self,
        cls: &DivisorClass,
    ) -> Result<Vec<Rational>, ContractionError> {
        let n = self.roots.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let gram: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&v| Rational::from_int(v)).collect())
            .collect();
        let rhs: Vec<Rational> = self
            .roots
            .iter()
            .map(|r| Ok(Rational::from_int(-cls.pairing(r)?)))
            .collect::<Result<_, PicardError>>()?;
        // negative definite Gram matrices are nonsingular
        linsys::solve(&gram, &rhs).map_err(|_| ContractionError::SingularGram)
    }

    /// Exact residuals `(cls + sum a_j R_j) . R_k`, for assertions and tests.
    pub fn residuals(
        &self,
        cls: &DivisorClass,
        coeffs: &[Rational],
    ) -> Result<Vec<Rational>, ContractionError> {
        let mut out = Vec::with_capacity(self.roots.len());
        for (k, rk) in self.roots.iter().enumerate() {
            let mut acc = Rational::from_int(cls.pairing(rk)?);
            for (j, a) in coeffs.iter().enumerate() {
                acc = &acc + &(a * &Rational::from_int(self.gram[j][k]));
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// Discrepancies of the contraction (coefficients of `K_Y - pi^* K_X`
    /// on the roots), computed from the Gram system for the canonical class.
    /// For ADE configurations the result is the zero vector; this is
    /// computed and asserted, not assumed.
    pub fn discrepancies(&self) -> Result<Vec<Rational>, ContractionError> {
        let k = self.lattice.canonical();
        let m = self.orthogonalizing_coeffs(&k)?;
        let disc: Vec<Rational> = m.iter().map(|v| -v).collect();
        assert!(
            disc.iter().all(Rational::is_zero),
            "du Val contraction must have zero discrepancies"
        );
        Ok(disc)
    }

    /// Partitions the lattice's lines into degeneration orbits. A line
    /// class degenerates onto a representative (a line pairing `>= 0` with
    /// every root) exactly when their difference is a nonnegative integer
    /// combination of the roots whose support, together with the
    /// representative, is connected: the flat limit of an irreducible curve
    /// is a connected effective cycle `rep + sum(n_j R_j)`. Each line must
    /// match exactly one representative; orbits are sorted by
    /// (multiplicity, representative).
    pub fn line_orbits(&self) -> Result<Vec<LineOrbit>, ContractionError> {
        if let Some(cached) = self.orbit_cache.get() {
            return Ok(cached.clone());
        }
        let orbits = self.compute_line_orbits()?;
        Ok(self.orbit_cache.get_or_init(|| orbits).clone())
    }

    fn compute_line_orbits(&self) -> Result<Vec<LineOrbit>, ContractionError> {
        let lines = self.lattice.lines()?;
        let dominant: Vec<usize> = (0..lines.len())
            .filter(|&i| {
                self.roots
                    .iter()
                    .all(|r| lines[i].pairing(r).expect("same lattice") >= 0)
            })
            .collect();
        // one Gram solve per line; candidate coefficients against any
        // representative are then differences of these vectors
        let ortho: Vec<Vec<Rational>> = lines
            .iter()
            .map(|l| self.orthogonalizing_coeffs(l))
            .collect::<Result<_, _>>()?;

        let mut members: BTreeMap<usize, u64> = dominant.iter().map(|&i| (i, 0)).collect();
        for (idx, line) in lines.iter().enumerate() {
            let mut matched: Vec<usize> = Vec::new();
            for &rep_idx in &dominant {
                if self.degenerates_onto(line, idx, &lines[rep_idx], rep_idx, &ortho)? {
                    matched.push(rep_idx);
                }
            }
            match matched.as_slice() {
                [rep_idx] => *members.get_mut(rep_idx).expect("dominant index") += 1,
                [] => {
                    return Err(ContractionError::NoDominantRepresentative {
                        class: line.to_string(),
                    })
                }
                many => {
                    return Err(ContractionError::AmbiguousRepresentative {
                        class: line.to_string(),
                        count: many.len(),
                    })
                }
            }
        }

        let mut orbits = Vec::with_capacity(members.len());
        let mut total = 0u64;
        for (rep_idx, multiplicity) in members {
            debug_assert!(multiplicity >= 1, "a representative matches itself");
            let rep = &lines[rep_idx];
            let pullback = self.mumford_pullback(rep)?;
            total += multiplicity;
            orbits.push(LineOrbit {
                representative: rep.clone(),
                multiplicity,
                pullback_coeffs: pullback,
            });
        }
        assert_eq!(
            total,
            lines.len() as u64,
            "orbit multiplicities must partition the lines"
        );
        orbits.sort_by(|a, b| {
            a.multiplicity
                .cmp(&b.multiplicity)
                .then_with(|| a.representative.cmp(&b.representative))
        });
        Ok(orbits)
    }

    /// Does `line` lie in the degeneration orbit of `rep`? True when
    /// `line - rep = sum(n_j R_j)` with every `n_j` a nonnegative integer
    /// and the cycle `rep + sum(n_j R_j)` connected. `ortho` holds each
    /// line's orthogonalizing coefficients, so the candidate `n` is
    /// `ortho[rep] - ortho[line]` without another solve.
    fn degenerates_onto(
        &self,
        line: &DivisorClass,
        line_idx: usize,
        rep: &DivisorClass,
        rep_idx: usize,
        ortho: &[Vec<Rational>],
    ) -> Result<bool, ContractionError> {
        if line == rep {
            return Ok(true);
        }
        if self.roots.is_empty() {
            return Ok(false);
        }
        let coeffs: Vec<Rational> = ortho[rep_idx]
            .iter()
            .zip(&ortho[line_idx])
            .map(|(a_rep, a_line)| a_rep - a_line)
            .collect();
        if coeffs.iter().any(|c| !c.is_integer() || c.is_negative()) {
            return Ok(false);
        }
        // the difference must lie in the root span, not merely project there
        let diff = DivisorClass::new(
            line.h - rep.h,
            line.e.iter().zip(&rep.e).map(|(a, b)| a - b).collect(),
        );
        let mut recombined = DivisorClass::new(0, vec![0; diff.n()]);
        let mut support: Vec<usize> = Vec::new();
        for (j, (c, r)) in coeffs.iter().zip(&self.roots).enumerate() {
            if c.is_zero() {
                continue;
            }
            support.push(j);
            let n: i64 = i64::try_from(c.numer().clone()).expect("small coefficient");
            recombined.h += n * r.h;
            for (slot, &m) in recombined.e.iter_mut().zip(&r.e) {
                *slot += n * m;
            }
        }
        if recombined != diff {
            return Ok(false);
        }
        Ok(self.support_connected_to(rep, &support))
    }

    /// Is the curve configuration {rep} ∪ {R_j : j in support} connected?
    fn support_connected_to(&self, rep: &DivisorClass, support: &[usize]) -> bool {
        if support.is_empty() {
            return true;
        }
        let mut reached: Vec<bool> = support
            .iter()
            .map(|&j| rep.pairing(&self.roots[j]).expect("same lattice") > 0)
            .collect();
        loop {
            let mut grew = false;
            for a in 0..support.len() {
                if reached[a] {
                    continue;
                }
                for b in 0..support.len() {
                    if reached[b] && self.gram[support[a]][support[b]] > 0 {
                        reached[a] = true;
                        grew = true;
                        break;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        reached.iter().all(|&r| r)
    }

    /// Per-root log discrepancy of the pair (contracted surface, `c` times
    /// the degenerate line divisor): `A_j(c) = (1 + disc_j)
    /// - c * sum_orbits(multiplicity * pullback_j)`, with `disc_j = 0`
    /// asserted by [`ContractionModel::discrepancies`].
    pub fn boundary_log_discrepancies(&self) -> Result<Vec<AffineRational>, ContractionError> {
        let disc = self.discrepancies()?;
        let orbits = self.line_orbits()?;
        let mut out = Vec::with_capacity(self.roots.len());
        for (j, disc_j) in disc.iter().enumerate() {
            let mut slope = Rational::zero();
            for orbit in &orbits {
                let weight = Rational::from_int(orbit.multiplicity as i64);
                slope = &slope + &(&weight * &orbit.pullback_coeffs[j]);
            }
            out.push(AffineRational::new(&Rational::one() + disc_j, -slope));
        }
        Ok(out)
    }

    /// The smallest positive zero among the roots' `A_j(c)`, when it lies
    /// strictly below `cmax` (a wall candidate); absent otherwise. The pair
    /// has some `A < 0` strictly above the returned threshold.
    pub fn instability_threshold(
        &self,
        cmax: &Rational,
    ) -> Result<Option<Rational>, ContractionError> {
        assert!(cmax.is_positive(), "cmax must be positive");
        let zeros = self
            .boundary_log_discrepancies()?
            .into_iter()
            .filter_map(|a| a.positive_zero());
        Ok(zeros.min().filter(|z| z < cmax))
    }
}

impl fmt::Display for ContractionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({} on n={}, {} roots)",
            self.name,
            self.ade,
            self.lattice.n(),
            self.roots.len()
        )
    }
}

/// The largest local quotient-group order a K-semistable del Pezzo surface
/// of the given anticanonical degree can carry: `floor(9 / degree)`, from
/// the volume bound `degree <= (3/2)^2 * 4 / |G|` at a smooth quotient
/// point.
pub fn volume_bound_max_order(degree: i64) -> Result<i64, ContractionError> {
    if !(1..=9).contains(&degree) {
        return Err(ContractionError::DegreeOutOfRange(degree));
    }
    Ok(9 / degree)
}
