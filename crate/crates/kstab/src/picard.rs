//! The Picard lattice of a blow-up of the projective plane at `n <= 8`
//! (possibly infinitely-near) points.
//!
//! Classes are integer vectors in the orthogonal basis `(H, E_1, ..., E_n)`
//! with the diagonal intersection form `H^2 = 1`, `E_i^2 = -1`. The module
//! enumerates the two class families everything else is built from:
//!
//! * lines: `L^2 = -1`, `L.K = -1` (counts 1, 3, 6, 10, 16, 27, 56, 240
//!   for `n = 1..8`);
//! * roots: `R^2 = -2`, `R.K = 0` (the (-2)-classes contracted at du Val
//!   singularities).
//!
//! Enumeration bound: a class with `L^2 = s` and `K.L = k` satisfies
//! `sum(m_i) = -3d - k` and `sum(m_i^2) = d^2 - s`, so Cauchy-Schwarz gives
//! `(3d + k)^2 <= n (d^2 - s)`, a quadratic in the `H`-coefficient `d` with
//! positive leading coefficient `9 - n > 0`. The search runs over every
//! integer `d` in that closed range and is exhaustive: outside it the two
//! defining constraints are unsatisfiable. For lines with `n = 8` the range
//! is `[-1, 7]` (integrality then rules out `d = 7`, so 6 is the largest
//! realized `H`-coefficient).

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PicardError {
    #[error("dimension mismatch: classes have {left} and {right} exceptional coefficients")]
    DimensionMismatch { left: usize, right: usize },
    #[error("number of blown-up points {0} out of range (expected {1}..={2})")]
    PointsOutOfRange(usize, usize, usize),
}

/// A divisor class `d*H + sum(m_i * E_i)` in the basis `(H, E_1, ..., E_n)`.
///
/// Serializes as `{"H": d, "E": [m_1, ..., m_n]}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DivisorClass {
    /// Coefficient of the hyperplane class `H`.
    #[serde(rename = "H")]
    pub h: i64,
    /// Coefficients of the exceptional classes `E_1, ..., E_n`.
    #[serde(rename = "E")]
    pub e: Vec<i64>,
}

impl DivisorClass {
    pub fn new(h: i64, e: Vec<i64>) -> Self {
        DivisorClass { h, e }
    }

    /// Number of exceptional coordinates (the `n` of the ambient lattice).
    pub fn n(&self) -> usize {
        self.e.len()
    }

    /// Intersection pairing in the diagonal form:
    /// `u.d * v.d - sum(u.m_i * v.m_i)`.
    pub fn pairing(&self, other: &DivisorClass) -> Result<i64, PicardError> {
        if self.e.len() != other.e.len() {
            return Err(PicardError::DimensionMismatch {
                left: self.e.len(),
                right: other.e.len(),
            });
        }
        let mixed: i64 = self.e.iter().zip(&other.e).map(|(a, b)| a * b).sum();
        Ok(self.h * other.h - mixed)
    }

    pub fn self_intersection(&self) -> i64 {
        self.pairing(self).expect("same lattice")
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, PicardError> {
        if self.e.len() != other.e.len() {
            return Err(PicardError::DimensionMismatch {
                left: self.e.len(),
                right: other.e.len(),
            });
        }
        Ok(DivisorClass {
            h: self.h + other.h,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
        })
    }
}

impl fmt::Display for DivisorClass {
    /// Renders e.g. `3H - 2E1 - E2 + E4` (and `0` for the zero class).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn term(
            f: &mut fmt::Formatter<'_>,
            wrote: &mut bool,
            coeff: i64,
            name: &str,
        ) -> fmt::Result {
            if coeff == 0 {
                return Ok(());
            }
            let mag = coeff.abs();
            if *wrote {
                write!(f, " {} ", if coeff < 0 { "-" } else { "+" })?;
            } else if coeff < 0 {
                write!(f, "-")?;
            }
            *wrote = true;
            if mag == 1 {
                write!(f, "{name}")
            } else {
                write!(f, "{mag}{name}")
            }
        }

        let mut wrote = false;
        term(f, &mut wrote, self.h, "H")?;
        for (i, &m) in self.e.iter().enumerate() {
            term(f, &mut wrote, m, &format!("E{}", i + 1))?;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The Picard lattice of a blow-up of the plane at `n` points, `0 <= n <= 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PicardLattice {
    n: usize,
}

impl PicardLattice {
    pub fn new(n: usize) -> Result<Self, PicardError> {
        if n > 8 {
            return Err(PicardError::PointsOutOfRange(n, 0, 8));
        }
        Ok(PicardLattice { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hyperplane(&self) -> DivisorClass {
        DivisorClass::new(1, vec![0; self.n])
    }

    /// The `i`-th exceptional class (1-based).
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        assert!(i >= 1 && i <= self.n, "exceptional index out of range");
        let mut e = vec![0; self.n];
        e[i - 1] = 1;
        DivisorClass::new(0, e)
    }

    /// Canonical class `K = -3H + sum(E_i)`, with `K^2 = 9 - n`.
    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::new(-3, vec![1; self.n])
    }

    /// Anticanonical degree `-K.C` of a class.
    pub fn degree(&self, c: &DivisorClass) -> Result<i64, PicardError> {
        Ok(-self.canonical().pairing(c)?)
    }

    pub fn lines(&self) -> Result<Vec<DivisorClass>, PicardError> {
        enumerate_lines(self.n)
    }

    pub fn roots(&self) -> Result<Vec<DivisorClass>, PicardError> {
        enumerate_roots(self.n)
    }
}

/// All classes `L` with `L^2 = -1` and `L.K = -1`, lexicographically sorted.
pub fn enumerate_lines(n: usize) -> Result<Vec<DivisorClass>, PicardError> {
    if n == 0 || n > 8 {
        return Err(PicardError::PointsOutOfRange(n, 1, 8));
    }
    Ok(enumerate_classes(n, -1, -1))
}

/// All classes `R` with `R^2 = -2` and `R.K = 0` (both signs; the set is
/// symmetric under negation), lexicographically sorted.
pub fn enumerate_roots(n: usize) -> Result<Vec<DivisorClass>, PicardError> {
    if n == 0 || n > 8 {
        return Err(PicardError::PointsOutOfRange(n, 1, 8));
    }
    Ok(enumerate_classes(n, -2, 0))
}

/// Exhaustive search for classes with prescribed self-intersection `s` and
/// canonical degree `k = K.C`, over the Cauchy-Schwarz range of `d` derived
/// in the module docs.
fn enumerate_classes(n: usize, s: i64, k: i64) -> Vec<DivisorClass> {
    let nn = n as i64;
    let mut out = Vec::new();

    // (9 - n) d^2 + 6 k d + (k^2 + n s) <= 0
    let lead = 9 - nn;
    debug_assert!(lead > 0);
    let disc = 36 * k * k - 4 * lead * (k * k + nn * s);
    if disc < 0 {
        return out;
    }
    let sqrt_disc = (disc as f64).sqrt();
    // conservative integer window around the real roots; the exact
    // inequality is re-checked per d below
    let d_lo = ((-6.0 * k as f64 - sqrt_disc) / (2.0 * lead as f64)).floor() as i64 - 1;
    let d_hi = ((-6.0 * k as f64 + sqrt_disc) / (2.0 * lead as f64)).ceil() as i64 + 1;

    for d in d_lo..=d_hi {
        if lead * d * d + 6 * k * d + (k * k + nn * s) > 0 {
            continue;
        }
        let target_sum = -3 * d - k;
        let target_sq = d * d - s;
        if target_sq < 0 {
            continue;
        }
        let mut coords = vec![0i64; n];
        search_coords(n, 0, target_sum, target_sq, d, &mut coords, &mut out);
    }

    for c in &out {
        debug_assert_eq!(c.self_intersection(), s);
        debug_assert_eq!(
            PicardLattice::new(n)
                .unwrap()
                .canonical()
                .pairing(c)
                .unwrap(),
            k
        );
    }
    out.sort();
    out
}

fn search_coords(
    n: usize,
    idx: usize,
    rem_sum: i64,
    rem_sq: i64,
    d: i64,
    coords: &mut Vec<i64>,
    out: &mut Vec<DivisorClass>,
) {
    if idx == n {
        if rem_sum == 0 && rem_sq == 0 {
            out.push(DivisorClass::new(d, coords.clone()));
        }
        return;
    }
    let slots = (n - idx) as i64;
    // Cauchy-Schwarz prune on the remaining coordinates
    if rem_sum * rem_sum > slots * rem_sq {
        return;
    }
    let bound = (rem_sq as f64).sqrt() as i64 + 1;
    for m in -bound..=bound {
        let sq = m * m;
        if sq > rem_sq {
            continue;
        }
        coords[idx] = m;
        search_coords(n, idx + 1, rem_sum - m, rem_sq - sq, d, coords, out);
    }
    coords[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_normalization() {
        let lat = PicardLattice::new(3).unwrap();
        let h = lat.hyperplane();
        assert_eq!(h.pairing(&h).unwrap(), 1);
        let e1 = lat.exceptional(1);
        assert_eq!(e1.pairing(&e1).unwrap(), -1);
        assert_eq!(h.pairing(&e1).unwrap(), 0);
    }

    #[test]
    fn canonical_self_intersection_is_nine_minus_n() {
        for n in 0..=8 {
            let lat = PicardLattice::new(n).unwrap();
            let k = lat.canonical();
            assert_eq!(k.pairing(&k).unwrap(), 9 - n as i64);
        }
    }

    #[test]
    fn a7_degeneration_line_types_are_lines() {
        // seven line types of the A7 degeneration, translated from chain-curve
        // notation into the orthogonal basis; each must be a (-1)-class of
        // degree 1
        let lat = PicardLattice::new(8).unwrap();
        let classes = [
            DivisorClass::new(0, vec![0, 0, 0, 0, 0, 0, 0, 1]),
            DivisorClass::new(1, vec![-1, -1, 0, 0, 0, 0, 0, 0]),
            DivisorClass::new(2, vec![-1, -1, -1, -1, -1, 0, 0, 0]),
            DivisorClass::new(3, vec![-2, -1, -1, -1, -1, -1, -1, 0]),
            DivisorClass::new(4, vec![-2, -2, -2, -1, -1, -1, -1, -1]),
            DivisorClass::new(5, vec![-2, -2, -2, -2, -2, -2, -1, -1]),
            DivisorClass::new(6, vec![-3, -2, -2, -2, -2, -2, -2, -2]),
        ];
        for c in &classes {
            assert_eq!(c.self_intersection(), -1, "{c} should square to -1");
            assert_eq!(lat.degree(c).unwrap(), 1, "{c} should have degree 1");
        }
    }

    #[test]
    fn line_counts_match_classical_values() {
        let expected = [1, 3, 6, 10, 16, 27, 56, 240];
        for (n, &count) in (1..=8).zip(expected.iter()) {
            let lines = enumerate_lines(n).unwrap();
            assert_eq!(lines.len(), count, "line count for n={n}");
            let lat = PicardLattice::new(n).unwrap();
            for l in &lines {
                assert_eq!(l.self_intersection(), -1);
                assert_eq!(lat.degree(l).unwrap(), 1);
            }
        }
    }

    #[test]
    fn root_counts_match_known_root_systems() {
        // A1, A2+A1, A4, D5, E6, E7, E8 -- total root counts
        let expected = [0, 2, 8, 20, 40, 72, 126, 240];
        for (n, &count) in (1..=8).zip(expected.iter()) {
            let roots = enumerate_roots(n).unwrap();
            assert_eq!(roots.len(), count, "root count for n={n}");
            let lat = PicardLattice::new(n).unwrap();
            for r in &roots {
                assert_eq!(r.self_intersection(), -2);
                assert_eq!(lat.degree(r).unwrap(), 0);
            }
        }
    }

    #[test]
    fn roots_for_two_points_are_the_a1_pair() {
        let roots = enumerate_roots(2).unwrap();
        assert_eq!(
            roots,
            vec![
                DivisorClass::new(0, vec![-1, 1]),
                DivisorClass::new(0, vec![1, -1]),
            ]
        );
    }

    #[test]
    fn root_sets_are_negation_symmetric() {
        for n in 2..=8 {
            let roots = enumerate_roots(n).unwrap();
            for r in &roots {
                let neg = DivisorClass::new(-r.h, r.e.iter().map(|m| -m).collect());
                assert!(roots.contains(&neg), "negation of {r} missing for n={n}");
            }
        }
    }

    #[test]
    fn enumeration_is_sorted_and_deterministic() {
        let a = enumerate_lines(6).unwrap();
        let b = enumerate_lines(6).unwrap();
        assert_eq!(a, b);
        let mut sorted = a.clone();
        sorted.sort();
        assert_eq!(a, sorted);
    }

    #[test]
    fn largest_h_coefficient_of_a_line_is_six() {
        let lines = enumerate_lines(8).unwrap();
        assert_eq!(lines.iter().map(|l| l.h).max(), Some(6));
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(enumerate_lines(0).is_err());
        assert!(enumerate_lines(9).is_err());
        assert!(enumerate_roots(9).is_err());
        assert!(PicardLattice::new(9).is_err());
    }

    #[test]
    fn pairing_rejects_dimension_mismatch() {
        let a = DivisorClass::new(1, vec![0, 0]);
        let b = DivisorClass::new(1, vec![0, 0, 0]);
        assert!(matches!(
            a.pairing(&b),
            Err(PicardError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn display_renders_signed_terms() {
        let c = DivisorClass::new(3, vec![-2, -1, 0, 1]);
        assert_eq!(c.to_string(), "3H - 2E1 - E2 + E4");
        assert_eq!(DivisorClass::new(0, vec![0]).to_string(), "0");
    }
}
