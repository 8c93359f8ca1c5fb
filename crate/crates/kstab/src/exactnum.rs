//! Exact rational arithmetic and affine-in-`c` functions.
//!
//! Everything downstream (intersection theory, pull-backs, log discrepancies,
//! beta invariants) is expressed over [`Rational`] and [`AffineRational`];
//! there is no floating point anywhere in the engine. An `AffineRational`
//! is a function `constant + slope * c` of the boundary coefficient `c`,
//! which is the shape of every threshold expression this crate manipulates
//! (`1 - 288c`, `3/2 - 18c`, `1/2 - 14c`, ...).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational from {0:?} (expected \"p\" or \"p/q\")")]
    ParseRational(String),
}

/// An exact rational number, kept in lowest terms with a positive denominator.
///
/// Serializes as the string `"p/q"`, or `"p"` when the denominator is 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den`, normalizing sign and reducing. Errors on `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Self, ExactError> {
        if den == 0 {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// Shorthand for ratios known to have a nonzero denominator.
    ///
    /// # Panics
    /// Panics if `den == 0`; use [`Rational::new`] for untrusted input.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(num, den).expect("nonzero denominator")
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Largest integer `<= self`, as a rational.
    pub fn floor(&self) -> Self {
        Rational(self.0.floor())
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn frac(&self) -> Self {
        Rational(&self.0 - self.0.floor())
    }

    /// Exact division; division by zero is an error, never a value.
    pub fn checked_div(&self, rhs: &Rational) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    /// Lossy conversion used only by test oracles.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().expect("finite rational")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactError::ParseRational(s.to_string());
        match s.split_once('/') {
            None => {
                let n = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(ExactError::ZeroDenominator);
                }
                Ok(Rational(BigRational::new(p, q)))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

impl Div for &Rational {
    type Output = Rational;

    /// # Panics
    /// Panics on a zero divisor; engine code divides only by pivots already
    /// checked nonzero. Fallible paths go through [`Rational::checked_div`].
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        (&self).div(&rhs)
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        (&self).div(rhs)
    }
}

impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self.div(&rhs)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// An exact affine function `constant + slope * c` of the boundary
/// coefficient `c`.
///
/// Closed under addition and scaling by [`Rational`]; evaluation is exact at
/// every rational `c`. Serializes as `{"const": "p/q", "slope": "p/q"}`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRational {
    /// Value at `c = 0`.
    #[serde(rename = "const")]
    pub constant: Rational,
    /// Coefficient of `c`.
    pub slope: Rational,
}

impl AffineRational {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        AffineRational { constant, slope }
    }

    pub fn constant(value: Rational) -> Self {
        AffineRational {
            constant: value,
            slope: Rational::zero(),
        }
    }

    /// The function `k * c`.
    pub fn multiple_of_c(k: Rational) -> Self {
        AffineRational {
            constant: Rational::zero(),
            slope: k,
        }
    }

    pub fn zero() -> Self {
        Self::constant(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.slope.is_zero()
    }

    pub fn evaluate(&self, c: &Rational) -> Rational {
        &self.constant + &(&self.slope * c)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        AffineRational {
            constant: &self.constant * k,
            slope: &self.slope * k,
        }
    }

    /// The unique `c* > 0` with `f(c*) = 0`, when `slope < 0` and
    /// `constant > 0`; absent otherwise.
    pub fn positive_zero(&self) -> Option<Rational> {
        if self.slope.is_negative() && self.constant.is_positive() {
            Some(-&self.constant / &self.slope)
        } else {
            None
        }
    }

    /// Where `f(c) > 0` inside the open interval `(0, cmax)`.
    pub fn positivity_on(&self, cmax: &Rational) -> Positivity {
        assert!(cmax.is_positive(), "cmax must be positive");
        let at_zero = &self.constant;
        let at_cmax = self.evaluate(cmax);
        let zero = Rational::zero();
        if *at_zero >= zero && at_cmax >= zero {
            if at_zero.is_zero() && at_cmax.is_zero() {
                // identically zero
                return Positivity::Nowhere;
            }
            return Positivity::Everywhere;
        }
        if *at_zero <= zero && at_cmax <= zero {
            return Positivity::Nowhere;
        }
        // exactly one sign change across the interval
        let root = -&self.constant / &self.slope;
        if at_zero.is_positive() {
            Positivity::On {
                from: zero,
                to: root,
            }
        } else {
            Positivity::On {
                from: root,
                to: cmax.clone(),
            }
        }
    }

    /// Largest `t <= cmax` with `f >= 0` on the whole of `(0, t)`; zero when
    /// the constraint already fails arbitrarily close to `c = 0`.
    pub fn nonnegative_until(&self, cmax: &Rational) -> Rational {
        match self.failure_onset() {
            Some(z) if z < *cmax => z,
            _ => cmax.clone(),
        }
    }

    /// The point where the constraint `f >= 0` first fails as `c` grows
    /// from 0; `None` when it holds for every `c >= 0`.
    pub fn failure_onset(&self) -> Option<Rational> {
        if self.constant.is_negative() {
            return Some(Rational::zero());
        }
        if self.constant.is_zero() && self.slope.is_negative() {
            return Some(Rational::zero());
        }
        self.positive_zero()
    }

    /// Pointwise comparison over an interval on which neither function
    /// crosses the other; used only for deterministic tie-breaking.
    pub fn compare_at(&self, other: &AffineRational, c: &Rational) -> Ordering {
        self.evaluate(c).cmp(&other.evaluate(c))
    }
}

impl Add for &AffineRational {
    type Output = AffineRational;
    fn add(self, rhs: &AffineRational) -> AffineRational {
        AffineRational {
            constant: &self.constant + &rhs.constant,
            slope: &self.slope + &rhs.slope,
        }
    }
}

impl Add for AffineRational {
    type Output = AffineRational;
    fn add(self, rhs: AffineRational) -> AffineRational {
        (&self) + (&rhs)
    }
}

impl Sub for &AffineRational {
    type Output = AffineRational;
    fn sub(self, rhs: &AffineRational) -> AffineRational {
        AffineRational {
            constant: &self.constant - &rhs.constant,
            slope: &self.slope - &rhs.slope,
        }
    }
}

impl Sub for AffineRational {
    type Output = AffineRational;
    fn sub(self, rhs: AffineRational) -> AffineRational {
        (&self) - (&rhs)
    }
}

impl Neg for &AffineRational {
    type Output = AffineRational;
    fn neg(self) -> AffineRational {
        AffineRational {
            constant: -&self.constant,
            slope: -&self.slope,
        }
    }
}

impl fmt::Display for AffineRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            return write!(f, "{}", self.constant);
        }
        let c_term = |slope: &Rational| -> String {
            if slope == &Rational::one() {
                "c".to_string()
            } else if slope.is_integer() {
                format!("{slope}c")
            } else {
                format!("({slope})c")
            }
        };
        if self.constant.is_zero() {
            if self.slope.is_negative() {
                return write!(f, "-{}", c_term(&self.slope.abs()));
            }
            return write!(f, "{}", c_term(&self.slope));
        }
        if self.slope.is_negative() {
            write!(f, "{} - {}", self.constant, c_term(&self.slope.abs()))
        } else {
            write!(f, "{} + {}", self.constant, c_term(&self.slope))
        }
    }
}

impl fmt::Debug for AffineRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Sign verdict for an affine function over an open interval `(0, cmax)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Positivity {
    /// `f > 0` on all of `(0, cmax)`.
    Everywhere,
    /// `f > 0` exactly on the stated open sub-interval.
    On { from: Rational, to: Rational },
    /// `f > 0` nowhere on `(0, cmax)`.
    Nowhere,
}

impl fmt::Display for Positivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Positivity::Everywhere => write!(f, "positive on all of the interval"),
            Positivity::On { from, to } => write!(f, "positive only on ({from}, {to})"),
            Positivity::Nowhere => write!(f, "not positive anywhere on the interval"),
        }
    }
}

pub mod linsys {
    //! Exact dense linear solve over the rationals, sized for the Gram
    //! systems of root configurations (at most 8 x 8).

    use super::Rational;
    use thiserror::Error;

    #[derive(Debug, Error, Clone, PartialEq, Eq)]
    pub enum LinsysError {
        #[error("singular matrix")]
        Singular,
        #[error("shape mismatch: matrix is {rows}x{cols}, rhs has {rhs} entries")]
        ShapeMismatch {
            rows: usize,
            cols: usize,
            rhs: usize,
        },
    }

    /// Solves `matrix * x = rhs` by Gaussian elimination with exact rational
    /// pivoting. The matrix must be square and nonsingular.
    pub fn solve(matrix: &[Vec<Rational>], rhs: &[Rational]) -> Result<Vec<Rational>, LinsysError> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) || rhs.len() != n {
            return Err(LinsysError::ShapeMismatch {
                rows: n,
                cols: matrix.first().map_or(0, Vec::len),
                rhs: rhs.len(),
            });
        }
        if n == 0 {
            return Ok(Vec::new());
        }

        let mut a: Vec<Vec<Rational>> = matrix.to_vec();
        let mut b: Vec<Rational> = rhs.to_vec();

        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(LinsysError::Singular)?;
            a.swap(col, pivot_row);
            b.swap(col, pivot_row);

            let pivot_row = a[col].clone();
            let pivot = pivot_row[col].clone();
            for row in (col + 1)..n {
                if a[row][col].is_zero() {
                    continue;
                }
                let factor = &a[row][col] / &pivot;
                for (slot, pv) in a[row][col..n].iter_mut().zip(&pivot_row[col..n]) {
                    *slot = &*slot - &(&factor * pv);
                }
                let delta = &factor * &b[col];
                b[row] = &b[row] - &delta;
            }
        }

        let mut x = vec![Rational::zero(); n];
        for row in (0..n).rev() {
            let mut acc = b[row].clone();
            for col in (row + 1)..n {
                acc = &acc - &(&a[row][col] * &x[col]);
            }
            x[row] = &acc / &a[row][row];
        }
        Ok(x)
    }

    /// Exact determinant, used for the Sylvester minors of Cartan matrices.
    pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
        let n = matrix.len();
        assert!(
            matrix.iter().all(|row| row.len() == n),
            "square matrix required"
        );
        if n == 0 {
            return Rational::one();
        }
        let mut a: Vec<Vec<Rational>> = matrix.to_vec();
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot_row) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Rational::zero();
            };
            if pivot_row != col {
                a.swap(col, pivot_row);
                det = -det;
            }
            let pivot_vals = a[col].clone();
            let pivot = pivot_vals[col].clone();
            det = &det * &pivot;
            for row in a.iter_mut().skip(col + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let factor = &row[col] / &pivot;
                for (slot, pv) in row[col..n].iter_mut().zip(&pivot_vals[col..n]) {
                    *slot = &*slot - &(&factor * pv);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn aff(c: (i64, i64), s: (i64, i64)) -> AffineRational {
        AffineRational::new(r(c.0, c.1), r(s.0, s.1))
    }

    #[test]
    fn reduction_and_sign_normalization() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(1, -2), r(-1, 2));
        assert_eq!(r(-6, -9), r(2, 3));
        assert_eq!(r(0, 7), Rational::zero());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(Rational::new(1, 0), Err(ExactError::ZeroDenominator));
        assert_eq!(
            r(1, 2).checked_div(&Rational::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["7/8", "-1/288", "0", "240", "-3"] {
            let q: Rational = s.parse().unwrap();
            assert_eq!(q.to_string(), s);
        }
        assert_eq!("2/4".parse::<Rational>().unwrap().to_string(), "1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn affine_add_examples() {
        // componentwise sum
        assert_eq!(
            aff((1, 1), (-18, 1)) + aff((0, 1), (-6, 1)),
            aff((1, 1), (-24, 1))
        );
        // identity case
        assert_eq!(
            aff((1, 1), (0, 1)) + AffineRational::zero(),
            aff((1, 1), (0, 1))
        );
        // doubling
        assert_eq!(
            aff((1, 2), (-14, 1)) + aff((1, 2), (-14, 1)),
            aff((1, 1), (-28, 1))
        );
    }

    #[test]
    fn positive_zero_examples() {
        assert_eq!(aff((1, 1), (-288, 1)).positive_zero(), Some(r(1, 288)));
        assert_eq!(aff((1, 1), (0, 1)).positive_zero(), None);
        assert_eq!(aff((3, 2), (-18, 1)).positive_zero(), Some(r(1, 12)));
        // negative constant or positive slope never yields a wall candidate
        assert_eq!(aff((-1, 1), (-2, 1)).positive_zero(), None);
        assert_eq!(aff((1, 1), (2, 1)).positive_zero(), None);
    }

    #[test]
    fn positive_zero_evaluates_to_exact_zero() {
        let f = aff((3, 2), (-18, 1));
        let z = f.positive_zero().unwrap();
        assert!(f.evaluate(&z).is_zero());
    }

    #[test]
    fn positivity_interval_examples() {
        assert_eq!(
            aff((1, 1), (-9, 1)).positivity_on(&r(1, 9)),
            Positivity::Everywhere
        );
        assert_eq!(
            aff((1, 1), (-288, 1)).positivity_on(&r(1, 240)),
            Positivity::On {
                from: Rational::zero(),
                to: r(1, 288)
            }
        );
        assert_eq!(
            AffineRational::zero().positivity_on(&r(1, 1)),
            Positivity::Nowhere
        );
        // vanishing exactly at the open right endpoint still counts
        assert_eq!(
            aff((1, 1), (-28, 1)).positivity_on(&r(1, 28)),
            Positivity::Everywhere
        );
        // increasing through zero
        assert_eq!(
            aff((-1, 2), (2, 1)).positivity_on(&r(1, 1)),
            Positivity::On {
                from: r(1, 4),
                to: r(1, 1)
            }
        );
    }

    #[test]
    fn display_formats() {
        assert_eq!(aff((1, 1), (-288, 1)).to_string(), "1 - 288c");
        assert_eq!(aff((1, 2), (-14, 1)).to_string(), "1/2 - 14c");
        assert_eq!(aff((17, 18), (40, 3)).to_string(), "17/18 + (40/3)c");
        assert_eq!(aff((2, 1), (0, 1)).to_string(), "2");
        assert_eq!(AffineRational::multiple_of_c(r(9, 1)).to_string(), "9c");
        assert_eq!(AffineRational::multiple_of_c(r(-1, 1)).to_string(), "-c");
    }

    #[test]
    fn serde_uses_exact_strings() {
        let f = aff((1, 2), (-14, 1));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"const":"1/2","slope":"-14"}"#);
        let back: AffineRational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn linsys_solves_cartan_style_systems() {
        // A2 Cartan system: x = (2/3, 1/3)
        let m = vec![vec![r(2, 1), r(-1, 1)], vec![r(-1, 1), r(2, 1)]];
        let x = linsys::solve(&m, &[Rational::one(), Rational::zero()]).unwrap();
        assert_eq!(x, vec![r(2, 3), r(1, 3)]);
    }

    #[test]
    fn linsys_rejects_singular_and_misshapen_input() {
        let singular = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert_eq!(
            linsys::solve(&singular, &[Rational::one(), Rational::one()]),
            Err(linsys::LinsysError::Singular)
        );
        assert!(matches!(
            linsys::solve(&singular, &[Rational::one()]),
            Err(linsys::LinsysError::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn determinant_signs() {
        let m = vec![vec![r(0, 1), r(1, 1)], vec![r(1, 1), r(0, 1)]];
        assert_eq!(linsys::determinant(&m), r(-1, 1));
        assert_eq!(linsys::determinant(&[]), Rational::one());
    }
}
