//! Exact arithmetic in the real field ℚ(√2,√3,√5).
//!
//! Every bilinear-form value and root coordinate produced by edge labels
//! in {2,3,4,5,6,∞} lives in this field. Elements are stored as eight
//! arbitrary-precision rational coordinates in the basis
//! {1, √2, √3, √5, √6, √10, √15, √30}, so the zero test is exact and no
//! floating point enters any decision path.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::graph::Label;

/// Radicands of the basis elements, in storage order.
pub const BASIS_RADICANDS: [u64; 8] = [1, 2, 3, 5, 6, 10, 15, 30];

/// Exact sign of a field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    /// Coordinates over {1, √2, √3, √5, √6, √10, √15, √30}.
    coords: [BigRational; 8],
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("label {0} is not supported by exact enumeration (supported: 2,3,4,5,6,inf)")]
    UnsupportedLabel(String),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// (target index, integer factor) for each product of basis surds:
/// √d_i · √d_j = factor · √d_k.
fn mul_table() -> &'static [[(usize, u64); 8]; 8] {
    static TABLE: OnceLock<[[(usize, u64); 8]; 8]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [[(0usize, 0u64); 8]; 8];
        for i in 0..8 {
            for j in 0..8 {
                let (a, b) = (BASIS_RADICANDS[i], BASIS_RADICANDS[j]);
                let g = gcd(a, b);
                let target = a / g * (b / g);
                let k = BASIS_RADICANDS
                    .iter()
                    .position(|&d| d == target)
                    .expect("surd products stay inside the basis");
                t[i][j] = (k, g);
            }
        }
        t
    })
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            coords: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn one() -> Self {
        Scalar::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        let mut s = Scalar::zero();
        s.coords[0] = BigRational::from_integer(BigInt::from(n));
        s
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let mut s = Scalar::zero();
        s.coords[0] = BigRational::new(BigInt::from(num), BigInt::from(den));
        s
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut s = Scalar::zero();
        s.coords[0] = r;
        s
    }

    /// The basis surd √d for d in {1,2,3,5,6,10,15,30}.
    pub fn sqrt(d: u64) -> Self {
        let k = BASIS_RADICANDS
            .iter()
            .position(|&b| b == d)
            .expect("radicand outside the field basis");
        let mut s = Scalar::zero();
        s.coords[k] = BigRational::one();
        s
    }

    pub fn coords(&self) -> &[BigRational; 8] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// True when the element is rational (all surd coordinates vanish).
    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Exact sign. Zero is decided by the coordinate test; a nonzero value
    /// is decided by certified rational interval refinement of the surds,
    /// which terminates because nonzero field elements are bounded away
    /// from zero.
    pub fn sign(&self) -> Sign {
        if self.is_zero() {
            return Sign::Zero;
        }
        if self.is_rational() {
            return if self.coords[0].is_positive() {
                Sign::Positive
            } else {
                Sign::Negative
            };
        }
        // Heron refinement doubles the accurate digits each step; start
        // near 1e-3 and escalate.
        let mut steps = 4usize;
        loop {
            let (lo, hi) = self.eval_interval(steps);
            if lo.is_positive() {
                return Sign::Positive;
            }
            if hi.is_negative() {
                return Sign::Negative;
            }
            steps += 2;
            assert!(
                steps <= 64,
                "interval refinement failed to separate a nonzero field element from zero"
            );
        }
    }

    /// Enclosing rational interval after `steps` Heron iterations per surd.
    fn eval_interval(&self, steps: usize) -> (BigRational, BigRational) {
        let mut lo = self.coords[0].clone();
        let mut hi = self.coords[0].clone();
        for (k, c) in self.coords.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let (slo, shi) = sqrt_bounds(BASIS_RADICANDS[k], steps);
            if c.is_positive() {
                lo += c * &slo;
                hi += c * &shi;
            } else {
                lo += c * &shi;
                hi += c * &slo;
            }
        }
        (lo, hi)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Sign::Negative
    }

    /// Numeric comparison (as opposed to the structural `Ord`, which is the
    /// canonical coordinate order used for deterministic keying).
    pub fn cmp_real(&self, other: &Scalar) -> std::cmp::Ordering {
        match (self.clone() - other.clone()).sign() {
            Sign::Negative => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Positive => std::cmp::Ordering::Greater,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Scalar {
        let mut out = self.clone();
        for c in out.coords.iter_mut() {
            *c *= r;
        }
        out
    }
}

/// Certified bounds l ≤ √d ≤ u via Heron iteration from an integer upper
/// bound; the lower bound is d/u.
fn sqrt_bounds(d: u64, steps: usize) -> (BigRational, BigRational) {
    let d = BigRational::from_integer(BigInt::from(d));
    let mut upper = BigRational::from_integer(BigInt::from(initial_upper(&d)));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    for _ in 0..steps {
        upper = (&upper + &d / &upper) * &half;
    }
    let lower = &d / &upper;
    (lower, upper)
}

fn initial_upper(d: &BigRational) -> u64 {
    let mut u = 1u64;
    while BigRational::from_integer(BigInt::from(u * u)) < *d {
        u += 1;
    }
    u
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            *a += b;
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (a, b) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            *a -= b;
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(mut self) -> Scalar {
        for c in self.coords.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let table = mul_table();
        let mut out = Scalar::zero();
        for i in 0..8 {
            if self.coords[i].is_zero() {
                continue;
            }
            for j in 0..8 {
                if rhs.coords[j].is_zero() {
                    continue;
                }
                let (k, factor) = table[i][j];
                let term = &self.coords[i]
                    * &rhs.coords[j]
                    * BigRational::from_integer(BigInt::from(factor));
                out.coords[k] += term;
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "\u{221a}{}", BASIS_RADICANDS[k])?;
            } else {
                write!(f, "{}\u{221a}{}", abs, BASIS_RADICANDS[k])?;
            }
        }
        Ok(())
    }
}

/// Canonical bilinear form value −2cos(π/m) for an off-diagonal label.
pub fn form_value(label: Label) -> Result<Scalar, ScalarError> {
    match label {
        Label::Finite(2) => Ok(Scalar::zero()),
        Label::Finite(3) => Ok(Scalar::from_integer(-1)),
        Label::Finite(4) => Ok(-Scalar::sqrt(2)),
        // −2cos(π/5) = −(1+√5)/2
        Label::Finite(5) => Ok((Scalar::from_integer(-1) - Scalar::sqrt(5)).scale(
            &BigRational::new(BigInt::from(1), BigInt::from(2)),
        )),
        Label::Finite(6) => Ok(-Scalar::sqrt(3)),
        Label::Infinite => Ok(Scalar::from_integer(-2)),
        other => Err(ScalarError::UnsupportedLabel(other.to_string())),
    }
}

/// cos²(π/m) for m in {2,3,4,5,6}: the resolving table for the fast path
/// of the folded bond-order computation.
pub fn cos_squared(m: u32) -> Option<Scalar> {
    match m {
        2 => Some(Scalar::zero()),
        3 => Some(Scalar::from_ratio(1, 4)),
        4 => Some(Scalar::from_ratio(1, 2)),
        // cos²(π/5) = (3+√5)/8
        5 => Some(
            (Scalar::from_integer(3) + Scalar::sqrt(5))
                .scale(&BigRational::new(BigInt::from(1), BigInt::from(8))),
        ),
        6 => Some(Scalar::from_ratio(3, 4)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_detection_is_coordinatewise() {
        assert_eq!(Scalar::zero().sign(), Sign::Zero);
        let x = Scalar::sqrt(2) - Scalar::sqrt(2);
        assert_eq!(x.sign(), Sign::Zero);
    }

    #[test]
    fn sign_of_surd_combinations() {
        // √2 − 1 > 0
        assert_eq!((Scalar::sqrt(2) - Scalar::one()).sign(), Sign::Positive);
        // 3 − √6 > 0 (9 > 6)
        assert_eq!(
            (Scalar::from_integer(3) - Scalar::sqrt(2) * Scalar::sqrt(3)).sign(),
            Sign::Positive
        );
        // √2 + √3 − √10 < 0 (lhs² = 5+2√6 ≈ 9.9 < 10)
        let x = Scalar::sqrt(2) + Scalar::sqrt(3) - Scalar::sqrt(10);
        assert_eq!(x.sign(), Sign::Negative);
        // tight: √2·√3 = √6 exactly
        assert_eq!(Scalar::sqrt(2) * Scalar::sqrt(3), Scalar::sqrt(6));
    }

    #[test]
    fn surd_products_close() {
        for &a in &BASIS_RADICANDS {
            for &b in &BASIS_RADICANDS {
                let p = Scalar::sqrt(a) * Scalar::sqrt(b);
                // p² must equal a·b as rationals
                let sq = &p * &p;
                assert_eq!(sq, Scalar::from_integer((a * b) as i64));
            }
        }
    }

    #[test]
    fn form_values_match_table() {
        assert_eq!(form_value(Label::Finite(2)).unwrap(), Scalar::zero());
        assert_eq!(form_value(Label::Finite(3)).unwrap(), Scalar::from_integer(-1));
        assert_eq!(form_value(Label::Infinite).unwrap(), Scalar::from_integer(-2));
        // form_value(m)² = 4cos²(π/m)
        for m in [2u32, 3, 4, 5, 6] {
            let v = form_value(Label::Finite(m)).unwrap();
            let sq = &v * &v;
            let expect = cos_squared(m).unwrap().scale(&BigRational::from_integer(
                num::BigInt::from(4),
            ));
            assert_eq!(sq, expect, "m={}", m);
        }
        assert!(form_value(Label::Finite(7)).is_err());
    }

    #[test]
    fn display_is_exact_strings() {
        let x = Scalar::from_ratio(1, 2) + Scalar::sqrt(2).scale(&BigRational::new(
            BigInt::from(-3),
            BigInt::from(2),
        ));
        assert_eq!(x.to_string(), "1/2 - 3/2\u{221a}2");
        assert_eq!(Scalar::zero().to_string(), "0");
        assert_eq!((-Scalar::sqrt(3)).to_string(), "-\u{221a}3");
    }
}
