//! Small dense matrices over the exact scalar field.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    n: usize,
    /// Row-major entries.
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn zero(n: usize) -> Mat {
        Mat {
            n,
            entries: vec![Scalar::zero(); n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.n + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat::identity(self.n)
    }

    /// self · rhs.
    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Mat::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    *out.at_mut(i, j) += &(a * b);
                }
            }
        }
        out
    }

    /// self · x for a column vector x.
    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.n, x.len(), "dimension mismatch");
        (0..self.n)
            .map(|i| {
                let mut acc = Scalar::zero();
                for j in 0..self.n {
                    let a = self.at(i, j);
                    if !a.is_zero() && !x[j].is_zero() {
                        acc += &(a * &x[j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Smallest k ≥ 1 with self^k = 1, or None past the cap.
    pub fn multiplicative_order(&self, cap: u32) -> Option<u32> {
        let mut power = self.clone();
        for k in 1..=cap {
            if power.is_identity() {
                return Some(k);
            }
            power = power.mul(self);
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_order() {
        let id = Mat::identity(3);
        assert!(id.is_identity());
        assert_eq!(id.multiplicative_order(5), Some(1));
        // a 2x2 rotation of order 2: negate both coordinates
        let mut neg = Mat::zero(2);
        *neg.at_mut(0, 0) = Scalar::from_integer(-1);
        *neg.at_mut(1, 1) = Scalar::from_integer(-1);
        assert_eq!(neg.multiplicative_order(5), Some(2));
        assert_eq!(
            neg.apply(&[Scalar::one(), Scalar::from_integer(3)]),
            vec![Scalar::from_integer(-1), Scalar::from_integer(-3)]
        );
    }
}
