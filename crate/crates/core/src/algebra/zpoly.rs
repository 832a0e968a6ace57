use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{BPoly, BigRat};

/// Polynomial in `b` with integer coefficients, for hot loops where rational
/// normalization would dominate.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `scale · p`, which must have integer coefficients.
    pub fn from_scaled(p: &BPoly, scale: &BigInt) -> Option<ZPoly> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                let v = c * BigRat::from_integer(scale.clone());
                v.is_integer().then(|| v.to_integer())
            })
            .collect::<Option<Vec<_>>>()?;
        Some(ZPoly(coeffs))
    }

    /// Smallest positive integer making `p` integral.
    pub fn denominator_of(p: &BPoly) -> BigInt {
        p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn to_bpoly(&self) -> BPoly {
        BPoly::from_coeffs(self.0.iter().map(|c| BigRat::from_integer(c.clone())).collect())
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::default();
        }
        let mut out = vec![BigInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly(out).trimmed()
    }

    pub fn add_assign(&mut self, other: &ZPoly) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigInt::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += b;
        }
        let t = std::mem::take(self).trimmed();
        *self = t;
    }

    fn trimmed(mut self) -> ZPoly {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }
}
