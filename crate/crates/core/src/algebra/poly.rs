use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{rat, BigRat};

/// Univariate polynomial in `b` with rational coefficients.
///
/// `coeffs[i]` is the coefficient of `b^i`. The vector never carries trailing
/// zeros, so the zero polynomial is the empty vector and structural equality
/// is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BPoly {
    coeffs: Vec<BigRat>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRat::one())
    }

    /// The polynomial `b`.
    pub fn b() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// The polynomial `α = 1 + b`.
    pub fn alpha() -> Self {
        Self::from_ints(&[1, 1])
    }

    pub fn alpha_pow(e: usize) -> Self {
        Self::alpha().pow(e)
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `c · b^d`
    pub fn monomial(c: BigRat, d: usize) -> Self {
        let mut coeffs = vec![BigRat::zero(); d + 1];
        coeffs[d] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRat> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRat {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRat> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRat) -> BigRat {
        let mut acc = BigRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: i64) -> BigRat {
        self.eval(&rat(x))
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Returns `p(b + s)`.
    pub fn taylor_shift(&self, s: &BigRat) -> Self {
        let lin = BPoly::from_coeffs(vec![s.clone(), BigRat::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// Euclidean division. Returns `None` when `d` is zero.
    pub fn div_rem(&self, d: &BPoly) -> Option<(BPoly, BPoly)> {
        let dd = d.degree()?;
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigRat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] * &lead_inv;
            let shift = i - dd;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * dc;
            }
            quot[shift] = q;
        }
        rem.truncate(dd);
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &BPoly) -> Option<BPoly> {
        let (q, r) = self.div_rem(d)?;
        r.is_zero().then_some(q)
    }

    /// Divides by `α^e`, returning `None` if the division is not exact.
    pub fn div_alpha_pow(&self, e: usize) -> Option<BPoly> {
        let mut p = self.clone();
        for _ in 0..e {
            p = p.div_alpha()?;
        }
        Some(p)
    }

    /// Synthetic division by `b + 1`.
    fn div_alpha(&self) -> Option<BPoly> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![BigRat::zero(); n - 1];
        let mut carry = BigRat::zero();
        for i in (1..n).rev() {
            carry = &self.coeffs[i] - carry;
            q[i - 1] = carry.clone();
        }
        (self.coeffs[0] == carry).then(|| Self::from_coeffs(q))
    }

    /// Rescales to leading coefficient one; returns the removed leading
    /// coefficient alongside.
    pub fn monic(&self) -> (BigRat, BPoly) {
        match self.leading() {
            None => (BigRat::one(), Self::zero()),
            Some(l) => {
                let l = l.clone();
                let inv = l.recip();
                (l, self.scale(&inv))
            }
        }
    }

    /// Monic greatest common divisor (zero iff both inputs are zero).
    pub fn gcd(a: &BPoly, b: &BPoly) -> BPoly {
        let (_, mut x) = a.monic();
        let (_, mut y) = b.monic();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("non-zero divisor");
            x = y;
            y = r.monic().1;
        }
        x
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(super::is_integer)
    }

    /// All coefficients are non-negative integers.
    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| super::is_integer(c) && !c.is_negative())
    }

    /// Integer coefficients, if they all are integers.
    pub fn int_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| super::is_integer(c).then(|| c.numer().clone()))
            .collect()
    }

    fn zip_with(&self, other: &BPoly, f: impl Fn(&mut BigRat, &BigRat)) -> BPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), BigRat::zero());
        }
        for (a, b) in coeffs.iter_mut().zip(&other.coeffs) {
            f(a, b);
        }
        Self::from_coeffs(coeffs)
    }
}

impl Add<&BPoly> for &BPoly {
    type Output = BPoly;
    fn add(self, rhs: &BPoly) -> BPoly {
        self.zip_with(rhs, |a, b| *a += b)
    }
}

impl Sub<&BPoly> for &BPoly {
    type Output = BPoly;
    fn sub(self, rhs: &BPoly) -> BPoly {
        self.zip_with(rhs, |a, b| *a -= b)
    }
}

impl Mul<&BPoly> for &BPoly {
    type Output = BPoly;
    fn mul(self, rhs: &BPoly) -> BPoly {
        if self.is_zero() || rhs.is_zero() {
            return BPoly::zero();
        }
        let mut coeffs = vec![BigRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        BPoly::from_coeffs(coeffs)
    }
}

impl Neg for &BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        BPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for BPoly {
    type Output = BPoly;
    fn neg(self) -> BPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BPoly {
            type Output = BPoly;
            fn $m(self, rhs: BPoly) -> BPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BPoly> for BPoly {
            type Output = BPoly;
            fn $m(self, rhs: &BPoly) -> BPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<BPoly> for &BPoly {
            type Output = BPoly;
            fn $m(self, rhs: BPoly) -> BPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&BPoly> for BPoly {
    fn add_assign(&mut self, rhs: &BPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigRat::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}

impl SubAssign<&BPoly> for BPoly {
    fn sub_assign(&mut self, rhs: &BPoly) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "b")?,
                _ => write!(f, "b^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat_frac;
    use proptest::prelude::*;

    fn small_poly() -> impl Strategy<Value = BPoly> {
        proptest::collection::vec((-5i64..=5, 1i64..=3), 0..5).prop_map(|cs| {
            BPoly::from_coeffs(cs.into_iter().map(|(n, d)| rat_frac(n, d)).collect())
        })
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = BPoly::from_ints(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(BPoly::from_ints(&[0, 0]).degree(), None);
    }

    #[test]
    fn division_and_gcd() {
        // (b² − 1) = (b − 1)(b + 1)
        let p = BPoly::from_ints(&[-1, 0, 1]);
        let q = p.exact_div(&BPoly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, BPoly::alpha());
        assert!(p.exact_div(&BPoly::from_ints(&[2, 1])).is_none());
        let g = BPoly::gcd(&p, &BPoly::from_ints(&[2, 2]));
        assert_eq!(g, BPoly::alpha());
    }

    #[test]
    fn alpha_division() {
        let p = &BPoly::alpha_pow(3) * &BPoly::from_ints(&[2, 0, 5]);
        assert_eq!(p.div_alpha_pow(3).unwrap(), BPoly::from_ints(&[2, 0, 5]));
        assert!(BPoly::from_ints(&[1, 2]).div_alpha_pow(1).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(BPoly::from_ints(&[1, -2, 1]).to_string(), "b^2 - 2*b + 1");
        assert_eq!(BPoly::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn eval_is_multiplicative(p in small_poly(), q in small_poly(), x in -4i64..=4) {
            let x = rat(x);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
        }

        #[test]
        fn shift_round_trip(p in small_poly()) {
            let back = crate::algebra::alpha_unshift(&crate::algebra::alpha_shift(&p));
            prop_assert_eq!(back, p);
        }

        #[test]
        fn div_rem_reconstructs(p in small_poly(), d in small_poly()) {
            prop_assume!(!d.is_zero());
            let (q, r) = p.div_rem(&d).unwrap();
            prop_assert!(r.degree().map_or(true, |rd| rd < d.degree().unwrap()));
            prop_assert_eq!(&(&q * &d) + &r, p);
        }
    }
}
