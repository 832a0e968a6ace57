use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::{BPoly, BigRat};
use crate::{Error, Result};

/// Reduced quotient of two polynomials in `b`.
///
/// Canonical form: `gcd(num, den) = 1` and `den` is monic, so two equal
/// rational functions are structurally equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BRatFn {
    num: BPoly,
    den: BPoly,
}

impl BRatFn {
    pub fn new(num: BPoly, den: BPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = BPoly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let (lead, den) = den.monic();
        let num = num.scale(&lead.recip());
        Ok(BRatFn { num, den })
    }

    pub fn zero() -> Self {
        BRatFn {
            num: BPoly::zero(),
            den: BPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(BPoly::one())
    }

    pub fn from_poly(p: BPoly) -> Self {
        BRatFn {
            num: p,
            den: BPoly::one(),
        }
    }

    pub fn constant(c: BigRat) -> Self {
        Self::from_poly(BPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(BPoly::from_int(c))
    }

    pub fn num(&self) -> &BPoly {
        &self.num
    }

    pub fn den(&self) -> &BPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value, or an error if the denominator survived
    /// reduction.
    pub fn as_poly(&self) -> Result<BPoly> {
        if self.is_poly() {
            Ok(self.num.clone())
        } else {
            Err(Error::NotPolynomial(self.to_string()))
        }
    }

    pub fn into_poly(self) -> Result<BPoly> {
        if self.is_poly() {
            Ok(self.num)
        } else {
            Err(Error::NotPolynomial(self.to_string()))
        }
    }

    pub fn scale(&self, c: &BigRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BRatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &BRatFn) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `b = x`, or `None` at a pole.
    pub fn eval(&self, x: &BigRat) -> Option<BigRat> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl Default for BRatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<BPoly> for BRatFn {
    fn from(p: BPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&BRatFn> for &BRatFn {
    type Output = BRatFn;
    fn add(self, rhs: &BRatFn) -> BRatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return BRatFn::new(&self.num + &rhs.num, self.den.clone()).expect("non-zero den");
        }
        let g = BPoly::gcd(&self.den, &rhs.den);
        let a = self.den.exact_div(&g).expect("gcd divides");
        let b = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        BRatFn::new(num, &a * &rhs.den).expect("non-zero den")
    }
}

impl Sub<&BRatFn> for &BRatFn {
    type Output = BRatFn;
    fn sub(self, rhs: &BRatFn) -> BRatFn {
        self + &(-rhs)
    }
}

impl Mul<&BRatFn> for &BRatFn {
    type Output = BRatFn;
    fn mul(self, rhs: &BRatFn) -> BRatFn {
        if self.is_zero() || rhs.is_zero() {
            return BRatFn::zero();
        }
        if self.is_poly() && rhs.is_poly() {
            return BRatFn::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying to keep degrees small.
        let g1 = BPoly::gcd(&self.num, &rhs.den);
        let g2 = BPoly::gcd(&rhs.num, &self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let (lead, den) = den.monic();
        BRatFn {
            num: num.scale(&lead.recip()),
            den,
        }
    }
}

impl Neg for &BRatFn {
    type Output = BRatFn;
    fn neg(self) -> BRatFn {
        BRatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for BRatFn {
    type Output = BRatFn;
    fn add(self, rhs: BRatFn) -> BRatFn {
        &self + &rhs
    }
}

impl Sub for BRatFn {
    type Output = BRatFn;
    fn sub(self, rhs: BRatFn) -> BRatFn {
        &self - &rhs
    }
}

impl Mul for BRatFn {
    type Output = BRatFn;
    fn mul(self, rhs: BRatFn) -> BRatFn {
        &self * &rhs
    }
}

impl fmt::Display for BRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for BRatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BRatFn({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_frac};
    use proptest::prelude::*;

    fn small_ratfn() -> impl Strategy<Value = BRatFn> {
        let poly = proptest::collection::vec(-3i64..=3, 0..3).prop_map(|c| BPoly::from_ints(&c));
        (poly.clone(), poly).prop_filter_map("zero den", |(n, d)| BRatFn::new(n, d).ok())
    }

    #[test]
    fn canonical_form_is_structural() {
        let a = BRatFn::new(BPoly::from_ints(&[0, 2]), BPoly::from_ints(&[2, 2])).unwrap();
        let b = BRatFn::new(BPoly::from_ints(&[0, 1]), BPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.den(), &BPoly::alpha());
    }

    #[test]
    fn eval_and_poles() {
        // b / (2(1 + b))
        let r = BRatFn::new(BPoly::b(), BPoly::from_ints(&[2, 2])).unwrap();
        assert_eq!(r.eval(&rat(1)), Some(rat_frac(1, 4)));
        assert_eq!(r.eval(&rat(-1)), None);
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_ratfn(), b in small_ratfn(), c in small_ratfn()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
