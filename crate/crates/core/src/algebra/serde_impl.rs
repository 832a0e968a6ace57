//! JSON forms: a rational is the string `"num/den"`, a polynomial the array of
//! its coefficients (index = power of `b`), a rational function the object
//! `{"num": [...], "den": [...]}`.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BPoly, BRatFn, BigRat};

pub fn format_rat(x: &BigRat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_rat(s: &str) -> Option<BigRat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRat::new(n, d))
}

impl Serialize for BPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs().iter().map(format_rat).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| parse_rat(s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BPoly::from_coeffs(coeffs))
    }
}

#[derive(Serialize, Deserialize)]
struct RatFnRepr {
    num: BPoly,
    den: BPoly,
}

impl Serialize for BRatFn {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatFnRepr {
            num: self.num().clone(),
            den: self.den().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BRatFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = RatFnRepr::deserialize(d)?;
        BRatFn::new(r.num, r.den).map_err(D::Error::custom)
    }
}
