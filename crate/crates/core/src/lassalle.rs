//! Power-sum coefficients `θ_μ(λ)` of Jack polynomials and their polynomial
//! dependence on the rectangle `λ = (q × r)`.
//!
//! All rectangular quantities go through the specialized series
//! `τ^{(1)}(−t, p, q̲, −rα̲)`, whose degree-`ℓ` part is
//! `(−1)^ℓ Σ_{θ⊢ℓ} J_θ(p) J_θ(q̲) J_θ(−rα̲) / j_θ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::algebra::{binomial, rat, rat_from_big, BigRat};
use crate::partitions::{has_no_unit_parts, rectangular, union_and_pad, z_aut, Partition};
use crate::symfunc::{jack, jack_table, principal_spec, PSExpr};
use crate::{BPoly, BRatFn, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaRecord {
    pub mu: Partition,
    pub lambda: Partition,
    pub value: BPoly,
}

/// `θ_μ(λ)`: zero when `|λ| < |μ|`, `[p_μ]J_λ` when sizes agree, and
/// `binom(|λ|−|μ|+m₁(μ), m₁(μ)) θ_{μ∪1^{|λ|−|μ|}}(λ)` otherwise.
pub fn theta(mu: &Partition, lambda: &Partition) -> ThetaRecord {
    let (m, n) = (mu.size(), lambda.size());
    let value = if n < m {
        BPoly::zero()
    } else {
        let padded = union_and_pad(mu, &Partition::empty(), n - m);
        let table = jack_table(n);
        let t = table.index_of(lambda).expect("λ ⊢ n");
        let c = table.index_of(&padded).expect("padded μ ⊢ n");
        let m1 = mu.multiplicity(1);
        table.coeffs[t][c].scale(&rat_from_big(binomial(n - m + m1, m1)))
    };
    ThetaRecord { mu: mu.clone(), lambda: lambda.clone(), value }
}

fn spec_weights(l: usize, q: i64, r: i64) -> Vec<BRatFn> {
    let table = jack_table(l);
    let uq = BRatFn::from_int(q);
    let ur = BRatFn::from_poly(BPoly::alpha().scale(&rat(-r)));
    let sign = if l % 2 == 0 { BigRat::one() } else { -BigRat::one() };
    table
        .parts
        .iter()
        .zip(&table.norms)
        .map(|(theta, norm)| {
            let w = &principal_spec(theta, &uq) * &principal_spec(theta, &ur);
            w.div(&BRatFn::from_poly(norm.scale(&sign))).expect("Jack norms are non-zero")
        })
        .collect()
}

/// `[p_ν t^ℓ] τ^{(1)}(−t, p, q̲, −rα̲)` with `ℓ = |ν|`.
pub fn spec_series_coeff(nu: &Partition, q: i64, r: i64) -> BRatFn {
    let l = nu.size();
    let table = jack_table(l);
    let c = table.index_of(nu).expect("ν ⊢ ℓ");
    spec_weights(l, q, r)
        .iter()
        .zip(&table.coeffs)
        .fold(BRatFn::zero(), |acc, (w, row)| &acc + &(w * &BRatFn::from_poly(row[c].clone())))
}

/// `[t^{qr}] τ^{(1)}(−t, p, q̲, −rα̲)`, checked against `J_{(q×r)}`.
pub fn jack_rect_via_tau(q: usize, r: usize) -> Result<PSExpr> {
    let n = q * r;
    let table = jack_table(n);
    let weights = spec_weights(n, q as i64, r as i64);
    let terms = table.parts.iter().enumerate().map(|(c, nu)| {
        let v = weights
            .iter()
            .zip(&table.coeffs)
            .fold(BRatFn::zero(), |acc, (w, row)| &acc + &(w * &BRatFn::from_poly(row[c].clone())));
        (nu.clone(), v)
    });
    let got = PSExpr::from_terms(n, terms)?;
    let lambda = rectangular(q, r);
    let want = jack(&lambda);
    if got != want {
        return Err(Error::IdentityViolated(format!(
            "specialized series at degree {n} differs from J_{lambda}"
        )));
    }
    Ok(got)
}

/// Compares `[p_{μ∪1^{n−m}} t^n]` and `[p_μ t^m]` of the specialized series,
/// `n = qr`.
pub fn padding_check(mu: &Partition, q: usize, r: usize) -> Result<bool> {
    let (m, n) = (mu.size(), q * r);
    if !has_no_unit_parts(mu) {
        return Err(Error::InvalidArgument(format!("{mu} has parts equal to 1")));
    }
    if m > n {
        return Err(Error::InvalidArgument(format!("|{mu}| exceeds {q}×{r}")));
    }
    let padded = union_and_pad(mu, &Partition::empty(), n - m);
    let (q, r) = (q as i64, r as i64);
    Ok(spec_series_coeff(&padded, q, r) == spec_series_coeff(mu, q, r))
}

/// A polynomial in `q` and `r` with coefficients in `ℚ[b]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QRPoly {
    /// `(deg_q, deg_r) ↦ coefficient`
    pub coeffs: BTreeMap<(usize, usize), BPoly>,
}

impl QRPoly {
    pub fn coeff(&self, dq: usize, dr: usize) -> BPoly {
        self.coeffs.get(&(dq, dr)).cloned().unwrap_or_else(BPoly::zero)
    }

    pub fn eval(&self, q: i64, r: i64) -> BPoly {
        self.coeffs.iter().fold(BPoly::zero(), |acc, (&(dq, dr), c)| {
            let w = num_traits::pow(rat(q), dq) * num_traits::pow(rat(r), dr);
            acc + c.scale(&w)
        })
    }

    /// The same polynomial written in `(q, s)` with `s = −r`, times `sign`.
    pub fn in_minus_r(&self, sign: i64) -> QRPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&(dq, dr), c)| {
                let s = if dr % 2 == 0 { sign } else { -sign };
                ((dq, dr), c.scale(&rat(s)))
            })
            .collect();
        QRPoly { coeffs }
    }

    pub fn is_nonneg_integral(&self) -> bool {
        self.coeffs.values().all(BPoly::is_nonneg_integral)
    }

    pub fn degree_q(&self) -> usize {
        self.coeffs.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_r(&self) -> usize {
        self.coeffs.keys().map(|k| k.1).max().unwrap_or(0)
    }
}

impl Serialize for QRPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            q: usize,
            r: usize,
            poly_b: &'a BPoly,
        }
        let terms: Vec<Term> = self
            .coeffs
            .iter()
            .map(|(&(q, r), poly_b)| Term { q, r, poly_b })
            .collect();
        terms.serialize(s)
    }
}

/// Coefficients of the Lagrange basis on the nodes `1..=d+1`.
fn lagrange_basis(d: usize) -> Vec<Vec<BigRat>> {
    let nodes: Vec<BigRat> = (1..=d as i64 + 1).map(rat).collect();
    (0..=d)
        .map(|i| {
            let mut poly = vec![BigRat::one()];
            let mut denom = BigRat::one();
            for (j, xj) in nodes.iter().enumerate() {
                if j == i {
                    continue;
                }
                let mut next = vec![BigRat::zero(); poly.len() + 1];
                for (e, c) in poly.iter().enumerate() {
                    next[e + 1] += c;
                    next[e] -= c * xj;
                }
                poly = next;
                denom *= &nodes[i] - xj;
            }
            poly.into_iter().map(|c| c / &denom).collect()
        })
        .collect()
}

/// `P(q, r) = z_μ θ_μ(q × r)` as a polynomial, recovered by interpolation on
/// `{1..m+1}²` and validated on the lines `q = m+2` and `r = m+2`.
pub fn theta_rect_poly(mu: &Partition) -> Result<QRPoly> {
    if !has_no_unit_parts(mu) {
        return Err(Error::InvalidArgument(format!("{mu} has parts equal to 1")));
    }
    let m = mu.size();
    let z = rat_from_big(z_aut(mu));
    let value = |q: i64, r: i64| -> Result<BPoly> {
        spec_series_coeff(mu, q, r).scale(&z).into_poly()
    };
    let grid: Vec<(usize, usize)> = (0..=m).flat_map(|i| (0..=m).map(move |j| (i, j))).collect();
    let values: Vec<BPoly> = grid
        .par_iter()
        .map(|&(i, j)| value(i as i64 + 1, j as i64 + 1))
        .collect::<Result<_>>()?;
    let basis = lagrange_basis(m);
    let mut coeffs = BTreeMap::new();
    for dq in 0..=m {
        for dr in 0..=m {
            let mut c = BPoly::zero();
            for (&(i, j), v) in grid.iter().zip(&values) {
                let w = &basis[i][dq] * &basis[j][dr];
                if !w.is_zero() {
                    c += &v.scale(&w);
                }
            }
            if !c.is_zero() {
                coeffs.insert((dq, dr), c);
            }
        }
    }
    let poly = QRPoly { coeffs };
    let edge = m as i64 + 2;
    let checks: Vec<(i64, i64)> = (1..=edge).flat_map(|t| [(edge, t), (t, edge)]).collect();
    let bad = checks
        .par_iter()
        .map(|&(q, r)| Ok((q, r, value(q, r)? != poly.eval(q, r))))
        .collect::<Result<Vec<_>>>()?;
    if let Some((q, r, _)) = bad.into_iter().find(|x| x.2) {
        return Err(Error::IdentityViolated(format!(
            "interpolant for {mu} misses the value at (q, r) = ({q}, {r})"
        )));
    }
    Ok(poly)
}

/// Outcome of the rectangular positivity check for one `μ`.
#[derive(Clone, Debug, Serialize)]
pub struct RectCheck {
    pub mu: Partition,
    /// `(−1)^m P` in the variables `(q, −r)`
    pub signed: QRPoly,
    pub nonneg_integral: bool,
    pub top_q_ok: bool,
}

/// `(−1)^m P ∈ ℕ[q, −r, b]` and `[q^m] (−1)^m P = (−r)^{ℓ(μ)}`.
pub fn rect_positivity(mu: &Partition) -> Result<RectCheck> {
    let m = mu.size();
    let p = theta_rect_poly(mu)?;
    let signed = p.in_minus_r(if m % 2 == 0 { 1 } else { -1 });
    let top: Vec<(usize, &BPoly)> = signed
        .coeffs
        .iter()
        .filter(|(k, _)| k.0 == m)
        .map(|(k, c)| (k.1, c))
        .collect();
    let top_q_ok = top.len() == 1 && top[0].0 == mu.len() && top[0].1.is_one();
    Ok(RectCheck { mu: mu.clone(), nonneg_integral: signed.is_nonneg_integral(), signed, top_q_ok })
}

/// Every `z_μ θ_μ(λ)` of degree `n` has integer coefficients in `b`.
pub fn theta_integrality(n: usize) -> Vec<(Partition, Partition)> {
    let table = jack_table(n);
    let mut bad = Vec::new();
    for (t, lambda) in table.parts.iter().enumerate() {
        for (c, mu) in table.parts.iter().enumerate() {
            let v = table.coeffs[t][c].scale(&rat_from_big(z_aut(mu)));
            if !v.is_integral() {
                bad.push((mu.clone(), lambda.clone()));
            }
        }
    }
    bad
}
