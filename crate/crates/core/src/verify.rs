//! Named verification suites. Each suite runs exhaustively over a parameter box
//! and reports every failing key with both sides of the comparison.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, rat_from_big};
use crate::constellations::{count_rooted_all, has_bipartite_orientation, is_orientable, profile, LabelledConstellation};
use crate::lassalle::{jack_rect_via_tau, padding_check, rect_positivity, theta, theta_rect_poly};
use crate::matchings::{count_f_all, count_f_via_characters, enumerate_f};
use crate::partitions::{all_partitions, has_no_unit_parts, hook_products, rectangular, z_aut, Partition};
use crate::series::{
    all_keys, bminus1_sides, coeff_tables, degree_bounds, duality_symmetry_sides, is_positive_integral, marginal_c,
    mult_sides, somh_sides, topdeg_sides, tuples_with_lengths, ProfileKey,
};
use crate::symfunc::{check_jack_axioms, eval_all_p, jack, jack_norm, principal_spec};
use crate::{BRatFn, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Positivity,
    B0,
    B1,
    Marginal,
    Gelfand,
    JackAxioms,
    Mult,
    Degrees,
    Somh,
    Bminus1,
    Topdeg,
    Duality,
    LassalleRect,
    Bijections,
}

impl Suite {
    pub const ALL: [Suite; 14] = [
        Suite::Positivity,
        Suite::B0,
        Suite::B1,
        Suite::Marginal,
        Suite::Gelfand,
        Suite::JackAxioms,
        Suite::Mult,
        Suite::Degrees,
        Suite::Somh,
        Suite::Bminus1,
        Suite::Topdeg,
        Suite::Duality,
        Suite::LassalleRect,
        Suite::Bijections,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Positivity => "positivity",
            Suite::B0 => "b0",
            Suite::B1 => "b1",
            Suite::Marginal => "marginal",
            Suite::Gelfand => "gelfand",
            Suite::JackAxioms => "jack-axioms",
            Suite::Mult => "mult",
            Suite::Degrees => "degrees",
            Suite::Somh => "somh",
            Suite::Bminus1 => "bminus1",
            Suite::Topdeg => "topdeg",
            Suite::Duality => "duality",
            Suite::LassalleRect => "lassalle-rect",
            Suite::Bijections => "bijections",
        }
    }
}

impl Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub key: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub k_max: usize,
    pub n_max: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub pass: bool,
}

/// One comparison.
struct Outcome {
    key: String,
    expected: String,
    actual: String,
    ok: bool,
}

fn outcome(key: impl Display, expected: impl Display, actual: impl Display, ok: bool) -> Outcome {
    Outcome {
        key: key.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        ok,
    }
}

fn compare<T: PartialEq + Display>(key: impl Display, expected: T, actual: T) -> Outcome {
    let ok = expected == actual;
    outcome(key, expected, actual, ok)
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn absorb(&mut self, outcomes: Vec<Outcome>) {
        for o in outcomes {
            self.checks += 1;
            if !o.ok {
                self.failures.push(Failure { key: o.key, expected: o.expected, actual: o.actual });
            }
        }
    }

    /// Runs `f` over `items` in parallel and keeps the outcomes in item order.
    fn run<T: Sync>(&mut self, items: &[T], f: impl Fn(&T) -> Result<Vec<Outcome>> + Sync + Send) -> Result<()> {
        let results: Vec<Vec<Outcome>> = items.par_iter().map(f).collect::<Result<_>>()?;
        for r in results {
            self.absorb(r);
        }
        Ok(())
    }
}

fn keyed(k: usize, n: usize, key: &ProfileKey) -> String {
    format!("k={k} n={n} {key}")
}

fn boxes(k_min: usize, k_max: usize, n_max: usize) -> impl Iterator<Item = (usize, usize)> {
    (k_min..=k_max).flat_map(move |k| (1..=n_max).map(move |n| (k, n)))
}

pub fn run_suite(suite: Suite, k_max: usize, n_max: usize) -> Result<SuiteReport> {
    let mut t = Tally::default();
    match suite {
        Suite::Positivity => {
            for (k, n) in boxes(1, k_max, n_max) {
                let tables = coeff_tables(k, n)?;
                let (c, h) = (tables.c_table(n)?, tables.h_table(n)?);
                t.run(&all_keys(k, n), |key| {
                    let key_s = keyed(k, n, key);
                    Ok([("c", c.get(key)), ("h", h.get(key))]
                        .into_iter()
                        .map(|(name, v)| {
                            let ok = is_positive_integral(&v);
                            outcome(format!("{key_s} {name}"), "coefficients in ℕ", v, ok)
                        })
                        .collect())
                })?;
            }
        }
        Suite::B0 | Suite::B1 => {
            let at = if suite == Suite::B0 { 0 } else { 1 };
            for (k, n) in boxes(1, k_max, n_max) {
                let tables = coeff_tables(k, n)?;
                let (c, h) = (tables.c_table(n)?, tables.h_table(n)?);
                let f = count_f_all(k, n);
                let rooted = count_rooted_all(k, n)?;
                t.run(&all_keys(k, n), |key| {
                    let key_s = keyed(k, n, key);
                    let (all, bip) = f.get(key).copied().unwrap_or_default();
                    let matchings = if at == 0 { bip } else { all };
                    let zero = (BigInt::from(0), BigInt::from(0));
                    let (r_all, r_or) = rooted.get(key).unwrap_or(&zero);
                    let maps = if at == 0 { r_or } else { r_all };
                    Ok(vec![
                        compare(format!("{key_s} c({at})"), rat(matchings as i64), c.get(key).eval_int(at)),
                        compare(format!("{key_s} h({at})"), rat_from_big(maps.clone()), h.get(key).eval_int(at)),
                    ])
                })?;
            }
        }
        Suite::Marginal => {
            for (k, n) in boxes(1, k_max, n_max) {
                coeff_tables(k, n)?;
                let f = count_f_all(k, n);
                let length_tuples: Vec<Vec<usize>> = (0..k).fold(vec![Vec::new()], |acc, _| {
                    acc.into_iter()
                        .flat_map(|p| {
                            (1..=n).map(move |l| {
                                let mut p = p.clone();
                                p.push(l);
                                p
                            })
                        })
                        .collect()
                });
                let parts = all_partitions(n);
                let mut cases = Vec::new();
                for lambda in &parts {
                    for mu in &parts {
                        for ls in &length_tuples {
                            cases.push((lambda.clone(), mu.clone(), ls.clone()));
                        }
                    }
                }
                t.run(&cases, |(lambda, mu, ls)| {
                    let v = marginal_c(lambda, mu, ls)?.value;
                    let (mut all, mut bip) = (0u64, 0u64);
                    for rest in tuples_with_lengths(n, ls) {
                        let mut mus = vec![mu.clone()];
                        mus.extend(rest);
                        let (a, b) = f.get(&ProfileKey { lambda: lambda.clone(), mus }).copied().unwrap_or_default();
                        all += a;
                        bip += b;
                    }
                    let key_s = format!("k={k} n={n} λ={lambda} μ={mu} l={ls:?}");
                    let ok = is_positive_integral(&v);
                    Ok(vec![
                        outcome(format!("{key_s} positivity"), "coefficients in ℕ", &v, ok),
                        compare(format!("{key_s} at 1"), rat(all as i64), v.eval_int(1)),
                        compare(format!("{key_s} at 0"), rat(bip as i64), v.eval_int(0)),
                    ])
                })?;
            }
        }
        Suite::Gelfand => {
            for (k, n) in boxes(1, k_max, n_max) {
                let f = count_f_all(k, n);
                t.run(&all_keys(k, n), |key| {
                    let brute = BigInt::from(f.get(key).map_or(0, |c| c.0));
                    let chars = count_f_via_characters(&key.lambda, &key.mus)?;
                    Ok(vec![compare(keyed(k, n, key), brute, chars)])
                })?;
            }
        }
        Suite::JackAxioms => {
            for n in 1..=n_max {
                let axioms = check_jack_axioms(n);
                t.absorb(vec![outcome(
                    format!("n={n} orthogonality, triangularity, normalization, norm"),
                    "ok",
                    axioms.as_ref().map_or_else(|e| e.to_string(), |_| "ok".into()),
                    axioms.is_ok(),
                )]);
                t.run(&all_partitions(n), |lambda| {
                    let j = jack(lambda);
                    let mut out = Vec::new();
                    for u in 0..=n as i64 {
                        let u = BRatFn::from_int(u);
                        out.push(compare(
                            format!("n={n} J_{lambda} at p_i = {u}"),
                            principal_spec(lambda, &u),
                            eval_all_p(&j, &u),
                        ));
                    }
                    let hp = hook_products(lambda);
                    let norm = jack_norm(lambda);
                    out.push(compare(format!("n={n} j_{lambda}(0)"), rat_from_big(&hp.h * &hp.h), norm.eval_int(0)));
                    out.push(compare(format!("n={n} j_{lambda}(1)"), rat_from_big(hp.h2.clone()), norm.eval_int(1)));
                    Ok(out)
                })?;
            }
        }
        Suite::Mult => {
            for (k, n) in boxes(2, k_max, n_max) {
                coeff_tables(k, n)?;
                coeff_tables(k - 1, n)?;
                coeff_tables(1, n)?;
                t.run(&all_keys(k, n), |key| {
                    let (lhs, rhs) = mult_sides(key)?;
                    Ok(vec![compare(keyed(k, n, key), rhs, lhs)])
                })?;
            }
        }
        Suite::Degrees => {
            for (k, n) in boxes(1, k_max, n_max) {
                let tables = coeff_tables(k, n)?;
                let c = tables.c_table(n)?;
                t.run(&all_keys(k, n), |key| {
                    let v = c.get(key);
                    let (dm, ds) = degree_bounds(key);
                    let bound = ds.into_iter().fold(dm, i64::min);
                    let deg = v.degree().map_or(-1, |d| d as i64);
                    let ok = v.is_zero() || deg <= bound;
                    let expected = if bound < 0 { "c = 0".to_string() } else { format!("deg ≤ {bound}") };
                    Ok(vec![outcome(keyed(k, n, key), expected, format!("deg {deg}: {v}"), ok)])
                })?;
            }
        }
        Suite::Somh => {
            for (k, n) in boxes(1, k_max, n_max) {
                coeff_tables(k, n)?;
                t.run(&all_keys(k - 1, n), |prefix| {
                    let (sum, rhs) = somh_sides(&prefix.lambda, &prefix.mus)?;
                    Ok(vec![compare(format!("k={k} n={n} {prefix} + τ"), rhs, sum)])
                })?;
            }
        }
        Suite::Bminus1 => {
            for (k, n) in boxes(1, k_max, n_max) {
                coeff_tables(k, n)?;
                t.run(&all_keys(k, n), |key| {
                    let (lhs, rhs) = bminus1_sides(key)?;
                    Ok(vec![compare(keyed(k, n, key), rhs, lhs)])
                })?;
            }
        }
        Suite::Topdeg => {
            for (k, n) in boxes(1, k_max, n_max) {
                coeff_tables(k, n)?;
                t.run(&all_keys(k, n), |key| {
                    let (lhs, rhs) = topdeg_sides(key)?;
                    Ok(vec![compare(keyed(k, n, key), rhs, lhs)])
                })?;
            }
        }
        Suite::Duality => {
            for (k, n) in boxes(1, k_max, n_max) {
                coeff_tables(k, n)?;
                t.run(&all_keys(k, n), |key| {
                    Ok(duality_symmetry_sides(key)?
                        .into_iter()
                        .map(|(other, a, b)| compare(format!("k={k} n={n} {key} ~ {other}"), a, b))
                        .collect())
                })?;
            }
        }
        Suite::LassalleRect => lassalle_rect(&mut t, k_max, n_max)?,
        Suite::Bijections => {
            for (k, n) in boxes(1, k_max, n_max) {
                t.run(&all_keys(k, n), |key| {
                    let elements = enumerate_f(&key.lambda, &key.mus, false)?;
                    let mut out = Vec::new();
                    let mut located: BTreeMap<ProfileKey, HashSet<Vec<crate::matchings::Matching>>> = BTreeMap::new();
                    for el in elements {
                        let c = LabelledConstellation::canonical(&key.lambda, &el.deltas)?;
                        let prof: ProfileKey = profile(&c).into();
                        let set = match located.get(&prof) {
                            Some(s) => s,
                            None => {
                                let found = enumerate_f(&prof.lambda, &prof.mus, false)?;
                                located.entry(prof.clone()).or_insert(found.into_iter().map(|x| x.deltas).collect())
                            }
                        };
                        let key_s = format!("{} {:?}", keyed(k, n, key), el.deltas);
                        out.push(outcome(
                            format!("{key_s} round trip"),
                            key,
                            &prof,
                            &prof == key && set.contains(&el.deltas),
                        ));
                        let orientable = is_orientable(&c);
                        out.push(compare(
                            format!("{key_s} orientable iff some face orientation is bipartite"),
                            has_bipartite_orientation(&key.lambda, &c),
                            orientable,
                        ));
                        if el.all_bipartite() {
                            out.push(compare(format!("{key_s} bipartite tuple is orientable"), true, orientable));
                        }
                    }
                    Ok(out)
                })?;
            }
        }
    }
    let pass = t.failures.is_empty();
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        k_max,
        n_max,
        checks: t.checks,
        failures: t.failures,
        pass,
    })
}

/// `|μ| ≤ mu_max` bounds the interpolated polynomials and padded extractions,
/// `qr ≤ rect_max` the rectangles.
fn lassalle_rect(t: &mut Tally, mu_max: usize, rect_max: usize) -> Result<()> {
    let mus: Vec<Partition> = (2..=mu_max)
        .flat_map(all_partitions)
        .filter(has_no_unit_parts)
        .collect();
    let rects: Vec<(usize, usize)> = (1..=rect_max)
        .flat_map(|q| (1..=rect_max / q).map(move |r| (q, r)))
        .collect();
    t.run(&rects, |&(q, r)| {
        let res = jack_rect_via_tau(q, r);
        let actual = res.as_ref().map_or_else(|e| e.to_string(), |_| "equal".into());
        Ok(vec![outcome(format!("J_{} via series", rectangular(q, r)), "equal", actual, res.is_ok())])
    })?;
    t.run(&mus, |mu| {
        let check = rect_positivity(mu)?;
        let signed = serde_json::to_string(&check.signed)?;
        let mut out = vec![
            outcome(format!("{mu} (−1)^m z θ in ℕ[q,−r,b]"), "non-negative integers", &signed, check.nonneg_integral),
            outcome(format!("{mu} [q^m] = (−r)^ℓ"), "(−r)^ℓ", &signed, check.top_q_ok),
        ];
        let poly = theta_rect_poly(mu)?;
        let z = rat_from_big(z_aut(mu));
        for &(q, r) in &rects {
            let direct = theta(mu, &rectangular(q, r)).value.scale(&z);
            out.push(compare(format!("{mu} interpolant at {q}×{r}"), direct, poly.eval(q as i64, r as i64)));
            if mu.size() <= q * r {
                let ok = padding_check(mu, q, r)?;
                out.push(outcome(format!("{mu} padding at {q}×{r}"), "equal", if ok { "equal" } else { "different" }, ok));
            }
        }
        Ok(out)
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("nope".parse::<Suite>(), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let (k, n) = match s {
                Suite::LassalleRect => (3, 4),
                Suite::Mult => (2, 3),
                _ => (1, 3),
            };
            let r = run_suite(s, k, n).unwrap();
            assert!(r.pass, "{s}: {:?}", &r.failures[..r.failures.len().min(3)]);
            assert!(r.checks > 0, "{s}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = serde_json::to_string(&run_suite(Suite::Duality, 2, 3).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Duality, 2, 3).unwrap()).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(r#"{"suite":"duality","k_max":2,"n_max":3,"checks":"#));
    }
}
