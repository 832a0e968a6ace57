//! Homogeneous symmetric functions in the power-sum and monomial bases, the
//! α-deformed Hall scalar product, and Jack polynomials `J_λ^(α)`.
//!
//! Jack polynomials are built from their defining properties only: for each
//! `λ ⊢ n`, taken in increasing dominance, `m_λ` is projected orthogonally off
//! every `J_ν` with `ν` strictly dominated by `λ` and the result is rescaled so
//! that `[m_{1^n}]J_λ = n!`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::marker::PhantomData;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{factorial, rat_from_big, BPoly, BRatFn, BigRat};
use crate::partitions::{
    all_partitions, alpha_content, dominance_leq, hook_products, z_aut, Partition,
};
use crate::{Error, Result};

/// Marker for the power-sum basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSum;

/// Marker for the monomial basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Monomial;

/// A homogeneous symmetric function of degree `n` in a fixed basis.
/// Zero coefficients are never stored.
#[derive(PartialEq, Eq)]
pub struct Expansion<B> {
    degree: usize,
    terms: BTreeMap<Partition, BRatFn>,
    basis: PhantomData<B>,
}

pub type PSExpr = Expansion<PowerSum>;
pub type MonExpr = Expansion<Monomial>;

impl<B> Expansion<B> {
    pub fn zero(degree: usize) -> Self {
        Expansion {
            degree,
            terms: BTreeMap::new(),
            basis: PhantomData,
        }
    }

    /// The single basis element indexed by `lambda`.
    pub fn basis_element(lambda: &Partition) -> Self {
        let mut e = Self::zero(lambda.size());
        e.terms.insert(lambda.clone(), BRatFn::one());
        e
    }

    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Partition, BRatFn)>,
    ) -> Result<Self> {
        let mut e = Self::zero(degree);
        for (lambda, c) in terms {
            e.add_term(lambda, &c)?;
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BRatFn> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the basis element `lambda`, zero when absent.
    pub fn coeff(&self, lambda: &Partition) -> BRatFn {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, lambda: Partition, c: &BRatFn) -> Result<()> {
        if lambda.size() != self.degree {
            return Err(Error::SizeMismatch {
                expected: self.degree,
                actual: lambda.size(),
            });
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(lambda).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::SizeMismatch {
                expected: self.degree,
                actual: other.degree,
            });
        }
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BRatFn) -> Self {
        let mut out = Self::zero(self.degree);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(l, v)| (l.clone(), v * c)).collect();
        out
    }

    /// True when every coefficient is a polynomial in `b`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(BRatFn::is_poly)
    }
}

impl<B> Clone for Expansion<B> {
    fn clone(&self) -> Self {
        Expansion {
            degree: self.degree,
            terms: self.terms.clone(),
            basis: PhantomData,
        }
    }
}

impl<B> fmt::Debug for Expansion<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

/// `[p_μ] f`
pub fn extract_p_coeff(f: &PSExpr, mu: &Partition) -> Result<BRatFn> {
    if mu.size() != f.degree() {
        return Err(Error::SizeMismatch {
            expected: f.degree(),
            actual: mu.size(),
        });
    }
    Ok(f.coeff(mu))
}

/// Number of ways to distribute the parts of `rho` over the rows of `mu` so
/// that row `j` receives total exactly `mu_j`; this is `[m_μ] p_ρ`.
fn p_to_m_entry(rho: &Partition, mu: &Partition) -> u64 {
    fn rec(parts: &[usize], room: &mut [usize]) -> u64 {
        let Some((&p, rest)) = parts.split_first() else {
            return room.iter().all(|&r| r == 0) as u64;
        };
        let mut total = 0;
        for j in 0..room.len() {
            if room[j] >= p {
                room[j] -= p;
                total += rec(rest, room);
                room[j] += p;
            }
        }
        total
    }
    let mut room = mu.parts().to_vec();
    rec(rho.parts(), &mut room)
}

/// Transition matrices between the power-sum and monomial bases of degree `n`.
struct BasisChange {
    parts: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `p_to_m[ρ][μ] = [m_μ] p_ρ`
    p_to_m: Vec<Vec<BigRat>>,
    /// `m_to_p[μ][ρ] = [p_ρ] m_μ`
    m_to_p: Vec<Vec<BigRat>>,
}

fn invert(mut a: Vec<Vec<BigRat>>) -> Vec<Vec<BigRat>> {
    let n = a.len();
    let mut inv: Vec<Vec<BigRat>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRat::one() } else { BigRat::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("basis change matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pv = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &pv;
            inv[col][j] *= &pv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let (x, y) = (&a[col][j] * &f, &inv[col][j] * &f);
                    a[r][j] -= x;
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}

fn basis_change(n: usize) -> Arc<BasisChange> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<BasisChange>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(bc) = cache.lock().unwrap().get(&n) {
        return bc.clone();
    }
    let parts = all_partitions(n);
    let index = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let p_to_m: Vec<Vec<BigRat>> = parts
        .iter()
        .map(|rho| {
            parts
                .iter()
                .map(|mu| BigRat::from_integer(p_to_m_entry(rho, mu).into()))
                .collect()
        })
        .collect();
    let m_to_p = invert(p_to_m.clone());
    let bc = Arc::new(BasisChange {
        parts,
        index,
        p_to_m,
        m_to_p,
    });
    cache.lock().unwrap().entry(n).or_insert(bc).clone()
}

fn change_basis<A, B>(f: &Expansion<A>, matrix: impl Fn(&BasisChange) -> &Vec<Vec<BigRat>>) -> Expansion<B> {
    let bc = basis_change(f.degree());
    let m = matrix(&bc);
    let mut acc = vec![BRatFn::zero(); bc.parts.len()];
    for (lambda, c) in f.terms() {
        let row = &m[bc.index[lambda]];
        for (slot, x) in acc.iter_mut().zip(row) {
            if !x.is_zero() {
                *slot = &*slot + &c.scale(x);
            }
        }
    }
    let mut out = Expansion::zero(f.degree());
    out.terms = bc
        .parts
        .iter()
        .cloned()
        .zip(acc)
        .filter(|(_, c)| !c.is_zero())
        .collect();
    out
}

pub fn m_to_p(f: &MonExpr) -> PSExpr {
    change_basis(f, |bc| &bc.m_to_p)
}

pub fn p_to_m(f: &PSExpr) -> MonExpr {
    change_basis(f, |bc| &bc.p_to_m)
}

/// `⟨p_λ, p_μ⟩ = z_λ α^{ℓ(λ)} δ_{λμ}`
pub fn p_norm(lambda: &Partition) -> BPoly {
    BPoly::alpha_pow(lambda.len()).scale(&rat_from_big(z_aut(lambda)))
}

pub fn hall_scalar(f: &PSExpr, g: &PSExpr) -> Result<BRatFn> {
    if f.degree() != g.degree() {
        return Err(Error::SizeMismatch {
            expected: f.degree(),
            actual: g.degree(),
        });
    }
    let mut acc = BRatFn::zero();
    for (lambda, a) in f.terms() {
        if let Some(b) = g.terms().get(lambda) {
            acc = &acc + &(&(a * b) * &BRatFn::from_poly(p_norm(lambda)));
        }
    }
    Ok(acc)
}

/// `j_λ = hook^(α)_λ · hook'^(α)_λ`, the squared norm of `J_λ`.
pub fn jack_norm(lambda: &Partition) -> BPoly {
    let hp = hook_products(lambda);
    &hp.hook * &hp.hook_prime
}

/// `∏_{□∈λ} (u + c_α(□))`, the value of `J_λ` at `p_i = u` for all `i`.
pub fn principal_spec(lambda: &Partition, u: &BRatFn) -> BRatFn {
    lambda.boxes().fold(BRatFn::one(), |acc, bx| {
        &acc * &(u + &BRatFn::from_poly(alpha_content(bx)))
    })
}

/// Substitutes `p_i ↦ u` for every `i`.
pub fn eval_all_p(f: &PSExpr, u: &BRatFn) -> BRatFn {
    f.terms()
        .iter()
        .fold(BRatFn::zero(), |acc, (lambda, c)| &acc + &(c * &u.pow(lambda.len())))
}

/// All Jack polynomials of one degree, in canonical partition order, with
/// polynomial coefficients in `b`.
#[derive(Debug)]
pub struct JackTable {
    pub degree: usize,
    pub parts: Vec<Partition>,
    /// `coeffs[θ][λ] = [p_λ] J_θ`
    pub coeffs: Vec<Vec<BPoly>>,
    pub norms: Vec<BPoly>,
}

impl JackTable {
    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.parts.iter().position(|p| p == lambda)
    }

    pub fn jack(&self, theta: &Partition) -> Option<PSExpr> {
        let t = self.index_of(theta)?;
        let terms = self
            .parts
            .iter()
            .zip(&self.coeffs[t])
            .filter(|(_, c)| !c.is_zero())
            .map(|(l, c)| (l.clone(), BRatFn::from_poly(c.clone())));
        Some(PSExpr::from_terms(self.degree, terms).expect("degrees agree"))
    }
}

/// Header written at the top of every cache file. Bumping the version or the
/// content tag invalidates existing files.
const CACHE_HEADER: &str = "jacklab-jack-cache v1 content=alpha*(col-1)-(row-1)";

/// Process-wide store of Jack polynomials, keyed by degree. Each degree is
/// written once and shared read-only afterwards.
pub struct JackCache {
    tables: RwLock<HashMap<usize, Arc<JackTable>>>,
    build_lock: Mutex<()>,
    dir: RwLock<Option<PathBuf>>,
}

impl JackCache {
    fn new() -> Self {
        JackCache {
            tables: RwLock::new(HashMap::new()),
            build_lock: Mutex::new(()),
            dir: RwLock::new(None),
        }
    }

    pub fn global() -> &'static JackCache {
        static GLOBAL: OnceLock<JackCache> = OnceLock::new();
        GLOBAL.get_or_init(JackCache::new)
    }

    /// Enables the on-disk cache. Files are named `jack_n{N}.jsonl`.
    pub fn set_dir(&self, dir: Option<PathBuf>) {
        *self.dir.write().unwrap() = dir;
    }

    pub fn dir(&self) -> Option<PathBuf> {
        self.dir.read().unwrap().clone()
    }

    pub fn table(&self, n: usize) -> Arc<JackTable> {
        if let Some(t) = self.tables.read().unwrap().get(&n) {
            return t.clone();
        }
        let _guard = self.build_lock.lock().unwrap();
        if let Some(t) = self.tables.read().unwrap().get(&n) {
            return t.clone();
        }
        let dir = self.dir();
        let table = dir
            .as_deref()
            .and_then(|d| match load_table(d, n) {
                Ok(t) => t,
                Err(e) => {
                    log::warn!("Jack cache for degree {n} is unreadable, regenerating: {e}");
                    None
                }
            })
            .unwrap_or_else(|| {
                let t = build_table(n);
                if let Some(d) = &dir {
                    // A failed write only costs a recomputation next time.
                    let _ = store_table(d, &t);
                }
                t
            });
        let table = Arc::new(table);
        self.tables.write().unwrap().insert(n, table.clone());
        table
    }
}

pub fn jack_table(n: usize) -> Arc<JackTable> {
    JackCache::global().table(n)
}

/// `J_λ^(α)` in the power-sum basis.
pub fn jack(lambda: &Partition) -> PSExpr {
    jack_table(lambda.size())
        .jack(lambda)
        .expect("every partition of n is in the degree-n table")
}

fn build_table(n: usize) -> JackTable {
    let bc = basis_change(n);
    let parts = bc.parts.clone();
    let count = parts.len();
    let norms: Vec<BPoly> = parts.iter().map(p_norm).collect();
    // Reverse canonical order visits dominance-smaller partitions first.
    let mut built: Vec<Option<(Vec<BRatFn>, BRatFn)>> = vec![None; count];
    let col = |p: &[BigRat]| -> Vec<BRatFn> { p.iter().map(|x| BRatFn::constant(x.clone())).collect() };
    let scalar = |f: &[BRatFn], g: &[BRatFn]| -> BRatFn {
        f.iter()
            .zip(g)
            .zip(&norms)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .fold(BRatFn::zero(), |acc, ((a, b), w)| &acc + &(&(a * b) * &BRatFn::from_poly(w.clone())))
    };
    for l in (0..count).rev() {
        let lambda = &parts[l];
        let m_lambda = col(&bc.m_to_p[l]);
        let lower: Vec<usize> = (l + 1..count)
            .filter(|&v| dominance_leq(&parts[v], lambda))
            .collect();
        let projections: Vec<(usize, BRatFn)> = lower
            .par_iter()
            .map(|&v| {
                let (jv, nv) = built[v].as_ref().expect("dominated partitions are built first");
                (v, scalar(&m_lambda, jv).div(nv).expect("Jack norms are non-zero"))
            })
            .collect();
        let mut p = m_lambda;
        for (v, coef) in projections {
            let (jv, _) = built[v].as_ref().unwrap();
            for (slot, x) in p.iter_mut().zip(jv) {
                if !x.is_zero() {
                    *slot = &*slot - &(x * &coef);
                }
            }
        }
        let lead = p[count - 1].clone();
        let inv = lead.recip().expect("[p_{1^n}] of a projected monomial is non-zero");
        let j: Vec<BRatFn> = p.iter().map(|c| c * &inv).collect();
        let nj = scalar(&j, &j);
        built[l] = Some((j, nj));
    }
    let coeffs: Vec<Vec<BPoly>> = built
        .into_iter()
        .zip(&parts)
        .map(|(entry, lambda)| {
            entry
                .unwrap()
                .0
                .into_iter()
                .map(|c| {
                    c.into_poly()
                        .unwrap_or_else(|e| panic!("J_{lambda} has a non-polynomial coefficient: {e}"))
                })
                .collect()
        })
        .collect();
    let table = JackTable {
        degree: n,
        norms: parts.iter().map(jack_norm).collect(),
        parts,
        coeffs,
    };
    if cfg!(debug_assertions) {
        if let Err(e) = check_table(&table) {
            panic!("Jack table of degree {n} fails its defining properties: {e}");
        }
    }
    table
}

/// Checks orthogonality, triangularity, normalization and the hook-product
/// norm for every Jack polynomial of degree `n`.
pub fn check_jack_axioms(n: usize) -> Result<()> {
    check_table(&jack_table(n))
}

fn check_table(t: &JackTable) -> Result<()> {
    let n = t.degree;
    let jacks: Vec<PSExpr> = t.parts.iter().map(|l| t.jack(l).unwrap()).collect();
    let column = Partition::column(n);
    let n_fact = BRatFn::constant(rat_from_big(factorial(n)));
    for (i, (lambda, j)) in t.parts.iter().zip(&jacks).enumerate() {
        let m = p_to_m(j);
        for mu in m.terms().keys() {
            if !dominance_leq(mu, lambda) {
                return Err(Error::IdentityViolated(format!(
                    "[m_{mu}] J_{lambda} is non-zero outside the dominance order"
                )));
            }
        }
        if m.coeff(&column) != n_fact {
            return Err(Error::IdentityViolated(format!("[m_{{1^n}}] J_{lambda} != n!")));
        }
        if hall_scalar(j, j)? != BRatFn::from_poly(t.norms[i].clone()) {
            return Err(Error::IdentityViolated(format!("<J_{lambda}, J_{lambda}> != j_{lambda}")));
        }
        for (mu, k) in t.parts.iter().zip(&jacks).skip(i + 1) {
            if !hall_scalar(j, k)?.is_zero() {
                return Err(Error::IdentityViolated(format!(
                    "<J_{lambda}, J_{mu}> is non-zero"
                )));
            }
        }
    }
    Ok(())
}

fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("jack_n{n}.jsonl"))
}

/// Reads a cached table. `Ok(None)` means absent or stale.
fn load_table(dir: &Path, n: usize) -> Result<Option<JackTable>> {
    let path = cache_path(dir, n);
    let Ok(file) = fs::File::open(&path) else {
        return Ok(None);
    };
    let mut lines = BufReader::new(file).lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header != format!("{CACHE_HEADER} n={n}") {
        return Ok(None);
    }
    let parts = all_partitions(n);
    let mut coeffs = Vec::with_capacity(parts.len());
    for (expected, line) in parts.iter().zip(lines) {
        let (theta, row): (Partition, Vec<(Partition, BPoly)>) = serde_json::from_str(&line?)?;
        if &theta != expected {
            return Err(Error::Cache(format!("{}: records out of order", path.display())));
        }
        let map: HashMap<Partition, BPoly> = row.into_iter().collect();
        coeffs.push(parts.iter().map(|l| map.get(l).cloned().unwrap_or_default()).collect());
    }
    if coeffs.len() != parts.len() {
        return Ok(None);
    }
    let table = JackTable {
        degree: n,
        norms: parts.iter().map(jack_norm).collect(),
        parts,
        coeffs,
    };
    if cfg!(debug_assertions) {
        check_table(&table)?;
    }
    Ok(Some(table))
}

fn store_table(dir: &Path, t: &JackTable) -> Result<()> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, t.degree);
    let tmp = path.with_extension("tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "{CACHE_HEADER} n={}", t.degree)?;
        for (theta, row) in t.parts.iter().zip(&t.coeffs) {
            let terms: Vec<(&Partition, &BPoly)> =
                t.parts.iter().zip(row).filter(|(_, c)| !c.is_zero()).collect();
            serde_json::to_writer(&mut w, &(theta, terms))?;
            writeln!(w)?;
        }
        w.flush()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{alpha_shift, rat, rat_frac};

    fn poly(c: &[i64]) -> BRatFn {
        BRatFn::from_poly(BPoly::from_ints(c))
    }

    fn ps(terms: &[(&[usize], BRatFn)]) -> PSExpr {
        let n = terms[0].0.iter().sum();
        PSExpr::from_terms(n, terms.iter().map(|(l, c)| (Partition::from(*l), c.clone()))).unwrap()
    }

    #[test]
    fn basis_change_examples() {
        let m = p_to_m(&PSExpr::basis_element(&[1, 1].into()));
        assert_eq!(m.coeff(&[2].into()), BRatFn::one());
        assert_eq!(m.coeff(&[1, 1].into()), BRatFn::from_int(2));
        let m = p_to_m(&PSExpr::basis_element(&[2].into()));
        assert_eq!(m, MonExpr::basis_element(&[2].into()));
        // m_{1,1} = (p_1² − p_2)/2
        let p = m_to_p(&MonExpr::basis_element(&[1, 1].into()));
        assert_eq!(p.coeff(&[1, 1].into()), BRatFn::constant(rat_frac(1, 2)));
        assert_eq!(p.coeff(&[2].into()), BRatFn::constant(rat_frac(-1, 2)));
    }

    #[test]
    fn basis_change_round_trip() {
        for n in 1..=6 {
            for lambda in all_partitions(n) {
                let m = MonExpr::basis_element(&lambda);
                assert_eq!(p_to_m(&m_to_p(&m)), m);
            }
        }
    }

    #[test]
    fn hall_examples() {
        let p2 = PSExpr::basis_element(&[2].into());
        let p11 = PSExpr::basis_element(&[1, 1].into());
        assert_eq!(hall_scalar(&p2, &p2).unwrap(), poly(&[2, 2]));
        assert!(hall_scalar(&p2, &p11).unwrap().is_zero());
        let f = ps(&[(&[1, 1], BRatFn::one()), (&[2], poly(&[1, 1]))]);
        let g = ps(&[(&[1, 1], BRatFn::one()), (&[2], BRatFn::from_int(-1))]);
        assert!(hall_scalar(&f, &g).unwrap().is_zero());
        assert!(hall_scalar(&p2, &PSExpr::basis_element(&[1].into())).is_err());
    }

    #[test]
    fn small_jacks() {
        assert_eq!(jack(&[2].into()), ps(&[(&[1, 1], BRatFn::one()), (&[2], poly(&[1, 1]))]));
        assert_eq!(
            jack(&[1, 1].into()),
            ps(&[(&[1, 1], BRatFn::one()), (&[2], BRatFn::from_int(-1))])
        );
        assert_eq!(jack(&[1].into()), PSExpr::basis_element(&[1].into()));
        assert_eq!(extract_p_coeff(&jack(&[2].into()), &[2].into()).unwrap(), poly(&[1, 1]));
        assert_eq!(extract_p_coeff(&jack(&[1, 1].into()), &[2].into()).unwrap(), BRatFn::from_int(-1));
        assert!(extract_p_coeff(&jack(&[2].into()), &[3].into()).is_err());
    }

    #[test]
    fn leading_power_sum_coefficient_is_one() {
        for n in 1..=6 {
            for lambda in all_partitions(n) {
                assert_eq!(jack(&lambda).coeff(&Partition::column(n)), BRatFn::one());
            }
        }
    }

    /// At α = 1 the Jack polynomial is `H_λ s_λ`, so its power-sum
    /// coefficients are `H_λ χ^λ(ρ)/z_ρ`; the characters come from an
    /// independent Murnaghan–Nakayama rim-hook recursion.
    #[test]
    fn alpha_one_matches_characters() {
        fn chi(lambda: &[usize], rho: &[usize]) -> i64 {
            let Some((&r, rest)) = rho.split_first() else {
                return lambda.iter().all(|&x| x == 0) as i64;
            };
            // beta numbers
            let l = lambda.len();
            let beta: Vec<i64> = (0..l).map(|i| lambda[i] as i64 + (l - 1 - i) as i64).collect();
            let mut total = 0;
            for i in 0..l {
                let nb = beta[i] - r as i64;
                if nb < 0 || beta.contains(&nb) {
                    continue;
                }
                let sign = if beta.iter().filter(|&&x| x > nb && x < beta[i]).count() % 2 == 0 { 1 } else { -1 };
                let mut nbeta = beta.clone();
                nbeta[i] = nb;
                nbeta.sort_unstable_by(|a, b| b.cmp(a));
                let shape: Vec<usize> = (0..l).map(|j| (nbeta[j] - (l - 1 - j) as i64) as usize).collect();
                total += sign * chi(&shape, rest);
            }
            total
        }
        for n in 1..=6 {
            for lambda in all_partitions(n) {
                let j = jack(&lambda);
                let h = rat_from_big(hook_products(&lambda).h);
                for rho in all_partitions(n) {
                    let expected = &h * rat(chi(lambda.parts(), rho.parts())) / rat_from_big(z_aut(&rho));
                    assert_eq!(j.coeff(&rho).eval(&rat(0)).unwrap(), expected, "J_{lambda} at p_{rho}");
                }
            }
        }
    }

    #[test]
    fn axioms_hold() {
        for n in 0..=7 {
            check_jack_axioms(n).unwrap();
        }
    }

    #[test]
    fn norm_examples() {
        // 2α²(α + 1)
        assert_eq!(jack_norm(&[2].into()), alpha_shift(&BPoly::from_ints(&[0, 0, 2, 2])));
        assert_eq!(jack_norm(&[1].into()), BPoly::alpha());
        assert_eq!(jack_norm(&[1, 1].into()), alpha_shift(&BPoly::from_ints(&[0, 2, 2])));
        for n in 1..=7 {
            for lambda in all_partitions(n) {
                let j = jack_norm(&lambda);
                let hp = hook_products(&lambda);
                assert_eq!(j.eval_int(0), rat_from_big(&hp.h * &hp.h));
                assert_eq!(j.eval_int(1), rat_from_big(hp.h2));
            }
        }
    }

    #[test]
    fn principal_specialization() {
        let u0 = BRatFn::constant(rat(7));
        assert_eq!(principal_spec(&[1].into(), &BRatFn::from_int(5)), BRatFn::from_int(5));
        let expect = &u0 * &(&u0 + &poly(&[1, 1]));
        assert_eq!(principal_spec(&[2].into(), &u0), expect);
        let v = principal_spec(&[1, 1].into(), &BRatFn::one());
        assert_eq!(v.eval(&rat(0)), Some(rat(0)));
        let us = [rat(1), rat(2), rat(-3), rat_frac(5, 2)];
        for n in 1..=7 {
            for lambda in all_partitions(n) {
                let j = jack(&lambda);
                for u in &us {
                    let u = BRatFn::constant(u.clone());
                    assert_eq!(principal_spec(&lambda, &u), eval_all_p(&j, &u), "λ={lambda}");
                }
            }
        }
    }

    #[test]
    fn file_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("jacklab-cache-test-{}", std::process::id()));
        let t = jack_table(4);
        store_table(&dir, &t).unwrap();
        let back = load_table(&dir, 4).unwrap().unwrap();
        assert_eq!(back.coeffs, t.coeffs);
        // stale header forces a miss
        let path = cache_path(&dir, 4);
        let body = fs::read_to_string(&path).unwrap().replacen("v1", "v0", 1);
        fs::write(&path, body).unwrap();
        assert!(load_table(&dir, 4).unwrap().is_none());
        let _ = fs::remove_dir_all(&dir);
    }
}
