//! Truncations of the generating series
//!
//! ```text
//! τ = Σ_n tⁿ Σ_{θ⊢n} J_θ(p) J_θ(q⁰) ⋯ J_θ(qᵏ) / j_θ,        Ψ = (1+b) t ∂_t log τ,
//! ```
//!
//! stored as tables of coefficients keyed by `(λ, μ⁰, …, μᵏ)` and never as
//! expressions in the alphabets. The connection coefficients are
//! `c = z_λ (1+b)^{ℓ(λ)} [p_λ q_{μ⁰} ⋯] τ` and `h = [p_λ q_{μ⁰} ⋯] Ψ`.
//!
//! Internally every table entry is multiplied by `α^{ℓ(λ)}`. That rescaling is
//! multiplicative under partition union, so products of rescaled tables are
//! rescaled products, and it turns every τ entry into a polynomial in `b`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use num_bigint::BigInt;
use num_integer::Integer;

use crate::algebra::{factorial, rat, rat_from_big, BPoly, BRatFn, BigRat, Ring, ZPoly};
use crate::partitions::{all_partitions, partitions_with_len, z_aut, Partition};
use crate::symfunc::jack_table;
use crate::{Error, Result};

/// Index `(λ, μ⁰, …, μᵏ)` of a monomial `p_λ q⁰_{μ⁰} ⋯ qᵏ_{μᵏ}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProfileKey {
    pub lambda: Partition,
    pub mus: Vec<Partition>,
}

impl ProfileKey {
    pub fn new(lambda: Partition, mus: Vec<Partition>) -> Result<Self> {
        let n = lambda.size();
        for mu in &mus {
            if mu.size() != n {
                return Err(Error::SizeMismatch { expected: n, actual: mu.size() });
            }
        }
        if mus.is_empty() {
            return Err(Error::InvalidArgument("a profile needs at least one μ".into()));
        }
        Ok(ProfileKey { lambda, mus })
    }

    pub fn k(&self) -> usize {
        self.mus.len() - 1
    }

    pub fn size(&self) -> usize {
        self.lambda.size()
    }

    fn union(&self, other: &ProfileKey) -> ProfileKey {
        ProfileKey {
            lambda: self.lambda.union(&other.lambda),
            mus: self.mus.iter().zip(&other.mus).map(|(a, b)| a.union(b)).collect(),
        }
    }

    fn slots(&self) -> impl Iterator<Item = &Partition> {
        std::iter::once(&self.lambda).chain(&self.mus)
    }

    fn from_slots(mut slots: Vec<Partition>) -> ProfileKey {
        let lambda = slots.remove(0);
        ProfileKey { lambda, mus: slots }
    }
}

impl std::fmt::Display for ProfileKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}", self.lambda)?;
        for mu in &self.mus {
            write!(f, ",{mu}")?;
        }
        write!(f, ")")
    }
}

/// Every key of degree `n` with `k + 1` partitions `μ`, in canonical order.
pub fn all_keys(k: usize, n: usize) -> Vec<ProfileKey> {
    let parts = all_partitions(n);
    let mut keys = vec![Vec::new()];
    for _ in 0..k + 2 {
        keys = keys
            .into_iter()
            .flat_map(|prefix: Vec<Partition>| {
                parts.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    keys.into_iter().map(ProfileKey::from_slots).collect()
}

/// Degree-`n` slice of a series in `k + 2` alphabets. Absent keys are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ProfileTable<R> {
    pub n: usize,
    pub k: usize,
    entries: BTreeMap<ProfileKey, R>,
}

impl<R: Ring> ProfileTable<R> {
    pub fn zero(k: usize, n: usize) -> Self {
        ProfileTable { n, k, entries: BTreeMap::new() }
    }

    pub fn get(&self, key: &ProfileKey) -> R {
        self.entries.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn entries(&self) -> &BTreeMap<ProfileKey, R> {
        &self.entries
    }

    pub fn insert(&mut self, key: ProfileKey, value: R) -> Result<()> {
        if key.k() != self.k {
            return Err(Error::ColorMismatch(self.k, key.k()));
        }
        if key.size() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, actual: key.size() });
        }
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&ProfileKey, &R) -> S) -> ProfileTable<S> {
        ProfileTable {
            n: self.n,
            k: self.k,
            entries: self
                .entries
                .iter()
                .map(|(key, v)| (key.clone(), f(key, v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn try_map<S: Ring>(
        &self,
        f: impl Fn(&ProfileKey, &R) -> Result<S> + Sync,
    ) -> Result<ProfileTable<S>>
    where
        R: Sync,
        S: Send,
    {
        let entries: Vec<(ProfileKey, S)> = self
            .entries
            .par_iter()
            .map(|(key, v)| Ok((key.clone(), f(key, v)?)))
            .collect::<Result<_>>()?;
        Ok(ProfileTable {
            n: self.n,
            k: self.k,
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        })
    }

    /// `self + c·other`
    fn add_scaled(&mut self, other: &ProfileTable<R>, c: &BigRat) {
        for (key, v) in &other.entries {
            let term = v.scale(c);
            let slot = self.entries.entry(key.clone()).or_insert_with(R::zero);
            *slot = slot.add_ref(&term);
        }
        self.entries.retain(|_, v| !v.is_zero());
    }
}

/// Product of two homogeneous slices; keys merge slot-wise by partition union.
pub fn table_product<R: Ring>(a: &ProfileTable<R>, b: &ProfileTable<R>) -> Result<ProfileTable<R>> {
    if a.k != b.k {
        return Err(Error::ColorMismatch(a.k, b.k));
    }
    let partial: Vec<HashMap<ProfileKey, R>> = a
        .entries
        .par_iter()
        .map(|(ka, va)| {
            let mut acc: HashMap<ProfileKey, R> = HashMap::new();
            for (kb, vb) in &b.entries {
                let prod = va.mul_ref(vb);
                let slot = acc.entry(ka.union(kb)).or_insert_with(R::zero);
                *slot = slot.add_ref(&prod);
            }
            acc
        })
        .collect();
    let mut out = ProfileTable::zero(a.k, a.n + b.n);
    let mut merged: BTreeMap<ProfileKey, R> = BTreeMap::new();
    for part in partial {
        for (key, v) in part {
            let slot = merged.entry(key).or_insert_with(R::zero);
            *slot = slot.add_ref(&v);
        }
    }
    merged.retain(|_, v| !v.is_zero());
    out.entries = merged;
    Ok(out)
}

/// Slices `1..=N` of a series with constant term 1.
#[derive(Clone, Debug)]
pub struct SeriesTrunc<R> {
    pub k: usize,
    tables: Vec<ProfileTable<R>>,
}

impl<R: Ring> SeriesTrunc<R> {
    pub fn new(k: usize, tables: Vec<ProfileTable<R>>) -> Result<Self> {
        for (d, t) in tables.iter().enumerate() {
            if t.k != k {
                return Err(Error::ColorMismatch(k, t.k));
            }
            if t.n != d + 1 {
                return Err(Error::SizeMismatch { expected: d + 1, actual: t.n });
            }
        }
        Ok(SeriesTrunc { k, tables })
    }

    /// Highest degree present.
    pub fn n_max(&self) -> usize {
        self.tables.len()
    }

    pub fn slice(&self, n: usize) -> Option<&ProfileTable<R>> {
        n.checked_sub(1).and_then(|i| self.tables.get(i))
    }
}

/// Powers `(τ − 1)^m` sliced by degree, grown one degree at a time.
#[derive(Clone, Debug)]
struct LogState<R> {
    /// `powers[d - 1][m - 1]` is the degree-`d` slice of `(τ − 1)^m`.
    powers: Vec<Vec<Arc<ProfileTable<R>>>>,
}

impl<R> Default for LogState<R> {
    fn default() -> Self {
        LogState { powers: Vec::new() }
    }
}

impl<R: Ring> LogState<R> {
    /// Appends degree `d = powers.len() + 1` and returns the degree-`d` slice
    /// of `log τ = Σ_m (−1)^{m+1} (τ − 1)^m / m`.
    fn push(&mut self, slices: &[Arc<ProfileTable<R>>]) -> Result<ProfileTable<R>> {
        let d = self.powers.len() + 1;
        let top = slices[d - 1].clone();
        let mut row = vec![top.clone()];
        for m in 2..=d {
            let mut acc = ProfileTable::zero(top.k, d);
            for a in (m - 1)..d {
                let lower = &self.powers[a - 1][m - 2];
                if lower.is_zero() {
                    continue;
                }
                let prod = table_product(lower, &slices[d - a - 1])?;
                acc.add_scaled(&prod, &BigRat::one());
            }
            row.push(Arc::new(acc));
        }
        let mut log = ProfileTable::zero(top.k, d);
        for (i, p) in row.iter().enumerate() {
            let m = (i + 1) as i64;
            let sign = if m % 2 == 1 { 1 } else { -1 };
            log.add_scaled(p, &BigRat::new(sign.into(), m.into()));
        }
        self.powers.push(row);
        Ok(log)
    }
}

/// Degree-`n` slice of `log τ` for any coefficient ring.
pub fn log_slice<R: Ring>(tau: &SeriesTrunc<R>, n: usize) -> Result<ProfileTable<R>> {
    if tau.n_max() < n {
        return Err(Error::Truncation { have: tau.n_max(), need: n });
    }
    let slices: Vec<Arc<ProfileTable<R>>> = tau.tables[..n].iter().cloned().map(Arc::new).collect();
    let mut state = LogState::default();
    let mut last = ProfileTable::zero(tau.k, n);
    for _ in 1..=n {
        last = state.push(&slices)?;
    }
    Ok(last)
}

/// `α^{ℓ(λ)} [p_λ q_{μ⁰} ⋯ q_{μᵏ}] τ` for every key of degree `n`.
///
/// With `D = lcm_θ j_θ` the sum is `N/D` where `N = Σ_θ (D/j_θ) ∏ [p_·]J_θ`.
/// `N` is accumulated over the integers after clearing the denominators of
/// each Jack column and of the weights `D/j_θ`.
fn scaled_tau_slice(k: usize, n: usize) -> Result<ProfileTable<BPoly>> {
    let jt = jack_table(n);
    let np = jt.parts.len();
    let denom = jt.norms.iter().fold(BPoly::one(), |acc, j| {
        let g = BPoly::gcd(&acc, j);
        (&acc * j).exact_div(&g).expect("gcd divides the product")
    });
    let weights: Vec<BPoly> = jt
        .norms
        .iter()
        .map(|j| denom.exact_div(j).expect("each norm divides the lcm"))
        .collect();
    let w_scale = weights.iter().fold(BigInt::one(), |acc, w| acc.lcm(&ZPoly::denominator_of(w)));
    let weights: Vec<ZPoly> = weights
        .iter()
        .map(|w| ZPoly::from_scaled(w, &w_scale).expect("scale clears denominators"))
        .collect();
    let col_scale: Vec<BigInt> = (0..np)
        .map(|i| (0..np).fold(BigInt::one(), |acc, t| acc.lcm(&ZPoly::denominator_of(&jt.coeffs[t][i]))))
        .collect();
    // cols[i][θ] = col_scale[i] · [p_i] J_θ
    let cols: Vec<Vec<ZPoly>> = (0..np)
        .map(|i| {
            (0..np)
                .map(|t| ZPoly::from_scaled(&jt.coeffs[t][i], &col_scale[i]).expect("scale clears denominators"))
                .collect()
        })
        .collect();
    let slots = k + 2;

    // Depth-first over the slots, carrying one partial product per θ.
    fn walk(
        cols: &[Vec<ZPoly>],
        slots: usize,
        idx: &mut Vec<usize>,
        prefix: &[ZPoly],
        out: &mut Vec<(Vec<usize>, ZPoly)>,
    ) {
        if idx.len() + 1 == slots {
            for (i, col) in cols.iter().enumerate() {
                let mut sum = ZPoly::default();
                for (pre, c) in prefix.iter().zip(col) {
                    if !pre.is_zero() && !c.is_zero() {
                        sum.add_assign(&pre.mul(c));
                    }
                }
                if !sum.is_zero() {
                    let mut key = idx.clone();
                    key.push(i);
                    out.push((key, sum));
                }
            }
            return;
        }
        for (i, col) in cols.iter().enumerate() {
            let next: Vec<ZPoly> = prefix.iter().zip(col).map(|(pre, c)| pre.mul(c)).collect();
            if next.iter().all(ZPoly::is_zero) {
                continue;
            }
            idx.push(i);
            walk(cols, slots, idx, &next, out);
            idx.pop();
        }
    }

    let rows: Vec<Vec<(Vec<usize>, ZPoly)>> = (0..np)
        .into_par_iter()
        .map(|l| {
            let prefix: Vec<ZPoly> = weights.iter().zip(&cols[l]).map(|(w, c)| w.mul(c)).collect();
            let mut out = Vec::new();
            walk(&cols, slots, &mut vec![l], &prefix, &mut out);
            out
        })
        .collect();

    let entries: Vec<(ProfileKey, BPoly)> = rows
        .into_par_iter()
        .flatten()
        .map(|(idx, num)| {
            let lambda = &jt.parts[idx[0]];
            let scale = idx.iter().fold(w_scale.clone(), |acc, &i| acc * &col_scale[i]);
            let num = num.to_bpoly().scale(&BigRat::new(BigInt::one(), scale));
            let scaled = &num * &BPoly::alpha_pow(lambda.len());
            let key = ProfileKey::from_slots(idx.iter().map(|&i| jt.parts[i].clone()).collect());
            let value = scaled.exact_div(&denom).ok_or_else(|| {
                Error::NotPolynomial(format!("α^ℓ(λ)·τ at {key} has a surviving denominator"))
            })?;
            Ok((key, value))
        })
        .collect::<Result<_>>()?;
    let mut table = ProfileTable::zero(k, n);
    for (key, value) in entries {
        table.insert(key, value)?;
    }
    Ok(table)
}

/// Which connection coefficient a record carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    C,
    H,
}

impl CoeffKind {
    pub fn name(self) -> &'static str {
        match self {
            CoeffKind::C => "c",
            CoeffKind::H => "h",
        }
    }
}

impl std::str::FromStr for CoeffKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "c" => Ok(CoeffKind::C),
            "h" => Ok(CoeffKind::H),
            _ => Err(Error::InvalidArgument(format!("coefficient kind must be c or h, got `{s}`"))),
        }
    }
}

/// A coefficient `c` or `h` at one key, as a polynomial in `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffRecord {
    pub kind: CoeffKind,
    pub key: ProfileKey,
    pub value: BPoly,
}

impl Serialize for CoeffRecord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Coeffs<'a> {
            coeffs: &'a BPoly,
        }
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("lambda", &self.key.lambda)?;
        m.serialize_entry("mus", &self.key.mus)?;
        m.serialize_entry(self.kind.name(), &Coeffs { coeffs: &self.value })?;
        m.end()
    }
}

/// All coefficient tables of one `k` up to a degree, computed incrementally.
#[derive(Debug)]
pub struct CoeffTables {
    pub k: usize,
    tau: Vec<Arc<ProfileTable<BPoly>>>,
    log: LogState<BPoly>,
    c: Vec<Arc<ProfileTable<BPoly>>>,
    h: Vec<Arc<ProfileTable<BPoly>>>,
}

impl CoeffTables {
    fn new(k: usize) -> Self {
        CoeffTables {
            k,
            tau: Vec::new(),
            log: LogState::default(),
            c: Vec::new(),
            h: Vec::new(),
        }
    }

    pub fn n_max(&self) -> usize {
        self.c.len()
    }

    fn extend_to(&mut self, n: usize) -> Result<()> {
        while self.n_max() < n {
            let d = self.n_max() + 1;
            let tau = Arc::new(scaled_tau_slice(self.k, d)?);
            self.tau.push(tau.clone());
            let log = self.log.push(&self.tau)?;
            let c = tau.try_map(|key, v| Ok(v.scale(&rat_from_big(z_aut(&key.lambda)))))?;
            let h = log.try_map(|key, v| {
                v.scale(&rat(d as i64))
                    .div_alpha_pow(key.lambda.len() - 1)
                    .ok_or_else(|| Error::NotPolynomial(format!("h at {key}")))
            })?;
            self.c.push(Arc::new(c));
            self.h.push(Arc::new(h));
        }
        Ok(())
    }

    fn slice(tables: &[Arc<ProfileTable<BPoly>>], n: usize) -> Result<&ProfileTable<BPoly>> {
        n.checked_sub(1)
            .and_then(|i| tables.get(i))
            .map(|t| t.as_ref())
            .ok_or(Error::Truncation { have: tables.len(), need: n })
    }

    pub fn c_table(&self, n: usize) -> Result<&ProfileTable<BPoly>> {
        Self::slice(&self.c, n)
    }

    pub fn h_table(&self, n: usize) -> Result<&ProfileTable<BPoly>> {
        Self::slice(&self.h, n)
    }

    pub fn table(&self, kind: CoeffKind, n: usize) -> Result<&ProfileTable<BPoly>> {
        match kind {
            CoeffKind::C => self.c_table(n),
            CoeffKind::H => self.h_table(n),
        }
    }

    pub fn get(&self, kind: CoeffKind, key: &ProfileKey) -> Result<BPoly> {
        if key.k() != self.k {
            return Err(Error::ColorMismatch(self.k, key.k()));
        }
        Ok(self.table(kind, key.size())?.get(key))
    }
}

/// Shared coefficient tables for `k`, computed at least up to degree `n`.
pub fn coeff_tables(k: usize, n: usize) -> Result<Arc<CoeffTables>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Mutex<CoeffTables>>>>> = OnceLock::new();
    let slot = CACHE
        .get_or_init(Default::default)
        .lock()
        .unwrap()
        .entry(k)
        .or_insert_with(|| Arc::new(Mutex::new(CoeffTables::new(k))))
        .clone();
    let mut tables = slot.lock().unwrap();
    tables.extend_to(n)?;
    Ok(Arc::new(CoeffTables {
        k,
        tau: tables.tau.clone(),
        log: LogState::default(),
        c: tables.c.clone(),
        h: tables.h.clone(),
    }))
}

/// `[p_λ q_{μ⁰} ⋯ q_{μᵏ}] τ` for every key of degree `n`.
pub fn tau_table(k: usize, n: usize) -> Result<ProfileTable<BRatFn>> {
    let tables = coeff_tables(k, n)?;
    let scaled = CoeffTables::slice(&tables.tau, n)?;
    scaled.try_map(|key, v| {
        BRatFn::new(v.clone(), BPoly::alpha_pow(key.lambda.len()))
    })
}

/// Degree-`n` slice of `Ψ = (1+b) t ∂_t log τ`.
pub fn psi_table(k: usize, n: usize, tau: &SeriesTrunc<BRatFn>) -> Result<ProfileTable<BRatFn>> {
    if tau.k != k {
        return Err(Error::ColorMismatch(k, tau.k));
    }
    let log = log_slice(tau, n)?;
    let factor = BRatFn::from_poly(BPoly::alpha().scale(&rat(n as i64)));
    Ok(log.map(|_, v| v * &factor))
}

pub fn coeff_c(key: &ProfileKey) -> Result<CoeffRecord> {
    coeff(CoeffKind::C, key)
}

pub fn coeff_h(key: &ProfileKey) -> Result<CoeffRecord> {
    coeff(CoeffKind::H, key)
}

pub fn coeff(kind: CoeffKind, key: &ProfileKey) -> Result<CoeffRecord> {
    let value = coeff_tables(key.k(), key.size())?.get(kind, key)?;
    Ok(CoeffRecord { kind, key: key.clone(), value })
}

/// Every `c` or `h` of degree `n`, in canonical key order, zeros included.
pub fn coeff_full_table(kind: CoeffKind, k: usize, n: usize) -> Result<Vec<CoeffRecord>> {
    let tables = coeff_tables(k, n)?;
    let t = tables.table(kind, n)?;
    Ok(all_keys(k, n)
        .into_iter()
        .map(|key| CoeffRecord { kind, value: t.get(&key), key })
        .collect())
}

/// Every tuple `(μ¹, …, μᵏ)` of partitions of `n` with `ℓ(μ^i) = lengths[i−1]`.
pub fn tuples_with_lengths(n: usize, lengths: &[usize]) -> Vec<Vec<Partition>> {
    lengths.iter().fold(vec![Vec::new()], |acc, &l| {
        let choices = partitions_with_len(n, l);
        acc.into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect()
    })
}

/// `Σ c^λ_{μ, μ¹, …, μᵏ}` (or `h`) over `μ^i ⊢ n` with `ℓ(μ^i) = l_i`.
pub fn marginal(kind: CoeffKind, lambda: &Partition, mu: &Partition, lengths: &[usize]) -> Result<CoeffRecord> {
    let n = lambda.size();
    if mu.size() != n {
        return Err(Error::SizeMismatch { expected: n, actual: mu.size() });
    }
    if lengths.is_empty() {
        return Err(Error::InvalidArgument("at least one length is required".into()));
    }
    let k = lengths.len();
    let tables = coeff_tables(k, n)?;
    let t = tables.table(kind, n)?;
    let mut sum = BPoly::zero();
    for rest in tuples_with_lengths(n, lengths) {
        let mut mus = vec![mu.clone()];
        mus.extend(rest);
        sum += &t.get(&ProfileKey { lambda: lambda.clone(), mus });
    }
    // Summed slots are shown as empty partitions in the record key.
    let mut mus = vec![mu.clone()];
    mus.extend(lengths.iter().map(|_| Partition::empty()));
    Ok(CoeffRecord {
        kind,
        key: ProfileKey { lambda: lambda.clone(), mus },
        value: sum,
    })
}

pub fn marginal_c(lambda: &Partition, mu: &Partition, lengths: &[usize]) -> Result<CoeffRecord> {
    marginal(CoeffKind::C, lambda, mu, lengths)
}

pub fn marginal_h(lambda: &Partition, mu: &Partition, lengths: &[usize]) -> Result<CoeffRecord> {
    marginal(CoeffKind::H, lambda, mu, lengths)
}

/// `(d₋₁, [d₀, …, d_k])`.
pub fn degree_bounds(key: &ProfileKey) -> (i64, Vec<i64>) {
    let k = key.k() as i64;
    let n = key.size() as i64;
    let lens: Vec<i64> = key.mus.iter().map(|m| m.len() as i64).collect();
    let total: i64 = lens.iter().sum();
    let d_minus = k * n + key.lambda.len() as i64 - total;
    let d = lens.iter().map(|l| k * n - (total - l)).collect();
    (d_minus, d)
}

fn poly_degree(p: &BPoly) -> i64 {
    p.degree().map_or(-1, |d| d as i64)
}

/// `deg c ≤ min_i d_i`, with `c = 0` whenever the minimum is negative.
pub fn degree_check(key: &ProfileKey) -> Result<bool> {
    let c = coeff_c(key)?.value;
    let (dm, ds) = degree_bounds(key);
    let bound = ds.into_iter().fold(dm, i64::min);
    Ok(c.is_zero() || poly_degree(&c) <= bound)
}

/// Applies a permutation of the `k + 2` slots.
fn permute(key: &ProfileKey, perm: &[usize]) -> ProfileKey {
    let slots: Vec<&Partition> = key.slots().collect();
    ProfileKey::from_slots(perm.iter().map(|&i| slots[i].clone()).collect())
}

/// `τ` at `key` against `τ` at the key with `λ ↔ μ⁰` swapped and at every key
/// with two adjacent `μ`'s swapped. Returns the pairs that were compared.
pub fn duality_symmetry_sides(key: &ProfileKey) -> Result<Vec<(ProfileKey, BRatFn, BRatFn)>> {
    let tables = coeff_tables(key.k(), key.size())?;
    let c = tables.c_table(key.size())?;
    let tau = |kk: &ProfileKey| -> Result<BRatFn> {
        let norm = BPoly::alpha_pow(kk.lambda.len()).scale(&rat_from_big(z_aut(&kk.lambda)));
        BRatFn::new(c.get(kk), norm)
    };
    let here = tau(key)?;
    let slots = key.k() + 2;
    let mut out = Vec::new();
    for swap in 0..slots - 1 {
        let mut perm: Vec<usize> = (0..slots).collect();
        perm.swap(swap, swap + 1);
        let other = permute(key, &perm);
        let there = tau(&other)?;
        out.push((other, here.clone(), there));
    }
    Ok(out)
}

pub fn duality_symmetry_check(key: &ProfileKey) -> Result<bool> {
    Ok(duality_symmetry_sides(key)?.iter().all(|(_, a, b)| a == b))
}

/// `c^λ_{μ⁰..μᵏ}` against `Σ_ν c^λ_{μ⁰..μ^{k−2},ν} c^ν_{μ^{k−1},μᵏ}`.
pub fn mult_sides(key: &ProfileKey) -> Result<(BPoly, BPoly)> {
    let k = key.k();
    if k < 2 {
        return Err(Error::InvalidArgument("multiplicativity needs k ≥ 2".into()));
    }
    let n = key.size();
    let lhs = coeff_tables(k, n)?.get(CoeffKind::C, key)?;
    let outer = coeff_tables(k - 1, n)?;
    let inner = coeff_tables(1, n)?;
    let mut rhs = BPoly::zero();
    for nu in all_partitions(n) {
        let mut mus = key.mus[..k - 1].to_vec();
        mus.push(nu.clone());
        let a = outer.get(CoeffKind::C, &ProfileKey { lambda: key.lambda.clone(), mus })?;
        if a.is_zero() {
            continue;
        }
        let b = inner.get(
            CoeffKind::C,
            &ProfileKey { lambda: nu, mus: vec![key.mus[k - 1].clone(), key.mus[k].clone()] },
        )?;
        rhs += &(&a * &b);
    }
    Ok((lhs, rhs))
}

pub fn mult_check(key: &ProfileKey) -> Result<bool> {
    let (a, b) = mult_sides(key)?;
    Ok(a == b)
}

/// `Σ_τ h^λ_{μ⁰..μ^{k−1},τ}(b)` against `(1+b)^e Σ_τ h^λ_{μ⁰..μ^{k−1},τ}(0)` with
/// `e = kn + 1 − ℓ(λ) − Σ_{j<k} ℓ(μ^j)`; for `e < 0` the right side is zero.
pub fn somh_sides(lambda: &Partition, mus: &[Partition]) -> Result<(BPoly, BPoly)> {
    let n = lambda.size();
    let k = mus.len();
    let tables = coeff_tables(k, n)?;
    let h = tables.h_table(n)?;
    let mut sum = BPoly::zero();
    for tau in all_partitions(n) {
        let mut full = mus.to_vec();
        full.push(tau);
        sum += &h.get(&ProfileKey::new(lambda.clone(), full)?);
    }
    let e = (k * n + 1) as i64 - lambda.len() as i64 - mus.iter().map(|m| m.len() as i64).sum::<i64>();
    let rhs = if e < 0 {
        BPoly::zero()
    } else {
        BPoly::alpha_pow(e as usize).scale(&sum.coeff(0))
    };
    Ok((sum, rhs))
}

pub fn somh_check(lambda: &Partition, mus: &[Partition]) -> Result<bool> {
    let (a, b) = somh_sides(lambda, mus)?;
    Ok(a == b)
}

/// `[b^{d₋₁}] c` against `(−1)^{d₋₁} c(−1)`; when `d₋₁ < 0` the sides are `c`
/// and zero.
pub fn bminus1_sides(key: &ProfileKey) -> Result<(BPoly, BPoly)> {
    let c = coeff_c(key)?.value;
    let (d, _) = degree_bounds(key);
    if d < 0 {
        return Ok((c, BPoly::zero()));
    }
    let top = BPoly::constant(c.coeff(d as usize));
    let at = c.eval_int(-1);
    let at = if d % 2 == 0 { at } else { -at };
    Ok((top, BPoly::constant(at)))
}

pub fn corollary_bminus1_check(key: &ProfileKey) -> Result<bool> {
    let (a, b) = bminus1_sides(key)?;
    Ok(a == b)
}

/// Distinct orderings of a multiset.
fn distinct_orderings(parts: &[usize]) -> Vec<Vec<usize>> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        *counts.entry(p).or_default() += 1;
    }
    fn rec(counts: &mut BTreeMap<usize, usize>, cur: &mut Vec<usize>, len: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<usize> = counts.iter().filter(|(_, &c)| c > 0).map(|(&v, _)| v).collect();
        for v in keys {
            *counts.get_mut(&v).unwrap() -= 1;
            cur.push(v);
            rec(counts, cur, len, out);
            cur.pop();
            *counts.get_mut(&v).unwrap() += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut counts, &mut Vec::new(), parts.len(), &mut out);
    out
}

/// `[b^{d_k}] c / z_λ` against the sum over splittings of `(λ, μ⁰, …, μ^{k−1})`
/// into `ℓ(μᵏ)` ordered blocks of sizes given by a reordering of `μᵏ`, each
/// block weighted by `Σ_τ h^{block,τ}(0) / n_i`, all divided by `ℓ(μᵏ)!`.
pub fn topdeg_sides(key: &ProfileKey) -> Result<(BigRat, BigRat)> {
    let k = key.k();
    let n = key.size();
    let c = coeff_c(key)?.value;
    let (_, ds) = degree_bounds(key);
    let dk = ds[k];
    let lhs = if dk < 0 {
        // the bound forces c = 0; report its leading coefficient if it is not
        c.leading().cloned().unwrap_or_else(BigRat::zero)
    } else {
        c.coeff(dk as usize) / rat_from_big(z_aut(&key.lambda))
    };

    let tables = coeff_tables(k, n)?;
    let mut h0_cache: HashMap<Vec<Partition>, BigRat> = HashMap::new();
    let mut h0 = |block: &[Partition]| -> Result<BigRat> {
        if let Some(v) = h0_cache.get(block) {
            return Ok(v.clone());
        }
        let m = block[0].size();
        let h = tables.h_table(m)?;
        let mut sum = BigRat::zero();
        for tau in all_partitions(m) {
            let mut slots = block.to_vec();
            slots.push(tau);
            sum += h.get(&ProfileKey::from_slots(slots)).coeff(0);
        }
        h0_cache.insert(block.to_vec(), sum.clone());
        Ok(sum)
    };

    fn splittings(
        sizes: &[usize],
        remaining: Vec<Partition>,
        acc: BigRat,
        h0: &mut dyn FnMut(&[Partition]) -> Result<BigRat>,
        total: &mut BigRat,
    ) -> Result<()> {
        let Some((&ni, rest)) = sizes.split_first() else {
            *total += acc;
            return Ok(());
        };
        let choices: Vec<Vec<Partition>> = remaining.iter().map(|p| p.sub_partitions(ni)).collect();
        let mut pick = vec![0usize; choices.len()];
        if choices.iter().any(Vec::is_empty) {
            return Ok(());
        }
        loop {
            let block: Vec<Partition> = pick.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
            let w = h0(&block)?;
            if !w.is_zero() {
                let next: Vec<Partition> = remaining
                    .iter()
                    .zip(&block)
                    .map(|(r, b)| r.difference(b).expect("block is a sub-multiset"))
                    .collect();
                let acc = &acc * &w / rat(ni as i64);
                splittings(rest, next, acc, h0, total)?;
            }
            // odometer over the per-slot choices
            let mut s = 0;
            loop {
                if s == pick.len() {
                    return Ok(());
                }
                pick[s] += 1;
                if pick[s] < choices[s].len() {
                    break;
                }
                pick[s] = 0;
                s += 1;
            }
        }
    }

    let mut total = BigRat::zero();
    let mut remaining = vec![key.lambda.clone()];
    remaining.extend(key.mus[..k].iter().cloned());
    for sizes in distinct_orderings(key.mus[k].parts()) {
        splittings(&sizes, remaining.clone(), BigRat::one(), &mut h0, &mut total)?;
    }
    let rhs = total / rat_from_big(factorial(key.mus[k].len()));
    Ok((lhs, rhs))
}

pub fn topdeg_check(key: &ProfileKey) -> Result<bool> {
    let (a, b) = topdeg_sides(key)?;
    Ok(a == b)
}

/// Every coefficient is a non-negative integer.
pub fn is_positive_integral(p: &BPoly) -> bool {
    p.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}

/// Table dump: keys in canonical order with their values.
pub fn serialize_table<S: Serializer>(t: &ProfileTable<BPoly>, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(t.entries.len()))?;
    for (k, v) in &t.entries {
        m.serialize_entry(&k.to_string(), v)?;
    }
    m.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat_frac, BRatFn};

    fn key(parts: &[&[usize]]) -> ProfileKey {
        ProfileKey::from_slots(parts.iter().map(|p| Partition::from(*p)).collect())
    }

    fn ratfn(num: &[i64], den: &[i64]) -> BRatFn {
        BRatFn::new(BPoly::from_ints(num), BPoly::from_ints(den)).unwrap()
    }

    #[test]
    fn tau_examples() {
        let t = tau_table(1, 2).unwrap();
        assert_eq!(t.get(&key(&[&[2], &[2], &[2]])), ratfn(&[0, 1], &[2, 2]));
        assert_eq!(t.get(&key(&[&[2], &[1, 1], &[2]])), ratfn(&[1], &[2, 2]));
        let t = tau_table(1, 1).unwrap();
        assert_eq!(t.get(&key(&[&[1], &[1], &[1]])), ratfn(&[1], &[1, 1]));
    }

    /// τ straight from the definition, with rational-function arithmetic.
    fn tau_oracle(k: usize, n: usize) -> ProfileTable<BRatFn> {
        let jt = jack_table(n);
        let mut t = ProfileTable::zero(k, n);
        for key in all_keys(k, n) {
            let mut sum = BRatFn::zero();
            for (th, norm) in jt.norms.iter().enumerate() {
                let mut term = BRatFn::new(BPoly::one(), norm.clone()).unwrap();
                for p in key.slots() {
                    term = &term * &BRatFn::from_poly(jt.coeffs[th][jt.index_of(p).unwrap()].clone());
                }
                sum = &sum + &term;
            }
            t.insert(key, sum).unwrap();
        }
        t
    }

    #[test]
    fn tau_matches_direct_sum() {
        for (k, n) in [(1, 3), (1, 4), (2, 3), (0, 3)] {
            assert_eq!(tau_table(k, n).unwrap(), tau_oracle(k, n), "k={k} n={n}");
        }
    }

    #[test]
    fn products() {
        let one = |k| {
            let mut t: ProfileTable<BRatFn> = ProfileTable::zero(k, 1);
            t.insert(key(&[&[1], &[1], &[1]]), BRatFn::from_int(3)).unwrap();
            t
        };
        let p = table_product(&one(1), &one(1)).unwrap();
        assert_eq!(p.entries().len(), 1);
        assert_eq!(p.get(&key(&[&[1, 1], &[1, 1], &[1, 1]])), BRatFn::from_int(9));
        let z: ProfileTable<BRatFn> = ProfileTable::zero(1, 2);
        assert!(table_product(&z, &tau_table(1, 2).unwrap()).unwrap().is_zero());
        let other: ProfileTable<BRatFn> = ProfileTable::zero(2, 1);
        assert!(table_product(&one(1), &other).is_err());
    }

    #[test]
    fn product_is_bilinear_termwise() {
        let a = tau_table(1, 1).unwrap();
        let b = tau_table(1, 2).unwrap();
        let prod = table_product(&a, &b).unwrap();
        let mut expected: BTreeMap<ProfileKey, BRatFn> = BTreeMap::new();
        for (ka, va) in a.entries() {
            for (kb, vb) in b.entries() {
                let slot = expected.entry(ka.union(kb)).or_default();
                *slot = &*slot + &(va * vb);
            }
        }
        expected.retain(|_, v| !v.is_zero());
        assert_eq!(prod.entries(), &expected);
    }

    fn trunc(k: usize, n: usize) -> SeriesTrunc<BRatFn> {
        SeriesTrunc::new(k, (1..=n).map(|d| tau_table(k, d).unwrap()).collect()).unwrap()
    }

    #[test]
    fn psi_examples() {
        let tau = trunc(1, 2);
        let psi = psi_table(1, 2, &tau).unwrap();
        assert_eq!(psi.get(&key(&[&[2], &[2], &[2]])), BRatFn::from_poly(BPoly::b()));
        assert_eq!(psi.get(&key(&[&[2], &[2], &[1, 1]])), BRatFn::one());
        let psi = psi_table(1, 1, &tau).unwrap();
        assert_eq!(psi.get(&key(&[&[1], &[1], &[1]])), BRatFn::one());
        assert!(matches!(psi_table(1, 3, &tau), Err(Error::Truncation { .. })));
    }

    /// `n L_n = n T_n − Σ_{a<n} a L_a T_{n−a}`, from `τ' = τ (log τ)'`.
    #[test]
    fn log_matches_derivative_recurrence() {
        let k = 1;
        let nmax = 4;
        let tau = trunc(k, nmax);
        let mut logs: Vec<ProfileTable<BRatFn>> = Vec::new();
        for n in 1..=nmax {
            let mut acc = tau.slice(n).unwrap().clone();
            for a in 1..n {
                let prod = table_product(&logs[a - 1], tau.slice(n - a).unwrap()).unwrap();
                acc.add_scaled(&prod, &rat_frac(-(a as i64), n as i64));
            }
            logs.push(acc);
            assert_eq!(log_slice(&tau, n).unwrap(), logs[n - 1], "n={n}");
        }
    }

    #[test]
    fn h_agrees_with_psi() {
        for (k, n) in [(1, 3), (2, 3)] {
            let psi = psi_table(k, n, &trunc(k, n)).unwrap();
            let h = coeff_tables(k, n).unwrap();
            for key in all_keys(k, n) {
                assert_eq!(BRatFn::from_poly(h.get(CoeffKind::H, &key).unwrap()), psi.get(&key));
            }
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(coeff_c(&key(&[&[2], &[2], &[2]])).unwrap().value, BPoly::b());
        assert_eq!(coeff_c(&key(&[&[2], &[1, 1], &[2]])).unwrap().value, BPoly::one());
        assert_eq!(coeff_h(&key(&[&[2], &[2], &[2]])).unwrap().value, BPoly::b());
        assert_eq!(coeff_c(&key(&[&[1, 1], &[2], &[2]])).unwrap().value, BPoly::alpha());
        let rec = coeff_c(&key(&[&[2], &[2], &[2]])).unwrap();
        assert_eq!(
            serde_json::to_string(&rec).unwrap(),
            r#"{"lambda":[2],"mus":[[2],[2]],"c":{"coeffs":["0/1","1/1"]}}"#
        );
    }

    #[test]
    fn marginal_examples() {
        let l2 = Partition::from([2]);
        assert_eq!(marginal_c(&l2, &l2, &[1]).unwrap().value, BPoly::b());
        assert_eq!(
            marginal_c(&l2, &l2, &[2]).unwrap().value,
            coeff_c(&key(&[&[2], &[2], &[1, 1]])).unwrap().value
        );
        assert_eq!(marginal_c(&l2, &l2, &[2]).unwrap().value, BPoly::one());
        let total = &marginal_h(&l2, &l2, &[1]).unwrap().value + &marginal_h(&l2, &l2, &[2]).unwrap().value;
        assert_eq!(total, BPoly::alpha());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_bounds(&key(&[&[2], &[2], &[2]])).0, 1);
        assert_eq!(degree_bounds(&key(&[&[1], &[1], &[1]])).0, 0);
        assert_eq!(degree_bounds(&key(&[&[2], &[1, 1], &[2]])).1[0], 1);
        for n in 1..=4 {
            for key in all_keys(1, n) {
                assert!(degree_check(&key).unwrap(), "{key}");
            }
        }
    }

    #[test]
    fn symmetry_examples() {
        assert!(duality_symmetry_check(&key(&[&[2], &[1, 1], &[2]])).unwrap());
        for n in 1..=4 {
            for key in all_keys(1, n) {
                assert!(duality_symmetry_check(&key).unwrap(), "{key}");
            }
        }
    }

    #[test]
    fn mult_examples() {
        assert_eq!(mult_sides(&key(&[&[1], &[1], &[1], &[1]])).unwrap(), (BPoly::one(), BPoly::one()));
        for key in all_keys(2, 2) {
            let (a, b) = mult_sides(&key).unwrap();
            assert_eq!(a, b, "{key}");
        }
        assert!(mult_check(&key(&[&[2], &[2], &[2], &[2]])).unwrap());
        assert!(mult_sides(&key(&[&[1], &[1], &[1]])).is_err());
    }

    #[test]
    fn somh_bminus1_topdeg_examples() {
        let l2 = Partition::from([2]);
        let (a, b) = somh_sides(&l2, std::slice::from_ref(&l2)).unwrap();
        assert_eq!(a, BPoly::alpha());
        assert_eq!(b, BPoly::alpha());
        let k222 = key(&[&[2], &[2], &[2]]);
        assert_eq!(bminus1_sides(&k222).unwrap(), (BPoly::one(), BPoly::one()));
        assert_eq!(topdeg_sides(&k222).unwrap(), (rat_frac(1, 2), rat_frac(1, 2)));
        for n in 1..=4 {
            for key in all_keys(1, n) {
                assert!(corollary_bminus1_check(&key).unwrap(), "b=-1 {key}");
                let (a, b) = topdeg_sides(&key).unwrap();
                assert_eq!(a, b, "topdeg {key}");
            }
        }
    }

    #[test]
    fn low_degree_positivity() {
        for (k, nmax) in [(1, 5), (2, 3)] {
            for n in 1..=nmax {
                let t = coeff_tables(k, n).unwrap();
                for (_, v) in t.c_table(n).unwrap().entries().iter().chain(t.h_table(n).unwrap().entries()) {
                    assert!(is_positive_integral(v), "{v}");
                }
            }
        }
    }

    #[test]
    fn orderings() {
        assert_eq!(distinct_orderings(&[2, 1, 1]).len(), 3);
        assert_eq!(distinct_orderings(&[1, 1]).len(), 1);
        assert_eq!(distinct_orderings(&[]).len(), 1);
    }
}
