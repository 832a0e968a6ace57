//! Perfect matchings on `𝒜_n = {1, 1̂, …, n, n̂}`, the sets `𝔉` and `𝔉̃`, and
//! their counts through zonal characters of the pair `(S_{2n}, B_n)`.
//!
//! Index `2j` stands for the element `j+1` and index `2j+1` for `ĵ+1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{factorial, rat, rat_from_big, BigRat};
use crate::partitions::{all_partitions, hook_products, z_aut, Partition};
use crate::series::ProfileKey;
use crate::symfunc::jack_table;
use crate::{Error, Result};

/// A fixed-point-free involution of `0..2n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    pairing: Vec<usize>,
}

fn label(i: usize) -> String {
    if i % 2 == 0 {
        format!("{}", i / 2 + 1)
    } else {
        format!("{}^", i / 2 + 1)
    }
}

impl Matching {
    /// Builds a matching from index pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut pairing = vec![usize::MAX; 2 * n];
        for &(a, b) in pairs {
            if a == b || a >= 2 * n || b >= 2 * n || pairing[a] != usize::MAX || pairing[b] != usize::MAX {
                return Err(Error::InvalidArgument(format!("bad pair ({a},{b}) on 2n = {}", 2 * n)));
            }
            pairing[a] = b;
            pairing[b] = a;
        }
        if pairing.contains(&usize::MAX) {
            return Err(Error::InvalidArgument("pairs do not cover every element".into()));
        }
        Ok(Matching { pairing })
    }

    pub fn from_pairing(pairing: Vec<usize>) -> Result<Self> {
        let ok = pairing.len() % 2 == 0
            && pairing
                .iter()
                .enumerate()
                .all(|(i, &j)| j < pairing.len() && j != i && pairing[j] == i);
        if ok {
            Ok(Matching { pairing })
        } else {
            Err(Error::InvalidArgument(format!("{pairing:?} is not a fixed-point-free involution")))
        }
    }

    pub fn n(&self) -> usize {
        self.pairing.len() / 2
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    /// Pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.pairing
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i < j)
            .map(|(i, &j)| (i, j))
            .collect()
    }

    /// Every pair joins an unhatted and a hatted element.
    pub fn is_bipartite(&self) -> bool {
        self.pairing.iter().enumerate().all(|(i, &j)| i % 2 != j % 2)
    }

    /// Relabels the ground set by `perm` (a permutation of `0..2n`).
    pub fn relabel(&self, perm: &[usize]) -> Matching {
        let mut pairing = vec![0; self.pairing.len()];
        for (i, &j) in self.pairing.iter().enumerate() {
            pairing[perm[i]] = perm[j];
        }
        Matching { pairing }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (a, b)) in self.pairs().into_iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", label(a), label(b))?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Matching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.pairs().into_iter().map(|(a, b)| [a, b]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matching {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[usize; 2]>::deserialize(d)?;
        let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|[a, b]| (a, b)).collect();
        Matching::from_pairs(pairs.len(), &pairs).map_err(serde::de::Error::custom)
    }
}

/// `ε = {(i, î)}`
pub fn epsilon(n: usize) -> Matching {
    Matching {
        pairing: (0..2 * n).map(|i| i ^ 1).collect(),
    }
}

/// `δ_λ`: within each block of `λ_i` consecutive elements starting at `s`,
/// pairs `(s+t, (s+t+1)^)` and closes the block with `(s+λ_i−1, ŝ)`.
pub fn delta_lambda(lambda: &Partition) -> Matching {
    let n = lambda.size();
    let mut pairs = Vec::with_capacity(n);
    let mut s = 0;
    for &len in lambda.parts() {
        for t in 0..len - 1 {
            pairs.push((2 * (s + t), 2 * (s + t + 1) + 1));
        }
        pairs.push((2 * (s + len - 1), 2 * s + 1));
        s += len;
    }
    Matching::from_pairs(n, &pairs).expect("δ_λ is a perfect matching")
}

/// `Λ(δ₁, δ₂)`: half-sizes of the cycles of the union graph, sorted.
pub fn lambda_of(d1: &Matching, d2: &Matching) -> Partition {
    assert_eq!(d1.n(), d2.n(), "matchings on different ground sets");
    let m = d1.pairing.len();
    let mut seen = vec![false; m];
    let mut parts = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        loop {
            seen[x] = true;
            let y = d1.pairing[x];
            seen[y] = true;
            len += 1;
            x = d2.pairing[y];
            if x == start {
                break;
            }
        }
        parts.push(len);
    }
    Partition::from_unsorted(parts)
}

/// All `(2n−1)!!` matchings of `𝒜_n`, in lexicographic order of the pairing
/// array.
pub fn all_matchings(n: usize) -> Vec<Matching> {
    fn rec(pairing: &mut Vec<usize>, out: &mut Vec<Matching>) {
        let Some(first) = pairing.iter().position(|&p| p == usize::MAX) else {
            out.push(Matching { pairing: pairing.clone() });
            return;
        };
        for j in first + 1..pairing.len() {
            if pairing[j] == usize::MAX {
                pairing[first] = j;
                pairing[j] = first;
                rec(pairing, out);
                pairing[first] = usize::MAX;
                pairing[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut vec![usize::MAX; 2 * n], &mut out);
    out
}

/// A tuple `(δ₀, …, δ_{k−1})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchTuple {
    pub k: usize,
    pub deltas: Vec<Matching>,
}

impl MatchTuple {
    pub fn all_bipartite(&self) -> bool {
        self.deltas.iter().all(Matching::is_bipartite)
    }
}

impl Serialize for MatchTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MatchTuple", 3)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("deltas", &self.deltas)?;
        st.serialize_field("bipartite", &self.all_bipartite())?;
        st.end()
    }
}

fn check_sizes(lambda: &Partition, mus: &[Partition]) -> Result<usize> {
    let n = lambda.size();
    if mus.is_empty() {
        return Err(Error::InvalidArgument("at least one μ is required".into()));
    }
    for mu in mus {
        if mu.size() != n {
            return Err(Error::SizeMismatch { expected: n, actual: mu.size() });
        }
    }
    Ok(n)
}

/// Elements of `𝔉^λ_{μ⁰..μᵏ}`, or of `𝔉̃` when `bipartite_only` (every `δ_i`
/// bipartite). Chains are extended one matching at a time and cut as soon as a
/// `Λ` condition fails.
pub fn enumerate_f(lambda: &Partition, mus: &[Partition], bipartite_only: bool) -> Result<Vec<MatchTuple>> {
    let n = check_sizes(lambda, mus)?;
    let k = mus.len() - 1;
    let target = delta_lambda(lambda);
    let eps = epsilon(n);
    let pool: Vec<Matching> = all_matchings(n)
        .into_iter()
        .filter(|m| !bipartite_only || m.is_bipartite())
        .collect();
    if k == 0 {
        return Ok(if lambda_of(&eps, &target) == mus[0] {
            vec![MatchTuple { k, deltas: Vec::new() }]
        } else {
            Vec::new()
        });
    }
    fn extend(
        chain: &mut Vec<Matching>,
        prev: &Matching,
        mus: &[Partition],
        pool: &[Matching],
        target: &Matching,
        out: &mut Vec<MatchTuple>,
    ) {
        let i = chain.len();
        let k = mus.len() - 1;
        for d in pool {
            if lambda_of(prev, d) != mus[i] {
                continue;
            }
            if i + 1 == k {
                if lambda_of(d, target) == mus[k] {
                    let mut deltas = chain.clone();
                    deltas.push(d.clone());
                    out.push(MatchTuple { k, deltas });
                }
            } else {
                chain.push(d.clone());
                extend(chain, d, mus, pool, target, out);
                chain.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &eps, mus, &pool, &target, &mut out);
    Ok(out)
}

/// `|𝔉|` and `|𝔉̃|` for every key of degree `n`, from one pass over all chains.
pub fn count_f_all(k: usize, n: usize) -> BTreeMap<ProfileKey, (u64, u64)> {
    let pool = all_matchings(n);
    let eps = epsilon(n);
    let targets: Vec<(Partition, Matching)> =
        all_partitions(n).into_iter().map(|l| { let d = delta_lambda(&l); (l, d) }).collect();
    let partial: Vec<HashMap<ProfileKey, (u64, u64)>> = pool
        .par_iter()
        .map(|d0| {
            let mut acc: HashMap<ProfileKey, (u64, u64)> = HashMap::new();
            let mut chain = vec![d0.clone()];
            let mut lams = vec![lambda_of(&eps, d0)];
            fn rec(
                k: usize,
                pool: &[Matching],
                targets: &[(Partition, Matching)],
                chain: &mut Vec<Matching>,
                lams: &mut Vec<Partition>,
                acc: &mut HashMap<ProfileKey, (u64, u64)>,
            ) {
                if chain.len() == k {
                    let last = chain.last().unwrap();
                    let bip = chain.iter().all(Matching::is_bipartite) as u64;
                    for (lambda, t) in targets {
                        let mut mus = lams.clone();
                        mus.push(lambda_of(last, t));
                        let e = acc.entry(ProfileKey { lambda: lambda.clone(), mus }).or_default();
                        e.0 += 1;
                        e.1 += bip;
                    }
                    return;
                }
                for d in pool {
                    let l = lambda_of(chain.last().unwrap(), d);
                    chain.push(d.clone());
                    lams.push(l);
                    rec(k, pool, targets, chain, lams, acc);
                    chain.pop();
                    lams.pop();
                }
            }
            if k == 0 {
                for (lambda, t) in &targets {
                    let e = acc
                        .entry(ProfileKey { lambda: lambda.clone(), mus: vec![lambda_of(&eps, t)] })
                        .or_default();
                    e.0 += 1;
                    e.1 += 1;
                }
            } else {
                rec(k, &pool, &targets, &mut chain, &mut lams, &mut acc);
            }
            acc
        })
        .collect();
    let mut out: BTreeMap<ProfileKey, (u64, u64)> = BTreeMap::new();
    if k == 0 {
        // every δ₀ produced the same tally
        if let Some(first) = partial.into_iter().next() {
            out.extend(first);
        }
        return out;
    }
    for part in partial {
        for (key, (a, b)) in part {
            let e = out.entry(key).or_default();
            e.0 += a;
            e.1 += b;
        }
    }
    out
}

/// Number of matchings `δ` with `Λ(ε, δ) = λ`: `n!/z_λ · 2^{n−ℓ(λ)}`.
pub fn count_by_coset_type(lambda: &Partition) -> BigInt {
    let n = lambda.size();
    let v = factorial(n) / z_aut(lambda) * (BigInt::one() << (n - lambda.len()));
    if cfg!(debug_assertions) && n <= 5 {
        let eps = epsilon(n);
        let brute = all_matchings(n).iter().filter(|d| &lambda_of(&eps, d) == lambda).count();
        assert_eq!(v, BigInt::from(brute), "coset-type count for {lambda}");
    }
    v
}

/// `|B_n| = n! 2^n`
pub fn hyperoctahedral_order(n: usize) -> BigInt {
    factorial(n) << n
}

/// `φ^θ(μ) = |B_n| [p_μ] J_θ^{(2)}`, the zonal spherical function.
pub fn zonal_character(theta: &Partition, mu: &Partition) -> Result<BigRat> {
    let n = theta.size();
    if mu.size() != n {
        return Err(Error::SizeMismatch { expected: n, actual: mu.size() });
    }
    let jt = jack_table(n);
    let t = jt.index_of(theta).expect("θ ⊢ n");
    let m = jt.index_of(mu).expect("μ ⊢ n");
    Ok(jt.coeffs[t][m].eval(&rat(1)) * rat_from_big(hyperoctahedral_order(n)))
}

/// `|𝔉^λ_{μ⁰..μᵏ}| = Σ_ν φ^ν(λ) ∏ φ^ν(μ^i) / H_{2ν}` divided by
/// `|K_λ| |B_n|^k` with `|K_λ| = |B_n| n!/z_λ 2^{n−ℓ(λ)}`.
pub fn count_f_via_characters(lambda: &Partition, mus: &[Partition]) -> Result<BigInt> {
    let n = check_sizes(lambda, mus)?;
    let k = mus.len() - 1;
    let bn = rat_from_big(hyperoctahedral_order(n));
    let k_lambda = &bn * rat_from_big(count_by_coset_type(lambda));
    let mut sum = BigRat::zero();
    for nu in all_partitions(n) {
        let mut term = zonal_character(&nu, lambda)?;
        for mu in mus {
            term *= zonal_character(&nu, mu)?;
        }
        sum += term / rat_from_big(hook_products(&nu).h2);
    }
    let denom = k_lambda * num_traits::pow(bn, k);
    let v = sum / denom;
    if !v.is_integer() {
        return Err(Error::NonIntegral(format!("|𝔉| for {lambda}, {mus:?} came out as {v}")));
    }
    Ok(v.to_integer())
}
