//! k-constellations encoded as `(k+2)`-tuples of matchings `(δ₋₁, δ₀, …, δ_k)`.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::factorial;
use crate::matchings::{all_matchings, delta_lambda, epsilon, lambda_of, Matching};
use crate::partitions::Partition;
use crate::series::ProfileKey;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelledConstellation {
    pub k: usize,
    /// `δ₋₁, δ₀, …, δ_k`
    pub deltas: Vec<Matching>,
}

/// Face type followed by the vertex types of colours `0..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Profile {
    pub face_type: Partition,
    pub vertex_types: Vec<Partition>,
}

impl From<Profile> for ProfileKey {
    fn from(p: Profile) -> Self {
        ProfileKey { lambda: p.face_type, mus: p.vertex_types }
    }
}

impl From<ProfileKey> for Profile {
    fn from(key: ProfileKey) -> Self {
        Profile { face_type: key.lambda, vertex_types: key.mus }
    }
}

impl LabelledConstellation {
    pub fn new(k: usize, deltas: Vec<Matching>) -> Result<Self> {
        if deltas.len() != k + 2 {
            return Err(Error::InvalidArgument(format!(
                "a {k}-constellation needs {} matchings, got {}",
                k + 2,
                deltas.len()
            )));
        }
        let n = deltas[0].n();
        if let Some(d) = deltas.iter().find(|d| d.n() != n) {
            return Err(Error::SizeMismatch { expected: n, actual: d.n() });
        }
        Ok(LabelledConstellation { k, deltas })
    }

    /// `(ε, δ₀, …, δ_{k−1}, δ_λ)`
    pub fn canonical(lambda: &Partition, interior: &[Matching]) -> Result<Self> {
        let n = lambda.size();
        let mut deltas = Vec::with_capacity(interior.len() + 2);
        deltas.push(epsilon(n));
        deltas.extend(interior.iter().cloned());
        deltas.push(delta_lambda(lambda));
        Self::new(interior.len(), deltas)
    }

    pub fn n(&self) -> usize {
        self.deltas[0].n()
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        LabelledConstellation {
            k: self.k,
            deltas: self.deltas.iter().map(|d| d.relabel(perm)).collect(),
        }
    }
}

pub fn profile(c: &LabelledConstellation) -> Profile {
    let d = &c.deltas;
    Profile {
        face_type: lambda_of(&d[0], &d[c.k + 1]),
        vertex_types: d.windows(2).map(|w| lambda_of(&w[0], &w[1])).collect(),
    }
}

/// Components of the union multigraph, each sorted, ordered by least element.
pub fn connected_components(c: &LabelledConstellation) -> Vec<Vec<usize>> {
    let m = 2 * c.n();
    let mut comp = vec![usize::MAX; m];
    let mut out = Vec::new();
    for start in 0..m {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for d in &c.deltas {
                let y = d.partner(x);
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

pub fn is_connected(c: &LabelledConstellation) -> bool {
    connected_components(c).len() == 1
}

/// The union multigraph admits a proper 2-colouring.
pub fn is_orientable(c: &LabelledConstellation) -> bool {
    let m = 2 * c.n();
    let mut colour = vec![u8::MAX; m];
    for start in 0..m {
        if colour[start] != u8::MAX {
            continue;
        }
        colour[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for d in &c.deltas {
                let y = d.partner(x);
                if colour[y] == u8::MAX {
                    colour[y] = 1 - colour[x];
                    queue.push_back(y);
                } else if colour[y] == colour[x] {
                    return false;
                }
            }
        }
    }
    true
}

/// `(δ₋₁, δ_k, δ_{k−1}, …, δ₀)`
pub fn dual(c: &LabelledConstellation) -> LabelledConstellation {
    let mut deltas = Vec::with_capacity(c.deltas.len());
    deltas.push(c.deltas[0].clone());
    deltas.extend(c.deltas[1..].iter().rev().cloned());
    LabelledConstellation { k: c.k, deltas }
}

/// `V − E + F` for every component, with `V` the number of vertex cycles, `E = k·n_c`
/// and `F` the number of face cycles inside it.
pub fn euler_characteristics(c: &LabelledConstellation) -> Vec<i64> {
    let comps = connected_components(c);
    let m = 2 * c.n();
    let mut which = vec![0; m];
    for (i, comp) in comps.iter().enumerate() {
        for &x in comp {
            which[x] = i;
        }
    }
    let cycles_per_comp = |a: &Matching, b: &Matching| {
        let mut counts = vec![0i64; comps.len()];
        let mut seen = vec![false; m];
        for start in 0..m {
            if seen[start] {
                continue;
            }
            counts[which[start]] += 1;
            let mut x = start;
            loop {
                seen[x] = true;
                let y = a.partner(x);
                seen[y] = true;
                x = b.partner(y);
                if x == start {
                    break;
                }
            }
        }
        counts
    };
    let d = &c.deltas;
    let faces = cycles_per_comp(&d[0], &d[c.k + 1]);
    let mut vertices = vec![0i64; comps.len()];
    for w in d.windows(2) {
        for (v, x) in vertices.iter_mut().zip(cycles_per_comp(&w[0], &w[1])) {
            *v += x;
        }
    }
    comps
        .iter()
        .enumerate()
        .map(|(i, comp)| vertices[i] - (c.k * comp.len() / 2) as i64 + faces[i])
        .collect()
}

/// Orientability filter for rooted counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientability {
    Any,
    Orientable,
    NonOrientable,
}

impl Orientability {
    fn admits(self, orientable: bool) -> bool {
        match self {
            Orientability::Any => true,
            Orientability::Orientable => orientable,
            Orientability::NonOrientable => !orientable,
        }
    }
}

fn double_factorial_odd(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, i| acc * BigInt::from(2 * i - 1))
}

/// Divides the number of connected labelled tuples by `(2n−1)!`. Only tuples
/// with `δ₋₁ = ε` are listed; relabelling carries them onto every other
/// `δ₋₁`, preserving profile, connectivity and orientability.
fn rooted_quotient(n: usize, with_eps: u64) -> Result<BigInt> {
    let labelled = double_factorial_odd(n) * BigInt::from(with_eps);
    let (q, r) = labelled.div_rem(&factorial(2 * n - 1));
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!(
            "{labelled} labelled tuples of size {n} is not a multiple of (2n−1)!"
        )));
    }
    Ok(q)
}

/// Rooted connected k-constellations with the given profile.
pub fn count_rooted_connected(k: usize, profile: &ProfileKey, filter: Orientability) -> Result<BigInt> {
    if profile.mus.len() != k + 1 {
        return Err(Error::InvalidArgument(format!(
            "a {k}-constellation profile has {} vertex types, got {}",
            k + 1,
            profile.mus.len()
        )));
    }
    let n = profile.lambda.size();
    if let Some(mu) = profile.mus.iter().find(|m| m.size() != n) {
        return Err(Error::SizeMismatch { expected: n, actual: mu.size() });
    }
    let pool = all_matchings(n);
    let eps = epsilon(n);
    fn rec(
        chain: &mut Vec<Matching>,
        key: &ProfileKey,
        pool: &[Matching],
        filter: Orientability,
        count: &mut u64,
    ) {
        let i = chain.len() - 1;
        for d in pool {
            if lambda_of(&chain[i], d) != key.mus[i] {
                continue;
            }
            chain.push(d.clone());
            if i == key.mus.len() - 1 {
                if lambda_of(&chain[0], d) == key.lambda {
                    let c = LabelledConstellation { k: key.mus.len() - 1, deltas: chain.clone() };
                    if is_connected(&c) && filter.admits(is_orientable(&c)) {
                        *count += 1;
                    }
                }
            } else {
                rec(chain, key, pool, filter, count);
            }
            chain.pop();
        }
    }
    let mut count = 0;
    rec(&mut vec![eps], profile, &pool, filter, &mut count);
    rooted_quotient(n, count)
}

/// Rooted connected counts `(all, orientable)` for every profile of size `n`.
pub fn count_rooted_all(k: usize, n: usize) -> Result<BTreeMap<ProfileKey, (BigInt, BigInt)>> {
    let pool = all_matchings(n);
    let eps = epsilon(n);
    let partial: Vec<HashMap<ProfileKey, (u64, u64)>> = pool
        .par_iter()
        .map(|d0| {
            let mut acc: HashMap<ProfileKey, (u64, u64)> = HashMap::new();
            let mut deltas = vec![eps.clone(), d0.clone()];
            fn rec(
                k: usize,
                pool: &[Matching],
                deltas: &mut Vec<Matching>,
                acc: &mut HashMap<ProfileKey, (u64, u64)>,
            ) {
                if deltas.len() == k + 2 {
                    let c = LabelledConstellation { k, deltas: deltas.clone() };
                    if is_connected(&c) {
                        let e = acc.entry(profile(&c).into()).or_default();
                        e.0 += 1;
                        e.1 += is_orientable(&c) as u64;
                    }
                    return;
                }
                for d in pool {
                    deltas.push(d.clone());
                    rec(k, pool, deltas, acc);
                    deltas.pop();
                }
            }
            rec(k, &pool, &mut deltas, &mut acc);
            acc
        })
        .collect();
    let mut totals: BTreeMap<ProfileKey, (u64, u64)> = BTreeMap::new();
    for part in partial {
        for (key, (a, o)) in part {
            let e = totals.entry(key).or_default();
            e.0 += a;
            e.1 += o;
        }
    }
    totals
        .into_iter()
        .map(|(key, (a, o))| Ok((key, (rooted_quotient(n, a)?, rooted_quotient(n, o)?))))
        .collect()
}

/// Reverses the orientation of the faces listed in `faces` (indices into the
/// parts of `λ`) of a canonical tuple. Each reversal fixes `ε` and `δ_λ`.
pub fn reverse_faces(lambda: &Partition, faces: &[usize]) -> Vec<usize> {
    let n = lambda.size();
    let mut perm: Vec<usize> = (0..2 * n).collect();
    let mut start = 0;
    for (f, &len) in lambda.parts().iter().enumerate() {
        if faces.contains(&f) {
            for t in 0..len {
                let r = start + (len - t) % len;
                perm[2 * (start + t)] = 2 * r + 1;
                perm[2 * (start + t) + 1] = 2 * r;
            }
        }
        start += len;
    }
    perm
}

/// Whether some choice of face orientations turns the interior matchings of a
/// canonical tuple into bipartite ones.
pub fn has_bipartite_orientation(lambda: &Partition, c: &LabelledConstellation) -> bool {
    let faces = lambda.len();
    (0u64..1 << faces).any(|mask| {
        let chosen: Vec<usize> = (0..faces).filter(|f| mask >> f & 1 == 1).collect();
        let r = c.relabel(&reverse_faces(lambda, &chosen));
        r.deltas[1..=c.k].iter().all(Matching::is_bipartite)
    })
}

/// Every profile of size `n` with `k+1` vertex types, as constellation profiles.
pub fn all_profiles(k: usize, n: usize) -> Vec<Profile> {
    crate::series::all_keys(k, n).into_iter().map(Profile::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchings::enumerate_f;
    use crate::partitions::all_partitions;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::from(parts)
    }

    fn m(n: usize, pairs: &[(usize, usize)]) -> Matching {
        Matching::from_pairs(n, pairs).unwrap()
    }

    fn key(parts: &[&[usize]]) -> ProfileKey {
        ProfileKey::new(p(parts[0]), parts[1..].iter().map(|x| p(x)).collect()).unwrap()
    }

    fn brute_rooted(k: usize, n: usize) -> BTreeMap<ProfileKey, (BigInt, BigInt)> {
        let pool = all_matchings(n);
        let mut tuples: Vec<Vec<Matching>> = vec![vec![]];
        for _ in 0..k + 2 {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    pool.iter().map(move |d| {
                        let mut t = t.clone();
                        t.push(d.clone());
                        t
                    })
                })
                .collect();
        }
        let mut acc: BTreeMap<ProfileKey, (u64, u64)> = BTreeMap::new();
        for deltas in tuples {
            let c = LabelledConstellation::new(k, deltas).unwrap();
            if is_connected(&c) {
                let e = acc.entry(profile(&c).into()).or_default();
                e.0 += 1;
                e.1 += is_orientable(&c) as u64;
            }
        }
        let f = factorial(2 * n - 1);
        acc.into_iter()
            .map(|(key, (a, o))| {
                let (a, o) = (BigInt::from(a), BigInt::from(o));
                assert!((&a % &f).is_zero() && (&o % &f).is_zero());
                (key, (a / &f, o / &f))
            })
            .collect()
    }

    #[test]
    fn profile_examples() {
        let a = m(2, &[(0, 2), (1, 3)]);
        let c = LabelledConstellation::canonical(&p(&[2]), &[a]).unwrap();
        assert_eq!(ProfileKey::from(profile(&c)), key(&[&[2], &[2], &[2]]));
        assert_eq!(connected_components(&c), vec![vec![0, 1, 2, 3]]);
        assert!(!is_orientable(&c));

        let c = LabelledConstellation::canonical(&p(&[1, 1]), &[epsilon(2)]).unwrap();
        assert_eq!(ProfileKey::from(profile(&c)), key(&[&[1, 1], &[1, 1], &[1, 1]]));
        assert_eq!(connected_components(&c).len(), 2);
        assert!(is_orientable(&c));
        assert_eq!(
            serde_json::to_string(&c).unwrap(),
            r#"{"k":1,"deltas":[[[0,1],[2,3]],[[0,1],[2,3]],[[0,1],[2,3]]]}"#
        );
    }

    #[test]
    fn rooted_examples() {
        let k22 = key(&[&[2], &[2], &[2]]);
        assert_eq!(count_rooted_connected(1, &k22, Orientability::Any).unwrap(), BigInt::from(1));
        assert_eq!(count_rooted_connected(1, &k22, Orientability::Orientable).unwrap(), BigInt::from(0));
        assert_eq!(count_rooted_connected(1, &k22, Orientability::NonOrientable).unwrap(), BigInt::from(1));
        let k1 = key(&[&[1], &[1], &[1]]);
        assert_eq!(count_rooted_connected(1, &k1, Orientability::Any).unwrap(), BigInt::from(1));
        assert!(count_rooted_connected(2, &k1, Orientability::Any).is_err());
    }

    #[test]
    fn bulk_counts_match_brute_force() {
        for (k, n) in [(1, 1), (1, 2), (1, 3), (2, 2), (0, 3)] {
            let bulk = count_rooted_all(k, n).unwrap();
            assert_eq!(bulk, brute_rooted(k, n), "k={k} n={n}");
            for (key, (a, o)) in &bulk {
                assert_eq!(&count_rooted_connected(k, key, Orientability::Any).unwrap(), a);
                assert_eq!(&count_rooted_connected(k, key, Orientability::Orientable).unwrap(), o);
            }
        }
    }

    #[test]
    fn duality_of_profiles_and_counts() {
        for (k, n) in [(1, 3), (2, 3)] {
            let pool = all_matchings(n);
            for l in all_partitions(n) {
                for a in &pool {
                    for b in pool.iter().take(if k == 2 { pool.len() } else { 1 }) {
                        let interior: Vec<Matching> = if k == 2 { vec![a.clone(), b.clone()] } else { vec![a.clone()] };
                        let c = LabelledConstellation::canonical(&l, &interior).unwrap();
                        let d = dual(&c);
                        assert_eq!(dual(&d), c);
                        let pc = profile(&c);
                        let pd = profile(&d);
                        assert_eq!(pd.face_type, pc.vertex_types[0]);
                        assert_eq!(pd.vertex_types[0], pc.face_type);
                        let mut rest = pc.vertex_types[1..].to_vec();
                        rest.reverse();
                        assert_eq!(&pd.vertex_types[1..], &rest[..]);
                        assert_eq!(is_orientable(&c), is_orientable(&d));
                    }
                }
            }
            let counts = count_rooted_all(k, n).unwrap();
            for (key, v) in &counts {
                let mut mus = vec![key.lambda.clone()];
                mus.extend(key.mus[1..].iter().rev().cloned());
                let dk = ProfileKey { lambda: key.mus[0].clone(), mus };
                assert_eq!(counts.get(&dk), Some(v), "{key} vs {dk}");
            }
        }
    }

    #[test]
    fn faces_lie_in_components_and_euler_bound() {
        for (k, n) in [(1, 3), (2, 2), (1, 4)] {
            let pool = all_matchings(n);
            for l in all_partitions(n) {
                for a in &pool {
                    let interior: Vec<Matching> = vec![a.clone(); k];
                    let c = LabelledConstellation::canonical(&l, &interior).unwrap();
                    let comps = connected_components(&c);
                    assert_eq!(comps.iter().map(Vec::len).sum::<usize>(), 2 * n);
                    // each face block of δ_λ lies in a single component
                    let mut start = 0;
                    for &len in l.parts() {
                        let block: Vec<usize> = (2 * start..2 * (start + len)).collect();
                        assert!(comps.iter().any(|cc| block.iter().all(|x| cc.contains(x))));
                        start += len;
                    }
                    for chi in euler_characteristics(&c) {
                        assert!(chi <= 2, "{c:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn face_reversals_fix_the_frame() {
        for n in 1..=5 {
            for l in all_partitions(n) {
                let all: Vec<usize> = (0..l.len()).collect();
                let perm = reverse_faces(&l, &all);
                assert_eq!(epsilon(n).relabel(&perm), epsilon(n));
                assert_eq!(delta_lambda(&l).relabel(&perm), delta_lambda(&l));
                assert!((0..2 * n).all(|i| perm[i] % 2 != i % 2));
            }
        }
    }

    #[test]
    fn canonical_orientability_criterion() {
        // bipartite union graph without bipartite interior matchings
        let c = LabelledConstellation::canonical(&p(&[1, 1]), &[m(2, &[(0, 2), (1, 3)])]).unwrap();
        assert!(is_orientable(&c));
        assert!(!c.deltas[1].is_bipartite());
        for (k, n) in [(1, 3), (2, 3)] {
            for key in crate::series::all_keys(k, n) {
                for t in enumerate_f(&key.lambda, &key.mus, false).unwrap() {
                    let c = LabelledConstellation::canonical(&key.lambda, &t.deltas).unwrap();
                    assert_eq!(ProfileKey::from(profile(&c)), key);
                    if t.all_bipartite() {
                        assert!(is_orientable(&c));
                    }
                    assert_eq!(is_orientable(&c), has_bipartite_orientation(&key.lambda, &c), "{key}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn relabelling_preserves_structure(
            n in 1usize..5,
            picks in proptest::collection::vec(0usize..1000, 3),
            perm in Just((0..8).collect::<Vec<usize>>()).prop_shuffle(),
        ) {
            let pool = all_matchings(n);
            let deltas: Vec<Matching> = picks.iter().map(|&i| pool[i % pool.len()].clone()).collect();
            let c = LabelledConstellation::new(1, deltas).unwrap();
            let perm: Vec<usize> = perm.into_iter().filter(|&x| x < 2 * n).collect();
            let r = c.relabel(&perm);
            prop_assert_eq!(profile(&r), profile(&c));
            prop_assert_eq!(is_orientable(&r), is_orientable(&c));
            prop_assert_eq!(is_connected(&r), is_connected(&c));
            prop_assert_eq!(is_orientable(&dual(&c)), is_orientable(&c));
        }
    }
}
