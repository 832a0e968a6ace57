//! Integer partitions, Young-diagram statistics and α-deformed hook data.
//!
//! Boxes are addressed as `(row, col)`, both 1-based. The α-content of a box
//! is `α(col − 1) − (row − 1)`: with this binding the product formula for the
//! principal specialization `J_λ(u, u, …)` matches the Jack polynomials built
//! from their defining properties (e.g. `J_[1,1](u) = u(u − 1)`).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{factorial, rat, BPoly, BigRat};
use crate::{Error, Result};

/// Weakly decreasing sequence of positive integers.
///
/// Ordered reverse-lexicographically (`[3] < [2,1] < [1,1,1]`), which refines
/// the reverse of the dominance order and is the canonical iteration order
/// everywhere in the crate.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

/// A cell of a Young diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Box {
    pub row: usize,
    pub col: usize,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("{parts:?}: parts must be positive")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?}: parts must be weakly decreasing"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `[n]`
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// `[1^n]`
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts `ℓ(λ)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with 1-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        i.checked_sub(1).and_then(|j| self.0.get(j)).copied().unwrap_or(0)
    }

    /// `m_i(λ)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        Partition((1..=width).map(|c| self.0.iter().filter(|&&p| p >= c).count()).collect())
    }

    /// `2λ = [2λ_1, 2λ_2, …]`
    pub fn doubled(&self) -> Partition {
        Partition(self.0.iter().map(|p| 2 * p).collect())
    }

    pub fn boxes(&self) -> impl Iterator<Item = Box> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |col| Box { row: i + 1, col }))
    }

    pub fn arm(&self, b: Box) -> usize {
        self.part(b.row) - b.col
    }

    pub fn leg(&self, b: Box) -> usize {
        self.0.iter().skip(b.row).filter(|&&p| p >= b.col).count()
    }

    /// True when every part equals the same value.
    pub fn is_rectangular(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    /// Multiset union of the parts of `self` and `other`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Self::from_unsorted(parts)
    }

    /// Removes the parts of `sub` from `self`, if `sub` is a sub-multiset.
    pub fn difference(&self, sub: &Partition) -> Option<Partition> {
        let mut parts = self.0.clone();
        for p in &sub.0 {
            let pos = parts.iter().position(|q| q == p)?;
            parts.remove(pos);
        }
        Some(Partition(parts))
    }

    /// All distinct sub-multisets of the parts whose sum is `size`.
    pub fn sub_partitions(&self, size: usize) -> Vec<Partition> {
        // (value, multiplicity) in decreasing value order
        let mut groups: Vec<(usize, usize)> = Vec::new();
        for &p in &self.0 {
            match groups.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => groups.push((p, 1)),
            }
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(
            groups: &[(usize, usize)],
            remaining: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if remaining == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            let Some((&(v, m), rest)) = groups.split_first() else {
                return;
            };
            for take in (0..=m.min(remaining / v)).rev() {
                cur.extend(std::iter::repeat_n(v, take));
                rec(rest, remaining - take * v, cur, out);
                cur.truncate(cur.len() - take);
            }
        }
        rec(&groups, size, &mut cur, &mut out);
        out
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses comma-separated weakly decreasing parts, e.g. `3,3,2`. Brackets are
/// tolerated; the empty string is the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("`{s}`: `{t}` is not a part")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<&[usize]> for Partition {
    fn from(parts: &[usize]) -> Self {
        Partition::new(parts.to_vec()).expect("literal partition must be weakly decreasing")
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(parts: [usize; N]) -> Self {
        Partition::from(&parts[..])
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` in reverse lexicographic order.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn rec(remaining: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=max.min(remaining)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` with exactly `len` parts.
pub fn partitions_with_len(n: usize, len: usize) -> Vec<Partition> {
    all_partitions(n).into_iter().filter(|p| p.len() == len).collect()
}

/// `z_λ = ∏_i m_i(λ)! i^{m_i(λ)}`
pub fn z_aut(lambda: &Partition) -> BigInt {
    let mut z = BigInt::one();
    let mut i = 0;
    let parts = lambda.parts();
    while i < parts.len() {
        let v = parts[i];
        let m = parts[i..].iter().take_while(|&&p| p == v).count();
        z *= factorial(m) * BigInt::from(v).pow(m as u32);
        i += m;
    }
    z
}

/// Dominance order `μ ≤ λ`: equal sizes and every prefix sum of `μ` at most
/// the matching prefix sum of `λ`.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> bool {
    if mu.size() != lambda.size() {
        return false;
    }
    let (mut sm, mut sl) = (0, 0);
    for i in 1..=mu.len().max(lambda.len()) {
        sm += mu.part(i);
        sl += lambda.part(i);
        if sm > sl {
            return false;
        }
    }
    true
}

/// Deformed hook products and their classical specialisations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookProducts {
    /// `∏ (α·a + l + 1)` as a polynomial in `b`
    pub hook: BPoly,
    /// `∏ (α(a + 1) + l)` as a polynomial in `b`
    pub hook_prime: BPoly,
    /// classical hook product `H_λ`
    pub h: BigInt,
    /// `H_{2λ}`
    pub h2: BigInt,
}

/// A linear factor `α·slope + offset` of a deformed hook product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HookFactor {
    pub slope: usize,
    pub offset: usize,
}

impl HookFactor {
    pub fn to_poly(self) -> BPoly {
        // α·s + o = s·b + (s + o)
        BPoly::from_coeffs(vec![rat((self.slope + self.offset) as i64), rat(self.slope as i64)])
    }
}

/// The linear factors of `hook^(α)_λ · hook'^(α)_λ`, two per box.
pub fn norm_factors(lambda: &Partition) -> Vec<HookFactor> {
    lambda
        .boxes()
        .flat_map(|bx| {
            let a = lambda.arm(bx);
            let l = lambda.leg(bx);
            [
                HookFactor { slope: a, offset: l + 1 },
                HookFactor { slope: a + 1, offset: l },
            ]
        })
        .collect()
}

pub fn hook_products(lambda: &Partition) -> HookProducts {
    let mut hook = BPoly::one();
    let mut hook_prime = BPoly::one();
    let mut h = BigInt::one();
    for bx in lambda.boxes() {
        let a = lambda.arm(bx);
        let l = lambda.leg(bx);
        hook = &hook * &HookFactor { slope: a, offset: l + 1 }.to_poly();
        hook_prime = &hook_prime * &HookFactor { slope: a + 1, offset: l }.to_poly();
        h *= BigInt::from(a + l + 1);
    }
    let d = lambda.doubled();
    let h2 = d
        .boxes()
        .fold(BigInt::one(), |acc, bx| acc * BigInt::from(d.arm(bx) + d.leg(bx) + 1));
    HookProducts { hook, hook_prime, h, h2 }
}

/// `α(col − 1) − (row − 1)` as a polynomial in `b`.
pub fn alpha_content(bx: Box) -> BPoly {
    let c = (bx.col - 1) as i64;
    let r = (bx.row - 1) as i64;
    // (b + 1)c − r
    BPoly::from_ints(&[c - r, c])
}

/// Multiset union of `λ` and `μ` with `ones` extra parts equal to 1.
pub fn union_and_pad(lambda: &Partition, mu: &Partition, ones: usize) -> Partition {
    lambda.union(mu).union(&Partition::column(ones))
}

/// The rectangle with `q` parts of size `r`.
pub fn rectangular(q: usize, r: usize) -> Partition {
    Partition(vec![r; q])
}

/// `m_i`-free check used throughout the rectangular machinery.
pub fn has_no_unit_parts(mu: &Partition) -> bool {
    mu.multiplicity(1) == 0
}

/// Rational `n!/z_λ`, the number of permutations of cycle type `λ`.
pub fn class_size(lambda: &Partition) -> BigRat {
    BigRat::new(factorial(lambda.size()), z_aut(lambda))
}

/// Parses several partitions from one string. Lists are separated by `;`;
/// without `;` a comma list is cut into consecutive runs of total `size`
/// (`size` defaults to the total divided by `count`).
pub fn split_partitions(s: &str, size: Option<usize>, count: Option<usize>) -> Result<Vec<Partition>> {
    let out: Vec<Partition> = if s.contains(';') {
        s.split(';').map(str::parse).collect::<Result<_>>()?
    } else {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("`{s}`: `{t}` is not a part")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let total: usize = parts.iter().sum();
        let size = match (size, count) {
            (Some(n), _) => n,
            (None, Some(c)) if c > 0 && total % c == 0 => total / c,
            (None, Some(c)) => {
                return Err(Error::InvalidPartition(format!("`{s}` does not split into {c} partitions of equal size")))
            }
            (None, None) => total,
        };
        if size == 0 {
            return Err(Error::InvalidPartition(format!("`{s}` has no positive parts")));
        }
        let mut out = Vec::new();
        let mut run = Vec::new();
        let mut acc = 0;
        for p in parts {
            run.push(p);
            acc += p;
            if acc == size {
                out.push(Partition::new(std::mem::take(&mut run))?);
                acc = 0;
            } else if acc > size {
                return Err(Error::InvalidPartition(format!("`{s}` does not split into partitions of {size}")));
            }
        }
        if !run.is_empty() {
            return Err(Error::InvalidPartition(format!("`{s}` does not split into partitions of {size}")));
        }
        out
    };
    if let Some(c) = count {
        if out.len() != c {
            return Err(Error::InvalidArgument(format!("expected {c} partitions, got {}", out.len())));
        }
    }
    if let Some(n) = size {
        if let Some(p) = out.iter().find(|p| p.size() != n) {
            return Err(Error::SizeMismatch { expected: n, actual: p.size() });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::alpha_shift;
    use proptest::prelude::*;

    /// Partition counts from Euler's pentagonal recurrence.
    fn partition_count(n: usize) -> usize {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                p[m] += sign * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += sign * p[m - g2];
                }
                k += 1;
            }
        }
        p[n] as usize
    }

    #[test]
    fn counts_and_order() {
        assert_eq!(all_partitions(4).len(), 5);
        assert_eq!(all_partitions(0), vec![Partition::empty()]);
        assert_eq!(all_partitions(9).len(), 30);
        for n in 0..=15 {
            assert_eq!(all_partitions(n).len(), partition_count(n), "n={n}");
        }
        let p4 = all_partitions(4);
        assert_eq!(p4[0], Partition::from([4]));
        assert_eq!(p4[4], Partition::from([1, 1, 1, 1]));
        assert!(p4.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn z_examples() {
        assert_eq!(z_aut(&Partition::from([3, 3, 2])), BigInt::from(36));
        assert_eq!(z_aut(&Partition::from([1, 1, 1])), BigInt::from(6));
        assert_eq!(z_aut(&Partition::from([7])), BigInt::from(7));
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 0..=10 {
            let total: BigRat = all_partitions(n).iter().map(class_size).sum();
            assert_eq!(total, BigRat::from_integer(factorial(n)));
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&[1, 1].into(), &[2].into()));
        assert!(!dominance_leq(&[2].into(), &[1, 1].into()));
        assert!(dominance_leq(&[2, 2].into(), &[3, 1].into()));
        assert!(!dominance_leq(&[2].into(), &[3].into()));
        // incomparable pair
        assert!(!dominance_leq(&[3, 1, 1, 1].into(), &[2, 2, 2].into()));
        assert!(!dominance_leq(&[2, 2, 2].into(), &[3, 1, 1, 1].into()));
    }

    #[test]
    fn dominance_is_partial_order() {
        for n in 1..=8 {
            let ps = all_partitions(n);
            for a in &ps {
                assert!(dominance_leq(a, a));
                for b in &ps {
                    if a != b && dominance_leq(a, b) {
                        assert!(!dominance_leq(b, a));
                        // refined by the canonical order
                        assert!(b < a);
                    }
                    for c in &ps {
                        if dominance_leq(a, b) && dominance_leq(b, c) {
                            assert!(dominance_leq(a, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hook_examples() {
        // λ = [2]: hook = α + 1, hook' = 2α²
        let hp = hook_products(&[2].into());
        assert_eq!(hp.hook, alpha_shift(&BPoly::from_ints(&[1, 1])));
        assert_eq!(hp.hook_prime, alpha_shift(&BPoly::from_ints(&[0, 0, 2])));
        assert_eq!(hook_products(&[2, 1].into()).h, BigInt::from(3));
        let hp = hook_products(&[1].into());
        assert_eq!(hp.hook, BPoly::one());
        assert_eq!(hp.hook_prime, BPoly::alpha());
        assert_eq!(hp.h2, BigInt::from(2));
    }

    #[test]
    fn hooks_at_b_zero_are_classical() {
        for n in 1..=8 {
            for lam in all_partitions(n) {
                let hp = hook_products(&lam);
                let h = BigRat::from_integer(hp.h.clone());
                assert_eq!(hp.hook.eval_int(0), h);
                assert_eq!(hp.hook_prime.eval_int(0), h);
                let via_factors = norm_factors(&lam)
                    .into_iter()
                    .fold(BPoly::one(), |acc, f| &acc * &f.to_poly());
                assert_eq!(via_factors, &hp.hook * &hp.hook_prime);
            }
        }
    }

    #[test]
    fn content_examples() {
        assert!(alpha_content(Box { row: 1, col: 1 }).is_zero());
        // second box of the first row carries α, first box of the second row −1
        assert_eq!(alpha_content(Box { row: 1, col: 2 }), BPoly::alpha());
        assert_eq!(alpha_content(Box { row: 2, col: 1 }), BPoly::from_int(-1));
    }

    #[test]
    fn union_and_rectangles() {
        assert_eq!(union_and_pad(&[3, 1].into(), &[2].into(), 0), Partition::from([3, 2, 1]));
        assert_eq!(union_and_pad(&[2].into(), &Partition::empty(), 3), Partition::from([2, 1, 1, 1]));
        assert_eq!(union_and_pad(&Partition::empty(), &Partition::empty(), 0), Partition::empty());
        assert_eq!(rectangular(1, 2), Partition::from([2]));
        assert_eq!(rectangular(3, 3), Partition::from([3, 3, 3]));
        assert_eq!(rectangular(2, 1), Partition::from([1, 1]));
    }

    #[test]
    fn parsing() {
        assert_eq!("3,3,2".parse::<Partition>().unwrap(), Partition::from([3, 3, 2]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert!("2,3".parse::<Partition>().is_err());
        assert!("2,0".parse::<Partition>().is_err());
        assert!("a".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&Partition::from([3, 3, 2])).unwrap(), "[3,3,2]");
    }

    #[test]
    fn sub_multisets() {
        let lam = Partition::from([2, 1, 1]);
        assert_eq!(lam.sub_partitions(2), vec![Partition::from([2]), Partition::from([1, 1])]);
        assert_eq!(lam.sub_partitions(0), vec![Partition::empty()]);
        assert_eq!(lam.difference(&[1, 1].into()), Some(Partition::from([2])));
        assert_eq!(lam.difference(&[3].into()), None);
    }

    proptest! {
        #[test]
        fn conjugate_is_involution(parts in proptest::collection::vec(1usize..6, 0..6)) {
            let p = Partition::from_unsorted(parts);
            prop_assert_eq!(p.conjugate().conjugate(), p.clone());
            prop_assert_eq!(p.conjugate().size(), p.size());
        }
    }

    #[test]
    fn splitting_lists() {
        let p = |v: &[usize]| Partition::from(v);
        assert_eq!(split_partitions("2,2", Some(2), None).unwrap(), vec![p(&[2]), p(&[2])]);
        assert_eq!(split_partitions("2,2", None, Some(1)).unwrap(), vec![p(&[2, 2])]);
        assert_eq!(split_partitions("1,1,2", Some(2), None).unwrap(), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(split_partitions("3,1;2,2", None, None).unwrap(), vec![p(&[3, 1]), p(&[2, 2])]);
        assert_eq!(split_partitions("2,1,1,4,2,2", None, Some(3)).unwrap().len(), 3);
        assert!(split_partitions("1,2", Some(3), None).is_err());
        assert!(split_partitions("2,2", Some(3), None).is_err());
        assert!(split_partitions("2,2", Some(2), Some(3)).is_err());
        assert!(split_partitions("2,x", Some(2), None).is_err());
    }
}
