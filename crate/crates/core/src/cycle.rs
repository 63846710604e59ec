//! Subgraphs of the cycle graph `C_h`.
//!
//! Deleting `k + 1` of the `h` edges of `C_h` leaves `k + 1` paths. Their
//! edge counts form a nonnegative partition `λ` of `h − k − 1 = n − k`
//! (with `h = n + 1`). `S_h(λ)` is the set of such subgraphs of type `λ`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::factorial;

/// Desk-scale limit for the brute-force edge-subset scan.
pub const BRUTE_FORCE_MAX_H: usize = 14;

/// Sorted parts `λ_0 ≤ … ≤ λ_k`, zeros allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct NonnegPartition(Vec<usize>);

impl NonnegPartition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        NonnegPartition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `k`, one less than the number of parts.
    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `h = Σ (λ_i + 1)`.
    pub fn h(&self) -> usize {
        self.total() + self.0.len()
    }

    /// `n_p` for `p = 0..=max part`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let max = self.0.iter().copied().max().unwrap_or(0);
        let mut m = vec![0; max + 1];
        for &p in &self.0 {
            m[p] += 1;
        }
        m
    }

    pub fn multiplicity(&self, p: usize) -> usize {
        self.0.iter().filter(|&&x| x == p).count()
    }
}

impl std::fmt::Display for NonnegPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All nonnegative partitions of `total` into exactly `parts` parts, in
/// lexicographic order.
pub fn nonneg_partitions(total: usize, parts: usize) -> Vec<NonnegPartition> {
    fn rec(
        remaining: usize,
        slots: usize,
        min: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<NonnegPartition>,
    ) {
        if slots == 0 {
            if remaining == 0 {
                out.push(NonnegPartition(cur.clone()));
            }
            return;
        }
        // the remaining slots each take at least `p`
        let mut p = min;
        while p * slots <= remaining {
            cur.push(p);
            rec(remaining - p, slots - 1, p, cur, out);
            cur.pop();
            p += 1;
        }
    }
    let mut out = Vec::new();
    if parts >= 1 {
        rec(total, parts, 0, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

fn check(h: usize, lambda: &NonnegPartition) -> Result<()> {
    if lambda.0.is_empty() || lambda.h() != h {
        return Err(Error::InconsistentPartition {
            h,
            parts: lambda.0.clone(),
        });
    }
    Ok(())
}

/// `|S_h(λ)| = k! · h / ∏ n_p!`.
pub fn s_count_formula(h: usize, lambda: &NonnegPartition) -> Result<BigInt> {
    check(h, lambda)?;
    let denom = lambda
        .multiplicities()
        .iter()
        .fold(BigInt::from(1), |acc, &m| acc * factorial(m));
    let num = factorial(lambda.k()) * h;
    debug_assert!((&num % &denom).is_zero());
    Ok(num / denom)
}

/// Component lengths left after deleting the edges in `deleted` (sorted,
/// edge `i` joins vertices `i` and `i + 1 mod h`).
fn arc_lengths(h: usize, deleted: &[usize]) -> Vec<usize> {
    let m = deleted.len();
    let mut lens: Vec<usize> = (0..m)
        .map(|i| {
            let a = deleted[i];
            let b = if i + 1 < m {
                deleted[i + 1]
            } else {
                deleted[0] + h
            };
            b - a - 1
        })
        .collect();
    lens.sort_unstable();
    lens
}

fn for_each_subset(h: usize, size: usize, mut f: impl FnMut(&[usize])) {
    fn rec(
        start: usize,
        h: usize,
        size: usize,
        cur: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]),
    ) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for e in start..h {
            if h - e < size - cur.len() {
                break;
            }
            cur.push(e);
            rec(e + 1, h, size, cur, f);
            cur.pop();
        }
    }
    rec(0, h, size, &mut Vec::with_capacity(size), &mut f);
}

/// Counts `(k+1)`-edge deletions of `C_h` whose arcs have type `λ`.
pub fn s_count_bruteforce(h: usize, lambda: &NonnegPartition) -> Result<u64> {
    check(h, lambda)?;
    if h > BRUTE_FORCE_MAX_H {
        return Err(Error::TooLarge {
            what: "h",
            value: h,
            limit: BRUTE_FORCE_MAX_H,
        });
    }
    let mut count = 0;
    for_each_subset(h, lambda.0.len(), |del| {
        if arc_lengths(h, del) == lambda.0 {
            count += 1;
        }
    });
    Ok(count)
}

/// Brute-force tally of every type at once, for `k + 1` deleted edges.
pub fn s_counts_bruteforce(h: usize, k: usize) -> Result<BTreeMap<NonnegPartition, u64>> {
    if h > BRUTE_FORCE_MAX_H {
        return Err(Error::TooLarge {
            what: "h",
            value: h,
            limit: BRUTE_FORCE_MAX_H,
        });
    }
    let mut out = BTreeMap::new();
    for_each_subset(h, k + 1, |del| {
        *out.entry(NonnegPartition(arc_lengths(h, del))).or_insert(0) += 1;
    });
    Ok(out)
}

/// `X(a, b)`, doubled to stay integral: `2X(a,b) = 1` if `a = b`, else 2.
pub fn two_x(a: usize, b: usize) -> u64 {
    if a == b {
        1
    } else {
        2
    }
}

/// `M(a, b)`: number of ways to pick the fused pair of parts.
pub fn redundancy_m(a: usize, b: usize, n_a: usize, n_b: usize) -> usize {
    if a == b {
        n_a * n_a.saturating_sub(1) / 2
    } else {
        n_a * n_b
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTerm {
    pub a: usize,
    pub b: usize,
    pub fused: NonnegPartition,
    pub s_fused: BigInt,
    pub n_c: usize,
    pub two_x: u64,
    pub summand: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionLedger {
    pub lhs: BigInt,
    pub terms: Vec<FusionTerm>,
    pub rhs: BigInt,
    /// `None` when `k = 0` and the identity is vacuous.
    pub holds: Option<bool>,
}

/// `(k+1)|S_h(λ)| = Σ_{λ'} |S_h(λ')| · n'_c · 2X(a,b)`, the sum running over
/// the distinct ways to fuse two parts `a ≤ b` of `λ` into `c = a + b + 1`.
pub fn fusion_check(h: usize, lambda: &NonnegPartition) -> Result<FusionLedger> {
    let lhs = s_count_formula(h, lambda)? * (lambda.k() + 1);
    let mut terms = Vec::new();
    if lambda.k() == 0 {
        return Ok(FusionLedger {
            lhs,
            terms,
            rhs: BigInt::zero(),
            holds: None,
        });
    }
    let values: Vec<usize> = {
        let mut v = lambda.0.clone();
        v.dedup();
        v
    };
    for (i, &a) in values.iter().enumerate() {
        for &b in &values[i..] {
            if a == b && lambda.multiplicity(a) < 2 {
                continue;
            }
            let mut parts = lambda.0.clone();
            let ia = parts.iter().position(|&x| x == a).unwrap();
            parts.remove(ia);
            let ib = parts.iter().position(|&x| x == b).unwrap();
            parts.remove(ib);
            let c = a + b + 1;
            parts.push(c);
            let fused = NonnegPartition::new(parts);
            let s_fused = s_count_formula(h, &fused)?;
            let n_c = fused.multiplicity(c);
            let tx = two_x(a, b);
            let summand = &s_fused * n_c * tx;
            terms.push(FusionTerm {
                a,
                b,
                fused,
                s_fused,
                n_c,
                two_x: tx,
                summand,
            });
        }
    }
    let rhs: BigInt = terms.iter().map(|t| &t.summand).sum();
    Ok(FusionLedger {
        holds: Some(lhs == rhs),
        lhs,
        terms,
        rhs,
    })
}

/// `Σ_{i<j} (λ_i + λ_j + 2)`, which equals `k·h`.
pub fn pair_sum_identity(lambda: &NonnegPartition) -> usize {
    let p = &lambda.0;
    let mut s = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            s += p[i] + p[j] + 2;
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::binomial;

    fn np(p: &[usize]) -> NonnegPartition {
        NonnegPartition::new(p.to_vec())
    }

    #[test]
    fn partitions_enumerate() {
        assert_eq!(nonneg_partitions(0, 4), vec![np(&[0, 0, 0, 0])]);
        assert_eq!(nonneg_partitions(2, 2), vec![np(&[0, 2]), np(&[1, 1])]);
        assert!(nonneg_partitions(7, 5).contains(&np(&[0, 1, 2, 2, 2])));
        assert!(nonneg_partitions(3, 0).is_empty());
    }

    #[test]
    fn worked_example_h12() {
        let l = np(&[0, 1, 2, 2, 2]);
        assert_eq!(s_count_formula(12, &l).unwrap(), BigInt::from(48));
        assert_eq!(s_count_bruteforce(12, &l).unwrap(), 48);
        let ledger = fusion_check(12, &l).unwrap();
        let summands: Vec<BigInt> = ledger.terms.iter().map(|t| t.summand.clone()).collect();
        assert_eq!(summands, vec![24.into(), 72.into(), 72.into(), 72.into()]);
        assert_eq!(ledger.rhs, BigInt::from(240));
        assert_eq!(ledger.lhs, BigInt::from(5 * 48));
        assert_eq!(ledger.holds, Some(true));
        assert_eq!(
            s_count_formula(12, &np(&[0, 2, 2, 4])).unwrap(),
            BigInt::from(36)
        );
    }

    #[test]
    fn all_zero_partition() {
        let l = np(&[0, 0, 0, 0]);
        assert_eq!(s_count_formula(4, &l).unwrap(), BigInt::from(1));
        assert_eq!(s_count_bruteforce(4, &l).unwrap(), 1);
        let ledger = fusion_check(4, &l).unwrap();
        assert_eq!(ledger.terms.len(), 1);
        assert_eq!(ledger.terms[0].fused, np(&[0, 0, 1]));
        assert_eq!(ledger.rhs, BigInt::from(4));
        assert_eq!(ledger.holds, Some(true));
    }

    #[test]
    fn single_part_is_vacuous() {
        let ledger = fusion_check(5, &np(&[4])).unwrap();
        assert_eq!(ledger.holds, None);
        assert!(ledger.terms.is_empty());
    }

    #[test]
    fn inconsistent_h() {
        assert!(matches!(
            s_count_formula(11, &np(&[0, 1, 2, 2, 2])),
            Err(Error::InconsistentPartition { .. })
        ));
        assert!(matches!(
            s_count_bruteforce(16, &np(&[15])),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn remark_sum_for_h12_k4() {
        let total: u64 = nonneg_partitions(7, 5)
            .iter()
            .map(|l| s_count_bruteforce(12, l).unwrap())
            .sum();
        assert_eq!(BigInt::from(total), binomial(12, 5));
        assert_eq!(total, 792);
    }

    #[test]
    fn pair_sums() {
        assert_eq!(pair_sum_identity(&np(&[0, 1, 2, 2, 2])), 48);
        assert_eq!(pair_sum_identity(&np(&[0, 0])), 2);
        assert_eq!(pair_sum_identity(&np(&[0, 0, 0, 0])), 12);
    }

    #[test]
    fn redundancy() {
        assert_eq!(redundancy_m(2, 2, 3, 3), 3);
        assert_eq!(redundancy_m(0, 1, 1, 1), 1);
        assert_eq!(redundancy_m(2, 2, 1, 1), 0);
    }

    #[test]
    fn formula_matches_brute_force_small_h() {
        for h in 1..=9 {
            for k in 0..h {
                let brute = s_counts_bruteforce(h, k).unwrap();
                for l in nonneg_partitions(h - k - 1, k + 1) {
                    let b = brute.get(&l).copied().unwrap_or(0);
                    assert_eq!(
                        s_count_formula(h, &l).unwrap(),
                        BigInt::from(b),
                        "h={h} {l}"
                    );
                }
            }
        }
    }
}
