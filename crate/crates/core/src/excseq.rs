//! Exhaustive enumeration of exceptional sequences and exact aggregation.
//!
//! Sequences are stored left to right, `(E_1, …, E_ℓ)`, with no Hom or Ext
//! from any term to a term on its left. They are generated right to left:
//! `E_ℓ` ranges over the whole catalog and each earlier term ranges over the
//! right perpendicular category of the terms already chosen.
//!
//! Positions are reported two ways. `pos_left = i` counts from the left;
//! `pos_right = ℓ + 1 − i` counts from the right and matches the event
//! `B_{ℓ,k}` "the `k`-th term from the right is relatively projective".

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{IndecCatalog, MemberSet};
use crate::error::{Error, Result};
use crate::orthogonality::padded_ranks;
use crate::poly::MultiPoly;

/// Bit `i` set means the statistic holds at left position `i + 1`.
pub type Indicator = u32;

const MAX_LEN: usize = 31;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExceptionalSequence(pub Vec<usize>);

impl ExceptionalSequence {
    /// Checks the vanishing conditions directly against the tables.
    pub fn is_exceptional(&self, cat: &IndecCatalog) -> bool {
        let t = &self.0;
        (0..t.len())
            .all(|i| (i + 1..t.len()).all(|j| cat.hom(t[j], t[i]) == 0 && cat.ext(t[j], t[i]) == 0))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequenceRecord {
    pub sequence: ExceptionalSequence,
    pub relproj: Vec<bool>,
    pub relinj: Vec<bool>,
    /// Block ranks of the right perpendicular category of the whole
    /// sequence, ascending, padded with zeros to `ℓ + 1` parts.
    pub perp_type: Vec<usize>,
    pub perp: MemberSet,
}

impl SequenceRecord {
    pub fn len(&self) -> usize {
        self.sequence.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.0.is_empty()
    }

    /// Relative projectivity of the term at right position `k` (1-based).
    pub fn relproj_right(&self, k: usize) -> bool {
        self.relproj[self.len() - k]
    }
}

fn check_len(cat: &IndecCatalog, len: usize) -> Result<()> {
    if len > cat.rank() || len > MAX_LEN {
        return Err(Error::LengthOutOfRange {
            len,
            rank: cat.rank(),
        });
    }
    Ok(())
}

/// Visits every sequence whose rightmost term is `last`, passing the
/// right-to-left terms, the relproj indicator, and the final perp.
fn walk_from(
    cat: &IndecCatalog,
    len: usize,
    last: usize,
    visit: &mut impl FnMut(&[usize], Indicator, MemberSet),
) {
    fn go(
        cat: &IndecCatalog,
        len: usize,
        stack: &mut Vec<usize>,
        proj: Indicator,
        perp: MemberSet,
        visit: &mut impl FnMut(&[usize], Indicator, MemberSet),
    ) {
        let depth = stack.len();
        if depth == len {
            visit(stack, proj, perp);
            return;
        }
        // the term chosen at this depth sits at left position len - depth
        let bit = 1 << (len - depth - 1);
        for e in perp.iter() {
            let is_proj = cat.ext_out(e).intersect(perp).is_empty();
            stack.push(e);
            go(
                cat,
                len,
                stack,
                if is_proj { proj | bit } else { proj },
                perp.intersect(cat.right_orth(e)),
                visit,
            );
            stack.pop();
        }
    }
    let all = cat.all();
    let is_proj = cat.ext_out(last).intersect(all).is_empty();
    let bit = if is_proj { 1 << (len - 1) } else { 0 };
    let mut stack = vec![last];
    go(
        cat,
        len,
        &mut stack,
        bit,
        all.intersect(cat.right_orth(last)),
        visit,
    );
}

/// Left-perp Ext-injectivity indicator of a left-to-right sequence.
fn relinj_indicator(cat: &IndecCatalog, terms: impl Iterator<Item = usize>) -> Indicator {
    let mut left = cat.all();
    let mut ind = 0;
    for (i, e) in terms.enumerate() {
        if cat.ext_in(e).intersect(left).is_empty() {
            ind |= 1 << i;
        }
        left = left.intersect(cat.left_orth(e));
    }
    ind
}

fn bits(ind: Indicator, len: usize) -> Vec<bool> {
    (0..len).map(|i| ind >> i & 1 == 1).collect()
}

/// Calls `f` on every exceptional sequence of length `len`, in deterministic
/// order: rightmost term in catalog order, then the next term to its left in
/// catalog order, and so on.
pub fn for_each_record(
    cat: &IndecCatalog,
    len: usize,
    mut f: impl FnMut(SequenceRecord) -> Result<()>,
) -> Result<()> {
    check_len(cat, len)?;
    if len == 0 {
        return f(SequenceRecord {
            sequence: ExceptionalSequence(Vec::new()),
            relproj: Vec::new(),
            relinj: Vec::new(),
            perp_type: padded_ranks(cat, cat.all(), 0)?,
            perp: cat.all(),
        });
    }
    let mut types: HashMap<MemberSet, Vec<usize>> = HashMap::new();
    let mut result = Ok(());
    for last in 0..cat.len() {
        walk_from(cat, len, last, &mut |rev, proj, perp| {
            if result.is_err() {
                return;
            }
            let terms: Vec<usize> = rev.iter().rev().copied().collect();
            let inj = relinj_indicator(cat, terms.iter().copied());
            let perp_type = match types.get(&perp) {
                Some(t) => t.clone(),
                None => match padded_ranks(cat, perp, len) {
                    Ok(t) => {
                        types.insert(perp, t.clone());
                        t
                    }
                    Err(e) => {
                        result = Err(e);
                        return;
                    }
                },
            };
            result = f(SequenceRecord {
                sequence: ExceptionalSequence(terms),
                relproj: bits(proj, len),
                relinj: bits(inj, len),
                perp_type,
                perp,
            });
        });
        result.clone()?;
    }
    result
}

/// All records, collected.
pub fn enumerate(cat: &IndecCatalog, len: usize) -> Result<Vec<SequenceRecord>> {
    let mut out = Vec::new();
    for_each_record(cat, len, |r| {
        out.push(r);
        Ok(())
    })?;
    Ok(out)
}

/// Per perpendicular type: all sequences, and those whose leftmost term is
/// relatively projective.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TypeCount {
    pub count: u64,
    pub leftmost_proj: u64,
}

/// Exact aggregate over all sequences of one length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub len: usize,
    pub total: u64,
    pub by_type: BTreeMap<Vec<usize>, TypeCount>,
    pub relproj: BTreeMap<Indicator, u64>,
    pub relinj: BTreeMap<Indicator, u64>,
}

impl Tally {
    fn empty(len: usize) -> Self {
        Tally {
            len,
            ..Tally::default()
        }
    }

    /// Commutative merge.
    pub fn merge(&mut self, other: &Tally) {
        debug_assert_eq!(self.len, other.len);
        self.total += other.total;
        for (k, v) in &other.by_type {
            let e = self.by_type.entry(k.clone()).or_default();
            e.count += v.count;
            e.leftmost_proj += v.leftmost_proj;
        }
        for (k, v) in &other.relproj {
            *self.relproj.entry(*k).or_default() += v;
        }
        for (k, v) in &other.relinj {
            *self.relinj.entry(*k).or_default() += v;
        }
    }

    /// Sequences with the statistic at every left position in `subset`.
    pub fn joint_count(joint: &BTreeMap<Indicator, u64>, subset: Indicator) -> u64 {
        joint
            .iter()
            .filter(|(a, _)| *a & subset == subset)
            .map(|(_, c)| c)
            .sum()
    }

    /// Count of sequences whose term at left position `i` (1-based) is
    /// relatively projective.
    pub fn relproj_at_left(&self, i: usize) -> u64 {
        Tally::joint_count(&self.relproj, 1 << (i - 1))
    }

    pub fn relinj_at_left(&self, i: usize) -> u64 {
        Tally::joint_count(&self.relinj, 1 << (i - 1))
    }

    /// `P(B_{ℓ,k})`: the term at right position `k` is relatively projective.
    pub fn probability(&self, k: usize) -> Result<BigRational> {
        if k == 0 || k > self.len {
            return Err(Error::PositionOutOfRange {
                pos: k,
                len: self.len,
            });
        }
        Ok(BigRational::new(
            self.relproj_at_left(self.len + 1 - k).into(),
            self.total.into(),
        ))
    }

    /// Probability that the term at left position `j` is relatively injective.
    pub fn injective_probability(&self, j: usize) -> Result<BigRational> {
        if j == 0 || j > self.len {
            return Err(Error::PositionOutOfRange {
                pos: j,
                len: self.len,
            });
        }
        Ok(BigRational::new(
            self.relinj_at_left(j).into(),
            self.total.into(),
        ))
    }

    /// `Σ_α c_α z^α` over relproj indicators, variables by left position.
    pub fn multivariate_gf(&self) -> MultiPoly {
        let n = self.len;
        MultiPoly::from_terms(
            n,
            self.relproj
                .iter()
                .map(|(&a, &c)| ((0..n).map(|i| a >> i & 1).collect(), BigInt::from(c))),
        )
    }

    /// `Σ_sequences 2^(#relatively projective terms)`.
    pub fn signed_count(&self) -> BigUint {
        self.relproj
            .iter()
            .map(|(a, &c)| BigUint::from(c) << a.count_ones())
            .sum()
    }

    pub fn independence(&self) -> IndependenceReport {
        independence(&self.relproj, self.len, self.total)
    }

    pub fn injective_independence(&self) -> IndependenceReport {
        independence(&self.relinj, self.len, self.total)
    }
}

fn tally_subtree(cat: &IndecCatalog, len: usize, last: usize) -> Result<Tally> {
    let mut t = Tally::empty(len);
    let mut types: HashMap<MemberSet, Vec<usize>> = HashMap::new();
    let mut err = None;
    walk_from(cat, len, last, &mut |rev, proj, perp| {
        let ty = match types.get(&perp) {
            Some(ty) => ty,
            None => match padded_ranks(cat, perp, len) {
                Ok(ty) => types.entry(perp).or_insert(ty),
                Err(e) => {
                    err.get_or_insert(e);
                    return;
                }
            },
        };
        let inj = relinj_indicator(cat, rev.iter().rev().copied());
        t.total += 1;
        let e = t.by_type.entry(ty.clone()).or_default();
        e.count += 1;
        e.leftmost_proj += (proj & 1) as u64;
        *t.relproj.entry(proj).or_default() += 1;
        *t.relinj.entry(inj).or_default() += 1;
    });
    match err {
        Some(e) => Err(e),
        None => Ok(t),
    }
}

/// Aggregates all sequences of length `len`. Subtrees with a fixed rightmost
/// term run on up to `jobs` threads; the result does not depend on `jobs`.
pub fn tally(cat: &IndecCatalog, len: usize, jobs: usize) -> Result<Tally> {
    check_len(cat, len)?;
    if len == 0 {
        let mut t = Tally::empty(0);
        t.total = 1;
        t.by_type.insert(
            padded_ranks(cat, cat.all(), 0)?,
            TypeCount {
                count: 1,
                leftmost_proj: 0,
            },
        );
        t.relproj.insert(0, 1);
        t.relinj.insert(0, 1);
        return Ok(t);
    }
    let parts: Vec<Result<Tally>> = if jobs <= 1 {
        (0..cat.len()).map(|e| tally_subtree(cat, len, e)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| {
            (0..cat.len())
                .into_par_iter()
                .map(|e| tally_subtree(cat, len, e))
                .collect()
        })
    };
    let mut t = Tally::empty(len);
    for p in parts {
        t.merge(&p?);
    }
    Ok(t)
}

pub fn count(cat: &IndecCatalog, len: usize) -> Result<u64> {
    Ok(tally(cat, len, 1)?.total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetCheck {
    pub pos_left: Vec<usize>,
    pub pos_right: Vec<usize>,
    /// `total^(|S|-1) · #(all events in S)`
    pub lhs: BigUint,
    /// `∏_{k ∈ S} #(event k)`
    pub rhs: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndependenceReport {
    pub len: usize,
    pub total: u64,
    /// Event counts per left position.
    pub marginals: Vec<u64>,
    pub subsets_tested: usize,
    pub failures: Vec<SubsetCheck>,
}

impl IndependenceReport {
    pub fn independent(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Tests `total^(|S|-1) · #(∩_{k∈S} event_k) = ∏_{k∈S} #event_k` for every
/// nonempty subset `S` of positions.
pub fn independence(
    joint: &BTreeMap<Indicator, u64>,
    len: usize,
    total: u64,
) -> IndependenceReport {
    let marginals: Vec<u64> = (0..len)
        .map(|i| Tally::joint_count(joint, 1 << i))
        .collect();
    let mut failures = Vec::new();
    let subsets = if len == 0 { 0 } else { (1u64 << len) - 1 };
    for s in 1..=subsets {
        let s = s as Indicator;
        let size = s.count_ones();
        let lhs = num_traits::pow(BigUint::from(total), (size - 1) as usize)
            * BigUint::from(Tally::joint_count(joint, s));
        let rhs = (0..len)
            .filter(|i| s >> i & 1 == 1)
            .fold(BigUint::one(), |acc, i| acc * marginals[i]);
        if lhs != rhs {
            let pos_left: Vec<usize> = (0..len)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| i + 1)
                .collect();
            let pos_right = pos_left.iter().map(|&i| len + 1 - i).collect();
            failures.push(SubsetCheck {
                pos_left,
                pos_right,
                lhs,
                rhs,
            });
        }
    }
    IndependenceReport {
        len,
        total,
        marginals,
        subsets_tested: subsets as usize,
        failures,
    }
}

pub fn multivariate_gf(cat: &IndecCatalog, len: usize) -> Result<MultiPoly> {
    Ok(tally(cat, len, 1)?.multivariate_gf())
}

pub fn signed_count(cat: &IndecCatalog, len: usize) -> Result<BigUint> {
    Ok(tally(cat, len, 1)?.signed_count())
}

pub fn probability(cat: &IndecCatalog, len: usize, k: usize) -> Result<BigRational> {
    tally(cat, len, 1)?.probability(k)
}
