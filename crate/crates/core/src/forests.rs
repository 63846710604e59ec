//! Rooted labeled forests on `{1..n}` and their vertex statistics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::catalog::IndecCatalog;
use crate::error::{Error, Result};
use crate::excseq::{self, independence, IndependenceReport, Indicator};
use crate::poly::UniPoly;
use crate::quiver::Quiver;

pub const MAX_N: usize = 8;

/// Parent map; `parent[v - 1]` is `None` when `v` is a root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedLabeledForest {
    parent: Vec<Option<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VertexClass {
    Root,
    Ascending,
    Descending,
}

impl RootedLabeledForest {
    /// Validates labels and acyclicity.
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if n == 0 {
            return Err(Error::Internal("a forest needs at least one vertex".into()));
        }
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p == 0 || p > n {
                    return Err(Error::NoSuchVertex { vertex: p, n });
                }
                if p == i + 1 {
                    return Err(Error::Internal(format!("vertex {p} is its own parent")));
                }
            }
        }
        if !acyclic(&parent) {
            return Err(Error::Internal("parent map has a cycle".into()));
        }
        Ok(RootedLabeledForest { parent })
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v - 1]
    }

    pub fn roots(&self) -> Vec<usize> {
        (1..=self.size())
            .filter(|&v| self.parent(v).is_none())
            .collect()
    }

    /// Indicator with bit `v - 1` set for each vertex `v` in `class`.
    fn indicator(&self, pred: impl Fn(VertexClass) -> bool) -> Indicator {
        (1..=self.size())
            .filter(|&v| pred(classify(self, v)))
            .fold(0, |acc, v| acc | 1 << (v - 1))
    }

    /// Prüfer code of the tree on `{0..n}` obtained by hanging every root
    /// from a new vertex `0`.
    pub fn prufer_code(&self) -> Vec<usize> {
        let n = self.size();
        let mut adj = vec![Vec::new(); n + 1];
        for v in 1..=n {
            let p = self.parent(v).unwrap_or(0);
            adj[v].push(p);
            adj[p].push(v);
        }
        let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
        let mut removed = vec![false; n + 1];
        let mut code = Vec::with_capacity(n.saturating_sub(1));
        for _ in 0..n.saturating_sub(1) {
            let leaf = (0..=n).find(|&v| !removed[v] && degree[v] == 1).unwrap();
            removed[leaf] = true;
            let nb = adj[leaf].iter().copied().find(|&u| !removed[u]).unwrap();
            degree[nb] -= 1;
            code.push(nb);
        }
        code
    }
}

fn acyclic(parent: &[Option<usize>]) -> bool {
    let n = parent.len();
    // 0 unvisited, 1 on the current path, 2 known to reach a root
    let mut state = vec![0u8; n];
    for start in 0..n {
        let mut path = Vec::new();
        let mut v = start;
        loop {
            match state[v] {
                2 => break,
                1 => return false,
                _ => {}
            }
            state[v] = 1;
            path.push(v);
            match parent[v] {
                Some(p) => v = p - 1,
                None => break,
            }
        }
        for u in path {
            state[u] = 2;
        }
    }
    true
}

pub fn classify(f: &RootedLabeledForest, v: usize) -> VertexClass {
    match f.parent(v) {
        None => VertexClass::Root,
        Some(p) if v > p => VertexClass::Ascending,
        Some(_) => VertexClass::Descending,
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Internal("forest size must be at least 1".into()));
    }
    if n > MAX_N {
        return Err(Error::TooLarge {
            what: "forest size n",
            value: n,
            limit: MAX_N,
        });
    }
    Ok(())
}

/// Visits every forest on `{1..n}` once, in lexicographic order of parent
/// maps with `ROOT` first.
pub fn for_each_forest(n: usize, mut visit: impl FnMut(&RootedLabeledForest)) -> Result<()> {
    check_n(n)?;
    let mut f = RootedLabeledForest {
        parent: vec![None; n],
    };
    loop {
        if acyclic(&f.parent) {
            visit(&f);
        }
        // odometer over {ROOT} ∪ ({1..n} \ {v})
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            let v = i + 1;
            let next = match f.parent[i] {
                None => Some(if v == 1 { 2 } else { 1 }),
                Some(p) => {
                    let q = if p + 1 == v { p + 2 } else { p + 1 };
                    (q <= n).then_some(q)
                }
            };
            match next {
                Some(q) if q <= n => {
                    f.parent[i] = Some(q);
                    break;
                }
                _ => f.parent[i] = None,
            }
        }
    }
}

pub fn enumerate_forests(n: usize) -> Result<Vec<RootedLabeledForest>> {
    let mut out = Vec::new();
    for_each_forest(n, |f| out.push(f.clone()))?;
    Ok(out)
}

pub fn forest_count(n: usize) -> Result<u64> {
    let mut c = 0;
    for_each_forest(n, |_| c += 1)?;
    Ok(c)
}

/// `Σ_F a^(#ascending vertices of F)`, by enumeration.
pub fn ascending_gf(n: usize) -> Result<UniPoly> {
    let mut coeffs = vec![0i64; n];
    for_each_forest(n, |f| {
        let asc = (1..=n)
            .filter(|&v| classify(f, v) == VertexClass::Ascending)
            .count();
        coeffs[asc] += 1;
    })?;
    Ok(UniPoly::from_i64(&coeffs))
}

/// `∏_{k=1}^{n-1} (k + 1 + (n − k) a)`.
pub fn ascending_gf_product(n: usize) -> UniPoly {
    (1..n).fold(UniPoly::constant(BigInt::from(1)), |acc, k| {
        acc.mul(&UniPoly::linear(BigInt::from(n - k), BigInt::from(k + 1)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestStatistics {
    pub n: usize,
    pub total: u64,
    /// Joint root-or-ascending indicator, bit `v - 1` for vertex `v`.
    pub root_or_ascending: BTreeMap<Indicator, u64>,
    pub root_or_descending: BTreeMap<Indicator, u64>,
    pub descending: BTreeMap<Indicator, u64>,
}

pub fn statistics(n: usize) -> Result<ForestStatistics> {
    let mut s = ForestStatistics {
        n,
        total: 0,
        root_or_ascending: BTreeMap::new(),
        root_or_descending: BTreeMap::new(),
        descending: BTreeMap::new(),
    };
    for_each_forest(n, |f| {
        s.total += 1;
        *s.root_or_ascending
            .entry(f.indicator(|c| c != VertexClass::Descending))
            .or_default() += 1;
        *s.root_or_descending
            .entry(f.indicator(|c| c != VertexClass::Ascending))
            .or_default() += 1;
        *s.descending
            .entry(f.indicator(|c| c == VertexClass::Descending))
            .or_default() += 1;
    })?;
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendingReport {
    pub n: usize,
    /// `P(D_k)` for `k = 1..n`.
    pub marginals: Vec<BigRational>,
    pub expected: Vec<BigRational>,
    pub independence: IndependenceReport,
}

impl DescendingReport {
    pub fn ok(&self) -> bool {
        self.marginals == self.expected && self.independence.independent()
    }
}

pub fn descending_independence_report(n: usize) -> Result<DescendingReport> {
    let s = statistics(n)?;
    let independence = independence(&s.descending, n, s.total);
    let marginals = independence
        .marginals
        .iter()
        .map(|&c| BigRational::new(c.into(), s.total.into()))
        .collect();
    let expected = (1..=n)
        .map(|k| BigRational::new((n - k).into(), (n + 1).into()))
        .collect();
    Ok(DescendingReport {
        n,
        marginals,
        expected,
        independence,
    })
}

/// The linearly oriented `A_n` quiver `1 ← 2 ← … ← n`.
pub fn linear_a(n: usize) -> Result<Quiver> {
    Quiver::parse(&format!("A{n}:{}", "<".repeat(n.saturating_sub(1))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionMatch {
    pub n: usize,
    pub forests: u64,
    pub sequences: u64,
    /// Root-or-ascending over forests against relative injectivity.
    pub injective_clause: bool,
    /// Root-or-descending over forests against relative projectivity.
    pub projective_clause: bool,
}

impl DistributionMatch {
    pub fn ok(&self) -> bool {
        self.injective_clause && self.projective_clause
    }
}

pub const MATCH_MAX_N: usize = 6;

/// Compares joint indicator distributions of forests with those of complete
/// exceptional sequences of linear `A_n`, vertex `k` against left position `k`.
pub fn match_excseq_distribution(n: usize, jobs: usize) -> Result<DistributionMatch> {
    if n > MATCH_MAX_N {
        return Err(Error::TooLarge {
            what: "forest size n",
            value: n,
            limit: MATCH_MAX_N,
        });
    }
    let s = statistics(n)?;
    let cat = IndecCatalog::new(&linear_a(n)?)?;
    let t = excseq::tally(&cat, n, jobs)?;
    Ok(DistributionMatch {
        n,
        forests: s.total,
        sequences: t.total,
        injective_clause: s.root_or_ascending == t.relinj,
        projective_clause: s.root_or_descending == t.relproj,
    })
}
