//! Perpendicular categories, their type decomposition, and relative
//! projectivity/injectivity.
//!
//! A term is called relatively projective when it is Ext-projective inside
//! the perpendicular category it was drawn from: `Ext(e, y) = 0` for every
//! member `y`. The perpendicular category of an exceptional collection is
//! an extension-closed exact abelian subcategory of a hereditary module
//! category, so ambient Ext agrees with Ext computed inside it.

use std::fmt;

use serde::Serialize;

use crate::catalog::{IndecCatalog, MemberSet};
use crate::error::{Error, Result};
use crate::quiver::DynkinType;

/// One connected block of a perpendicular category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub members: MemberSet,
    pub kind: DynkinType,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerpCategory {
    pub members: MemberSet,
    pub blocks: Vec<Block>,
}

impl PerpCategory {
    fn from_members(cat: &IndecCatalog, members: MemberSet) -> Result<Self> {
        Ok(PerpCategory {
            members,
            blocks: blocks(cat, members)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.kind.rank()).sum()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sorted block types.
    pub fn shape(&self) -> Vec<DynkinType> {
        let mut s: Vec<DynkinType> = self.blocks.iter().map(|b| b.kind).collect();
        s.sort_unstable();
        s
    }
}

/// Splits `members` into connected components of the non-orthogonality
/// graph and classifies each by its member count.
pub fn blocks(cat: &IndecCatalog, members: MemberSet) -> Result<Vec<Block>> {
    let mut left = members;
    let mut out = Vec::new();
    while let Some(start) = left.iter().next() {
        let mut comp = MemberSet::single(start);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut grown = MemberSet::EMPTY;
            for e in frontier.iter() {
                grown = grown.union(cat.linked(e));
            }
            let grown = grown.intersect(members);
            frontier = MemberSet(grown.0 & !comp.0);
            comp = comp.union(grown);
        }
        left = MemberSet(left.0 & !comp.0);
        out.push(Block {
            members: comp,
            kind: classify(comp.len())?,
        });
    }
    Ok(out)
}

fn classify(count: usize) -> Result<DynkinType> {
    if count == 12 {
        return Ok(DynkinType::D4);
    }
    // count = m(m+1)/2
    let mut m = 0;
    while m * (m + 1) / 2 < count {
        m += 1;
    }
    if m >= 1 && m * (m + 1) / 2 == count {
        Ok(DynkinType::A(m))
    } else {
        Err(Error::Classification { members: count })
    }
}

fn right_members(cat: &IndecCatalog, generators: &[usize]) -> MemberSet {
    generators
        .iter()
        .fold(cat.all(), |acc, &e| acc.intersect(cat.right_orth(e)))
}

fn left_members(cat: &IndecCatalog, generators: &[usize]) -> MemberSet {
    generators
        .iter()
        .fold(cat.all(), |acc, &e| acc.intersect(cat.left_orth(e)))
}

/// All `Y` with `Hom(E, Y) = Ext(E, Y) = 0` for every generator `E`.
pub fn right_perp(cat: &IndecCatalog, generators: &[usize]) -> Result<PerpCategory> {
    PerpCategory::from_members(cat, right_members(cat, generators))
}

/// All `Y` with `Hom(Y, E) = Ext(Y, E) = 0` for every generator `E`.
pub fn left_perp(cat: &IndecCatalog, generators: &[usize]) -> Result<PerpCategory> {
    PerpCategory::from_members(cat, left_members(cat, generators))
}

/// Component ranks of a perpendicular category, sorted ascending and padded
/// with zeros to `k + 1` parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PerpType(pub Vec<usize>);

impl PerpType {
    /// Number of parts equal to `p`, for each `p` up to the largest part.
    pub fn multiplicities(&self) -> Vec<usize> {
        let max = self.0.iter().copied().max().unwrap_or(0);
        let mut n = vec![0; max + 1];
        for &p in &self.0 {
            n[p] += 1;
        }
        n
    }
}

impl fmt::Display for PerpType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `λ` for a perpendicular category of a length-`k` sequence. Every block
/// must be of type `A`.
pub fn perp_type(p: &PerpCategory, k: usize) -> Result<PerpType> {
    let mut parts = Vec::with_capacity(k + 1);
    for b in &p.blocks {
        match b.kind {
            DynkinType::A(m) => parts.push(m),
            DynkinType::D4 => {
                return Err(Error::NotTypeA {
                    members: b.members.len(),
                })
            }
        }
    }
    parts.sort_unstable();
    let pad = (k + 1).saturating_sub(parts.len());
    let mut padded = vec![0; pad];
    padded.extend(parts);
    Ok(PerpType(padded))
}

/// Same as [`perp_type`] but on a bare member set, using block ranks for
/// any block type. Used for records of ambient `D4` quivers.
pub(crate) fn padded_ranks(cat: &IndecCatalog, members: MemberSet, k: usize) -> Result<Vec<usize>> {
    let mut parts: Vec<usize> = blocks(cat, members)?
        .iter()
        .map(|b| b.kind.rank())
        .collect();
    parts.sort_unstable();
    let mut padded = vec![0; (k + 1).saturating_sub(parts.len())];
    padded.extend(parts);
    Ok(padded)
}

pub fn is_rel_projective(cat: &IndecCatalog, e: usize, p: &PerpCategory) -> Result<bool> {
    if !p.members.contains(e) {
        return Err(Error::NotAMember(e));
    }
    Ok(cat.ext_out(e).intersect(p.members).is_empty())
}

pub fn is_rel_injective(cat: &IndecCatalog, e: usize, p: &PerpCategory) -> Result<bool> {
    if !p.members.contains(e) {
        return Err(Error::NotAMember(e));
    }
    Ok(cat.ext_in(e).intersect(p.members).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn catalog(spec: &str) -> IndecCatalog {
        IndecCatalog::new(&Quiver::parse(spec).unwrap()).unwrap()
    }

    #[test]
    fn perp_of_middle_projective_in_linear_a3() {
        let c = catalog("A3:<<");
        // 1 ← 2 ← 3: P_2 is supported on {1, 2}
        let p2 = c.find(&[1, 1, 0]).unwrap();
        let p = right_perp(&c, &[p2]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.blocks.len(), 2);
        assert_eq!(perp_type(&p, 1).unwrap(), PerpType(vec![1, 1]));
    }

    #[test]
    fn perp_of_simple_projective_in_linear_a3() {
        let c = catalog("A3:<<");
        let p1 = c.find(&[1, 0, 0]).unwrap();
        let p = right_perp(&c, &[p1]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.shape(), vec![DynkinType::A(2)]);
        assert_eq!(perp_type(&p, 1).unwrap(), PerpType(vec![0, 2]));
    }

    #[test]
    fn empty_generators_give_whole_catalog() {
        let c = catalog("A2:>+A1:");
        let p = right_perp(&c, &[]).unwrap();
        assert_eq!(p.members, c.all());
        assert_eq!(p.shape(), vec![DynkinType::A(1), DynkinType::A(2)]);
        assert_eq!(left_perp(&c, &[]).unwrap().members, c.all());
        let d = catalog("D4:>>>");
        assert_eq!(right_perp(&d, &[]).unwrap().shape(), vec![DynkinType::D4]);
        assert!(perp_type(&right_perp(&d, &[]).unwrap(), 0).is_err());
    }

    #[test]
    fn left_perp_of_s2_in_a2() {
        let c = catalog("A2:>");
        let p1 = c.find(&[1, 1]).unwrap();
        let s2 = c.find(&[0, 1]).unwrap();
        // Ext(S_1, S_2) ≠ 0 removes S_1; only P_1 survives
        let p = left_perp(&c, &[s2]).unwrap();
        assert_eq!(p.members, MemberSet::single(p1));
    }

    #[test]
    fn left_perp_is_right_perp_of_opposite() {
        let q = Quiver::parse("A4:><<").unwrap();
        let c = IndecCatalog::new(&q).unwrap();
        let op = IndecCatalog::new(&q.opposite()).unwrap();
        for e in 0..c.len() {
            for f in 0..c.len() {
                let gens = [e, f];
                assert_eq!(
                    left_perp(&c, &gens).unwrap().members,
                    right_perp(&op, &gens).unwrap().members
                );
            }
        }
    }

    #[test]
    fn projective_and_injective_flags() {
        let c = catalog("A2:>");
        let s1 = c.find(&[1, 0]).unwrap();
        let s2 = c.find(&[0, 1]).unwrap();
        let all = right_perp(&c, &[]).unwrap();
        assert!(!is_rel_projective(&c, s1, &all).unwrap());
        assert!(is_rel_projective(&c, s2, &all).unwrap());
        assert!(!is_rel_injective(&c, s2, &all).unwrap());
        assert!(is_rel_injective(&c, s1, &all).unwrap());
        // a member alone in its rank-one block
        let p1 = c.find(&[1, 1]).unwrap();
        let p = left_perp(&c, &[s2]).unwrap();
        assert!(is_rel_injective(&c, p1, &p).unwrap());
        assert!(is_rel_projective(&c, p1, &p).unwrap());
        assert_eq!(is_rel_projective(&c, s2, &p), Err(Error::NotAMember(s2)));
    }

    #[test]
    fn injective_is_projective_over_opposite() {
        let q = Quiver::parse("A4:<><").unwrap();
        let c = IndecCatalog::new(&q).unwrap();
        let op = IndecCatalog::new(&q.opposite()).unwrap();
        for g in 0..c.len() {
            let p = left_perp(&c, &[g]).unwrap();
            let pop = right_perp(&op, &[g]).unwrap();
            for e in p.members.iter() {
                assert_eq!(
                    is_rel_injective(&c, e, &p).unwrap(),
                    is_rel_projective(&op, e, &pop).unwrap()
                );
            }
        }
    }

    #[test]
    fn right_perp_is_antitone() {
        let c = catalog("A4:><>");
        for a in 0..c.len() {
            let pa = right_perp(&c, &[a]).unwrap().members;
            for b in 0..c.len() {
                assert!(right_perp(&c, &[a, b]).unwrap().members.is_subset(pa));
            }
        }
    }

    #[test]
    fn projectives_per_orbit_pair_for_k1() {
        // in A_n, among the length-one sequences of type (a, b) exactly
        // 2X(a,b) are projective; with h = 4 and (1,1): X = 1/2
        let c = catalog("A3:><");
        let all = right_perp(&c, &[]).unwrap();
        let mut by_type = std::collections::BTreeMap::<PerpType, (usize, usize)>::new();
        for e in 0..c.len() {
            let t = perp_type(&right_perp(&c, &[e]).unwrap(), 1).unwrap();
            let entry = by_type.entry(t).or_default();
            entry.0 += 1;
            entry.1 += is_rel_projective(&c, e, &all).unwrap() as usize;
        }
        assert_eq!(by_type[&PerpType(vec![1, 1])], (2, 1));
        assert_eq!(by_type[&PerpType(vec![0, 2])], (4, 2));
    }

    #[test]
    fn complete_type_is_all_zeros() {
        let p = PerpCategory {
            members: MemberSet::EMPTY,
            blocks: vec![],
        };
        assert_eq!(perp_type(&p, 3).unwrap(), PerpType(vec![0; 4]));
        assert_eq!(
            PerpType(vec![0, 1, 2, 2, 2]).multiplicities(),
            vec![1, 1, 3]
        );
    }
}
