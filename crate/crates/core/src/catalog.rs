//! The catalog of all indecomposables of a Dynkin quiver together with their
//! pairwise Hom and Ext dimensions.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Arrow, DynkinType, Quiver};
use crate::rep::{self, Representation};

/// A set of catalog ids, stored as a bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberSet(pub u128);

impl MemberSet {
    pub const EMPTY: MemberSet = MemberSet(0);

    pub fn all(n: usize) -> Self {
        if n == 128 {
            MemberSet(u128::MAX)
        } else {
            MemberSet((1u128 << n) - 1)
        }
    }

    pub fn single(i: usize) -> Self {
        MemberSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersect(self, other: MemberSet) -> MemberSet {
        MemberSet(self.0 & other.0)
    }

    pub fn union(self, other: MemberSet) -> MemberSet {
        MemberSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: MemberSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Ids in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl FromIterator<usize> for MemberSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = MemberSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// Every indecomposable of a Dynkin quiver, one per isomorphism class, in
/// lexicographic order of dimension vectors, with Hom/Ext tables.
#[derive(Clone, Debug)]
pub struct IndecCatalog {
    quiver: Quiver,
    reps: Vec<Representation>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    right_orth: Vec<MemberSet>,
    left_orth: Vec<MemberSet>,
    ext_out: Vec<MemberSet>,
    ext_in: Vec<MemberSet>,
    linked: Vec<MemberSet>,
}

impl IndecCatalog {
    /// Builds the catalog. `A` components use interval modules; `D4`
    /// components use the closure of the simples under reflection functors.
    pub fn new(q: &Quiver) -> Result<Self> {
        let expected: usize = q.components().iter().map(|c| c.kind.positive_roots()).sum();
        if expected > 128 {
            return Err(Error::CatalogTooLarge(expected));
        }
        let mut reps = Vec::with_capacity(expected);
        for c in 0..q.components().len() {
            let (cq, vmap, amap) = q.component_quiver(c);
            let local = match q.components()[c].kind {
                DynkinType::A(_) => interval_catalog(&cq)?,
                DynkinType::D4 => reflection_closure(&cq)?,
            };
            reps.extend(local.iter().map(|r| embed(q, r, &vmap, &amap)));
        }
        reps.sort_by(|a, b| a.dims.cmp(&b.dims));
        IndecCatalog::from_reps(q, reps)
    }

    /// Computes the Hom/Ext tables for a list of pairwise non-isomorphic
    /// indecomposables.
    pub fn from_reps(q: &Quiver, reps: Vec<Representation>) -> Result<Self> {
        let size = reps.len();
        if size > 128 {
            return Err(Error::CatalogTooLarge(size));
        }
        let mut hom = vec![vec![0; size]; size];
        let mut ext = vec![vec![0; size]; size];
        for i in 0..size {
            for j in 0..size {
                hom[i][j] = rep::hom_dim(q, &reps[i], &reps[j])?;
                ext[i][j] = rep::ext_dim(q, &reps[i], &reps[j])?;
            }
        }
        let mask = |f: &dyn Fn(usize) -> bool| (0..size).filter(|&y| f(y)).collect::<MemberSet>();
        let right_orth = (0..size)
            .map(|e| mask(&|y| hom[e][y] == 0 && ext[e][y] == 0))
            .collect();
        let left_orth = (0..size)
            .map(|e| mask(&|y| hom[y][e] == 0 && ext[y][e] == 0))
            .collect();
        let ext_out = (0..size).map(|e| mask(&|y| ext[e][y] != 0)).collect();
        let ext_in = (0..size).map(|e| mask(&|y| ext[y][e] != 0)).collect();
        let linked = (0..size)
            .map(|e| mask(&|y| y != e && (hom[e][y] | ext[e][y] | hom[y][e] | ext[y][e]) != 0))
            .collect();
        Ok(IndecCatalog {
            quiver: q.clone(),
            reps,
            hom,
            ext,
            right_orth,
            left_orth,
            ext_out,
            ext_in,
            linked,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn rank(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn all(&self) -> MemberSet {
        MemberSet::all(self.len())
    }

    pub fn rep(&self, i: usize) -> &Representation {
        &self.reps[i]
    }

    pub fn dims(&self, i: usize) -> &[usize] {
        &self.reps[i].dims
    }

    /// Catalog id of the indecomposable with the given dimension vector.
    pub fn find(&self, dims: &[usize]) -> Option<usize> {
        self.reps
            .binary_search_by(|r| r.dims.as_slice().cmp(dims))
            .ok()
    }

    pub fn hom(&self, i: usize, j: usize) -> usize {
        self.hom[i][j]
    }

    pub fn ext(&self, i: usize, j: usize) -> usize {
        self.ext[i][j]
    }

    /// Ids `y` with `Hom(e, y) = Ext(e, y) = 0`.
    pub fn right_orth(&self, e: usize) -> MemberSet {
        self.right_orth[e]
    }

    /// Ids `y` with `Hom(y, e) = Ext(y, e) = 0`.
    pub fn left_orth(&self, e: usize) -> MemberSet {
        self.left_orth[e]
    }

    /// Ids `y` with `Ext(e, y) ≠ 0`.
    pub fn ext_out(&self, e: usize) -> MemberSet {
        self.ext_out[e]
    }

    /// Ids `y` with `Ext(y, e) ≠ 0`.
    pub fn ext_in(&self, e: usize) -> MemberSet {
        self.ext_in[e]
    }

    /// Ids `y ≠ e` joined to `e` by a nonzero Hom or Ext in either direction.
    pub fn linked(&self, e: usize) -> MemberSet {
        self.linked[e]
    }

    /// Catalog export rows.
    pub fn export(&self) -> Vec<CatalogEntry> {
        (0..self.len())
            .map(|i| CatalogEntry {
                id: i,
                dim: self.reps[i].dims.clone(),
                hom_row: self.hom[i].clone(),
                ext_row: self.ext[i].clone(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: usize,
    pub dim: Vec<usize>,
    pub hom_row: Vec<usize>,
    pub ext_row: Vec<usize>,
}

fn interval_catalog(q: &Quiver) -> Result<Vec<Representation>> {
    let path = &q.components()[0].vertices;
    let mut reps = Vec::new();
    for i in 0..path.len() {
        for j in i..path.len() {
            reps.push(rep::interval_module(q, path[i], path[j])?);
        }
    }
    Ok(reps)
}

type OrientationKey = Vec<(usize, usize)>;

fn orientation_key(q: &Quiver) -> OrientationKey {
    q.arrows().iter().map(|a| (a.source, a.target)).collect()
}

/// Indecomposables of a connected quiver obtained by closing the simples of
/// every orientation of its underlying graph under reflection functors and
/// keeping those that land on the orientation of `q`.
///
/// Each positive root carries exactly one indecomposable, so states are
/// deduplicated by orientation and dimension vector.
pub fn reflection_closure(q: &Quiver) -> Result<Vec<Representation>> {
    let target = orientation_key(q);
    let mut seen: BTreeSet<(OrientationKey, Vec<usize>)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    for o in q.orientations() {
        for v in 0..o.vertex_count() {
            let s = Representation::simple(&o, v)?;
            if seen.insert((orientation_key(&o), s.dims.clone())) {
                queue.push_back((o.clone(), s));
            }
        }
    }
    let mut found = Vec::new();
    while let Some((o, r)) = queue.pop_front() {
        if orientation_key(&o) == target {
            found.push(r.clone());
        }
        for v in 0..o.vertex_count() {
            if !(o.is_sink(v) || o.is_source(v)) || r.is_simple_at(v) {
                continue;
            }
            let (o2, r2) = rep::reflect(&o, v, &r)?;
            if r2.total_dim() == 0 {
                continue;
            }
            if seen.insert((orientation_key(&o2), r2.dims.clone())) {
                queue.push_back((o2, r2));
            }
        }
    }
    let expected = q.components()[0].kind.positive_roots();
    if found.len() != expected {
        return Err(Error::Internal(format!(
            "reflection closure found {} indecomposables, expected {expected}",
            found.len()
        )));
    }
    found.sort_by(|a, b| a.dims.cmp(&b.dims));
    Ok(found)
}

fn embed(q: &Quiver, r: &Representation, vmap: &[usize], amap: &[usize]) -> Representation {
    let mut dims = vec![0; q.vertex_count()];
    for (local, &global) in vmap.iter().enumerate() {
        dims[global] = r.dims[local];
    }
    let mut maps: Vec<Matrix> = q
        .arrows()
        .iter()
        .map(|a: &Arrow| Matrix::zeros(dims[a.target], dims[a.source]))
        .collect();
    for (local, &global) in amap.iter().enumerate() {
        maps[global] = r.maps[local].clone();
    }
    Representation { dims, maps }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Positive roots of D4 by closing the simple roots under simple
    /// reflections, independent of any representation.
    fn d4_roots() -> BTreeSet<Vec<usize>> {
        // leaves 0,1,2 joined to center 3
        let adj = |v: usize| -> Vec<usize> {
            if v == 3 {
                vec![0, 1, 2]
            } else {
                vec![3]
            }
        };
        let mut roots: BTreeSet<Vec<i64>> = (0..4)
            .map(|v| (0..4).map(|w| (w == v) as i64).collect())
            .collect();
        loop {
            let mut next = roots.clone();
            for r in &roots {
                for v in 0..4 {
                    let mut s = r.clone();
                    s[v] = adj(v).iter().map(|&w| r[w]).sum::<i64>() - r[v];
                    if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) {
                        next.insert(s);
                    }
                }
            }
            if next.len() == roots.len() {
                break;
            }
            roots = next;
        }
        roots
            .into_iter()
            .map(|r| r.into_iter().map(|x| x as usize).collect())
            .collect()
    }

    fn check_tables(c: &IndecCatalog) {
        let q = c.quiver();
        for i in 0..c.len() {
            assert_eq!(c.hom(i, i), 1);
            assert_eq!(c.ext(i, i), 0);
            for j in 0..c.len() {
                let euler = q.euler_form(c.dims(i), c.dims(j)).unwrap();
                assert_eq!(c.hom(i, j) as i64 - c.ext(i, j) as i64, euler);
            }
        }
    }

    #[test]
    fn a3_has_six_intervals() {
        for spec in ["A3:<<", "A3:><", "A3:<>", "A3:>>"] {
            let c = IndecCatalog::new(&Quiver::parse(spec).unwrap()).unwrap();
            assert_eq!(c.len(), 6);
            check_tables(&c);
        }
    }

    #[test]
    fn d4_catalog_realizes_all_roots() {
        let oracle = d4_roots();
        assert_eq!(oracle.len(), 12);
        assert!(oracle.contains(&vec![1, 1, 1, 2]));
        for o in Quiver::parse("D4:>>>").unwrap().orientations() {
            let c = IndecCatalog::new(&o).unwrap();
            let dims: BTreeSet<Vec<usize>> = (0..c.len()).map(|i| c.dims(i).to_vec()).collect();
            assert_eq!(dims, oracle);
            check_tables(&c);
        }
    }

    #[test]
    fn disjoint_union_has_no_cross_terms() {
        let c = IndecCatalog::new(&Quiver::parse("A1:+A1:").unwrap()).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(
            (c.hom(0, 1), c.ext(0, 1), c.hom(1, 0), c.ext(1, 0)),
            (0, 0, 0, 0)
        );
        let c = IndecCatalog::new(&Quiver::parse("A2:>+D4:<<>").unwrap()).unwrap();
        assert_eq!(c.len(), 15);
        check_tables(&c);
    }

    #[test]
    fn catalog_is_sorted_and_searchable() {
        let c = IndecCatalog::new(&Quiver::parse("A3:><").unwrap()).unwrap();
        for i in 1..c.len() {
            assert!(c.dims(i - 1) < c.dims(i));
        }
        assert_eq!(c.find(&[0, 1, 1]), Some(2));
        assert_eq!(c.find(&[1, 0, 1]), None);
    }

    #[test]
    fn reflections_reproduce_interval_tables() {
        // for type A the reflection closure is an independent construction
        for q in Quiver::parse("A4:<<<").unwrap().orientations() {
            let direct = IndecCatalog::new(&q).unwrap();
            let reps = reflection_closure(&q).unwrap();
            let via = IndecCatalog::from_reps(&q, reps).unwrap();
            assert_eq!(direct.export(), via.export());
        }
    }

    #[test]
    fn reflect_twice_preserves_hom_profile() {
        let q = Quiver::parse("D4:><>").unwrap();
        let c = IndecCatalog::new(&q).unwrap();
        for v in 0..4 {
            if !(q.is_sink(v) || q.is_source(v)) {
                continue;
            }
            for i in 0..c.len() {
                if c.rep(i).is_simple_at(v) {
                    continue;
                }
                let (q1, r1) = rep::reflect(&q, v, c.rep(i)).unwrap();
                let (q2, r2) = rep::reflect(&q1, v, &r1).unwrap();
                assert_eq!(q2, q);
                assert_eq!(r2.dims, c.rep(i).dims);
                for j in 0..c.len() {
                    assert_eq!(rep::hom_dim(&q, &r2, c.rep(j)).unwrap(), c.hom(i, j));
                    assert_eq!(rep::hom_dim(&q, c.rep(j), &r2).unwrap(), c.hom(j, i));
                }
            }
        }
    }

    #[test]
    fn opposite_quiver_transposes_tables() {
        let q = Quiver::parse("D4:>><").unwrap();
        let c = IndecCatalog::new(&q).unwrap();
        let op = IndecCatalog::new(&q.opposite()).unwrap();
        for i in 0..c.len() {
            assert_eq!(c.dims(i), op.dims(i));
            for j in 0..c.len() {
                assert_eq!(c.hom(i, j), op.hom(j, i));
                assert_eq!(c.ext(i, j), op.ext(j, i));
            }
        }
    }

    #[test]
    fn member_set_ops() {
        let s: MemberSet = [1, 4, 7].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 4, 7]);
        assert_eq!(s.len(), 3);
        assert!(s.contains(4) && !s.contains(5));
        assert!(MemberSet::single(4).is_subset(s));
        assert_eq!(MemberSet::all(128).len(), 128);
    }
}
