//! Explicit integer-matrix representations, reflection functors, and
//! Hom/Ext dimensions.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::quiver::{DynkinType, Quiver};

/// A representation of a quiver: a vector space `k^{dims[v]}` at each vertex
/// and a `dims[target] × dims[source]` matrix on each arrow, indexed like
/// [`Quiver::arrows`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Representation {
    pub fn zero(q: &Quiver) -> Self {
        Representation {
            dims: vec![0; q.vertex_count()],
            maps: vec![Matrix::zeros(0, 0); q.arrows().len()],
        }
    }

    pub fn simple(q: &Quiver, v: usize) -> Result<Self> {
        if v >= q.vertex_count() {
            return Err(Error::NoSuchVertex {
                vertex: v + 1,
                n: q.vertex_count(),
            });
        }
        let mut dims = vec![0; q.vertex_count()];
        dims[v] = 1;
        Ok(Representation::with_zero_maps(q, dims))
    }

    fn with_zero_maps(q: &Quiver, dims: Vec<usize>) -> Self {
        let maps = q
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation { dims, maps }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_simple_at(&self, v: usize) -> bool {
        self.dims[v] == 1 && self.total_dim() == 1
    }

    /// Checks matrix shapes against the quiver.
    pub fn validate(&self, q: &Quiver) -> Result<()> {
        if self.dims.len() != q.vertex_count() || self.maps.len() != q.arrows().len() {
            return Err(Error::QuiverMismatch);
        }
        for (a, m) in q.arrows().iter().zip(&self.maps) {
            if m.shape() != (self.dims[a.target], self.dims[a.source]) {
                return Err(Error::QuiverMismatch);
            }
        }
        Ok(())
    }
}

/// Interval module on the path segment from `a` to `b` of an `A` component:
/// one-dimensional on the segment, identity on arrows inside it.
pub fn interval_module(q: &Quiver, a: usize, b: usize) -> Result<Representation> {
    let err = |reason: &str| Error::InvalidInterval {
        a: a + 1,
        b: b + 1,
        reason: reason.to_string(),
    };
    let ca = q.component_of(a).ok_or(Error::NoSuchVertex {
        vertex: a + 1,
        n: q.vertex_count(),
    })?;
    let cb = q.component_of(b).ok_or(Error::NoSuchVertex {
        vertex: b + 1,
        n: q.vertex_count(),
    })?;
    if ca != cb {
        return Err(err("endpoints lie in different components"));
    }
    let comp = &q.components()[ca];
    if !matches!(comp.kind, DynkinType::A(_)) {
        return Err(err("interval modules exist only on A components"));
    }
    let pa = comp.vertices.iter().position(|&v| v == a).unwrap();
    let pb = comp.vertices.iter().position(|&v| v == b).unwrap();
    if pa > pb {
        return Err(err("start lies after end along the path"));
    }
    let mut dims = vec![0; q.vertex_count()];
    for &v in &comp.vertices[pa..=pb] {
        dims[v] = 1;
    }
    let maps = q
        .arrows()
        .iter()
        .map(|ar| {
            if dims[ar.source] == 1 && dims[ar.target] == 1 {
                Matrix::identity(1)
            } else {
                Matrix::zeros(dims[ar.target], dims[ar.source])
            }
        })
        .collect();
    Ok(Representation { dims, maps })
}

/// BGP reflection at a sink or source `v`. Returns the quiver with the
/// arrows at `v` reversed together with the reflected representation.
///
/// At a sink the new space at `v` is the kernel of `⊕ r(s(a)) → r(v)`; at a
/// source it is the cokernel of `r(v) → ⊕ r(t(a))`. Both use primitive
/// integer bases, so the output has integer matrices.
pub fn reflect(q: &Quiver, v: usize, r: &Representation) -> Result<(Quiver, Representation)> {
    r.validate(q)?;
    if v >= q.vertex_count() {
        return Err(Error::NoSuchVertex {
            vertex: v + 1,
            n: q.vertex_count(),
        });
    }
    if r.is_simple_at(v) {
        return Err(Error::ReflectsSimple(v + 1));
    }
    let incident: Vec<usize> = q
        .arrows()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.source == v || a.target == v)
        .map(|(i, _)| i)
        .collect();
    let flipped = q.flip_at(v);
    let mut out = r.clone();

    if q.is_sink(v) {
        // [r(a_1) | r(a_2) | ...] : ⊕ r(s(a_i)) → r(v)
        let blocks: Vec<&Matrix> = incident.iter().map(|&i| &r.maps[i]).collect();
        let total: usize = incident.iter().map(|&i| r.dims[q.arrows()[i].source]).sum();
        let combined = if blocks.is_empty() {
            Matrix::zeros(r.dims[v], 0)
        } else {
            Matrix::hstack(&blocks, r.dims[v])
        };
        debug_assert_eq!(combined.cols(), total);
        let kernel = linalg::nullspace(&combined)?;
        out.dims[v] = kernel.cols();
        let mut offset = 0;
        for &i in &incident {
            let d = r.dims[q.arrows()[i].source];
            out.maps[i] = kernel.row_block(offset, offset + d);
            offset += d;
        }
    } else if q.is_source(v) {
        // [r(a_1); r(a_2); ...] : r(v) → ⊕ r(t(a_i))
        let blocks: Vec<&Matrix> = incident.iter().map(|&i| &r.maps[i]).collect();
        let combined = if blocks.is_empty() {
            Matrix::zeros(0, r.dims[v])
        } else {
            Matrix::vstack(&blocks, r.dims[v])
        };
        let coker = linalg::left_nullspace(&combined)?;
        out.dims[v] = coker.rows();
        let mut offset = 0;
        for &i in &incident {
            let d = r.dims[q.arrows()[i].target];
            out.maps[i] = coker.col_block(offset, offset + d);
            offset += d;
        }
    } else {
        return Err(Error::NotSinkOrSource(v + 1));
    }
    out.validate(&flipped)?;
    Ok((flipped, out))
}

/// Dimension of `Hom(m, n)`: the solution space of `φ_t · m(a) = n(a) · φ_s`
/// over all arrows, found by exact elimination.
pub fn hom_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    m.validate(q)?;
    n.validate(q)?;
    // unknown φ_v is an n_v × m_v block, laid out row-major
    let mut offset = Vec::with_capacity(q.vertex_count());
    let mut unknowns = 0;
    for v in 0..q.vertex_count() {
        offset.push(unknowns);
        unknowns += n.dims[v] * m.dims[v];
    }
    let var = |v: usize, i: usize, j: usize| offset[v] + i * m.dims[v] + j;

    let mut rows = Vec::new();
    for (k, a) in q.arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (&m.maps[k], &n.maps[k]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = vec![0i64; unknowns];
                for l in 0..m.dims[t] {
                    row[var(t, i, l)] += ma[(l, j)];
                }
                for l in 0..n.dims[s] {
                    row[var(s, l, j)] -= na[(i, l)];
                }
                rows.push(row);
            }
        }
    }
    let eqs = Matrix::from_rows(&rows, unknowns);
    Ok(unknowns - linalg::rank(&eqs))
}

/// `dim Ext(m, n) = dim Hom(m, n) − ⟨dim m, dim n⟩` for a hereditary algebra.
pub fn ext_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    let hom = hom_dim(q, m, n)? as i64;
    let euler = q.euler_form(&m.dims, &n.dims)?;
    let ext = hom - euler;
    if ext < 0 {
        return Err(Error::Internal(format!(
            "negative Ext dimension {ext} between {:?} and {:?}",
            m.dims, n.dims
        )));
    }
    Ok(ext as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::parse("A2:>").unwrap()
    }

    #[test]
    fn interval_modules_on_a2() {
        let q = a2();
        let s1 = interval_module(&q, 0, 0).unwrap();
        assert_eq!(s1.dims, vec![1, 0]);
        let p1 = interval_module(&q, 0, 1).unwrap();
        assert_eq!(p1.dims, vec![1, 1]);
        assert_eq!(p1.maps[0], Matrix::identity(1));
        assert!(matches!(
            interval_module(&q, 1, 0),
            Err(Error::InvalidInterval { .. })
        ));
        let a3 = Quiver::parse("A3:<<").unwrap();
        assert_eq!(interval_module(&a3, 1, 2).unwrap().dims, vec![0, 1, 1]);
        let u = Quiver::parse("A1:+A1:").unwrap();
        assert!(interval_module(&u, 0, 1).is_err());
    }

    #[test]
    fn hom_examples() {
        let q = a2();
        let s1 = interval_module(&q, 0, 0).unwrap();
        let s2 = interval_module(&q, 1, 1).unwrap();
        let p1 = interval_module(&q, 0, 1).unwrap();
        assert_eq!(hom_dim(&q, &p1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&q, &p1, &s1).unwrap(), 1);
        assert_eq!(hom_dim(&q, &s2, &p1).unwrap(), 1);
        for x in [&s1, &s2, &p1] {
            assert_eq!(hom_dim(&q, x, x).unwrap(), 1);
            assert_eq!(ext_dim(&q, x, x).unwrap(), 0);
        }
    }

    #[test]
    fn ext_examples() {
        let q = a2();
        let s1 = interval_module(&q, 0, 0).unwrap();
        let s2 = interval_module(&q, 1, 1).unwrap();
        assert_eq!(ext_dim(&q, &s1, &s2).unwrap(), 1);
        assert_eq!(ext_dim(&q, &s2, &s1).unwrap(), 0);
    }

    #[test]
    fn mismatched_quiver_is_rejected() {
        let q = a2();
        let other = Quiver::parse("A3:>>").unwrap();
        let s = interval_module(&other, 0, 0).unwrap();
        assert_eq!(hom_dim(&q, &s, &s), Err(Error::QuiverMismatch));
    }

    #[test]
    fn reflect_at_sink() {
        let q = a2();
        let s1 = interval_module(&q, 0, 0).unwrap();
        let (q2, r) = reflect(&q, 1, &s1).unwrap();
        assert_eq!(q2, Quiver::parse("A2:<").unwrap());
        assert_eq!(r.dims, vec![1, 1]);
        assert!(!r.maps[0].is_zero());

        let p1 = interval_module(&q, 0, 1).unwrap();
        let (_, r) = reflect(&q, 1, &p1).unwrap();
        assert_eq!(r.dims, vec![1, 0]);
    }

    #[test]
    fn reflect_errors() {
        let q = Quiver::parse("A3:><").unwrap();
        let s2 = interval_module(&q, 1, 1).unwrap();
        assert_eq!(reflect(&q, 1, &s2), Err(Error::ReflectsSimple(2)));
        let mid = Quiver::parse("A3:>>").unwrap();
        let m = interval_module(&mid, 0, 2).unwrap();
        assert_eq!(reflect(&mid, 1, &m), Err(Error::NotSinkOrSource(2)));
    }

    #[test]
    fn reflect_twice_restores_dimension_and_homs() {
        let q = Quiver::parse("D4:>>>").unwrap();
        let center = 3;
        // sincere root (1,1,1,2) via reflections of a simple
        let s1 = Representation::simple(&q, 0).unwrap();
        let (q1, r1) = reflect(&q, center, &s1).unwrap();
        assert_eq!(r1.dims, vec![1, 0, 0, 1]);
        let (q2, r2) = reflect(&q1, center, &r1).unwrap();
        assert_eq!(q2, q);
        assert_eq!(r2.dims, s1.dims);
        assert_eq!(hom_dim(&q, &r2, &s1).unwrap(), 1);
    }
}
