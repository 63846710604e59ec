//! Quivers whose underlying graph is a disjoint union of paths and `D4` stars.
//!
//! Vertices are 0-based indices internally. The textual grammar and all
//! serialized output use 1-based vertex ids.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dynkin type of a connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D4,
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(m) => m,
            DynkinType::D4 => 4,
        }
    }

    pub fn coxeter_number(self) -> usize {
        match self {
            DynkinType::A(m) => m + 1,
            DynkinType::D4 => 6,
        }
    }

    /// Number of positive roots, which is also the number of indecomposables.
    pub fn positive_roots(self) -> usize {
        match self {
            DynkinType::A(m) => m * (m + 1) / 2,
            DynkinType::D4 => 12,
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(m) => write!(f, "A{m}"),
            DynkinType::D4 => write!(f, "D4"),
        }
    }
}

impl Serialize for DynkinType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// A connected component. For type A the vertices are listed in path order,
/// starting at the endpoint with the smaller index; for `D4` the three
/// leaves come first in increasing order, then the center.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub kind: DynkinType,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<Arrow>,
    components: Vec<Component>,
}

impl Quiver {
    /// Validates the arrows and classifies the connected components.
    pub fn new(n: usize, arrows: Vec<Arrow>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for a in &arrows {
            if a.source >= n || a.target >= n {
                return Err(Error::NoSuchVertex {
                    vertex: a.source.max(a.target) + 1,
                    n,
                });
            }
            if a.source == a.target {
                return Err(Error::NotDynkin(format!("loop at vertex {}", a.source + 1)));
            }
            if adj[a.source].contains(&a.target) {
                return Err(Error::NotDynkin(format!(
                    "multiple edges between {} and {}",
                    a.source + 1,
                    a.target + 1
                )));
            }
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }

        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut verts = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                verts.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            verts.sort_unstable();
            components.push(classify_component(&verts, &adj)?);
        }
        Ok(Quiver {
            n,
            arrows,
            components,
        })
    }

    /// Parses `A<n>:<orientation>`, `D4:<o1><o2><o3>`, or a `+`-separated
    /// union of those. In an `A` orientation, `>` at position `i` is the arrow
    /// `i → i+1` and `<` is `i+1 → i`. For `D4` the leaves are 1, 2, 3 and the
    /// center is 4; `>` at slot `j` is the arrow `leaf_j → center`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(parse_err(spec, "empty quiver spec"));
        }
        let mut n = 0;
        let mut arrows = Vec::new();
        for part in spec.split('+') {
            let part = part.trim();
            let (name, orient) = part
                .split_once(':')
                .ok_or_else(|| parse_err(part, "missing `:` after the type"))?;
            let dirs = orient
                .chars()
                .map(|c| match c {
                    '>' => Ok(true),
                    '<' => Ok(false),
                    _ => Err(parse_err(&c.to_string(), "orientation must use `>` or `<`")),
                })
                .collect::<Result<Vec<bool>>>()?;
            if let Some(rank) = name.strip_prefix('A') {
                let m: usize = rank
                    .parse()
                    .map_err(|_| parse_err(name, "expected A<n> with a positive integer n"))?;
                if m < 1 {
                    return Err(parse_err(name, "rank must be at least 1"));
                }
                if dirs.len() != m - 1 {
                    return Err(parse_err(
                        orient,
                        &format!("A{m} needs {} orientation characters", m - 1),
                    ));
                }
                for (i, &fwd) in dirs.iter().enumerate() {
                    let (s, t) = if fwd {
                        (n + i, n + i + 1)
                    } else {
                        (n + i + 1, n + i)
                    };
                    arrows.push(Arrow {
                        source: s,
                        target: t,
                    });
                }
                n += m;
            } else if name == "D4" {
                if dirs.len() != 3 {
                    return Err(parse_err(orient, "D4 needs 3 orientation characters"));
                }
                let center = n + 3;
                for (j, &inward) in dirs.iter().enumerate() {
                    let leaf = n + j;
                    let (s, t) = if inward {
                        (leaf, center)
                    } else {
                        (center, leaf)
                    };
                    arrows.push(Arrow {
                        source: s,
                        target: t,
                    });
                }
                n += 4;
            } else {
                return Err(parse_err(name, "component type must be A<n> or D4"));
            }
        }
        Quiver::new(n, arrows)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Sorted component types, the isomorphism class of the underlying graph.
    pub fn type_key(&self) -> Vec<DynkinType> {
        let mut key: Vec<DynkinType> = self.components.iter().map(|c| c.kind).collect();
        key.sort_unstable();
        key
    }

    pub fn component_of(&self, v: usize) -> Option<usize> {
        self.components.iter().position(|c| c.vertices.contains(&v))
    }

    /// Removes `v` with its arrows; later vertices shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Quiver> {
        self.check_vertex(v)?;
        let shift = |w: usize| if w > v { w - 1 } else { w };
        let arrows = self
            .arrows
            .iter()
            .filter(|a| a.source != v && a.target != v)
            .map(|a| Arrow {
                source: shift(a.source),
                target: shift(a.target),
            })
            .collect();
        Quiver::new(self.n - 1, arrows)
    }

    pub fn coxeter_number(&self) -> Result<usize> {
        match self.components.as_slice() {
            [c] => Ok(c.kind.coxeter_number()),
            _ => Err(Error::Disconnected),
        }
    }

    /// `⟨d, e⟩ = Σ_v d_v e_v − Σ_a d_{s(a)} e_{t(a)}`.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> Result<i64> {
        for x in [d, e] {
            if x.len() != self.n {
                return Err(Error::DimensionMismatch {
                    expected: self.n,
                    actual: x.len(),
                });
            }
        }
        let diag: i64 = d.iter().zip(e).map(|(&a, &b)| (a * b) as i64).sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| (d[a.source] * e[a.target]) as i64)
            .sum();
        Ok(diag - off)
    }

    /// Same underlying graph with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow {
                source: a.target,
                target: a.source,
            })
            .collect();
        Quiver {
            n: self.n,
            arrows,
            components: self.components.clone(),
        }
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.source != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|a| a.target != v)
    }

    /// Reverses every arrow incident to `v`, keeping arrow indices.
    pub fn flip_at(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| {
                if a.source == v || a.target == v {
                    Arrow {
                        source: a.target,
                        target: a.source,
                    }
                } else {
                    *a
                }
            })
            .collect();
        Quiver {
            n: self.n,
            arrows,
            components: self.components.clone(),
        }
    }

    /// All `2^(#arrows)` orientations of the underlying graph. Bit `i` of the
    /// enumeration index reverses arrow `i`; index 0 is `self`.
    pub fn orientations(&self) -> Vec<Quiver> {
        let m = self.arrows.len();
        (0u64..1 << m)
            .map(|mask| {
                let arrows = self
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        if mask >> i & 1 == 1 {
                            Arrow {
                                source: a.target,
                                target: a.source,
                            }
                        } else {
                            *a
                        }
                    })
                    .collect();
                Quiver {
                    n: self.n,
                    arrows,
                    components: self.components.clone(),
                }
            })
            .collect()
    }

    /// The component as a standalone quiver on `0..len`, plus the map from
    /// local to global vertex indices and from local to global arrow indices.
    pub fn component_quiver(&self, c: usize) -> (Quiver, Vec<usize>, Vec<usize>) {
        let mut verts = self.components[c].vertices.clone();
        verts.sort_unstable();
        let local = |v: usize| verts.binary_search(&v).ok();
        let mut arrows = Vec::new();
        let mut arrow_map = Vec::new();
        for (i, a) in self.arrows.iter().enumerate() {
            if let (Some(s), Some(t)) = (local(a.source), local(a.target)) {
                arrows.push(Arrow {
                    source: s,
                    target: t,
                });
                arrow_map.push(i);
            }
        }
        let q = Quiver::new(verts.len(), arrows).expect("component of a valid quiver");
        (q, verts, arrow_map)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NoSuchVertex {
                vertex: v + 1,
                n: self.n,
            })
        }
    }
}

fn parse_err(token: &str, reason: &str) -> Error {
    Error::Parse {
        token: token.to_string(),
        reason: reason.to_string(),
    }
}

fn classify_component(verts: &[usize], adj: &[Vec<usize>]) -> Result<Component> {
    let edges: usize = verts.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != verts.len() {
        return Err(Error::NotDynkin(format!(
            "component containing vertex {} has a cycle",
            verts[0] + 1
        )));
    }
    let max_deg = verts.iter().map(|&v| adj[v].len()).max().unwrap_or(0);
    if max_deg <= 2 {
        let start = verts
            .iter()
            .copied()
            .find(|&v| adj[v].len() <= 1)
            .expect("a tree has a leaf");
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
            path.push(next);
            prev = cur;
            cur = next;
        }
        return Ok(Component {
            kind: DynkinType::A(verts.len()),
            vertices: path,
        });
    }
    if verts.len() == 4 && max_deg == 3 {
        let center = verts
            .iter()
            .copied()
            .find(|&v| adj[v].len() == 3)
            .expect("degree-3 vertex");
        let mut vertices: Vec<usize> = verts.iter().copied().filter(|&v| v != center).collect();
        vertices.push(center);
        return Ok(Component {
            kind: DynkinType::D4,
            vertices,
        });
    }
    Err(Error::NotDynkin(format!(
        "component containing vertex {} is neither a path nor D4",
        verts[0] + 1
    )))
}

/// JSON view of a quiver with 1-based vertex ids.
#[derive(Serialize)]
pub struct QuiverSummary {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
    pub components: Vec<ComponentSummary>,
}

#[derive(Serialize)]
pub struct ComponentSummary {
    #[serde(rename = "type")]
    pub kind: DynkinType,
    pub vertices: Vec<usize>,
    pub coxeter_number: usize,
}

impl From<&Quiver> for QuiverSummary {
    fn from(q: &Quiver) -> Self {
        QuiverSummary {
            vertices: q.n,
            arrows: q
                .arrows
                .iter()
                .map(|a| [a.source + 1, a.target + 1])
                .collect(),
            components: q
                .components
                .iter()
                .map(|c| ComponentSummary {
                    kind: c.kind,
                    vertices: c.vertices.iter().map(|v| v + 1).collect(),
                    coxeter_number: c.kind.coxeter_number(),
                })
                .collect(),
        }
    }
}
