//! Simplicial complexes and graphs on labeled vertex sets.
//!
//! Vertices are labeled `1..=32` and sets of vertices are bitmasks. A complex
//! carries its ambient vertex set separately from its faces, so a vertex of the
//! ambient set need not be a face (a *ghost* vertex), and the void complex (no
//! faces at all) is distinct from the complex `{∅}`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest vertex label a [`VertexSet`] can hold.
pub const MAX_VERTICES: u32 = 32;

/// A set of vertices from `1..=32`, stored as a bitmask (vertex `v` is bit `v - 1`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u32) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// `{1, ..., m}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_VERTICES as usize, "at most {MAX_VERTICES} vertices");
        if m == 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << m) - 1)
        }
    }

    pub fn singleton(v: u32) -> Self {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        VertexSet(1 << (v - 1))
    }

    pub fn pair(a: u32, b: u32) -> Self {
        Self::singleton(a).union(Self::singleton(b))
    }

    /// Builds a set from 1-indexed labels, rejecting labels outside `1..=32`.
    pub fn try_from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Result<Self> {
        let mut bits = 0u32;
        for v in vertices {
            if !(1..=MAX_VERTICES).contains(&v) {
                return Err(Error::Invalid(format!("vertex label {v} outside 1..={MAX_VERTICES}")));
            }
            bits |= 1 << (v - 1);
        }
        Ok(VertexSet(bits))
    }

    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        Self::try_from_vertices(vertices).expect("vertex labels in 1..=32")
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, v: u32) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1 << (v - 1)) != 0
    }

    pub const fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_disjoint(self, other: VertexSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, v: u32) -> Self {
        self.union(Self::singleton(v))
    }

    pub fn without(self, v: u32) -> Self {
        self.difference(Self::singleton(v))
    }

    /// Largest label in the set, or 0 when empty.
    pub fn max_vertex(self) -> u32 {
        32 - self.0.leading_zeros()
    }

    /// Vertices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            Some(v + 1)
        })
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }

    /// All subsets, in increasing bitmask order (`∅` first, `self` last).
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0 as u64,
            next: Some(0),
        }
    }

    /// Lexicographic comparison of the sorted vertex lists.
    pub fn lex_cmp(self, other: VertexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for VertexSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let vertices = Vec::<u32>::deserialize(deserializer)?;
        VertexSet::try_from_vertices(vertices).map_err(serde::de::Error::custom)
    }
}

/// Iterator over the subsets of a [`VertexSet`]; see [`VertexSet::subsets`].
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = VertexSet;

    fn next(&mut self) -> Option<VertexSet> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some(((current | !self.mask) + 1) & self.mask)
        };
        Some(VertexSet(current as u32))
    }
}

/// A simple graph on an ambient vertex set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    ambient: VertexSet,
    edges: BTreeSet<(u32, u32)>,
}

impl Graph {
    /// Graph on `1..=m`; rejects loops, duplicate edges and endpoints outside `1..=m`.
    pub fn new(m: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if m > MAX_VERTICES as usize {
            return Err(Error::TooManyVertices {
                what: "graph",
                m,
                cap: MAX_VERTICES as usize,
            });
        }
        Self::on(VertexSet::full(m), edges)
    }

    pub fn on(ambient: VertexSet, edges: &[(u32, u32)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            for v in [a, b] {
                if !ambient.contains(v) {
                    return Err(Error::VertexOutOfRange { vertex: v, ambient });
                }
            }
            if a == b {
                return Err(Error::Invalid(format!("loop at vertex {a}")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Invalid(format!("duplicate edge {{{a},{b}}}")));
            }
        }
        Ok(Graph { ambient, edges: set })
    }

    /// Edgeless graph on `1..=m`.
    pub fn empty(m: usize) -> Self {
        Graph {
            ambient: VertexSet::full(m),
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(m: usize) -> Self {
        let ambient = VertexSet::full(m);
        let edges = ambient
            .iter()
            .flat_map(|a| ambient.iter().filter(move |&b| b > a).map(move |b| (a, b)))
            .collect();
        Graph { ambient, edges }
    }

    pub fn ambient(&self) -> VertexSet {
        self.ambient
    }

    pub fn vertex_count(&self) -> usize {
        self.ambient.len()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.edges.contains(&(a.min(b), a.max(b)))
    }

    pub fn neighbors(&self, v: u32) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for &(a, b) in &self.edges {
            if a == v {
                out = out.with(b);
            } else if b == v {
                out = out.with(a);
            }
        }
        out
    }

    /// Induced subgraph on `subset` (which must lie in the ambient set).
    pub fn induced(&self, subset: VertexSet) -> Graph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| subset.contains(a) && subset.contains(b))
            .collect();
        Graph {
            ambient: subset.intersection(self.ambient),
            edges,
        }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.ambient.len();
        self.edges.len() == n * n.saturating_sub(1) / 2
    }
}

/// A downward-closed family of faces over an ambient vertex set.
///
/// All faces are stored, sorted by bitmask. An empty face list is the void complex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimplicialComplex {
    ambient: VertexSet,
    faces: Vec<VertexSet>,
}

impl SimplicialComplex {
    /// Downward closure of `facets` over `ambient`. An empty facet list gives the void
    /// complex; `[∅]` gives `{∅}`.
    pub fn from_facets<I>(ambient: VertexSet, facets: I) -> Result<Self>
    where
        I: IntoIterator<Item = VertexSet>,
    {
        let mut faces = BTreeSet::new();
        for facet in facets {
            if !facet.is_subset(ambient) {
                let stray = facet.difference(ambient).iter().next().unwrap_or(0);
                return Err(Error::VertexOutOfRange { vertex: stray, ambient });
            }
            if faces.contains(&facet) {
                continue;
            }
            faces.extend(facet.subsets());
        }
        Ok(SimplicialComplex {
            ambient,
            faces: faces.into_iter().collect(),
        })
    }

    /// Complex on `1..=m` from facets given as 1-indexed vertex lists.
    pub fn from_vertex_lists(m: usize, facets: &[&[u32]]) -> Result<Self> {
        if m > MAX_VERTICES as usize {
            return Err(Error::TooManyVertices {
                what: "complex",
                m,
                cap: MAX_VERTICES as usize,
            });
        }
        let facets = facets
            .iter()
            .map(|f| VertexSet::try_from_vertices(f.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(VertexSet::full(m), facets)
    }

    /// Builds a complex from a face list that is already downward closed.
    pub(crate) fn from_closed_faces(ambient: VertexSet, mut faces: Vec<VertexSet>) -> Self {
        faces.sort_unstable();
        faces.dedup();
        debug_assert!(faces.iter().all(|f| f.is_subset(ambient)));
        SimplicialComplex { ambient, faces }
    }

    pub fn void(ambient: VertexSet) -> Self {
        SimplicialComplex {
            ambient,
            faces: Vec::new(),
        }
    }

    /// The complex `{∅}`: every ambient vertex is a ghost.
    pub fn empty_face(ambient: VertexSet) -> Self {
        SimplicialComplex {
            ambient,
            faces: vec![VertexSet::EMPTY],
        }
    }

    /// The full simplex on `1..=m`.
    pub fn simplex(m: usize) -> Self {
        let ambient = VertexSet::full(m);
        SimplicialComplex {
            ambient,
            faces: ambient.subsets().collect(),
        }
    }

    /// `m` isolated points.
    pub fn points(m: usize) -> Self {
        let ambient = VertexSet::full(m);
        let mut faces = vec![VertexSet::EMPTY];
        faces.extend(ambient.iter().map(VertexSet::singleton));
        Self::from_closed_faces(ambient, faces)
    }

    /// Boundary of the simplex on `1..=m` (all proper subsets).
    pub fn simplex_boundary(m: usize) -> Self {
        let ambient = VertexSet::full(m);
        let faces = ambient.subsets().filter(|&f| f != ambient).collect();
        Self::from_closed_faces(ambient, faces)
    }

    pub fn ambient(&self) -> VertexSet {
        self.ambient
    }

    /// Number of ambient vertices (ghosts included).
    pub fn m(&self) -> usize {
        self.ambient.len()
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// All faces, sorted by bitmask.
    pub fn faces(&self) -> &[VertexSet] {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: VertexSet) -> bool {
        self.faces.binary_search(&face).is_ok()
    }

    /// Vertices `v` with `{v}` a face.
    pub fn vertices(&self) -> VertexSet {
        self.faces
            .iter()
            .filter(|f| f.len() == 1)
            .fold(VertexSet::EMPTY, |acc, &f| acc.union(f))
    }

    pub fn ghosts(&self) -> VertexSet {
        self.ambient.difference(self.vertices())
    }

    /// Maximal faces, in lexicographic order of their vertex lists.
    pub fn facets(&self) -> Vec<VertexSet> {
        let mut facets: Vec<VertexSet> = self
            .faces
            .iter()
            .copied()
            .filter(|&f| self.ambient.difference(f).iter().all(|v| !self.contains(f.with(v))))
            .collect();
        facets.sort_by(|a, b| a.lex_cmp(*b));
        facets
    }

    /// Largest face size, or `None` for the void complex.
    pub fn max_face_size(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len()).max()
    }

    /// Face counts indexed by face size (`f[0]` counts the empty face).
    pub fn face_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_face_size().map_or(0, |s| s + 1)];
        for f in &self.faces {
            counts[f.len()] += 1;
        }
        counts
    }

    pub fn full_subcomplex(&self, subset: VertexSet) -> SimplicialComplex {
        let ambient = subset.intersection(self.ambient);
        let faces = self.faces.iter().copied().filter(|f| f.is_subset(ambient)).collect();
        SimplicialComplex { ambient, faces }
    }

    /// `lk(σ) = {τ : τ ∩ σ = ∅, τ ∪ σ ∈ K}` on the ambient set with `σ` removed.
    pub fn link(&self, sigma: VertexSet) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(sigma));
        }
        let faces = self
            .faces
            .iter()
            .filter(|f| sigma.is_subset(**f))
            .map(|f| f.difference(sigma))
            .collect();
        Ok(Self::from_closed_faces(self.ambient.difference(sigma), faces))
    }

    /// Pairs of non-ghost vertices that do not span an edge, in lexicographic order.
    pub fn missing_edges(&self) -> Vec<(u32, u32)> {
        let vertices = self.vertices();
        let mut out = Vec::new();
        for a in vertices.iter() {
            for b in vertices.iter().filter(|&b| b > a) {
                if !self.contains(VertexSet::pair(a, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// `Σ (-1)^{dim σ}` over all faces including `∅` (dimension −1).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces.iter().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    pub fn to_json(&self) -> ComplexJson {
        let m = self.ambient.max_vertex() as usize;
        let vertices = (self.ambient != VertexSet::full(m)).then(|| self.ambient.to_vec());
        ComplexJson {
            m,
            vertices,
            facets: self.facets().into_iter().map(VertexSet::to_vec).collect(),
        }
    }

    pub fn from_json(json: &ComplexJson) -> Result<Self> {
        if json.m > MAX_VERTICES as usize {
            return Err(Error::TooManyVertices {
                what: "complex",
                m: json.m,
                cap: MAX_VERTICES as usize,
            });
        }
        let ambient = match &json.vertices {
            Some(vs) => {
                let set = VertexSet::try_from_vertices(vs.iter().copied())?;
                if set.max_vertex() as usize > json.m {
                    return Err(Error::Invalid(format!("vertex list {set} exceeds m = {}", json.m)));
                }
                set
            }
            None => VertexSet::full(json.m),
        };
        let facets = json
            .facets
            .iter()
            .map(|f| {
                let set = VertexSet::try_from_vertices(f.iter().copied())?;
                if set.len() != f.len() {
                    return Err(Error::Invalid(format!("repeated vertex in facet {f:?}")));
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_facets(ambient, facets)
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = ComplexJson::deserialize(deserializer)?;
        SimplicialComplex::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// Wire form of a complex: `{"m": 4, "facets": [[1,2],[2,3]]}`.
///
/// `vertices` is only present when the ambient set is not `1..=m` (links and full
/// subcomplexes keep their original labels).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<u32>>,
    pub facets: Vec<Vec<u32>>,
}

/// Wire form of a graph: `{"m": 4, "edges": [[1,2],[2,3]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<u32>>,
    pub edges: Vec<[u32; 2]>,
}

impl Graph {
    pub fn to_json(&self) -> GraphJson {
        let m = self.ambient.max_vertex() as usize;
        GraphJson {
            m,
            vertices: (self.ambient != VertexSet::full(m)).then(|| self.ambient.to_vec()),
            edges: self.edges().map(|(a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        if json.m > MAX_VERTICES as usize {
            return Err(Error::TooManyVertices {
                what: "graph",
                m: json.m,
                cap: MAX_VERTICES as usize,
            });
        }
        let ambient = match &json.vertices {
            Some(vs) => VertexSet::try_from_vertices(vs.iter().copied())?,
            None => VertexSet::full(json.m),
        };
        let edges: Vec<(u32, u32)> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::on(ambient, &edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = GraphJson::deserialize(deserializer)?;
        Graph::from_json(&json).map_err(serde::de::Error::custom)
    }
}

/// The complex whose faces are the cliques of `g` (including `∅` and every vertex).
pub fn clique_complex(g: &Graph) -> SimplicialComplex {
    let ambient = g.ambient();
    let adjacency: Vec<(u32, VertexSet)> = ambient.iter().map(|v| (v, g.neighbors(v))).collect();
    let mut faces = vec![VertexSet::EMPTY];
    // Extend each clique only by vertices larger than its maximum, so each clique is
    // produced once.
    let mut stack: Vec<(VertexSet, VertexSet)> = adjacency
        .iter()
        .map(|&(v, nbrs)| {
            let above = VertexSet::from_bits(!((1u64 << v) - 1) as u32);
            (VertexSet::singleton(v), nbrs.intersection(above))
        })
        .collect();
    while let Some((clique, candidates)) = stack.pop() {
        faces.push(clique);
        for w in candidates.iter() {
            let nbrs = adjacency
                .iter()
                .find(|(u, _)| *u == w)
                .map(|&(_, n)| n)
                .unwrap_or_default();
            let above = VertexSet::from_bits(!((1u64 << w) - 1) as u32);
            stack.push((clique.with(w), candidates.intersection(nbrs).intersection(above)));
        }
    }
    SimplicialComplex::from_closed_faces(ambient, faces)
}

/// The 1-skeleton of `k` as a graph on the same ambient set.
pub fn underlying_graph(k: &SimplicialComplex) -> Graph {
    let edges = k
        .faces()
        .iter()
        .filter(|f| f.len() == 2)
        .map(|f| {
            let v = f.to_vec();
            (v[0], v[1])
        })
        .collect();
    Graph {
        ambient: k.ambient(),
        edges,
    }
}

/// Whether `k` is the clique complex of its 1-skeleton, ghost vertices aside.
pub fn is_flag(k: &SimplicialComplex) -> bool {
    if k.is_void() {
        return false;
    }
    let ghosts = k.ghosts();
    let cliques = clique_complex(&underlying_graph(k));
    let expected = cliques
        .faces()
        .iter()
        .copied()
        .filter(|f| !(f.len() == 1 && f.is_subset(ghosts)));
    expected.eq(k.faces().iter().copied())
}
