//! Finite abstract simplicial complexes stored by their maximal faces.
//!
//! Complexes are immutable after construction and canonically ordered, so they
//! can be hashed, compared and used as search-cache keys directly. The void
//! complex (no faces at all) and the empty complex {∅} are distinct values.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vectors::Polynomial;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate vertex {0} inside one face")]
    DuplicateVertex(VertexId),
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(VertexId),
    #[error("operation undefined on the void complex")]
    VoidComplex,
    #[error("cross polytope dimension must be >= 1, got {0}")]
    CrossPolytopeDimension(usize),
    #[error("cycle length must be >= 4 to stay flag, got {0}")]
    CycleLength(usize),
}

/// Vertex label. Labels are arbitrary nonnegative integers; a complex never
/// contains the same label twice.
#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A face: a strictly sorted set of vertices. The empty face is a valid face.
#[derive(
    Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Build a face from arbitrary labels, sorting them. Errors on duplicates.
    pub fn new<I: Into<VertexId> + Copy>(vertices: Vec<I>) -> Result<Self, ComplexError> {
        let mut vs: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        vs.sort_unstable();
        for w in vs.windows(2) {
            if w[0] == w[1] {
                return Err(ComplexError::DuplicateVertex(w[0]));
            }
        }
        Ok(Face(vs))
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    pub fn single(v: VertexId) -> Self {
        Face(vec![v])
    }

    pub fn edge(a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Face(vec![a, b])
        } else {
            Face(vec![b, a])
        }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    /// Number of vertices.
    pub fn cardinality(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        // both sorted: linear merge scan
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_disjoint_from(&self, other: &Face) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        out.sort_unstable();
        out.dedup();
        Face(out)
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().filter(|v| other.contains(**v)).copied().collect())
    }

    pub fn minus(&self, other: &Face) -> Face {
        Face(self.0.iter().filter(|v| !other.contains(**v)).copied().collect())
    }

    pub fn without(&self, v: VertexId) -> Face {
        Face(self.0.iter().filter(|w| **w != v).copied().collect())
    }

    pub fn with(&self, v: VertexId) -> Face {
        let mut out = self.0.clone();
        match out.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => out.insert(pos, v),
        }
        Face(out)
    }

    /// All subsets of the given cardinality, in lexicographic order.
    pub fn subsets_of_cardinality(&self, card: usize) -> Vec<Face> {
        let n = self.0.len();
        if card > n {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..card).collect();
        loop {
            out.push(Face(idx.iter().map(|&i| self.0[i]).collect()));
            // next combination
            let mut i = card;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if idx[i] != i + n - card {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..card {
                idx[j] = idx[j - 1] + 1;
            }
            if card == 0 {
                return out;
            }
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// Simple graph on vertex labels; the 1-skeleton of a complex, and the input
/// of clique-complex construction.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) {
        assert_ne!(a, b, "no loops");
        self.vertices.insert(a);
        self.vertices.insert(b);
        self.edges.insert(if a < b { (a, b) } else { (b, a) });
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&if a < b { (a, b) } else { (b, a) })
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    /// All cliques (as faces), including the empty clique and singletons.
    /// Enumeration extends each clique only by higher-labeled common neighbors.
    pub fn cliques(&self) -> Vec<Face> {
        let mut out = vec![Face::empty()];
        let verts: Vec<VertexId> = self.vertices.iter().copied().collect();
        let mut stack: Vec<(Vec<VertexId>, Vec<VertexId>)> = verts
            .iter()
            .map(|&v| {
                let ext: Vec<VertexId> =
                    verts.iter().copied().filter(|&w| w > v && self.has_edge(v, w)).collect();
                (vec![v], ext)
            })
            .collect();
        while let Some((clique, ext)) = stack.pop() {
            out.push(Face(clique.clone()));
            for (i, &w) in ext.iter().enumerate() {
                let next_ext: Vec<VertexId> =
                    ext[i + 1..].iter().copied().filter(|&u| self.has_edge(w, u)).collect();
                let mut next = clique.clone();
                next.push(w);
                stack.push((next, next_ext));
            }
        }
        out.sort();
        out
    }
}

/// Finite abstract simplicial complex, stored by its inclusion-maximal faces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplicialComplex {
    facets: BTreeSet<Face>,
    vertices: BTreeSet<VertexId>,
}

impl SimplicialComplex {
    /// The void complex: no faces at all, not even the empty face.
    pub fn void() -> Self {
        SimplicialComplex {
            facets: BTreeSet::new(),
            vertices: BTreeSet::new(),
        }
    }

    /// The complex {∅} whose only face is the empty face.
    pub fn empty_complex() -> Self {
        let mut facets = BTreeSet::new();
        facets.insert(Face::empty());
        SimplicialComplex {
            facets,
            vertices: BTreeSet::new(),
        }
    }

    pub fn point(v: VertexId) -> Self {
        SimplicialComplex::from_facets(vec![Face::single(v)]).expect("single vertex is valid")
    }

    /// Inclusion-maximal members of the input become the facets; subsumed and
    /// duplicate faces are dropped. An empty input yields the void complex.
    pub fn from_facets(faces: Vec<Face>) -> Result<Self, ComplexError> {
        let mut maximal: Vec<Face> = Vec::new();
        for face in faces {
            if maximal.iter().any(|m| face.is_subset_of(m)) {
                continue;
            }
            maximal.retain(|m| !m.is_subset_of(&face));
            maximal.push(face);
        }
        let mut vertices = BTreeSet::new();
        for f in &maximal {
            vertices.extend(f.vertices().iter().copied());
        }
        Ok(SimplicialComplex {
            facets: maximal.into_iter().collect(),
            vertices,
        })
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_empty_complex(&self) -> bool {
        self.facets.len() == 1 && self.facets.contains(&Face::empty())
    }

    /// dim = max facet cardinality - 1; {∅} has dimension -1, void has none.
    pub fn dimension(&self) -> Option<i64> {
        self.facets
            .iter()
            .map(|f| f.cardinality() as i64 - 1)
            .max()
    }

    /// All facets have the same cardinality. Vacuously true for the void complex.
    pub fn is_pure(&self) -> bool {
        let mut sizes = self.facets.iter().map(Face::cardinality);
        match sizes.next() {
            None => true,
            Some(first) => sizes.all(|s| s == first),
        }
    }

    pub fn facets(&self) -> impl Iterator<Item = &Face> {
        self.facets.iter()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn max_vertex_label(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    /// A label strictly above every label in use.
    pub fn fresh_vertex(&self) -> VertexId {
        VertexId(self.max_vertex_label().map_or(0, |v| v.0 + 1))
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        if face.is_empty() {
            return !self.is_void();
        }
        self.facets.iter().any(|f| face.is_subset_of(f))
    }

    pub fn edges(&self) -> Vec<Face> {
        self.faces_with_cardinality(2)
    }

    /// All faces with the given number of vertices, lexicographically sorted.
    pub fn faces_with_cardinality(&self, card: usize) -> Vec<Face> {
        if card == 0 {
            return if self.is_void() { Vec::new() } else { vec![Face::empty()] };
        }
        let mut out = BTreeSet::new();
        for facet in &self.facets {
            for sub in facet.subsets_of_cardinality(card) {
                out.insert(sub);
            }
        }
        out.into_iter().collect()
    }

    /// Faces of dimension k (cardinality k + 1); k = -1 yields [∅] when nonvoid.
    pub fn enumerate_faces(&self, k: i64) -> Vec<Face> {
        if k < -1 {
            return Vec::new();
        }
        self.faces_with_cardinality((k + 1) as usize)
    }

    /// Every face including the empty face, grouped in one sorted list.
    pub fn all_faces(&self) -> Vec<Face> {
        let mut out = BTreeSet::new();
        if !self.is_void() {
            out.insert(Face::empty());
        }
        for facet in &self.facets {
            for card in 1..=facet.cardinality() {
                for sub in facet.subsets_of_cardinality(card) {
                    out.insert(sub);
                }
            }
        }
        out.into_iter().collect()
    }

    /// f-polynomial: coefficient i counts the faces with i vertices (f_{-1} = 1).
    pub fn f_vector(&self) -> Result<Polynomial, ComplexError> {
        if self.is_void() {
            return Err(ComplexError::VoidComplex);
        }
        let dim = self.dimension().expect("nonvoid");
        let mut counts = vec![BigInt::from(1)];
        for card in 1..=(dim + 1) as usize {
            counts.push(BigInt::from(self.faces_with_cardinality(card).len()));
        }
        Ok(Polynomial::from_coeffs(counts))
    }

    /// Euler characteristic (unreduced): alternating sum of face counts.
    pub fn euler_characteristic(&self) -> Result<BigInt, ComplexError> {
        let f = self.f_vector()?;
        let mut chi = BigInt::from(0);
        let dim = self.dimension().expect("nonvoid");
        for card in 1..=(dim + 1) as usize {
            let sign = if card % 2 == 1 { 1 } else { -1 };
            chi += BigInt::from(sign) * f.coeff(card);
        }
        Ok(chi)
    }

    pub fn one_skeleton(&self) -> Graph {
        let mut g = Graph::new();
        for v in &self.vertices {
            g.add_vertex(*v);
        }
        for e in self.faces_with_cardinality(2) {
            g.add_edge(e.vertices()[0], e.vertices()[1]);
        }
        g
    }

    /// Smallest clique of the 1-skeleton that is not a face, if any.
    /// `None` means the complex is flag.
    pub fn flag_witness(&self) -> Option<Face> {
        let graph = self.one_skeleton();
        let mut cliques = graph.cliques();
        cliques.sort_by_key(|c| (c.cardinality(), c.clone()));
        cliques
            .into_iter()
            .filter(|c| c.cardinality() >= 3)
            .find(|c| !self.contains_face(c))
    }

    /// True iff every pairwise-connected vertex set is a face.
    pub fn is_flag(&self) -> bool {
        self.flag_witness().is_none()
    }

    /// The clique complex of a graph: faces are exactly the cliques.
    pub fn clique_complex(graph: &Graph) -> Self {
        let cliques = graph.cliques();
        SimplicialComplex::from_facets(cliques).expect("cliques are valid faces")
    }

    /// link(K, F) = { G : G ∩ F = ∅, G ∪ F ∈ K }.
    pub fn link(&self, face: &Face) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains_face(face) {
            return Err(ComplexError::NotAFace(face.clone()));
        }
        if face.is_empty() {
            return Ok(self.clone());
        }
        // facets of the link are facet \ F for facets containing F
        let facets: Vec<Face> = self
            .facets
            .iter()
            .filter(|f| face.is_subset_of(f))
            .map(|f| f.minus(face))
            .collect();
        SimplicialComplex::from_facets(facets)
    }

    /// Faces of K not containing the vertex p (the deletion K \ p).
    pub fn antistar(&self, p: VertexId) -> Result<SimplicialComplex, ComplexError> {
        if !self.vertices.contains(&p) {
            return Err(ComplexError::UnknownVertex(p));
        }
        self.deletion(&Face::single(p))
    }

    /// Faces of K not containing the whole face F.
    pub fn deletion(&self, face: &Face) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains_face(face) {
            return Err(ComplexError::NotAFace(face.clone()));
        }
        let mut faces = Vec::new();
        for facet in &self.facets {
            if face.is_subset_of(facet) {
                for v in face.vertices() {
                    faces.push(facet.without(*v));
                }
            } else {
                faces.push(facet.clone());
            }
        }
        SimplicialComplex::from_facets(faces)
    }

    /// Intersection of two complexes: the faces lying in both.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let mut faces = Vec::new();
        for a in &self.facets {
            for b in &other.facets {
                faces.push(a.intersection(b));
            }
        }
        // the pairwise facet intersection is a face of both, but may not be
        // maximal; from_facets maximalizes
        if faces.is_empty() {
            return SimplicialComplex::void();
        }
        if self.is_void() || other.is_void() {
            return SimplicialComplex::void();
        }
        SimplicialComplex::from_facets(faces).expect("intersections are valid")
    }

    /// Join of two complexes. The second operand is relabeled onto fresh
    /// labels when collisions exist; the applied relabeling is returned.
    pub fn join(&self, other: &SimplicialComplex) -> (SimplicialComplex, BTreeMap<VertexId, VertexId>) {
        let mut map = BTreeMap::new();
        // fresh labels sit above both complexes so they cannot collide with
        // retained labels of either operand
        let mut next = self
            .fresh_vertex()
            .0
            .max(other.max_vertex_label().map_or(0, |v| v.0 + 1));
        for v in other.vertices() {
            if self.vertices.contains(&v) {
                map.insert(v, VertexId(next));
                next += 1;
            } else {
                map.insert(v, v);
            }
        }
        let relabeled_facets: Vec<Face> = other
            .facets
            .iter()
            .map(|f| {
                Face::new(f.vertices().iter().map(|v| map[v]).collect::<Vec<_>>())
                    .expect("relabeling keeps faces valid")
            })
            .collect();
        let mut facets = Vec::new();
        for a in &self.facets {
            for b in &relabeled_facets {
                facets.push(a.union(b));
            }
        }
        let joined = SimplicialComplex::from_facets(facets).expect("join faces are valid");
        (joined, map)
    }

    /// Cone: join with one fresh point.
    pub fn cone(&self) -> SimplicialComplex {
        let apex = self.fresh_vertex();
        self.join(&SimplicialComplex::point(apex)).0
    }

    /// Suspension: join with a fresh 0-sphere (two points).
    pub fn suspension(&self) -> SimplicialComplex {
        let a = self.fresh_vertex();
        let b = VertexId(a.0 + 1);
        let sphere0 = SimplicialComplex::from_facets(vec![Face::single(a), Face::single(b)])
            .expect("two points");
        self.join(&sphere0).0
    }

    pub fn suspension_iterated(&self, times: usize) -> SimplicialComplex {
        let mut k = self.clone();
        for _ in 0..times {
            k = k.suspension();
        }
        k
    }

    /// Boundary of the d-dimensional cross polytope: the d-fold join of
    /// 0-spheres, on vertex pairs (2i, 2i+1).
    pub fn cross_polytope_boundary(d: usize) -> Result<SimplicialComplex, ComplexError> {
        if d < 1 {
            return Err(ComplexError::CrossPolytopeDimension(d));
        }
        let mut facets = Vec::with_capacity(1 << d);
        for mask in 0u32..(1 << d) {
            let verts: Vec<u32> = (0..d as u32).map(|i| 2 * i + ((mask >> i) & 1)).collect();
            facets.push(Face::new(verts).expect("distinct labels"));
        }
        SimplicialComplex::from_facets(facets)
    }

    /// The n-cycle as a one-dimensional flag sphere; n >= 4 keeps it flag.
    pub fn cycle_complex(n: usize) -> Result<SimplicialComplex, ComplexError> {
        if n < 4 {
            return Err(ComplexError::CycleLength(n));
        }
        let facets: Vec<Face> = (0..n as u32)
            .map(|i| Face::edge(VertexId(i), VertexId((i + 1) % n as u32)))
            .collect();
        SimplicialComplex::from_facets(facets)
    }

    /// Apply a vertex relabeling (must be injective on the vertex set).
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> SimplicialComplex {
        let facets: Vec<Face> = self
            .facets
            .iter()
            .map(|f| {
                Face::new(
                    f.vertices()
                        .iter()
                        .map(|v| map.get(v).copied().unwrap_or(*v))
                        .collect::<Vec<_>>(),
                )
                .expect("injective relabeling")
            })
            .collect();
        SimplicialComplex::from_facets(facets).expect("relabeled faces are valid")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "(void)");
        }
        write!(f, "{{")?;
        for (i, facet) in self.facets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{facet}")?;
        }
        write!(f, "}}")
    }
}

// Canonical JSON form: {"vertices":[...],"facets":[[...],...]} with both
// lists sorted. BTreeSet ordering gives this for free.
#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<u32>,
    facets: Vec<Vec<u32>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ComplexJson {
            vertices: self.vertices.iter().map(|v| v.0).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| f.vertices().iter().map(|v| v.0).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(deserializer)?;
        let facets: Result<Vec<Face>, _> = raw.facets.into_iter().map(Face::new).collect();
        let facets = facets.map_err(serde::de::Error::custom)?;
        let complex = if facets.is_empty() && !raw.vertices.is_empty() {
            return Err(serde::de::Error::custom(
                "vertices listed but no facets; isolated vertices must appear as singleton facets",
            ));
        } else {
            SimplicialComplex::from_facets(facets).map_err(serde::de::Error::custom)?
        };
        // declared vertex set must match the facet support
        let declared: BTreeSet<VertexId> = raw.vertices.into_iter().map(VertexId).collect();
        if !declared.is_empty() && declared != complex.vertices {
            return Err(serde::de::Error::custom(
                "vertex list does not match the union of the facets",
            ));
        }
        Ok(complex)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(vs: &[u32]) -> Face {
        Face::new(vs.to_vec()).unwrap()
    }

    fn complex(facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(facets.iter().map(|f| face(f)).collect()).unwrap()
    }

    #[test]
    fn from_facets_dedups_and_drops_subsets() {
        let k = complex(&[&[1, 2], &[2, 3], &[1, 2]]);
        assert_eq!(k.facet_count(), 2);
        let k = complex(&[&[1, 2, 3], &[1, 2]]);
        assert_eq!(k.facet_count(), 1);
        assert!(k.contains_face(&face(&[1, 2])));
    }

    #[test]
    fn duplicate_vertex_in_face_rejected() {
        assert_eq!(
            Face::new(vec![1u32, 1]).unwrap_err(),
            ComplexError::DuplicateVertex(VertexId(1))
        );
    }

    #[test]
    fn void_and_empty_are_distinct() {
        let void = SimplicialComplex::void();
        let empty = SimplicialComplex::empty_complex();
        assert!(void.is_void());
        assert!(!empty.is_void());
        assert!(empty.is_empty_complex());
        assert_ne!(void, empty);
        assert_eq!(void.dimension(), None);
        assert_eq!(empty.dimension(), Some(-1));
    }

    #[test]
    fn dimensions() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert_eq!(octa.dimension(), Some(2));
        assert_eq!(SimplicialComplex::point(VertexId(5)).dimension(), Some(0));
    }

    #[test]
    fn enumerate_faces_octahedron() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert_eq!(octa.enumerate_faces(1).len(), 12);
        assert_eq!(octa.enumerate_faces(-1), vec![Face::empty()]);
        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        assert!(c5.enumerate_faces(2).is_empty());
    }

    #[test]
    fn f_vector_examples() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert_eq!(
            octa.f_vector().unwrap(),
            Polynomial::from_coeffs(vec![1, 6, 12, 8])
        );
        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        assert_eq!(c5.f_vector().unwrap(), Polynomial::from_coeffs(vec![1, 5, 5]));
        let pt = SimplicialComplex::point(VertexId(0));
        assert_eq!(pt.f_vector().unwrap(), Polynomial::from_coeffs(vec![1, 1]));
        assert!(SimplicialComplex::void().f_vector().is_err());
    }

    #[test]
    fn flagness() {
        // hollow triangle: the 3-clique {1,2,3} is not a face
        let hollow = complex(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(hollow.flag_witness(), Some(face(&[1, 2, 3])));
        assert!(SimplicialComplex::cycle_complex(5).unwrap().is_flag());
        assert!(SimplicialComplex::cross_polytope_boundary(3).unwrap().is_flag());
    }

    #[test]
    fn clique_complex_agrees_with_flag_complexes() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let rebuilt = SimplicialComplex::clique_complex(&octa.one_skeleton());
        assert_eq!(rebuilt, octa);

        let mut k3 = Graph::new();
        k3.add_edge(VertexId(0), VertexId(1));
        k3.add_edge(VertexId(1), VertexId(2));
        k3.add_edge(VertexId(0), VertexId(2));
        let solid = SimplicialComplex::clique_complex(&k3);
        assert_eq!(solid, complex(&[&[0, 1, 2]]));

        let square_graph = SimplicialComplex::cycle_complex(4).unwrap().one_skeleton();
        let square = SimplicialComplex::clique_complex(&square_graph);
        assert_eq!(square.facet_count(), 4);
        assert!(square.is_flag());
    }

    #[test]
    fn link_of_octahedron_edge_is_two_points() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let e = octa.edges()[0].clone();
        let lk = octa.link(&e).unwrap();
        assert_eq!(lk.dimension(), Some(0));
        assert_eq!(lk.vertex_count(), 2);
        assert_eq!(lk.facet_count(), 2);
    }

    #[test]
    fn link_of_empty_face_is_identity() {
        let c7 = SimplicialComplex::cycle_complex(7).unwrap();
        assert_eq!(c7.link(&Face::empty()).unwrap(), c7);
    }

    #[test]
    fn link_of_cycle_vertex() {
        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        let lk = c5.link(&Face::single(VertexId(0))).unwrap();
        assert_eq!(lk.facet_count(), 2);
        assert_eq!(lk.dimension(), Some(0));
    }

    #[test]
    fn link_of_facet_is_empty_complex() {
        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        let e = c5.edges()[0].clone();
        assert!(c5.link(&e).unwrap().is_empty_complex());
    }

    #[test]
    fn link_errors_on_non_face() {
        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        let not_edge = face(&[0, 2]);
        assert!(matches!(c5.link(&not_edge), Err(ComplexError::NotAFace(_))));
    }

    #[test]
    fn antistar_examples() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let ast = octa.antistar(VertexId(0)).unwrap();
        assert_eq!(ast.dimension(), Some(2));
        assert_eq!(ast.facet_count(), 4);

        let square = SimplicialComplex::cycle_complex(4).unwrap();
        let path = square.antistar(VertexId(0)).unwrap();
        assert_eq!(path.vertex_count(), 3);
        assert_eq!(path.facet_count(), 2);

        let edge = complex(&[&[0, 1]]);
        let rest = edge.antistar(VertexId(1)).unwrap();
        assert_eq!(rest, SimplicialComplex::point(VertexId(0)));
    }

    #[test]
    fn join_examples() {
        let s0a = complex(&[&[0], &[1]]);
        let s0b = complex(&[&[0], &[1]]);
        let (square, _) = s0a.join(&s0b);
        assert_eq!(square.facet_count(), 4);
        assert_eq!(square.dimension(), Some(1));
        assert!(square.is_flag());

        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        let (same, _) = SimplicialComplex::empty_complex().join(&c5);
        assert_eq!(same, c5);

        // susp^2(S^0) is the octahedron up to relabeling
        let octa_like = s0a.suspension_iterated(2);
        assert_eq!(octa_like.facet_count(), 8);
        assert_eq!(octa_like.vertex_count(), 6);
        assert_eq!(octa_like.dimension(), Some(2));
        assert!(octa_like.is_flag());
    }

    #[test]
    fn join_with_void_is_void() {
        let c5 = SimplicialComplex::cycle_complex(5).unwrap();
        let (v, _) = c5.join(&SimplicialComplex::void());
        assert!(v.is_void());
    }

    #[test]
    fn cross_polytopes() {
        let square = SimplicialComplex::cross_polytope_boundary(2).unwrap();
        assert_eq!(square.facet_count(), 4);
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        assert_eq!(
            octa.f_vector().unwrap(),
            Polynomial::from_coeffs(vec![1, 6, 12, 8])
        );
        let two_points = SimplicialComplex::cross_polytope_boundary(1).unwrap();
        assert_eq!(two_points.vertex_count(), 2);
        assert_eq!(two_points.dimension(), Some(0));
        assert!(SimplicialComplex::cross_polytope_boundary(0).is_err());
    }

    #[test]
    fn cycles() {
        assert!(SimplicialComplex::cycle_complex(3).is_err());
        let square = SimplicialComplex::cycle_complex(4).unwrap();
        assert_eq!(square.facet_count(), 4);
        let c12 = SimplicialComplex::cycle_complex(12).unwrap();
        assert_eq!(c12.vertex_count(), 12);
        assert_eq!(c12.edges().len(), 12);
    }

    #[test]
    fn deletion_of_face() {
        // removing an edge from the solid triangle leaves the two other edges
        let solid = complex(&[&[0, 1, 2]]);
        let del = solid.deletion(&face(&[0, 1])).unwrap();
        assert_eq!(del, complex(&[&[0, 2], &[1, 2]]));
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let octa = SimplicialComplex::cross_polytope_boundary(3).unwrap();
        let json = serde_json::to_string(&octa).unwrap();
        let back: SimplicialComplex = serde_json::from_str(&json).unwrap();
        assert_eq!(back, octa);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }

    #[test]
    fn json_rejects_mismatched_vertex_list() {
        let bad = r#"{"vertices":[0,1,2,99],"facets":[[0,1],[1,2]]}"#;
        assert!(serde_json::from_str::<SimplicialComplex>(bad).is_err());
    }
}
