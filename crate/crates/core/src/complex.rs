//! Finite abstract simplicial complexes stored by their maximal faces.
//!
//! A complex keeps an explicit vertex universe next to an antichain of
//! maximal faces. Two degenerate complexes are kept apart on purpose:
//!
//! * the *void* complex has no faces at all (`maximal_faces == []`);
//! * the *empty-face* complex contains only the empty face
//!   (`maximal_faces == [∅]`), the unit of the join.
//!
//! All other faces are implicit: σ belongs to the complex iff σ is a subset of
//! some maximal face.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = u32;

/// JSON format version written into every complex file.
pub const COMPLEX_FORMAT_VERSION: u32 = 1;

/// A strictly increasing list of vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Face(Vec<Vertex>);

impl Face {
    /// Sorts the vertices; a repeated vertex is a malformed face.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self> {
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Malformed(format!("vertex {} repeated in face", w[0])));
        }
        Ok(Face(vertices))
    }

    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Caller guarantees strict increase.
    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension `|σ| − 1`; the empty face has dimension −1.
    pub fn dim(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
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

    pub fn intersection(&self, other: &Face) -> Face {
        let set: Vec<Vertex> = self.0.iter().copied().filter(|v| other.contains(*v)).collect();
        Face(set)
    }

    pub fn union(&self, other: &Face) -> Face {
        let set: BTreeSet<Vertex> = self.0.iter().chain(other.0.iter()).copied().collect();
        Face(set.into_iter().collect())
    }

    pub fn is_disjoint(&self, other: &Face) -> bool {
        self.0.iter().all(|v| !other.contains(*v))
    }

    /// All subsets of exactly `size` vertices, in lexicographic order.
    pub fn subsets_of_size(&self, size: usize) -> impl Iterator<Item = Face> + '_ {
        self.0.iter().copied().combinations(size).map(Face)
    }

    /// Faces of the boundary `∂σ`, in the order `σ ∖ {v_0}, σ ∖ {v_1}, …`.
    pub fn facets(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut v = self.0.clone();
            v.remove(i);
            Face(v)
        })
    }

    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Result<Face> {
        Face::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.iter().join(","))
    }
}

impl From<Face> for Vec<Vertex> {
    fn from(face: Face) -> Self {
        face.0
    }
}

/// The rotation `j ↦ j+1 mod p` on the labels `1..=p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RotationAction {
    modulus: u32,
}

impl RotationAction {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("rotation modulus must be positive"));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Applies the generator `times` times to a label in `1..=p`.
    pub fn apply(&self, v: Vertex, times: u64) -> Vertex {
        let p = self.modulus as u64;
        (((v as u64 - 1) + times % p) % p + 1) as Vertex
    }

    pub fn apply_face(&self, face: &Face, times: u64) -> Face {
        let mut vs: Vec<Vertex> = face.vertices().iter().map(|&v| self.apply(v, times)).collect();
        vs.sort_unstable();
        Face::from_sorted(vs)
    }
}

/// A finite simplicial complex given by a vertex universe and an antichain of
/// maximal faces in canonical (lexicographic) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: Vec<Vertex>,
    maximal: Vec<Face>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    version: Option<u32>,
    universe: Vec<Vertex>,
    maximal_faces: Vec<Vec<Vertex>>,
}

/// Keeps only the inclusion-maximal faces, sorted lexicographically.
fn antichain(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    faces.dedup();
    let mut kept: Vec<Face> = Vec::with_capacity(faces.len());
    // Faces of equal size only contain each other when equal, so each face is
    // checked against the strictly larger faces kept so far.
    let mut larger_end = 0;
    for i in 0..faces.len() {
        if i > 0 && faces[i].len() < faces[i - 1].len() {
            larger_end = kept.len();
        }
        let face = &faces[i];
        if !kept[..larger_end].iter().any(|k| face.is_subset_of(k)) {
            kept.push(face.clone());
        }
    }
    kept.sort_unstable();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from candidate faces over a declared universe. The
    /// candidates are reduced to their maximal elements.
    pub fn new(universe: Vec<Vertex>, candidates: Vec<Face>) -> Result<Self> {
        let universe: Vec<Vertex> = universe.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        for face in &candidates {
            if let Some(v) = face.vertices().iter().find(|v| universe.binary_search(v).is_err()) {
                return Err(Error::Malformed(format!("vertex {v} of face {face} is outside the universe")));
            }
        }
        Ok(Self { universe, maximal: antichain(candidates) })
    }

    /// Builds a complex whose universe is the union of the candidates' vertices.
    pub fn from_faces(candidates: Vec<Face>) -> Self {
        let universe: BTreeSet<Vertex> =
            candidates.iter().flat_map(|f| f.vertices().iter().copied()).collect();
        Self { universe: universe.into_iter().collect(), maximal: antichain(candidates) }
    }

    /// Parses raw vertex lists; duplicates inside a list are malformed input.
    pub fn from_vertex_lists(universe: Option<Vec<Vertex>>, lists: Vec<Vec<Vertex>>) -> Result<Self> {
        let faces = lists.into_iter().map(Face::new).collect::<Result<Vec<_>>>()?;
        match universe {
            Some(u) => Self::new(u, faces),
            None => Ok(Self::from_faces(faces)),
        }
    }

    /// The complex with no faces at all.
    pub fn void(universe: Vec<Vertex>) -> Self {
        Self { universe, maximal: Vec::new() }
    }

    /// The complex `{∅}`.
    pub fn empty_face() -> Self {
        Self { universe: Vec::new(), maximal: vec![Face::empty()] }
    }

    /// The full simplex on a face.
    pub fn simplex(face: Face) -> Self {
        Self { universe: face.vertices().to_vec(), maximal: vec![face] }
    }

    /// The full simplex on `1..=n`.
    pub fn full_simplex(n: u32) -> Self {
        Self::simplex(Face::from_sorted((1..=n).collect()))
    }

    /// The boundary of the simplex on `1..=n`, a sphere of dimension `n − 2`.
    pub fn simplex_boundary(n: u32) -> Self {
        let full = Face::from_sorted((1..=n).collect());
        Self { universe: full.vertices().to_vec(), maximal: full.facets().sorted().collect() }
    }

    /// `n` isolated vertices `1..=n`.
    pub fn discrete(n: u32) -> Self {
        Self::from_faces((1..=n).map(|v| Face::from_sorted(vec![v])).collect())
    }

    pub fn universe(&self) -> &[Vertex] {
        &self.universe
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.maximal
    }

    pub fn is_void(&self) -> bool {
        self.maximal.is_empty()
    }

    /// True for the complex `{∅}`.
    pub fn is_empty_face_only(&self) -> bool {
        self.maximal.len() == 1 && self.maximal[0].is_empty()
    }

    /// `None` for the void complex, −1 for `{∅}`.
    pub fn dim(&self) -> Option<i64> {
        self.maximal.iter().map(Face::dim).max()
    }

    pub fn contains_face(&self, face: &Face) -> bool {
        self.maximal.iter().any(|m| face.is_subset_of(m))
    }

    /// Vertices that actually occur in some face.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.maximal
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// All faces of dimension exactly `k`, lexicographically sorted.
    pub fn faces_of_dim(&self, k: i64) -> Vec<Face> {
        if k < -1 || self.is_void() {
            return Vec::new();
        }
        let size = (k + 1) as usize;
        let mut seen: HashSet<Face> = HashSet::new();
        for m in self.maximal.iter().filter(|m| m.len() >= size) {
            seen.extend(m.subsets_of_size(size));
        }
        let mut faces: Vec<Face> = seen.into_iter().collect();
        faces.sort_unstable();
        faces
    }

    /// Every face, ordered by dimension then lexicographically.
    pub fn all_faces(&self) -> Vec<Face> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (-1..=d).flat_map(|k| self.faces_of_dim(k)).collect(),
        }
    }

    /// Face counts `f_{-1}, f_0, …, f_dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        match self.dim() {
            None => Vec::new(),
            Some(d) => (-1..=d).map(|k| self.faces_of_dim(k).len()).collect(),
        }
    }

    /// Number of tag slots one copy occupies in a join: `max(universe) + 1`.
    pub fn join_offset(&self) -> Vertex {
        self.universe.last().map_or(0, |m| m + 1)
    }

    /// The join `K * L`.
    ///
    /// Tagged vertex `(1, v)` becomes `v` and `(2, w)` becomes
    /// `K.join_offset() + w`, so the vertex sets are disjoint.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let offset = self.join_offset();
        let shift = |f: &Face| Face::from_sorted(f.vertices().iter().map(|v| v + offset).collect());
        let mut universe = self.universe.clone();
        universe.extend(other.universe.iter().map(|v| v + offset));
        let maximal = self
            .maximal
            .iter()
            .cartesian_product(other.maximal.iter())
            .map(|(s, t)| {
                let mut vs = s.vertices().to_vec();
                vs.extend(shift(t).into_vertices());
                Face::from_sorted(vs)
            })
            .sorted()
            .collect();
        SimplicialComplex { universe, maximal }
    }

    /// `K^{*n} = K * K^{*(n−1)}`. Copy `t ∈ 1..=n` of vertex `v` is
    /// `(t − 1)·B + v` with `B = K.join_offset()`.
    pub fn n_fold_join(&self, n: usize) -> Result<SimplicialComplex> {
        if n == 0 {
            return Err(Error::domain("n-fold join needs n ≥ 1"));
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = self.join(&acc);
        }
        Ok(acc)
    }

    /// `T + s`: every vertex shifted by `s`.
    pub fn translate(&self, s: i64) -> Result<SimplicialComplex> {
        let shift = |v: Vertex| -> Result<Vertex> {
            Vertex::try_from(v as i64 + s)
                .map_err(|_| Error::domain(format!("translating vertex {v} by {s} leaves the vertex range")))
        };
        let universe = self.universe.iter().map(|&v| shift(v)).collect::<Result<Vec<_>>>()?;
        let maximal = self
            .maximal
            .iter()
            .map(|f| f.vertices().iter().map(|&v| shift(v)).collect::<Result<Vec<_>>>().map(Face::from_sorted))
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialComplex { universe, maximal })
    }

    /// Applies a vertex bijection defined on the universe.
    pub fn relabel(&self, map: &BTreeMap<Vertex, Vertex>) -> Result<SimplicialComplex> {
        let mut image = BTreeSet::new();
        for v in &self.universe {
            let w = map
                .get(v)
                .ok_or_else(|| Error::domain(format!("relabelling is undefined on vertex {v}")))?;
            if !image.insert(*w) {
                return Err(Error::domain(format!("relabelling is not injective: {w} hit twice")));
            }
        }
        let maximal = self.maximal.iter().map(|f| f.map(|v| map[&v])).collect::<Result<Vec<_>>>()?;
        let mut maximal = maximal;
        maximal.sort_unstable();
        Ok(SimplicialComplex { universe: image.into_iter().collect(), maximal })
    }

    /// Relabels through a function evaluated on the universe.
    pub fn relabel_with(&self, f: impl Fn(Vertex) -> Vertex) -> Result<SimplicialComplex> {
        let map: BTreeMap<Vertex, Vertex> = self.universe.iter().map(|&v| (v, f(v))).collect();
        self.relabel(&map)
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let universe: BTreeSet<Vertex> = self.universe.iter().chain(&other.universe).copied().collect();
        let faces = self.maximal.iter().chain(&other.maximal).cloned().collect();
        SimplicialComplex { universe: universe.into_iter().collect(), maximal: antichain(faces) }
    }

    /// Faces lying in both complexes: maximal elements of the pairwise
    /// intersections of maximal faces.
    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let universe: Vec<Vertex> =
            self.universe.iter().copied().filter(|v| other.universe.binary_search(v).is_ok()).collect();
        let faces: HashSet<Face> = self
            .maximal
            .iter()
            .cartesian_product(other.maximal.iter())
            .map(|(a, b)| a.intersection(b))
            .collect();
        SimplicialComplex { universe, maximal: antichain(faces.into_iter().collect()) }
    }

    /// All faces of dimension at most `k`.
    pub fn skeleton(&self, k: i64) -> Result<SimplicialComplex> {
        if k < 0 {
            return Err(Error::domain("skeleton dimension must be non-negative"));
        }
        let size = (k + 1) as usize;
        let mut faces: HashSet<Face> = HashSet::new();
        for m in &self.maximal {
            if m.len() <= size {
                faces.insert(m.clone());
            } else {
                faces.extend(m.subsets_of_size(size));
            }
        }
        Ok(SimplicialComplex { universe: self.universe.clone(), maximal: antichain(faces.into_iter().collect()) })
    }

    /// Whether the generator of the rotation maps faces to faces. The
    /// universe must be exactly `1..=p`.
    pub fn is_rotation_invariant(&self, action: &RotationAction) -> Result<bool> {
        let p = action.modulus();
        if !self.universe.iter().copied().eq(1..=p) {
            return Err(Error::domain(format!("universe is not [1..={p}]")));
        }
        Ok(self.maximal.iter().all(|m| self.contains_face(&action.apply_face(m, 1))))
    }

    /// The lexicographically least set of `q` vertices no two of which span
    /// an edge.
    pub fn find_independent_set(&self, q: usize) -> Option<Face> {
        let vertices = self.vertices();
        let edges: HashSet<(Vertex, Vertex)> = self
            .maximal
            .iter()
            .flat_map(|m| m.vertices().iter().copied().tuple_combinations::<(_, _)>())
            .collect();
        fn extend(
            start: usize,
            vertices: &[Vertex],
            edges: &HashSet<(Vertex, Vertex)>,
            chosen: &mut Vec<Vertex>,
            q: usize,
        ) -> bool {
            if chosen.len() == q {
                return true;
            }
            for i in start..vertices.len() {
                if vertices.len() - i < q - chosen.len() {
                    return false;
                }
                let v = vertices[i];
                if chosen.iter().all(|&u| !edges.contains(&(u, v))) {
                    chosen.push(v);
                    if extend(i + 1, vertices, edges, chosen, q) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        let mut chosen = Vec::with_capacity(q);
        extend(0, &vertices, &edges, &mut chosen, q).then(|| Face::from_sorted(chosen))
    }

    /// Canonical JSON: `{"version":1,"universe":[..],"maximal_faces":[[..],..]}`.
    pub fn to_json(&self) -> String {
        let doc = ComplexJson {
            version: Some(COMPLEX_FORMAT_VERSION),
            universe: self.universe.clone(),
            maximal_faces: self.maximal.iter().map(|f| f.vertices().to_vec()).collect(),
        };
        serde_json::to_string(&doc).expect("complex serialisation is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ComplexJson = serde_json::from_str(text)?;
        if let Some(v) = doc.version {
            if v != COMPLEX_FORMAT_VERSION {
                return Err(Error::Malformed(format!("unsupported complex format version {v}")));
            }
        }
        Self::from_vertex_lists(Some(doc.universe), doc.maximal_faces)
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.maximal.iter().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(v: &[Vertex]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn cx(faces: &[&[Vertex]]) -> SimplicialComplex {
        SimplicialComplex::from_faces(faces.iter().map(|f| face(f)).collect())
    }

    fn brute_faces(k: &SimplicialComplex) -> BTreeSet<Face> {
        let vs = k.universe().to_vec();
        (0..=vs.len())
            .flat_map(|s| vs.iter().copied().combinations(s))
            .map(Face::from_sorted)
            .filter(|f| k.contains_face(f))
            .collect()
    }

    #[test]
    fn duplicate_vertex_is_malformed() {
        assert!(matches!(Face::new(vec![1, 2, 1]), Err(Error::Malformed(_))));
        assert!(SimplicialComplex::from_vertex_lists(None, vec![vec![3, 3]]).is_err());
    }

    #[test]
    fn antichain_reduction() {
        let k = cx(&[&[1, 2], &[2, 3], &[2]]);
        assert_eq!(k.maximal_faces(), &[face(&[1, 2]), face(&[2, 3])]);
        assert!(SimplicialComplex::from_faces(vec![]).is_void());
    }

    #[test]
    fn triangle_boundary_with_universe() {
        let k = SimplicialComplex::from_vertex_lists(Some((1..=7).collect()), vec![vec![1, 4], vec![4, 7], vec![1, 7]])
            .unwrap();
        assert_eq!(k.maximal_faces().len(), 3);
        // Brute force: 3 vertices and 3 edges, plus the empty face.
        let all = brute_faces(&k);
        assert_eq!(all.len(), 7);
        let nonempty = all.iter().filter(|f| !f.is_empty()).count();
        assert_eq!(nonempty, 6);
        assert_eq!((0..=1).map(|d| k.faces_of_dim(d).len()).sum::<usize>(), nonempty);
    }

    #[test]
    fn faces_of_dim_edges_of_simplex() {
        let k = SimplicialComplex::full_simplex(3);
        assert_eq!(k.faces_of_dim(1), vec![face(&[1, 2]), face(&[1, 3]), face(&[2, 3])]);
        assert_eq!(k.faces_of_dim(-1), vec![Face::empty()]);
        assert!(SimplicialComplex::void(vec![]).faces_of_dim(0).is_empty());
        assert!(k.faces_of_dim(7).is_empty());
    }

    #[test]
    fn join_of_two_point_pairs_is_a_square() {
        let s0 = SimplicialComplex::discrete(2);
        let j = s0.join(&s0);
        assert_eq!(j.maximal_faces().len(), 4);
        assert!(j.maximal_faces().iter().all(|f| f.len() == 2));
        let unit = s0.join(&SimplicialComplex::empty_face());
        assert_eq!(unit.maximal_faces(), s0.maximal_faces());
        let k33 = SimplicialComplex::discrete(3).n_fold_join(2).unwrap();
        assert_eq!(k33.faces_of_dim(1).len(), 9);
        assert!(s0.n_fold_join(0).is_err());
        assert_eq!(s0.n_fold_join(1).unwrap(), s0);
    }

    #[test]
    fn join_is_associative_on_tags() {
        let k = cx(&[&[1, 2], &[2, 3]]);
        for (m, n) in [(1, 1), (1, 2), (2, 2), (2, 1)] {
            let lhs = k.n_fold_join(m + n).unwrap();
            let rhs = k.n_fold_join(m).unwrap().join(&k.n_fold_join(n).unwrap());
            assert_eq!(lhs.maximal_faces(), rhs.maximal_faces());
        }
    }

    #[test]
    fn translate_round_trip_and_underflow() {
        let k = cx(&[&[1, 4], &[2]]);
        let shifted = k.translate(5).unwrap();
        assert_eq!(shifted.maximal_faces(), &[face(&[6, 9]), face(&[7])]);
        assert_eq!(shifted.translate(-5).unwrap(), k);
        assert_eq!(k.translate(0).unwrap(), k);
        assert!(k.translate(-2).is_err());
    }

    #[test]
    fn relabel_rejects_non_injective() {
        let k = cx(&[&[1, 2]]);
        let map: BTreeMap<_, _> = [(1, 5), (2, 5)].into_iter().collect();
        assert!(k.relabel(&map).is_err());
        let id: BTreeMap<_, _> = [(1, 1), (2, 2)].into_iter().collect();
        assert_eq!(k.relabel(&id).unwrap(), k);
    }

    #[test]
    fn union_and_intersection() {
        let a = cx(&[&[1, 2]]);
        let b = cx(&[&[2, 3]]);
        assert_eq!(a.intersection(&b).maximal_faces(), &[face(&[2])]);
        assert_eq!(a.union(&a), a);
        assert_eq!(a.intersection(&a), a);
        let c = cx(&[&[3]]);
        assert!(a.intersection(&c).is_empty_face_only());
        assert!(a.intersection(&SimplicialComplex::void(vec![])).is_void());
    }

    #[test]
    fn rotation_invariance() {
        let full = SimplicialComplex::full_simplex(5);
        let rot = RotationAction::new(5).unwrap();
        assert!(full.is_rotation_invariant(&rot).unwrap());
        let path = SimplicialComplex::new((1..=5).collect(), vec![face(&[1, 2])]).unwrap();
        assert!(!path.is_rotation_invariant(&rot).unwrap());
        assert!(cx(&[&[1, 2]]).is_rotation_invariant(&rot).is_err());
        assert_eq!(rot.apply(5, 1), 1);
        assert_eq!(rot.apply(3, 5), 3);
    }

    #[test]
    fn independent_sets() {
        let square = cx(&[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]);
        assert_eq!(square.find_independent_set(2), Some(face(&[1, 3])));
        assert_eq!(SimplicialComplex::full_simplex(4).find_independent_set(2), None);
        assert_eq!(square.find_independent_set(3), None);
    }

    #[test]
    fn skeletons() {
        let k6 = SimplicialComplex::full_simplex(6).skeleton(1).unwrap();
        assert_eq!(k6.maximal_faces().len(), 15);
        let k = cx(&[&[1, 2, 3], &[3, 4]]);
        assert_eq!(k.skeleton(2).unwrap(), k);
        assert!(k.skeleton(-1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let k = SimplicialComplex::new((1..=4).collect(), vec![face(&[1, 3]), face(&[2])]).unwrap();
        let text = k.to_json();
        assert_eq!(text, r#"{"version":1,"universe":[1,2,3,4],"maximal_faces":[[1,3],[2]]}"#);
        assert_eq!(SimplicialComplex::from_json(&text).unwrap(), k);
        assert!(SimplicialComplex::from_json(r#"{"universe":[1],"maximal_faces":[[2]]}"#).is_err());
    }
}
