//! The q-stable complexes: linear `L_r`, `L_r^a`, cyclic `C_p`, `C_p^a`, the
//! truncated complexes `T^{a−1}_m`, and checkers for the face-set identities
//! relating them.
//!
//! Vertices are labelled `1..=r` (resp. `1..=p`). Maximal q-stable sets are
//! generated directly from their gap sequences: a q-stable set is maximal
//! exactly when every gap between consecutive elements lies in `[q, 2q−1]`
//! (cyclically for `C_p`; for `L_r` additionally the first element is at
//! most `q` and the last at least `r−q+1`).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, SimplicialComplex, Vertex};
use crate::error::{Error, Result};

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(Error::domain(format!("gap parameter q must be at least 2, got {q}")));
    }
    Ok(())
}

/// Maximal q-stable subsets of `[r]` (linear gaps, no wrap-around).
fn linear_maximal_sets(r: u32, q: u32) -> Vec<Face> {
    fn grow(r: u32, q: u32, current: &mut Vec<Vertex>, out: &mut Vec<Face>) {
        let last = *current.last().unwrap();
        if last + q > r {
            out.push(Face::from_sorted(current.clone()));
            return;
        }
        for next in last + q..=(last + 2 * q - 1).min(r) {
            current.push(next);
            grow(r, q, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for first in 1..=q.min(r) {
        grow(r, q, &mut vec![first], &mut out);
    }
    out.sort_unstable();
    out
}

/// Maximal q-stable subsets of `ℤ/p` on labels `1..=p`.
fn cyclic_maximal_sets(p: u32, q: u32) -> Vec<Face> {
    if p < 2 * q {
        return (1..=p).map(|v| Face::from_sorted(vec![v])).collect();
    }
    fn grow(p: u32, q: u32, current: &mut Vec<Vertex>, out: &mut Vec<Face>) {
        let first = current[0];
        let last = *current.last().unwrap();
        let closing = p - (last - first);
        if current.len() >= 2 && (q..=2 * q - 1).contains(&closing) {
            out.push(Face::from_sorted(current.clone()));
        }
        for next in last + q..=(last + 2 * q - 1).min(p) {
            // the closing gap must stay at least q
            if p - (next - first) < q {
                break;
            }
            current.push(next);
            grow(p, q, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    for first in 1..=p {
        grow(p, q, &mut vec![first], &mut out);
    }
    out.sort_unstable();
    out
}

fn extendable(universe: Vec<Vertex>, maximal: Vec<Face>, a: u32) -> SimplicialComplex {
    let kept: Vec<Face> = maximal.into_iter().filter(|f| f.len() >= a as usize).collect();
    if kept.is_empty() {
        return SimplicialComplex::void(universe);
    }
    SimplicialComplex::new(universe, kept).expect("q-stable faces lie in the universe")
}

/// `L_r`: subsets of `[r]` whose elements pairwise differ by at least `q`.
pub fn linear_stable(r: u32, q: u32) -> Result<SimplicialComplex> {
    check_q(q)?;
    if r == 0 {
        return Err(Error::domain("L_r needs r ≥ 1"));
    }
    Ok(extendable((1..=r).collect(), linear_maximal_sets(r, q), 0))
}

/// `L_r^a`: faces of `L_r` contained in a face with at least `a` elements.
/// Void exactly when `r ≤ (a−1)q`.
pub fn linear_stable_extendable(r: u32, q: u32, a: u32) -> Result<SimplicialComplex> {
    check_q(q)?;
    if r == 0 {
        return Ok(SimplicialComplex::void(Vec::new()));
    }
    Ok(extendable((1..=r).collect(), linear_maximal_sets(r, q), a))
}

/// `C_p`: q-stable subsets of `ℤ/p`, i.e. pairwise cyclic gap
/// `min(|i−j|, p−|i−j|) ≥ q`.
pub fn cyclic_stable(p: u32, q: u32) -> Result<SimplicialComplex> {
    cyclic_stable_extendable(p, q, 0)
}

/// `C_p^a`: the subcomplex of `C_p` generated by q-stable sets of size ≥ a.
pub fn cyclic_stable_extendable(p: u32, q: u32, a: u32) -> Result<SimplicialComplex> {
    check_q(q)?;
    if p == 0 {
        return Err(Error::domain("C_p needs p ≥ 1"));
    }
    Ok(extendable((1..=p).collect(), cyclic_maximal_sets(p, q), a))
}

/// Size `m = (a−2)q + k + 2` of the truncated complex.
pub fn truncated_size(q: u32, a: u32, k: u32) -> u32 {
    (a - 2) * q + k + 2
}

/// `T^{a−1}_m` with `m = (a−2)q+k+2`: generated by the q-stable
/// `(a−1)`-subsets of `[m]` that avoid vertex 1 or avoid all of the last `k`
/// vertices.
///
/// For `k ≤ q−2` these are exactly the maximal faces of `L^{a−1}_m` with the
/// same property. For `k = q−1` (`m = (a−1)q+1`) `L^{a−1}_m` also has the
/// `a`-element face `{1, q+1, …, m}`, and generating from `(a−1)`-sets keeps
/// its subsets that avoid 1 or the tail, so that
/// `T = (L^{a−1}_{m−1}+1) ∪ L^{a−1}_{m−k}` holds for every k.
pub fn truncated_complex(q: u32, a: u32, k: u32) -> Result<SimplicialComplex> {
    check_q(q)?;
    if a < 2 || k == 0 || k > q - 1 {
        return Err(Error::domain(format!("truncated complex needs a ≥ 2 and 1 ≤ k ≤ q−1 (q={q}, a={a}, k={k})")));
    }
    let m = truncated_size(q, a, k);
    let size = (a - 1) as usize;
    let tail_start = m - k + 1;
    let mut kept: Vec<Face> = linear_maximal_sets(m, q)
        .iter()
        .filter(|f| f.len() >= size)
        .flat_map(|f| f.subsets_of_size(size).collect::<Vec<_>>())
        .filter(|f| !f.contains(1) || f.vertices().iter().all(|&v| v < tail_start))
        .collect();
    kept.sort_unstable();
    kept.dedup();
    Ok(extendable((1..=m).collect(), kept, 0))
}

/// `T^{a−1}_m` taken literally: the maximal faces of `L^{a−1}_m` that avoid
/// vertex 1 or avoid all of the last `k` vertices.
pub fn truncated_complex_maximal(q: u32, a: u32, k: u32) -> Result<SimplicialComplex> {
    check_q(q)?;
    if a < 2 || k == 0 || k > q - 1 {
        return Err(Error::domain(format!("truncated complex needs a ≥ 2 and 1 ≤ k ≤ q−1 (q={q}, a={a}, k={k})")));
    }
    let m = truncated_size(q, a, k);
    let tail_start = m - k + 1;
    let kept: Vec<Face> = linear_maximal_sets(m, q)
        .into_iter()
        .filter(|f| f.len() >= (a - 1) as usize)
        .filter(|f| !f.contains(1) || f.vertices().iter().all(|&v| v < tail_start))
        .collect();
    Ok(extendable((1..=m).collect(), kept, 0))
}

/// `(k_1, …, k_{a−1})` for a maximal face of `L^{a−1}_r`: the element in
/// block `j` is `(j−1)q + k_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSequence(pub Vec<u32>);

impl BlockSequence {
    pub fn is_monotone(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// `1 ≤ k_1` and `k_{a−1} ≤ bound`.
    pub fn is_bounded(&self, bound: u32) -> bool {
        self.0.first().is_none_or(|&k| k >= 1) && self.0.last().is_none_or(|&k| k <= bound)
    }
}

/// Block sequence of a maximal face of `L^{a−1}_r` for
/// `(a−2)q+1 ≤ r ≤ (a−1)q`.
pub fn block_sequence(face: &Face, r: u32, q: u32, a: u32) -> Result<BlockSequence> {
    check_q(q)?;
    if a < 2 {
        return Err(Error::domain("block sequences need a ≥ 2"));
    }
    if r < (a - 2) * q + 1 || r > (a - 1) * q {
        return Err(Error::domain(format!("r = {r} outside [(a−2)q+1, (a−1)q] = [{}, {}]", (a - 2) * q + 1, (a - 1) * q)));
    }
    let complex = linear_stable_extendable(r, q, a - 1)?;
    if !complex.maximal_faces().contains(face) {
        return Err(Error::domain(format!("{face} is not a maximal face of L^{}_{r}", a - 1)));
    }
    let ks = face
        .vertices()
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let start = j as u32 * q;
            let block_end = if j as u32 + 1 == a - 1 { r } else { start + q };
            if v <= start || v > block_end {
                return Err(Error::domain(format!("{face} has no element in block {}", j + 1)));
            }
            Ok(v - start)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BlockSequence(ks))
}

/// Whether two complexes have the same faces (universes are ignored).
pub fn same_faces(a: &SimplicialComplex, b: &SimplicialComplex) -> bool {
    a.maximal_faces() == b.maximal_faces()
}

/// A maximal face of one complex that is not a face of the other.
pub fn face_difference(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Face> {
    a.maximal_faces()
        .iter()
        .find(|f| !b.contains_face(f))
        .or_else(|| b.maximal_faces().iter().find(|f| !a.contains_face(f)))
        .cloned()
}

/// Outcome of a face-set identity check; `counterexample` is empty on success.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub counterexample: Option<Face>,
}

impl IdentityCheck {
    fn compare(a: &SimplicialComplex, b: &SimplicialComplex) -> Self {
        let counterexample = face_difference(a, b);
        IdentityCheck { holds: counterexample.is_none() && same_faces(a, b), counterexample }
    }
}

/// `⋃_{j=0}^{q−1} (L^a_r + j)`.
pub fn linear_translates_union(r: u32, q: u32, a: u32, copies: u32) -> Result<SimplicialComplex> {
    let base = linear_stable_extendable(r, q, a)?;
    let mut acc = SimplicialComplex::void(Vec::new());
    for j in 0..copies {
        acc = acc.union(&base.translate(j as i64)?);
    }
    Ok(acc)
}

/// Checks `C^a_{r+q−1} = ⋃_{j=0}^{q−1} (L^a_r + j)` as face sets.
pub fn verify_decomposition(r: u32, p: u32, q: u32, a: u32) -> Result<IdentityCheck> {
    check_q(q)?;
    if r + q - 1 != p {
        return Err(Error::domain(format!("decomposition needs r + q − 1 = p, got r={r}, q={q}, p={p}")));
    }
    let cyclic = cyclic_stable_extendable(p, q, a)?;
    let union = linear_translates_union(r, q, a, q)?;
    Ok(IdentityCheck::compare(&cyclic, &union))
}

/// Checks `L_r = L^a_r` for `a = ⌊r/(2q−1)⌋`; a counterexample is a maximal
/// face of `L_r` with fewer than `a` elements.
pub fn verify_linear_equals_extendable(r: u32, q: u32) -> Result<IdentityCheck> {
    check_q(q)?;
    let a = r / (2 * q - 1);
    let full = linear_stable(r, q)?;
    let ext = linear_stable_extendable(r, q, a)?;
    Ok(IdentityCheck::compare(&full, &ext))
}

/// The complexes appearing in the union step for `r = aq + 2`.
#[derive(Clone, Debug)]
pub struct UnionStep {
    pub r: u32,
    /// `L^a_{r−1}`
    pub left: SimplicialComplex,
    /// `L^{a−1}_{r+k−2q} + (q−1)`
    pub right: SimplicialComplex,
    pub union: SimplicialComplex,
    pub intersection: SimplicialComplex,
    /// `T^{a−1}_{r+k−2q} + (q−1)`
    pub truncated: SimplicialComplex,
    /// `{q, 2q, …, aq}` when `k = q−1`.
    pub sigma_star: Option<Face>,
}

impl UnionStep {
    /// The predicted intersection: the truncated translate, plus the simplex
    /// on `σ*` when `k = q−1`.
    pub fn expected_intersection(&self) -> SimplicialComplex {
        match &self.sigma_star {
            Some(s) => self.truncated.union(&SimplicialComplex::simplex(s.clone())),
            None => self.truncated.clone(),
        }
    }

    pub fn intersection_identity(&self) -> IdentityCheck {
        IdentityCheck::compare(&self.intersection, &self.expected_intersection())
    }

    /// `σ* ∩ (T + (q−1))` and the predicted bipyramid generated by
    /// `σ* ∖ {q}` and `σ* ∖ {aq}`.
    pub fn bipyramid(&self) -> Option<(SimplicialComplex, SimplicialComplex)> {
        let s = self.sigma_star.as_ref()?;
        let meet = SimplicialComplex::simplex(s.clone()).intersection(&self.truncated);
        let v = s.vertices();
        let drop = |x: Vertex| Face::from_sorted(v.iter().copied().filter(|&w| w != x).collect());
        let predicted = SimplicialComplex::from_faces(vec![drop(v[0]), drop(*v.last().unwrap())]);
        Some((meet, predicted))
    }
}

/// Builds `L^a_{r−1} ∪ (L^{a−1}_{r+k−2q} + (q−1))` with `r = aq+2`, its
/// intersection, and the predicted intersection.
pub fn union_step_complex(q: u32, a: u32, k: u32) -> Result<UnionStep> {
    check_q(q)?;
    if a < 2 || k == 0 || k > q - 1 {
        return Err(Error::domain(format!("union step needs a ≥ 2 and 1 ≤ k ≤ q−1 (q={q}, a={a}, k={k})")));
    }
    let r = a * q + 2;
    let left = linear_stable_extendable(r - 1, q, a)?;
    let right = linear_stable_extendable(r + k - 2 * q, q, a - 1)?.translate(q as i64 - 1)?;
    let union = left.union(&right);
    let intersection = left.intersection(&right);
    let truncated = truncated_complex(q, a, k)?.translate(q as i64 - 1)?;
    let sigma_star = (k == q - 1).then(|| Face::from_sorted((1..=a).map(|i| i * q).collect()));
    Ok(UnionStep { r, left, right, union, intersection, truncated, sigma_star })
}

/// Pieces of the inductive step over `M_k = ⋃_{j≤k} (L^a_r + j)`, `r = aq+2`.
#[derive(Clone, Debug)]
pub struct CircularStep {
    /// `M_{k−1} ∩ (L^a_r + k)`
    pub intersection: SimplicialComplex,
    /// `(L^a_{r−1} + k) ∪ (L^{a−1}_{r+k−2q} + q)`
    pub predicted: SimplicialComplex,
    /// image of `predicted` under `x ↦ r+k−x`
    pub reflected: SimplicialComplex,
    /// `L^a_{r−1} ∪ (L^{a−1}_{r+k−2q} + (q−1))`
    pub union_step: SimplicialComplex,
}

impl CircularStep {
    pub fn intersection_identity(&self) -> IdentityCheck {
        IdentityCheck::compare(&self.intersection, &self.predicted)
    }

    pub fn reflection_identity(&self) -> IdentityCheck {
        IdentityCheck::compare(&self.reflected, &self.union_step)
    }
}

/// The reflection `x ↦ c − x` restricted to a complex's universe.
pub fn reflect(complex: &SimplicialComplex, c: u32) -> Result<SimplicialComplex> {
    let map: BTreeMap<Vertex, Vertex> = complex
        .universe()
        .iter()
        .map(|&v| {
            c.checked_sub(v)
                .map(|w| (v, w))
                .ok_or_else(|| Error::domain(format!("reflection x ↦ {c} − x undefined at {v}")))
        })
        .collect::<Result<_>>()?;
    complex.relabel(&map)
}

pub fn circular_step(q: u32, a: u32, k: u32) -> Result<CircularStep> {
    check_q(q)?;
    if a < 2 || k == 0 || k > q - 1 {
        return Err(Error::domain(format!("circular step needs a ≥ 2 and 1 ≤ k ≤ q−1 (q={q}, a={a}, k={k})")));
    }
    let r = a * q + 2;
    let prefix = linear_translates_union(r, q, a, k)?;
    let base = linear_stable_extendable(r, q, a)?;
    let intersection = prefix.intersection(&base.translate(k as i64)?);
    let shortened = linear_stable_extendable(r - 1, q, a)?;
    let lower = linear_stable_extendable(r + k - 2 * q, q, a - 1)?;
    let left = shortened.translate(k as i64)?;
    let right = lower.translate(q as i64)?;
    let predicted = left.union(&right);
    let reflected = reflect(&left, r + k)?.union(&reflect(&right, r + k)?);
    let union_step = union_step_complex(q, a, k)?.union;
    Ok(CircularStep { intersection, predicted, reflected, union_step })
}

/// Which complex to construct, with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum Family {
    Linear { r: u32, q: u32 },
    LinearExtendable { r: u32, q: u32, a: u32 },
    Cyclic { p: u32, q: u32 },
    CyclicExtendable { p: u32, q: u32, a: u32 },
    Truncated { q: u32, a: u32, k: u32 },
}

impl Family {
    pub fn build(&self) -> Result<SimplicialComplex> {
        match *self {
            Family::Linear { r, q } => linear_stable(r, q),
            Family::LinearExtendable { r, q, a } => linear_stable_extendable(r, q, a),
            Family::Cyclic { p, q } => cyclic_stable(p, q),
            Family::CyclicExtendable { p, q, a } => cyclic_stable_extendable(p, q, a),
            Family::Truncated { q, a, k } => truncated_complex(q, a, k),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::RotationAction;
    use itertools::Itertools;
    use std::collections::BTreeSet;

    fn face(v: &[Vertex]) -> Face {
        Face::new(v.to_vec()).unwrap()
    }

    fn linear_gap_ok(s: &[Vertex], q: u32) -> bool {
        s.iter().tuple_combinations().all(|(a, b)| a.abs_diff(*b) >= q)
    }

    fn cyclic_gap_ok(s: &[Vertex], p: u32, q: u32) -> bool {
        s.iter().tuple_combinations().all(|(a, b)| {
            let d = a.abs_diff(*b);
            d.min(p - d) >= q
        })
    }

    /// All faces of the extendable complex, by filtering every subset of `[n]`.
    fn brute_force(n: u32, a: usize, stable: impl Fn(&[Vertex]) -> bool) -> BTreeSet<Face> {
        let all: Vec<Vec<Vertex>> = (0..=n as usize).flat_map(|s| (1..=n).combinations(s)).filter(|s| stable(s)).collect();
        let big: Vec<&Vec<Vertex>> = all.iter().filter(|s| s.len() >= a).collect();
        all.iter()
            .filter(|s| big.iter().any(|t| s.iter().all(|v| t.contains(v))))
            .map(|s| Face::from_sorted(s.clone()))
            .collect()
    }

    fn faces(k: &SimplicialComplex) -> BTreeSet<Face> {
        k.all_faces().into_iter().collect()
    }

    #[test]
    fn linear_small_cases() {
        let l = linear_stable(4, 2).unwrap();
        assert_eq!(l.maximal_faces(), &[face(&[1, 3]), face(&[1, 4]), face(&[2, 4])]);
        let l = linear_stable(3, 3).unwrap();
        assert_eq!(l.maximal_faces(), &[face(&[1]), face(&[2]), face(&[3])]);
        assert_eq!(linear_stable(1, 2).unwrap().maximal_faces(), &[face(&[1])]);
        assert!(linear_stable(4, 1).is_err());
    }

    #[test]
    fn linear_matches_brute_force() {
        for q in 2..=4 {
            for r in 1..=12 {
                for a in 0..=5 {
                    let built = linear_stable_extendable(r, q, a).unwrap();
                    let oracle = brute_force(r, a as usize, |s| linear_gap_ok(s, q));
                    assert_eq!(faces(&built), oracle, "L^{a}_{r} q={q}");
                }
            }
        }
    }

    #[test]
    fn cyclic_matches_brute_force() {
        for q in 2..=4 {
            for p in 1..=13 {
                for a in 0..=4 {
                    let built = cyclic_stable_extendable(p, q, a).unwrap();
                    let oracle = brute_force(p, a as usize, |s| cyclic_gap_ok(s, p, q));
                    assert_eq!(faces(&built), oracle, "C^{a}_{p} q={q}");
                }
            }
        }
    }

    #[test]
    fn cyclic_examples() {
        let pentagon = cyclic_stable(5, 2).unwrap();
        assert_eq!(pentagon.maximal_faces().len(), 5);
        assert!(pentagon.maximal_faces().iter().all(|f| f.len() == 2));
        assert_eq!(cyclic_stable(4, 4).unwrap().maximal_faces().len(), 4);
        assert_eq!(cyclic_stable_extendable(7, 2, 2).unwrap(), cyclic_stable(7, 2).unwrap());
        let c7 = cyclic_stable(7, 2).unwrap();
        assert_eq!(c7.faces_of_dim(1).len(), 14);
        assert_eq!(c7.faces_of_dim(2).len(), 7);
        // independent pairs of the 7-cycle that are non-faces: the 7 cycle edges
        let non_edges = (1..=7u32).tuple_combinations().filter(|(a, b)| !c7.contains_face(&face(&[*a, *b]))).count();
        assert_eq!(non_edges, 7);
    }

    #[test]
    fn p_equals_aq_gives_disjoint_simplices() {
        for (q, a) in [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)] {
            let c = cyclic_stable_extendable(a * q, q, a).unwrap();
            assert_eq!(c.maximal_faces().len(), q as usize);
            let fs = c.maximal_faces();
            assert!(fs.iter().tuple_combinations().all(|(x, y)| x.is_disjoint(y)));
        }
    }

    #[test]
    fn extendable_single_face_and_emptiness() {
        for q in 2..=5 {
            for a in 1..=5 {
                let r = (a - 1) * q + 1;
                let l = linear_stable_extendable(r, q, a).unwrap();
                let expected: Vec<Vertex> = (0..a).map(|i| i * q + 1).collect();
                assert_eq!(l.maximal_faces(), &[Face::from_sorted(expected)]);
            }
        }
        for q in 2..=5u32 {
            for a in 1..=6u32 {
                for r in 1..=25u32 {
                    let l = linear_stable_extendable(r, q, a).unwrap();
                    assert_eq!(l.is_void(), r <= (a - 1) * q, "q={q} a={a} r={r}");
                }
            }
        }
    }

    #[test]
    fn l7_is_l7_cubed_when_all_maximal_faces_are_large() {
        let l7 = linear_stable(7, 2).unwrap();
        let l73 = linear_stable_extendable(7, 2, 3).unwrap();
        let census_ok = l7.maximal_faces().iter().all(|f| f.len() >= 3);
        assert_eq!(census_ok, l7 == l73);
    }

    #[test]
    fn properties_i_and_ii() {
        for q in 2..=5u32 {
            for a in 1..=6u32 {
                let p = (a + 1) * q + 1;
                if p > 31 {
                    continue;
                }
                let c = cyclic_stable_extendable(p, q, a).unwrap();
                assert!(c.is_rotation_invariant(&RotationAction::new(p).unwrap()).unwrap());
                let first: Vec<Vertex> = (1..=q).collect();
                assert_eq!(c.find_independent_set(q as usize), Some(Face::from_sorted(first)));
            }
        }
    }

    #[test]
    fn linear_complex_in_cycle_universe_is_not_invariant() {
        let l7 = linear_stable(7, 2).unwrap();
        assert!(!l7.is_rotation_invariant(&RotationAction::new(7).unwrap()).unwrap());
        let full = SimplicialComplex::full_simplex(7);
        assert!(full.is_rotation_invariant(&RotationAction::new(7).unwrap()).unwrap());
    }

    #[test]
    fn translates_and_relabels() {
        let t = linear_stable_extendable(4, 3, 2).unwrap().translate(2).unwrap();
        assert_eq!(t.maximal_faces(), &[face(&[3, 6])]);
        let t = linear_stable_extendable(7, 3, 2).unwrap().translate(5).unwrap();
        assert!(t.vertices().iter().all(|v| (6..=12).contains(v)));
        // x ↦ r+k−x sends L^a_{r−1}+k to L^a_{r−1}
        for (q, a, k) in [(3, 2, 1), (3, 3, 2), (2, 3, 1)] {
            let r = a * q + 2;
            let l = linear_stable_extendable(r - 1, q, a).unwrap();
            let moved = reflect(&l.translate(k as i64).unwrap(), r + k).unwrap();
            assert!(same_faces(&moved, &l));
        }
    }

    #[test]
    fn truncated_complex_matches_definition() {
        // q=3, a=3, k=1: m = 6, maximal faces of L^2_6 are pairs {i, j} with j − i ≥ 3
        let t = truncated_complex(3, 3, 1).unwrap();
        let l = linear_stable_extendable(6, 3, 2).unwrap();
        let oracle: Vec<Face> = l
            .maximal_faces()
            .iter()
            .filter(|f| !f.contains(1) || !f.contains(6))
            .cloned()
            .collect();
        assert_eq!(t.maximal_faces(), oracle.as_slice());
        assert!(!t.contains_face(&face(&[1, 6])));
        assert!(truncated_complex(3, 3, 3).is_err());
        assert!(truncated_complex(3, 1, 1).is_err());
        let t = truncated_complex(3, 2, 1).unwrap();
        assert_eq!(t.maximal_faces(), &[face(&[1]), face(&[2]), face(&[3])]);
    }

    #[test]
    fn truncated_decomposes_into_two_linear_pieces() {
        for q in 2..=5u32 {
            for a in 2..=5u32 {
                for k in 1..q {
                    let m = truncated_size(q, a, k);
                    let t = truncated_complex(q, a, k).unwrap();
                    let first = linear_stable_extendable(m - 1, q, a - 1).unwrap().translate(1).unwrap();
                    let second = linear_stable_extendable(m - k, q, a - 1).unwrap();
                    assert!(same_faces(&t, &first.union(&second)), "q={q} a={a} k={k}");
                }
            }
        }
    }

    #[test]
    fn block_sequences() {
        let s = block_sequence(&face(&[2, 6]), 6, 3, 3).unwrap();
        assert_eq!(s, BlockSequence(vec![2, 3]));
        let s = block_sequence(&face(&[2, 5]), 6, 3, 3).unwrap();
        assert_eq!(s, BlockSequence(vec![2, 2]));
        let s = block_sequence(&face(&[1, 4]), 6, 3, 3).unwrap();
        assert_eq!(s, BlockSequence(vec![1, 1]));
        assert!(block_sequence(&face(&[1]), 8, 3, 3).is_err());
        assert!(block_sequence(&face(&[1, 4]), 9, 3, 3).is_err());
        assert!(block_sequence(&face(&[2, 6]), 8, 3, 3).is_err());
        for q in 2..=5u32 {
            for a in 2..=5u32 {
                for r in (a - 2) * q + 1..=(a - 1) * q {
                    let l = linear_stable_extendable(r, q, a - 1).unwrap();
                    for f in l.maximal_faces() {
                        let s = block_sequence(f, r, q, a).unwrap();
                        assert_eq!(s.0.len(), (a - 1) as usize);
                        assert!(s.is_monotone() && s.is_bounded(r - (a - 2) * q));
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_identity() {
        assert!(verify_decomposition(6, 7, 2, 2).unwrap().holds);
        assert!(verify_decomposition(11, 13, 3, 3).unwrap().holds);
        assert!(verify_decomposition(7, 7, 2, 2).is_err());
        for q in 2..=4 {
            for a in 1..=5 {
                for r in 1..=16 {
                    let check = verify_decomposition(r, r + q - 1, q, a).unwrap();
                    assert!(check.holds, "q={q} a={a} r={r}: {:?}", check.counterexample);
                }
            }
        }
    }

    #[test]
    fn linear_complex_is_extendable_at_floor_ratio() {
        assert!(verify_linear_equals_extendable(7, 2).unwrap().holds);
        assert!(verify_linear_equals_extendable(5, 3).unwrap().holds);
        assert!(verify_linear_equals_extendable(12, 2).unwrap().holds);
        for q in 2..=4 {
            for r in 1..=20 {
                assert!(verify_linear_equals_extendable(r, q).unwrap().holds);
            }
        }
        // one more element than the floor is already too many
        assert!(!linear_stable(12, 2).unwrap().maximal_faces().iter().all(|f| f.len() >= 5));
    }

    #[test]
    fn union_step_intersections() {
        for q in 2..=4u32 {
            for a in 2..=5u32 {
                for k in 1..q {
                    let step = union_step_complex(q, a, k).unwrap();
                    let check = step.intersection_identity();
                    assert!(check.holds, "q={q} a={a} k={k}: {:?}", check.counterexample);
                    if k == q - 1 {
                        let (meet, predicted) = step.bipyramid().unwrap();
                        assert!(same_faces(&meet, &predicted), "q={q} a={a}");
                    } else {
                        assert!(step.sigma_star.is_none());
                    }
                }
            }
        }
        let step = union_step_complex(2, 3, 1).unwrap();
        assert_eq!(step.sigma_star, Some(face(&[2, 4, 6])));
        assert!(union_step_complex(2, 3, 2).is_err());
    }

    #[test]
    fn circular_step_identities() {
        let step = circular_step(3, 2, 1).unwrap();
        assert!(step.intersection_identity().holds);
        for q in 2..=4u32 {
            for a in 2..=5u32 {
                for k in 1..q {
                    let step = circular_step(q, a, k).unwrap();
                    assert!(step.intersection_identity().holds, "q={q} a={a} k={k}");
                    assert!(step.reflection_identity().holds, "q={q} a={a} k={k}");
                }
            }
        }
    }

    #[test]
    fn literal_truncation_agrees_below_last_offset() {
        for q in 2..=5 {
            for a in 2..=5 {
                for k in 1..q {
                    let lit = truncated_complex_maximal(q, a, k).unwrap();
                    let gen = truncated_complex(q, a, k).unwrap();
                    assert_eq!(same_faces(&lit, &gen), k + 1 < q, "q={q} a={a} k={k}");
                }
            }
        }
    }
}
