use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{boxes_meet, common_point, CommonPoint, PartitionCertificate, PointConfiguration};
use crate::complex::{Face, RotationAction, SimplicialComplex, Vertex};
use crate::error::{Error, Result};
use crate::homology::is_prime;

/// Label assignments examined before the cover search gives up.
pub const DEFAULT_ASSIGNMENT_CAP: u64 = 2_000_000;

/// `faces[j]` holds the vertices labelled `j+1`; `labels[v]` lists the
/// labels of vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCover {
    pub faces: Vec<Vec<usize>>,
    pub labels: Vec<Vec<Vertex>>,
}

impl LabelCover {
    fn from_labels(labels: Vec<Vec<Vertex>>, p: u32) -> Self {
        let mut faces = vec![Vec::new(); p as usize];
        for (v, ls) in labels.iter().enumerate() {
            for &j in ls {
                faces[j as usize - 1].push(v);
            }
        }
        LabelCover { faces, labels }
    }

    /// Every label set is a face of `sigma` and `faces` matches `labels`.
    pub fn verify(&self, sigma: &SimplicialComplex) -> bool {
        let p = self.faces.len() as u32;
        let consistent = Self::from_labels(self.labels.clone(), p) == *self;
        consistent
            && self.labels.iter().all(|ls| Face::new(ls.clone()).is_ok_and(|f| sigma.contains_face(&f)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaCover {
    pub cover: LabelCover,
    pub certificate: PartitionCertificate,
}

/// Assigns each point a maximal face of `sigma` as its label set (larger
/// label sets only enlarge the faces), then asks the LP for a common point
/// of the `p` labelled faces. Assignments are tried in odometer order over
/// the maximal faces; at most `cap` are examined.
pub fn sigma_constrained_cover(
    config: &PointConfiguration,
    sigma: &SimplicialComplex,
    p: u32,
    cap: u64,
) -> Result<Option<SigmaCover>> {
    if sigma.universe() != (1..=p).collect::<Vec<_>>().as_slice() {
        return Err(Error::domain(format!("constraint complex must live on [1..={p}]")));
    }
    if sigma.is_void() {
        return Err(Error::domain("constraint complex is void"));
    }
    let facets: Vec<&[Vertex]> = sigma.maximal_faces().iter().map(Face::vertices).collect();
    let widest = facets.iter().map(|f| f.len()).max().unwrap_or(0);
    let n = config.len();
    if n == 0 || widest == 0 || n * widest < p as usize {
        return Ok(None);
    }
    let mut choice = vec![0usize; n];
    let mut examined = 0u64;
    loop {
        examined += 1;
        if examined > cap {
            return Err(Error::Exhausted(format!("{cap} label assignments examined without a cover")));
        }
        let labels: Vec<Vec<Vertex>> = choice.iter().map(|&c| facets[c].to_vec()).collect();
        let covered = labels.iter().flatten().unique().count() == p as usize;
        if covered {
            let cover = LabelCover::from_labels(labels, p);
            if boxes_meet(&cover.faces, config) {
                if let CommonPoint::Found(certificate) = common_point(&cover.faces, config, None)? {
                    return Ok(Some(SigmaCover { cover, certificate }));
                }
            }
        }
        // odometer step, last vertex fastest
        let mut k = n;
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < facets.len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Least `m ∈ 0..p` with `(I + m) ∩ σ⁺ = ∅` under rotation of `[1..=p]`.
pub fn shift_to_avoid(independent: &Face, sigma_plus: &Face, sigma: &SimplicialComplex, p: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::domain(format!("p = {p} is not prime")));
    }
    if independent.len() >= p as usize {
        return Err(Error::domain(format!("|I| = {} must be smaller than p = {p}", independent.len())));
    }
    if let Some(v) = independent.vertices().iter().chain(sigma_plus.vertices()).find(|&&v| v == 0 || v > p) {
        return Err(Error::domain(format!("vertex {v} outside [1..={p}]")));
    }
    if let Some((u, v)) = independent.vertices().iter().tuple_combinations().find(|&(&u, &v)| {
        sigma.contains_face(&Face::new(vec![u, v]).expect("distinct vertices"))
    }) {
        return Err(Error::domain(format!("I is dependent: {{{u}, {v}}} is an edge of the complex")));
    }
    if !sigma.contains_face(sigma_plus) {
        return Err(Error::domain(format!("σ⁺ = {:?} is not a face of the complex", sigma_plus.vertices())));
    }
    let rot = RotationAction::new(p)?;
    (0..p)
        .find(|&m| rot.apply_face(independent, m as u64).is_disjoint(sigma_plus))
        .ok_or_else(|| Error::Exhausted("no rotation avoids σ⁺".into()))
}
