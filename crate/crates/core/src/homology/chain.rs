use std::collections::HashMap;

use rayon::prelude::*;

use super::reduce::SparseMatrix;
use crate::complex::{Face, SimplicialComplex};
use crate::error::{Error, Result};

/// Augmented simplicial chain complex of a nonempty complex.
///
/// Degree −1 holds the empty face, so homology computed from it is reduced.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    /// `bases[k + 1]` lists the faces of dimension `k`.
    bases: Vec<Vec<Face>>,
    /// `boundaries[k + 1]` is ∂_k: C_k → C_{k−1}; ∂_{−1} is the zero map.
    boundaries: Vec<SparseMatrix>,
}

/// Signed boundary of `face` in terms of the basis indices of its facets.
fn boundary_column(face: &Face, index: &HashMap<&Face, u32>) -> Vec<(u32, i64)> {
    let mut col: Vec<(u32, i64)> = face
        .facets()
        .enumerate()
        .map(|(i, facet)| (index[&facet], if i % 2 == 0 { 1 } else { -1 }))
        .collect();
    col.sort_unstable();
    col
}

pub fn chain_complex(complex: &SimplicialComplex) -> Result<ChainComplex> {
    chain_complex_through(complex, i64::MAX)
}

/// Chain complex truncated above dimension `max_dim`.
pub fn chain_complex_through(complex: &SimplicialComplex, max_dim: i64) -> Result<ChainComplex> {
    let Some(dim) = complex.dim() else {
        return Err(Error::domain("chain complex of the void complex"));
    };
    let top = dim.min(max_dim.max(-1));
    let bases: Vec<Vec<Face>> = (-1..=top).into_par_iter().map(|k| complex.faces_of_dim(k)).collect();
    let mut boundaries = vec![SparseMatrix::zeros(0, bases[0].len())];
    let built: Vec<SparseMatrix> = (1..bases.len())
        .into_par_iter()
        .map(|i| {
            let index: HashMap<&Face, u32> = bases[i - 1].iter().enumerate().map(|(n, f)| (f, n as u32)).collect();
            let cols = bases[i].iter().map(|f| boundary_column(f, &index)).collect();
            SparseMatrix { nrows: bases[i - 1].len(), ncols: bases[i].len(), cols }
        })
        .collect();
    boundaries.extend(built);
    let chain = ChainComplex { bases, boundaries };
    if !chain.boundary_squares_to_zero() {
        return Err(Error::Malformed("boundary of a boundary is nonzero".into()));
    }
    Ok(chain)
}

impl ChainComplex {
    /// Highest dimension present.
    pub fn top_dim(&self) -> i64 {
        self.bases.len() as i64 - 2
    }

    pub fn basis(&self, k: i64) -> &[Face] {
        usize::try_from(k + 1).ok().and_then(|i| self.bases.get(i)).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, k: i64) -> usize {
        self.basis(k).len()
    }

    /// ∂_k, or `None` outside the stored range.
    pub fn boundary(&self, k: i64) -> Option<&SparseMatrix> {
        usize::try_from(k + 1).ok().and_then(|i| self.boundaries.get(i))
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        (1..self.boundaries.len()).into_par_iter().all(|i| {
            self.boundaries[i - 1].mul(&self.boundaries[i]).is_some_and(|m| m.is_zero())
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_boundary_incidence() {
        let c = chain_complex(&SimplicialComplex::simplex_boundary(3)).unwrap();
        assert_eq!(c.top_dim(), 1);
        let d1 = c.boundary(1).unwrap().to_dense();
        // columns {1,2},{1,3},{2,3}; rows 1,2,3
        assert_eq!(d1, vec![vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        assert_eq!(c.boundary(0).unwrap().to_dense(), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn single_vertex_has_trivial_matrices() {
        let c = chain_complex(&SimplicialComplex::full_simplex(1)).unwrap();
        assert_eq!(c.top_dim(), 0);
        assert_eq!(c.boundary(0).unwrap().to_dense(), vec![vec![1]]);
        assert!(c.boundary(1).is_none());
    }

    #[test]
    fn cyclic_seven_census() {
        let k = crate::family::cyclic_stable(7, 2).unwrap();
        let c = chain_complex(&k).unwrap();
        assert_eq!((c.rank(0), c.rank(1), c.rank(2)), (7, 14, 7));
    }

    #[test]
    fn void_is_rejected() {
        assert!(chain_complex(&SimplicialComplex::void(vec![1])).is_err());
    }
}
