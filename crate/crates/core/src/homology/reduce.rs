//! Invariant factors of sparse integer matrices.
//!
//! Elimination runs on unit pivots only (±1 over ℤ, any nonzero entry over
//! GF(p)), which is exact and keeps the remaining entries small on boundary
//! matrices. Whatever survives without a unit entry is handed to a dense
//! Smith normal form over arbitrary-precision integers.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Column-major sparse matrix with small integer entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    /// Per column, `(row, value)` sorted by row.
    pub cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.cols[col]
            .binary_search_by_key(&(row as u32), |e| e.0)
            .map(|i| self.cols[col][i].1)
            .unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.ncols]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                out[i as usize][j] = v;
            }
        }
        out
    }

    /// `self · rhs`, or `None` on overflow.
    pub fn mul(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.ncols, rhs.nrows);
        let mut out = SparseMatrix::zeros(self.nrows, rhs.ncols);
        for (j, col) in rhs.cols.iter().enumerate() {
            let mut acc: std::collections::BTreeMap<u32, i64> = Default::default();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k as usize] {
                    let e = acc.entry(i).or_insert(0);
                    *e = e.checked_add(a.checked_mul(b)?)?;
                }
            }
            out.cols[j] = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.iter().all(|&(_, v)| v == 0))
    }
}

/// Coefficient arithmetic used by the elimination.
trait Ring: Copy + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_zero(self) -> bool;
    fn is_unit(self) -> bool;
    /// `a − (b / pivot) · c` for a unit `pivot`, or `None` on overflow.
    fn eliminate(a: Self, b: Self, pivot: Self, c: Self) -> Option<Self>;
    fn to_i64(self) -> i64;
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Int(i64);

impl Ring for Int {
    fn from_i64(v: i64) -> Self {
        Int(v)
    }
    fn is_zero(self) -> bool {
        self.0 == 0
    }
    fn is_unit(self) -> bool {
        self.0 == 1 || self.0 == -1
    }
    fn eliminate(a: Self, b: Self, pivot: Self, c: Self) -> Option<Self> {
        // pivot is ±1, so b / pivot = b · pivot
        let f = b.0.checked_mul(pivot.0)?;
        a.0.checked_sub(f.checked_mul(c.0)?).map(Int)
    }
    fn to_i64(self) -> i64 {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct ModP {
    v: u64,
    p: u64,
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

thread_local! {
    static MODULUS: std::cell::Cell<u64> = const { std::cell::Cell::new(2) };
}

impl Ring for ModP {
    fn from_i64(v: i64) -> Self {
        let p = MODULUS.with(|m| m.get());
        ModP { v: v.rem_euclid(p as i64) as u64, p }
    }
    fn is_zero(self) -> bool {
        self.v == 0
    }
    fn is_unit(self) -> bool {
        self.v != 0
    }
    fn eliminate(a: Self, b: Self, pivot: Self, c: Self) -> Option<Self> {
        let p = a.p as u128;
        let inv = pow_mod(pivot.v, a.p - 2, a.p) as u128;
        let f = (b.v as u128 * inv % p) * c.v as u128 % p;
        Some(ModP { v: ((a.v as u128 + p - f) % p) as u64, p: a.p })
    }
    fn to_i64(self) -> i64 {
        self.v as i64
    }
}

/// Result of reducing one matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvariantFactors {
    /// Number of nonzero invariant factors.
    pub rank: usize,
    /// Invariant factors greater than one, ascending.
    pub torsion: Vec<BigInt>,
}

struct Eliminator<R: Ring> {
    rows: Vec<Vec<(u32, R)>>,
    cols: Vec<HashSet<u32>>,
    col_alive: Vec<bool>,
    rank: usize,
}

fn row_get<R: Ring>(row: &[(u32, R)], col: u32) -> Option<R> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|i| row[i].1)
}

impl<R: Ring> Eliminator<R> {
    fn new(m: &SparseMatrix) -> Self {
        let mut rows: Vec<Vec<(u32, R)>> = vec![Vec::new(); m.nrows];
        let mut cols: Vec<HashSet<u32>> = vec![HashSet::new(); m.ncols];
        for (j, col) in m.cols.iter().enumerate() {
            for &(i, v) in col {
                let r = R::from_i64(v);
                if !r.is_zero() {
                    rows[i as usize].push((j as u32, r));
                    cols[j].insert(i);
                }
            }
        }
        Eliminator { rows, cols, col_alive: vec![true; m.ncols], rank: 0 }
    }

    /// Shortest row holding a unit in column `j`.
    fn unit_row(&self, j: usize) -> Option<u32> {
        self.cols[j]
            .iter()
            .copied()
            .filter(|&i| row_get(&self.rows[i as usize], j as u32).is_some_and(R::is_unit))
            .min_by_key(|&i| (self.rows[i as usize].len(), i))
    }

    fn pivot(&mut self, i: u32, j: usize, touched: &mut Vec<usize>) -> Result<()> {
        let pivot_row = std::mem::take(&mut self.rows[i as usize]);
        let pivot = row_get(&pivot_row, j as u32).expect("pivot entry present");
        let mut others: Vec<u32> = self.cols[j].iter().copied().filter(|&r| r != i).collect();
        others.sort_unstable();
        for r in others {
            let row = std::mem::take(&mut self.rows[r as usize]);
            let b = row_get(&row, j as u32).expect("column index is consistent");
            let mut merged = Vec::with_capacity(row.len() + pivot_row.len());
            let (mut x, mut y) = (0, 0);
            while x < row.len() || y < pivot_row.len() {
                let cx = row.get(x).map(|e| e.0).unwrap_or(u32::MAX);
                let cy = pivot_row.get(y).map(|e| e.0).unwrap_or(u32::MAX);
                if cx < cy {
                    merged.push(row[x]);
                    x += 1;
                } else {
                    let a = if cx == cy { row[x].1 } else { R::from_i64(0) };
                    let v = R::eliminate(a, b, pivot, pivot_row[y].1).ok_or(Error::Overflow("sparse elimination"))?;
                    let col = cy as usize;
                    if v.is_zero() {
                        self.cols[col].remove(&r);
                    } else {
                        merged.push((cy, v));
                        self.cols[col].insert(r);
                    }
                    touched.push(col);
                    if cx == cy {
                        x += 1;
                    }
                    y += 1;
                }
            }
            self.rows[r as usize] = merged;
        }
        for &(c, _) in &pivot_row {
            self.cols[c as usize].remove(&i);
            touched.push(c as usize);
        }
        self.cols[j].clear();
        self.col_alive[j] = false;
        self.rank += 1;
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let ncols = self.cols.len();
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
            (0..ncols).map(|j| Reverse((self.cols[j].len(), j))).collect();
        let mut stuck: Vec<bool> = vec![false; ncols];
        let mut dirty: Vec<bool> = vec![false; ncols];
        let mut touched = Vec::new();
        loop {
            while let Some(Reverse((count, j))) = heap.pop() {
                if !self.col_alive[j] || count != self.cols[j].len() {
                    continue;
                }
                if count == 0 {
                    self.col_alive[j] = false;
                    continue;
                }
                match self.unit_row(j) {
                    Some(i) => {
                        touched.clear();
                        self.pivot(i, j, &mut touched)?;
                        touched.sort_unstable();
                        touched.dedup();
                        for &c in &touched {
                            if self.col_alive[c] {
                                dirty[c] = true;
                                if !stuck[c] {
                                    heap.push(Reverse((self.cols[c].len(), c)));
                                }
                            }
                        }
                    }
                    None => {
                        stuck[j] = true;
                        dirty[j] = false;
                    }
                }
            }
            let retry: Vec<usize> = (0..ncols).filter(|&j| self.col_alive[j] && stuck[j] && dirty[j]).collect();
            if retry.is_empty() {
                return Ok(());
            }
            for j in retry {
                stuck[j] = false;
                dirty[j] = false;
                heap.push(Reverse((self.cols[j].len(), j)));
            }
        }
    }

    /// Remaining nonzero block as a dense matrix.
    fn remainder(&self) -> Vec<Vec<BigInt>> {
        let live_cols: Vec<usize> = (0..self.cols.len()).filter(|&j| self.col_alive[j] && !self.cols[j].is_empty()).collect();
        let index: std::collections::HashMap<u32, usize> =
            live_cols.iter().enumerate().map(|(k, &j)| (j as u32, k)).collect();
        self.rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| {
                let mut dense = vec![BigInt::zero(); live_cols.len()];
                for &(c, v) in r {
                    dense[index[&c]] = BigInt::from(v.to_i64());
                }
                dense
            })
            .collect()
    }
}

/// Rank and torsion coefficients of an integer matrix.
pub fn integer_invariant_factors(m: &SparseMatrix) -> Result<InvariantFactors> {
    let mut elim = Eliminator::<Int>::new(m);
    elim.run()?;
    let rest = elim.remainder();
    let diag = smith_diagonal(rest);
    let mut torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
    torsion.sort();
    Ok(InvariantFactors { rank: elim.rank + diag.len(), torsion })
}

/// Rank over GF(p); `p` must be prime.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> Result<usize> {
    MODULUS.with(|c| c.set(p));
    let mut elim = Eliminator::<ModP>::new(m);
    elim.run()?;
    debug_assert!(elim.rows.iter().all(|r| r.is_empty()));
    Ok(elim.rank)
}

/// Nonzero diagonal entries (absolute values) of the Smith normal form of a
/// dense integer matrix.
pub fn smith_diagonal(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let nrows = a.len();
    let ncols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        // smallest nonzero entry of the trailing block
        let Some((pi, pj)) = (t..nrows)
            .flat_map(|i| (t..ncols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..ncols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = v;
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = v;
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // divisibility: fold an offending row into row t and repeat
            let offending = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    for j in t..ncols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

#[cfg(test)]
fn smith_diagonal_i64(a: &[Vec<i64>]) -> Vec<i64> {
    use num_traits::ToPrimitive;
    smith_diagonal(a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
        .into_iter()
        .map(|d| d.to_i64().expect("small invariant factor"))
        .collect()
}
