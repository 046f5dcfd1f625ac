//! Exact linear programming over the rationals.
//!
//! Problems are in equality form `A x = b, x ≥ 0`. The solver is a dense
//! two-phase tableau simplex with Bland's rule, so it always terminates.
//! Infeasibility comes with a Farkas certificate `y` satisfying `yᵀA ≤ 0`
//! and `yᵀb > 0`.

use num_traits::{One, Signed, Zero};

pub use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced costs of the current minimisation objective.
    cost: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        if !p.is_one() {
            for v in self.rows[r].iter_mut() {
                *v /= &p;
            }
            self.rhs[r] /= &p;
        }
        let (pivot_row, pivot_rhs) = (self.rows[r].clone(), self.rhs[r].clone());
        let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for &j in &nonzero {
                let v = &f * &pivot_row[j];
                self.rows[i][j] -= v;
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for &j in &nonzero {
                let v = &f * &pivot_row[j];
                self.cost[j] -= v;
            }
            self.value -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Minimises over columns `< allowed`; `false` if unbounded.
    fn run(&mut self, allowed: usize) -> bool {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let width = self.rows.first().map_or(costs.len(), Vec::len);
        let mut cost: Vec<Rational> = (0..width).map(|j| costs.get(j).cloned().unwrap_or_else(Rational::zero)).collect();
        let mut value = Rational::zero();
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = costs.get(bj).cloned().unwrap_or_else(Rational::zero);
            if cb.is_zero() {
                continue;
            }
            for (j, v) in self.rows[i].iter().enumerate() {
                if !v.is_zero() {
                    cost[j] -= &cb * v;
                }
            }
            value -= &cb * &self.rhs[i];
        }
        self.cost = cost;
        self.value = value;
    }
}

/// Maximises `c·x` subject to `A x = b, x ≥ 0`; with `c = None` only
/// feasibility is decided (the optimum value is then zero).
pub fn solve(a: &[Vec<Rational>], b: &[Rational], c: Option<&[Rational]>) -> LpOutcome {
    let m = a.len();
    let n = a.first().map_or_else(|| c.map_or(0, <[_]>::len), Vec::len);
    assert_eq!(b.len(), m, "right-hand side length");
    let mut sign = vec![Rational::one(); m];
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n, "ragged constraint matrix");
        let flip = b[i].is_negative();
        if flip {
            sign[i] = -Rational::one();
        }
        let mut row: Vec<Rational> = a[i].iter().map(|v| if flip { -v } else { v.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(b[i].abs());
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect(), cost: Vec::new(), value: Rational::zero() };
    let phase1: Vec<Rational> = (0..n + m).map(|j| if j < n { Rational::zero() } else { Rational::one() }).collect();
    t.set_objective(&phase1);
    t.run(n + m);
    // t.value is minus the current objective
    if t.value.is_negative() {
        // y_i = 1 − reduced cost of artificial i, mapped back through the row flips
        let farkas = (0..m).map(|i| (Rational::one() - &t.cost[n + i]) * &sign[i]).collect();
        return LpOutcome::Infeasible { farkas };
    }
    // drive zero-valued artificials out of the basis
    let mut keep = vec![true; m];
    for i in 0..m {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => keep[i] = false,
            }
        }
    }
    let mut it = keep.iter();
    t.rows.retain(|_| *it.next().unwrap());
    let mut it = keep.iter();
    t.rhs.retain(|_| *it.next().unwrap());
    let mut it = keep.iter();
    t.basis.retain(|_| *it.next().unwrap());
    let neg: Vec<Rational> = match c {
        Some(c) => c.iter().map(|v| -v).collect(),
        None => vec![Rational::zero(); n],
    };
    t.set_objective(&neg);
    if !t.run(n) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bj) in t.basis.iter().enumerate() {
        if bj < n {
            x[bj] = t.rhs[i].clone();
        }
    }
    LpOutcome::Optimal { x, value: t.value }
}

/// A point of `{x ≥ 0 : A x = b}`, or a Farkas certificate.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Result<Vec<Rational>, Vec<Rational>> {
    match solve(a, b, None) {
        LpOutcome::Optimal { x, .. } => Ok(x),
        LpOutcome::Infeasible { farkas } => Err(farkas),
        LpOutcome::Unbounded => unreachable!("zero objective is bounded"),
    }
}

pub fn satisfies(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) -> bool {
    x.iter().all(|v| !v.is_negative())
        && a.iter().zip(b).all(|(row, bi)| row.iter().zip(x).map(|(p, q)| p * q).sum::<Rational>() == *bi)
}

/// `yᵀA ≤ 0` and `yᵀb > 0`, which rules out any `x ≥ 0` with `A x = b`.
pub fn is_farkas_certificate(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) -> bool {
    let n = a.first().map_or(0, Vec::len);
    let yb: Rational = y.iter().zip(b).map(|(p, q)| p * q).sum();
    yb.is_positive() && (0..n).all(|j| !a.iter().zip(y).map(|(row, yi)| &row[j] * yi).sum::<Rational>().is_positive())
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect()
    }

    fn vecq(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // max x1 + x2, x1 + 2x2 + s1 = 4, 3x1 + x2 + s2 = 6
        let a = mat(&[&[1, 2, 1, 0], &[3, 1, 0, 1]]);
        let out = solve(&a, &vecq(&[4, 6]), Some(&vecq(&[1, 1, 0, 0])));
        match out {
            LpOutcome::Optimal { x, value } => {
                assert_eq!(value, ratio(14, 5));
                assert_eq!(&x[..2], &[ratio(8, 5), ratio(6, 5)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_has_certificate() {
        let a = mat(&[&[1, 1], &[1, 1]]);
        let b = vecq(&[1, 2]);
        let y = feasible_point(&a, &b).unwrap_err();
        assert!(is_farkas_certificate(&a, &b, &y));
        let a = mat(&[&[1, -1]]);
        let b = vecq(&[-3]);
        assert!(feasible_point(&a, &b).is_ok());
        let a = mat(&[&[1, 2]]);
        let y = feasible_point(&a, &vecq(&[-1])).unwrap_err();
        assert!(is_farkas_certificate(&a, &vecq(&[-1]), &y));
    }

    #[test]
    fn unbounded_and_degenerate() {
        let a = mat(&[&[1, -1]]);
        assert_eq!(solve(&a, &vecq(&[0]), Some(&vecq(&[1, 0]))), LpOutcome::Unbounded);
        // redundant rows
        let a = mat(&[&[1, 1, 1], &[2, 2, 2]]);
        let x = feasible_point(&a, &vecq(&[1, 2])).unwrap();
        assert!(satisfies(&a, &vecq(&[1, 2]), &x));
    }

    proptest! {
        #[test]
        fn outcome_is_certified(entries in proptest::collection::vec(-4i64..=4, 12), rhs in proptest::collection::vec(-5i64..=5, 3)) {
            let a: Vec<Vec<Rational>> = entries.chunks(4).map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let b: Vec<Rational> = rhs.iter().map(|&v| int(v)).collect();
            match feasible_point(&a, &b) {
                Ok(x) => prop_assert!(satisfies(&a, &b, &x)),
                Err(y) => prop_assert!(is_farkas_certificate(&a, &b, &y)),
            }
        }

        #[test]
        fn optimum_beats_vertices(entries in proptest::collection::vec(0i64..=4, 6), c in proptest::collection::vec(-3i64..=3, 3)) {
            // bounded: sum of x equals 1 plus two more rows with slack
            let mut a: Vec<Vec<Rational>> = vec![vec![int(1), int(1), int(1)]];
            a.extend(entries.chunks(3).map(|r| r.iter().map(|&v| int(v)).collect::<Vec<_>>()));
            for (i, row) in a.iter_mut().enumerate() {
                row.extend((0..2).map(|k| if i == k + 1 { int(1) } else { int(0) }));
            }
            let b = vec![int(1), int(4), int(4)];
            let cost: Vec<Rational> = c.iter().map(|&v| int(v)).chain([int(0), int(0)]).collect();
            if let LpOutcome::Optimal { x, value } = solve(&a, &b, Some(&cost)) {
                prop_assert!(satisfies(&a, &b, &x));
                let achieved: Rational = x.iter().zip(&cost).map(|(p, q)| p * q).sum();
                prop_assert_eq!(&achieved, &value);
                // every feasible unit vector is no better
                for j in 0..3 {
                    let mut e = vec![int(0); 5];
                    e[j] = int(1);
                    e[3] = int(4) - &a[1][j];
                    e[4] = int(4) - &a[2][j];
                    if satisfies(&a, &b, &e) {
                        prop_assert!(cost[j] <= value);
                    }
                }
            }
        }
    }
}
