use std::ops::ControlFlow;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{boxes_meet, for_each_partition, PointConfiguration};
use crate::error::{Error, Result};
use crate::lp::{solve, LpOutcome, Rational};
use crate::rational::serde_vec;

/// `q` vertex-disjoint triangles and a point strictly inside each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BirchCertificate {
    pub triangles: Vec<[usize; 3]>,
    #[serde(with = "serde_vec")]
    pub point: Vec<Rational>,
}

/// Twice the signed area of `(a, b, c)`.
pub fn orientation(a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0])
}

impl BirchCertificate {
    /// All `3q` orientation determinants are nonzero with the sign of their
    /// triangle.
    pub fn verify(&self, config: &PointConfiguration) -> std::result::Result<(), String> {
        if config.dim != 2 || self.point.len() != 2 {
            return Err("Birch certificates are planar".into());
        }
        let mut seen = vec![false; config.len()];
        for t in &self.triangles {
            for &i in t {
                if i >= config.len() || std::mem::replace(&mut seen[i], true) {
                    return Err(format!("index {i} repeated or out of range"));
                }
            }
            let [a, b, c] = t.map(|i| config.points[i].as_slice());
            let s = orientation(a, b, c);
            if s.is_zero() {
                return Err(format!("triangle {t:?} is degenerate"));
            }
            let y = self.point.as_slice();
            for (u, v) in [(a, b), (b, c), (c, a)] {
                let o = orientation(u, v, y);
                if o.is_zero() || o.is_positive() != s.is_positive() {
                    return Err(format!("point is not strictly inside triangle {t:?}"));
                }
            }
        }
        Ok(())
    }
}

/// Largest margin `t ≤ 1` with every edge orientation of `y` at least `t`;
/// a strict interior point exists exactly when it is positive.
fn surrounded_point(config: &PointConfiguration, triangles: &[[usize; 3]]) -> Option<Vec<Rational>> {
    // columns: y⁺x, y⁻x, y⁺y, y⁻y, t, slack per edge, slack for t ≤ 1
    let edges: Vec<(usize, usize)> = triangles
        .iter()
        .flat_map(|t| {
            let [a, b, c] = t.map(|i| config.points[i].as_slice());
            let t = if orientation(a, b, c).is_positive() { *t } else { [t[0], t[2], t[1]] };
            [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])]
        })
        .collect();
    let ncols = 5 + edges.len() + 1;
    let mut rows = Vec::with_capacity(edges.len() + 1);
    let mut rhs = Vec::with_capacity(edges.len() + 1);
    for (k, &(ia, ib)) in edges.iter().enumerate() {
        let (a, b) = (&config.points[ia], &config.points[ib]);
        let dx = &b[0] - &a[0];
        let dy = &b[1] - &a[1];
        let mut row = vec![Rational::zero(); ncols];
        row[0] = -dy.clone();
        row[1] = dy.clone();
        row[2] = dx.clone();
        row[3] = -dx.clone();
        row[4] = -Rational::one();
        row[5 + k] = -Rational::one();
        rows.push(row);
        rhs.push(&dx * &a[1] - &dy * &a[0]);
    }
    let mut cap = vec![Rational::zero(); ncols];
    cap[4] = Rational::one();
    cap[ncols - 1] = Rational::one();
    rows.push(cap);
    rhs.push(Rational::one());
    let mut cost = vec![Rational::zero(); ncols];
    cost[4] = Rational::one();
    match solve(&rows, &rhs, Some(&cost)) {
        LpOutcome::Optimal { x, value } if value.is_positive() => Some(vec![&x[0] - &x[1], &x[2] - &x[3]]),
        _ => None,
    }
}

/// First partition of the `3q` planar points into non-degenerate triangles
/// sharing a strict interior point. Partitions containing a collinear
/// triple are skipped; if every partition has one, the input is rejected.
pub fn birch_certificate(config: &PointConfiguration, q: usize) -> Result<Option<BirchCertificate>> {
    if config.dim != 2 {
        return Err(Error::domain("Birch certificates need planar points"));
    }
    if q == 0 || config.len() != 3 * q {
        return Err(Error::domain(format!("expected {} points, found {}", 3 * q, config.len())));
    }
    let mut degenerate_only = true;
    let found = for_each_partition(config.len(), q, &[], &|b, _, blocks| blocks[b].len() < 3, &mut |blocks| {
        let triangles: Vec<[usize; 3]> = blocks.iter().map(|b| [b[0], b[1], b[2]]).collect();
        let flat = triangles.iter().any(|t| {
            let [a, b, c] = t.map(|i| config.points[i].as_slice());
            orientation(a, b, c).is_zero()
        });
        if flat {
            return ControlFlow::Continue(());
        }
        degenerate_only = false;
        if !boxes_meet(blocks, config) {
            return ControlFlow::Continue(());
        }
        match surrounded_point(config, &triangles) {
            Some(point) => ControlFlow::Break(BirchCertificate { triangles, point }),
            None => ControlFlow::Continue(()),
        }
    });
    if found.is_none() && degenerate_only {
        return Err(Error::domain("every triple partition contains a collinear triple"));
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::ratio;

    #[test]
    fn nested_triangles() {
        let cfg = PointConfiguration::from_integers(&[&[0, 0], &[12, 0], &[0, 12], &[2, 2], &[5, 2], &[2, 5]]).unwrap();
        let cert = birch_certificate(&cfg, 2).unwrap().unwrap();
        cert.verify(&cfg).unwrap();
        // the inner centroid is a valid witness as well
        let inner = BirchCertificate { triangles: vec![[0, 1, 2], [3, 4, 5]], point: vec![ratio(3, 1), ratio(3, 1)] };
        inner.verify(&cfg).unwrap();
    }

    #[test]
    fn convex_hexagon() {
        let cfg = PointConfiguration::from_integers(&[&[2, 0], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]]).unwrap();
        let cert = birch_certificate(&cfg, 2).unwrap().unwrap();
        cert.verify(&cfg).unwrap();
    }

    #[test]
    fn boundary_contact_is_rejected() {
        let cfg = PointConfiguration::from_integers(&[&[0, 0], &[4, 0], &[0, 4]]).unwrap();
        let on_edge = BirchCertificate { triangles: vec![[0, 1, 2]], point: vec![ratio(2, 1), ratio(0, 1)] };
        assert!(on_edge.verify(&cfg).is_err());
    }

    #[test]
    fn collinear_input_is_rejected() {
        let cfg = PointConfiguration::from_integers(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3], &[4, 4], &[5, 5]]).unwrap();
        assert!(matches!(birch_certificate(&cfg, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn separated_clusters_still_interlock() {
        let cfg = PointConfiguration::from_integers(&[&[0, 0], &[1, 0], &[0, 1], &[100, 100], &[101, 100], &[100, 101]]).unwrap();
        let cert = birch_certificate(&cfg, 2).unwrap().unwrap();
        cert.verify(&cfg).unwrap();
        assert_ne!(cert.triangles[0], [0, 1, 2]);
    }
}
