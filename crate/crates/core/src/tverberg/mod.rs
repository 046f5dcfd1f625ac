//! Exact search and verification of Tverberg-type partitions for affine
//! maps, given by the images of the simplex vertices.
//!
//! Point indices are 0-based throughout. All arithmetic is over the
//! rationals; certificates re-verify with zero tolerance.

mod birch;
mod sigma;
pub mod trials;
mod witness;

use std::ops::ControlFlow;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{feasible_point, Rational};
use crate::rational::{parse_rational, serde_mat, serde_vec};

pub use birch::{birch_certificate, orientation, BirchCertificate};
pub use sigma::{shift_to_avoid, sigma_constrained_cover, LabelCover, SigmaCover, DEFAULT_ASSIGNMENT_CAP};
pub use witness::{optimality_witness, random_configuration, OptimalityWitness, WITNESS_ATTEMPTS};
pub use trials::{run_trial, run_trials, TrialKind, TrialOutcome, TrialReport, TrialSpec};

/// Images of the simplex vertices: point `i` is `f(v_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub dim: usize,
    #[serde(with = "serde_mat")]
    pub points: Vec<Vec<Rational>>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("point dimension must be at least 1"));
        }
        if let Some(i) = points.iter().position(|p| p.len() != dim) {
            return Err(Error::Malformed(format!("point {i} has {} coordinates, expected {dim}", points[i].len())));
        }
        Ok(PointConfiguration { dim, points })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.first().map_or(1, |r| r.len());
        Self::new(dim, rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points file: one point per line, whitespace-separated coordinates,
    /// each an integer, a decimal or `num/den`. Blank lines and lines
    /// starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut dim = None;
        let mut points = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let coords = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|message| Error::Parse { line: n + 1, message })?;
            match dim {
                None => dim = Some(coords.len()),
                Some(d) if d != coords.len() => {
                    return Err(Error::Parse {
                        line: n + 1,
                        message: format!("expected {d} coordinates, found {}", coords.len()),
                    })
                }
                _ => {}
            }
            points.push(coords);
        }
        let dim = dim.ok_or(Error::Parse { line: 0, message: "no points".into() })?;
        Self::new(dim, points)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            let row: Vec<String> = p.iter().map(crate::rational::format_rational).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    fn combination(&self, part: &[usize], weights: &[Rational]) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); self.dim];
        for (&i, w) in part.iter().zip(weights) {
            for (c, x) in self.points[i].iter().enumerate() {
                y[c] += w * x;
            }
        }
        y
    }
}

/// Parts with convex weights whose images share `point`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub parts: Vec<Vec<usize>>,
    #[serde(with = "serde_vec")]
    pub point: Vec<Rational>,
    #[serde(with = "serde_mat")]
    pub weights: Vec<Vec<Rational>>,
}

impl PartitionCertificate {
    /// Convex weights per part, each combination equal to `point`.
    pub fn verify_common_point(&self, config: &PointConfiguration) -> std::result::Result<(), String> {
        if self.parts.len() != self.weights.len() {
            return Err("one weight vector per part expected".into());
        }
        if self.point.len() != config.dim {
            return Err("witness point has the wrong dimension".into());
        }
        for (j, (part, w)) in self.parts.iter().zip(&self.weights).enumerate() {
            if part.is_empty() || part.len() != w.len() {
                return Err(format!("part {j} is empty or has mismatched weights"));
            }
            if part.iter().any(|&i| i >= config.len()) {
                return Err(format!("part {j} has an index out of range"));
            }
            if w.iter().any(Signed::is_negative) || w.iter().sum::<Rational>() != Rational::one() {
                return Err(format!("part {j} weights are not convex"));
            }
            if config.combination(part, w) != self.point {
                return Err(format!("part {j} does not reach the witness point"));
            }
        }
        Ok(())
    }

    /// Common point plus pairwise disjoint parts.
    pub fn verify(&self, config: &PointConfiguration) -> std::result::Result<(), String> {
        self.verify_common_point(config)?;
        let mut seen = vec![false; config.len()];
        for part in &self.parts {
            for &i in part {
                if std::mem::replace(&mut seen[i], true) {
                    return Err(format!("index {i} appears in two parts"));
                }
            }
        }
        Ok(())
    }

    /// Each part meets each class at most once.
    pub fn is_rainbow(&self, classes: &[Vec<usize>]) -> bool {
        self.parts.iter().all(|part| classes.iter().all(|c| part.iter().filter(|i| c.contains(i)).count() <= 1))
    }

    /// Class masses agree across parts.
    pub fn has_equal_class_mass(&self, classes: &[Vec<usize>]) -> bool {
        let mass = |j: usize, c: &[usize]| -> Rational {
            self.parts[j].iter().zip(&self.weights[j]).filter(|(i, _)| c.contains(i)).map(|(_, w)| w.clone()).sum()
        };
        classes.iter().all(|c| (1..self.parts.len()).all(|j| mass(j, c) == mass(0, c)))
    }

    /// Drops indices carrying zero weight.
    fn pruned(mut self) -> Self {
        for (part, w) in self.parts.iter_mut().zip(self.weights.iter_mut()) {
            let keep: Vec<(usize, Rational)> =
                part.iter().copied().zip(w.iter().cloned()).filter(|(_, x)| !x.is_zero()).collect();
            *part = keep.iter().map(|(i, _)| *i).collect();
            *w = keep.into_iter().map(|(_, x)| x).collect();
        }
        self
    }
}

/// Affine functionals proving that the parts have no common point (with
/// equal class masses, when classes are given): for `i` in part `j`,
/// `f_j·x_i + w_j[class(i)] ≤ b_j`, while `Σ f_j = 0`, `Σ w_j = 0` and
/// `Σ b_j < 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationCertificate {
    #[serde(with = "serde_mat")]
    pub functionals: Vec<Vec<Rational>>,
    #[serde(with = "serde_mat", default, skip_serializing_if = "Vec::is_empty")]
    pub class_weights: Vec<Vec<Rational>>,
    #[serde(with = "serde_vec")]
    pub bounds: Vec<Rational>,
}

impl SeparationCertificate {
    pub fn verify(&self, parts: &[Vec<usize>], config: &PointConfiguration, classes: &[Vec<usize>]) -> bool {
        let q = parts.len();
        if self.functionals.len() != q || self.bounds.len() != q {
            return false;
        }
        let weights: Vec<Vec<Rational>> =
            if self.class_weights.is_empty() { vec![vec![Rational::zero(); classes.len()]; q] } else { self.class_weights.clone() };
        if weights.len() != q || weights.iter().any(|w| w.len() != classes.len()) {
            return false;
        }
        let sums_vanish = (0..config.dim).all(|c| self.functionals.iter().map(|f| &f[c]).sum::<Rational>().is_zero())
            && (0..classes.len()).all(|k| weights.iter().map(|w| &w[k]).sum::<Rational>().is_zero());
        let bounded = parts.iter().enumerate().all(|(j, part)| {
            part.iter().all(|&i| {
                let mut v: Rational = self.functionals[j].iter().zip(&config.points[i]).map(|(a, b)| a * b).sum();
                for (k, c) in classes.iter().enumerate() {
                    if c.contains(&i) {
                        v += &weights[j][k];
                    }
                }
                v <= self.bounds[j]
            })
        });
        sums_vanish && bounded && self.bounds.iter().sum::<Rational>().is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CommonPoint {
    Found(PartitionCertificate),
    Infeasible(SeparationCertificate),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorMode {
    /// At most one vertex of each class per part.
    Rainbow,
    /// Equal barycentric mass on each class across parts.
    EqualCoefficient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorConstraint {
    pub mode: ColorMode,
    pub classes: Vec<Vec<usize>>,
}

impl ColorConstraint {
    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        for class in &self.classes {
            for &i in class {
                if i >= n {
                    return Err(Error::domain(format!("color class index {i} out of range (n = {n})")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::domain(format!("index {i} lies in two color classes")));
                }
            }
        }
        Ok(())
    }

    fn class_of(&self, n: usize) -> Vec<Option<usize>> {
        let mut out = vec![None; n];
        for (k, class) in self.classes.iter().enumerate() {
            for &i in class {
                out[i] = Some(k);
            }
        }
        out
    }
}

/// Exact LP for a common point of the parts' hulls, optionally with equal
/// class masses.
pub fn common_point(parts: &[Vec<usize>], config: &PointConfiguration, equal_classes: Option<&[Vec<usize>]>) -> Result<CommonPoint> {
    if parts.is_empty() || parts.iter().any(Vec::is_empty) {
        return Err(Error::domain("common point needs nonempty parts"));
    }
    if let Some(i) = parts.iter().flatten().find(|&&i| i >= config.len()) {
        return Err(Error::domain(format!("index {i} out of range (n = {})", config.len())));
    }
    let classes = equal_classes.unwrap_or(&[]);
    let q = parts.len();
    let d = config.dim;
    let ncols: usize = parts.iter().map(Vec::len).sum();
    let offsets: Vec<usize> = parts.iter().scan(0, |acc, p| { let o = *acc; *acc += p.len(); Some(o) }).collect();
    let nrows = q + (q - 1) * (d + classes.len());
    let mut a = vec![vec![Rational::zero(); ncols]; nrows];
    let mut b = vec![Rational::zero(); nrows];
    for (j, part) in parts.iter().enumerate() {
        b[j] = Rational::one();
        for t in 0..part.len() {
            a[j][offsets[j] + t] = Rational::one();
        }
    }
    let width = d + classes.len();
    // value of row `r` of the combined coordinate/class vector at point i
    let entry = |i: usize, r: usize| -> Rational {
        if r < d {
            config.points[i][r].clone()
        } else if classes[r - d].contains(&i) {
            Rational::one()
        } else {
            Rational::zero()
        }
    };
    for j in 1..q {
        for r in 0..width {
            let row = q + (j - 1) * width + r;
            for (t, &i) in parts[j].iter().enumerate() {
                a[row][offsets[j] + t] += entry(i, r);
            }
            for (t, &i) in parts[0].iter().enumerate() {
                a[row][offsets[0] + t] -= entry(i, r);
            }
        }
    }
    match feasible_point(&a, &b) {
        Ok(x) => {
            let weights: Vec<Vec<Rational>> = parts.iter().zip(&offsets).map(|(p, &o)| x[o..o + p.len()].to_vec()).collect();
            let point = config.combination(&parts[0], &weights[0]);
            Ok(CommonPoint::Found(PartitionCertificate { parts: parts.to_vec(), point, weights }))
        }
        Err(y) => {
            let block = |j: usize| &y[q + (j - 1) * width..q + j * width];
            let mut functionals = vec![vec![Rational::zero(); d]; q];
            let mut class_weights = vec![vec![Rational::zero(); classes.len()]; q];
            for j in 1..q {
                for r in 0..width {
                    let v = &block(j)[r];
                    if r < d {
                        functionals[j][r] = v.clone();
                        functionals[0][r] -= v;
                    } else {
                        class_weights[j][r - d] = v.clone();
                        class_weights[0][r - d] -= v;
                    }
                }
            }
            let bounds = y[..q].iter().map(|v| -v).collect();
            if classes.is_empty() {
                class_weights.clear();
            }
            Ok(CommonPoint::Infeasible(SeparationCertificate { functionals, class_weights, bounds }))
        }
    }
}

/// Per-coordinate interval overlap of the parts' bounding boxes.
fn boxes_meet(parts: &[Vec<usize>], config: &PointConfiguration) -> bool {
    (0..config.dim).all(|c| {
        let lo = parts.iter().map(|p| p.iter().map(|&i| &config.points[i][c]).min().unwrap()).max().unwrap();
        let hi = parts.iter().map(|p| p.iter().map(|&i| &config.points[i][c]).max().unwrap()).min().unwrap();
        lo <= hi
    })
}

/// Visits set partitions of `0..n` (optional indices may be left out) into
/// exactly `q` nonempty blocks, in lexicographic order of restricted growth
/// strings with "unused" ordered last. `admit(block, i, blocks)` may veto
/// placing `i` into `block`.
pub(crate) fn for_each_partition<T>(
    n: usize,
    q: usize,
    optional: &[bool],
    admit: &dyn Fn(usize, usize, &[Vec<usize>]) -> bool,
    visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<T>,
) -> Option<T> {
    fn rec<T>(
        i: usize,
        n: usize,
        q: usize,
        optional: &[bool],
        blocks: &mut Vec<Vec<usize>>,
        admit: &dyn Fn(usize, usize, &[Vec<usize>]) -> bool,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<T>,
    ) -> ControlFlow<T> {
        let needed = q - blocks.len();
        let remaining = (i..n).count();
        if needed > remaining {
            return ControlFlow::Continue(());
        }
        if i == n {
            return visit(blocks);
        }
        for b in 0..blocks.len() {
            if admit(b, i, blocks) {
                blocks[b].push(i);
                rec(i + 1, n, q, optional, blocks, admit, visit)?;
                blocks[b].pop();
            }
        }
        if blocks.len() < q {
            blocks.push(vec![i]);
            rec(i + 1, n, q, optional, blocks, admit, visit)?;
            blocks.pop();
        }
        if optional.get(i).copied().unwrap_or(false) {
            rec(i + 1, n, q, optional, blocks, admit, visit)?;
        }
        ControlFlow::Continue(())
    }
    match rec(0, n, q, optional, &mut Vec::with_capacity(q), admit, visit) {
        ControlFlow::Break(t) => Some(t),
        ControlFlow::Continue(()) => None,
    }
}

fn search(
    config: &PointConfiguration,
    q: usize,
    optional: &[bool],
    admit: &dyn Fn(usize, usize, &[Vec<usize>]) -> bool,
    equal_classes: Option<&[Vec<usize>]>,
) -> Result<Option<PartitionCertificate>> {
    let mut failure = None;
    let found = for_each_partition(config.len(), q, optional, admit, &mut |blocks| {
        if equal_classes.is_none() && !boxes_meet(blocks, config) {
            return ControlFlow::Continue(());
        }
        match common_point(blocks, config, equal_classes) {
            Ok(CommonPoint::Found(cert)) => ControlFlow::Break(cert),
            Ok(CommonPoint::Infeasible(_)) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(PartitionCertificate { parts: vec![], point: vec![], weights: vec![] })
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(found.map(PartitionCertificate::pruned))
}

/// First partition (in enumeration order) of the points into `q` disjoint
/// parts whose hulls share a point. Rainbow constraints may leave colored
/// points out; equal-coefficient constraints delegate to
/// [`equal_coefficient_search`].
pub fn tverberg_partition(
    config: &PointConfiguration,
    q: usize,
    constraint: Option<&ColorConstraint>,
) -> Result<Option<PartitionCertificate>> {
    if q < 2 {
        return Err(Error::domain("Tverberg partitions need q ≥ 2"));
    }
    match constraint {
        None => search(config, q, &[], &|_, _, _| true, None),
        Some(c) if c.mode == ColorMode::EqualCoefficient => equal_coefficient_search(config, q, &c.classes),
        Some(c) => {
            c.validate(config.len())?;
            let class = c.class_of(config.len());
            let optional: Vec<bool> = class.iter().map(Option::is_some).collect();
            let admit = |b: usize, i: usize, blocks: &[Vec<usize>]| match class[i] {
                Some(k) => blocks[b].iter().all(|&j| class[j] != Some(k)),
                None => true,
            };
            search(config, q, &optional, &admit, None)
        }
    }
}

/// Disjoint parts with a common image point whose weights put equal mass on
/// every class.
pub fn equal_coefficient_search(config: &PointConfiguration, q: usize, classes: &[Vec<usize>]) -> Result<Option<PartitionCertificate>> {
    if q < 2 {
        return Err(Error::domain("equal-coefficient search needs q ≥ 2"));
    }
    ColorConstraint { mode: ColorMode::EqualCoefficient, classes: classes.to_vec() }.validate(config.len())?;
    search(config, q, &[], &|_, _, _| true, Some(classes))
}
