//! Reduced simplicial homology over ℤ, ℚ and prime fields, and the
//! connectivity verdicts derived from it.

mod certify;
mod chain;
mod reduce;

use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};

pub use certify::{certify_claims, cycle_independence_connectivity, Claim, ClaimGrid, ClaimRow};
pub use chain::{chain_complex, chain_complex_through, ChainComplex};
pub use reduce::{integer_invariant_factors, rank_mod_p, smith_diagonal, InvariantFactors, SparseMatrix};

/// Coefficient domain of a homology computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "int"),
            Coefficients::Rationals => write!(f, "q"),
            Coefficients::Prime(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "int" | "z" => Ok(Coefficients::Integers),
            "q" | "rat" => Ok(Coefficients::Rationals),
            _ => {
                let p = s
                    .strip_prefix("gf:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| Error::domain(format!("unknown coefficients {s:?}; expected int, q or gf:P")))?;
                if !is_prime(p) {
                    return Err(Error::domain(format!("gf:{p} is not a prime field")));
                }
                Ok(Coefficients::Prime(p))
            }
        }
    }
}

impl Serialize for Coefficients {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coefficients {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduced homology in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: i64,
    /// Free rank, or dimension over a field.
    pub rank: usize,
    /// Torsion coefficients (integral tables only), ascending.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn vanishes(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

pub const BETTI_FORMAT_VERSION: u32 = 1;

/// Reduced homology of a complex in degrees −1 through its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub version: u32,
    pub coefficients: Coefficients,
    /// Face counts f_{−1}, f_0, …
    pub f_vector: Vec<usize>,
    pub groups: Vec<HomologyGroup>,
}

impl BettiTable {
    pub fn group(&self, degree: i64) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    /// β̃_k; zero outside the computed range.
    pub fn betti(&self, degree: i64) -> usize {
        self.group(degree).map_or(0, |g| g.rank)
    }

    pub fn bettis(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.rank).collect()
    }

    pub fn torsion(&self, degree: i64) -> &[u64] {
        self.group(degree).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn top_degree(&self) -> i64 {
        self.groups.last().map_or(-2, |g| g.degree)
    }

    /// Whether every group of degree ≤ `n` vanishes.
    pub fn vanishes_through(&self, n: i64) -> bool {
        self.groups.iter().filter(|g| g.degree <= n).all(HomologyGroup::vanishes)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    pub fn connectivity(&self) -> Connectivity {
        match self.groups.iter().find(|g| !g.vanishes()) {
            Some(g) => Connectivity::Degree(g.degree - 1),
            None => Connectivity::Acyclic,
        }
    }

    /// Euler characteristic of the face counts equals the alternating sum
    /// of the ranks.
    pub fn euler_consistent(&self) -> bool {
        let sign = |k: usize| if k % 2 == 0 { -1i64 } else { 1 };
        let chi_f: i64 = self.f_vector.iter().enumerate().map(|(k, &n)| sign(k) * n as i64).sum();
        let chi_b: i64 = self.groups.iter().map(|g| sign((g.degree + 1) as usize) * g.rank as i64).sum();
        chi_f == chi_b
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, g) in self.groups.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}:{}", g.degree, g.rank)?;
            for t in &g.torsion {
                write!(f, "+Z/{t}")?;
            }
        }
        write!(f, "]")
    }
}

/// Largest `n` through which reduced homology vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connectivity {
    Degree(i64),
    /// Every reduced homology group vanishes.
    Acyclic,
}

impl Connectivity {
    pub fn at_least(self, n: i64) -> bool {
        match self {
            Connectivity::Degree(d) => d >= n,
            Connectivity::Acyclic => true,
        }
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Degree(d) => write!(f, "{d}"),
            Connectivity::Acyclic => write!(f, "acyclic"),
        }
    }
}

impl Serialize for Connectivity {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Connectivity::Degree(d) => s.serialize_i64(*d),
            Connectivity::Acyclic => s.serialize_str("acyclic"),
        }
    }
}

impl<'de> Deserialize<'de> for Connectivity {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Connectivity::Degree(n)),
            Raw::S(s) if s == "acyclic" => Ok(Connectivity::Acyclic),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad connectivity {s:?}"))),
        }
    }
}

/// Homology of a chain complex in degrees −1..=top.
pub fn chain_homology(chain: &ChainComplex, coefficients: Coefficients) -> Result<BettiTable> {
    let top = chain.top_dim();
    // ∂_{−1} is zero; ∂_{top+1} is absent.
    let factors: Vec<(usize, Vec<u64>)> = (0..=top)
        .into_par_iter()
        .map(|k| {
            let m = chain.boundary(k).expect("boundary within range");
            match coefficients {
                Coefficients::Prime(p) => Ok((rank_mod_p(m, p)?, Vec::new())),
                Coefficients::Integers | Coefficients::Rationals => {
                    let f = integer_invariant_factors(m)?;
                    let torsion = f
                        .torsion
                        .iter()
                        .map(|t| t.to_u64().ok_or(Error::Overflow("torsion coefficient")))
                        .collect::<Result<Vec<_>>>()?;
                    Ok((f.rank, torsion))
                }
            }
        })
        .collect::<Result<_>>()?;
    let rank_of = |k: i64| if k < 0 || k > top { 0 } else { factors[k as usize].0 };
    let groups = (-1..=top)
        .map(|k| {
            let rank = chain.rank(k) - rank_of(k) - rank_of(k + 1);
            let torsion = match coefficients {
                Coefficients::Integers if k + 1 <= top => factors[(k + 1) as usize].1.clone(),
                _ => Vec::new(),
            };
            HomologyGroup { degree: k, rank, torsion }
        })
        .collect();
    let f_vector = (-1..=top).map(|k| chain.rank(k)).collect();
    Ok(BettiTable { version: BETTI_FORMAT_VERSION, coefficients, f_vector, groups })
}

/// Reduced homology with the given coefficients.
pub fn homology(complex: &SimplicialComplex, coefficients: Coefficients) -> Result<BettiTable> {
    chain_homology(&chain_complex(complex)?, coefficients)
}

/// Reduced Betti numbers over a field.
pub fn betti_numbers(complex: &SimplicialComplex, coefficients: Coefficients) -> Result<BettiTable> {
    if coefficients == Coefficients::Integers {
        return Err(Error::domain("betti_numbers needs a field; use integral_homology"));
    }
    homology(complex, coefficients)
}

pub fn integral_homology(complex: &SimplicialComplex) -> Result<BettiTable> {
    homology(complex, Coefficients::Integers)
}

/// Field Betti numbers agree with the integral groups via universal
/// coefficients.
pub fn universal_coefficients_consistent(integral: &BettiTable, field: &BettiTable) -> bool {
    if integral.coefficients != Coefficients::Integers || integral.groups.len() != field.groups.len() {
        return false;
    }
    let divisible = |k: i64, p: u64| integral.torsion(k).iter().filter(|&&t| t % p == 0).count();
    field.groups.iter().all(|g| match field.coefficients {
        Coefficients::Rationals => g.rank == integral.betti(g.degree),
        Coefficients::Prime(p) => {
            g.rank == integral.betti(g.degree) + divisible(g.degree, p) + divisible(g.degree - 1, p)
        }
        Coefficients::Integers => g == integral.group(g.degree).expect("same degrees"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// Vanishing of reduced homology, which does not certify π_1.
    Homological,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityVerdict {
    pub homological_connectivity: Connectivity,
    pub evidence: Evidence,
    /// Verdicts over ℤ, ℚ and GF(2) agree and universal coefficients hold.
    pub field_consistent: bool,
    pub euler_consistent: bool,
    pub integral: BettiTable,
}

impl ConnectivityVerdict {
    pub fn at_least(&self, n: i64) -> bool {
        self.homological_connectivity.at_least(n)
    }
}

/// Integral connectivity verdict with rational and GF(2) cross-checks.
pub fn connectivity_verdict(complex: &SimplicialComplex) -> Result<ConnectivityVerdict> {
    let chain = chain_complex(complex)?;
    let integral = chain_homology(&chain, Coefficients::Integers)?;
    let rational = chain_homology(&chain, Coefficients::Rationals)?;
    let mod2 = chain_homology(&chain, Coefficients::Prime(2))?;
    let conn = integral.connectivity();
    let field_consistent = universal_coefficients_consistent(&integral, &rational)
        && universal_coefficients_consistent(&integral, &mod2)
        && mod2.connectivity() == conn;
    Ok(ConnectivityVerdict {
        homological_connectivity: conn,
        evidence: Evidence::Homological,
        field_consistent,
        euler_consistent: integral.euler_consistent() && mod2.euler_consistent(),
        integral,
    })
}

/// Connectivity of a join and rational Betti numbers of a join, compared
/// with the predictions from the factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinCheck {
    pub left: Connectivity,
    pub right: Connectivity,
    pub join: Connectivity,
    pub predicted: Connectivity,
    pub formula_holds: bool,
    /// β̃_n(K*L) = Σ_{i+j=n−1} β̃_i(K)·β̃_j(L) over ℚ in every degree.
    pub betti_pattern_holds: bool,
}

impl JoinCheck {
    pub fn holds(&self) -> bool {
        self.formula_holds && self.betti_pattern_holds
    }
}

pub fn predicted_join_connectivity(left: Connectivity, right: Connectivity) -> Connectivity {
    match (left, right) {
        (Connectivity::Degree(a), Connectivity::Degree(b)) => Connectivity::Degree(a + b + 2),
        _ => Connectivity::Acyclic,
    }
}

pub fn verify_join_formula(left: &SimplicialComplex, right: &SimplicialComplex) -> Result<JoinCheck> {
    let joined = left.join(right);
    let (hk, hl, hj) = (integral_homology(left)?, integral_homology(right)?, integral_homology(&joined)?);
    let (qk, ql, qj) = (
        homology(left, Coefficients::Rationals)?,
        homology(right, Coefficients::Rationals)?,
        homology(&joined, Coefficients::Rationals)?,
    );
    let predicted = predicted_join_connectivity(hk.connectivity(), hl.connectivity());
    let top = qj.top_degree().max(qk.top_degree() + ql.top_degree() + 1);
    let betti_pattern_holds = (-1..=top).all(|n| {
        let expected: usize = (-1..=n).map(|i| qk.betti(i) * ql.betti(n - 1 - i)).sum();
        qj.betti(n) == expected
    });
    Ok(JoinCheck {
        left: hk.connectivity(),
        right: hl.connectivity(),
        join: hj.connectivity(),
        predicted,
        formula_holds: hj.connectivity() == predicted,
        betti_pattern_holds,
    })
}
