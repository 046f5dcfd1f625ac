//! Parameter arithmetic: special-case routing, primes `p ≡ 1 (mod q)`, and
//! the join-connectivity inequality that makes `p = (a+1)q + 1` usable.

use num_integer::Roots;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::is_prime;
use crate::lp::Rational;
use crate::rational::serde_one;

pub const PLAN_FORMAT_VERSION: u32 = 1;

/// Candidates examined by [`find_prime`] before giving up.
const PRIME_SEARCH_CAP: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    PrimePowerQ,
    PrimePowerQPlus1,
    Prime2QPlus1,
    General,
}

/// `n = r^k` with `r` prime and `k ≥ 1`.
pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    (1..=63 - n.leading_zeros()).any(|k| {
        let r = n.nth_root(k);
        r.checked_pow(k) == Some(n) && is_prime(r)
    })
}

/// First matching case: `q` a prime power, `q+1` a prime power, `2q+1`
/// prime, otherwise the general construction.
pub fn route(q: u64) -> Result<Route> {
    if q < 2 {
        return Err(Error::domain("route needs q ≥ 2"));
    }
    Ok(if is_prime_power(q) {
        Route::PrimePowerQ
    } else if is_prime_power(q + 1) {
        Route::PrimePowerQPlus1
    } else if is_prime(2 * q + 1) {
        Route::Prime2QPlus1
    } else {
        Route::General
    })
}

/// Least prime `p ≥ lower` with `p ≡ 1 (mod q)`.
pub fn find_prime(q: u64, lower: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::domain("find_prime needs q ≥ 2"));
    }
    let lower = lower.max(2);
    let mut p = lower + (q + 1 - lower % q) % q;
    for _ in 0..PRIME_SEARCH_CAP {
        if is_prime(p) {
            return Ok(p);
        }
        p = p.checked_add(q).ok_or(Error::Overflow("prime search"))?;
    }
    Err(Error::Exhausted(format!("no prime ≡ 1 mod {q} among {PRIME_SEARCH_CAP} candidates from {lower}")))
}

/// `cq + (c−2)q²(d+1)`.
pub fn lemma41_bound(c: u64, d: u64, q: u64) -> Result<u64> {
    c.checked_mul(q)
        .and_then(|x| (c.checked_sub(2)?).checked_mul(q * q)?.checked_mul(d + 1)?.checked_add(x))
        .ok_or(Error::Overflow("prime lower bound"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lemma41 {
    /// `(n+1)(p/q − c) + 2n ≥ p(d+1)`.
    pub holds: bool,
    /// Left side minus right side.
    #[serde(with = "serde_one")]
    pub margin: Rational,
    /// `p ≥ cq + (c−2)q²(d+1)`.
    pub hypothesis: bool,
}

pub fn lemma41_check(c: u64, d: u64, q: u64, n: u64, p: u64) -> Result<Lemma41> {
    if q == 0 || n < q * (d + 1) {
        return Err(Error::domain(format!("need q ≥ 1 and n ≥ q(d+1) = {}", q * (d + 1))));
    }
    let r = |v: u64| Rational::from_integer(v.into());
    let lhs = r(n + 1) * (Rational::new(p.into(), q.into()) - r(c)) + r(2 * n);
    let margin = lhs - r(p) * r(d + 1);
    let hypothesis = c >= 2 && lemma41_bound(c, d, q).is_ok_and(|b| p >= b);
    Ok(Lemma41 { holds: !margin.is_negative(), margin, hypothesis })
}

/// `(n+1)·conn + 2n`, the connectivity lower bound of an `(n+1)`-fold join.
pub fn join_conn_bound(conn_sigma: i64, n: i64) -> i64 {
    (n + 1) * conn_sigma + 2 * n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanReport {
    pub version: u32,
    pub q: u64,
    pub d: u64,
    pub route: Route,
    /// A special case applies; the general quantities below are informative.
    pub short_circuit: bool,
    pub c: u64,
    pub n: u64,
    /// `cq + (c−2)q²(d+1)`.
    pub lower_bound: u64,
    pub p: u64,
    pub a: u64,
    pub lemma41: Lemma41,
    pub bound_ok: bool,
    /// `a − 2`, the connectivity of `C_p^a`.
    pub conn_sigma: i64,
    pub join_conn: i64,
    /// `p(d+1)`.
    pub join_target: u64,
    pub join_ok: bool,
    /// `(a − 2) − (p/q − 4)`.
    #[serde(with = "serde_one")]
    pub slack_margin: Rational,
}

impl PlanReport {
    /// Every internal consistency condition of the plan.
    pub fn consistent(&self) -> bool {
        is_prime(self.p)
            && self.p % self.q == 1
            && self.p == (self.a + 1) * self.q + 1
            && self.p >= self.lower_bound
            && self.lemma41.holds
            && self.lemma41.hypothesis
            && !self.slack_margin.is_negative()
            && self.join_ok == (self.join_conn >= self.join_target as i64)
    }
}

/// Least prime `p ≡ 1 (mod q)` above the bound, with every intermediate
/// quantity. Computed for every route.
pub fn plan(q: u64, d: u64, c: u64) -> Result<PlanReport> {
    if q < 2 || d < 1 {
        return Err(Error::domain("plan needs q ≥ 2 and d ≥ 1"));
    }
    if c < 2 {
        return Err(Error::domain("the slack constant c must be at least 2"));
    }
    let route = route(q)?;
    let n = q * (d + 1);
    let lower_bound = lemma41_bound(c, d, q)?;
    let p = find_prime(q, lower_bound)?;
    let a = (p - 1) / q - 1;
    let lemma41 = lemma41_check(c, d, q, n, p)?;
    let conn_sigma = a as i64 - 2;
    let slack_margin = Rational::from_integer((conn_sigma + 4).into()) - Rational::new(p.into(), q.into());
    let join_conn = join_conn_bound(conn_sigma, n as i64);
    Ok(PlanReport {
        version: PLAN_FORMAT_VERSION,
        q,
        d,
        route,
        short_circuit: route != Route::General,
        c,
        n,
        lower_bound,
        p,
        a,
        bound_ok: lemma41.holds && lemma41.hypothesis,
        lemma41,
        conn_sigma,
        join_conn,
        join_target: p * (d + 1),
        join_ok: join_conn >= (p * (d + 1)) as i64,
        slack_margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn factor(mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut f = 2;
        while f * f <= n {
            while n % f == 0 {
                out.push(f);
                n /= f;
            }
            f += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    fn oracle_prime_power(n: u64) -> bool {
        let f = factor(n);
        !f.is_empty() && f.iter().all(|&x| x == f[0])
    }

    #[test]
    fn route_examples() {
        assert_eq!(route(4).unwrap(), Route::PrimePowerQ);
        assert_eq!(route(6).unwrap(), Route::PrimePowerQPlus1);
        assert_eq!(route(34).unwrap(), Route::General);
        assert!(route(1).is_err());
    }

    #[test]
    fn route_against_factorisation() {
        for q in 2..=200 {
            let expect = if oracle_prime_power(q) {
                Route::PrimePowerQ
            } else if oracle_prime_power(q + 1) {
                Route::PrimePowerQPlus1
            } else if factor(2 * q + 1).len() == 1 {
                Route::Prime2QPlus1
            } else {
                Route::General
            };
            assert_eq!(route(q).unwrap(), expect, "q = {q}");
        }
        assert!((2..=33).all(|q| route(q).unwrap() != Route::General));
    }

    #[test]
    fn prime_examples() {
        assert_eq!(find_prime(2, 5).unwrap(), 5);
        assert_eq!(find_prime(3, 8).unwrap(), 13);
        assert_eq!(find_prime(34, 2).unwrap(), 103);
        assert_eq!(find_prime(4, 0).unwrap(), 5);
    }

    #[test]
    fn lemma41_examples() {
        let ok = lemma41_check(4, 1, 2, 4, 24).unwrap();
        assert!(ok.holds && ok.hypothesis);
        assert_eq!(ok.margin, Rational::from_integer(0.into()));
        let low = lemma41_check(4, 1, 2, 4, 23).unwrap();
        assert!(!low.holds && low.margin.is_negative());
        // c = 2 leaves p ≥ 2q
        assert_eq!(lemma41_bound(2, 3, 5).unwrap(), 10);
        assert!(lemma41_check(2, 3, 5, 20, 10).unwrap().holds);
        assert!(lemma41_check(4, 1, 2, 3, 24).is_err());
    }

    #[test]
    fn join_bound_examples() {
        assert_eq!(join_conn_bound(-1, 1), 0);
        assert_eq!(join_conn_bound(0, 2), 4);
    }

    #[test]
    fn plan_examples() {
        let small = plan(2, 1, 4).unwrap();
        assert_eq!(small.route, Route::PrimePowerQ);
        assert!(small.short_circuit && small.consistent());
        let general = plan(34, 1, 4).unwrap();
        assert_eq!(general.route, Route::General);
        assert_eq!(general.lower_bound, 4 * 34 + 2 * 34 * 34 * 2);
        assert!(general.consistent());
        assert!((general.lower_bound..general.p).all(|p| p % 34 != 1 || !is_prime(p)));
    }

    proptest! {
        #[test]
        fn plans_are_consistent(q in 2u64..60, d in 1u64..4, c in 2u64..7) {
            let r = plan(q, d, c).unwrap();
            prop_assert!(r.consistent());
            if c >= 4 {
                prop_assert!(r.join_ok);
            }
        }

        #[test]
        fn bound_and_chain_agree(q in 1u64..30, d in 0u64..4, c in 2u64..6, p in 1u64..20_000) {
            let n = q * (d + 1);
            let l = lemma41_check(c, d, q, n, p).unwrap();
            prop_assert_eq!(l.holds, l.hypothesis);
        }
    }
}
