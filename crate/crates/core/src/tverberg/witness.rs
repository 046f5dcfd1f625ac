use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{tverberg_partition, PointConfiguration};
use crate::error::{Error, Result};
use crate::lp::Rational;

/// Fresh draws allowed before the witness search gives up.
pub const WITNESS_ATTEMPTS: usize = 32;

const BOX: i64 = 1_000_000;

/// `(q−1)(d+1)` points admitting no `q`-part Tverberg partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimalityWitness {
    pub q: usize,
    pub seed: u64,
    pub attempts: usize,
    pub config: PointConfiguration,
}

/// Uniform integer points in `[−10⁶, 10⁶]^d`.
pub fn random_configuration(rng: &mut impl Rng, n: usize, d: usize) -> PointConfiguration {
    let points = (0..n)
        .map(|_| (0..d).map(|_| Rational::from_integer(rng.gen_range(-BOX..=BOX).into())).collect())
        .collect();
    PointConfiguration { dim: d, points }
}

/// Draws integer configurations until exhaustive enumeration rules out
/// every `q`-part partition.
pub fn optimality_witness(q: usize, d: usize, seed: u64) -> Result<OptimalityWitness> {
    if q < 2 || d == 0 {
        return Err(Error::domain("optimality witnesses need q ≥ 2 and d ≥ 1"));
    }
    let n = (q - 1) * (d + 1);
    if n > 12 {
        return Err(Error::domain(format!("(q−1)(d+1) = {n} exceeds the exhaustive limit 12")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=WITNESS_ATTEMPTS {
        let config = random_configuration(&mut rng, n, d);
        if tverberg_partition(&config, q, None)?.is_none() {
            return Ok(OptimalityWitness { q, seed, attempts: attempt, config });
        }
    }
    Err(Error::Exhausted(format!("no generic witness for q = {q}, d = {d} in {WITNESS_ATTEMPTS} draws")))
}
