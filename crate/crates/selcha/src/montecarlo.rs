//! Heuristic sampling of the rank criterion's pass rate against a fixed
//! certified image. The model stands in for the arithmetic input: a rank
//! drawn so that the expected number of nonzero group elements is 2, and
//! basis images drawn uniformly from the nonzero vectors. Trials are keyed
//! to (seed, index), so parallel and serial runs agree bit for bit.

use crate::chabauty::{criterion, ChabautyError, ImageSet, SelmerInput};
use crate::density::DyadicRational;
use crate::modp::{F2Vec, MatF2};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("sampling needs an explicit seed for reproducibility")]
    SeedMissing,
    #[error(transparent)]
    Criterion(#[from] ChabautyError),
}

/// P(rank = k) = 2^-(k+1) for k < 4, with the leftover mass 2^-4 on k = 4;
/// then E[2^rank - 1] = 2 nonzero elements on average.
pub const MODEL_LABEL: &str =
    "heuristic sampling model: rank = min(geometric, 4), basis images uniform over nonzero vectors";

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub genus: u32,
    pub trials: u64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct SimReport {
    pub genus: u32,
    pub trials: u64,
    pub passes: u64,
    pub proportion: f64,
    /// Binomial scale sqrt(p (1-p) / n) at the observed proportion.
    pub sigma_hat: f64,
    /// Model lower bound 1 - (#image + 1) 2^(1-g) for the pass probability.
    pub floor: DyadicRational,
    pub floor_f64: f64,
    pub image_cardinality: usize,
    pub seed: u64,
    pub model: &'static str,
}

fn sample_rank(word: u64) -> u32 {
    word.trailing_zeros().min(4)
}

fn run_one(seed: u64, index: u64, image: &ImageSet) -> Result<bool, ChabautyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let rank = sample_rank(rng.next_u64());
    let g = image.genus;
    let max = (1u64 << g) - 1;
    let rows: Vec<F2Vec> = (0..rank)
        .map(|_| F2Vec::from_bits(g, rng.gen_range(1..=max)).expect("genus fits in a word"))
        .collect();
    let basis = if rows.is_empty() {
        MatF2::empty(g)?
    } else {
        MatF2::from_rows(&rows)?
    };
    let selmer = SelmerInput {
        genus: g,
        rank,
        basis,
    };
    Ok(criterion(image, &selmer, true)?.satisfied)
}

/// Model lower bound for the pass probability: a union bound over the at
/// most 2 expected nonzero elements, each landing on one of the image
/// points or 0 with probability about 2^(1-g) per target.
pub fn pass_floor(genus: u32, image_cardinality: usize) -> DyadicRational {
    assert!(genus >= 2);
    let per_element =
        DyadicRational::from_int(image_cardinality as i64 + 1).scale_pow2_neg(genus - 1);
    &DyadicRational::one() - &per_element
}

pub fn run_trials(cfg: &SimConfig, image: &ImageSet) -> Result<SimReport, SimError> {
    let seed = cfg.seed.ok_or(SimError::SeedMissing)?;
    if cfg.genus != image.genus {
        return Err(SimError::Criterion(ChabautyError::DimensionMismatch(
            format!(
                "config genus {} against image genus {}",
                cfg.genus, image.genus
            ),
        )));
    }
    let passes = (0..cfg.trials)
        .into_par_iter()
        .map(|index| run_one(seed, index, image).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let proportion = if cfg.trials == 0 {
        0.0
    } else {
        passes as f64 / cfg.trials as f64
    };
    let sigma_hat = if cfg.trials == 0 {
        0.0
    } else {
        (proportion * (1.0 - proportion) / cfg.trials as f64).sqrt()
    };
    let floor = pass_floor(cfg.genus, image.cardinality());
    Ok(SimReport {
        genus: cfg.genus,
        trials: cfg.trials,
        passes,
        proportion,
        sigma_hat,
        floor_f64: floor.approx_f64(),
        floor,
        image_cardinality: image.cardinality(),
        seed,
        model: MODEL_LABEL,
    })
}
