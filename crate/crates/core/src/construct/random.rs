use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Construction;
use crate::bounds::existence_threshold_n;
use crate::error::{precondition, Error, Result};
use crate::matrix::IncidenceMatrix;
use crate::params::CffParams;
use crate::verify::{certify, Certificate, Verdict, DEFAULT_BUDGET};

/// Generator for attempt `attempt` of a run seeded with `seed`.
fn attempt_rng(seed: u64, attempt: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomCffConfig {
    pub w: usize,
    pub r: usize,
    pub d: usize,
    /// T, the number of blocks.
    pub blocks: usize,
    pub seed: u64,
    pub max_attempts: usize,
    /// Point count override; by default the smallest integer above
    /// `(w+r) log2 T / (-(d+1) log2 p)`.
    pub points: Option<usize>,
    pub budget: u128,
    pub sample_trials: u64,
}

impl RandomCffConfig {
    pub fn new(w: usize, r: usize, d: usize, blocks: usize, seed: u64) -> Self {
        Self {
            w,
            r,
            d,
            blocks,
            seed,
            max_attempts: 50,
            points: None,
            budget: DEFAULT_BUDGET,
            sample_trials: 100_000,
        }
    }

    /// The point count this configuration uses.
    pub fn resolved_points(&self) -> usize {
        self.points.unwrap_or_else(|| {
            let th = existence_threshold_n::<f64>(self.w, self.r, self.d, self.blocks);
            th.by_block_count.floor() as usize + 1
        })
    }
}

/// A verified random construction and the attempt that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomCff {
    pub construction: Construction,
    /// Zero-based index of the successful attempt.
    pub attempt: usize,
    pub certificate: Certificate,
}

fn check_attempt(
    m: IncidenceMatrix,
    params: CffParams,
    budget: u128,
    trials: u64,
    seed: u64,
) -> Result<Option<(Construction, Certificate)>> {
    let (verdict, cert) = certify(&m, &params, budget, trials, seed)?;
    Ok(matches!(verdict, Verdict::Pass).then(|| (Construction { matrix: m, params }, cert)))
}

/// T x N matrix with independent entries, each 1 with probability
/// `w / (w + r)`, retried until it verifies as a `(w,r;d)`-CFF.
pub fn random_cff(cfg: &RandomCffConfig) -> Result<RandomCff> {
    let RandomCffConfig {
        w, r, d, blocks, ..
    } = *cfg;
    if w == 0 || r == 0 {
        return precondition("w and r must be positive");
    }
    if blocks < w + r {
        return precondition(format!("T = {blocks} is smaller than w + r = {}", w + r));
    }
    let n = cfg.resolved_points();
    let density = w as f64 / (w + r) as f64;
    for attempt in 0..cfg.max_attempts {
        let mut rng = attempt_rng(cfg.seed, attempt);
        let mut m = IncidenceMatrix::zeros(blocks, n);
        for i in 0..blocks {
            for j in 0..n {
                if rng.gen_bool(density) {
                    m.set(i, j, true);
                }
            }
        }
        let params = CffParams::new(w, r, d, n, blocks);
        if let Some((construction, certificate)) =
            check_attempt(m, params, cfg.budget, cfg.sample_trials, rng.gen())?
        {
            return Ok(RandomCff {
                construction,
                attempt,
                certificate,
            });
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: cfg.max_attempts,
    })
}

/// Parameters of the uniform random construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UniformParameters {
    /// `(l-1)^r / l^(w+r-1)`: chance one group contributes to the residual.
    pub p: f64,
    /// Block size: least integer above `(8/p)((w+r) log2 T - log2 w! - log2 r!)`.
    pub k: usize,
    /// `floor(p k / 2) + 1`.
    pub d: usize,
}

fn log2_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).log2()).sum()
}

pub fn uniform_parameters(
    ell: usize,
    w: usize,
    r: usize,
    blocks: usize,
) -> Result<UniformParameters> {
    if ell < 2 {
        return precondition("group size l must be at least 2");
    }
    if w == 0 || r == 0 {
        return precondition("w and r must be positive");
    }
    if blocks < w + r {
        return precondition(format!("T = {blocks} is smaller than w + r = {}", w + r));
    }
    let p = ((ell - 1) as f64).powi(r as i32) / (ell as f64).powi((w + r - 1) as i32);
    let x =
        8.0 / p * ((w + r) as f64 * (blocks as f64).log2() - log2_factorial(w) - log2_factorial(r));
    let k = if x < 0.0 { 1 } else { x.floor() as usize + 1 };
    let d = (p * k as f64 / 2.0).floor() as usize + 1;
    Ok(UniformParameters { p, k, d })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomUniformConfig {
    /// Points per group.
    pub ell: usize,
    pub w: usize,
    pub r: usize,
    pub blocks: usize,
    pub seed: u64,
    pub max_attempts: usize,
    pub budget: u128,
    pub sample_trials: u64,
}

impl RandomUniformConfig {
    pub fn new(ell: usize, w: usize, r: usize, blocks: usize, seed: u64) -> Self {
        Self {
            ell,
            w,
            r,
            blocks,
            seed,
            max_attempts: 50,
            budget: DEFAULT_BUDGET,
            sample_trials: 100_000,
        }
    }
}

/// `k`-uniform `(w,r;d)`-CFF(k l, T): the points form `k` groups of `l`, and
/// each block takes one uniformly random point from every group.
pub fn random_uniform_cff(cfg: &RandomUniformConfig) -> Result<RandomCff> {
    let RandomUniformConfig {
        ell, w, r, blocks, ..
    } = *cfg;
    let up = uniform_parameters(ell, w, r, blocks)?;
    let n = up.k * ell;
    for attempt in 0..cfg.max_attempts {
        let mut rng = attempt_rng(cfg.seed, attempt);
        let mut m = IncidenceMatrix::zeros(blocks, n);
        for i in 0..blocks {
            for g in 0..up.k {
                m.set(i, g * ell + rng.gen_range(0..ell), true);
            }
        }
        let params = CffParams::new(w, r, up.d, n, blocks).with_block_size(up.k);
        if let Some((construction, certificate)) =
            check_attempt(m, params, cfg.budget, cfg.sample_trials, rng.gen())?
        {
            return Ok(RandomCff {
                construction,
                attempt,
                certificate,
            });
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: cfg.max_attempts,
    })
}
