//! Non-adaptive group testing with a cover-free family as the pooling design.
//!
//! Items are blocks (rows) and pools are points (columns): pool `j` tests
//! positive when some defective item's block contains point `j`.

use std::collections::BTreeSet;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{precondition, Result};
use crate::matrix::{IncidenceMatrix, WORD_BITS};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestOutcome {
    pub outcomes: Vec<bool>,
    pub errors_injected: BTreeSet<usize>,
}

impl TestOutcome {
    pub fn positives(&self) -> usize {
        self.outcomes.iter().filter(|&&o| o).count()
    }
}

/// Noiseless outcomes for the given defective items.
pub fn encode(m: &IncidenceMatrix, defectives: &BTreeSet<usize>) -> Result<TestOutcome> {
    if let Some(&bad) = defectives.iter().find(|&&i| i >= m.num_blocks()) {
        return precondition(format!(
            "item {bad} out of range for {} items",
            m.num_blocks()
        ));
    }
    let outcomes = (0..m.num_points())
        .map(|j| defectives.iter().any(|&i| m.get(i, j)))
        .collect();
    Ok(TestOutcome {
        outcomes,
        errors_injected: BTreeSet::new(),
    })
}

/// Flips `count` distinct uniformly chosen outcomes.
pub fn inject_errors(o: &TestOutcome, count: usize, seed: u64) -> Result<TestOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    flip_random(o, count, &mut rng)
}

fn flip_random(o: &TestOutcome, count: usize, rng: &mut ChaCha8Rng) -> Result<TestOutcome> {
    let len = o.outcomes.len();
    if count > len {
        return precondition(format!("cannot flip {count} of {len} outcomes"));
    }
    let mut out = o.clone();
    for j in index::sample(rng, len, count) {
        out.outcomes[j] = !out.outcomes[j];
        if !out.errors_injected.insert(j) {
            out.errors_injected.remove(&j);
        }
    }
    Ok(out)
}

/// Every item with at most `tolerance` of its pools negative.
pub fn decode(m: &IncidenceMatrix, o: &TestOutcome, tolerance: usize) -> BTreeSet<usize> {
    let mut negative = vec![0u64; m.words_per_row()];
    for (j, &pos) in o.outcomes.iter().enumerate().take(m.num_points()) {
        if !pos {
            negative[j / WORD_BITS] |= 1 << (j % WORD_BITS);
        }
    }
    (0..m.num_blocks())
        .filter(|&i| {
            let misses: u32 = m
                .row(i)
                .iter()
                .zip(&negative)
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            misses as usize <= tolerance
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulationConfig {
    pub trials: u64,
    pub seed: u64,
    /// Largest number of flipped outcomes per trial; defaults to `d / 2`.
    pub max_errors: Option<usize>,
    /// Decoding tolerance; defaults to `d / 2`.
    pub tolerance: Option<usize>,
}

impl SimulationConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self {
            trials,
            seed,
            max_errors: None,
            tolerance: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SimulationStats {
    pub trials: u64,
    pub exact: u64,
    /// Non-defective items returned, summed over trials.
    pub false_positives: u64,
    /// Defective items missed, summed over trials.
    pub false_negatives: u64,
}

impl SimulationStats {
    pub fn recovery_rate(&self) -> f64 {
        self.exact as f64 / self.trials as f64
    }

    fn merge(self, other: Self) -> Self {
        Self {
            trials: self.trials + other.trials,
            exact: self.exact + other.exact,
            false_positives: self.false_positives + other.false_positives,
            false_negatives: self.false_negatives + other.false_negatives,
        }
    }
}

/// Random trials: up to `r` defectives and up to `max_errors` flips each.
/// Trial `i` draws from its own stream of the seeded generator, so the
/// result does not depend on scheduling.
pub fn simulate(
    m: &IncidenceMatrix,
    r: usize,
    d: usize,
    cfg: &SimulationConfig,
) -> Result<SimulationStats> {
    if cfg.trials == 0 {
        return precondition("trials must be at least 1");
    }
    let max_defective = r.min(m.num_blocks());
    let max_errors = cfg.max_errors.unwrap_or(d / 2).min(m.num_points());
    let tolerance = cfg.tolerance.unwrap_or(d / 2);
    (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial);
            let k = rng.gen_range(0..=max_defective);
            let defectives: BTreeSet<usize> = index::sample(&mut rng, m.num_blocks(), k)
                .into_iter()
                .collect();
            let errors = rng.gen_range(0..=max_errors);
            let clean = encode(m, &defectives)?;
            let noisy = flip_random(&clean, errors, &mut rng)?;
            let found = decode(m, &noisy, tolerance);
            Ok(SimulationStats {
                trials: 1,
                exact: u64::from(found == defectives),
                false_positives: found.difference(&defectives).count() as u64,
                false_negatives: defectives.difference(&found).count() as u64,
            })
        })
        .try_reduce(SimulationStats::default, |a, b| Ok(a.merge(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{oa_construct, oa_to_packing, packing_to_cff};
    use itertools::Itertools;

    fn oa_cff() -> IncidenceMatrix {
        let oa = oa_construct(3, 2).unwrap();
        packing_to_cff(&oa_to_packing(&oa).unwrap(), 0)
            .unwrap()
            .matrix
    }

    fn set(items: &[usize]) -> BTreeSet<usize> {
        items.iter().copied().collect()
    }

    #[test]
    fn encode_basics() {
        let m = oa_cff();
        assert!(encode(&m, &set(&[])).unwrap().outcomes.iter().all(|&o| !o));
        for i in 0..m.num_blocks() {
            let o = encode(&m, &set(&[i])).unwrap();
            let row: Vec<bool> = (0..m.num_points()).map(|j| m.get(i, j)).collect();
            assert_eq!(o.outcomes, row);
        }
        let o = encode(&m, &set(&[2, 5, 7])).unwrap();
        for j in 0..m.num_points() {
            assert_eq!(o.outcomes[j], m.get(2, j) || m.get(5, j) || m.get(7, j));
        }
        assert!(encode(&m, &set(&[9])).is_err());
    }

    #[test]
    fn inject_basics() {
        let m = oa_cff();
        let o = encode(&m, &set(&[1, 4])).unwrap();
        assert_eq!(inject_errors(&o, 0, 3).unwrap(), o);
        let all = inject_errors(&o, 12, 3).unwrap();
        assert!(all.outcomes.iter().zip(&o.outcomes).all(|(a, b)| a != b));
        assert_eq!(all.errors_injected.len(), 12);
        assert_eq!(
            inject_errors(&o, 5, 11).unwrap(),
            inject_errors(&o, 5, 11).unwrap()
        );
        assert_eq!(inject_errors(&o, 5, 11).unwrap().errors_injected.len(), 5);
        assert!(inject_errors(&o, 13, 0).is_err());
    }

    #[test]
    fn all_positive_returns_everything() {
        let m = oa_cff();
        let o = TestOutcome {
            outcomes: vec![true; m.num_points()],
            errors_injected: BTreeSet::new(),
        };
        assert_eq!(decode(&m, &o, 0), (0..9).collect());
    }

    #[test]
    fn noiseless_exhaustive_recovery() {
        let m = oa_cff();
        for k in 0..=3 {
            for def in (0..9).combinations(k) {
                let def: BTreeSet<usize> = def.into_iter().collect();
                let o = encode(&m, &def).unwrap();
                assert_eq!(decode(&m, &o, 0), def);
            }
        }
    }

    #[test]
    fn one_flip_exhaustive_recovery() {
        let m = oa_cff().replicate_points(3).unwrap();
        assert_eq!((m.num_blocks(), m.num_points()), (9, 36));
        for k in 0..=3 {
            for def in (0..9).combinations(k) {
                let def: BTreeSet<usize> = def.into_iter().collect();
                let clean = encode(&m, &def).unwrap();
                for j in 0..m.num_points() {
                    let mut o = clean.clone();
                    o.outcomes[j] = !o.outcomes[j];
                    assert_eq!(decode(&m, &o, 1), def, "defectives {def:?}, flip {j}");
                }
            }
        }
    }

    #[test]
    fn tolerance_zero_is_all_pools_positive_rule() {
        let m = oa_cff();
        for mask in [0u32, 0b1011_0110_0101, 0b1111_0000_1111, 0xfff] {
            let o = TestOutcome {
                outcomes: (0..12).map(|j| mask >> j & 1 == 1).collect(),
                errors_injected: BTreeSet::new(),
            };
            let classical: BTreeSet<usize> = (0..9)
                .filter(|&i| (0..12).all(|j| !m.get(i, j) || o.outcomes[j]))
                .collect();
            assert_eq!(decode(&m, &o, 0), classical);
        }
    }

    #[test]
    fn simulation_recovers_within_guarantee() {
        let m = oa_cff().replicate_points(3).unwrap();
        let stats = simulate(&m, 3, 2, &SimulationConfig::new(1000, 42)).unwrap();
        assert_eq!(stats.trials, 1000);
        assert_eq!(stats.recovery_rate(), 1.0);
        assert_eq!(stats.false_positives + stats.false_negatives, 0);
    }

    #[test]
    fn simulation_is_deterministic() {
        let m = oa_cff();
        let mut cfg = SimulationConfig::new(1, 5);
        cfg.max_errors = Some(2);
        assert_eq!(
            simulate(&m, 3, 0, &cfg).unwrap(),
            simulate(&m, 3, 0, &cfg).unwrap()
        );
        cfg.trials = 300;
        let a = simulate(&m, 3, 0, &cfg).unwrap();
        assert_eq!(a, simulate(&m, 3, 0, &cfg).unwrap());
        assert!(a.recovery_rate() <= 1.0);
        cfg.trials = 0;
        assert!(simulate(&m, 3, 0, &cfg).is_err());
    }

    #[test]
    fn positives_are_monotone() {
        let m = oa_cff();
        for def in (0..9).combinations(2) {
            let small = encode(&m, &def.iter().copied().take(1).collect()).unwrap();
            let big = encode(&m, &def.iter().copied().collect()).unwrap();
            assert!(small
                .outcomes
                .iter()
                .zip(&big.outcomes)
                .all(|(s, b)| !s || *b));
        }
    }
}
