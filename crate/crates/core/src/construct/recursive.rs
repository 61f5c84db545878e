use super::shf::coprime_to_factorial;
use super::{shf_compose, shf_modular, trivial_ds, Construction};
use crate::error::{precondition, Error, Result};
use crate::verify::binom_u128;

/// Largest output the recursion will materialize, in matrix cells.
const MAX_CELLS: u128 = 1 << 28;
/// SHF tables are rescanned before use when the scan is at most this size.
const SHF_SCAN_LIMIT: u128 = 10_000_000;

/// `n_0 = min { n >= w + r : gcd(n, (wr)!) = 1 }`.
pub fn smallest_coprime_order(w: usize, r: usize) -> usize {
    (w + r..)
        .find(|&n| coprime_to_factorial(n, w * r))
        .expect("primes are unbounded")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecursiveParameters {
    pub n0: usize,
    /// `N_0 = min { C(n0, w), C(n0, r) }`.
    pub base_points: usize,
    /// `(wr+1)^k (d+1) N_0`.
    pub points: u128,
    /// `n0^(2^k)`.
    pub blocks: u128,
}

pub fn recursive_parameters(w: usize, r: usize, d: usize, k: u32) -> Result<RecursiveParameters> {
    if w == 0 || r == 0 {
        return precondition("w and r must be positive");
    }
    let n0 = smallest_coprime_order(w, r);
    let base_points = binom_u128(n0, w).min(binom_u128(n0, r));
    let overflow = || Error::BudgetExceeded {
        required: u128::MAX,
        budget: MAX_CELLS,
    };
    let points = ((w * r + 1) as u128)
        .checked_pow(k)
        .and_then(|x| x.checked_mul((d as u128 + 1) * base_points))
        .ok_or_else(overflow)?;
    let blocks = 2u32
        .checked_pow(k)
        .and_then(|e| (n0 as u128).checked_pow(e))
        .ok_or_else(overflow)?;
    Ok(RecursiveParameters {
        n0,
        base_points: base_points as usize,
        points,
        blocks,
    })
}

/// `(w,r;d)`-CFF((wr+1)^k (d+1) N_0, n0^(2^k)).
///
/// The base is the dual of the trivial `(w,r)`-disjunct system on `n0`
/// points, with every point repeated `d + 1` times; each of the `k` rounds
/// composes with the modular SHF on the current block count.
pub fn recursive_cff(w: usize, r: usize, d: usize, k: u32) -> Result<Construction> {
    let target = recursive_parameters(w, r, d, k)?;
    let cells = target.points.saturating_mul(target.blocks);
    if cells > MAX_CELLS {
        return Err(Error::BudgetExceeded {
            required: cells,
            budget: MAX_CELLS,
        });
    }
    let mut current = trivial_ds(target.n0, w, r)?
        .into_cff()
        .replicate_points(d + 1)?;
    for _ in 0..k {
        let shf = shf_modular(current.matrix.num_blocks(), w, r)?;
        if shf.scan_size() <= SHF_SCAN_LIMIT && !shf.is_separating() {
            return precondition(format!(
                "modular SHF on {} symbols failed the separation scan",
                shf.symbols
            ));
        }
        current = shf_compose(&current, &shf)?;
    }
    debug_assert_eq!(current.params.points as u128, target.points);
    debug_assert_eq!(current.params.blocks as u128, target.blocks);
    Ok(current)
}
