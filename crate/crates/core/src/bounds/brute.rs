use itertools::Itertools;

use crate::error::{precondition, Error, Result};
use crate::matrix::IncidenceMatrix;

pub const MAX_BLOCKS: usize = 5;
pub const MAX_POINTS: usize = 8;

/// Least `N` admitting a `(w,r)`-CFF with `T` blocks, with a witness.
#[derive(Clone, Debug, PartialEq)]
pub struct MinN {
    pub n: usize,
    pub witness: IncidenceMatrix,
}

/// Whether every `(w,r)` split of a `(w+r)`-subset of `rows` that contains
/// the last row is separated by some point.
fn extends(rows: &[u16], w: usize, r: usize) -> bool {
    let last = rows.len() - 1;
    if rows.len() < w + r {
        return true;
    }
    (0..last).combinations(w + r - 1).all(|mut group| {
        group.push(last);
        group.iter().copied().combinations(w).all(|b| {
            let and = b.iter().fold(u16::MAX, |acc, &i| acc & rows[i]);
            let or = group
                .iter()
                .filter(|i| !b.contains(i))
                .fold(0, |acc, &i| acc | rows[i]);
            and & !or != 0
        })
    })
}

/// Rows as strictly increasing bitmasks: any solution can be row-sorted, and
/// a repeated row can never be separated from its copy.
fn search(rows: &mut Vec<u16>, blocks: usize, n: usize, w: usize, r: usize) -> bool {
    if rows.len() == blocks {
        return true;
    }
    let start = rows.last().map_or(0, |&m| m + 1);
    let remaining = blocks - rows.len();
    let limit = 1u32 << n;
    for mask in start as u32..limit {
        if limit - mask < remaining as u32 {
            break;
        }
        rows.push(mask as u16);
        if extends(rows, w, r) && search(rows, blocks, n, w, r) {
            return true;
        }
        rows.pop();
    }
    false
}

/// Exhaustive search for the least `N <= cap` with a `(w,r)`-CFF on `T`
/// blocks. Only for tiny instances: `T <= 5`, `cap <= 8`.
pub fn min_n_bruteforce(w: usize, r: usize, blocks: usize, cap: usize) -> Result<MinN> {
    if w == 0 || r == 0 {
        return precondition("w and r must be positive");
    }
    if blocks < w + r {
        return precondition(format!("T = {blocks} is smaller than w + r = {}", w + r));
    }
    if blocks > MAX_BLOCKS || cap > MAX_POINTS {
        return precondition(format!(
            "exhaustive search limited to T <= {MAX_BLOCKS} and cap <= {MAX_POINTS}"
        ));
    }
    for n in 1..=cap {
        let mut rows = Vec::with_capacity(blocks);
        if search(&mut rows, blocks, n, w, r) {
            let bools: Vec<Vec<bool>> = rows
                .iter()
                .map(|&m| (0..n).map(|j| m >> j & 1 == 1).collect())
                .collect();
            let witness = IncidenceMatrix::from_rows(&bools)?;
            return Ok(MinN { n, witness });
        }
    }
    Err(Error::CapExceeded { cap })
}
