//! Exhaustive and sampled checkers for the cover-free and disjunct properties.
//!
//! A matrix is a `(w,r;d)`-CFF when for every choice of `w` distinct rows
//! `B` and `r` further distinct rows `A`,
//! `popcount(AND(B) & !OR(A)) > d`. Rows are quantified by index, so two
//! identical rows are two different blocks.
//!
//! The exhaustive checker walks `B`-sets in colexicographic order and, for
//! each, the `A`-sets drawn from the remaining rows in colexicographic order.
//! The first violation in that order is reported, no matter how many worker
//! threads share the search.

use itertools::Itertools;
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{precondition, Error, Result};
use crate::matrix::IncidenceMatrix;
use crate::params::CffParams;

/// Default cap on `(B, A)` pair evaluations for the exhaustive checker.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

/// A `(B, A)` choice whose residual does not exceed `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub b_rows: Vec<usize>,
    pub a_rows: Vec<usize>,
    /// `|AND(B) \ OR(A)|`.
    pub residual: usize,
}

impl Violation {
    /// Recomputes the residual from the matrix.
    pub fn replay(&self, m: &IncidenceMatrix) -> usize {
        residual(m, &self.b_rows, &self.a_rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(v) => Some(v),
        }
    }
}

/// How a claim was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certificate {
    Exhaustive { tuples: u128 },
    Sampled { trials: u64, seed: u64 },
}

/// `|AND(rows in b) \ OR(rows in a)|`.
pub fn residual(m: &IncidenceMatrix, b: &[usize], a: &[usize]) -> usize {
    (0..m.words_per_row())
        .map(|k| {
            let inter = b.iter().fold(!0u64, |acc, &i| acc & m.row(i)[k]);
            let union = a.iter().fold(0u64, |acc, &i| acc | m.row(i)[k]);
            (inter & !union).count_ones() as usize
        })
        .sum()
}

/// Exact binomial in `u128`, saturating on overflow.
pub(crate) fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of `(B, A)` pairs the exhaustive checker examines:
/// `C(T, w) * C(T - w, r)`.
pub fn tuple_count(blocks: usize, w: usize, r: usize) -> u128 {
    if blocks < w {
        return 0;
    }
    binom_u128(blocks, w).saturating_mul(binom_u128(blocks - w, r))
}

/// Advances `c` to the next `k`-subset of `0..n` in colex order.
fn next_colex(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in 0..k {
        let limit = if i + 1 < k { c[i + 1] } else { n };
        if c[i] + 1 < limit {
            c[i] += 1;
            for (j, slot) in c[..i].iter_mut().enumerate() {
                *slot = j;
            }
            return true;
        }
    }
    false
}

pub fn is_cff(m: &IncidenceMatrix, p: &CffParams) -> Result<Verdict> {
    is_cff_with_budget(m, p, DEFAULT_BUDGET)
}

/// Exhaustive check, refusing instances with more than `budget` pairs.
pub fn is_cff_with_budget(m: &IncidenceMatrix, p: &CffParams, budget: u128) -> Result<Verdict> {
    p.check_against(m)?;
    let required = tuple_count(m.num_blocks(), p.w, p.r);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let t = m.num_blocks();
    let (w, r, d) = (p.w, p.r, p.d);

    // Colex order sorts by the largest element first, so partitioning by the
    // top row of B keeps each partition contiguous in the global order.
    let found = (w - 1..t).into_par_iter().find_map_first(|top| {
        let mut b: Vec<usize> = (0..w).collect();
        b[w - 1] = top;
        let words = m.words_per_row();
        let mut inter = vec![0u64; words];
        let mut cands = Vec::with_capacity(t - w);
        let mut stack = vec![0u64; words * r];
        loop {
            inter.fill(!0);
            for &i in &b {
                for (x, y) in inter.iter_mut().zip(m.row(i)) {
                    *x &= y;
                }
            }
            cands.clear();
            cands.extend((0..t).filter(|i| !b.contains(i)));
            let mut chosen = Vec::with_capacity(r);
            if let Some(a) = search_a(
                m,
                &inter,
                &cands,
                r,
                cands.len(),
                d,
                &mut stack,
                &mut chosen,
            ) {
                let res = residual(m, &b, &a);
                return Some(Violation {
                    b_rows: b.clone(),
                    a_rows: a,
                    residual: res,
                });
            }
            if w == 1 || !next_colex(&mut b[..w - 1], top) {
                return None;
            }
        }
    });
    Ok(found.map_or(Verdict::Pass, Verdict::Fail))
}

/// Depth-first colex walk over `k`-subsets of `cands[..upper]`, largest
/// position first. `stack` holds one OR-accumulator per level. Returns the
/// colex-least `A` with residual `<= d`.
#[allow(clippy::too_many_arguments)]
fn search_a(
    m: &IncidenceMatrix,
    inter: &[u64],
    cands: &[usize],
    k: usize,
    upper: usize,
    d: usize,
    stack: &mut [u64],
    chosen: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let words = inter.len();
    let (prev, rest) = stack.split_at_mut(words);
    for x in k - 1..upper {
        let row = m.row(cands[x]);
        let mut res = 0usize;
        for i in 0..words {
            let acc = if chosen.is_empty() { 0 } else { prev[i] };
            let or = acc | row[i];
            if k > 1 {
                rest[i] = or;
            }
            res += (inter[i] & !or).count_ones() as usize;
        }
        if res <= d {
            // Adding rows only shrinks the residual: the smallest completion
            // is the colex-least violation in this subtree.
            let mut a: Vec<usize> = chosen.iter().map(|&pos| cands[pos]).collect();
            a.push(cands[x]);
            a.extend(cands[..k - 1].iter().copied());
            a.sort_unstable();
            return Some(a);
        }
        if k > 1 {
            chosen.push(x);
            let hit = search_a(m, inter, cands, k - 1, x, d, rest, chosen);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
    }
    None
}

/// Whether every disjoint `P`, `Q` of points with `|P| <= i`, `|Q| <= j` is
/// separated by some block containing `P` and missing `Q`.
///
/// Checked column by column, independently of [`is_cff`].
pub fn is_disjunct(m: &IncidenceMatrix, i: usize, j: usize) -> Result<bool> {
    let n = m.num_points();
    if i == 0 || j == 0 {
        return precondition("i and j must be positive");
    }
    if i + j > n {
        return precondition(format!("i + j = {} exceeds the {n} points", i + j));
    }
    // With i + j <= n every smaller disjoint pair extends to sizes (i, j),
    // and a block separating the larger pair separates the smaller one.
    for p in (0..n).combinations(i) {
        let holders: Vec<usize> = (0..m.num_blocks())
            .filter(|&b| p.iter().all(|&x| m.get(b, x)))
            .collect();
        let others: Vec<usize> = (0..n).filter(|x| !p.contains(x)).collect();
        for q in others.into_iter().combinations(j) {
            if !holders.iter().any(|&b| q.iter().all(|&x| !m.get(b, x))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `r` for which `m` is a `(w,r;d)`-CFF, or 0 if `r = 1` fails.
pub fn max_r(m: &IncidenceMatrix, w: usize, d: usize) -> Result<usize> {
    max_r_with_budget(m, w, d, DEFAULT_BUDGET)
}

pub fn max_r_with_budget(m: &IncidenceMatrix, w: usize, d: usize, budget: u128) -> Result<usize> {
    if m.num_blocks() < w + 1 {
        return precondition(format!("need at least w + 1 = {} blocks", w + 1));
    }
    let mut best = 0;
    for r in 1..=m.num_blocks() - w {
        let p = CffParams::for_matrix(m, w, r, d);
        if !is_cff_with_budget(m, &p, budget)?.passed() {
            break;
        }
        best = r;
    }
    Ok(best)
}

/// Monte-Carlo screen: `trials` uniformly random `(B, A)` pairs.
///
/// A failure is definitive; a pass is only probabilistic. Deterministic for a
/// fixed seed.
pub fn is_cff_sampled(
    m: &IncidenceMatrix,
    p: &CffParams,
    trials: u64,
    seed: u64,
) -> Result<Verdict> {
    p.check_against(m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = m.num_blocks();
    for _ in 0..trials {
        let picks = index::sample(&mut rng, t, p.w + p.r).into_vec();
        let mut b = picks[..p.w].to_vec();
        let mut a = picks[p.w..].to_vec();
        let res = residual(m, &b, &a);
        if res <= p.d {
            b.sort_unstable();
            a.sort_unstable();
            return Ok(Verdict::Fail(Violation {
                b_rows: b,
                a_rows: a,
                residual: res,
            }));
        }
    }
    Ok(Verdict::Pass)
}

/// Exhaustive check when within `budget`, otherwise a sampled screen.
pub fn certify(
    m: &IncidenceMatrix,
    p: &CffParams,
    budget: u128,
    trials: u64,
    seed: u64,
) -> Result<(Verdict, Certificate)> {
    p.check_against(m)?;
    let tuples = tuple_count(m.num_blocks(), p.w, p.r);
    if tuples <= budget {
        Ok((
            is_cff_with_budget(m, p, budget)?,
            Certificate::Exhaustive { tuples },
        ))
    } else {
        Ok((
            is_cff_sampled(m, p, trials, seed)?,
            Certificate::Sampled { trials, seed },
        ))
    }
}
