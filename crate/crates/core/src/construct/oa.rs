use std::collections::HashMap;

use itertools::Itertools;

use super::Construction;
use crate::error::{precondition, Result};
use crate::field::{FieldElement, FiniteField};
use crate::matrix::IncidenceMatrix;

/// An OA(t, k, s): `k` rows by `s^t` columns over `s` symbols such that any
/// `t` rows contain every `t`-tuple exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalArray {
    pub strength: usize,
    pub symbols: usize,
    pub rows: Vec<Vec<FieldElement>>,
}

impl OrthogonalArray {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Exhaustive OA check over every `t`-subset of rows.
    pub fn is_valid(&self) -> bool {
        let (t, s) = (self.strength, self.symbols);
        let cols = self.num_columns();
        if t == 0 || s < 2 || t > self.num_rows() || Some(cols) != s.checked_pow(t as u32) {
            return false;
        }
        if self
            .rows
            .iter()
            .any(|r| r.len() != cols || r.iter().any(|&x| x as usize >= s))
        {
            return false;
        }
        (0..self.num_rows()).combinations(t).all(|sel| {
            let mut seen = vec![false; cols];
            (0..cols).all(|c| {
                let code = sel
                    .iter()
                    .fold(0, |acc, &row| acc * s + self.rows[row][c] as usize);
                !std::mem::replace(&mut seen[code], true)
            })
        })
    }
}

/// OA(t, q+1, q) from polynomials of degree `< t` over GF(q).
///
/// Column `c` is the polynomial whose coefficient of `x^i` is the `i`-th
/// base-`q` digit of `c`. Row `x` (for each field element) holds `f(x)`;
/// the final row holds the coefficient of `x^{t-1}`.
#[allow(clippy::needless_range_loop)]
pub fn oa_construct(q: usize, t: usize) -> Result<OrthogonalArray> {
    if t == 0 || t > q {
        return precondition(format!("need 1 <= t <= q, got t = {t}, q = {q}"));
    }
    let field = FiniteField::new(q)?;
    let cols = q.pow(t as u32);
    let mut rows = vec![vec![0 as FieldElement; cols]; q + 1];
    let mut coeffs = vec![0 as FieldElement; t];
    for c in 0..cols {
        let mut rest = c;
        for slot in coeffs.iter_mut() {
            *slot = (rest % q) as FieldElement;
            rest /= q;
        }
        for x in field.elements() {
            rows[x as usize][c] = field.eval_poly(&coeffs, x);
        }
        rows[q][c] = coeffs[t - 1];
    }
    Ok(OrthogonalArray {
        strength: t,
        symbols: q,
        rows,
    })
}

/// A t-(v, k, lambda) packing with lambda = 1 intended: `k`-subsets of `v`
/// points, every `t`-subset in at most one block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PackingDesign {
    pub points: usize,
    pub block_size: usize,
    pub strength: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl PackingDesign {
    /// Largest number of blocks sharing a common `t`-subset.
    pub fn max_multiplicity(&self) -> usize {
        let mut counts: HashMap<Vec<usize>, usize> = HashMap::new();
        for block in &self.blocks {
            let mut sorted = block.clone();
            sorted.sort_unstable();
            for sub in sorted.into_iter().combinations(self.strength) {
                *counts.entry(sub).or_default() += 1;
            }
        }
        counts.values().copied().max().unwrap_or(0)
    }

    pub fn is_packing(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.len() == self.block_size && b.iter().all(|&p| p < self.points))
            && self.max_multiplicity() <= 1
    }
}

/// Column `(s_1, ..., s_k)` of an OA(t, k, s) becomes the block
/// `{(s_i, i)}`, with point `(s, i)` at index `i * s_count + s`.
pub fn oa_to_packing(oa: &OrthogonalArray) -> Result<PackingDesign> {
    if !oa.is_valid() {
        return precondition("input is not an orthogonal array");
    }
    let s = oa.symbols;
    let blocks = (0..oa.num_columns())
        .map(|c| {
            oa.rows
                .iter()
                .enumerate()
                .map(|(i, row)| i * s + row[c] as usize)
                .collect()
        })
        .collect();
    Ok(PackingDesign {
        points: oa.num_rows() * s,
        block_size: oa.num_rows(),
        strength: oa.strength,
        blocks,
    })
}

/// Blocks of a t-(v,k,1) packing as a `(r;d)`-CFF(v, b) with
/// `r = floor((k - d - 1) / (t - 1))`: two blocks share at most `t - 1`
/// points, so `r` of them leave more than `d` points of any other block.
pub fn packing_to_cff(p: &PackingDesign, d: usize) -> Result<Construction> {
    let (t, k) = (p.strength, p.block_size);
    if t < 2 {
        return precondition("packing strength must be at least 2");
    }
    if k < d + t {
        return precondition(format!("k = {k} < d + t = {}: r would be 0", d + t));
    }
    let r = (k - d - 1) / (t - 1);
    let m = IncidenceMatrix::from_blocks(p.points, &p.blocks)?;
    let mut c = Construction::new(m, 1, r, d);
    c.params.block_size = Some(k);
    Ok(c)
}
