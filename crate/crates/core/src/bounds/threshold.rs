use super::Real;

/// Point counts above which a random `(w,r;d)`-CFF with `T` blocks exists.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExistenceThreshold<F> {
    /// `1 - w^w r^r / (w+r)^(w+r)`.
    pub p: F,
    /// `(w+r) log T / (-(d+1) log p)`.
    pub by_block_count: F,
    /// `(w+r-1) log 2T / (-(d+1) log p)`.
    pub by_double_count: F,
}

impl<F: Real> ExistenceThreshold<F> {
    pub fn min(&self) -> F {
        self.by_block_count.min(self.by_double_count)
    }
}

pub fn existence_threshold_n<F: Real>(
    w: usize,
    r: usize,
    d: usize,
    blocks: usize,
) -> ExistenceThreshold<F> {
    let (wf, rf) = (F::count(w), F::count(r));
    let s = wf + rf;
    let p = F::one() - wf.powi(w as i32) * rf.powi(r as i32) / s.powi((w + r) as i32);
    let denom = -F::count(d + 1) * p.log2();
    let t = F::count(blocks);
    ExistenceThreshold {
        p,
        by_block_count: s * t.log2() / denom,
        by_double_count: (s - F::one()) * (F::lit(2.0) * t).log2() / denom,
    }
}
