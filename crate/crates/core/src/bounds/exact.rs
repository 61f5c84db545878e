use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{precondition, Result};

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Sperner: a 1-CFF on `N` points has at most `C(N, floor(N/2))` blocks.
pub fn sperner_t(n: usize) -> Result<BigUint> {
    if n < 2 {
        return precondition("Sperner's bound needs N >= 2");
    }
    Ok(binomial(n, n / 2))
}

/// Largest `T` for a `k`-uniform `r`-CFF on `N` points:
/// `floor(C(N, ceil(k/r)) / C(k-1, ceil(k/r)-1))`.
pub fn uniform_t(n: usize, k: usize, r: usize) -> Result<BigUint> {
    if r == 0 || k == 0 || k > n {
        return precondition(format!(
            "need r >= 1 and 1 <= k <= N, got N={n} k={k} r={r}"
        ));
    }
    let t = k.div_ceil(r);
    Ok(binomial(n, t) / binomial(k - 1, t - 1))
}

/// `m = ceil(2(N - r - d(r+1)) / (r(r+1)))`, the subset size in [`gbound_t`].
pub fn gbound_exponent(n: usize, r: usize, d: usize) -> Result<usize> {
    if r == 0 {
        return precondition("r must be positive");
    }
    let slack = r + d * (r + 1);
    if n <= slack {
        return precondition(format!("need N > r + d(r+1) = {slack}, got N = {n}"));
    }
    Ok((2 * (n - slack)).div_ceil(r * (r + 1)))
}

/// Largest admissible `T` for an `(r;d)`-CFF on `N` points: `T < r + C(N, m)`.
///
/// The counting argument behind it takes `m <= N/2`; past that point the
/// value is not a valid bound (the Sperner families exceed it for `r = 1`).
pub fn gbound_t(n: usize, r: usize, d: usize) -> Result<BigUint> {
    let m = gbound_exponent(n, r, d)?;
    Ok(BigUint::from(r) + binomial(n, m) - 1u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound2d {
    /// Least `t >= 1` with `N <= 5t + 2 + d(d-1)/(t+d)`.
    pub t_star: usize,
    /// `floor(C(N, t*) / C(2t* + d - 1, t*))`; every `(2;d)`-CFF has `T` below it.
    pub strict_limit: BigUint,
}

/// Bound for `(2;d)`-CFFs, `d >= 1`.
pub fn bound_2d_t(n: usize, d: usize) -> Result<Bound2d> {
    if d == 0 {
        return precondition("the (2;d) bound needs d >= 1");
    }
    // N <= 5t + 2 + d(d-1)/(t+d)  <=>  N(t+d) <= (5t+2)(t+d) + d(d-1)
    let t_star = (1..)
        .find(|&t| n * (t + d) <= (5 * t + 2) * (t + d) + d * (d - 1))
        .expect("right side grows without bound");
    let strict_limit = binomial(n, t_star) / binomial(2 * t_star + d - 1, t_star);
    Ok(Bound2d {
        t_star,
        strict_limit,
    })
}
