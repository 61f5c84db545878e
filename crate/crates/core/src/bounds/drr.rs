//! Dyachkov-Rykov-Rashad rate bound `U_r(e)` for `(r;d)`-CFFs, `e = d/N`.
//!
//! `U_1` has a closed form. For `r >= 2`,
//! `U_r = min { 1 - e/e_r, U_1/r, V_r }`, where `V_r` is the fixed point of
//! `V = max_{0 <= v <= 1 - V/U_{r-1} - e} [h(v/r) - (v+e) h(v/((v+e) r))]`.
//! The right side is nonincreasing in `V`, so `V - rhs(V)` is increasing and
//! bisection finds the unique root. The inner maximum uses a dense grid
//! followed by golden-section refinement around the best grid point.

use super::Real;
use crate::error::{precondition, Error, Result};

/// Grid points for the inner maximization.
pub const DRR_GRID: usize = 2048;
const MAX_ITERATIONS: usize = 200;

/// Binary entropy with `h(0) = h(1) = 0`.
pub fn binary_entropy<F: Real>(x: F) -> F {
    if x <= F::zero() || x >= F::one() {
        return F::zero();
    }
    let y = F::one() - x;
    -(x * x.log2()) - y * y.log2()
}

/// `e_r = r^r / (r+1)^(r+1)`.
pub fn dyachkov_threshold<F: Real>(r: usize) -> F {
    let rf = F::count(r);
    rf.powi(r as i32) / (rf + F::one()).powi(r as i32 + 1)
}

fn u1<F: Real>(e: F) -> F {
    if e >= F::lit(0.25) {
        return F::zero();
    }
    let root = (F::lit(8.0) * e * (F::one() - F::lit(2.0) * e)).sqrt();
    binary_entropy(F::lit(0.5) * (F::one() - root))
}

fn inner<F: Real>(v: F, e: F, rf: F) -> F {
    let ve = v + e;
    let tail = if ve > F::zero() {
        ve * binary_entropy(v / (ve * rf))
    } else {
        F::zero()
    };
    binary_entropy(v / rf) - tail
}

fn golden_max<F: Real>(mut a: F, mut b: F, tol: F, f: impl Fn(F) -> F) -> Result<F> {
    let ratio = F::lit(0.618_033_988_749_894_9);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while b - a > tol {
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                iterations: MAX_ITERATIONS,
                width: (b - a).to_f64().unwrap_or(f64::NAN),
            });
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    Ok(fc.max(fd))
}

/// `max_{0 <= v <= upper} inner(v)`, or `-inf` for an empty range.
fn inner_max<F: Real>(upper: F, e: F, rf: F, tol: F) -> Result<F> {
    if upper < F::zero() {
        return Ok(F::neg_infinity());
    }
    let last = DRR_GRID - 1;
    let at = |i: usize| upper * F::count(i) / F::count(last);
    let mut best_i = 0;
    let mut best = inner(F::zero(), e, rf);
    for i in 1..DRR_GRID {
        let val = inner(at(i), e, rf);
        if val > best {
            best = val;
            best_i = i;
        }
    }
    let lo = at(best_i.saturating_sub(1));
    let hi = at((best_i + 1).min(last));
    let refined = golden_max(lo, hi, tol, |v| inner(v, e, rf))?;
    Ok(best.max(refined))
}

fn v_fixed_point<F: Real>(e: F, rf: F, u_prev: F, tol: F) -> Result<F> {
    let rhs = |v: F| inner_max(F::one() - v / u_prev - e, e, rf, tol);
    let mut lo = F::zero();
    let mut hi = u_prev * (F::one() - e);
    let mut iterations = 0;
    while hi - lo > tol {
        iterations += 1;
        if iterations > MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                iterations: MAX_ITERATIONS,
                width: (hi - lo).to_f64().unwrap_or(f64::NAN),
            });
        }
        let mid = (lo + hi) / F::lit(2.0);
        if mid - rhs(mid)? < F::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / F::lit(2.0))
}

/// `U_r(e)` to absolute accuracy `tol`; zero once `e >= e_r`.
pub fn drr_rate<F: Real>(r: usize, e: F, tol: F) -> Result<F> {
    if r == 0 {
        return precondition("r must be at least 1");
    }
    if !(e >= F::zero() && e < F::one()) {
        return precondition("need 0 <= e < 1");
    }
    if tol <= F::zero() {
        return precondition("tol must be positive");
    }
    let u_1 = u1(e);
    let mut u = u_1;
    for k in 2..=r {
        let e_k = dyachkov_threshold::<F>(k);
        if e >= e_k {
            return Ok(F::zero());
        }
        let kf = F::count(k);
        let v = v_fixed_point(e, kf, u, tol)?;
        u = (F::one() - e / e_k).min(u_1 / kf).min(v);
    }
    Ok(u)
}

/// The two closed-form asymptotic rate bounds for `(r;d)`-CFFs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateVariant {
    /// `(2 - dr/N) log r / r^2`
    Dyachkov,
    /// `4 (1 - dr/N) log r / r^2`, from the simple `T < r + C(N, m)` bound.
    Gbound,
}

pub fn rate_asymptotic<F: Real>(r: usize, d: usize, n: usize, variant: RateVariant) -> Result<F> {
    if r < 2 {
        return precondition("asymptotic rates need r >= 2");
    }
    if n == 0 {
        return precondition("N must be positive");
    }
    let rf = F::count(r);
    let ratio = F::count(d * r) / F::count(n);
    let scale = rf.log2() / (rf * rf);
    Ok(match variant {
        RateVariant::Dyachkov => (F::lit(2.0) - ratio) * scale,
        RateVariant::Gbound => F::lit(4.0) * (F::one() - ratio) * scale,
    })
}
