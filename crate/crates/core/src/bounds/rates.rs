use num_bigint::BigUint;

use super::Real;
use crate::error::{precondition, Result};
use crate::field::prime_power;

/// Rates `log T / N` of the code-based constructions at one parameter point.
#[derive(Clone, Debug, PartialEq)]
pub struct RateComparison<F> {
    /// Reed-Solomon over GF(q) with length q+1.
    pub rs: F,
    /// Shortened by `s` coordinates; `None` when `s + d > q`.
    pub shortened: Option<F>,
    /// Reed-Solomon over GF(q^2) with length q^2+1.
    pub rs_square: F,
    /// Garcia-Stichtenoth AG code over GF(q^2); `None` unless `r < q - 1`.
    pub ag: Option<F>,
    /// Code length `s(n) = q^(n-1) (q^2 - 1)` of the AG code; `None` for `n < 3`.
    pub ag_length: Option<BigUint>,
}

impl<F: Real> RateComparison<F> {
    pub fn shortened_beats_rs(&self) -> Option<bool> {
        self.shortened.map(|s| s > self.rs)
    }

    /// Whether the AG construction has the higher rate over GF(q^2).
    pub fn ag_beats_rs(&self) -> Option<bool> {
        self.ag.map(|a| a > self.rs_square)
    }
}

pub fn rate_compare<F: Real>(
    q: usize,
    r: usize,
    d: usize,
    s: usize,
    n: u32,
) -> Result<RateComparison<F>> {
    if prime_power(q).is_none() {
        return precondition(format!("q = {q} is not a prime power"));
    }
    if r == 0 {
        return precondition("r must be positive");
    }
    let (qf, rf, df, sf) = (F::count(q), F::count(r), F::count(d), F::count(s));
    let one = F::one();
    let log_q = qf.log2();
    let q2 = qf * qf;
    let log_q2 = q2.log2();

    let rs = (qf + rf - df) / (rf * qf * (qf + one)) * log_q;
    let shortened = (s + d <= q).then(|| (qf + rf - df - sf) / (rf * qf * (qf + one - sf)) * log_q);
    let rs_square = (q2 + rf - df) / (rf * q2 * (q2 + one)) * log_q2;
    let ag = (r + 1 < q).then(|| (qf - rf - one) / (rf * q2 * (qf - one)) * log_q2);
    let ag_length = (n >= 3).then(|| BigUint::from(q).pow(n - 1) * (q * q - 1));

    Ok(RateComparison {
        rs,
        shortened,
        rs_square,
        ag,
        ag_length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn s_zero_matches_rs() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            for r in 1..4 {
                for d in 0..q.min(3) {
                    let c = rate_compare::<f64>(q, r, d, 0, 3).unwrap();
                    assert_relative_eq!(c.shortened.unwrap(), c.rs, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn shortening_helps_when_r_exceeds_d_plus_one() {
        for q in [3usize, 4, 5, 7, 8, 9, 11, 13, 16] {
            for r in 2..6 {
                for d in 0..r - 1 {
                    for s in 1..=q.saturating_sub(d) {
                        let c = rate_compare::<f64>(q, r, d, s, 3).unwrap();
                        assert!(c.shortened_beats_rs().unwrap(), "q={q} r={r} d={d} s={s}");
                    }
                }
            }
        }
    }

    #[test]
    fn q4_r2_d0_all_present() {
        let c = rate_compare::<f64>(4, 2, 0, 1, 3).unwrap();
        assert_relative_eq!(c.rs, 6.0 / 40.0 * 2.0);
        assert_relative_eq!(c.shortened.unwrap(), 5.0 / 32.0 * 2.0);
        assert_relative_eq!(c.rs_square, 18.0 / (2.0 * 16.0 * 17.0) * 4.0);
        assert_relative_eq!(c.ag.unwrap(), 1.0 / (2.0 * 16.0 * 3.0) * 4.0);
        assert_eq!(c.ag_length, Some(BigUint::from(240u32)));
        assert_eq!(c.ag_beats_rs(), Some(false));
    }

    #[test]
    fn ranges() {
        assert!(rate_compare::<f64>(6, 2, 0, 0, 3).is_err());
        assert!(rate_compare::<f64>(5, 0, 0, 0, 3).is_err());
        let c = rate_compare::<f64>(5, 4, 3, 3, 2).unwrap();
        assert!(c.shortened.is_none());
        assert!(c.ag.is_none());
        assert!(c.ag_length.is_none());
    }
}
