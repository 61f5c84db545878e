use super::Construction;
use crate::code::{code_to_set_system, Code};
use crate::error::{precondition, Error, Result};
use crate::field::{FieldElement, FiniteField};

/// Largest number of codewords the encoder will enumerate.
const MAX_CODEWORDS: usize = 1 << 22;

/// Reed-Solomon code of the given length and dimension over GF(q).
///
/// Codeword `c` encodes the polynomial whose `x^i` coefficient is the `i`-th
/// base-`q` digit of `c`. For `length <= q` it is evaluated at the field
/// elements `0..length`; for `length = q + 1` at every field element followed
/// by the point at infinity (the coefficient of `x^{dimension-1}`).
pub fn reed_solomon_code(field: &FiniteField, length: usize, dimension: usize) -> Result<Code> {
    let q = field.order();
    if length == 0 || length > q + 1 {
        return precondition(format!("RS length must be in 1..={}, got {length}", q + 1));
    }
    if dimension == 0 || dimension > length {
        return precondition(format!(
            "RS dimension must be in 1..={length}, got {dimension}"
        ));
    }
    let count = q
        .checked_pow(dimension as u32)
        .filter(|&n| n <= MAX_CODEWORDS)
        .ok_or(Error::BudgetExceeded {
            required: (q as u128).saturating_pow(dimension as u32),
            budget: MAX_CODEWORDS as u128,
        })?;
    let finite = length.min(q);
    let mut coeffs = vec![0 as FieldElement; dimension];
    let words = (0..count)
        .map(|c| {
            let mut rest = c;
            for slot in coeffs.iter_mut() {
                *slot = (rest % q) as FieldElement;
                rest /= q;
            }
            let mut word: Vec<FieldElement> = (0..finite as FieldElement)
                .map(|x| field.eval_poly(&coeffs, x))
                .collect();
            if length == q + 1 {
                word.push(coeffs[dimension - 1]);
            }
            word
        })
        .collect();
    Code::new(length, q, words)
}

/// Parameters of the (shortened) Reed-Solomon construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RsConfig {
    pub q: usize,
    /// Length of the code actually used. With `shorten > 0` this must be
    /// `q + 1 - shorten`.
    pub length: usize,
    pub r: usize,
    pub d: usize,
    /// Number of leading coordinates removed by shortening.
    pub shorten: usize,
}

impl RsConfig {
    pub fn new(q: usize, length: usize, r: usize, d: usize) -> Self {
        Self {
            q,
            length,
            r,
            d,
            shorten: 0,
        }
    }

    /// Shortened code of length `q + 1 - s`.
    pub fn shortened(q: usize, s: usize, r: usize, d: usize) -> Self {
        Self {
            q,
            length: (q + 1).saturating_sub(s),
            r,
            d,
            shorten: s,
        }
    }

    /// Dimension of the code after shortening: the largest `u` with
    /// `floor((length - d - 1) / (u - 1)) >= r`, so that the unfolded family
    /// is an `(r;d)`-CFF. The unshortened code has dimension `u + shorten`.
    pub fn dimension(&self) -> Result<usize> {
        let Self {
            q,
            length,
            r,
            d,
            shorten,
        } = *self;
        if r == 0 {
            return precondition("r must be positive");
        }
        if shorten == 0 {
            if length == 0 || length > q + 1 {
                return precondition(format!(
                    "need 1 <= N <= q + 1 = {}, got N = {length}",
                    q + 1
                ));
            }
        } else {
            if length + shorten != q + 1 {
                return precondition(format!(
                    "a code shortened by s = {shorten} has length q + 1 - s = {}",
                    (q + 1).saturating_sub(shorten)
                ));
            }
            if shorten + d > q {
                return precondition(format!("need s + d <= q, got {} > {q}", shorten + d));
            }
        }
        if length < d + 1 + r {
            return precondition(format!(
                "N - d - 1 = {} < r = {r}: no dimension >= 2 reaches r",
                length as isize - d as isize - 1
            ));
        }
        Ok((length - d - 1) / r + 1)
    }

    /// The (shortened) code: codewords of RS(length + s, u + s) whose first
    /// `s` coordinates are zero, with those coordinates removed.
    pub fn code(&self) -> Result<Code> {
        let u = self.dimension()?;
        let field = FiniteField::new(self.q)?;
        let s = self.shorten;
        let base = reed_solomon_code(&field, self.length + s, u + s)?;
        if s == 0 {
            return Ok(base);
        }
        let words = base
            .words()
            .iter()
            .filter(|w| w[..s].iter().all(|&x| x == 0))
            .map(|w| w[s..].to_vec())
            .collect();
        Code::new(self.length, self.q, words)
    }
}

/// `(r;d)`-CFF(q * N, q^u) from a (shortened) Reed-Solomon code of length
/// `N`, dimension `u` and minimum distance `N - u + 1`.
pub fn rs_cff(config: &RsConfig) -> Result<Construction> {
    let code = config.code()?;
    let m = code_to_set_system(&code);
    let mut c = Construction::new(m, 1, config.r, config.d);
    c.params.block_size = Some(config.length);
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_cff, max_r};

    #[test]
    fn rs_5_5_r4() {
        let cfg = RsConfig::new(5, 5, 4, 0);
        assert_eq!(cfg.dimension().unwrap(), 2);
        let c = rs_cff(&cfg).unwrap();
        assert_eq!((c.params.points, c.params.blocks), (25, 25));
        assert_eq!(c.matrix.uniform_block_size(), Some(5));
        assert_eq!(cfg.code().unwrap().min_distance(), Some(4));
        assert_eq!(max_r(&c.matrix, 1, 0).unwrap(), 4);
    }

    #[test]
    fn rs_5_5_r2_d1() {
        let cfg = RsConfig::new(5, 5, 2, 1);
        assert_eq!(cfg.dimension().unwrap(), 2);
        let c = rs_cff(&cfg).unwrap();
        assert_eq!((c.params.points, c.params.blocks), (25, 25));
        assert!(is_cff(&c.matrix, &c.params).unwrap().passed());
    }

    #[test]
    fn rs_over_gf4_with_infinity() {
        let cfg = RsConfig::new(4, 5, 4, 0);
        assert_eq!(cfg.dimension().unwrap(), 2);
        let c = rs_cff(&cfg).unwrap();
        assert_eq!((c.params.points, c.params.blocks), (20, 16));
        assert_eq!(cfg.code().unwrap().min_distance(), Some(4));
        assert_eq!(max_r(&c.matrix, 1, 0).unwrap(), 4);
    }

    #[test]
    fn min_distance_is_mds() {
        for (q, len, dim) in [(5, 5, 3), (7, 8, 3), (8, 9, 2), (4, 3, 2), (9, 10, 2)] {
            let f = FiniteField::new(q).unwrap();
            let code = reed_solomon_code(&f, len, dim).unwrap();
            assert_eq!(code.size(), q.pow(dim as u32));
            assert_eq!(
                code.min_distance(),
                Some(len - dim + 1),
                "RS({len},{dim}) over GF({q})"
            );
        }
    }

    #[test]
    fn shortened_codes() {
        // q = 5, s = 1: length 5, D = q - t + 2 with t = u + s
        for (q, s, r, d) in [
            (5, 1, 2, 0),
            (5, 2, 2, 1),
            (5, 1, 3, 0),
            (7, 2, 3, 1),
            (4, 1, 2, 1),
        ] {
            let cfg = RsConfig::shortened(q, s, r, d);
            let u = cfg.dimension().unwrap();
            let code = cfg.code().unwrap();
            assert_eq!(code.size(), q.pow(u as u32));
            assert_eq!(code.length(), q + 1 - s);
            assert_eq!(code.min_distance(), Some(q - (u + s) + 2));
            let c = rs_cff(&cfg).unwrap();
            assert!(is_cff(&c.matrix, &c.params).unwrap().passed(), "{cfg:?}");
        }
    }

    #[test]
    fn rs_preconditions() {
        assert!(RsConfig::new(5, 7, 2, 0).dimension().is_err());
        assert!(RsConfig::new(5, 5, 5, 0).dimension().is_err());
        assert!(RsConfig::shortened(5, 3, 1, 3).dimension().is_err());
        assert!(RsConfig {
            q: 5,
            length: 5,
            r: 2,
            d: 0,
            shorten: 2
        }
        .dimension()
        .is_err());
        assert!(rs_cff(&RsConfig::new(6, 5, 2, 0)).is_err());
    }
}
