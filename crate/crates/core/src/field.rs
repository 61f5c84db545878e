//! Table-driven arithmetic over GF(q) for q <= 256.
//!
//! Prime orders use residues mod p. Prime powers p^e encode an element as the
//! integer `sum a_i p^i` of its coefficient vector over GF(p), reduced modulo a
//! fixed monic irreducible polynomial from [`IRREDUCIBLES`].

use crate::error::{Error, Result};

pub type FieldElement = u16;

/// Monic irreducible moduli, as `(p, e, low coefficients a_0..a_{e-1})`.
/// The modulus is `x^e + a_{e-1} x^{e-1} + ... + a_0`.
const IRREDUCIBLES: &[(usize, u32, &[usize])] = &[
    (2, 2, &[1, 1]),                   // x^2 + x + 1
    (2, 3, &[1, 1, 0]),                // x^3 + x + 1
    (2, 4, &[1, 1, 0, 0]),             // x^4 + x + 1
    (2, 5, &[1, 0, 1, 0, 0]),          // x^5 + x^2 + 1
    (2, 6, &[1, 1, 0, 0, 0, 0]),       // x^6 + x + 1
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),    // x^7 + x + 1
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0]), // x^8 + x^4 + x^3 + x + 1
    (3, 2, &[1, 0]),                   // x^2 + 1
    (3, 3, &[1, 2, 0]),                // x^3 + 2x + 1
    (3, 4, &[2, 1, 0, 0]),             // x^4 + x + 2
    (3, 5, &[1, 2, 0, 0, 0]),          // x^5 + 2x + 1
    (5, 2, &[2, 1]),                   // x^2 + x + 2
    (5, 3, &[2, 3, 0]),                // x^3 + 3x + 2
    (7, 2, &[3, 1]),                   // x^2 + x + 3
    (11, 2, &[7, 1]),                  // x^2 + x + 7
    (13, 2, &[2, 1]),                  // x^2 + x + 2
];

pub const MAX_ORDER: usize = 256;

fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Decomposes `q = p^e` with `p` prime, if possible.
pub fn prime_power(q: usize) -> Option<(usize, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, e))
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    p: usize,
    degree: u32,
    add: Vec<FieldElement>,
    mul: Vec<FieldElement>,
    neg: Vec<FieldElement>,
    inv: Vec<FieldElement>,
}

impl FiniteField {
    /// GF(q). Fails when `q` is not a prime power up to 256, or when no
    /// modulus is tabulated for it.
    pub fn new(q: usize) -> Result<Self> {
        let (p, e) = prime_power(q)
            .filter(|_| q <= MAX_ORDER)
            .ok_or(Error::UnsupportedField(q))?;
        let modulus: Vec<usize> = if e == 1 {
            Vec::new()
        } else {
            IRREDUCIBLES
                .iter()
                .find(|(pp, ee, _)| *pp == p && *ee == e)
                .map(|(_, _, c)| c.to_vec())
                .ok_or(Error::UnsupportedField(q))?
        };

        let digits = |mut a: usize| -> Vec<usize> {
            (0..e)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let undigits = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum) as FieldElement;
                mul[a * q + b] = if e == 1 {
                    (a * b % p) as FieldElement
                } else {
                    undigits(&poly_mul_mod(&da, &db, &modulus, p)) as FieldElement
                };
            }
        }

        let mut neg = vec![0; q];
        let mut inv = vec![0; q];
        for a in 0..q {
            neg[a] = (0..q)
                .find(|&b| add[a * q + b] == 0)
                .expect("additive inverse") as FieldElement;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .ok_or(Error::UnsupportedField(q))? as FieldElement;
            }
        }

        Ok(Self {
            q,
            p,
            degree: e,
            add,
            mul,
            neg,
            inv,
        })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        0..self.q as FieldElement
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<usize> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Horner evaluation of `coeffs[0] + coeffs[1] x + ...`.
    pub fn eval_poly(&self, coeffs: &[FieldElement], x: FieldElement) -> FieldElement {
        coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Product of two degree-<e polynomials over GF(p), reduced by the monic
/// modulus `x^e + sum low[i] x^i`.
fn poly_mul_mod(a: &[usize], b: &[usize], low: &[usize], p: usize) -> Vec<usize> {
    let e = low.len();
    let mut prod = vec![0usize; 2 * e - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (e..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        // x^e == -low(x)
        for (i, &l) in low.iter().enumerate() {
            let idx = deg - e + i;
            prod[idx] = (prod[idx] + (p - l % p) * c) % p;
        }
    }
    prod.truncate(e);
    prod
}

#[cfg(test)]
mod tests {
    use super::*;

    const SUPPORTED: &[usize] = &[
        2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53,
        59, 61, 64, 81, 121, 125, 128, 169, 243, 251, 256,
    ];

    fn check_axioms(f: &FiniteField) {
        let q = f.order() as FieldElement;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_hold_exhaustively_up_to_64() {
        for &q in SUPPORTED.iter().filter(|&&q| q <= 64) {
            check_axioms(&FiniteField::new(q).unwrap());
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for &q in SUPPORTED {
            let f = FiniteField::new(q).unwrap();
            let generator = f
                .elements()
                .skip(1)
                .find(|&a| f.multiplicative_order(a) == Some(q - 1));
            assert!(generator.is_some(), "GF({q}) has no generator");
        }
    }

    #[test]
    fn large_tabulated_fields_have_inverses() {
        for &q in &[81, 121, 125, 128, 169, 243, 256] {
            let f = FiniteField::new(q).unwrap();
            let q = q as FieldElement;
            for a in 1..q {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                assert_eq!(f.pow(a, q as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn rejects_unsupported_orders() {
        for q in [0, 1, 6, 10, 12, 257, 343, 512] {
            assert!(FiniteField::new(q).is_err(), "q = {q}");
        }
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(243), Some((3, 5)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn gf4_multiplication_table() {
        // x^2 = x + 1: elements 0, 1, x=2, x+1=3
        let f = FiniteField::new(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(3, 3), 2);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn horner_evaluation() {
        let f = FiniteField::new(5).unwrap();
        // 1 + 2x + 3x^2 at x = 2: 1 + 4 + 12 = 17 = 2 mod 5
        assert_eq!(f.eval_poly(&[1, 2, 3], 2), 2);
    }
}
