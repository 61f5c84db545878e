use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::drr::{drr_rate, rate_asymptotic, RateVariant};
use super::exact::{binomial, bound_2d_t, gbound_exponent, gbound_t, sperner_t, uniform_t};
use super::Real;
use crate::error::{precondition, Result};

/// Default for the unspecified constant `c` in the lower bounds on `N`.
pub const DEFAULT_C: f64 = 0.125;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    LowerBoundOnN,
    UpperBoundOnT,
    UpperBoundOnRate,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LowerBoundOnN => "lower-N",
            Direction::UpperBoundOnT => "upper-T",
            Direction::UpperBoundOnRate => "upper-rate",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applicability {
    Applicable,
    /// Holds only for sufficiently large `T`; shown for comparison.
    Asymptotic,
    Inapplicable(&'static str),
}

impl Applicability {
    pub fn label(&self) -> &'static str {
        match self {
            Applicability::Applicable => "yes",
            Applicability::Asymptotic => "asymptotic",
            Applicability::Inapplicable(_) => "no",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BoundValue<F> {
    Real(F),
    Exact(BigUint),
    /// The expression is undefined for these inputs.
    Undefined,
}

impl<F: Real> BoundValue<F> {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            BoundValue::Real(x) => x.to_f64(),
            BoundValue::Exact(b) => b.to_f64(),
            BoundValue::Undefined => None,
        }
    }
}

impl<F: Real> fmt::Display for BoundValue<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Real(x) => write!(f, "{:.6}", x.to_f64().unwrap_or(f64::NAN)),
            BoundValue::Exact(b) => write!(f, "{b}"),
            BoundValue::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry<F> {
    pub name: &'static str,
    pub direction: Direction,
    pub value: BoundValue<F>,
    pub applicability: Applicability,
    /// Strongest applicable entry in its direction.
    pub best: bool,
}

/// The parameter point a report is evaluated at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundQuery {
    pub w: usize,
    pub r: usize,
    pub d: usize,
    /// T, the number of blocks.
    pub blocks: usize,
    /// N, when known; enables upper bounds on `T` and on the rate.
    pub points: Option<usize>,
    /// Uniform block size, when known.
    pub block_size: Option<usize>,
}

impl BoundQuery {
    pub fn new(w: usize, r: usize, d: usize, blocks: usize) -> Self {
        Self {
            w,
            r,
            d,
            blocks,
            points: None,
            block_size: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<F> {
    pub query: BoundQuery,
    pub c: F,
    pub entries: Vec<BoundEntry<F>>,
}

impl<F: Real> BoundReport<F> {
    pub fn get(&self, name: &str) -> Option<&BoundEntry<F>> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn best(&self, direction: Direction) -> Option<&BoundEntry<F>> {
        self.entries
            .iter()
            .find(|e| e.best && e.direction == direction)
    }

    /// `bound,direction,value,applicable` rows with `.` decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bound,direction,value,applicable\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{}\n",
                e.name,
                e.direction,
                e.value,
                e.applicability.label()
            ));
        }
        out
    }

    fn flag_best(&mut self) {
        for dir in [
            Direction::LowerBoundOnN,
            Direction::UpperBoundOnT,
            Direction::UpperBoundOnRate,
        ] {
            let lower = dir == Direction::LowerBoundOnN;
            let pick = self
                .entries
                .iter()
                .enumerate()
                .filter(|(_, e)| e.direction == dir && e.applicability == Applicability::Applicable)
                .filter_map(|(i, e)| e.value.as_f64().filter(|v| v.is_finite()).map(|v| (i, v)))
                .reduce(|a, b| {
                    let better = if lower { b.1 > a.1 } else { b.1 < a.1 };
                    if better {
                        b
                    } else {
                        a
                    }
                });
            if let Some((i, _)) = pick {
                self.entries[i].best = true;
            }
        }
    }
}

fn real<F: Real>(x: F) -> BoundValue<F> {
    if x.is_finite() {
        BoundValue::Real(x)
    } else {
        BoundValue::Undefined
    }
}

fn entry<F>(
    name: &'static str,
    direction: Direction,
    value: BoundValue<F>,
    applicability: Applicability,
) -> BoundEntry<F> {
    BoundEntry {
        name,
        direction,
        value,
        applicability,
        best: false,
    }
}

fn big_real<F: Real>(b: &BigUint) -> F {
    F::from_f64(b.to_f64().unwrap_or(f64::INFINITY)).unwrap_or(F::infinity())
}

/// Lower bounds on `N` for a `(w,r;d)`-CFF with `T` blocks, evaluated with
/// constant `c`. `eps` is the slack in the asymptotic Engel bound.
pub fn lower_bounds_n<F: Real>(
    w: usize,
    r: usize,
    d: usize,
    blocks: usize,
    c: F,
    eps: F,
) -> Result<BoundReport<F>> {
    if w == 0 || r == 0 {
        return precondition("w and r must be positive");
    }
    if blocks < w + r {
        return precondition(format!("T = {blocks} is smaller than w + r = {}", w + r));
    }
    use Applicability::*;
    use Direction::LowerBoundOnN as Lower;

    let (wf, rf, df, t) = (F::count(w), F::count(r), F::count(d), F::count(blocks));
    let one = F::one();
    let two = F::lit(2.0);
    let log_t = t.log2();
    let shifted_t = F::count(blocks + 2 - r - w);
    let c_wr: F = big_real(&binomial(w + r, w));
    let d_term = c * c_wr * (df - one) / two;

    let mut entries = Vec::new();

    entries.push(entry(
        "w1",
        Lower,
        real(c * rf * rf / rf.log2() * log_t),
        if w == 1 && r >= 2 {
            Applicable
        } else {
            Inapplicable("needs w = 1 and r >= 2")
        },
    ));

    entries.push(entry(
        "dfft",
        Lower,
        real(rf * (wf * log_t - rf.log2() - wf * wf.log2())),
        Applicable,
    ));

    entries.push(entry(
        "engel1",
        Lower,
        real(big_real::<F>(&binomial(w + r - 1, w)) * shifted_t.log2()),
        Applicable,
    ));

    let pow = |base: usize| F::count(base).powi(base as i32);
    let engel = (one - eps) * pow(w + r - 2) / (pow(w - 1) * pow(r - 1)) * shifted_t.log2();
    entries.push(entry("engel", Lower, real(engel), Asymptotic));

    let nbound2 = two * c * c_wr / (wf + rf).log2() * log_t;
    let nbound2_ok = if w + r > 2 {
        Applicable
    } else {
        Inapplicable("needs w + r > 2")
    };
    entries.push(entry("Nbound2", Lower, real(nbound2), nbound2_ok.clone()));

    let nbound3 = F::lit(0.7) * c * c_wr * (wf + rf) / c_wr.log2() * log_t;
    entries.push(entry("Nbound3", Lower, real(nbound3), Asymptotic));

    entries.push(entry(
        "1rdbound",
        Lower,
        real(c * (rf * rf / rf.log2() * log_t + (df - one) * rf)),
        if w == 1 && r > 1 && d >= 1 {
            Applicable
        } else {
            Inapplicable("needs w = 1, r > 1, d >= 1")
        },
    ));

    let sw2 = if r > w && blocks > 2 * w {
        let factor = (0..w).fold(one, |acc, i| acc * (one - one / F::count(blocks - 2 * i)));
        let rw = F::count(r - w + 1);
        let tail = rw * rw / rw.log2() * F::count(blocks - 2 * w).log2() + (df - one) * rw;
        real(c * F::lit(4.0).powi(w as i32 - 1) * factor * tail)
    } else {
        BoundValue::Undefined
    };
    entries.push(entry(
        "sw2",
        Lower,
        sw2,
        if r > w && d >= 1 {
            Applicable
        } else {
            Inapplicable("needs r > w >= 1 and d >= 1")
        },
    ));

    entries.push(entry(
        "Nbound2-d",
        Lower,
        real(nbound2 + d_term),
        nbound2_ok,
    ));
    entries.push(entry(
        "Nbound3-d",
        Lower,
        real(nbound3 + d_term),
        Asymptotic,
    ));

    let mut report = BoundReport {
        query: BoundQuery::new(w, r, d, blocks),
        c,
        entries,
    };
    report.flag_best();
    Ok(report)
}

/// Lower bounds on `N`, plus upper bounds on `T` and on the rate when the
/// query carries `N`.
pub fn bound_report<F: Real>(query: BoundQuery, c: F, eps: F, tol: F) -> Result<BoundReport<F>> {
    let BoundQuery {
        w,
        r,
        d,
        blocks,
        points,
        block_size,
    } = query;
    let mut report = lower_bounds_n(w, r, d, blocks, c, eps)?;
    report.query = query;
    for e in &mut report.entries {
        e.best = false;
    }
    use Applicability::*;
    use Direction::*;

    if let Some(n) = points {
        let one_r = w == 1;
        let sperner = sperner_t(n)
            .map(BoundValue::Exact)
            .unwrap_or(BoundValue::Undefined);
        report.entries.push(entry(
            "sperner",
            UpperBoundOnT,
            sperner,
            if one_r && r == 1 && n >= 2 {
                Applicable
            } else {
                Inapplicable("needs w = r = 1")
            },
        ));

        let (g, g_ok) = match (gbound_t(n, r, d), gbound_exponent(n, r, d)) {
            (Ok(v), Ok(m)) if 2 * m > n => (BoundValue::Exact(v), Inapplicable("needs m <= N/2")),
            (Ok(v), _) if one_r => (BoundValue::Exact(v), Applicable),
            (Ok(v), _) => (BoundValue::Exact(v), Inapplicable("needs w = 1")),
            _ => (BoundValue::Undefined, Inapplicable("needs N > r + d(r+1)")),
        };
        report.entries.push(entry("gbound", UpperBoundOnT, g, g_ok));

        if let Some(k) = block_size {
            let (u, u_ok) = match uniform_t(n, k, r) {
                Ok(v) if one_r => (BoundValue::Exact(v), Applicable),
                Ok(v) => (BoundValue::Exact(v), Inapplicable("needs w = 1")),
                Err(_) => (BoundValue::Undefined, Inapplicable("needs 1 <= k <= N")),
            };
            report
                .entries
                .push(entry("uniform", UpperBoundOnT, u, u_ok));
        }

        let (b, b_ok) = match bound_2d_t(n, d.max(1)) {
            Ok(v) => {
                let admissible = if v.strict_limit > BigUint::ZERO {
                    BoundValue::Exact(v.strict_limit - 1u32)
                } else {
                    BoundValue::Undefined
                };
                let ok = if one_r && r == 2 && d >= 1 {
                    Applicable
                } else {
                    Inapplicable("needs w = 1, r = 2, d >= 1")
                };
                (admissible, ok)
            }
            Err(_) => (BoundValue::Undefined, Inapplicable("needs d >= 1")),
        };
        report.entries.push(entry("b-2d", UpperBoundOnT, b, b_ok));

        if n > 0 {
            let e = F::count(d) / F::count(n);
            let drr = if e < F::one() {
                drr_rate(r, e, tol)
                    .map(BoundValue::Real)
                    .unwrap_or(BoundValue::Undefined)
            } else {
                BoundValue::Real(F::zero())
            };
            report.entries.push(entry(
                "drr",
                UpperBoundOnRate,
                drr,
                if one_r {
                    Applicable
                } else {
                    Inapplicable("needs w = 1")
                },
            ));
            for (name, variant) in [
                ("drr-asymptotic", RateVariant::Dyachkov),
                ("gbound-asymptotic", RateVariant::Gbound),
            ] {
                let v = rate_asymptotic::<F>(r, d, n, variant)
                    .map(BoundValue::Real)
                    .unwrap_or(BoundValue::Undefined);
                let ok = if one_r && r >= 2 {
                    Asymptotic
                } else {
                    Inapplicable("needs w = 1 and r >= 2")
                };
                report.entries.push(entry(name, UpperBoundOnRate, v, ok));
            }
        }
    }
    report.flag_best();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn value(r: &BoundReport<f64>, name: &str) -> f64 {
        r.get(name).unwrap().value.as_f64().unwrap()
    }

    #[test]
    fn dfft_two_two_sixteen() {
        let r = lower_bounds_n(2, 2, 0, 16, 0.125, 0.0).unwrap();
        assert_relative_eq!(value(&r, "dfft"), 10.0);
        let r2 = lower_bounds_n(2, 2, 0, 16, 7.0, 0.3).unwrap();
        assert_relative_eq!(value(&r2, "dfft"), 10.0);
    }

    #[test]
    fn w_one_reductions() {
        let c = 0.2;
        for (r, t) in [(2usize, 10usize), (3, 40), (5, 100)] {
            let rep = lower_bounds_n(1, r, 0, t, c, 0.0).unwrap();
            let (rf, lt) = (r as f64, (t as f64).log2());
            assert_relative_eq!(
                value(&rep, "Nbound2"),
                2.0 * c * (1.0 + rf) / (1.0 + rf).log2() * lt,
                epsilon = 1e-12
            );
            assert_relative_eq!(value(&rep, "dfft"), rf * (lt - rf.log2()), epsilon = 1e-12);
            assert_relative_eq!(
                value(&rep, "engel1"),
                rf * ((t - r + 1) as f64).log2(),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn d_zero_variants_drop_below_base() {
        let rep = lower_bounds_n(2, 3, 0, 20, 0.125, 0.0).unwrap();
        let c_wr = 10.0;
        assert_relative_eq!(
            value(&rep, "Nbound2-d"),
            value(&rep, "Nbound2") - 0.125 * c_wr / 2.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            value(&rep, "Nbound3-d"),
            value(&rep, "Nbound3") - 0.125 * c_wr / 2.0,
            epsilon = 1e-12
        );
        assert_eq!(
            rep.get("Nbound2-d").unwrap().applicability,
            Applicability::Applicable
        );
    }

    #[test]
    fn applicability_flags() {
        let rep = lower_bounds_n(2, 2, 0, 16, 0.125, 0.0).unwrap();
        assert!(matches!(
            rep.get("w1").unwrap().applicability,
            Applicability::Inapplicable(_)
        ));
        assert!(matches!(
            rep.get("sw2").unwrap().applicability,
            Applicability::Inapplicable(_)
        ));
        assert_eq!(
            rep.get("engel").unwrap().applicability,
            Applicability::Asymptotic
        );
        let best = rep.best(Direction::LowerBoundOnN).unwrap();
        assert_eq!(best.applicability, Applicability::Applicable);
        let max = rep
            .entries
            .iter()
            .filter(|e| e.applicability == Applicability::Applicable)
            .filter_map(|e| e.value.as_f64())
            .fold(f64::MIN, f64::max);
        assert_eq!(best.value.as_f64().unwrap(), max);

        let rd = lower_bounds_n(1, 3, 2, 30, 0.125, 0.0).unwrap();
        assert_eq!(
            rd.get("1rdbound").unwrap().applicability,
            Applicability::Applicable
        );
        assert_eq!(
            rd.get("sw2").unwrap().applicability,
            Applicability::Applicable
        );
    }

    #[test]
    fn sw2_formula() {
        let (w, r, d, t, c) = (2usize, 4usize, 2usize, 20usize, 0.5);
        let rep = lower_bounds_n(w, r, d, t, c, 0.0).unwrap();
        let rw = 3.0f64;
        let want = c
            * 4.0
            * (1.0 - 1.0 / 20.0)
            * (1.0 - 1.0 / 18.0)
            * (rw * rw / rw.log2() * 16f64.log2() + rw);
        assert_relative_eq!(value(&rep, "sw2"), want, epsilon = 1e-12);
    }

    #[test]
    fn full_report_with_points() {
        let mut q = BoundQuery::new(1, 3, 0, 9);
        q.points = Some(12);
        q.block_size = Some(4);
        let rep = bound_report::<f64>(q, 0.125, 0.0, 1e-9).unwrap();
        assert_eq!(
            rep.get("uniform").unwrap().value,
            BoundValue::Exact(22u32.into())
        );
        let best_t = rep.best(Direction::UpperBoundOnT).unwrap();
        assert_eq!(best_t.name, "uniform");
        assert_eq!(
            rep.get("gbound").unwrap().applicability,
            Applicability::Applicable
        );

        let mut one = BoundQuery::new(1, 1, 0, 6);
        one.points = Some(4);
        let rep1 = bound_report::<f64>(one, 0.125, 0.0, 1e-9).unwrap();
        assert!(matches!(
            rep1.get("gbound").unwrap().applicability,
            Applicability::Inapplicable(_)
        ));
        assert_eq!(rep1.best(Direction::UpperBoundOnT).unwrap().name, "sperner");
        assert!(rep.get("drr").is_some());
        let csv = rep.to_csv();
        assert!(csv.starts_with("bound,direction,value,applicable\n"));
        assert!(csv.contains("uniform,upper-T,22,yes\n"));
    }

    #[test]
    fn preconditions() {
        assert!(lower_bounds_n::<f64>(2, 2, 0, 3, 0.125, 0.0).is_err());
        assert!(lower_bounds_n::<f64>(0, 2, 0, 3, 0.125, 0.0).is_err());
    }

    #[test]
    fn generic_scalar() {
        let a = lower_bounds_n::<f32>(2, 2, 1, 16, 0.125, 0.0).unwrap();
        let b = lower_bounds_n::<f64>(2, 2, 1, 16, 0.125, 0.0).unwrap();
        for (x, y) in a.entries.iter().zip(&b.entries) {
            match (x.value.as_f64(), y.value.as_f64()) {
                (Some(u), Some(v)) => assert!((u - v).abs() <= 1e-4 * v.abs().max(1.0)),
                (None, None) => {}
                other => panic!("{}: {other:?}", x.name),
            }
        }
    }
}
