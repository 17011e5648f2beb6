//! The series `−½(u/(eᵘ−1) − 1 + u/2)` and the KZ zeta values
//! `ζ_Φ(n) = ζ(n)/(2πi)ⁿ`.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, rat, Rational};
use crate::report::Check;

/// Coefficients `c_0, …, c_order` of `Σ c_k u^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalPowerSeries {
    #[serde(serialize_with = "ser_rationals")]
    pub coeffs: Vec<Rational>,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_rational))
}

impl RationalPowerSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut c = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                c[i + j] += a * b;
            }
        }
        Self { coeffs: c }
    }

    /// `exp` of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::Unsupported("exp of a series with nonzero constant term".into()));
        }
        let order = self.order();
        let mut out = Self {
            coeffs: vec![Rational::zero(); order + 1],
        };
        let mut term = Self {
            coeffs: vec![Rational::zero(); order + 1],
        };
        term.coeffs[0] = Rational::one();
        for k in 0..=order {
            for i in 0..=order {
                out.coeffs[i] += &term.coeffs[i];
            }
            term = term.mul(self);
            for c in &mut term.coeffs {
                *c /= rat(k as i64 + 1);
            }
        }
        Ok(out)
    }
}

/// `B_0, …, B_n` with `B_1 = −1/2`, from `Σ_{k<m+1} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=n {
        let mut s = Rational::zero();
        let mut binom = Rational::one();
        for (k, bk) in b.iter().enumerate() {
            s += &binom * bk;
            binom = binom * rat((m + 1 - k) as i64) / rat(k as i64 + 1);
        }
        b.push(-s / rat(m as i64 + 1));
    }
    b
}

/// Largest order accepted by [`even_zeta_series`].
pub const EVEN_ZETA_ORDER_BOUND: usize = 30;

/// `−½(u/(eᵘ−1) − 1 + u/2)` up to `u^order`: `c_k = −B_k/(2·k!)` for `k ≥ 2`.
pub fn even_zeta_series(order: usize) -> Result<RationalPowerSeries> {
    if order > EVEN_ZETA_ORDER_BOUND {
        return Err(Error::Bound(format!("order {order} exceeds {EVEN_ZETA_ORDER_BOUND}")));
    }
    let b = bernoulli_numbers(order);
    let mut fact = Rational::one();
    let mut coeffs = Vec::with_capacity(order + 1);
    for (k, bk) in b.iter().enumerate() {
        if k > 0 {
            fact *= rat(k as i64);
        }
        coeffs.push(if k < 2 { Rational::zero() } else { -bk / (rat(2) * &fact) });
    }
    Ok(RationalPowerSeries { coeffs })
}

/// `ζ(s)` for `s ≥ 2` through the alternating series of Borwein's
/// algorithm (`η(s) = (1 − 2^{1−s}) ζ(s)`), accurate to about `1e−15`.
pub fn numeric_zeta(s: u32) -> f64 {
    let n = 40usize;
    let mut d = vec![0.0f64; n + 1];
    let mut term = 1.0 / n as f64;
    let mut acc = 0.0;
    for (i, slot) in d.iter_mut().enumerate() {
        if i > 0 {
            term *= 4.0 * ((n + i - 1) * (n - i + 1)) as f64 / ((2 * i - 1) * 2 * i) as f64;
        }
        acc += term;
        *slot = n as f64 * acc;
    }
    let dn = d[n];
    let mut eta = 0.0;
    for (k, dk) in d.iter().enumerate().take(n) {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * (dk - dn) / ((k + 1) as f64).powi(s as i32);
    }
    eta = -eta / dn;
    eta / (1.0 - 2f64.powi(1 - s as i32))
}

/// `ζ(2n)/(2πi)^{2n} = (−1)^n ζ(2n)/(2π)^{2n}`.
fn zeta_phi_even(n: u32) -> f64 {
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * numeric_zeta(2 * n) / (2.0 * std::f64::consts::PI).powi(2 * n as i32)
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaRow {
    pub power: usize,
    pub exact: String,
    pub numeric: f64,
    pub difference: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZetaReport {
    pub order: usize,
    pub series: RationalPowerSeries,
    pub rows: Vec<ZetaRow>,
    pub checks: Vec<Check>,
}

/// Largest order accepted by [`zeta_phi_check`] and [`gamma_phi_series`].
pub const ZETA_CHECK_ORDER_BOUND: usize = 12;

/// Compares `Σ ζ_Φ(2n) u^{2n}` with [`even_zeta_series`] to `1e−12`, and
/// reports whether the exponentiated form of the identity can hold.
pub fn zeta_phi_check(order: usize) -> Result<ZetaReport> {
    if order > ZETA_CHECK_ORDER_BOUND {
        return Err(Error::Bound(format!("order {order} exceeds {ZETA_CHECK_ORDER_BOUND}")));
    }
    let series = even_zeta_series(order)?;
    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for k in (2..=order).step_by(2) {
        let exact = series.coeff(k);
        let numeric = zeta_phi_even(k as u32 / 2);
        let difference = (exact.to_f64().expect("finite") - numeric).abs();
        checks.push(Check::from_bool(
            format!("zeta_phi({k}) matches u^{k} coefficient"),
            difference < 1e-12,
            || format!("series {} vs numeric {numeric:e}", format_rational(&exact)),
        ));
        rows.push(ZetaRow {
            power: k,
            exact: format_rational(&exact),
            numeric,
            difference,
        });
    }
    let odd_zero = (1..=order).step_by(2).all(|k| series.coeff(k).is_zero());
    checks.push(Check::from_bool("odd coefficients vanish", odd_zero, || "nonzero odd coefficient".into()));
    let left = RationalPowerSeries {
        coeffs: series.coeffs.clone(),
    }
    .exp()?;
    checks.push(Check::info(
        "exp form of the identity",
        format!(
            "mismatch: exp(sum zeta_phi(2n) u^2n) has constant term {}, the right side has constant term {}",
            format_rational(&left.coeff(0)),
            format_rational(&series.coeff(0))
        ),
    ));
    Ok(ZetaReport {
        order,
        series,
        rows,
        checks,
    })
}

/// A coefficient of `log Γ_Φ`: rational for even powers, `coefficient·ζ_Φ(n)`
/// with symbolic `ζ_Φ(n)` for odd powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaTerm {
    pub power: usize,
    #[serde(serialize_with = "ser_rational")]
    pub coefficient: Rational,
    /// `Some(n)` when the coefficient multiplies the symbol `ζ_Φ(n)`.
    pub zeta_symbol: Option<usize>,
}

fn ser_rational<S: serde::Serializer>(v: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(v))
}

impl GammaTerm {
    pub fn display(&self) -> String {
        match self.zeta_symbol {
            None => format_rational(&self.coefficient),
            Some(n) if self.coefficient.is_negative() => {
                format!("-{} zeta_phi({n})", format_rational(&-self.coefficient.clone()))
            }
            Some(n) => format!("{} zeta_phi({n})", format_rational(&self.coefficient)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaPhiSeries {
    pub order: usize,
    /// `Γ_Φ(0)`.
    pub value_at_zero: i64,
    /// Coefficients of `log Γ_Φ(u)` for `u^2, …, u^order`.
    pub log_terms: Vec<GammaTerm>,
}

/// `log Γ_Φ(u) = Σ_{n≥2} (−1)ⁿ ζ_Φ(n) uⁿ/n`, even `ζ_Φ(2k)` replaced by the
/// coefficients of [`even_zeta_series`].
pub fn gamma_phi_series(order: usize) -> Result<GammaPhiSeries> {
    if order > ZETA_CHECK_ORDER_BOUND {
        return Err(Error::Bound(format!("order {order} exceeds {ZETA_CHECK_ORDER_BOUND}")));
    }
    let even = even_zeta_series(order)?;
    let log_terms = (2..=order)
        .map(|n| {
            let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
            let base = sign / rat(n as i64);
            if n % 2 == 0 {
                GammaTerm {
                    power: n,
                    coefficient: base * even.coeff(n),
                    zeta_symbol: None,
                }
            } else {
                GammaTerm {
                    power: n,
                    coefficient: base,
                    zeta_symbol: Some(n),
                }
            }
        })
        .collect();
    Ok(GammaPhiSeries {
        order,
        value_at_zero: 1,
        log_terms,
    })
}
