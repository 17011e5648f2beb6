//! Moyal–Weyl star product on polynomial symbols in `x_1..x_n, p_1..p_n`.
//!
//! The formal parameter is `ħ′ = iħ`, so every coefficient is rational:
//! `f * g = Σ_k ħ′^k/(2^k k!) Π^k(f, g)` with
//! `Π = Σ_i (∂_{x_i} ⊗ ∂_{p_i} − ∂_{p_i} ⊗ ∂_{x_i})`.

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, rat, Rational};
use crate::report::Check;
use crate::sampling::{rng_for, small_rational};

/// Exponents of `x_1..x_n` followed by those of `p_1..p_n`.
pub type Monomial = Vec<u32>;

/// `Σ c_{k,m} ħ′^k m`, with terms above `hbar_max` dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialSymbol {
    pairs: usize,
    hbar_max: u32,
    terms: BTreeMap<(u32, Monomial), Rational>,
}

/// Default `ħ′` truncation.
pub const DEFAULT_HBAR_MAX: u32 = 16;

impl PolynomialSymbol {
    pub fn zero(pairs: usize, hbar_max: u32) -> Self {
        Self {
            pairs,
            hbar_max,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(pairs: usize, c: Rational) -> Self {
        let mut s = Self::zero(pairs, DEFAULT_HBAR_MAX);
        s.add_term(0, vec![0; 2 * pairs], c);
        s
    }

    fn variable(pairs: usize, slot: usize) -> Self {
        let mut m = vec![0; 2 * pairs];
        m[slot] = 1;
        let mut s = Self::zero(pairs, DEFAULT_HBAR_MAX);
        s.add_term(0, m, Rational::one());
        s
    }

    /// `x_i` (0-based).
    pub fn x(pairs: usize, i: usize) -> Self {
        Self::variable(pairs, i)
    }

    /// `p_i` (0-based).
    pub fn p(pairs: usize, i: usize) -> Self {
        Self::variable(pairs, pairs + i)
    }

    /// `ħ′`.
    pub fn hbar(pairs: usize) -> Self {
        let mut s = Self::zero(pairs, DEFAULT_HBAR_MAX);
        s.add_term(1, vec![0; 2 * pairs], Rational::one());
        s
    }

    pub fn with_hbar_max(mut self, hbar_max: u32) -> Self {
        self.hbar_max = hbar_max;
        self.terms.retain(|(k, _), _| *k <= hbar_max);
        self
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Monomial, &Rational)> {
        self.terms.iter().map(|((k, m), c)| (*k, m, c))
    }

    /// Largest total polynomial degree of a term.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(_, m)| m.iter().sum()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, k: u32, m: Monomial, c: Rational) {
        assert_eq!(m.len(), 2 * self.pairs, "monomial length");
        if k > self.hbar_max || c.is_zero() {
            return;
        }
        let key = (k, m);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn compatible(&self, other: &Self) -> Result<u32> {
        if self.pairs != other.pairs {
            return Err(Error::VariableMismatch);
        }
        Ok(self.hbar_max.min(other.hbar_max))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.pairs, self.compatible(other)?);
        for (k, m, c) in self.terms().chain(other.terms()) {
            out.add_term(k, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.pairs, self.hbar_max);
        for (k, m, v) in self.terms() {
            out.add_term(k, m.clone(), v * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&rat(-1)))
    }

    /// Commutative product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.bidifferential(other, 0)
    }

    /// Coefficient of `ħ′^k`, as a symbol without `ħ′`.
    pub fn hbar_coefficient(&self, k: u32) -> Self {
        let mut out = Self::zero(self.pairs, self.hbar_max);
        for (j, m, c) in self.terms() {
            if j == k {
                out.add_term(0, m.clone(), c.clone());
            }
        }
        out
    }

    /// `∂f/∂(slot)`.
    pub fn derivative(&self, slot: usize) -> Self {
        let mut out = Self::zero(self.pairs, self.hbar_max);
        for (k, m, c) in self.terms() {
            if m[slot] > 0 {
                let mut d = m.clone();
                d[slot] -= 1;
                out.add_term(k, d, c * rat(m[slot] as i64));
            }
        }
        out
    }

    /// `P_k(f, g) = Π^k(f, g)/(2^k k!)`, extended `ħ′`-linearly and placed in
    /// `ħ′`-degree `k` on top of the degrees of `f` and `g`.
    pub fn bidifferential(&self, other: &Self, k: u32) -> Result<Self> {
        let hmax = self.compatible(other)?;
        let n = self.pairs;
        let mut out = Self::zero(n, hmax);
        // Π^k = Σ_{|a|+|b|=k} k!/(a! b!) (−1)^{|b|} ∂_x^a ∂_p^b ⊗ ∂_p^a ∂_x^b
        let splits = compositions(k, 2 * n);
        for (kf, mf, cf) in self.terms() {
            for (kg, mg, cg) in other.terms() {
                let total = kf + kg + k;
                if total > hmax {
                    continue;
                }
                for s in &splits {
                    let (a, b) = s.split_at(n);
                    let mut coef = cf * cg;
                    let mut m = vec![0u32; 2 * n];
                    let mut ok = true;
                    for i in 0..n {
                        // f: ∂_{x_i}^{a_i} ∂_{p_i}^{b_i}; g: ∂_{p_i}^{a_i} ∂_{x_i}^{b_i}
                        let (fx, fp, gx, gp) = (mf[i], mf[n + i], mg[i], mg[n + i]);
                        if a[i] > fx || b[i] > fp || a[i] > gp || b[i] > gx {
                            ok = false;
                            break;
                        }
                        coef *= falling(fx, a[i]) * falling(fp, b[i]) * falling(gp, a[i]) * falling(gx, b[i]);
                        coef /= factorial(a[i]) * factorial(b[i]);
                        m[i] = fx - a[i] + gx - b[i];
                        m[n + i] = fp - b[i] + gp - a[i];
                    }
                    if !ok {
                        continue;
                    }
                    let bsum: u32 = b.iter().sum();
                    if bsum % 2 == 1 {
                        coef = -coef;
                    }
                    coef /= rat(2i64.pow(k));
                    out.add_term(total, m, coef);
                }
            }
        }
        Ok(out)
    }

    pub fn random(pairs: usize, degree: u32, rng: &mut impl Rng) -> Self {
        let mut s = Self::zero(pairs, DEFAULT_HBAR_MAX);
        for m in monomials(2 * pairs, degree) {
            if rng.gen_bool(0.5) {
                s.add_term(0, m, small_rational(rng));
            }
        }
        s
    }
}

fn falling(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * rat((n - i) as i64))
}

fn factorial(k: u32) -> Rational {
    falling(k, k)
}

/// Vectors of `len` naturals summing to `k`.
fn compositions(k: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, len - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Monomials in `vars` variables of total degree at most `degree`.
pub fn monomials(vars: usize, degree: u32) -> Vec<Monomial> {
    (0..=degree).flat_map(|d| compositions(d, vars)).collect()
}

impl fmt::Display for PolynomialSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.pairs;
        let parts: Vec<String> = self
            .terms()
            .map(|(k, m, c)| {
                let mut factors = Vec::new();
                if k > 0 {
                    factors.push(if k == 1 { "h".to_string() } else { format!("h^{k}") });
                }
                for (slot, &e) in m.iter().enumerate() {
                    if e > 0 {
                        let name = if slot < n { format!("x{}", slot + 1) } else { format!("p{}", slot - n + 1) };
                        factors.push(if e == 1 { name } else { format!("{name}^{e}") });
                    }
                }
                if factors.is_empty() {
                    format_rational(c)
                } else if c.is_one() {
                    factors.join("*")
                } else {
                    format!("{}*{}", format_rational(c), factors.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `f * g = Σ_k ħ′^k P_k(f, g)`.
pub fn star(f: &PolynomialSymbol, g: &PolynomialSymbol) -> Result<PolynomialSymbol> {
    let hmax = f.compatible(g)?;
    let mut out = PolynomialSymbol::zero(f.pairs, hmax);
    let bound = f.degree().min(g.degree());
    for k in 0..=bound.min(hmax) {
        out = out.add(&f.bidifferential(g, k)?)?;
    }
    Ok(out)
}

/// `P_1(f, g) − P_1(g, f)`, with `P_1` read off the `ħ′`-linear part of the star product.
pub fn poisson_from_star(f: &PolynomialSymbol, g: &PolynomialSymbol) -> Result<PolynomialSymbol> {
    let fg = star(&f.hbar_coefficient(0), &g.hbar_coefficient(0))?.hbar_coefficient(1);
    let gf = star(&g.hbar_coefficient(0), &f.hbar_coefficient(0))?.hbar_coefficient(1);
    fg.sub(&gf)
}

/// `(1/ħ′)[f, g]_*` at `ħ′ = 0`.
pub fn star_commutator_scaled(f: &PolynomialSymbol, g: &PolynomialSymbol) -> Result<PolynomialSymbol> {
    let c = star(f, g)?.sub(&star(g, f)?)?;
    if !c.hbar_coefficient(0).is_zero() {
        return Err(Error::Unsupported("star commutator has a nonzero ħ′-free part".into()));
    }
    Ok(c.hbar_coefficient(1))
}

/// `{f, g} = Σ_i ∂_{x_i} f ∂_{p_i} g − ∂_{p_i} f ∂_{x_i} g`.
pub fn canonical_poisson(f: &PolynomialSymbol, g: &PolynomialSymbol) -> Result<PolynomialSymbol> {
    let n = f.compatible(g).map(|_| f.pairs)?;
    let mut out = PolynomialSymbol::zero(n, f.hbar_max.min(g.hbar_max));
    for i in 0..n {
        let a = f.derivative(i).mul(&g.derivative(n + i))?;
        let b = f.derivative(n + i).mul(&g.derivative(i))?;
        out = out.add(&a)?.sub(&b)?;
    }
    Ok(out)
}

/// Parameters of [`moyal_checks`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MoyalParams {
    pub pairs: usize,
    pub degree: u32,
    /// Highest power of `ħ′` kept in every product.
    pub hbar_max: u32,
    pub samples: u64,
    pub seed: u64,
}

/// Largest values of `pairs` and `degree` accepted by [`moyal_checks`].
pub const MOYAL_PAIRS_BOUND: usize = 3;
pub const MOYAL_DEGREE_BOUND: u32 = 6;

/// Unit law, `x*p − p*x = ħ′`, associativity, and the Poisson bracket
/// extracted from the star product (equal to the canonical bracket, Jacobi,
/// Leibniz, and equal to the scaled star commutator) on seeded random symbols.
pub fn moyal_checks(params: MoyalParams) -> Result<Vec<Check>> {
    let MoyalParams {
        pairs,
        degree,
        hbar_max,
        samples,
        seed,
    } = params;
    if pairs == 0 || pairs > MOYAL_PAIRS_BOUND || degree > MOYAL_DEGREE_BOUND || hbar_max == 0 {
        return Err(Error::Bound(format!(
            "need 1 ≤ pairs ≤ {MOYAL_PAIRS_BOUND}, degree ≤ {MOYAL_DEGREE_BOUND} and an ħ′ bound of at least 1"
        )));
    }
    let cut = |s: PolynomialSymbol| s.with_hbar_max(hbar_max);
    let mut checks = Vec::new();
    let (x, p) = (cut(PolynomialSymbol::x(pairs, 0)), cut(PolynomialSymbol::p(pairs, 0)));
    let comm = star(&x, &p)?.sub(&star(&p, &x)?)?;
    checks.push(Check::from_bool("x*p - p*x = h'", comm == cut(PolynomialSymbol::hbar(pairs)), || comm.to_string()));
    let scaled = star_commutator_scaled(&x, &p)?;
    checks.push(Check::from_bool(
        "(1/h')[x,p] at h'=0 is 1",
        scaled == cut(PolynomialSymbol::constant(pairs, rat(1))),
        || scaled.to_string(),
    ));

    let random = |label: &str, i: u64| {
        let mut rng = rng_for(seed, label, i);
        (
            cut(PolynomialSymbol::random(pairs, degree, &mut rng)),
            cut(PolynomialSymbol::random(pairs, degree, &mut rng)),
            cut(PolynomialSymbol::random(pairs, degree, &mut rng)),
        )
    };
    let one = cut(PolynomialSymbol::constant(pairs, rat(1)));
    let mut failures: BTreeMap<&str, String> = BTreeMap::new();
    let mut note = |name: &'static str, ok: bool, w: &dyn Fn() -> String| {
        if !ok {
            failures.entry(name).or_insert_with(w);
        }
    };
    for i in 0..samples {
        let (f, g, h) = random("moyal", i);
        note("unit law 1*f = f*1 = f", star(&one, &f)? == f && star(&f, &one)? == f, &|| f.to_string());
        let fg = star(&f, &g)?;
        let diff = fg.sub(&f.mul(&g)?)?;
        note("f*g - fg has h'-order at least 1", diff.hbar_coefficient(0).is_zero(), &|| diff.to_string());
        let left = star(&fg, &h)?;
        let right = star(&f, &star(&g, &h)?)?;
        note("associativity (f*g)*h = f*(g*h)", left == right, &|| format!("f = {f}, g = {g}, h = {h}"));

        let pb = poisson_from_star(&f, &g)?;
        note("antisymmetrized P_1 is the canonical bracket", pb == canonical_poisson(&f, &g)?, &|| pb.to_string());
        note("antisymmetrized P_1 equals (1/h')[f,g] at h'=0", pb == star_commutator_scaled(&f, &g)?, &|| {
            pb.to_string()
        });
        let jac = poisson_from_star(&f, &poisson_from_star(&g, &h)?)?
            .add(&poisson_from_star(&g, &poisson_from_star(&h, &f)?)?)?
            .add(&poisson_from_star(&h, &poisson_from_star(&f, &g)?)?)?;
        note("Jacobi identity for the bracket", jac.is_zero(), &|| jac.to_string());
        let leib = poisson_from_star(&f, &g.mul(&h)?)?
            .sub(&poisson_from_star(&f, &g)?.mul(&h)?)?
            .sub(&g.mul(&poisson_from_star(&f, &h)?)?)?;
        note("Leibniz rule for the bracket", leib.is_zero(), &|| leib.to_string());
        note("{f,f} = 0", poisson_from_star(&f, &f)?.is_zero(), &|| f.to_string());
    }
    for name in [
        "unit law 1*f = f*1 = f",
        "f*g - fg has h'-order at least 1",
        "associativity (f*g)*h = f*(g*h)",
        "antisymmetrized P_1 is the canonical bracket",
        "antisymmetrized P_1 equals (1/h')[f,g] at h'=0",
        "Jacobi identity for the bracket",
        "Leibniz rule for the bracket",
        "{f,f} = 0",
    ] {
        checks.push(match failures.get(name) {
            Some(w) => Check::fail(name, w.clone()),
            None => Check::pass(name),
        });
    }
    Ok(checks)
}
