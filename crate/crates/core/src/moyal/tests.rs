use std::collections::BTreeMap;

use num_traits::Zero;

use super::*;
use crate::exact_linalg::ratio;

type Tensor = BTreeMap<(Monomial, Monomial), Rational>;

/// `Π` acting on `A ⊗ A`, applied term by term through the Leibniz rule.
fn apply_pi(t: &Tensor, n: usize) -> Tensor {
    let mut out = Tensor::new();
    let mut push = |a: Monomial, b: Monomial, c: Rational| {
        let e = out.entry((a, b)).or_insert_with(Rational::zero);
        *e += c;
    };
    for ((a, b), c) in t {
        for i in 0..n {
            for (fs, gs, sign) in [(i, n + i, 1i64), (n + i, i, -1)] {
                if a[fs] > 0 && b[gs] > 0 {
                    let (mut a2, mut b2) = (a.clone(), b.clone());
                    a2[fs] -= 1;
                    b2[gs] -= 1;
                    push(a2, b2, c * rat(sign * a[fs] as i64 * b[gs] as i64));
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// `m ∘ exp((ħ′/2) Π)` on symbols without `ħ′`.
fn star_by_iteration(f: &PolynomialSymbol, g: &PolynomialSymbol) -> PolynomialSymbol {
    let n = f.pairs();
    let mut t = Tensor::new();
    for (_, a, c) in f.terms() {
        for (_, b, d) in g.terms() {
            *t.entry((a.clone(), b.clone())).or_insert_with(Rational::zero) += c * d;
        }
    }
    let mut out = PolynomialSymbol::zero(n, DEFAULT_HBAR_MAX);
    let mut k = 0u32;
    let mut scale = Rational::one();
    while !t.is_empty() {
        for ((a, b), c) in &t {
            let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
            out.add_term(k, m, c * &scale);
        }
        t = apply_pi(&t, n);
        k += 1;
        scale /= rat(2 * k as i64);
    }
    out
}

#[test]
fn basic_products() {
    let (x, p) = (PolynomialSymbol::x(1, 0), PolynomialSymbol::p(1, 0));
    let xp = star(&x, &p).unwrap();
    assert_eq!(xp.hbar_coefficient(1), PolynomialSymbol::constant(1, ratio(1, 2)));
    assert_eq!(star(&p, &x).unwrap().hbar_coefficient(1), PolynomialSymbol::constant(1, ratio(-1, 2)));
    let comm = xp.sub(&star(&p, &x).unwrap()).unwrap();
    assert_eq!(comm, PolynomialSymbol::hbar(1));
    assert_eq!(poisson_from_star(&x, &p).unwrap(), PolynomialSymbol::constant(1, rat(1)));
    let one = PolynomialSymbol::constant(1, rat(1));
    assert_eq!(star(&one, &xp).unwrap(), xp);
    let x2 = x.mul(&x).unwrap();
    assert!(star_commutator_scaled(&x, &x2).unwrap().is_zero());
    assert!(matches!(star(&x, &PolynomialSymbol::x(2, 0)), Err(crate::Error::VariableMismatch)));
    assert_eq!(xp.to_string(), "x1*p1 + 1/2*h");
}

#[test]
fn star_matches_exponential_oracle() {
    for s in 0..40 {
        let mut rng = rng_for(5, "moyal oracle", s);
        let n = 1 + (s as usize % 2);
        let f = PolynomialSymbol::random(n, 3, &mut rng);
        let g = PolynomialSymbol::random(n, 3, &mut rng);
        assert_eq!(star(&f, &g).unwrap(), star_by_iteration(&f, &g), "f = {f}, g = {g}");
    }
}

#[test]
fn truncation_drops_high_hbar_terms() {
    let mut rng = rng_for(6, "trunc", 0);
    let f = PolynomialSymbol::random(1, 4, &mut rng).with_hbar_max(1);
    let g = PolynomialSymbol::random(1, 4, &mut rng);
    let full = star(&f.clone().with_hbar_max(DEFAULT_HBAR_MAX), &g).unwrap();
    let cut = star(&f, &g).unwrap();
    assert_eq!(cut, full.with_hbar_max(1));
}

#[test]
fn moyal_suite_passes() {
    let checks = moyal_checks(MoyalParams {
        pairs: 1,
        degree: 4,
        hbar_max: DEFAULT_HBAR_MAX,
        samples: 200,
        seed: 0,
    })
    .unwrap();
    assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
    let two = moyal_checks(MoyalParams {
        pairs: 2,
        degree: 2,
        hbar_max: DEFAULT_HBAR_MAX,
        samples: 20,
        seed: 1,
    })
    .unwrap();
    assert!(two.iter().all(|c| !c.failed()), "{two:?}");
    let truncated = moyal_checks(MoyalParams {
        pairs: 1,
        degree: 3,
        hbar_max: 1,
        samples: 30,
        seed: 2,
    })
    .unwrap();
    assert!(truncated.iter().all(|c| !c.failed()), "{truncated:?}");
    assert!(moyal_checks(MoyalParams {
        pairs: 4,
        degree: 2,
        hbar_max: DEFAULT_HBAR_MAX,
        samples: 1,
        seed: 0
    })
    .is_err());
}
