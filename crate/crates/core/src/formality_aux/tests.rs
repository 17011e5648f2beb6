use num_traits::{One, Zero};

use super::*;
use crate::exact_linalg::{rat, ratio, Rational, SparseRationalMatrix};
use crate::report::Status;

/// `dim t_d` computed inside the tensor algebra: the span of right-normed
/// brackets of generators modulo the span of iterated `ad`s of relations.
fn lie_dims_in_tensor_algebra(m: usize, relations: &[Vec<(usize, Rational)>], max_degree: usize) -> Vec<usize> {
    let bracket = |x: &Vec<Rational>, dx: usize, y: &Vec<Rational>, dy: usize| -> Vec<Rational> {
        let my = m.pow(dy as u32);
        let mx = m.pow(dx as u32);
        let mut out = vec![Rational::zero(); mx * my];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i * my + j] += a * b;
                out[j * mx + i] -= a * b;
            }
        }
        out
    };
    let gen = |v: usize| {
        let mut e = vec![Rational::zero(); m];
        e[v] = Rational::one();
        e
    };
    let rank = |vs: &[Vec<Rational>]| if vs.is_empty() { 0 } else { SparseRationalMatrix::from_dense(vs).rank() };
    let mut lie: Vec<Vec<Rational>> = (0..m).map(gen).collect();
    let mut ideal: Vec<Vec<Rational>> = relations
        .iter()
        .map(|r| {
            let mut d = vec![Rational::zero(); m * m];
            for (i, c) in r {
                d[*i] = c.clone();
            }
            d
        })
        .collect();
    let mut dims = vec![m];
    for d in 2..=max_degree {
        lie = (0..m).flat_map(|v| lie.iter().map(move |l| (v, l))).map(|(v, l)| bracket(&gen(v), 1, l, d - 1)).collect();
        if d > 2 {
            ideal = (0..m).flat_map(|v| ideal.iter().map(move |r| (v, r))).map(|(v, r)| bracket(&gen(v), 1, r, d - 1)).collect();
        }
        dims.push(rank(&lie) - rank(&ideal));
    }
    dims
}

#[test]
fn drinfeld_kohno_dims() {
    let t2 = dk_dims(2, 6).unwrap();
    assert_eq!(t2.dims, vec![1, 0, 0, 0, 0, 0]);
    let t3 = dk_dims(3, 6).unwrap();
    assert_eq!(&t3.dims[..4], &[3, 1, 2, 3]);
    assert!(t3.checks.iter().all(|c| !c.failed()), "{:?}", t3.checks);
    let oracle = lie_dims_in_tensor_algebra(3, &dk_relations(3), 5);
    assert_eq!(&t3.dims[..5], &oracle[..]);
    let t4 = dk_dims(4, 4).unwrap();
    assert!(t4.checks.iter().all(|c| !c.failed()), "{:?}", t4.checks);
    assert_eq!(t4.dims, lie_dims_in_tensor_algebra(6, &dk_relations(4), 4));
    // t(4) is t(3) plus a free Lie algebra on three generators
    let w3 = free_lie_dims(3, 4);
    let expected: Vec<usize> = (0..4).map(|i| w3[i] + t3.dims[i]).collect();
    assert_eq!(t4.dims, expected);
    assert!(matches!(dk_dims(5, 2), Err(crate::Error::Bound(_))));
    assert!(matches!(dk_dims(3, 7), Err(crate::Error::Bound(_))));
}

#[test]
fn enveloping_dims_follow_the_product_formula() {
    // U(t(n)) has Hilbert series ∏_{k<n} 1/(1 − k t)
    let t4 = dk_dims(4, 4).unwrap();
    let h = |d: usize| -> usize {
        let mut total = 0;
        for a in 0..=d {
            for b in 0..=d - a {
                total += 2usize.pow(a as u32) * 3usize.pow(b as u32);
            }
        }
        total
    };
    let expected: Vec<usize> = (0..=4).map(h).collect();
    assert_eq!(t4.enveloping_dims, expected);
}

#[test]
fn free_lie_dims_agree_with_lyndon_words() {
    for m in 1..=4 {
        let w = free_lie_dims(m, 6);
        for d in 1..=6 {
            assert_eq!(lyndon_words(m, d).len(), w[d - 1], "m = {m}, d = {d}");
        }
    }
    let tower = EnvelopingTower::new(2, Vec::new(), 6);
    assert_eq!(tower.lie_dims(), free_lie_dims(2, 6));
}

#[test]
fn substitution_maps_preserve_relations() {
    for n in 2..=4 {
        for map in substitution_maps(n) {
            assert!(map.preserves_relations(), "{}", map.name);
        }
    }
    // doubling strand 1 without the second copy is not a morphism
    let mut bad = substitution_maps(3).remove(1);
    bad.images[0] = vec![(bad.images[0][0].0, rat(1))];
    assert!(!bad.preserves_relations());
}

#[test]
fn even_zeta_series_matches_series_inversion() {
    let order = 20;
    let s = even_zeta_series(order).unwrap();
    assert_eq!(s.coeff(2), ratio(-1, 24));
    assert_eq!(s.coeff(4), ratio(1, 1440));
    // u/(eᵘ−1) = 1 / Σ uⁿ/(n+1)!
    let mut fact = Rational::one();
    let mut denom = Vec::new();
    for n in 0..=order {
        fact *= rat(n as i64 + 1);
        denom.push(Rational::one() / &fact);
    }
    let mut inv = vec![Rational::zero(); order + 1];
    inv[0] = Rational::one();
    for n in 1..=order {
        let mut acc = Rational::zero();
        for k in 1..=n {
            acc += &denom[k] * &inv[n - k];
        }
        inv[n] = -acc;
    }
    for (k, c) in inv.iter().enumerate() {
        let mut e = c.clone();
        if k == 0 {
            e -= rat(1);
        }
        if k == 1 {
            e += ratio(1, 2);
        }
        assert_eq!(s.coeff(k), -e / rat(2), "k = {k}");
    }
    assert!(even_zeta_series(31).is_err());
}

#[test]
fn zeta_values_and_report() {
    let pi = std::f64::consts::PI;
    assert!((numeric_zeta(2) - pi * pi / 6.0).abs() < 1e-14);
    assert!((numeric_zeta(4) - pi.powi(4) / 90.0).abs() < 1e-14);
    assert!((numeric_zeta(3) - 1.202_056_903_159_594_2).abs() < 1e-14);
    let r = zeta_phi_check(8).unwrap();
    assert_eq!(r.rows.len(), 4);
    assert_eq!(r.rows[0].exact, "-1/24");
    assert!(r.checks.iter().all(|c| !c.failed()));
    let exp = r.checks.iter().find(|c| c.name == "exp form of the identity").unwrap();
    assert_eq!(exp.status, Status::Info);
    assert!(exp.witness.as_ref().unwrap().contains("mismatch"));
    assert!(zeta_phi_check(13).is_err());
}

#[test]
fn gamma_phi_terms() {
    let g = gamma_phi_series(6).unwrap();
    assert_eq!(g.value_at_zero, 1);
    assert_eq!(g.log_terms[0].coefficient, ratio(-1, 48));
    assert_eq!(g.log_terms[0].zeta_symbol, None);
    assert_eq!(g.log_terms[1].display(), "-1/3 zeta_phi(3)");
    assert_eq!(g.log_terms[2].coefficient, ratio(1, 1440 * 4));
}
