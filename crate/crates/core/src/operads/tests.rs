use std::collections::BTreeMap;

use num_traits::Zero;
use rand::Rng;

use super::*;
use crate::exact_linalg::{rat, Rational};
use crate::sampling::{rng_for, small_vector};

fn double_factorial(n: u64) -> u64 {
    (1..=n).rev().step_by(2).product()
}

/// Number of rooted trees with labelled leaves `1..n` and all internal
/// vertices of arity at least two, by inclusion of leaf `n` (`a(n+1) =
/// (n+2) a(n) + 2 Σ C(n, k) a(k) a(n−k+1)`, k = 2..n−1).
fn total_partitions(n: usize) -> u64 {
    let mut a = vec![0u64, 1, 1];
    let binom = |n: u64, k: u64| (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
    for m in 2..n as u64 {
        let mut s = (m + 2) * a[m as usize];
        for k in 2..m {
            s += 2 * binom(m, k) * a[k as usize] * a[(m - k + 1) as usize];
        }
        a.push(s);
    }
    a[n]
}

#[test]
fn set_partitions_are_bell_numbers() {
    let bell = [1, 1, 2, 5, 15, 52, 203];
    for n in 0..7 {
        assert_eq!(set_partitions((1u64 << n) - 1).len(), bell[n]);
    }
}

#[test]
fn free_operad_dims_match_tree_counts() {
    let com = SymmetricCollection::binary_one("c", false);
    let free = FreeOperad::new(com, 6).unwrap();
    assert_eq!(free.dim(1).unwrap(), 1);
    for n in 2..=6u64 {
        assert_eq!(free.dim(n as usize).unwrap() as u64, double_factorial(2 * n - 3), "n = {n}");
    }
    let reg = FreeOperad::new(SymmetricCollection::binary_regular("r"), 4).unwrap();
    assert_eq!(reg.dim(3).unwrap(), 3 * 4);
    assert_eq!(reg.dim(4).unwrap(), 15 * 8);
    assert!(matches!(FreeOperad::new(SymmetricCollection::binary_regular("r"), 9), Err(crate::Error::ArityBound(9))));
    assert!(matches!(reg.dim(5), Err(crate::Error::ArityBound(5))));

    let trees = |n: usize| canonical_trees((1u64 << n) - 1, &|_| true, n);
    for n in 2..=6 {
        assert_eq!(trees(n).len() as u64, total_partitions(n), "n = {n}");
        assert!(trees(n).iter().all(Tree::is_canonical));
    }
}

#[test]
fn parses_collection_json_and_rejects_bad_actions() {
    let text = r#"{"name": "two", "arities": [{"arity": 2, "dim": 2,
        "action": [{"perm": [2, 1], "matrix": [["0", "1"], ["1", "0"]]}]}]}"#;
    let v = parse_collection_json(text).unwrap();
    assert_eq!(v.dim(2), 2);
    let bad = r#"{"arities": [{"arity": 2, "dim": 1, "action": [{"perm": [2, 1], "matrix": [["2"]]}]}]}"#;
    assert!(matches!(parse_collection_json(bad), Err(crate::Error::InvalidCollection(_))));
    let missing = r#"{"arities": [{"arity": 3, "dim": 1, "action": [{"perm": [2, 1, 3], "matrix": [["1"]]}]}]}"#;
    assert!(matches!(parse_collection_json(missing), Err(crate::Error::InvalidCollection(_))));
    let s3 = r#"{"arities": [{"arity": 3, "dim": 1, "action": [
        {"perm": [2, 1, 3], "matrix": [["-1"]]}, {"perm": [2, 3, 1], "matrix": [["1"]]}]}]}"#;
    let c = parse_collection_json(s3).unwrap();
    assert_eq!(c.act(3, &[0, 2, 1]).get(0, 0), rat(-1));
    let nilpotent = r#"{"arities": [{"arity": 2, "dim": 2, "action": [{"perm": [2, 1], "matrix": [["1", "0"], ["0", "1"]]}],
        "differential": [["0", "1"], ["0", "0"]]}]}"#;
    assert!(parse_collection_json(nilpotent).unwrap().has_differential());
    let square = r#"{"arities": [{"arity": 2, "dim": 1, "action": [], "differential": [["1"]]}]}"#;
    assert!(parse_collection_json(square).is_err());
}

fn random_element<P: Operad + ?Sized>(p: &P, n: usize, rng: &mut impl Rng) -> Vec<Rational> {
    small_vector(rng, p.dim(n).unwrap())
}

#[test]
fn end_composition_is_substitution() {
    let end = EndOperad::new(2, 4).unwrap();
    for s in 0..20 {
        let mut rng = rng_for(1, "end", s);
        let (m, k) = (rng.gen_range(1..=3), rng.gen_range(1..=2));
        let i = rng.gen_range(0..m);
        let f = random_element(&end, m, &mut rng);
        let g = random_element(&end, k, &mut rng);
        let fg = end.compose_at(m, i, &f, k, &g).unwrap();
        let xs: Vec<Vec<Rational>> = (0..m + k - 1).map(|_| small_vector(&mut rng, 2)).collect();
        let inner = end.evaluate(k, &g, &xs[i..i + k]).unwrap();
        let mut outer: Vec<Vec<Rational>> = xs[..i].to_vec();
        outer.push(inner);
        outer.extend_from_slice(&xs[i + k..]);
        assert_eq!(end.evaluate(m + k - 1, &fg, &xs).unwrap(), end.evaluate(m, &f, &outer).unwrap());
    }
    let u = end.unit();
    let f = random_element(&end, 2, &mut rng_for(1, "unit", 0));
    assert_eq!(end.compose_at(1, 0, &u, 2, &f).unwrap(), f);
    assert_eq!(end.compose_at(2, 1, &f, 1, &u).unwrap(), f);
}

#[test]
fn composition_axioms_on_random_elements() {
    let both = |p: &dyn Operad, n: usize, samples: usize| {
        for c in [associativity_check(p, n, samples, 2).unwrap(), equivariance_check(p, n, samples, 3).unwrap()] {
            assert!(!c.failed(), "{c:?}");
        }
    };
    both(&EndOperad::new(2, 4).unwrap(), 3, 40);
    both(&FreeOperad::new(SymmetricCollection::binary_regular("r"), 4).unwrap(), 4, 30);
    both(&FreeOperad::new(SymmetricCollection::binary_one("l", true), 4).unwrap(), 4, 20);
    both(&preset_presentation("as").unwrap().quotient().unwrap(), 3, 30);
}

#[test]
fn operad_compose_rejects_bad_shapes() {
    let end = EndOperad::new(2, 3).unwrap();
    let x = end.unit();
    assert!(matches!(operad_compose(&end, &[0, 2], &x, std::slice::from_ref(&x)), Err(crate::Error::ShapeMismatch(_))));
    let y = vec![rat(0); 8];
    assert!(matches!(operad_compose(&end, &[0, 0], &x, &[y.clone(), y]), Err(crate::Error::ShapeMismatch(_))));
    assert!(matches!(end.compose_at(1, 1, &x, 1, &x), Err(crate::Error::ShapeMismatch(_))));
}

#[test]
fn bar_differential_examples() {
    let end = EndOperad::new(2, 5).unwrap();
    let corolla = BarElement::basis(3, Tree::corolla(3), vec![5]);
    assert!(bar_differential(&end, &corolla, 4).unwrap().is_zero());

    let free = FreeOperad::new(SymmetricCollection::binary_regular("r"), 4).unwrap();
    let t = Tree::Node(vec![Tree::Node(vec![Tree::Leaf(0), Tree::Leaf(2)]), Tree::Leaf(1)]);
    let x = BarElement::basis(3, t.clone(), vec![1, 0]);
    let d = bar_differential(&free, &x, 4).unwrap();
    assert_eq!(d.terms.len(), 1);
    let ((shape, decs), c) = d.terms.iter().next().unwrap();
    assert_eq!(*shape, Tree::corolla(3));
    let mut expected = vec![rat(0); free.dim(3).unwrap()];
    let (g1, g0) = (free.generator(2, 1).unwrap(), free.generator(2, 0).unwrap());
    let composite = free.compose_at(2, 0, &g1, 2, &g0).unwrap();
    let composite = free.act(3, &[0, 2, 1], &composite).unwrap();
    expected[decs[0]] = c.clone();
    assert_eq!(composite, expected);

    assert!(matches!(bar_differential(&end, &corolla, 0), Err(crate::Error::TreeBound(_))));
}

#[test]
fn bar_d_squared_vanishes() {
    let end = EndOperad::new(2, 5).unwrap();
    for c in bar_d_squared_check(&end, 4, 5, 7).unwrap() {
        assert!(!c.failed(), "{c:?}");
    }
    let reg = FreeOperad::new(SymmetricCollection::binary_regular("r"), 4).unwrap();
    for c in bar_d_squared_check(&reg, 3, 4, 8).unwrap() {
        assert!(!c.failed(), "{c:?}");
    }
}

#[test]
fn bar_homology_of_free_operads() {
    for v in [
        SymmetricCollection::binary_one("c", false),
        SymmetricCollection::binary_regular("r"),
        SymmetricCollection::binary_one("l", true),
    ] {
        let (reports, checks) = bar_homology_check(&v, 4).unwrap();
        assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
        assert_eq!(reports[0].by_weight[0].homology_dims, vec![v.dim(2)]);
        let a3 = &reports[1].by_weight;
        assert_eq!(a3.len(), 1);
        assert_eq!(a3[0].homology_dims, vec![0, 0]);
    }
    let text = r#"{"arities": [{"arity": 2, "dim": 1, "action": [{"perm": [2, 1], "matrix": [["1"]]}]},
        {"arity": 3, "dim": 1, "action": [{"perm": [2, 1, 3], "matrix": [["1"]]}, {"perm": [2, 3, 1], "matrix": [["1"]]}]}]}"#;
    let v = parse_collection_json(text).unwrap();
    let (reports, checks) = bar_homology_check(&v, 4).unwrap();
    assert!(checks.iter().all(|c| !c.failed()), "{checks:?}");
    let w1 = reports[1].by_weight.iter().find(|w| w.weight == 1).unwrap();
    assert_eq!(w1.homology_dims, vec![1, 0]);
    assert!(bar_homology_check(&v, 6).is_err());
}

#[test]
fn koszul_duals_at_arity_three() {
    let expect = [("as", 6, 6, 6), ("com", 2, 1, 2), ("lie", 1, 2, 1)];
    for (name, r, q, qd) in expect {
        let p = preset_presentation(name).unwrap();
        assert_eq!(p.relations().len(), r, "{name}");
        assert_eq!(p.arity3_dim(), q, "{name}");
        let rep = duality_report(&p).unwrap();
        assert!(rep.checks.iter().all(|c| !c.failed()), "{name}: {:?}", rep.checks);
        assert_eq!(rep.dual_dims[2], qd, "{name}");
        assert_eq!(rep.dims[2], named_operad_dims(name, 3).unwrap().total as usize);
    }
    let lie_dual = quadratic_dual(&preset_presentation("lie").unwrap()).unwrap();
    assert_eq!(lie_dual.generators().act(2, &[1, 0]).get(0, 0), rat(1));
}

#[test]
fn wrong_pairing_sign_breaks_stability() {
    // with the shape signs forgotten, the orthogonal of Com's relations is
    // not Σ_3-stable
    let p = preset_presentation("com").unwrap();
    let dual_gens = p.generators().dual_sign_twist("d").unwrap();
    let dual_free = FreeOperad::new(dual_gens.clone(), 3).unwrap();
    let d = dual_free.dim(3).unwrap();
    let g = pairing_matrix(p.free(), &dual_free).unwrap();
    let mut unsigned = vec![vec![rat(0); d]; d];
    for (i, row) in unsigned.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            let v = g.get(i, j);
            *x = if v.is_zero() { v } else { rat(1) };
        }
    }
    let r = crate::exact_linalg::SparseRationalMatrix::from_dense(p.relations());
    let perp = r.mul(&crate::exact_linalg::SparseRationalMatrix::from_dense(&unsigned)).kernel_basis();
    assert!(OperadPresentation::new("bad", dual_gens, perp).is_err());
}

#[test]
fn gerstenhaber_presentation_graded_dims() {
    let p = preset_presentation("gerst").unwrap();
    let graded = p.arity3_graded_dims();
    assert_eq!(graded, BTreeMap::from([(0, 1), (1, 3), (2, 2)]));
    let named = named_operad_dims("Gerst", 3).unwrap();
    assert_eq!(named.graded, Some(vec![1, 3, 2]));
    assert_eq!(named.total, 6);
}

fn is_lyndon(w: &[usize]) -> bool {
    (1..w.len()).all(|r| {
        let rot: Vec<usize> = w[r..].iter().chain(&w[..r]).copied().collect();
        w < &rot[..]
    })
}

#[test]
fn named_dims() {
    assert_eq!(named_operad_dims("Com", 4).unwrap().total, 1);
    for n in 1..=6 {
        let lyndon = all_perms(n).iter().filter(|w| is_lyndon(w)).count() as u64;
        assert_eq!(named_operad_dims("Lie", n).unwrap().total, lyndon);
        assert_eq!(named_operad_dims("As", n).unwrap().total, all_perms(n).len() as u64);
    }
    for n in 1..=5 {
        let g = named_operad_dims("gerst", n).unwrap();
        assert_eq!(g.total, all_perms(n).len() as u64);
    }
    assert!(matches!(named_operad_dims("BV", 3), Err(crate::Error::UnknownName(_))));
    assert!(matches!(named_operad_dims("Gerst", 6), Err(crate::Error::Bound(_))));
    assert!(matches!(preset_presentation("calc"), Err(crate::Error::UnknownName(_))));
}
