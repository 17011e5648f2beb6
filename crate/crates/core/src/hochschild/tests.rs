use super::*;
use crate::algebra_core::{dual_numbers, ground_field, matrix_algebra, truncated_poly, upper_triangular};
use crate::sampling::rng_for;

fn hoch(a: &FinDimAlgebra) -> Hochschild {
    Hochschild::new(a).unwrap()
}

#[test]
fn b_on_two_tensors() {
    // b(a0⊗a1) = a0a1 − a1a0 in M_2
    let h = hoch(&matrix_algebra(2).unwrap());
    let x = h.chain_from_tensors(1, &[(rat(1), vec![1, 2])]);
    let bx = h.b(&x);
    let e12e21 = h.algebra().mul(&h.algebra().basis_vector(1), &h.algebra().basis_vector(2));
    let e21e12 = h.algebra().mul(&h.algebra().basis_vector(2), &h.algebra().basis_vector(1));
    let expect: Vec<Rational> = e12e21.iter().zip(&e21e12).map(|(a, b)| a - b).collect();
    assert_eq!(bx.coords, expect);
}

#[test]
fn b_dual_example() {
    let h = hoch(&dual_numbers());
    let x = h.chain_from_tensors(2, &[(rat(1), vec![0, 1, 1])]);
    let expect = h.chain_from_tensors(1, &[(rat(2), vec![1, 1])]);
    assert_eq!(h.b(&x), expect);
    assert!(matches!(h.boundary_b(&h.zero_chain(0)), Err(Error::DegreeZero)));
}

#[test]
fn b_squared_truncated_poly() {
    let h = hoch(&truncated_poly(2, 3).unwrap());
    for i in 0..100 {
        let mut rng = rng_for(0, "b2", i);
        let p = 2 + (i as usize % 2);
        let x = h.random_chain(p, &mut rng);
        assert!(h.b(&h.b(&x)).is_zero());
    }
}

#[test]
fn connes_examples() {
    let h = hoch(&dual_numbers());
    let x = h.chain_from_tensors(0, &[(rat(1), vec![1])]);
    assert_eq!(h.connes_b(&x), h.chain_from_tensors(1, &[(rat(1), vec![0, 1])]));
    let y = h.chain_from_tensors(1, &[(rat(1), vec![0, 1])]);
    assert!(h.connes_b(&y).is_zero());
}

#[test]
fn mixed_complex_identities_m2() {
    let h = hoch(&matrix_algebra(2).unwrap());
    for i in 0..100 {
        let mut rng = rng_for(0, "bB", i);
        let p = 1 + (i as usize % 3);
        let x = h.random_chain(p, &mut rng);
        assert!(h.connes_b(&h.connes_b(&x)).is_zero());
        let lhs = h.b(&h.connes_b(&x)).add(&h.connes_b(&h.b(&x)));
        assert!(lhs.is_zero());
    }
}

#[test]
fn delta_of_zero_cochain_is_commutator() {
    let a = upper_triangular(2).unwrap();
    let h = hoch(&a);
    let elt = a.basis_vector(1);
    let da = h.cochain_delta(&h.element_cochain(&elt));
    for x in 1..a.dim() {
        let xv = a.basis_vector(x);
        let ax = a.mul(&elt, &xv);
        let xa = a.mul(&xv, &elt);
        let expect: Vec<Rational> = ax.iter().zip(&xa).map(|(p, q)| p - q).collect();
        assert_eq!(h.eval(&da, &[x]), expect.as_slice());
    }
}

#[test]
fn delta_squared() {
    let h = hoch(&upper_triangular(2).unwrap());
    for i in 0..100 {
        let mut rng = rng_for(0, "dd", i);
        let d = i as usize % 3;
        let c = h.random_cochain(d, &mut rng);
        assert!(h.cochain_delta(&h.cochain_delta(&c)).is_zero());
    }
}

#[test]
fn delta_is_bracket_with_m_on_augmented_algebras() {
    // Ā is an ideal in k[x]/x³, so the normalized m is associative on it
    let h = hoch(&truncated_poly(1, 3).unwrap());
    let m = h.mult_cochain();
    assert!(h.gerstenhaber_bracket(&m, &m).unwrap().is_zero());
    for i in 0..20 {
        let mut rng = rng_for(0, "dm", i);
        let mut c = h.random_cochain(1 + i as usize % 2, &mut rng);
        // values in Ā
        for k in (0..c.data.len()).step_by(h.algebra().dim()) {
            c.data[k] = rat(0);
        }
        assert_eq!(h.gerstenhaber_bracket(&m, &c).unwrap(), h.cochain_delta(&c));
    }
}

#[test]
fn center_of_m2() {
    let h = hoch(&matrix_algebra(2).unwrap());
    let dims = h.hh_dims(1, None).unwrap();
    assert_eq!(dims.cohomology.unwrap()[0], 1);
}

#[test]
fn cup_examples_and_leibniz() {
    let a = dual_numbers();
    let h = hoch(&a);
    let x = h.element_cochain(&a.basis_vector(1));
    let y = h.element_cochain(&[rat(2), rat(3)]);
    assert_eq!(h.cup(&x, &y).unwrap().data, a.mul(&x.data, &y.data));
    for i in 0..50 {
        let mut rng = rng_for(0, "cup", i);
        let d: Vec<_> = (0..3).map(|k| h.random_cochain((i as usize + k) % 2, &mut rng)).collect();
        let l = h.cup(&h.cup(&d[0], &d[1]).unwrap(), &d[2]).unwrap();
        let r = h.cup(&d[0], &h.cup(&d[1], &d[2]).unwrap()).unwrap();
        assert_eq!(l, r);
    }
    for a in [upper_triangular(2).unwrap(), matrix_algebra(2).unwrap()] {
        let h = hoch(&a);
        for i in 0..30 {
            let mut rng = rng_for(0, "leib", i);
            let d = h.random_cochain(i as usize % 2, &mut rng);
            let e = h.random_cochain((i as usize / 2) % 2, &mut rng);
            let lhs = h.cochain_delta(&h.cup(&d, &e).unwrap());
            let rhs = h
                .cup(&h.cochain_delta(&d), &e)
                .unwrap()
                .add(&h.cup(&d, &h.cochain_delta(&e)).unwrap().scale(&sign(d.d)));
            assert_eq!(lhs, rhs, "Leibniz failed for arities {} {}", d.d, e.d);
        }
    }
}

#[test]
fn brace_with_one_argument_is_circle() {
    let h = hoch(&upper_triangular(2).unwrap());
    let mut rng = rng_for(0, "circ", 0);
    let d = h.random_cochain(2, &mut rng);
    let e = h.random_cochain(1, &mut rng);
    // (D∘E)(a1,a2) = D(E(a1),a2) + (−1)^{|E|+1} D(a1,E(a2))
    let c = h.circle(&d, &e).unwrap();
    for col in 0..h.nbar().pow(2) {
        let a = h.decode_bar(2, col);
        let ea1 = crate::exact_linalg::to_sparse(h.eval(&e, &a[..1]));
        let ea2 = crate::exact_linalg::to_sparse(h.eval(&e, &a[1..]));
        let t1 = h.eval_multilinear(&d, &[ea1, vec![(a[1], rat(1))]]);
        let t2 = h.eval_multilinear(&d, &[vec![(a[0], rat(1))], ea2]);
        let expect: Vec<Rational> = t1.iter().zip(&t2).map(|(x, y)| x + y).collect();
        assert_eq!(h.eval(&c, &a), expect.as_slice());
    }
}

fn pre_lie_rhs(h: &Hochschild, d: &HochschildCochain, e: &HochschildCochain, f: &HochschildCochain) -> HochschildCochain {
    // D{E{F}} + D{E,F} + (−1)^{(|E|+1)(|F|+1)} D{F,E}
    let ef = h.brace(e, std::slice::from_ref(f)).unwrap();
    let t1 = h.brace(d, &[ef]).unwrap();
    let t2 = h.brace(d, &[e.clone(), f.clone()]).unwrap();
    let t3 = h.brace(d, &[f.clone(), e.clone()]).unwrap();
    t1.add(&t2).add(&t3.scale(&sign((e.d + 1) * (f.d + 1))))
}

#[test]
fn brace_relation() {
    for a in [dual_numbers(), upper_triangular(2).unwrap()] {
        let h = hoch(&a);
        for i in 0..20 {
            let mut rng = rng_for(0, "prelie", i);
            let d = h.random_cochain(1 + i as usize % 2, &mut rng);
            let e = h.random_cochain(1 + (i as usize / 2) % 2, &mut rng);
            let f = h.random_cochain(i as usize % 2, &mut rng);
            let lhs = h.brace(&h.brace(&d, std::slice::from_ref(&e)).unwrap(), std::slice::from_ref(&f)).unwrap();
            assert_eq!(lhs, pre_lie_rhs(&h, &d, &e, &f));
        }
    }
}

#[test]
fn bracket_jacobi_and_derivation() {
    let h = hoch(&upper_triangular(2).unwrap());
    for i in 0..30 {
        let mut rng = rng_for(0, "jac", i);
        let x: Vec<_> = (0..3).map(|k| h.random_cochain((i as usize + k) % 3, &mut rng)).collect();
        let br = |a: &HochschildCochain, b: &HochschildCochain| h.gerstenhaber_bracket(a, b).unwrap();
        // graded Jacobi with shifted degrees |x|+1
        let s = |a: &HochschildCochain, b: &HochschildCochain| sign((a.d + 1) * (b.d + 1));
        let (a, b, c) = (&x[0], &x[1], &x[2]);
        let j = br(a, &br(b, c))
            .scale(&s(a, c))
            .add(&br(b, &br(c, a)).scale(&s(b, a)))
            .add(&br(c, &br(a, b)).scale(&s(c, b)));
        assert!(j.is_zero());
        let lhs = h.cochain_delta(&br(a, b));
        let rhs = br(&h.cochain_delta(a), b).add(&br(a, &h.cochain_delta(b)).scale(&sign(a.d + 1)));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn hh_dims_small() {
    assert_eq!(hoch(&ground_field()).hh_dims(3, None).unwrap().homology, vec![1, 0, 0, 0]);
    let d = hoch(&dual_numbers()).hh_dims(3, None).unwrap();
    assert_eq!(d.homology, vec![2, 1, 1, 1]);
    assert_eq!(d.cohomology.unwrap(), vec![2, 1, 1, 1]);
}

#[test]
fn bullet_examples() {
    let h = hoch(&dual_numbers());
    let mut rng = rng_for(0, "bullet", 0);
    let d = h.random_cochain(1, &mut rng);
    let e = h.random_cochain(2, &mut rng);
    let prod = bar_bullet(&h, std::slice::from_ref(&d), std::slice::from_ref(&e), 4).unwrap();
    let mut expect = BarElement::word(vec![d.clone(), e.clone()]);
    expect.add(BarElement::word(vec![e.clone(), d.clone()]).scaled(&sign((d.d + 1) * (e.d + 1))));
    expect.add(BarElement::word(vec![h.circle(&d, &e).unwrap()]));
    assert!(prod.equals(&expect));
    assert!(matches!(bar_bullet(&h, &vec![d.clone(); 5], &[e], 4), Err(Error::LengthBound(4))));
}

#[test]
fn bullet_associative_and_bialgebra() {
    let h = hoch(&dual_numbers());
    for i in 0..10 {
        let mut rng = rng_for(0, "bullet-assoc", i);
        let u = BarElement::word(vec![h.random_cochain(i as usize % 3, &mut rng)]);
        let v = BarElement::word(vec![h.random_cochain((i as usize + 1) % 3, &mut rng)]);
        let w = BarElement::word(vec![h.random_cochain((i as usize + 2) % 2, &mut rng)]);
        let l = bullet_sums(&h, &bullet_sums(&h, &u, &v, 6).unwrap(), &w, 6).unwrap();
        let r = bullet_sums(&h, &u, &bullet_sums(&h, &v, &w, 6).unwrap(), 6).unwrap();
        assert!(l.equals(&r));
    }
    for i in 0..6usize {
        let mut rng = rng_for(0, "bialg", i as u64);
        let u: Vec<_> = (0..1 + i % 2).map(|k| h.random_cochain((i + k) % 2, &mut rng)).collect();
        let v: Vec<_> = (0..1 + (i / 2) % 2).map(|k| h.random_cochain((k + 1) % 3, &mut rng)).collect();
        assert!(bar::check_bialgebra(&h, &u, &v, 2).unwrap());
    }
}

#[test]
fn hkr_counts() {
    let h = hoch(&truncated_poly(2, 4).unwrap());
    for w in 0..=2 {
        let dims = h.hh_dims(2, Some(w)).unwrap().homology;
        for p in 0..=2usize {
            let expect = if p <= w { (w - p + 1) * [1, 2, 1][p] } else { 0 };
            assert_eq!(dims[p], expect, "weight {w} degree {p}");
        }
    }
}
