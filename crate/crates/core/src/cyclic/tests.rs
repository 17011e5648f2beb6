use super::*;
use crate::algebra_core::{dual_numbers, ground_field, matrix_algebra, upper_triangular, AlgebraMap};
use crate::exact_linalg::{rat, Rational};
use crate::hochschild::HochschildChain;
use crate::sampling::rng_for;

fn scaling(c: i64) -> AlgebraMap {
    // ε ↦ c·ε on the dual numbers
    AlgebraMap {
        matrix: SparseRationalMatrix::from_dense(&[vec![rat(1), rat(0)], vec![rat(0), rat(c)]]),
    }
}

fn diagonal_projection(a: &FinDimAlgebra) -> AlgebraMap {
    // E12 ↦ 0 on upper triangular 2×2 matrices
    let e12 = a.index_of("E12").unwrap();
    let n = a.dim();
    AlgebraMap {
        matrix: SparseRationalMatrix::from_triplets(n, n, (0..n).filter(|&i| i != e12).map(|i| (i, i, rat(1)))),
    }
}

#[test]
fn hc_examples() {
    let k = cyclic_homology(&ground_field(), CyclicVariant::cyclic(), 0, 4).unwrap();
    assert_eq!(k.dims, vec![1, 0, 1, 0, 1]);
    let d = cyclic_homology(&dual_numbers(), CyclicVariant::cyclic(), 0, 3).unwrap();
    assert_eq!(d.dims, vec![2, 0, 2, 0]);
    let m = cyclic_homology(&matrix_algebra(2).unwrap(), CyclicVariant::cyclic(), 0, 0).unwrap();
    assert_eq!(m.dims, vec![1]);
}

#[test]
fn negative_and_periodic_of_ground_field() {
    let neg = cyclic_homology(&ground_field(), CyclicVariant::negative(4), -4, 3).unwrap();
    assert_eq!(neg.dims, vec![1, 0, 1, 0, 1, 0, 0, 0]);
    assert_eq!(neg.stable, Some(true));
    let per = cyclic_homology(&ground_field(), CyclicVariant::periodic(3), 0, 3).unwrap();
    assert_eq!(per.dims, vec![1, 0, 1, 0]);
    assert!(UComplex::build(
        &MixedComplex::hochschild(&Hochschild::new(&ground_field()).unwrap(), 4),
        CyclicVariant::negative(0),
        0,
        2
    )
    .is_err());
}

#[test]
fn mixed_complex_and_window_squares() {
    let h = Hochschild::new(&upper_triangular(2).unwrap()).unwrap();
    let mc = MixedComplex::hochschild(&h, 6);
    mc.check().unwrap();
    for v in [CyclicVariant::cyclic(), CyclicVariant::negative(2), CyclicVariant::periodic(2)] {
        UComplex::build(&mc, v, -2, 2).unwrap().complex.check().unwrap();
    }
}

#[test]
fn inclusions_are_chain_maps() {
    // CC⁻[−2] → CC⁻ (multiplication by u) and CC⁻ → CC^per
    let h = Hochschild::new(&dual_numbers()).unwrap();
    let mc = MixedComplex::hochschild(&h, 10);
    let neg = UComplex::build(&mc, CyclicVariant::negative(3), -2, 3).unwrap();
    let per = UComplex::build(&mc, CyclicVariant::periodic(3), -2, 3).unwrap();
    let ids: Vec<_> = (0..=10).map(|p| SparseRationalMatrix::identity(mc.dims()[p])).collect();
    let f: Vec<_> = (-2..=3).map(|n| neg.map_matrix(&per, n, &ids, &[])).collect();
    crate::exact_linalg::induced_map_on_homology(&neg.complex, &per.complex, &f, 0).unwrap();
    for n in -1..=1 {
        let u_n = super::shift_matrix(&neg, n + 2, n, 1);
        let u_n1 = super::shift_matrix(&neg, n + 1, n - 1, 1);
        assert_eq!(
            neg.complex.differential(n).mul(&u_n),
            u_n1.mul(&neg.complex.differential(n + 2))
        );
    }
}

#[test]
fn s_map_examples() {
    let k = ground_field();
    assert_eq!(s_map(&k, 2).unwrap().rank(), 1);
    let u = build_cyclic_complex(&k, CyclicVariant::cyclic(), 0, 4).unwrap();
    let ss = s_map_in(&u, 2).unwrap().mul(&s_map_in(&u, 4).unwrap());
    assert_eq!(ss.rank(), 1);
    assert_eq!(s_map(&dual_numbers(), 2).unwrap().rank(), 1);
    assert!(matches!(s_map(&k, 1), Err(Error::DegreeUnderflow(_))));
}

#[test]
fn sbi_sequence_is_exact() {
    for a in [dual_numbers(), upper_triangular(2).unwrap(), matrix_algebra(2).unwrap()] {
        let (_, check) = sbi_check(&a, 3).unwrap();
        assert!(!check.failed(), "{:?}", check);
    }
}

fn ctx_dual() -> (kunneth::ShuffleContext, FinDimAlgebra) {
    let a = dual_numbers();
    (kunneth::ShuffleContext::new(&a, &a).unwrap(), a)
}

#[test]
fn shuffle_examples() {
    let (ctx, _) = ctx_dual();
    let x = ctx.a.chain_from_tensors(0, &[(rat(1), vec![1])]);
    let y = ctx.c.chain_from_tensors(0, &[(rat(1), vec![1])]);
    // ε⊗ε sits at index 1·2 + 1
    assert_eq!(shuffle_sh(&ctx, &x, &y), ctx.ac.chain_from_tensors(0, &[(rat(1), vec![3])]));
    // sh′(a_0, c_0) = 1 ⊗ (a_0⊗1) ⊗ (1⊗c_0)
    assert_eq!(
        shuffle_sh_prime(&ctx, &x, &y),
        ctx.ac.chain_from_tensors(2, &[(rat(1), vec![0, 2, 1])])
    );
    let x1 = ctx.a.chain_from_tensors(1, &[(rat(1), vec![0, 1])]);
    let y1 = ctx.c.chain_from_tensors(1, &[(rat(1), vec![0, 1])]);
    assert_eq!(
        shuffle_sh(&ctx, &x1, &y1),
        ctx.ac.chain_from_tensors(2, &[(rat(1), vec![0, 2, 1]), (rat(-1), vec![0, 1, 2])])
    );
}

fn tensor_b(ctx: &kunneth::ShuffleContext, x: &HochschildChain, y: &HochschildChain, connes: bool) -> Vec<(Rational, HochschildChain, HochschildChain)> {
    let (dx, dy) = if connes {
        (ctx.a.connes_b(x), ctx.c.connes_b(y))
    } else {
        (ctx.a.b(x), ctx.c.b(y))
    };
    let mut out = Vec::new();
    if connes || x.p > 0 {
        out.push((rat(1), dx, y.clone()));
    }
    if connes || y.p > 0 {
        out.push((crate::hochschild::sign(x.p), x.clone(), dy));
    }
    out
}

fn apply(ctx: &kunneth::ShuffleContext, op: fn(&kunneth::ShuffleContext, &HochschildChain, &HochschildChain) -> HochschildChain, terms: &[(Rational, HochschildChain, HochschildChain)], p: usize) -> HochschildChain {
    let mut out = ctx.ac.zero_chain(p);
    for (c, x, y) in terms {
        out = out.add(&op(ctx, x, y).scale(c));
    }
    out
}

#[test]
fn shuffle_chain_map_layers() {
    let u = upper_triangular(2).unwrap();
    let ctx = kunneth::ShuffleContext::new(&u, &dual_numbers()).unwrap();
    for i in 0..12 {
        let mut rng = rng_for(0, "shuffle", i);
        let (p, q) = (i as usize % 3, (i as usize / 3) % 3);
        let x = ctx.a.random_chain(p, &mut rng);
        let y = ctx.c.random_chain(q, &mut rng);
        let n = p + q;
        let sh = shuffle_sh(&ctx, &x, &y);
        let shp = shuffle_sh_prime(&ctx, &x, &y);
        // u⁰: b sh = sh b
        if n > 0 {
            assert_eq!(ctx.ac.b(&sh), apply(&ctx, shuffle_sh, &tensor_b(&ctx, &x, &y, false), n - 1));
        }
        // u¹: B sh + b sh′ = sh B + sh′ b
        let lhs = ctx.ac.connes_b(&sh).add(&ctx.ac.b(&shp));
        let mut rhs = apply(&ctx, shuffle_sh, &tensor_b(&ctx, &x, &y, true), n + 1);
        if n > 0 {
            rhs = rhs.add(&apply(&ctx, shuffle_sh_prime, &tensor_b(&ctx, &x, &y, false), n + 1));
        }
        assert_eq!(lhs, rhs, "u¹ layer for p={p} q={q}");
        // u²: B sh′ = sh′ B
        let lhs = ctx.ac.connes_b(&shp);
        let rhs = apply(&ctx, shuffle_sh_prime, &tensor_b(&ctx, &x, &y, true), n + 3);
        assert_eq!(lhs, rhs, "u² layer for p={p} q={q}");
    }
}

#[test]
fn shuffle_graded_commutative_after_swap() {
    let a = dual_numbers();
    let c = upper_triangular(2).unwrap();
    let ac = kunneth::ShuffleContext::new(&a, &c).unwrap();
    let ca = kunneth::ShuffleContext::new(&c, &a).unwrap();
    let (na, nc) = (a.dim(), c.dim());
    let swap = |z: &HochschildChain| -> HochschildChain {
        let mut out = ac.ac.zero_chain(z.p);
        for (i, v) in z.coords.iter().enumerate() {
            if num_traits::Zero::is_zero(v) {
                continue;
            }
            let slots: Vec<usize> = ca.ac.decode_chain(z.p, i).iter().map(|&s| (s % na) * nc + s / na).collect();
            out.coords[ac.ac.encode_chain(&slots).unwrap()] += v;
        }
        out
    };
    for i in 0..12 {
        let mut rng = rng_for(0, "swap", i);
        let (p, q) = (i as usize % 3, (i as usize / 3) % 2);
        let x = ac.a.random_chain(p, &mut rng);
        let y = ac.c.random_chain(q, &mut rng);
        let lhs = shuffle_sh(&ac, &x, &y);
        let rhs = swap(&shuffle_sh(&ca, &y, &x)).scale(&crate::hochschild::sign(p * q));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn kunneth_small() {
    let k = ground_field();
    let r = kunneth_certify(&k, &k, 2, 1).unwrap();
    assert!(r.checks.iter().all(|c| !c.failed()), "{:?}", r.checks);
    let d = dual_numbers();
    let r = kunneth_certify(&d, &d, 2, 1).unwrap();
    assert_eq!(r.hh_dims[1], 4);
    assert_eq!(r.tensor_dims, r.hh_dims);
    assert!(r.checks.iter().all(|c| !c.failed()), "{:?}", r.checks);
}

#[test]
fn goodwillie_examples() {
    let d = dual_numbers();
    let r = goodwillie_check(&d, &[1], 3, 3).unwrap();
    assert!(r.checks.iter().all(|c| !c.failed()), "{:?}", r);
    let u = upper_triangular(2).unwrap();
    let r = goodwillie_check(&u, &[u.index_of("E12").unwrap()], 2, 2).unwrap();
    assert!(r.checks.iter().all(|c| !c.failed()), "{:?}", r);
    let r = goodwillie_check(&d, &[], 2, 2).unwrap();
    assert!(r.checks.iter().all(|c| !c.failed()));
    assert!(matches!(goodwillie_check(&d, &[0], 2, 2), Err(Error::NotIdeal(_))));
}

#[test]
fn twisted_b_is_a_homotopy() {
    let d = dual_numbers();
    let u = upper_triangular(2).unwrap();
    for (a, f) in [(d.clone(), scaling(2)), (d.clone(), scaling(0)), (u.clone(), diagonal_projection(&u))] {
        let c = twisted_regular(&a, &f).unwrap();
        for i in 0..20 {
            let mut rng = rng_for(0, "twisted", i);
            let p = i as usize % 4;
            let x = c.random_chain(p, &mut rng);
            let mut lhs = c.b(&twisted_b(&a, &f, &x).unwrap());
            if p > 0 {
                lhs = lhs.add(&twisted_b(&a, &f, &c.b(&x)).unwrap());
            }
            assert_eq!(lhs, x.sub(&c.apply_everywhere(&f, &x)));
        }
    }
    let h = Hochschild::new(&d).unwrap();
    let mut rng = rng_for(0, "twisted-id", 0);
    let x = h.random_chain(2, &mut rng);
    assert_eq!(twisted_b(&d, &AlgebraMap::identity(2), &x).unwrap(), h.connes_b(&x));
    let bad = AlgebraMap {
        matrix: SparseRationalMatrix::from_dense(&[vec![rat(0), rat(0)], vec![rat(0), rat(1)]]),
    };
    assert!(matches!(twisted_b(&d, &bad, &x), Err(Error::NotAlgebraMap(_))));
}

#[test]
fn push_and_pull() {
    let d = dual_numbers();
    let k = ground_field();
    let reg = BimoduleChains::regular(&d);
    let mut rng = rng_for(0, "push", 0);
    let x = reg.random_chain(2, &mut rng);
    let id = AlgebraMap::identity(2);
    assert_eq!(pushforward(&reg, &id, &d, &x).unwrap().1, x);
    assert_eq!(pullback(&reg, &id, &reg, &x).unwrap(), x);
    // augmentation on C_0
    let r = AlgebraMap {
        matrix: SparseRationalMatrix::from_dense(&[vec![rat(1), rat(0)]]),
    };
    let x0 = reg.random_chain(0, &mut rng);
    assert_eq!(pushforward(&reg, &r, &k, &x0).unwrap().1.coords, vec![x0.coords[0].clone()]);
    // functoriality and chain-map property
    let (f, g) = (scaling(2), scaling(3));
    for i in 0..10 {
        let mut rng = rng_for(0, "push-fun", i);
        let x = reg.random_chain(1 + i as usize % 3, &mut rng);
        let (mid, y) = pushforward(&reg, &g, &d, &x).unwrap();
        let (_, z) = pushforward(&mid, &f, &d, &y).unwrap();
        let (tgt, w) = pushforward(&reg, &f.compose(&g), &d, &x).unwrap();
        assert_eq!(z, w);
        assert_eq!(tgt.b(&w), pushforward(&reg, &f.compose(&g), &d, &reg.b(&x)).unwrap().1);
    }
    // pullback along g: regular chains over A with module twisted by g
    let u = upper_triangular(2).unwrap();
    let p = diagonal_projection(&u);
    let tgt = BimoduleChains::regular(&u);
    let src = BimoduleChains::new(&u, &u, p.clone(), p.clone()).unwrap();
    for i in 0..10 {
        let mut rng = rng_for(0, "pull", i);
        let x = src.random_chain(1 + i as usize % 3, &mut rng);
        let y = pullback(&src, &p, &tgt, &x).unwrap();
        assert_eq!(tgt.b(&y), pullback(&src, &p, &tgt, &src.b(&x)).unwrap());
    }
    assert!(pullback(&reg, &id, &tgt, &x).is_err());
}

#[test]
fn dimodule_shadow_holds() {
    let d = dual_numbers();
    let k = ground_field();
    let unit = AlgebraMap {
        matrix: SparseRationalMatrix::from_dense(&[vec![rat(1)], vec![rat(0)]]),
    };
    let id = AlgebraMap::identity(2);
    let beta = vec![rat(2), rat(-3)];
    let c = dimodule_shadow(&k, &d, &d, &id, &scaling(2), &unit, &unit, &beta).unwrap();
    assert!(!c.failed(), "{c:?}");
    // A = B = C, f_1 = g_0 = f, g_1 = f_0 = id
    let f = scaling(5);
    let c = dimodule_shadow(&d, &d, &d, &id, &f, &f, &id, &beta).unwrap();
    assert!(!c.failed(), "{c:?}");
    assert!(dimodule_shadow(&d, &d, &d, &id, &f, &id, &id, &beta).is_err());
}


#[test]
fn periodic_window_with_small_truncation() {
    let hp = cyclic_homology(&dual_numbers(), CyclicVariant::periodic(1), 0, 5).unwrap();
    assert_eq!(hp.dims, vec![1, 0, 1, 0, 1, 0]);
    assert_eq!(hp.stable, Some(true));
}
