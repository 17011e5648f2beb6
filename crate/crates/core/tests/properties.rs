use nccalc::algebra_core::{dual_numbers, ground_field, matrix_algebra, truncated_poly, upper_triangular, FinDimAlgebra};
use nccalc::exact_linalg::{rat, Rational, SparseRationalMatrix};
use nccalc::formality_aux::{free_lie_dims, lyndon_words};
use nccalc::hochschild::Hochschild;
use nccalc::moyal::{star, PolynomialSymbol};
use nccalc::operads::{all_perms, compose, FreeOperad, Operad, SymmetricCollection};
use nccalc::sampling::{rng_for, small_vector};
use proptest::prelude::*;

fn algebra(i: usize) -> FinDimAlgebra {
    match i {
        0 => ground_field(),
        1 => dual_numbers(),
        2 => truncated_poly(1, 3).unwrap(),
        3 => matrix_algebra(2).unwrap(),
        _ => upper_triangular(2).unwrap(),
    }
}

/// Fraction-free elimination over `i128`.
fn bareiss_rank(mut m: Vec<Vec<i128>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let (mut rank, mut prev) = (0, 1i128);
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

fn int_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_rational(m: &[Vec<i64>]) -> SparseRationalMatrix {
    SparseRationalMatrix::from_dense(&m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_fraction_free_elimination(m in int_matrix()) {
        let a = to_rational(&m);
        let oracle = bareiss_rank(m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        prop_assert_eq!(a.rank(), oracle);
        prop_assert_eq!(a.transpose().rank(), oracle);
    }

    #[test]
    fn kernel_basis_is_a_kernel_of_full_nullity(m in int_matrix()) {
        let a = to_rational(&m);
        let k = a.kernel_basis();
        prop_assert_eq!(k.len() + a.rank(), a.cols());
        for v in &k {
            prop_assert!(a.mul_vec(v).iter().all(|x| *x == Rational::from_integer(0.into())));
        }
        let span = SparseRationalMatrix::from_columns(a.cols(), &k);
        prop_assert_eq!(span.rank(), k.len());
    }

    #[test]
    fn mixed_complex_identities(alg in 0usize..5, p in 1usize..4, seed in any::<u64>()) {
        let h = Hochschild::new(&algebra(alg)).unwrap();
        let x = h.random_chain(p, &mut rng_for(seed, "chain", 0));
        prop_assert!(h.b(&h.b(&x)).is_zero());
        prop_assert!(h.connes_b(&h.connes_b(&x)).is_zero());
        prop_assert!(h.b(&h.connes_b(&x)).add(&h.connes_b(&h.b(&x))).is_zero());
    }

    #[test]
    fn cochain_differential_squares_to_zero(alg in 0usize..5, d in 0usize..3, seed in any::<u64>()) {
        let h = Hochschild::new(&algebra(alg)).unwrap();
        let c = h.random_cochain(d, &mut rng_for(seed, "cochain", 0));
        prop_assert!(h.cochain_delta(&h.cochain_delta(&c)).is_zero());
    }

    #[test]
    fn cup_is_associative(alg in 0usize..3, d in 0usize..2, e in 0usize..2, f in 0usize..2, seed in any::<u64>()) {
        let h = Hochschild::new(&algebra(alg)).unwrap();
        let mut rng = rng_for(seed, "cup", 0);
        let (x, y, z) = (h.random_cochain(d, &mut rng), h.random_cochain(e, &mut rng), h.random_cochain(f, &mut rng));
        let left = h.cup(&h.cup(&x, &y).unwrap(), &z).unwrap();
        let right = h.cup(&x, &h.cup(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left.data, right.data);
    }

    #[test]
    fn free_operad_action_is_a_right_action(n in 2usize..5, i in 0usize..24, j in 0usize..24, seed in any::<u64>()) {
        let free = FreeOperad::new(SymmetricCollection::binary_regular("r"), 4).unwrap();
        let perms = all_perms(n);
        let (s, t) = (&perms[i % perms.len()], &perms[j % perms.len()]);
        let x = small_vector(&mut rng_for(seed, "op", 0), free.dim(n).unwrap());
        let once = free.act(n, &compose(s, t), &x).unwrap();
        let twice = free.act(n, t, &free.act(n, s, &x).unwrap()).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn star_product_is_associative(pairs in 1usize..3, degree in 0u32..4, seed in any::<u64>()) {
        let mut rng = rng_for(seed, "star", 0);
        let f = PolynomialSymbol::random(pairs, degree, &mut rng);
        let g = PolynomialSymbol::random(pairs, degree, &mut rng);
        let h = PolynomialSymbol::random(pairs, degree, &mut rng);
        let left = star(&star(&f, &g).unwrap(), &h).unwrap();
        let right = star(&f, &star(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(star(&f, &g).unwrap().hbar_coefficient(0), f.mul(&g).unwrap());
    }

    #[test]
    fn witt_formula_counts_lyndon_words(m in 1usize..4, d in 1usize..7) {
        prop_assert_eq!(free_lie_dims(m, d)[d - 1], lyndon_words(m, d).len());
    }
}
