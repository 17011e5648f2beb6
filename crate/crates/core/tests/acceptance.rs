//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

use std::time::{Duration, Instant};

use nccalc::algebra_core::{dual_numbers, ground_field, matrix_algebra, truncated_poly, upper_triangular, FinDimAlgebra};
use nccalc::calculus::{homotopy_t_suite, identity_suite, verify_calculus};
use nccalc::cli::run;
use nccalc::cyclic::{cyclic_homology, goodwillie_check, kunneth_certify, CyclicVariant};
use nccalc::exact_linalg::{ratio, Rational};
use nccalc::formality_aux::{dk_dims, free_lie_dims, zeta_phi_check};
use nccalc::hochschild::Hochschild;
use nccalc::moyal::{moyal_checks, MoyalParams, DEFAULT_HBAR_MAX};
use nccalc::operads::{
    bar_d_squared_check, bar_homology_check, duality_report, preset_presentation, quadratic_dual, FreeOperad, Operad,
    SymmetricCollection,
};
use nccalc::report::{Check, Status};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_checks(label: &str, checks: &[Check]) -> Outcome {
    match checks.iter().find(|c| c.failed()) {
        None => Ok(()),
        Some(c) => Err(format!("{label}: {} ({})", c.name, c.witness.as_deref().unwrap_or(""))),
    }
}

fn err(e: nccalc::Error) -> String {
    e.to_string()
}

fn hh(a: &FinDimAlgebra, max: usize) -> Result<(Vec<usize>, Vec<usize>), String> {
    let d = Hochschild::new(a).map_err(err)?.hh_dims(max, None).map_err(err)?;
    Ok((d.homology, d.cohomology.unwrap_or_default()))
}

fn identity_suite_criterion() -> Outcome {
    let start = Instant::now();
    let algebras = [
        ground_field(),
        dual_numbers(),
        truncated_poly(1, 3).map_err(err)?,
        matrix_algebra(2).map_err(err)?,
        upper_triangular(2).map_err(err)?,
    ];
    for a in &algebras {
        let checks = identity_suite(a, 100, 0).map_err(err)?;
        ensure(checks.len() >= 13, || format!("{}: only {} identities checked", a.name(), checks.len()))?;
        all_checks(a.name(), &checks)?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))
}

fn hh_dims_criterion() -> Outcome {
    let (k, _) = hh(&ground_field(), 3)?;
    ensure(k == [1, 0, 0, 0], || format!("k: {k:?}"))?;
    let (dual, _) = hh(&dual_numbers(), 3)?;
    ensure(dual == [2, 1, 1, 1], || format!("dual numbers: {dual:?}"))?;
    let (m2, m2_co) = hh(&matrix_algebra(2).map_err(err)?, 2)?;
    ensure(m2_co[0] == 1, || format!("HH^0(M_2) = {}", m2_co[0]))?;
    ensure(m2[..3] == k[..3], || format!("HH_n(M_2) = {m2:?}"))
}

fn hc_dims_criterion() -> Outcome {
    for (a, expected) in [(ground_field(), [1, 0, 1, 0]), (dual_numbers(), [2, 0, 2, 0])] {
        let hc = cyclic_homology(&a, CyclicVariant::cyclic(), 0, 3).map_err(err)?;
        ensure(hc.dims == expected, || format!("{}: {:?}", a.name(), hc.dims))?;
    }
    Ok(())
}

/// Polynomial `p`-forms in two variables with coefficients of degree `w − p`.
fn forms(p: usize, w: usize) -> usize {
    if p > 2 || p > w {
        return 0;
    }
    // monomials x^a y^b with a + b = w − p, times the p-fold wedges of dx, dy
    let coefficients = w - p + 1;
    let wedges = [1, 2, 1][p];
    coefficients * wedges
}

fn hkr_criterion() -> Outcome {
    let a = truncated_poly(2, 4).map_err(err)?;
    let h = Hochschild::new(&a).map_err(err)?;
    for w in 0..=2 {
        let dims = h.hh_dims(3, Some(w)).map_err(err)?.homology;
        let expected: Vec<usize> = (0..=3).map(|p| forms(p, w)).collect();
        ensure(dims == expected, || format!("weight {w}: {dims:?} vs forms {expected:?}"))?;
    }
    ensure(forms(1, 1) == 2, || "oracle".into())
}

fn kunneth_criterion() -> Outcome {
    let r = kunneth_certify(&dual_numbers(), &dual_numbers(), 2, 0).map_err(err)?;
    all_checks("sh", &r.checks)?;
    ensure(r.checks.len() == 3, || format!("{} degrees certified", r.checks.len()))?;
    ensure(r.hh_dims[1] == 4, || format!("HH_1 = {}", r.hh_dims[1]))
}

fn goodwillie_criterion() -> Outcome {
    let a = dual_numbers();
    let eps = a.index_of("e").ok_or("no basis label e")?;
    let r = goodwillie_check(&a, &[eps], 3, 4).map_err(err)?;
    all_checks("goodwillie", &r.checks)?;
    let hp_k = cyclic_homology(&ground_field(), CyclicVariant::periodic(4), 0, 3).map_err(err)?;
    ensure(r.dims_a.dims == hp_k.dims, || format!("{:?} vs {:?}", r.dims_a.dims, hp_k.dims))?;
    let flags = r.checks.iter().filter(|c| c.status == Status::Stable).count();
    ensure(flags == 2, || format!("{flags} stability flags set"))
}

fn homotopy_criterion() -> Outcome {
    let checks = homotopy_t_suite(&dual_numbers(), 3, 20, 0).map_err(err)?;
    ensure(checks.len() == 20, || format!("{} pairs", checks.len()))?;
    all_checks("T(D, E)", &checks)
}

fn calculus_criterion() -> Outcome {
    for a in [dual_numbers(), matrix_algebra(2).map_err(err)?] {
        let r = verify_calculus(&a, 3).map_err(err)?;
        all_checks(a.name(), &r.checks)?;
    }
    Ok(())
}

fn operads_criterion() -> Outcome {
    let com = SymmetricCollection::binary_one("com", false);
    let free = FreeOperad::new(com.clone(), 5).map_err(err)?;
    let dims: Vec<usize> = (2..=5).map(|n| free.dim(n)).collect::<Result<_, _>>().map_err(err)?;
    let double_factorial: Vec<usize> = (2..=5).map(|n| (1..2 * n - 2).step_by(2).product()).collect();
    ensure(dims == double_factorial && dims == [1, 3, 15, 105], || format!("FreeOp dims {dims:?}"))?;
    all_checks("bar d^2", &bar_d_squared_check(&free, 4, 5, 0).map_err(err)?)?;
    for v in [com, SymmetricCollection::binary_regular("as"), SymmetricCollection::binary_one("lie", true)] {
        let (_, checks) = bar_homology_check(&v, 3).map_err(err)?;
        all_checks("bar homology", &checks)?;
    }
    for (name, dim, dual_dim) in [("as", 6, 6), ("com", 1, 2), ("lie", 2, 1)] {
        let p = preset_presentation(name).map_err(err)?;
        let r = duality_report(&p).map_err(err)?;
        all_checks(name, &r.checks)?;
        ensure(r.dims[2] == dim && r.dual_dims[2] == dual_dim, || format!("{name}: {:?} / {:?}", r.dims, r.dual_dims))?;
        let back = quadratic_dual(&quadratic_dual(&p).map_err(err)?).map_err(err)?;
        ensure(back.dims() == p.dims(), || format!("{name}: double dual {:?}", back.dims()))?;
    }
    Ok(())
}

fn dk_criterion() -> Outcome {
    let t3 = dk_dims(3, 4).map_err(err)?;
    all_checks("t(3)", &t3.checks)?;
    ensure(t3.dims == [3, 1, 2, 3], || format!("t(3): {:?}", t3.dims))?;
    let lie2 = free_lie_dims(2, 4);
    ensure(t3.dims[0] == lie2[0] + 1 && t3.dims[1..] == lie2[1..], || format!("free Lie(2): {lie2:?}"))?;
    let t2 = dk_dims(2, 4).map_err(err)?;
    ensure(t2.dims == [1, 0, 0, 0], || format!("t(2): {:?}", t2.dims))
}

fn zeta_criterion() -> Outcome {
    let r = zeta_phi_check(8).map_err(err)?;
    all_checks("zeta", &r.checks)?;
    let coeff = |k: usize| -> Rational { r.series.coeff(k) };
    ensure(coeff(2) == ratio(-1, 24), || format!("u^2: {}", coeff(2)))?;
    ensure(coeff(4) == ratio(1, 1440), || format!("u^4: {}", coeff(4)))?;
    ensure(r.rows.len() == 4 && r.rows.iter().all(|row| row.difference < 1e-12), || format!("{:?}", r.rows))?;
    let exp_form = r.checks.iter().find(|c| c.name.starts_with("exp form")).ok_or("exp form not reported")?;
    ensure(exp_form.status == Status::Info, || "exp form counted as a check".into())
}

fn moyal_criterion() -> Outcome {
    let start = Instant::now();
    let checks = moyal_checks(MoyalParams {
        pairs: 1,
        degree: 4,
        hbar_max: DEFAULT_HBAR_MAX,
        samples: 200,
        seed: 0,
    })
    .map_err(err)?;
    all_checks("moyal", &checks)?;
    for name in ["x*p - p*x = h'", "associativity", "antisymmetrized P_1 is the canonical bracket", "Jacobi"] {
        ensure(checks.iter().any(|c| c.name.starts_with(name)), || format!("missing {name}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))
}

fn determinism_criterion() -> Outcome {
    let commands: [&[&str]; 16] = [
        &["algebra", "validate", "dual_numbers"],
        &["hh", "dual_numbers", "--max-degree", "3"],
        &["hc", "dual_numbers", "--variant", "negative", "--max-degree", "2", "--trunc", "2"],
        &["verify", "identities", "dual_numbers", "--samples", "5", "--seed", "11"],
        &["verify", "calculus", "dual_numbers", "--max-degree", "2"],
        &["verify", "cartan", "truncated_poly(1,3)", "--samples", "5", "--seed", "12"],
        &["homotopy-t", "dual_numbers", "--window", "2", "--pairs", "3", "--seed", "13"],
        &["kunneth", "dual_numbers", "ground_field", "--max-degree", "2"],
        &["goodwillie", "dual_numbers", "--ideal", "e", "--trunc", "2"],
        &["operad", "free", "lie", "--arity", "4", "--seed", "14"],
        &["operad", "bar-check", "as", "--max-vertices", "3", "--seed", "15"],
        &["operad", "koszul", "--preset", "com"],
        &["dk", "--n", "3", "--max-degree", "3"],
        &["zeta", "--order", "6"],
        &["moyal", "--pairs", "1", "--degree", "2", "--samples", "5", "--seed", "16"],
        &["hc", "ground_field", "--variant", "periodic", "--max-degree", "3", "--trunc", "1"],
    ];
    for args in commands {
        let argv = || std::iter::once("nccalc").chain(args.iter().copied()).chain(["--json"]);
        let (c1, first) = run(argv());
        let (c2, second) = run(argv());
        ensure(c1 == 0 && c2 == 0, || format!("{args:?} exited with {c1}: {first}"))?;
        ensure(first == second, || format!("{args:?} differs between runs"))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("identity suite on five algebras", identity_suite_criterion),
        ("Hochschild dimensions", hh_dims_criterion),
        ("cyclic homology dimensions", hc_dims_criterion),
        ("HKR analog on truncated_poly(2, 4)", hkr_criterion),
        ("Kunneth for dual numbers squared", kunneth_criterion),
        ("Goodwillie rigidity at M = 4", goodwillie_criterion),
        ("homotopy T on 20 cocycle pairs", homotopy_criterion),
        ("calculus axioms", calculus_criterion),
        ("operads", operads_criterion),
        ("Drinfeld-Kohno t(3) and t(2)", dk_criterion),
        ("even zeta series", zeta_criterion),
        ("Moyal star product", moyal_criterion),
        ("byte-identical JSON reports", determinism_criterion),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  {:>2}. {name} ({secs:.2} s)", i + 1),
            Err(w) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} ({secs:.2} s): {w}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
