//! Randomized checks of the operad axioms in surjection form.

use rand::Rng;

use super::free::{operad_compose, Operad};
use super::perm::{all_perms, inverse};
use crate::error::Result;
use crate::exact_linalg::Rational;
use crate::report::Check;
use crate::sampling::{rng_for, small_vector};

fn random_element<P: Operad + ?Sized>(p: &P, n: usize, rng: &mut impl Rng) -> Result<Vec<Rational>> {
    Ok(small_vector(rng, p.dim(n)?))
}

fn random_surjection(n: usize, m: usize, rng: &mut impl Rng) -> Vec<usize> {
    loop {
        let f: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
        if (0..m).all(|j| f.contains(&j)) {
            return f;
        }
    }
}

fn fibre_sizes(f: &[usize], m: usize) -> Vec<usize> {
    (0..m).map(|j| f.iter().filter(|&&x| x == j).count()).collect()
}

fn random_args<P: Operad + ?Sized>(p: &P, f: &[usize], m: usize, rng: &mut impl Rng) -> Result<Vec<Vec<Rational>>> {
    fibre_sizes(f, m).iter().map(|&c| random_element(p, c, rng)).collect()
}

/// `op_{g∘f}(x; op_{f_k}(y_k; z)) = op_f(op_g(x; y); z)` for `I →f J →g K`
/// on `samples` random instances with `|I| ≤ max_n`.
pub fn associativity_check<P: Operad + ?Sized>(p: &P, max_n: usize, samples: usize, seed: u64) -> Result<Check> {
    let name = format!("{} associativity up to arity {max_n}", p.name());
    for s in 0..samples {
        let mut rng = rng_for(seed, "assoc square", s as u64);
        let n = rng.gen_range(1..=max_n);
        let mj = rng.gen_range(1..=n);
        let mk = rng.gen_range(1..=mj);
        let f = random_surjection(n, mj, &mut rng);
        let g = random_surjection(mj, mk, &mut rng);
        let x = random_element(p, mk, &mut rng)?;
        let ys = random_args(p, &g, mk, &mut rng)?;
        let zs = random_args(p, &f, mj, &mut rng)?;
        let left = operad_compose(p, &f, &operad_compose(p, &g, &x, &ys)?, &zs)?;
        let gf: Vec<usize> = f.iter().map(|&j| g[j]).collect();
        let mut inner = Vec::with_capacity(mk);
        for k in 0..mk {
            let fib: Vec<usize> = (0..mj).filter(|&j| g[j] == k).collect();
            let fk: Vec<usize> = (0..n)
                .filter(|&q| g[f[q]] == k)
                .map(|q| fib.iter().position(|&j| j == f[q]).unwrap_or(0))
                .collect();
            let args: Vec<Vec<Rational>> = fib.iter().map(|&j| zs[j].clone()).collect();
            inner.push(operad_compose(p, &fk, &ys[k], &args)?);
        }
        if left != operad_compose(p, &gf, &x, &inner)? {
            return Ok(Check::fail(name, format!("sample {s}: f = {f:?}, g = {g:?}")));
        }
    }
    Ok(Check::pass(name))
}

/// `op_{σ^{-1} f}(ρ(σ)x; y_{σ(0)}, …) = op_f(x; y)` and
/// `op_f(x; …, ρ(τ)y_j, …) = ρ(τ̃) op_f(x; y)` on random instances.
pub fn equivariance_check<P: Operad + ?Sized>(p: &P, max_n: usize, samples: usize, seed: u64) -> Result<Check> {
    let name = format!("{} equivariance up to arity {max_n}", p.name());
    for s in 0..samples {
        let mut rng = rng_for(seed, "equivariance", s as u64);
        let n = rng.gen_range(1..=max_n);
        let m = rng.gen_range(1..=n);
        let f = random_surjection(n, m, &mut rng);
        let x = random_element(p, m, &mut rng)?;
        let ys = random_args(p, &f, m, &mut rng)?;
        let base = operad_compose(p, &f, &x, &ys)?;

        let perms = all_perms(m);
        let sigma = &perms[rng.gen_range(0..perms.len())];
        let sinv = inverse(sigma);
        let f2: Vec<usize> = f.iter().map(|&j| sinv[j]).collect();
        let y2: Vec<Vec<Rational>> = sigma.iter().map(|&j| ys[j].clone()).collect();
        if operad_compose(p, &f2, &p.act(m, sigma, &x)?, &y2)? != base {
            return Ok(Check::fail(name, format!("sample {s}: outer σ = {sigma:?}")));
        }

        let j = rng.gen_range(0..m);
        let fib: Vec<usize> = (0..n).filter(|&q| f[q] == j).collect();
        let tperms = all_perms(fib.len());
        let tau = &tperms[rng.gen_range(0..tperms.len())];
        let mut y3 = ys.clone();
        y3[j] = p.act(fib.len(), tau, &ys[j])?;
        let mut big: Vec<usize> = (0..n).collect();
        for (a, &q) in fib.iter().enumerate() {
            big[q] = fib[tau[a]];
        }
        if operad_compose(p, &f, &x, &y3)? != p.act(n, &big, &base)? {
            return Ok(Check::fail(name, format!("sample {s}: inner τ = {tau:?}")));
        }
    }
    Ok(Check::pass(name))
}
