//! Chain/cochain pairings `i_D`, `L_D`, `S_D`, the Cartan homotopy formula
//! and the calculus on Hochschild (co)homology.

use rand::Rng;

use crate::algebra_core::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exact_linalg::SparseRationalMatrix;
use crate::hochschild::{sign, Hochschild, HochschildChain, HochschildCochain};
use crate::report::Check;
use crate::sampling::rng_for;

mod homology;
mod homotopy;
mod identities;

pub use homology::{calculus_report, verify_calculus, CalculusOnHomology, ClassOperation};
pub use homotopy::{find_homotopy_t, homotopy_t_suite, random_cocycle, HomotopyT};
pub use identities::identity_suite;

fn zero_below(h: &Hochschild, p: Option<usize>) -> HochschildChain {
    match p {
        Some(p) => h.zero_chain(p),
        None => HochschildChain { p: 0, coords: vec![] },
    }
}

/// `i_D(a_0⊗…⊗a_n) = ± a_0 D(a_1,…,a_d) ⊗ a_{d+1} ⊗ … ⊗ a_n`.
pub fn contract_i(h: &Hochschild, dc: &HochschildCochain, x: &HochschildChain) -> Result<HochschildChain> {
    if x.p < dc.d {
        return Err(Error::ArityExceedsDegree { arity: dc.d, degree: x.p });
    }
    Ok(contract(h, dc, x))
}

/// [`contract_i`] without the degree check; zero when `p < d`.
pub(crate) fn contract(h: &Hochschild, dc: &HochschildCochain, x: &HochschildChain) -> HochschildChain {
    let (d, n) = (dc.d, x.p);
    if n < d {
        return zero_below(h, None);
    }
    let alg = h.algebra();
    let mut acc = h.acc(n - d);
    h.for_each_term(x, |t, c| {
        let mut out = Vec::with_capacity(n - d + 1);
        for (k, v) in h.eval(dc, &t[1..=d]).iter().enumerate() {
            if num_traits::Zero::is_zero(v) {
                continue;
            }
            for (l, w) in alg.mul_basis(t[0], k) {
                out.clear();
                out.push(*l);
                out.extend_from_slice(&t[d + 1..]);
                acc.add(&out, &(c * v * w));
            }
        }
    });
    acc.out
}

/// Lie derivative `L_D`: insertions of `D` into consecutive slots, including
/// the cyclic ones that contain `a_0`. Returns an empty chain when the
/// target degree `n − d + 1` is negative.
///
/// Signs: `(−1)^{(d+1)k}` for `D(a_{k+1},…,a_{k+d})` inside, and
/// `(−1)^{d+1+(k+1)(n−k)}` for `D(a_{k+1},…,a_n,a_0,…)` in front.
pub fn lie_l(h: &Hochschild, dc: &HochschildCochain, x: &HochschildChain) -> HochschildChain {
    let (d, n) = (dc.d, x.p);
    if n + 1 < d {
        return zero_below(h, None);
    }
    let mut acc = h.acc(n + 1 - d);
    h.for_each_term(x, |t, c| {
        let mut out = Vec::with_capacity(n + 2);
        let mut args = Vec::with_capacity(d);
        for k in 0..=n.saturating_sub(d) {
            if k + d > n {
                break;
            }
            let s = sign((d + 1) * k) * c;
            for (v, val) in h.eval(dc, &t[k + 1..=k + d]).iter().enumerate() {
                if num_traits::Zero::is_zero(val) {
                    continue;
                }
                out.clear();
                out.extend_from_slice(&t[..=k]);
                out.push(v);
                out.extend_from_slice(&t[k + d + 1..]);
                acc.add(&out, &(&s * val));
            }
        }
        for k in (n + 1).saturating_sub(d)..=n {
            if k + d < n + 1 {
                continue;
            }
            let front = k + d - n;
            args.clear();
            args.extend_from_slice(&t[k + 1..]);
            args.extend_from_slice(&t[..front]);
            let s = sign(d + 1 + (k + 1) * (n - k)) * c;
            for (v, val) in h.eval(dc, &args).iter().enumerate() {
                if num_traits::Zero::is_zero(val) {
                    continue;
                }
                out.clear();
                out.push(v);
                out.extend_from_slice(&t[front..=k]);
                acc.add(&out, &(&s * val));
            }
        }
    });
    acc.out
}

/// `S_D(a_0⊗…⊗a_n) = Σ ± 1 ⊗ a_{k+1} ⊗ … ⊗ a_0 ⊗ … ⊗ D(a_{j+1},…,a_{j+d}) ⊗ … ⊗ a_k`
/// over `0 ≤ j`, `j + d ≤ k ≤ n`. Returns an empty chain when the target
/// degree `n − d + 2` is negative. The sign is `(−1)^{dn+(d+1)(j+k)+nk}`.
pub fn suspended_s(h: &Hochschild, dc: &HochschildCochain, x: &HochschildChain) -> HochschildChain {
    let (d, n) = (dc.d, x.p);
    if n + 2 < d {
        return zero_below(h, None);
    }
    let mut acc = h.acc(n + 2 - d);
    if n < d {
        return acc.out;
    }
    h.for_each_term(x, |t, c| {
        let mut out = Vec::with_capacity(n + 3);
        for j in 0..=n - d {
            for k in j + d..=n {
                let s = sign(d * n + (d + 1) * (j + k) + n * k) * c;
                for (v, val) in h.eval(dc, &t[j + 1..=j + d]).iter().enumerate() {
                    if num_traits::Zero::is_zero(val) {
                        continue;
                    }
                    out.clear();
                    out.push(0);
                    out.extend_from_slice(&t[k + 1..]);
                    out.extend_from_slice(&t[..=j]);
                    out.push(v);
                    out.extend_from_slice(&t[j + d + 1..=k]);
                    acc.add(&out, &(&s * val));
                }
            }
        }
    });
    acc.out
}

/// Graded commutator `[X, Y] = XY − (−1)^{|X||Y|} YX` of operators with parities `px`, `py`.
pub(crate) fn commutator(
    xy: &HochschildChain,
    yx: &HochschildChain,
    px: usize,
    py: usize,
) -> HochschildChain {
    xy.sub(&yx.scale(&sign(px * py)))
}

/// Dimension of `C_n`, zero for negative `n`.
pub(crate) fn chain_dim(h: &Hochschild, n: i64) -> usize {
    if n < 0 {
        0
    } else {
        h.chain_dim(n as usize)
    }
}

/// Matrix of `op: C_n → C_target`; zero when either degree is negative.
pub(crate) fn op_matrix(
    h: &Hochschild,
    n: i64,
    target: i64,
    op: impl Fn(&HochschildChain) -> HochschildChain,
) -> SparseRationalMatrix {
    if n < 0 || target < 0 {
        return SparseRationalMatrix::zero(chain_dim(h, target), chain_dim(h, n));
    }
    h.operator_matrix(n as usize, target as usize, op)
}

/// Checks the three `u`-layers of `[b + uB, i_D + uS_D] − i_{δD} − uS_{δD} = uL_D`
/// on seeded random `(D, x)` with `|D| ≤ 2`:
/// `[b, i_D] = i_{δD}`, `[B, i_D] + [b, S_D] − S_{δD} = L_D` and `[B, S_D] = 0`.
pub fn cartan_check(a: &FinDimAlgebra, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let h = Hochschild::new(a)?;
    let mut layers: [Option<String>; 3] = [None, None, None];
    for i in 0..samples {
        let mut rng = rng_for(seed, "cartan", i as u64);
        let d = rng.gen_range(0..=2);
        let n = d + 1 + rng.gen_range(0..=1);
        let dc = h.random_cochain(d, &mut rng);
        let x = h.random_chain(n, &mut rng);
        let dd = h.cochain_delta(&dc);
        let i_ = |c: &HochschildCochain, y: &HochschildChain| contract(&h, c, y);
        let s_ = |c: &HochschildCochain, y: &HochschildChain| suspended_s(&h, c, y);
        let bx = h.b(&x);
        let bbx = h.connes_b(&x);
        let u0 = commutator(&h.b(&i_(&dc, &x)), &i_(&dc, &bx), 1, d).sub(&i_(&dd, &x));
        let u1 = commutator(&h.connes_b(&i_(&dc, &x)), &i_(&dc, &bbx), 1, d)
            .add(&commutator(&h.b(&s_(&dc, &x)), &s_(&dc, &bx), 1, d))
            .sub(&s_(&dd, &x))
            .sub(&lie_l(&h, &dc, &x));
        let u2 = commutator(&h.connes_b(&s_(&dc, &x)), &s_(&dc, &bbx), 1, d);
        for (slot, v) in layers.iter_mut().zip([u0, u1, u2]) {
            if slot.is_none() && !v.is_zero() {
                *slot = Some(format!("sample {i}: |D| = {d}, chain degree {n}"));
            }
        }
    }
    Ok(layers
        .into_iter()
        .enumerate()
        .map(|(k, w)| match w {
            None => Check::pass(format!("cartan u^{k}")),
            Some(w) => Check::fail(format!("cartan u^{k}"), w),
        })
        .collect())
}
