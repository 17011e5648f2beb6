//! The homotopy `T(D, E)` found by exact linear solving.

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::{chain_dim, contract, lie_l, op_matrix, suspended_s};
use crate::algebra_core::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exact_linalg::{solve_affine, Rational, SparseRationalMatrix};
use crate::hochschild::{sign, Hochschild, HochschildChain, HochschildCochain};
use crate::report::Check;
use crate::sampling::rng_for;

/// Highest power of `u` in `T`.
const U_DEGREE: usize = 1;

/// One block `T_m: C_n → C_target` of `T = Σ u^m T_m`.
#[derive(Clone, Debug, Serialize)]
pub struct TBlock {
    pub m: usize,
    pub n: usize,
    pub target: usize,
    #[serde(skip)]
    pub matrix: SparseRationalMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyT {
    pub window: usize,
    pub u_degree: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub blocks: Vec<TBlock>,
}

/// Right-hand side `[L_D, i_E + uS_E] − (−1)^{|D|+1}(i_{[D,E]} + uS_{[D,E]})`,
/// layer `u^layer`, as a matrix on `C_n`.
pub(crate) fn rhs_matrix(
    h: &Hochschild,
    dc: &HochschildCochain,
    ec: &HochschildCochain,
    br: Option<&HochschildCochain>,
    layer: usize,
    n: i64,
) -> SparseRationalMatrix {
    let (d, e) = (dc.d as i64, ec.d as i64);
    let shift = 2 * layer as i64;
    let pair = |c: &HochschildCochain, y: &crate::hochschild::HochschildChain| {
        if layer == 0 {
            contract(h, c, y)
        } else {
            suspended_s(h, c, y)
        }
    };
    let l_n = op_matrix(h, n, n - d + 1, |y| lie_l(h, dc, y));
    let p_n = op_matrix(h, n, n - e + shift, |y| pair(ec, y));
    let l_after = op_matrix(h, n - e + shift, n - e + shift - d + 1, |y| lie_l(h, dc, y));
    let p_after = op_matrix(h, n - d + 1, n - d + 1 - e + shift, |y| pair(ec, y));
    let target = n - d - e + 1 + shift;
    let mut r = l_after
        .mul(&p_n)
        .sub(&p_after.mul(&l_n).scale(&sign(((d + 1) * e) as usize)));
    if let Some(br) = br {
        let p_br = op_matrix(h, n, target, |y| pair(br, y));
        r = r.sub(&p_br.scale(&sign((d + 1) as usize)));
    }
    r
}

/// Solves `[b + uB, T] = [L_D, i_E + uS_E] − (−1)^{|D|+1}(i_{[D,E]} + uS_{[D,E]})`
/// for `T = T_0 + uT_1` on chains of degree `≤ window` (the equations use
/// `T` up to degree `window + 1`). `D` and `E` must be `δ`-closed, so the
/// `T(δD, E)` and `T(D, δE)` terms vanish. Returns `None` when the system
/// is inconsistent.
pub fn find_homotopy_t(
    h: &Hochschild,
    dc: &HochschildCochain,
    ec: &HochschildCochain,
    window: usize,
) -> Result<Option<HomotopyT>> {
    if !h.cochain_delta(dc).is_zero() || !h.cochain_delta(ec).is_zero() {
        return Err(Error::Unsupported("T(D, E) is solved for δ-closed D and E only".into()));
    }
    if window < dc.d.max(ec.d) {
        return Err(Error::WindowTooSmall(format!(
            "window {window} is below the arities {} and {}",
            dc.d, ec.d
        )));
    }
    let (d, e) = (dc.d as i64, ec.d as i64);
    let br = if d + e > 0 { Some(h.gerstenhaber_bracket(dc, ec)?) } else { None };
    let s = |m: usize| 2 - d - e + 2 * m as i64;
    let eps = sign((d + e) as usize);
    let p = window as i64;

    // unknown blocks
    let mut offset = std::collections::HashMap::new();
    let mut unknowns = 0usize;
    for m in 0..=U_DEGREE {
        for n in 0..=p + 1 {
            let t = n + s(m);
            if t >= 0 {
                offset.insert((m, n), unknowns);
                unknowns += chain_dim(h, t) * chain_dim(h, n);
            }
        }
    }
    let cols_of = |n: i64| chain_dim(h, n);

    let mut triplets: Vec<(usize, usize, Rational)> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for layer in 0..=U_DEGREE + 1 {
        for n in 0..=p {
            let o = n + s(layer) - 1;
            if o < 0 {
                continue;
            }
            let (rows, cols) = (chain_dim(h, o), cols_of(n));
            let row0 = rhs.len();
            let r = if layer <= 1 {
                rhs_matrix(h, dc, ec, br.as_ref(), layer, n)
            } else {
                SparseRationalMatrix::zero(rows, cols)
            };
            for rr in 0..rows {
                for c in 0..cols {
                    rhs.push(r.get(rr, c));
                }
            }
            let eq = |r: usize, c: usize| row0 + r * cols + c;
            // (X, m): X·T_m(n) − ε T_m(n')·Y
            let mut terms: Vec<(usize, bool)> = Vec::new();
            if layer <= U_DEGREE {
                terms.push((layer, false));
            }
            if layer >= 1 && layer - 1 <= U_DEGREE {
                terms.push((layer - 1, true));
            }
            for (m, connes) in terms {
                let t = n + s(m);
                let (x, src, y) = if connes {
                    (
                        op_matrix(h, t, t + 1, |z| h.connes_b(z)),
                        n + 1,
                        op_matrix(h, n, n + 1, |z| h.connes_b(z)),
                    )
                } else {
                    (
                        op_matrix(h, t, t - 1, |z| h.b(z)),
                        n - 1,
                        op_matrix(h, n, n - 1, |z| h.b(z)),
                    )
                };
                if let Some(&off) = offset.get(&(m, n)) {
                    let tc = cols_of(n);
                    for (r, k, v) in x.triplets() {
                        for c in 0..tc {
                            triplets.push((eq(r, c), off + k * tc + c, v.clone()));
                        }
                    }
                }
                if let Some(&off) = offset.get(&(m, src)) {
                    let sc = cols_of(src);
                    let trows = chain_dim(h, src + s(m));
                    for (k, c, v) in y.triplets() {
                        for r in 0..trows {
                            triplets.push((eq(r, c), off + r * sc + k, -&eps * v));
                        }
                    }
                }
            }
        }
    }
    let equations = rhs.len();
    let a = SparseRationalMatrix::from_triplets(equations, unknowns, triplets);
    let Some(sol) = solve_affine(&a, &rhs) else {
        return Ok(None);
    };
    let mut blocks = Vec::new();
    let mut keys: Vec<_> = offset.iter().map(|(k, v)| (*k, *v)).collect();
    keys.sort();
    for ((m, n), off) in keys {
        let t = n + s(m);
        let (rows, cols) = (chain_dim(h, t), cols_of(n));
        let mut entries = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = &sol[off + r * cols + c];
                if !v.is_zero() {
                    entries.push((r, c, v.clone()));
                }
            }
        }
        blocks.push(TBlock {
            m,
            n: n as usize,
            target: t as usize,
            matrix: SparseRationalMatrix::from_triplets(rows, cols, entries),
        });
    }
    Ok(Some(HomotopyT {
        window,
        u_degree: U_DEGREE,
        unknowns,
        equations,
        blocks,
    }))
}

/// Random `δ`-closed cochain: cocycle representatives with coefficients in
/// `[−2, 2]` plus the coboundary of a random cochain.
pub fn random_cocycle(h: &Hochschild, d: usize, rng: &mut impl Rng) -> Result<HochschildCochain> {
    let basis = h.cochain_complex(d + 1)?.homology_basis(d as i64);
    let mut c = h.zero_cochain(d);
    for rep in basis.reps() {
        let k = Rational::from_integer(rng.gen_range(-2..=2).into());
        c = c.add(&HochschildCochain { d, data: rep.clone() }.scale(&k));
    }
    if d > 0 {
        c = c.add(&h.cochain_delta(&h.random_cochain(d - 1, rng)));
    }
    Ok(c)
}

/// Evaluates `[b + uB, T]` on random chains of degree `1..=window` layer by
/// layer and compares with the prescribed right-hand side.
fn verify_t(h: &Hochschild, dc: &HochschildCochain, ec: &HochschildCochain, t: &HomotopyT, seed: u64) -> Result<Option<String>> {
    let (d, e) = (dc.d as i64, ec.d as i64);
    let br = if d + e > 0 { Some(h.gerstenhaber_bracket(dc, ec)?) } else { None };
    let eps = sign((d + e) as usize);
    let s = |m: usize| 2 - d - e + 2 * m as i64;
    let apply = |m: usize, x: &HochschildChain| -> Option<HochschildChain> {
        let b = t.blocks.iter().find(|b| b.m == m && b.n == x.p)?;
        Some(HochschildChain { p: b.target, coords: b.matrix.mul_vec(&x.coords) })
    };
    let mut rng = rng_for(seed, "verify-t", 0);
    for n in 1..=t.window {
        let x = h.random_chain(n, &mut rng);
        let (bx, cbx) = (h.b(&x), h.connes_b(&x));
        for layer in 0..=U_DEGREE + 1 {
            let o = n as i64 + s(layer) - 1;
            if o < 0 {
                continue;
            }
            let mut lhs = h.zero_chain(o as usize);
            let mut add = |y: Option<HochschildChain>, c: &Rational| {
                if let Some(y) = y {
                    if y.p == o as usize {
                        lhs = lhs.add(&y.scale(c));
                    }
                }
            };
            let one = Rational::from_integer(1.into());
            if layer <= U_DEGREE {
                add(apply(layer, &x).filter(|y| y.p >= 1).map(|y| h.b(&y)), &one);
                add(apply(layer, &bx), &-&eps);
            }
            if layer >= 1 {
                add(apply(layer - 1, &x).map(|y| h.connes_b(&y)), &one);
                add(apply(layer - 1, &cbx), &-&eps);
            }
            let rhs = if layer <= 1 {
                rhs_matrix(h, dc, ec, br.as_ref(), layer, n as i64).mul_vec(&x.coords)
            } else {
                vec![Rational::zero(); lhs.coords.len()]
            };
            if lhs.coords != rhs {
                return Ok(Some(format!("layer u^{layer} fails on a chain of degree {n}")));
            }
        }
    }
    Ok(None)
}

/// Solves for `T(D, E)` on `pairs` seeded random pairs of `δ`-closed cochains
/// with `|D|, |E| ≤ 2` and checks each solution independently.
pub fn homotopy_t_suite(a: &FinDimAlgebra, window: usize, pairs: usize, seed: u64) -> Result<Vec<Check>> {
    let h = Hochschild::new(a)?;
    let top = window.min(2);
    let mut checks = Vec::new();
    for i in 0..pairs {
        let mut rng = rng_for(seed, "homotopy", i as u64);
        let dc = random_cocycle(&h, i % (top + 1), &mut rng)?;
        let ec = random_cocycle(&h, (i / (top + 1)) % (top + 1), &mut rng)?;
        let name = format!("T(D, E) pair {i:02} (|D| = {}, |E| = {})", dc.d, ec.d);
        match find_homotopy_t(&h, &dc, &ec, window)? {
            None => checks.push(Check::fail(name, "linear system is inconsistent")),
            Some(t) => match verify_t(&h, &dc, &ec, &t, seed)? {
                None => checks.push(Check::pass(name)),
                Some(w) => checks.push(Check::fail(name, w)),
            },
        }
    }
    Ok(checks)
}
