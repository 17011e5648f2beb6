//! Shuffle products `sh`, `sh′` and Künneth certification.

use serde::Serialize;

use super::{CyclicVariant, MixedComplex, TensorLayout, UComplex};
use crate::algebra_core::{tensor_product, FinDimAlgebra};
use crate::error::Result;
use crate::exact_linalg::{induced_map_on_homology, FiniteComplex, Rational, Shift, SparseRationalMatrix};
use crate::hochschild::{combinations, sign, Hochschild, HochschildChain};
use crate::report::Check;

/// Hochschild data of `A`, `C` and `A⊗C`, whose basis index is `i·dim C + j`.
#[derive(Clone, Debug)]
pub struct ShuffleContext {
    pub a: Hochschild,
    pub c: Hochschild,
    pub ac: Hochschild,
}

impl ShuffleContext {
    pub fn new(a: &FinDimAlgebra, c: &FinDimAlgebra) -> Result<Self> {
        let (ac, _, _) = tensor_product(a, c);
        Ok(Self {
            a: Hochschild::new(a)?,
            c: Hochschild::new(c)?,
            ac: Hochschild::new(&ac)?,
        })
    }

    fn pair(&self, i: usize, j: usize) -> usize {
        i * self.c.dim() + j
    }

    /// Adds `Σ_σ sgn(σ) (lead ⊗ σ-shuffle of xs and ys)`; with `marks = (i, j)`
    /// only shuffles placing `xs[i]` before `ys[j]` count.
    fn shuffles(
        &self,
        lead: usize,
        xs: &[usize],
        ys: &[usize],
        coef: &Rational,
        marks: Option<(usize, usize)>,
        out: &mut HochschildChain,
    ) {
        let (p, q) = (xs.len(), ys.len());
        let mut slots = vec![0usize; p + q + 1];
        slots[0] = lead;
        for pos in combinations(p + q, p) {
            let inv: usize = pos.iter().enumerate().map(|(r, &s)| s - r).sum();
            let (mut xi, mut yi) = (0, 0);
            let (mut px, mut py) = (0, 0);
            for s in 0..p + q {
                if xi < p && pos[xi] == s {
                    if marks.is_some_and(|m| m.0 == xi) {
                        px = s;
                    }
                    slots[s + 1] = xs[xi];
                    xi += 1;
                } else {
                    if marks.is_some_and(|m| m.1 == yi) {
                        py = s;
                    }
                    slots[s + 1] = ys[yi];
                    yi += 1;
                }
            }
            if marks.is_some() && px > py {
                continue;
            }
            if let Some(i) = self.ac.encode_chain(&slots) {
                out.coords[i] += sign(inv) * coef;
            }
        }
    }
}

/// `sh(a_0⊗…⊗a_p, c_0⊗…⊗c_q) = (a_0⊗c_0) ⊗ sh_{pq}(a_1⊗1, …, 1⊗c_q)`.
pub fn shuffle_sh(ctx: &ShuffleContext, x: &HochschildChain, y: &HochschildChain) -> HochschildChain {
    let mut out = ctx.ac.zero_chain(x.p + y.p);
    ctx.a.for_each_term(x, |s, cx| {
        ctx.c.for_each_term(y, |t, cy| {
            let xs: Vec<usize> = s[1..].iter().map(|&i| ctx.pair(i, 0)).collect();
            let ys: Vec<usize> = t[1..].iter().map(|&j| ctx.pair(0, j)).collect();
            ctx.shuffles(ctx.pair(s[0], t[0]), &xs, &ys, &(cx * cy), None, &mut out);
        });
    });
    out
}

/// `sh′(a_0⊗…⊗a_p, c_0⊗…⊗c_q) = (−1)^p 1 ⊗ sh′_{p+1,q+1}(a_0⊗1, …, 1⊗c_q)`,
/// the sum running over cyclic shuffles (both words rotated, then shuffled)
/// with `a_0` in front of `c_0`, each signed by its permutation.
pub fn shuffle_sh_prime(ctx: &ShuffleContext, x: &HochschildChain, y: &HochschildChain) -> HochschildChain {
    let mut out = ctx.ac.zero_chain(x.p + y.p + 2);
    ctx.a.for_each_term(x, |s, cx| {
        ctx.c.for_each_term(y, |t, cy| {
            let xs: Vec<usize> = s.iter().map(|&i| ctx.pair(i, 0)).collect();
            let ys: Vec<usize> = t.iter().map(|&j| ctx.pair(0, j)).collect();
            let (lx, ly) = (xs.len(), ys.len());
            for r in 0..lx {
                for u in 0..ly {
                    let rx: Vec<usize> = xs[r..].iter().chain(&xs[..r]).copied().collect();
                    let ry: Vec<usize> = ys[u..].iter().chain(&ys[..u]).copied().collect();
                    let c = sign((lx - 1) * (r + 1) + (ly - 1) * u) * cx * cy;
                    // a_0 now sits at index (lx − r) % lx, c_0 at (ly − u) % ly
                    ctx.shuffles(0, &rx, &ry, &c, Some(((lx - r) % lx, (ly - u) % ly)), &mut out);
                }
            }
        });
    });
    out
}

/// Matrix of a bilinear chain operation on the tensor block layout in
/// total degree `n`, landing in `C_{n+shift}(A⊗C)`.
fn bilinear_matrix(
    ctx: &ShuffleContext,
    layout: &TensorLayout,
    n: usize,
    shift: usize,
    op: fn(&ShuffleContext, &HochschildChain, &HochschildChain) -> HochschildChain,
) -> SparseRationalMatrix {
    let mut entries = Vec::new();
    for &(p, q, off) in &layout.blocks[n] {
        let dq = ctx.c.chain_dim(q);
        for i in 0..ctx.a.chain_dim(p) {
            let x = ctx.a.basis_chain(p, i);
            for j in 0..dq {
                let z = op(ctx, &x, &ctx.c.basis_chain(q, j));
                for (r, v) in z.coords.into_iter().enumerate() {
                    if !num_traits::Zero::is_zero(&v) {
                        entries.push((r, off + i * dq + j, v));
                    }
                }
            }
        }
    }
    SparseRationalMatrix::from_triplets(ctx.ac.chain_dim(n + shift), layout.dims[n], entries)
}

/// Outcome of [`kunneth_certify`].
#[derive(Clone, Debug, Serialize)]
pub struct KunnethReport {
    /// `dim H_n(C(A)⊗C(C))`, `n = 0..=max_degree`.
    pub tensor_dims: Vec<usize>,
    /// `dim HH_n(A⊗C)`.
    pub hh_dims: Vec<usize>,
    /// Window-truncated negative cyclic dims of both sides (when requested).
    pub negative_tensor_dims: Option<Vec<usize>>,
    pub negative_dims: Option<Vec<usize>>,
    pub checks: Vec<Check>,
}

/// Certifies that `sh` induces isomorphisms `H_n(C(A)⊗C(C)) → HH_n(A⊗C)`
/// for `n ≤ max_degree` and, when `negative_m > 0`, that `sh + u·sh′`
/// induces isomorphisms of the negative cyclic complexes truncated at
/// `u^{negative_m}`.
pub fn kunneth_certify(
    a: &FinDimAlgebra,
    c: &FinDimAlgebra,
    max_degree: usize,
    negative_m: usize,
) -> Result<KunnethReport> {
    let ctx = ShuffleContext::new(a, c)?;
    let top = max_degree + 1 + 2 * negative_m;
    let ma = MixedComplex::hochschild(&ctx.a, top);
    let mc = MixedComplex::hochschild(&ctx.c, top);
    let (mt, layout) = ma.tensor(&mc, top)?;
    let mac = MixedComplex::hochschild(&ctx.ac, top);
    let sh: Vec<SparseRationalMatrix> = (0..=top).map(|n| bilinear_matrix(&ctx, &layout, n, 0, shuffle_sh)).collect();
    let mut checks = Vec::new();

    let h_top = max_degree + 1;
    let src = FiniteComplex::new(0, mt.dims()[..=h_top].to_vec(), (0..=h_top).map(|n| mt.b(n).clone()).collect(), Shift::Homological)?;
    let tgt = FiniteComplex::new(0, mac.dims()[..=h_top].to_vec(), (0..=h_top).map(|n| mac.b(n).clone()).collect(), Shift::Homological)?;
    let tensor_dims = src.homology_dims()?[..=max_degree].to_vec();
    let hh_dims = tgt.homology_dims()?[..=max_degree].to_vec();
    for n in 0..=max_degree {
        let name = format!("sh iso in degree {n}");
        match induced_map_on_homology(&src, &tgt, &sh[..=h_top], n as i64) {
            Ok(m) => checks.push(Check::from_bool(name, m.is_isomorphism, || {
                format!("rank {} between dims {} and {}", m.matrix.rank(), tensor_dims[n], hh_dims[n])
            })),
            Err(e) => checks.push(Check::fail(name, e.to_string())),
        }
    }

    let (mut negative_tensor_dims, mut negative_dims) = (None, None);
    if negative_m > 0 {
        let shp: Vec<SparseRationalMatrix> = (0..=top - 2)
            .map(|n| bilinear_matrix(&ctx, &layout, n, 2, shuffle_sh_prime))
            .collect();
        let v = CyclicVariant::negative(negative_m);
        let hi = max_degree as i64 + 1;
        let us = UComplex::build(&mt, v, -1, hi)?;
        let ut = UComplex::build(&mac, v, -1, hi)?;
        let f: Vec<SparseRationalMatrix> = (-1..=hi).map(|n| us.map_matrix(&ut, n, &sh, &shp)).collect();
        let ds = us.complex.homology_dims()?;
        let dt = ut.complex.homology_dims()?;
        negative_tensor_dims = Some(ds[1..=max_degree + 1].to_vec());
        negative_dims = Some(dt[1..=max_degree + 1].to_vec());
        for n in 0..=max_degree as i64 {
            let name = format!("sh + u·sh′ iso in degree {n} (M={negative_m})");
            match induced_map_on_homology(&us.complex, &ut.complex, &f, n) {
                Ok(m) => checks.push(Check::from_bool(name, m.is_isomorphism, || {
                    format!("rank {}", m.matrix.rank())
                })),
                Err(e) => checks.push(Check::fail(name, e.to_string())),
            }
        }
    }
    Ok(KunnethReport {
        tensor_dims,
        hh_dims,
        negative_tensor_dims,
        negative_dims,
        checks,
    })
}
