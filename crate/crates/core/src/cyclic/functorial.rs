//! Hochschild chains with coefficients in a bimodule `_{l}M_{r}` given by
//! two algebra maps `l, r: A → M`, direct and inverse images, the twisted
//! operator `B(f)` and the degree-zero shadow of dimodule cyclicity.

use num_traits::Zero;
use rand::Rng;

use crate::algebra_core::{AlgebraMap, FinDimAlgebra};
use crate::error::{Error, Result};
use crate::exact_linalg::{to_sparse, Rational, SparseRationalMatrix, SparseVec};
use crate::hochschild::{sign, HochschildChain};
use crate::report::Check;
use crate::sampling::small_vector;

/// `C_•(A, _{l}M_{r})` with `M` an algebra, `a·m = l(a)m` and `m·a = m r(a)`.
///
/// Coordinates follow the Hochschild convention with `dim M` choices in the
/// first slot and `Ā` in the others.
#[derive(Clone, Debug)]
pub struct BimoduleChains {
    a: FinDimAlgebra,
    m: FinDimAlgebra,
    left: AlgebraMap,
    right: AlgebraMap,
    /// `left_act[x][i] = l(e_x)·e_i`, `right_act[i][x] = e_i·r(e_x)`.
    left_act: Vec<Vec<SparseVec>>,
    right_act: Vec<Vec<SparseVec>>,
}

impl BimoduleChains {
    pub fn new(a: &FinDimAlgebra, m: &FinDimAlgebra, left: AlgebraMap, right: AlgebraMap) -> Result<Self> {
        a.check_algebra_map(m, &left)?;
        a.check_algebra_map(m, &right)?;
        let dm = m.dim();
        let mut left_act = vec![vec![Vec::new(); dm]; a.dim()];
        let mut right_act = vec![vec![Vec::new(); a.dim()]; dm];
        for x in 0..a.dim() {
            let lx = left.matrix.column(x);
            let rx = right.matrix.column(x);
            for i in 0..dm {
                let e = m.basis_vector(i);
                left_act[x][i] = to_sparse(&m.mul(&lx, &e));
                right_act[i][x] = to_sparse(&m.mul(&e, &rx));
            }
        }
        Ok(Self {
            a: a.clone(),
            m: m.clone(),
            left,
            right,
            left_act,
            right_act,
        })
    }

    /// `C_•(A, A)` as a bimodule complex.
    pub fn regular(a: &FinDimAlgebra) -> Self {
        let id = AlgebraMap::identity(a.dim());
        Self::new(a, a, id.clone(), id).expect("identity is an algebra map")
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.a
    }

    pub fn module(&self) -> &FinDimAlgebra {
        &self.m
    }

    pub fn left(&self) -> &AlgebraMap {
        &self.left
    }

    pub fn right(&self) -> &AlgebraMap {
        &self.right
    }

    fn nbar(&self) -> usize {
        self.a.dim_bar()
    }

    pub fn chain_dim(&self, p: usize) -> usize {
        self.m.dim() * self.nbar().pow(p as u32)
    }

    /// Index of `e_{s_0} ⊗ ē_{s_1} ⊗ …`, or `None` if an `Ā` slot holds the unit.
    pub fn encode(&self, slots: &[usize]) -> Option<usize> {
        let nb = self.nbar();
        let mut idx = slots[0];
        for &s in &slots[1..] {
            if s == 0 {
                return None;
            }
            idx = idx * nb + (s - 1);
        }
        Some(idx)
    }

    pub fn decode(&self, p: usize, mut idx: usize) -> Vec<usize> {
        let nb = self.nbar();
        let mut slots = vec![0; p + 1];
        for k in (1..=p).rev() {
            slots[k] = idx % nb + 1;
            idx /= nb;
        }
        slots[0] = idx;
        slots
    }

    pub fn zero_chain(&self, p: usize) -> HochschildChain {
        HochschildChain {
            p,
            coords: vec![Rational::zero(); self.chain_dim(p)],
        }
    }

    pub fn basis_chain(&self, p: usize, idx: usize) -> HochschildChain {
        let mut x = self.zero_chain(p);
        x.coords[idx] = Rational::from_integer(1.into());
        x
    }

    pub fn random_chain(&self, p: usize, rng: &mut impl Rng) -> HochschildChain {
        HochschildChain {
            p,
            coords: small_vector(rng, self.chain_dim(p)),
        }
    }

    fn for_each_term(&self, x: &HochschildChain, mut f: impl FnMut(&[usize], &Rational)) {
        for (i, c) in x.coords.iter().enumerate() {
            if !c.is_zero() {
                f(&self.decode(x.p, i), c);
            }
        }
    }

    fn push(&self, out: &mut HochschildChain, slots: &[usize], c: &Rational) {
        if let Some(i) = self.encode(slots) {
            out.coords[i] += c;
        }
    }

    /// `b(m⊗a_1…a_n) = m·a_1⊗a_2… + Σ (−1)^i m⊗…a_ia_{i+1}… + (−1)^n a_n·m⊗a_1…a_{n−1}`.
    pub fn b(&self, x: &HochschildChain) -> HochschildChain {
        let p = x.p;
        if p == 0 {
            return HochschildChain { p: 0, coords: vec![] };
        }
        let mut out = self.zero_chain(p - 1);
        let mut t = Vec::with_capacity(p);
        self.for_each_term(x, |s, c| {
            for (k, v) in &self.right_act[s[0]][s[1]] {
                t.clear();
                t.push(*k);
                t.extend_from_slice(&s[2..]);
                self.push(&mut out, &t, &(c * v));
            }
            for i in 1..p {
                let sg = sign(i) * c;
                for (k, v) in self.a.mul_basis(s[i], s[i + 1]) {
                    t.clear();
                    t.extend_from_slice(&s[..i]);
                    t.push(*k);
                    t.extend_from_slice(&s[i + 2..]);
                    self.push(&mut out, &t, &(&sg * v));
                }
            }
            let sg = sign(p) * c;
            for (k, v) in &self.left_act[s[p]][s[0]] {
                t.clear();
                t.push(*k);
                t.extend_from_slice(&s[1..p]);
                self.push(&mut out, &t, &(&sg * v));
            }
        });
        out
    }

    pub fn b_matrix(&self, p: usize) -> SparseRationalMatrix {
        if p == 0 {
            return SparseRationalMatrix::zero(0, self.chain_dim(0));
        }
        self.operator_matrix(p, p - 1, |x| self.b(x))
    }

    pub fn operator_matrix(
        &self,
        p: usize,
        target_p: usize,
        op: impl Fn(&HochschildChain) -> HochschildChain,
    ) -> SparseRationalMatrix {
        let mut entries = Vec::new();
        for j in 0..self.chain_dim(p) {
            for (i, v) in op(&self.basis_chain(p, j)).coords.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v));
                }
            }
        }
        SparseRationalMatrix::from_triplets(self.chain_dim(target_p), self.chain_dim(p), entries)
    }

    /// Complex with module `M` pushed forward along `f: M → N`.
    pub fn pushed(&self, f: &AlgebraMap, n: &FinDimAlgebra) -> Result<Self> {
        self.m.check_algebra_map(n, f)?;
        Self::new(&self.a, n, f.compose(&self.left), f.compose(&self.right))
    }

    /// Applies an algebra endomorphism of `A = M` to every slot.
    pub fn apply_everywhere(&self, f: &AlgebraMap, x: &HochschildChain) -> HochschildChain {
        let mut out = self.zero_chain(x.p);
        let mut t = vec![0; x.p + 1];
        self.for_each_term(x, |s, c| {
            expand(&s.iter().map(|&i| f.image(i)).collect::<Vec<_>>(), 0, &mut t, c.clone(), &mut |t, c| {
                self.push(&mut out, t, &c)
            });
        });
        out
    }
}

/// Expands a tensor of sparse vectors into basis tensors.
fn expand(
    factors: &[SparseVec],
    k: usize,
    slots: &mut Vec<usize>,
    coef: Rational,
    f: &mut impl FnMut(&[usize], Rational),
) {
    if k == factors.len() {
        f(slots, coef);
        return;
    }
    for (i, c) in &factors[k] {
        slots[k] = *i;
        expand(factors, k + 1, slots, &coef * c, f);
    }
}

/// `f_*(m_0⊗a_1…a_n) = f(m_0)⊗a_1…a_n` into the pushed complex.
pub fn pushforward(src: &BimoduleChains, f: &AlgebraMap, n: &FinDimAlgebra, x: &HochschildChain) -> Result<(BimoduleChains, HochschildChain)> {
    let tgt = src.pushed(f, n)?;
    let mut out = tgt.zero_chain(x.p);
    src.for_each_term(x, |s, c| {
        for (k, v) in f.image(s[0]) {
            let mut t = s.to_vec();
            t[0] = k;
            tgt.push(&mut out, &t, &(c * &v));
        }
    });
    Ok((tgt, out))
}

/// `g^*(m_0⊗a_1…a_n) = m_0⊗g(a_1)…g(a_n)` for `g: A → B`, where `src` is
/// `C(A, _{l∘g}M_{r∘g})` and `tgt` is `C(B, _{l}M_{r})`.
pub fn pullback(src: &BimoduleChains, g: &AlgebraMap, tgt: &BimoduleChains, x: &HochschildChain) -> Result<HochschildChain> {
    src.a.check_algebra_map(&tgt.a, g)?;
    if tgt.left.compose(g).matrix != src.left.matrix || tgt.right.compose(g).matrix != src.right.matrix {
        return Err(Error::NotAlgebraMap("module structures do not match along g".into()));
    }
    let mut out = tgt.zero_chain(x.p);
    let mut t = vec![0; x.p + 1];
    src.for_each_term(x, |s, c| {
        let mut factors = vec![vec![(s[0], Rational::from_integer(1.into()))]];
        factors.extend(s[1..].iter().map(|&i| g.image(i)));
        expand(&factors, 0, &mut t, c.clone(), &mut |t, c| tgt.push(&mut out, t, &c));
    });
    Ok(out)
}

/// `B(f)(a_0⊗…⊗a_n) = 1⊗a_0⊗…⊗a_n + Σ_{i≥1} (−1)^{ni} 1⊗f(a_i)⊗…⊗f(a_n)⊗a_0⊗…⊗a_{i−1}`.
///
/// On `C_•(A, _fA)` (left action through `f`) this satisfies
/// `b∘B(f) + B(f)∘b = id − f`, with `f` applied to every slot; for `f = id`
/// it is Connes' `B`.
pub fn twisted_b(a: &FinDimAlgebra, f: &AlgebraMap, x: &HochschildChain) -> Result<HochschildChain> {
    a.check_algebra_map(a, f)?;
    let reg = BimoduleChains::regular(a);
    let n = x.p;
    let mut out = reg.zero_chain(n + 1);
    let mut t = vec![0; n + 2];
    let one = |k: usize| vec![(k, Rational::from_integer(1.into()))];
    reg.for_each_term(x, |s, c| {
        for i in 0..=n {
            let mut factors = vec![one(0)];
            if i == 0 {
                factors.extend(s.iter().map(|&k| one(k)));
            } else {
                factors.extend(s[i..].iter().map(|&k| f.image(k)));
                factors.extend(s[..i].iter().map(|&k| one(k)));
            }
            expand(&factors, 0, &mut t, sign(n * i) * c, &mut |t, c| reg.push(&mut out, t, &c));
        }
    });
    Ok(out)
}

/// `C_•(A, _fA)`, the complex on which [`twisted_b`] is a homotopy.
pub fn twisted_regular(a: &FinDimAlgebra, f: &AlgebraMap) -> Result<BimoduleChains> {
    BimoduleChains::new(a, a, f.clone(), AlgebraMap::identity(a.dim()))
}

/// Degree-zero shadow of dimodule cyclicity: for `f_0g_0 = f_1g_1` and
/// `β ∈ B`, both composites send `β ∈ C_0(A, _{g_1}B_{g_0})` into
/// `C_0(B, _{f_0}C_{f_1})` and differ by the boundary `b(1⊗β)`.
#[allow(clippy::too_many_arguments)]
pub fn dimodule_shadow(
    a: &FinDimAlgebra,
    b_alg: &FinDimAlgebra,
    c: &FinDimAlgebra,
    f0: &AlgebraMap,
    f1: &AlgebraMap,
    g0: &AlgebraMap,
    g1: &AlgebraMap,
    beta: &[Rational],
) -> Result<Check> {
    if f0.compose(g0).matrix != f1.compose(g1).matrix {
        return Err(Error::NotAlgebraMap("f0∘g0 ≠ f1∘g1".into()));
    }
    let src = BimoduleChains::new(a, b_alg, g1.clone(), g0.clone())?;
    let tgt = BimoduleChains::new(b_alg, c, f0.clone(), f1.clone())?;
    let x = HochschildChain {
        p: 0,
        coords: beta.to_vec(),
    };
    let (mid0, y0) = pushforward(&src, f0, c, &x)?;
    let lhs = pullback(&mid0, g1, &tgt, &y0)?;
    let (mid1, y1) = pushforward(&src, f1, c, &x)?;
    let rhs = pullback(&mid1, g0, &tgt, &y1)?;
    // 1 ⊗ β in C_1(B, _{f0}C_{f1})
    let mut one_beta = tgt.zero_chain(1);
    for (k, v) in beta.iter().enumerate() {
        if k > 0 && !v.is_zero() {
            one_beta.coords[tgt.encode(&[0, k]).expect("k ≥ 1")] += v;
        }
    }
    let diff = rhs.sub(&lhs);
    let bd = tgt.b(&one_beta);
    Ok(Check::from_bool("f1(β) − f0(β) = b(1⊗β)", diff == bd, || {
        format!("difference {:?} vs boundary {:?}", diff.coords, bd.coords)
    }))
}
