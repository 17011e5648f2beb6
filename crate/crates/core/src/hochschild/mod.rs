//! Normalized Hochschild chains `C_p(A) = A ⊗ Ā^{⊗p}` and cochains
//! `C^d(A,A) = Hom(Ā^{⊗d}, A)` with `b`, `B`, `δ`, cup, braces and the
//! Gerstenhaber bracket.
//!
//! Only ungraded algebras (all degrees zero, no differential) are handled
//! here, so a cochain of arity `d` has degree `|D| = d`.
//!
//! Coordinates: the basis tensor `e_{i_0} ⊗ ē_{i_1} ⊗ … ⊗ ē_{i_p}` (with
//! `i_k ≥ 1` for `k ≥ 1`) has index `i_0·n̄^p + Σ (i_k − 1)·n̄^{p−k}`. A
//! cochain stores `D(ē_{j_1},…,ē_{j_d})` as the block of `dim A` entries at
//! offset `col·dim A`, with `col` the analogous base-`n̄` encoding.

mod bar;

pub use bar::{bar_bullet, bullet_sums, check_bialgebra, deconcatenate, BarElement, TensorTerm};

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;

use crate::algebra_core::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exact_linalg::{
    rat, FiniteComplex, Rational, Shift, SparseRationalMatrix, SparseVec,
};
use crate::sampling::small_vector;

/// Element of `C_p(A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildChain {
    pub p: usize,
    pub coords: Vec<Rational>,
}

/// Normalized cochain `Ā^{⊗d} → A` of internal degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HochschildCochain {
    pub d: usize,
    pub data: Vec<Rational>,
}

impl HochschildChain {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        Self {
            p: self.p,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        Self {
            p: self.p,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            p: self.p,
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }
}

impl HochschildCochain {
    /// Degree `|D|` (equal to the arity in the ungraded case).
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        Self {
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        Self {
            d: self.d,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            d: self.d,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }
}

/// `(-1)^n` as a rational.
pub fn sign(n: usize) -> Rational {
    if n.is_multiple_of(2) {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Hochschild data of one algebra: index conventions and all chain-level
/// operations.
#[derive(Clone, Debug)]
pub struct Hochschild {
    alg: Arc<FinDimAlgebra>,
    dim: usize,
    nbar: usize,
}

/// Accumulates a chain from basis tensors given by full slot indices.
pub(crate) struct ChainAcc<'a> {
    h: &'a Hochschild,
    pub(crate) out: HochschildChain,
}

impl ChainAcc<'_> {
    /// Adds `c · (slots[0] ⊗ … )`; tensors with a unit in an `Ā` slot vanish.
    #[inline]
    pub(crate) fn add(&mut self, slots: &[usize], c: &Rational) {
        if let Some(i) = self.h.encode_chain(slots) {
            self.out.coords[i] += c;
        }
    }
}

impl Hochschild {
    /// Fails with `Unsupported` for graded or differential algebras.
    pub fn new(alg: &FinDimAlgebra) -> Result<Self> {
        if !alg.is_ungraded() {
            return Err(Error::Unsupported(
                "Hochschild complexes are implemented for ungraded algebras".into(),
            ));
        }
        Ok(Self {
            dim: alg.dim(),
            nbar: alg.dim_bar(),
            alg: Arc::new(alg.clone()),
        })
    }

    pub fn algebra(&self) -> &FinDimAlgebra {
        &self.alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nbar(&self) -> usize {
        self.nbar
    }

    fn pow(&self, p: usize) -> usize {
        self.nbar.pow(p as u32)
    }

    pub fn chain_dim(&self, p: usize) -> usize {
        self.dim * self.pow(p)
    }

    pub fn cochain_dim(&self, d: usize) -> usize {
        self.dim * self.pow(d)
    }

    /// Index of a basis tensor, or `None` if an `Ā` slot holds the unit.
    #[inline]
    pub fn encode_chain(&self, slots: &[usize]) -> Option<usize> {
        let mut idx = slots[0];
        for &s in &slots[1..] {
            if s == 0 {
                return None;
            }
            idx = idx * self.nbar + (s - 1);
        }
        Some(idx)
    }

    /// Full slot indices of basis tensor `idx` of `C_p`.
    pub fn decode_chain(&self, p: usize, mut idx: usize) -> Vec<usize> {
        let mut slots = vec![0; p + 1];
        for k in (1..=p).rev() {
            slots[k] = idx % self.nbar + 1;
            idx /= self.nbar;
        }
        slots[0] = idx;
        slots
    }

    /// Column index of an `Ā` tuple (entries ≥ 1), or `None` if one is the unit.
    #[inline]
    pub fn encode_bar(&self, tuple: &[usize]) -> Option<usize> {
        let mut idx = 0;
        for &s in tuple {
            if s == 0 {
                return None;
            }
            idx = idx * self.nbar + (s - 1);
        }
        Some(idx)
    }

    pub fn decode_bar(&self, d: usize, mut idx: usize) -> Vec<usize> {
        let mut t = vec![0; d];
        for k in (0..d).rev() {
            t[k] = idx % self.nbar + 1;
            idx /= self.nbar;
        }
        t
    }

    pub fn zero_chain(&self, p: usize) -> HochschildChain {
        HochschildChain {
            p,
            coords: vec![Rational::zero(); self.chain_dim(p)],
        }
    }

    pub fn zero_cochain(&self, d: usize) -> HochschildCochain {
        HochschildCochain {
            d,
            data: vec![Rational::zero(); self.cochain_dim(d)],
        }
    }

    pub fn basis_chain(&self, p: usize, idx: usize) -> HochschildChain {
        let mut x = self.zero_chain(p);
        x.coords[idx] = rat(1);
        x
    }

    pub fn basis_cochain(&self, d: usize, idx: usize) -> HochschildCochain {
        let mut x = self.zero_cochain(d);
        x.data[idx] = rat(1);
        x
    }

    /// Chain from a list of `(coefficient, slots)` tensors.
    pub fn chain_from_tensors(&self, p: usize, terms: &[(Rational, Vec<usize>)]) -> HochschildChain {
        let mut acc = self.acc(p);
        for (c, s) in terms {
            assert_eq!(s.len(), p + 1);
            acc.add(s, c);
        }
        acc.out
    }

    pub fn random_chain(&self, p: usize, rng: &mut impl Rng) -> HochschildChain {
        HochschildChain {
            p,
            coords: small_vector(rng, self.chain_dim(p)),
        }
    }

    pub fn random_cochain(&self, d: usize, rng: &mut impl Rng) -> HochschildCochain {
        HochschildCochain {
            d,
            data: small_vector(rng, self.cochain_dim(d)),
        }
    }

    pub(crate) fn acc(&self, p: usize) -> ChainAcc<'_> {
        ChainAcc {
            h: self,
            out: self.zero_chain(p),
        }
    }

    /// Iterates over the nonzero coordinates of `x` as `(slots, coefficient)`.
    pub(crate) fn for_each_term(&self, x: &HochschildChain, mut f: impl FnMut(&mut Vec<usize>, &Rational)) {
        assert_eq!(x.coords.len(), self.chain_dim(x.p), "chain from another algebra");
        for (i, c) in x.coords.iter().enumerate() {
            if !c.is_zero() {
                let mut slots = self.decode_chain(x.p, i);
                f(&mut slots, c);
            }
        }
    }

    /// Value `D(ē_{t_1},…,ē_{t_d})` as a dense vector of length `dim A`
    /// (zero if some `t_k` is the unit).
    #[inline]
    pub fn eval<'a>(&self, dcoch: &'a HochschildCochain, tuple: &[usize]) -> &'a [Rational] {
        static EMPTY: [Rational; 0] = [];
        match self.encode_bar(tuple) {
            Some(col) => &dcoch.data[col * self.dim..(col + 1) * self.dim],
            None => &EMPTY,
        }
    }

    /// `D` evaluated on a tensor of arbitrary vectors of `A` (each projected to `Ā`).
    pub fn eval_multilinear(&self, dcoch: &HochschildCochain, args: &[SparseVec]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        let mut tuple = vec![0; args.len()];
        self.eval_rec(dcoch, args, 0, &rat(1), &mut tuple, &mut out);
        out
    }

    fn eval_rec(
        &self,
        dcoch: &HochschildCochain,
        args: &[SparseVec],
        k: usize,
        coef: &Rational,
        tuple: &mut Vec<usize>,
        out: &mut [Rational],
    ) {
        if k == args.len() {
            for (o, v) in out.iter_mut().zip(self.eval(dcoch, tuple)) {
                if !v.is_zero() {
                    *o += coef * v;
                }
            }
            return;
        }
        for (i, c) in &args[k] {
            if *i == 0 {
                continue;
            }
            tuple[k] = *i;
            self.eval_rec(dcoch, args, k + 1, &(coef * c), tuple, out);
        }
    }

    // -----------------------------------------------------------------
    // chains

    /// Hochschild boundary `b: C_p → C_{p−1}`.
    pub fn boundary_b(&self, x: &HochschildChain) -> Result<HochschildChain> {
        if x.p == 0 {
            return Err(Error::DegreeZero);
        }
        let p = x.p;
        let mut acc = self.acc(p - 1);
        let alg = &*self.alg;
        self.for_each_term(x, |s, c| {
            let mut t = Vec::with_capacity(p);
            for i in 0..p {
                let sg = sign(i) * c;
                for (k, v) in alg.mul_basis(s[i], s[i + 1]) {
                    t.clear();
                    t.extend_from_slice(&s[..i]);
                    t.push(*k);
                    t.extend_from_slice(&s[i + 2..]);
                    acc.add(&t, &(&sg * v));
                }
            }
            let sg = sign(p) * c;
            for (k, v) in alg.mul_basis(s[p], s[0]) {
                t.clear();
                t.push(*k);
                t.extend_from_slice(&s[1..p]);
                acc.add(&t, &(&sg * v));
            }
        });
        Ok(acc.out)
    }

    /// `b` extended by zero on `C_0`.
    pub fn b(&self, x: &HochschildChain) -> HochschildChain {
        if x.p == 0 {
            // target C_{-1} = 0; represented as an empty chain of degree 0
            return HochschildChain { p: 0, coords: vec![] };
        }
        self.boundary_b(x).expect("p >= 1")
    }

    /// Connes operator `B: C_p → C_{p+1}`.
    pub fn connes_b(&self, x: &HochschildChain) -> HochschildChain {
        let p = x.p;
        let mut acc = self.acc(p + 1);
        self.for_each_term(x, |s, c| {
            let mut t = Vec::with_capacity(p + 2);
            for i in 0..=p {
                t.clear();
                t.push(0);
                t.extend_from_slice(&s[i..]);
                t.extend_from_slice(&s[..i]);
                acc.add(&t, &(sign(p * i) * c));
            }
        });
        acc.out
    }

    /// Matrix of a chain operator on the basis of `C_p`.
    pub fn operator_matrix(
        &self,
        p: usize,
        target_p: usize,
        op: impl Fn(&HochschildChain) -> HochschildChain,
    ) -> SparseRationalMatrix {
        let mut entries = Vec::new();
        for j in 0..self.chain_dim(p) {
            let y = op(&self.basis_chain(p, j));
            for (i, v) in y.coords.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v));
                }
            }
        }
        SparseRationalMatrix::from_triplets(self.chain_dim(target_p), self.chain_dim(p), entries)
    }

    pub fn b_matrix(&self, p: usize) -> SparseRationalMatrix {
        if p == 0 {
            return SparseRationalMatrix::zero(0, self.chain_dim(0));
        }
        self.operator_matrix(p, p - 1, |x| self.b(x))
    }

    pub fn connes_b_matrix(&self, p: usize) -> SparseRationalMatrix {
        self.operator_matrix(p, p + 1, |x| self.connes_b(x))
    }

    /// `(C_0 … C_top, b)`; homology is exact in degrees `< top`.
    pub fn chain_complex(&self, top: usize) -> Result<FiniteComplex> {
        FiniteComplex::new(
            0,
            (0..=top).map(|p| self.chain_dim(p)).collect(),
            (0..=top).map(|p| self.b_matrix(p)).collect(),
            Shift::Homological,
        )
    }

    /// Weight of a basis tensor (sum of slot weights).
    fn tensor_weight(&self, slots: &[usize], w: &[usize]) -> usize {
        slots.iter().map(|&s| w[s]).sum()
    }

    /// Weight-`w` part of `(C_•, b)` in degrees `0..=top`.
    pub fn weighted_chain_complex(&self, top: usize, weight: usize) -> Result<FiniteComplex> {
        let w = self
            .alg
            .weights()
            .ok_or_else(|| Error::Unsupported("algebra carries no weight grading".into()))?
            .to_vec();
        let bases: Vec<Vec<usize>> = (0..=top)
            .map(|p| {
                (0..self.chain_dim(p))
                    .filter(|&i| self.tensor_weight(&self.decode_chain(p, i), &w) == weight)
                    .collect()
            })
            .collect();
        let mut diffs = Vec::new();
        for p in 0..=top {
            if p == 0 {
                diffs.push(SparseRationalMatrix::zero(0, bases[0].len()));
                continue;
            }
            let pos: std::collections::HashMap<usize, usize> =
                bases[p - 1].iter().enumerate().map(|(a, &i)| (i, a)).collect();
            let mut entries = Vec::new();
            for (col, &j) in bases[p].iter().enumerate() {
                let y = self.b(&self.basis_chain(p, j));
                for (i, v) in y.coords.into_iter().enumerate() {
                    if !v.is_zero() {
                        let row = *pos
                            .get(&i)
                            .ok_or_else(|| Error::ComplexInvalid("b does not preserve weight".into()))?;
                        entries.push((row, col, v));
                    }
                }
            }
            diffs.push(SparseRationalMatrix::from_triplets(
                bases[p - 1].len(),
                bases[p].len(),
                entries,
            ));
        }
        FiniteComplex::new(0, bases.iter().map(Vec::len).collect(), diffs, Shift::Homological)
    }

    // -----------------------------------------------------------------
    // cochains

    /// `δD`, equal to `[m, D]` when `D` takes values in `Ā`:
    /// `(δD)(a_1..a_{d+1}) = (−1)^{d+1} a_1 D(a_2..) + Σ_j (−1)^{d+j+1} D(.., a_j a_{j+1}, ..) + D(a_1..a_d) a_{d+1}`.
    pub fn cochain_delta(&self, dc: &HochschildCochain) -> HochschildCochain {
        let d = dc.d;
        let n = self.dim;
        let alg = &*self.alg;
        let mut out = self.zero_cochain(d + 1);
        for col in 0..self.pow(d + 1) {
            let a = self.decode_bar(d + 1, col);
            let block = &mut out.data[col * n..(col + 1) * n];
            // a_1 · D(a_2..)
            let s = sign(d + 1);
            for (k, v) in self.eval(dc, &a[1..]).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (l, c) in alg.mul_basis(a[0], k) {
                    block[*l] += &s * v * c;
                }
            }
            // inner products
            let mut t = Vec::with_capacity(d);
            for j in 0..d {
                let s = sign(d + j);
                for (k, c) in alg.mul_basis(a[j], a[j + 1]) {
                    if *k == 0 {
                        continue;
                    }
                    t.clear();
                    t.extend_from_slice(&a[..j]);
                    t.push(*k);
                    t.extend_from_slice(&a[j + 2..]);
                    for (o, v) in block.iter_mut().zip(self.eval(dc, &t)) {
                        if !v.is_zero() {
                            *o += &s * c * v;
                        }
                    }
                }
            }
            // D(a_1..a_d) · a_{d+1}
            for (k, v) in self.eval(dc, &a[..d]).iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (l, c) in alg.mul_basis(k, a[d]) {
                    block[*l] += v * c;
                }
            }
        }
        out
    }

    /// Matrix of `δ: C^d → C^{d+1}`.
    pub fn delta_matrix(&self, d: usize) -> SparseRationalMatrix {
        let mut entries = Vec::new();
        for j in 0..self.cochain_dim(d) {
            let y = self.cochain_delta(&self.basis_cochain(d, j));
            for (i, v) in y.data.into_iter().enumerate() {
                if !v.is_zero() {
                    entries.push((i, j, v));
                }
            }
        }
        SparseRationalMatrix::from_triplets(self.cochain_dim(d + 1), self.cochain_dim(d), entries)
    }

    /// `(C^0 … C^top, δ)`; cohomology is exact in degrees `< top`.
    pub fn cochain_complex(&self, top: usize) -> Result<FiniteComplex> {
        let mut diffs: Vec<SparseRationalMatrix> = (0..top).map(|d| self.delta_matrix(d)).collect();
        diffs.push(SparseRationalMatrix::zero(0, self.cochain_dim(top)));
        FiniteComplex::new(
            0,
            (0..=top).map(|d| self.cochain_dim(d)).collect(),
            diffs,
            Shift::Cohomological,
        )
    }

    /// `(D⌣E)(a_1..a_{d+e}) = (−1)^{|E|·d} D(a_1..a_d)·E(a_{d+1}..a_{d+e})`.
    pub fn cup(&self, dc: &HochschildCochain, ec: &HochschildCochain) -> Result<HochschildCochain> {
        self.check_parent(dc)?;
        self.check_parent(ec)?;
        let (d, e) = (dc.d, ec.d);
        let n = self.dim;
        let s = sign(d * e);
        let mut out = self.zero_cochain(d + e);
        for col in 0..self.pow(d + e) {
            let a = self.decode_bar(d + e, col);
            let x = self.eval(dc, &a[..d]);
            let y = self.eval(ec, &a[d..]);
            let block = &mut out.data[col * n..(col + 1) * n];
            for (i, u) in x.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (j, v) in y.iter().enumerate() {
                    if v.is_zero() {
                        continue;
                    }
                    let uv = &s * u * v;
                    for (k, c) in self.alg.mul_basis(i, j) {
                        block[*k] += &uv * c;
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_parent(&self, c: &HochschildCochain) -> Result<()> {
        if c.data.len() == self.cochain_dim(c.d) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// Brace `D{E_1,…,E_m}`, summed over order-preserving insertions with sign
    /// `(−1)^{Σ_p i_p(|E_p|+1)}`, `i_p` the number of arguments before `E_p`.
    pub fn brace(&self, dc: &HochschildCochain, es: &[HochschildCochain]) -> Result<HochschildCochain> {
        self.check_parent(dc)?;
        for e in es {
            self.check_parent(e)?;
        }
        let m = es.len();
        if m == 0 {
            return Ok(dc.clone());
        }
        if m > dc.d {
            // no insertion pattern exists; the arity would be d + Σe − m
            let total: usize = es.iter().map(|e| e.d).sum();
            if dc.d + total < m {
                return Err(Error::ArityUnderflow);
            }
            return Ok(self.zero_cochain(dc.d + total - m));
        }
        let total: usize = es.iter().map(|e| e.d).sum();
        let arity = dc.d + total - m;
        let n = self.dim;
        let patterns = combinations(dc.d, m);
        let mut out = self.zero_cochain(arity);
        for col in 0..self.pow(arity) {
            let a = self.decode_bar(arity, col);
            let block = &mut out.data[col * n..(col + 1) * n];
            for pat in &patterns {
                let mut args: Vec<SparseVec> = Vec::with_capacity(dc.d);
                let mut pos = 0;
                let mut next_e = 0;
                let mut exponent = 0;
                let mut zero = false;
                for slot in 0..dc.d {
                    if next_e < m && pat[next_e] == slot {
                        let e = &es[next_e];
                        exponent += pos * (e.d + 1);
                        let val = self.eval(e, &a[pos..pos + e.d]);
                        let v: SparseVec = val
                            .iter()
                            .enumerate()
                            .filter(|(i, x)| *i != 0 && !x.is_zero())
                            .map(|(i, x)| (i, x.clone()))
                            .collect();
                        if v.is_empty() {
                            zero = true;
                            break;
                        }
                        args.push(v);
                        pos += e.d;
                        next_e += 1;
                    } else {
                        args.push(vec![(a[pos], rat(1))]);
                        pos += 1;
                    }
                }
                if zero {
                    continue;
                }
                let s = sign(exponent);
                for (o, v) in block.iter_mut().zip(self.eval_multilinear(dc, &args)) {
                    if !v.is_zero() {
                        *o += &s * v;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `D∘E = D{E}`.
    pub fn circle(&self, dc: &HochschildCochain, ec: &HochschildCochain) -> Result<HochschildCochain> {
        self.brace(dc, std::slice::from_ref(ec))
    }

    /// `[D,E] = D∘E − (−1)^{(|D|+1)(|E|+1)} E∘D`.
    pub fn gerstenhaber_bracket(
        &self,
        dc: &HochschildCochain,
        ec: &HochschildCochain,
    ) -> Result<HochschildCochain> {
        let de = self.circle(dc, ec)?;
        let ed = self.circle(ec, dc)?;
        Ok(de.sub(&ed.scale(&sign((dc.d + 1) * (ec.d + 1)))))
    }

    /// The normalized multiplication 2-cochain `m(a_1,a_2) = a_1a_2`.
    pub fn mult_cochain(&self) -> HochschildCochain {
        let n = self.dim;
        let mut out = self.zero_cochain(2);
        for col in 0..self.pow(2) {
            let a = self.decode_bar(2, col);
            for (k, c) in self.alg.mul_basis(a[0], a[1]) {
                out.data[col * n + k] += c;
            }
        }
        out
    }

    /// The 0-cochain given by an element of `A`.
    pub fn element_cochain(&self, a: &[Rational]) -> HochschildCochain {
        HochschildCochain { d: 0, data: a.to_vec() }
    }

    /// Dimensions of `HH_p` (optionally in one weight) and `HH^p` for `p ≤ max_degree`.
    pub fn hh_dims(&self, max_degree: usize, weight: Option<usize>) -> Result<HHDims> {
        let homology = match weight {
            None => self.chain_complex(max_degree + 1)?.homology_dims()?,
            Some(w) => self.weighted_chain_complex(max_degree + 1, w)?.homology_dims()?,
        };
        let cohomology = match weight {
            None => Some(self.cochain_complex(max_degree + 1)?.homology_dims()?),
            Some(_) => None,
        };
        Ok(HHDims {
            homology: homology[..=max_degree].to_vec(),
            cohomology: cohomology.map(|c| c[..=max_degree].to_vec()),
        })
    }
}

/// Output of [`Hochschild::hh_dims`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HHDims {
    pub homology: Vec<usize>,
    /// Absent when a weight filter was requested.
    pub cohomology: Option<Vec<usize>>,
}

/// All increasing `m`-subsets of `0..n`.
pub fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < m - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, m, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests;
