//! Cyclic, negative cyclic and periodic cyclic complexes built from a mixed
//! complex `(C_•, b, B)`, the periodicity map `S`, the Künneth shuffle maps,
//! Goodwillie rigidity and chain-level functoriality with twisted
//! coefficients.
//!
//! An element of degree `n` is a finite sum `Σ u^k x_{n+2k}` with `u` of
//! degree `−2`. The three variants differ in the allowed powers `k`:
//! `k ≤ 0` (cyclic), `0 ≤ k ≤ M` (negative) and `−M ≤ k ≤ M` (periodic).
//! The last two are truncations of infinite products; each is a quotient of
//! a subcomplex, hence again a complex.

mod functorial;
pub mod kunneth;

pub use functorial::{dimodule_shadow, pullback, pushforward, twisted_b, twisted_regular, BimoduleChains};
pub use kunneth::{kunneth_certify, shuffle_sh, shuffle_sh_prime, KunnethReport};

use serde::Serialize;

use crate::algebra_core::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exact_linalg::{induced_map_on_homology, rat, FiniteComplex, Shift, SparseRationalMatrix};
use crate::hochschild::Hochschild;
use crate::report::{Check, Status};

/// Default highest power of `u` kept by truncated variants.
pub const DEFAULT_TRUNCATION: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CyclicKind {
    Cyclic,
    Negative,
    Periodic,
}

impl std::str::FromStr for CyclicKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cyclic" | "hc" => Ok(Self::Cyclic),
            "negative" | "hc-" => Ok(Self::Negative),
            "periodic" | "hp" => Ok(Self::Periodic),
            _ => Err(Error::Parse(format!("unknown cyclic variant '{s}'"))),
        }
    }
}

/// Variant together with its truncation (ignored for `Cyclic`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicVariant {
    pub kind: CyclicKind,
    pub truncation: usize,
}

impl CyclicVariant {
    pub fn cyclic() -> Self {
        Self {
            kind: CyclicKind::Cyclic,
            truncation: 0,
        }
    }

    pub fn negative(m: usize) -> Self {
        Self {
            kind: CyclicKind::Negative,
            truncation: m,
        }
    }

    pub fn periodic(m: usize) -> Self {
        Self {
            kind: CyclicKind::Periodic,
            truncation: m,
        }
    }

    /// Allowed powers of `u`; negative powers are bounded by the chain degree alone.
    fn powers(&self) -> (i64, i64) {
        let m = self.truncation as i64;
        match self.kind {
            CyclicKind::Cyclic => (i64::MIN / 4, 0),
            CyclicKind::Negative => (0, m),
            CyclicKind::Periodic => (i64::MIN / 4, m),
        }
    }

    fn with_truncation(&self, m: usize) -> Self {
        Self {
            kind: self.kind,
            truncation: m,
        }
    }

    /// Chain degree needed to build degrees up to `hi`.
    fn chain_top(&self, hi: i64) -> usize {
        (hi + 2 * self.powers().1).max(0) as usize
    }
}

/// Mixed complex `(C_0..C_top, b, B)`.
#[derive(Clone, Debug)]
pub struct MixedComplex {
    dims: Vec<usize>,
    /// `b[p]: C_p → C_{p−1}` (`b[0]` has no rows).
    b: Vec<SparseRationalMatrix>,
    /// `bb[p]: C_p → C_{p+1}` for `p < top`.
    bb: Vec<SparseRationalMatrix>,
}

impl MixedComplex {
    pub fn new(dims: Vec<usize>, b: Vec<SparseRationalMatrix>, bb: Vec<SparseRationalMatrix>) -> Result<Self> {
        let top = dims.len().saturating_sub(1);
        if b.len() != dims.len() || bb.len() != top {
            return Err(Error::ComplexInvalid("mixed complex: wrong number of maps".into()));
        }
        for p in 0..dims.len() {
            let rows = if p == 0 { 0 } else { dims[p - 1] };
            if b[p].rows() != rows || b[p].cols() != dims[p] {
                return Err(Error::ComplexInvalid(format!("b has bad shape at {p}")));
            }
            if p < top && (bb[p].rows() != dims[p + 1] || bb[p].cols() != dims[p]) {
                return Err(Error::ComplexInvalid(format!("B has bad shape at {p}")));
            }
        }
        Ok(Self { dims, b, bb })
    }

    /// Normalized Hochschild mixed complex of `A` up to chain degree `top`.
    pub fn hochschild(h: &Hochschild, top: usize) -> Self {
        Self {
            dims: (0..=top).map(|p| h.chain_dim(p)).collect(),
            b: (0..=top).map(|p| h.b_matrix(p)).collect(),
            bb: (0..top).map(|p| h.connes_b_matrix(p)).collect(),
        }
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn b(&self, p: usize) -> &SparseRationalMatrix {
        &self.b[p]
    }

    pub fn connes(&self, p: usize) -> &SparseRationalMatrix {
        &self.bb[p]
    }

    /// Checks `b² = 0`, `B² = 0` and `bB + Bb = 0`.
    pub fn check(&self) -> Result<()> {
        let top = self.top();
        for p in 2..=top {
            if !self.b[p - 1].mul(&self.b[p]).is_zero() {
                return Err(Error::ComplexInvalid(format!("b² ≠ 0 at {p}")));
            }
        }
        for p in 0..top.saturating_sub(1) {
            if !self.bb[p + 1].mul(&self.bb[p]).is_zero() {
                return Err(Error::ComplexInvalid(format!("B² ≠ 0 at {p}")));
            }
        }
        for p in 0..top {
            // bB + Bb on C_p, landing in C_p
            let mut s = self.b[p + 1].mul(&self.bb[p]);
            if p > 0 {
                s = s.add(&self.bb[p - 1].mul(&self.b[p]));
            }
            if !s.is_zero() {
                return Err(Error::ComplexInvalid(format!("bB + Bb ≠ 0 at {p}")));
            }
        }
        Ok(())
    }

    /// Chain complex `(C_•, b)`.
    pub fn hochschild_complex(&self) -> Result<FiniteComplex> {
        FiniteComplex::new(0, self.dims.clone(), self.b.clone(), Shift::Homological)
    }

    /// Tensor product with `d(x⊗y) = dx⊗y + (−1)^p x⊗dy` for `d = b, B`.
    pub fn tensor(&self, other: &MixedComplex, top: usize) -> Result<(Self, TensorLayout)> {
        if top > self.top() || top > other.top() {
            return Err(Error::WindowTooSmall(format!("tensor degree {top} exceeds the factors")));
        }
        let layout = TensorLayout::new(&self.dims, &other.dims, top);
        let mut b = Vec::new();
        let mut bb = Vec::new();
        for n in 0..=top {
            let rows_b = if n == 0 { 0 } else { layout.dims[n - 1] };
            let mut tb = Vec::new();
            let mut tbb = Vec::new();
            for &(p, q, off) in &layout.blocks[n] {
                let (dp, dq) = (self.dims[p], other.dims[q]);
                if p > 0 {
                    let tgt = layout.offset(p - 1, q);
                    for (r, c, v) in self.b[p].triplets() {
                        for j in 0..dq {
                            tb.push((tgt + r * dq + j, off + c * dq + j, v.clone()));
                        }
                    }
                }
                if q > 0 {
                    let tgt = layout.offset(p, q - 1);
                    let dq1 = other.dims[q - 1];
                    let s = crate::hochschild::sign(p);
                    for (r, c, v) in other.b[q].triplets() {
                        for i in 0..dp {
                            tb.push((tgt + i * dq1 + r, off + i * dq + c, &s * v));
                        }
                    }
                }
                if n < top {
                    let tgt = layout.offset(p + 1, q);
                    for (r, c, v) in self.bb[p].triplets() {
                        for j in 0..dq {
                            tbb.push((tgt + r * dq + j, off + c * dq + j, v.clone()));
                        }
                    }
                    let tgt = layout.offset(p, q + 1);
                    let dq1 = other.dims[q + 1];
                    let s = crate::hochschild::sign(p);
                    for (r, c, v) in other.bb[q].triplets() {
                        for i in 0..dp {
                            tbb.push((tgt + i * dq1 + r, off + i * dq + c, &s * v));
                        }
                    }
                }
            }
            b.push(SparseRationalMatrix::from_triplets(rows_b, layout.dims[n], tb));
            if n < top {
                bb.push(SparseRationalMatrix::from_triplets(layout.dims[n + 1], layout.dims[n], tbb));
            }
        }
        Ok((Self::new(layout.dims.clone(), b, bb)?, layout))
    }
}

/// Block structure of `⊕_{p+q=n} C_p ⊗ C'_q`; the pair `(i, j)` of basis
/// indices sits at `offset(p, q) + i·dim C'_q + j`.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    pub dims: Vec<usize>,
    /// `(p, q, offset)` for each total degree.
    pub blocks: Vec<Vec<(usize, usize, usize)>>,
}

impl TensorLayout {
    fn new(da: &[usize], dc: &[usize], top: usize) -> Self {
        let mut dims = Vec::new();
        let mut blocks = Vec::new();
        for n in 0..=top {
            let mut off = 0;
            let mut bl = Vec::new();
            for p in 0..=n {
                bl.push((p, n - p, off));
                off += da[p] * dc[n - p];
            }
            dims.push(off);
            blocks.push(bl);
        }
        Self { dims, blocks }
    }

    pub fn offset(&self, p: usize, q: usize) -> usize {
        self.blocks[p + q][p].2
    }
}

/// `u`-window complex of a mixed complex together with its block layout.
#[derive(Clone, Debug)]
pub struct UComplex {
    pub variant: CyclicVariant,
    pub complex: FiniteComplex,
    /// For each degree `n` (from `complex.lo()`), its blocks.
    pub layout: Vec<Vec<Block>>,
}

/// The summand `u^k C_i` of one degree, at coordinates `offset..offset+len`.
#[derive(Clone, Copy, Debug)]
pub struct Block {
    pub k: i64,
    pub chain_degree: usize,
    pub offset: usize,
    pub len: usize,
}

impl UComplex {
    /// Builds degrees `lo..=hi` of the window complex of `mc`.
    pub fn build(mc: &MixedComplex, variant: CyclicVariant, lo: i64, hi: i64) -> Result<Self> {
        let (kmin, kmax) = variant.powers();
        if variant.kind != CyclicKind::Cyclic && variant.truncation == 0 {
            return Err(Error::WindowTooSmall("truncation M must be at least 1".into()));
        }
        if variant.chain_top(hi) > mc.top() {
            return Err(Error::WindowTooSmall(format!(
                "degree {hi} needs chains up to {}",
                variant.chain_top(hi)
            )));
        }
        let mut layout = Vec::new();
        let mut dims = Vec::new();
        for n in lo..=hi {
            let mut blocks = Vec::new();
            let mut off = 0;
            // chain degree i = n + 2k with 0 <= i
            let k_lo = kmin.max((-n + 1).div_euclid(2));
            for k in k_lo..=kmax {
                let i = n + 2 * k;
                if i < 0 {
                    continue;
                }
                let len = mc.dims[i as usize];
                blocks.push(Block {
                    k,
                    chain_degree: i as usize,
                    offset: off,
                    len,
                });
                off += len;
            }
            dims.push(off);
            layout.push(blocks);
        }
        let mut diffs = Vec::new();
        for (idx, n) in (lo..=hi).enumerate() {
            let rows = if n > lo { dims[idx - 1] } else { 0 };
            let find = |k: i64| -> Option<usize> {
                if n == lo {
                    return None;
                }
                layout[idx - 1].iter().find(|b| b.k == k).map(|b| b.offset)
            };
            let mut entries = Vec::new();
            for &Block { k, chain_degree: i, offset: off, .. } in &layout[idx] {
                if i > 0 {
                    if let Some(t) = find(k) {
                        for (r, c, v) in mc.b[i].triplets() {
                            entries.push((t + r, off + c, v.clone()));
                        }
                    }
                }
                if let Some(t) = find(k + 1) {
                    for (r, c, v) in mc.bb[i].triplets() {
                        entries.push((t + r, off + c, v.clone()));
                    }
                }
            }
            diffs.push(SparseRationalMatrix::from_triplets(rows, dims[idx], entries));
        }
        let complex = FiniteComplex::new(lo, dims, diffs, Shift::Homological)?;
        Ok(Self {
            variant,
            complex,
            layout,
        })
    }

    pub fn blocks(&self, n: i64) -> &[Block] {
        &self.layout[(n - self.complex.lo()) as usize]
    }

    /// Offset of the `u^k` block in degree `n`.
    pub fn block(&self, n: i64, k: i64) -> Option<Block> {
        self.blocks(n).iter().find(|b| b.k == k).copied()
    }

    /// Matrix of `u^k x ↦ u^k F_0 x + u^{k+1} F_1 x` from `self` to `tgt`
    /// in degree `n`, where `f0[p]: C_p → C'_p` and `f1[p]: C_p → C'_{p+2}`.
    pub fn map_matrix(
        &self,
        tgt: &UComplex,
        n: i64,
        f0: &[SparseRationalMatrix],
        f1: &[SparseRationalMatrix],
    ) -> SparseRationalMatrix {
        let mut entries = Vec::new();
        for b in self.blocks(n) {
            let (i, off) = (b.chain_degree, b.offset);
            if let Some(t) = tgt.block(n, b.k) {
                for (r, c, v) in f0[i].triplets() {
                    entries.push((t.offset + r, off + c, v.clone()));
                }
            }
            if let Some(t) = tgt.block(n, b.k + 1) {
                let t = t.offset;
                if let Some(f) = f1.get(i) {
                    for (r, c, v) in f.triplets() {
                        entries.push((t + r, off + c, v.clone()));
                    }
                }
            }
        }
        SparseRationalMatrix::from_triplets(tgt.complex.dim(n), self.complex.dim(n), entries)
    }
}

/// Cyclic-type complex of an algebra with homology in the requested range.
#[derive(Clone, Debug, Serialize)]
pub struct CyclicHomology {
    pub kind: CyclicKind,
    pub truncation: usize,
    pub lo: i64,
    pub dims: Vec<usize>,
    /// Whether the dims agree with truncation `M+1` (`None` for `Cyclic`).
    pub stable: Option<bool>,
}

impl CyclicHomology {
    pub fn stability_check(&self, name: &str) -> Check {
        match self.stable {
            None | Some(true) => Check {
                name: name.into(),
                status: if self.stable.is_some() { Status::Stable } else { Status::Pass },
                witness: None,
            },
            Some(false) => Check {
                name: name.into(),
                status: Status::Unstable,
                witness: Some(format!("dims change between M={} and M={}", self.truncation, self.truncation + 1)),
            },
        }
    }
}

/// Window complex of `A` for degrees `lo − 1 ..= hi + 1`.
pub fn build_cyclic_complex(a: &FinDimAlgebra, variant: CyclicVariant, lo: i64, hi: i64) -> Result<UComplex> {
    let h = Hochschild::new(a)?;
    let mc = MixedComplex::hochschild(&h, variant.chain_top(hi + 1));
    UComplex::build(&mc, variant, lo - 1, hi + 1)
}

/// Homology dims in degrees `lo..=hi`, with the stability flag.
pub fn cyclic_homology(a: &FinDimAlgebra, variant: CyclicVariant, lo: i64, hi: i64) -> Result<CyclicHomology> {
    let h = Hochschild::new(a)?;
    let top = variant.with_truncation(variant.truncation + 2).chain_top(hi + 1);
    let mc = MixedComplex::hochschild(&h, top);
    cyclic_homology_of(&mc, variant, lo, hi)
}

/// As [`cyclic_homology`], for an arbitrary mixed complex.
///
/// For truncated variants the window `W_M` has spurious classes along its
/// top edge, so the reported dimension is the rank of `H(W_{M+1}) → H(W_M)`:
/// the classes of `W_M` that survive one more power of `u`. The result is
/// stable when this rank is the same at `M + 1`.
pub fn cyclic_homology_of(mc: &MixedComplex, variant: CyclicVariant, lo: i64, hi: i64) -> Result<CyclicHomology> {
    let dims = match variant.kind {
        CyclicKind::Cyclic => {
            let u = UComplex::build(mc, variant, lo - 1, hi + 1)?;
            let all = u.complex.homology_dims()?;
            all[1..all.len() - 1].to_vec()
        }
        _ => lifted_dims(mc, variant, lo, hi)?,
    };
    let stable = match variant.kind {
        CyclicKind::Cyclic => None,
        _ => Some(lifted_dims(mc, variant.with_truncation(variant.truncation + 1), lo, hi)? == dims),
    };
    Ok(CyclicHomology {
        kind: variant.kind,
        truncation: variant.truncation,
        lo,
        dims,
        stable,
    })
}

fn lifted_dims(mc: &MixedComplex, variant: CyclicVariant, lo: i64, hi: i64) -> Result<Vec<usize>> {
    let small = UComplex::build(mc, variant, lo - 1, hi + 1)?;
    let big = UComplex::build(mc, variant.with_truncation(variant.truncation + 1), lo - 1, hi + 1)?;
    let ids: Vec<SparseRationalMatrix> = mc.dims.iter().map(|&d| SparseRationalMatrix::identity(d)).collect();
    let proj: Vec<SparseRationalMatrix> = (lo - 1..=hi + 1).map(|n| big.map_matrix(&small, n, &ids, &[])).collect();
    (lo..=hi)
        .map(|n| Ok(induced_map_on_homology(&big.complex, &small.complex, &proj, n)?.matrix.rank()))
        .collect()
}

/// Matrix of `S: HC_p → HC_{p−2}` in the homology bases of the cyclic complex.
pub fn s_map(a: &FinDimAlgebra, p: usize) -> Result<SparseRationalMatrix> {
    if p < 2 {
        return Err(Error::DegreeUnderflow("S needs p ≥ 2".into()));
    }
    let u = build_cyclic_complex(a, CyclicVariant::cyclic(), 0, p as i64)?;
    s_map_in(&u, p)
}

/// `S` on an already built cyclic complex (projection killing the `u^0` block).
pub fn s_map_in(u: &UComplex, p: usize) -> Result<SparseRationalMatrix> {
    if p < 2 {
        return Err(Error::DegreeUnderflow("S needs p ≥ 2".into()));
    }
    let n = p as i64;
    let proj = shift_matrix(u, n, n - 2, 1);
    let src = u.complex.homology_basis(n);
    let tgt = u.complex.homology_basis(n - 2);
    let mut cols = Vec::new();
    for rep in src.reps() {
        cols.push(
            tgt.class_of(&proj.mul_vec(rep))
                .ok_or_else(|| Error::NotChainMap("S of a cycle is not a cycle".into()))?,
        );
    }
    Ok(SparseRationalMatrix::from_columns(tgt.dim(), &cols))
}

/// Multiplication by `u^e` from degree `n` to `m = n − 2e` (blocks leaving the window are dropped).
fn shift_matrix(u: &UComplex, n: i64, m: i64, e: i64) -> SparseRationalMatrix {
    let mut entries = Vec::new();
    for b in u.blocks(n) {
        if let Some(t) = u.block(m, b.k + e) {
            for c in 0..b.len {
                entries.push((t.offset + c, b.offset + c, rat(1)));
            }
        }
    }
    SparseRationalMatrix::from_triplets(u.complex.dim(m), u.complex.dim(n), entries)
}

/// Ranks in the long exact sequence `… → HH_n →I HC_n →S HC_{n−2} →B HH_{n−1} → …`.
#[derive(Clone, Debug, Serialize)]
pub struct SbiRanks {
    pub degree: usize,
    pub hh: usize,
    pub hc: usize,
    pub rank_i: usize,
    pub rank_s: usize,
    pub rank_b: usize,
}

/// Exactness of the SBI sequence in degrees `0..=max_degree`, checked by ranks.
pub fn sbi_check(a: &FinDimAlgebra, max_degree: usize) -> Result<(Vec<SbiRanks>, Check)> {
    let h = Hochschild::new(a)?;
    let mc = MixedComplex::hochschild(&h, max_degree + 2);
    let hoch = mc.hochschild_complex()?;
    let u = UComplex::build(&mc, CyclicVariant::cyclic(), -1, max_degree as i64 + 1)?;
    let mut rows = Vec::new();
    let mut ok = true;
    let mut witness = String::new();
    // rank of I_n: HH_n → HC_n, S_n: HC_n → HC_{n−2}, B_n: HC_{n−1} → HH_n
    let rank_i = |n: usize| -> Result<usize> {
        let hb = hoch.homology_basis(n as i64);
        let cb = u.complex.homology_basis(n as i64);
        let off = u.block(n as i64, 0).map_or(0, |b| b.offset);
        let mut cols = Vec::new();
        for rep in hb.reps() {
            let mut v = vec![rat(0); u.complex.dim(n as i64)];
            for (j, x) in rep.iter().enumerate() {
                v[off + j] = x.clone();
            }
            cols.push(cb.class_of(&v).ok_or_else(|| Error::NotChainMap("I".into()))?);
        }
        Ok(SparseRationalMatrix::from_columns(cb.dim(), &cols).rank())
    };
    let rank_s = |n: usize| -> Result<usize> {
        if n < 2 {
            return Ok(0);
        }
        Ok(s_map_in(&u, n)?.rank())
    };
    let rank_b = |n: usize| -> Result<usize> {
        // class in HC_{n−1} ↦ B of its u^0 block, a cycle in C_n
        if n == 0 {
            return Ok(0);
        }
        let cb = u.complex.homology_basis(n as i64 - 1);
        let hb = hoch.homology_basis(n as i64);
        let blk = u.block(n as i64 - 1, 0).expect("u^0 block");
        let (off, len) = (blk.offset, blk.len);
        let mut cols = Vec::new();
        for rep in cb.reps() {
            let top = rep[off..off + len].to_vec();
            let img = mc.connes(n - 1).mul_vec(&top);
            cols.push(hb.class_of(&img).ok_or_else(|| Error::NotChainMap("B".into()))?);
        }
        Ok(SparseRationalMatrix::from_columns(hb.dim(), &cols).rank())
    };
    let hh_dims = hoch.homology_dims()?;
    let hc_all = u.complex.homology_dims()?;
    for n in 0..=max_degree {
        let r = SbiRanks {
            degree: n,
            hh: hh_dims[n],
            hc: hc_all[n + 1],
            rank_i: rank_i(n)?,
            rank_s: rank_s(n)?,
            rank_b: rank_b(n)?,
        };
        // exact at HH_n: dim = rank(B_n) + rank(I_n); at HC_n: dim = rank(I_n) + rank(S_n)
        if r.hh != r.rank_b + r.rank_i || r.hc != r.rank_i + r.rank_s {
            ok = false;
            witness = format!("degree {n}: {r:?}");
        }
        rows.push(r);
    }
    // exact at HC_{n−2}: dim HC_{n−2} = rank(S_n) + rank(B_{n−1})
    for n in 2..=max_degree {
        if rows[n - 2].hc != rows[n].rank_s + rows[n - 1].rank_b {
            ok = false;
            witness = format!("exactness at HC_{}", n - 2);
        }
    }
    Ok((rows, Check::from_bool("sbi exactness", ok, || witness)))
}

/// Goodwillie comparison of windowed periodic homology of `A` and `A/I`.
#[derive(Clone, Debug, Serialize)]
pub struct GoodwillieReport {
    pub dims_a: CyclicHomology,
    pub dims_quotient: CyclicHomology,
    pub checks: Vec<Check>,
}

pub fn goodwillie_check(a: &FinDimAlgebra, ideal: &[usize], max_degree: usize, m: usize) -> Result<GoodwillieReport> {
    let (q, _) = a.quotient_by_basis_ideal(ideal)?;
    let v = CyclicVariant::periodic(m);
    let da = cyclic_homology(a, v, 0, max_degree as i64)?;
    let dq = cyclic_homology(&q, v, 0, max_degree as i64)?;
    let checks = vec![
        Check::from_bool("periodic dims agree", da.dims == dq.dims, || {
            format!("{:?} vs {:?}", da.dims, dq.dims)
        }),
        da.stability_check("window stable for A"),
        dq.stability_check("window stable for A/I"),
    ];
    Ok(GoodwillieReport {
        dims_a: da,
        dims_quotient: dq,
        checks,
    })
}

#[cfg(test)]
mod tests;
