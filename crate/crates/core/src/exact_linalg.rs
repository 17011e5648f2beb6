//! Exact rational linear algebra.
//!
//! Everything downstream (Hochschild homology, bar complexes, Lie algebra
//! quotients) reduces to ranks, kernels and affine solves over `Q`. All
//! elimination here uses one deterministic rule: vectors are inserted in
//! order and each is reduced against the existing pivots by scanning columns
//! in increasing order.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number (always stored in lowest terms, positive denominator).
pub type Rational = BigRational;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a JSON-style integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Formats as `"p"` for integers and `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Converts a dense vector to sparse form.
pub fn to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Immutable sparse matrix over the rationals, stored by rows.
#[derive(Clone, Debug)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
    rank_cache: OnceLock<usize>,
}

impl PartialEq for SparseRationalMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for SparseRationalMatrix {}

impl SparseRationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
            rank_cache: OnceLock::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, rat(1))))
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    ///
    /// Panics if an index is out of bounds.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            *acc[r].entry(c).or_insert_with(Rational::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Self {
            rows,
            cols,
            data,
            rank_cache: OnceLock::new(),
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| {
                assert_eq!(row.len(), c, "ragged dense matrix");
                row.iter().enumerate().map(move |(j, v)| (i, j, v.clone()))
            }),
        )
    }

    /// Builds a `rows x cols.len()` matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        Self::from_triplets(
            rows,
            cols.len(),
            cols.iter().enumerate().flat_map(|(j, col)| {
                assert_eq!(col.len(), rows, "column length mismatch");
                col.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(i, v)| (i, j, v.clone()))
            }),
        )
    }

    pub fn from_sparse_columns(rows: usize, cols: &[SparseVec]) -> Self {
        Self::from_triplets(
            rows,
            cols.len(),
            cols.iter()
                .enumerate()
                .flat_map(|(j, col)| col.iter().map(move |(i, v)| (*i, j, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &SparseVec {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.triplets().map(|(i, j, v)| (j, i, v.clone())),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data.iter().map(|r| to_dense(r, self.cols)).collect()
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns_sparse(&self) -> Vec<SparseVec> {
        let mut cols: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                cols[*j].push((i, v.clone()));
            }
        }
        cols
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        self.data
            .iter()
            .map(|row| {
                let mut s = Rational::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        s += a * &v[*j];
                    }
                }
                s
            })
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut entries = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            entries.extend(acc.into_iter().map(|(j, v)| (i, j, v)));
        }
        Self::from_triplets(self.rows, other.cols, entries)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets()
                .chain(other.triplets())
                .map(|(i, j, v)| (i, j, v.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_triplets(
            self.rows,
            self.cols,
            self.triplets().map(|(i, j, v)| (i, j, v * c)),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    /// Exact rank (cached after the first call).
    pub fn rank(&self) -> usize {
        *self.rank_cache.get_or_init(|| {
            let mut span = Echelon::new();
            for row in &self.data {
                span.insert(row.clone());
            }
            span.rank()
        })
    }

    /// Basis of the null space; its length is `cols - rank`.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let cols = self.columns_sparse();
        let mut solver = SpanSolver::new();
        let mut out = Vec::new();
        for col in cols {
            if let Some(rel) = solver.insert(col) {
                out.push(to_dense(&rel, self.cols));
            }
        }
        out
    }

    /// Deterministic hash-free fingerprint of the entries, used in tests.
    pub fn entries_string(&self) -> String {
        self.triplets()
            .map(|(i, j, v)| format!("{i},{j},{}", format_rational(v)))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Returns `r - c * p` for sparse vectors.
pub fn axpy_sparse(r: &SparseVec, c: &Rational, p: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (0, 0);
    while i < r.len() || j < p.len() {
        let take_r = j >= p.len() || (i < r.len() && r[i].0 < p[j].0);
        let take_p = i >= r.len() || (j < p.len() && p[j].0 < r[i].0);
        if take_r {
            out.push(r[i].clone());
            i += 1;
        } else if take_p {
            out.push((p[j].0, -(c * &p[j].1)));
            j += 1;
        } else {
            let v = &r[i].1 - c * &p[j].1;
            if !v.is_zero() {
                out.push((r[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_sparse(v: &SparseVec, c: &Rational) -> SparseVec {
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Row echelon form built by inserting vectors one at a time.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<SparseVec>,
    pivot: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current pivots; the result has no entries in
    /// pivot columns.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        let mut r = v;
        let mut k = 0;
        while k < r.len() {
            let (c, coef) = (r[k].0, r[k].1.clone());
            if let Some(&p) = self.pivot.get(&c) {
                r = axpy_sparse(&r, &coef, &self.rows[p]);
                // entries before position k are untouched, entry k vanished
            } else {
                k += 1;
            }
        }
        r
    }

    /// Whether column `c` carries a pivot.
    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot.contains_key(&c)
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        match r.first() {
            None => false,
            Some((c, lead)) => {
                let inv = lead.recip();
                let c = *c;
                self.pivot.insert(c, self.rows.len());
                self.rows.push(scale_sparse(&r, &inv));
                true
            }
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Incremental span with coefficient tracking.
///
/// Generators `g_0, g_1, ...` are inserted in order. `express` writes a vector
/// as a combination of the generators, and `insert` reports the linear
/// relation found when a generator is dependent on the earlier ones.
#[derive(Clone, Debug, Default)]
pub struct SpanSolver {
    rows: Vec<(SparseVec, SparseVec)>,
    pivot: HashMap<usize, usize>,
    count: usize,
}

impl SpanSolver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.count
    }

    fn reduce(&self, v: SparseVec, combo: SparseVec) -> (SparseVec, SparseVec) {
        let mut r = v;
        let mut cmb = combo;
        let mut k = 0;
        while k < r.len() {
            let (c, coef) = (r[k].0, r[k].1.clone());
            if let Some(&p) = self.pivot.get(&c) {
                r = axpy_sparse(&r, &coef, &self.rows[p].0);
                cmb = axpy_sparse(&cmb, &coef, &self.rows[p].1);
            } else {
                k += 1;
            }
        }
        (r, cmb)
    }

    /// Inserts the next generator. Returns `Some(relation)` (coefficients over
    /// generator indices, with coefficient 1 on the new generator) when the
    /// generator lies in the span of the previous ones.
    pub fn insert(&mut self, g: SparseVec) -> Option<SparseVec> {
        let idx = self.count;
        self.count += 1;
        let (r, cmb) = self.reduce(g, vec![(idx, rat(1))]);
        match r.first() {
            None => Some(cmb),
            Some((c, lead)) => {
                let inv = lead.recip();
                self.pivot.insert(*c, self.rows.len());
                self.rows.push((scale_sparse(&r, &inv), scale_sparse(&cmb, &inv)));
                None
            }
        }
    }

    /// Coefficients `x` (over generator indices) with `Σ x_j g_j = v`, or
    /// `None` when `v` is outside the span.
    pub fn express(&self, v: SparseVec) -> Option<SparseVec> {
        let (r, cmb) = self.reduce(v, Vec::new());
        if r.is_empty() {
            Some(cmb.into_iter().map(|(i, x)| (i, -x)).collect())
        } else {
            None
        }
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v, Vec::new()).0.is_empty()
    }
}

/// Some exact solution of `A x = b`, or `None` when the system is inconsistent.
pub fn solve_affine(a: &SparseRationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let mut solver = SpanSolver::new();
    for col in a.columns_sparse() {
        solver.insert(col);
    }
    solver
        .express(to_sparse(b))
        .map(|x| to_dense(&x, a.cols()))
}

/// Direction of the differentials of a [`FiniteComplex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shift {
    /// `d_n : V_n -> V_{n-1}`
    Homological,
    /// `d_n : V_n -> V_{n+1}`
    Cohomological,
}

impl Shift {
    pub fn step(self) -> i64 {
        match self {
            Shift::Homological => -1,
            Shift::Cohomological => 1,
        }
    }
}

/// Finite complex on a contiguous degree range.
///
/// `diffs[i]` is the differential leaving degree `lo + i`; when the target
/// degree is outside the range it must have zero rows (homological) or is
/// simply the map to the zero space.
#[derive(Clone, Debug)]
pub struct FiniteComplex {
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<SparseRationalMatrix>,
    shift: Shift,
}

impl FiniteComplex {
    /// Checks shapes; `diffs` may be shorter than `dims` (missing maps are zero).
    pub fn new(
        lo: i64,
        dims: Vec<usize>,
        diffs: Vec<SparseRationalMatrix>,
        shift: Shift,
    ) -> Result<Self> {
        let mut full = Vec::with_capacity(dims.len());
        for (i, &dim) in dims.iter().enumerate() {
            let tgt = i as i64 + shift.step();
            let tdim = if tgt >= 0 && (tgt as usize) < dims.len() {
                dims[tgt as usize]
            } else {
                0
            };
            let m = match diffs.get(i) {
                Some(m) => {
                    if m.cols() != dim || m.rows() != tdim {
                        return Err(Error::ComplexInvalid(format!(
                            "differential at degree {} has shape {}x{}, expected {}x{}",
                            lo + i as i64,
                            m.rows(),
                            m.cols(),
                            tdim,
                            dim
                        )));
                    }
                    m.clone()
                }
                None => SparseRationalMatrix::zero(tdim, dim),
            };
            full.push(m);
        }
        Ok(Self {
            lo,
            dims,
            diffs: full,
            shift,
        })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.dims.len() as i64 - 1
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn idx(&self, n: i64) -> Option<usize> {
        let i = n - self.lo;
        (i >= 0 && (i as usize) < self.dims.len()).then_some(i as usize)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.idx(n).map_or(0, |i| self.dims[i])
    }

    /// Differential leaving degree `n` (zero map outside the range).
    pub fn differential(&self, n: i64) -> SparseRationalMatrix {
        match self.idx(n) {
            Some(i) => self.diffs[i].clone(),
            None => SparseRationalMatrix::zero(self.dim(n + self.shift.step()), 0),
        }
    }

    fn diff_ref(&self, n: i64) -> Option<&SparseRationalMatrix> {
        self.idx(n).map(|i| &self.diffs[i])
    }

    /// Verifies every composite `d ∘ d` vanishes.
    pub fn check(&self) -> Result<()> {
        let s = self.shift.step();
        for n in self.lo..=self.hi() {
            let (Some(d1), Some(d2)) = (self.diff_ref(n), self.diff_ref(n + s)) else {
                continue;
            };
            if !d2.mul(d1).is_zero() {
                return Err(Error::ComplexInvalid(format!(
                    "d∘d ≠ 0 starting at degree {n}"
                )));
            }
        }
        Ok(())
    }

    /// Rank of the differential leaving degree `n`.
    pub fn rank_out(&self, n: i64) -> usize {
        self.diff_ref(n).map_or(0, |d| d.rank())
    }

    /// Rank of the differential arriving in degree `n`.
    pub fn rank_in(&self, n: i64) -> usize {
        self.diff_ref(n - self.shift.step()).map_or(0, |d| d.rank())
    }

    /// Homology dimensions for every degree in the range, after checking `d² = 0`.
    pub fn homology_dims(&self) -> Result<Vec<usize>> {
        self.check()?;
        Ok((self.lo..=self.hi())
            .map(|n| self.dim(n) - self.rank_out(n) - self.rank_in(n))
            .collect())
    }

    /// A basis of cycle representatives for homology in degree `n`.
    pub fn homology_basis(&self, n: i64) -> HomologyBasis {
        let dim = self.dim(n);
        let cycles = match self.diff_ref(n) {
            Some(d) => d.kernel_basis(),
            None => Vec::new(),
        };
        let boundaries: Vec<SparseVec> = match self.diff_ref(n - self.shift.step()) {
            Some(d) => d.columns_sparse(),
            None => Vec::new(),
        };
        HomologyBasis::new(dim, boundaries, cycles.iter().map(|c| to_sparse(c)).collect())
    }
}

/// Cycle representatives of a homology group together with a solver that
/// computes the class of any cycle.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    ambient: usize,
    reps: Vec<Vec<Rational>>,
    solver: SpanSolver,
    rep_gen: Vec<usize>,
    boundary_gens: usize,
}

impl HomologyBasis {
    /// `boundaries` span the image of the incoming map; `cycles` span the kernel.
    pub fn new(ambient: usize, boundaries: Vec<SparseVec>, cycles: Vec<SparseVec>) -> Self {
        let mut solver = SpanSolver::new();
        let nb = boundaries.len();
        for b in boundaries {
            solver.insert(b);
        }
        let mut reps = Vec::new();
        let mut rep_gen = Vec::new();
        for z in cycles {
            let gen = solver.generators();
            if solver.insert(z.clone()).is_none() {
                reps.push(to_dense(&z, ambient));
                rep_gen.push(gen);
            }
        }
        Self {
            ambient,
            reps,
            solver,
            rep_gen,
            boundary_gens: nb,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn reps(&self) -> &[Vec<Rational>] {
        &self.reps
    }

    /// Coordinates of the class of `v` in the representative basis, or `None`
    /// if `v` is not a cycle (outside boundaries + representatives).
    pub fn class_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let x = self.solver.express(to_sparse(v))?;
        let mut out = vec![Rational::zero(); self.reps.len()];
        for (g, c) in x {
            if let Ok(k) = self.rep_gen.binary_search(&g) {
                out[k] = c;
            }
        }
        Some(out)
    }

    /// Some `y` with `v = ∂y`-combination of boundary generators, if `v` is a
    /// boundary: returns coefficients on the boundary generators.
    pub fn boundary_witness(&self, v: &[Rational]) -> Option<SparseVec> {
        let x = self.solver.express(to_sparse(v))?;
        if x.iter().any(|(g, _)| *g >= self.boundary_gens) {
            None
        } else {
            Some(x)
        }
    }

    pub fn is_boundary(&self, v: &[Rational]) -> bool {
        self.boundary_witness(v).is_some()
    }
}

/// Result of [`induced_map_on_homology`].
#[derive(Clone, Debug)]
pub struct InducedMap {
    pub matrix: SparseRationalMatrix,
    pub is_isomorphism: bool,
}

/// Matrix of the map induced in homology at `degree` by the chain map `f`
/// (`f[i]` acts on degree `src.lo() + i`).
pub fn induced_map_on_homology(
    src: &FiniteComplex,
    tgt: &FiniteComplex,
    f: &[SparseRationalMatrix],
    degree: i64,
) -> Result<InducedMap> {
    if src.shift() != tgt.shift() || src.lo() != tgt.lo() || src.dims().len() != f.len() {
        return Err(Error::NotChainMap("complex ranges do not match".into()));
    }
    let s = src.shift().step();
    for (i, fi) in f.iter().enumerate() {
        let n = src.lo() + i as i64;
        if fi.cols() != src.dim(n) || fi.rows() != tgt.dim(n) {
            return Err(Error::NotChainMap(format!("bad shape at degree {n}")));
        }
        let next = n + s;
        if next < src.lo() || next > src.hi() {
            continue;
        }
        let lhs = f[(next - src.lo()) as usize].mul(&src.differential(n));
        let rhs = tgt.differential(n).mul(fi);
        if lhs != rhs {
            return Err(Error::NotChainMap(format!("f d ≠ d f at degree {n}")));
        }
    }
    let hs = src.homology_basis(degree);
    let ht = tgt.homology_basis(degree);
    let fi = &f[(degree - src.lo()) as usize];
    let mut cols = Vec::new();
    for rep in hs.reps() {
        let img = fi.mul_vec(rep);
        let c = ht
            .class_of(&img)
            .ok_or_else(|| Error::NotChainMap("image of a cycle is not a cycle".into()))?;
        cols.push(c);
    }
    let matrix = SparseRationalMatrix::from_columns(ht.dim(), &cols);
    let is_isomorphism = ht.dim() == hs.dim() && matrix.rank() == hs.dim();
    Ok(InducedMap {
        matrix,
        is_isomorphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> SparseRationalMatrix {
        SparseRationalMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(SparseRationalMatrix::identity(2).rank(), 2);
        assert_eq!(SparseRationalMatrix::zero(3, 4).rank(), 0);
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(SparseRationalMatrix::identity(3).kernel_basis().is_empty());
        assert_eq!(SparseRationalMatrix::zero(2, 2).kernel_basis().len(), 2);
        let k = m(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], rat(0));
        assert!(!k[0][0].is_zero());
    }

    #[test]
    fn solve_examples() {
        let b = vec![rat(3), ratio(-1, 2)];
        assert_eq!(solve_affine(&SparseRationalMatrix::identity(2), &b), Some(b));
        assert_eq!(
            solve_affine(&SparseRationalMatrix::zero(1, 1), &[rat(1)]),
            None
        );
        assert_eq!(solve_affine(&m(&[&[2]]), &[rat(1)]), Some(vec![ratio(1, 2)]));
    }

    #[test]
    fn rational_strings() {
        assert_eq!(parse_rational("-3/6").unwrap(), ratio(-1, 2));
        assert_eq!(format_rational(&ratio(4, 2)), "2");
        assert_eq!(format_rational(&ratio(-1, 3)), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn small_complexes() {
        let c = FiniteComplex::new(0, vec![1], vec![], Shift::Homological).unwrap();
        assert_eq!(c.homology_dims().unwrap(), vec![1]);
        // k --id--> k
        let c = FiniteComplex::new(
            0,
            vec![1, 1],
            vec![
                SparseRationalMatrix::zero(0, 1),
                SparseRationalMatrix::identity(1),
            ],
            Shift::Homological,
        )
        .unwrap();
        assert_eq!(c.homology_dims().unwrap(), vec![0, 0]);
    }

    #[test]
    fn detects_nonzero_square() {
        let c = FiniteComplex::new(
            0,
            vec![1, 1, 1],
            vec![
                SparseRationalMatrix::zero(0, 1),
                SparseRationalMatrix::identity(1),
                SparseRationalMatrix::identity(1),
            ],
            Shift::Homological,
        )
        .unwrap();
        assert!(matches!(c.homology_dims(), Err(Error::ComplexInvalid(_))));
    }

    #[test]
    fn induced_identity_and_zero() {
        let c = FiniteComplex::new(0, vec![2], vec![], Shift::Homological).unwrap();
        let id = induced_map_on_homology(&c, &c, &[SparseRationalMatrix::identity(2)], 0).unwrap();
        assert!(id.is_isomorphism);
        assert_eq!(id.matrix, SparseRationalMatrix::identity(2));
        let z = induced_map_on_homology(&c, &c, &[SparseRationalMatrix::zero(2, 2)], 0).unwrap();
        assert!(z.matrix.is_zero());
        assert!(!z.is_isomorphism);
    }

    #[test]
    fn not_chain_map_is_rejected() {
        let c = FiniteComplex::new(
            0,
            vec![1, 1],
            vec![SparseRationalMatrix::zero(0, 1), SparseRationalMatrix::identity(1)],
            Shift::Homological,
        )
        .unwrap();
        let f = vec![SparseRationalMatrix::zero(1, 1), SparseRationalMatrix::identity(1)];
        assert!(matches!(
            induced_map_on_homology(&c, &c, &f, 0),
            Err(Error::NotChainMap(_))
        ));
    }
}
