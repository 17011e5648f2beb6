//! Finite-dimensional unital associative algebras given by structure constants.
//!
//! A [`FinDimAlgebra`] is always stored in a basis whose first vector is the
//! unit, so `Ā = A/k·1` is spanned by basis vectors `1..dim`. Presentations
//! read from files ([`AlgebraSpec`]) are validated first and then moved to
//! such a basis.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact_linalg::{
    format_rational, parse_rational, rat, to_dense, to_sparse, Rational, SparseRationalMatrix,
    SparseVec, SpanSolver,
};
use crate::report::Check;

/// Raw algebra presentation, as read from a file or built in code.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub name: String,
    pub basis: Vec<String>,
    pub unit: Vec<Rational>,
    /// `table[i][j]` = coordinates of `e_i e_j` (sparse).
    pub table: Vec<Vec<SparseVec>>,
    pub degrees: Option<Vec<i64>>,
    pub weights: Option<Vec<usize>>,
    /// Matrix of the differential in the given basis (columns = images).
    pub differential: Option<SparseRationalMatrix>,
}

/// Validated unital algebra with the unit as basis vector 0.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    name: String,
    labels: Vec<String>,
    table: Vec<Vec<SparseVec>>,
    degrees: Vec<i64>,
    weights: Option<Vec<usize>>,
    differential: Option<SparseRationalMatrix>,
}

/// Linear map between algebras, stored as a `dim(B) x dim(A)` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    pub matrix: SparseRationalMatrix,
}

/// Result of [`validate`]: one check per invariant.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        crate::report::all_pass(&self.checks)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.failed())
    }
}

fn mul_vecs(table: &[Vec<SparseVec>], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let n = x.len();
    let mut out = vec![Rational::zero(); n];
    for (i, a) in x.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let ab = a * b;
            for (k, c) in &table[i][j] {
                out[*k] += &ab * c;
            }
        }
    }
    out
}

fn basis_vec(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

/// Checks associativity, the unit law, gradings and the differential.
pub fn validate(spec: &AlgebraSpec) -> ValidationReport {
    let n = spec.basis.len();
    let mut checks = Vec::new();
    let shape_ok = spec.table.len() == n
        && spec.table.iter().all(|r| r.len() == n)
        && spec.unit.len() == n
        && spec
            .table
            .iter()
            .flatten()
            .all(|v| v.iter().all(|(k, _)| *k < n));
    checks.push(Check::from_bool("shape", shape_ok, || {
        format!("table/unit sizes do not match basis of size {n}")
    }));
    if !shape_ok {
        return ValidationReport { checks };
    }
    let t = &spec.table;
    let prod = |i: usize, j: usize| to_dense(&t[i][j], n);
    let mut assoc = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let ij = prod(i, j);
            for k in 0..n {
                let lhs = mul_vecs(t, &ij, &basis_vec(n, k));
                let rhs = mul_vecs(t, &basis_vec(n, i), &prod(j, k));
                if lhs != rhs {
                    assoc = Some(format!(
                        "({} {}) {} ≠ {} ({} {})",
                        spec.basis[i], spec.basis[j], spec.basis[k], spec.basis[i], spec.basis[j],
                        spec.basis[k]
                    ));
                    break 'outer;
                }
            }
        }
    }
    checks.push(match assoc {
        None => Check::pass("associativity"),
        Some(w) => Check::fail("associativity", w),
    });
    let mut unit_fail = None;
    for i in 0..n {
        let e = basis_vec(n, i);
        if mul_vecs(t, &spec.unit, &e) != e {
            unit_fail = Some(format!("1·{} ≠ {}", spec.basis[i], spec.basis[i]));
            break;
        }
        if mul_vecs(t, &e, &spec.unit) != e {
            unit_fail = Some(format!("{}·1 ≠ {}", spec.basis[i], spec.basis[i]));
            break;
        }
    }
    checks.push(match unit_fail {
        None => Check::pass("unit"),
        Some(w) => Check::fail("unit", w),
    });
    if let Some(deg) = &spec.degrees {
        checks.push(grading_check("degrees", spec, deg.to_vec()));
    }
    if let Some(w) = &spec.weights {
        checks.push(grading_check("weights", spec, w.iter().map(|&x| x as i64).collect()));
    }
    if let Some(d) = &spec.differential {
        checks.extend(differential_checks(spec, d));
    }
    ValidationReport { checks }
}

fn grading_check(name: &str, spec: &AlgebraSpec, g: Vec<i64>) -> Check {
    let n = spec.basis.len();
    if g.len() != n {
        return Check::fail(name, format!("expected {n} entries"));
    }
    for (i, k) in spec.unit.iter().enumerate() {
        if !k.is_zero() && g[i] != 0 {
            return Check::fail(name, format!("unit has a component of grading {}", g[i]));
        }
    }
    for i in 0..n {
        for j in 0..n {
            for (k, _) in &spec.table[i][j] {
                if g[*k] != g[i] + g[j] {
                    return Check::fail(
                        name,
                        format!(
                            "{}·{} has a component on {} of the wrong grading",
                            spec.basis[i], spec.basis[j], spec.basis[*k]
                        ),
                    );
                }
            }
        }
    }
    Check::pass(name)
}

fn differential_checks(spec: &AlgebraSpec, d: &SparseRationalMatrix) -> Vec<Check> {
    let n = spec.basis.len();
    if d.rows() != n || d.cols() != n {
        return vec![Check::fail("differential", "shape mismatch")];
    }
    let deg = spec.degrees.clone().unwrap_or_else(|| vec![0; n]);
    let mut out = Vec::new();
    out.push(Check::from_bool("differential_squares_to_zero", d.mul(d).is_zero(), || {
        "∂∘∂ ≠ 0".into()
    }));
    let mut degree_ok = None;
    for (r, c, _) in d.triplets() {
        if deg[r] != deg[c] + 1 {
            degree_ok = Some(format!("∂{} has a component on {}", spec.basis[c], spec.basis[r]));
            break;
        }
    }
    out.push(match degree_ok {
        None => Check::pass("differential_degree"),
        Some(w) => Check::fail("differential_degree", w),
    });
    let t = &spec.table;
    let mut leibniz = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = d.mul_vec(&to_dense(&t[i][j], n));
            let di = d.column(i);
            let dj = d.column(j);
            let mut rhs = mul_vecs(t, &di, &basis_vec(n, j));
            let sign = if deg[i].rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
            for (k, v) in mul_vecs(t, &basis_vec(n, i), &dj).into_iter().enumerate() {
                rhs[k] += &sign * v;
            }
            if lhs != rhs {
                leibniz = Some(format!("∂({} {})", spec.basis[i], spec.basis[j]));
                break 'outer;
            }
        }
    }
    out.push(match leibniz {
        None => Check::pass("differential_leibniz"),
        Some(w) => Check::fail("differential_leibniz", w),
    });
    out
}

impl FinDimAlgebra {
    /// Validates `spec` and moves it to a basis starting with the unit.
    pub fn from_spec(spec: AlgebraSpec) -> Result<Self> {
        let report = validate(&spec);
        if let Some(f) = report.first_failure() {
            return Err(Error::InvalidAlgebra(format!(
                "{}: {}",
                f.name,
                f.witness.clone().unwrap_or_default()
            )));
        }
        let n = spec.basis.len();
        let k = spec
            .unit
            .iter()
            .position(|x| !x.is_zero())
            .ok_or_else(|| Error::InvalidAlgebra("unit is zero".into()))?;
        let u = spec.unit.clone();
        let unit_is_basis = u.iter().enumerate().all(|(i, x)| {
            if i == k {
                x.is_one()
            } else {
                x.is_zero()
            }
        });
        // new basis: f_0 = unit, then e_i for i != k in order
        let old_of_new: Vec<usize> = std::iter::once(k).chain((0..n).filter(|&i| i != k)).collect();
        let mut new_of_old = vec![0; n];
        for (a, &i) in old_of_new.iter().enumerate() {
            new_of_old[i] = a;
        }
        let new_vec = |a: usize| -> Vec<Rational> {
            if a == 0 {
                u.clone()
            } else {
                basis_vec(n, old_of_new[a])
            }
        };
        let to_new = |v: &[Rational]| -> SparseVec {
            let c0 = &v[k] / &u[k];
            let mut out = vec![Rational::zero(); n];
            out[0] = c0.clone();
            for i in 0..n {
                if i != k {
                    out[new_of_old[i]] = &v[i] - &u[i] * &c0;
                }
            }
            to_sparse(&out)
        };
        let mut table = vec![vec![Vec::new(); n]; n];
        for a in 0..n {
            for b in 0..n {
                let p = mul_vecs(&spec.table, &new_vec(a), &new_vec(b));
                table[a][b] = to_new(&p);
            }
        }
        let mut labels: Vec<String> = old_of_new.iter().map(|&i| spec.basis[i].clone()).collect();
        if !unit_is_basis {
            labels[0] = "1".into();
        }
        let perm = |g: &Vec<i64>| -> Vec<i64> {
            old_of_new
                .iter()
                .enumerate()
                .map(|(a, &i)| if a == 0 { 0 } else { g[i] })
                .collect()
        };
        let degrees = spec.degrees.as_ref().map(perm).unwrap_or_else(|| vec![0; n]);
        let weights = spec.weights.as_ref().map(|w| {
            perm(&w.iter().map(|&x| x as i64).collect())
                .into_iter()
                .map(|x| x as usize)
                .collect()
        });
        let differential = spec.differential.as_ref().map(|d| {
            let cols: Vec<SparseVec> = (0..n).map(|a| to_new(&d.mul_vec(&new_vec(a)))).collect();
            SparseRationalMatrix::from_sparse_columns(n, &cols)
        });
        Ok(Self {
            name: spec.name,
            labels,
            table,
            degrees,
            weights,
            differential,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Dimension of `Ā = A/k·1`.
    pub fn dim_bar(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Product of basis vectors `e_i e_j` (sparse coordinates).
    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        mul_vecs(&self.table, x, y)
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn weights(&self) -> Option<&[usize]> {
        self.weights.as_deref()
    }

    pub fn differential(&self) -> Option<&SparseRationalMatrix> {
        self.differential.as_ref()
    }

    /// True when all degrees vanish and there is no (nonzero) differential.
    pub fn is_ungraded(&self) -> bool {
        self.degrees.iter().all(|&d| d == 0)
            && self.differential.as_ref().is_none_or(|d| d.is_zero())
    }

    pub fn unit_vector(&self) -> Vec<Rational> {
        basis_vec(self.dim(), 0)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        basis_vec(self.dim(), i)
    }

    /// Presentation in the current basis.
    pub fn to_spec(&self) -> AlgebraSpec {
        AlgebraSpec {
            name: self.name.clone(),
            basis: self.labels.clone(),
            unit: self.unit_vector(),
            table: self.table.clone(),
            degrees: Some(self.degrees.clone()),
            weights: self.weights.clone(),
            differential: self.differential.clone(),
        }
    }

    /// Re-runs every invariant check on the stored table.
    pub fn validate(&self) -> ValidationReport {
        validate(&self.to_spec())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Basis of the center `{z : zx = xz for all x}`.
    pub fn center_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut entries = Vec::new();
        for i in 0..n {
            for x in 0..n {
                let mut diff = BTreeMap::new();
                for (k, c) in &self.table[i][x] {
                    *diff.entry(*k).or_insert_with(Rational::zero) += c;
                }
                for (k, c) in &self.table[x][i] {
                    *diff.entry(*k).or_insert_with(Rational::zero) -= c;
                }
                for (k, c) in diff {
                    entries.push((x * n + k, i, c));
                }
            }
        }
        SparseRationalMatrix::from_triplets(n * n, n, entries).kernel_basis()
    }

    /// Checks that `f: self -> other` is a unit-preserving algebra map.
    pub fn check_algebra_map(&self, other: &FinDimAlgebra, f: &AlgebraMap) -> Result<()> {
        let m = &f.matrix;
        if m.rows() != other.dim() || m.cols() != self.dim() {
            return Err(Error::NotAlgebraMap("shape mismatch".into()));
        }
        if m.column(0) != other.unit_vector() {
            return Err(Error::NotAlgebraMap("unit not preserved".into()));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = m.mul_vec(&to_dense(&self.table[i][j], self.dim()));
                let rhs = other.mul(&m.column(i), &m.column(j));
                if lhs != rhs {
                    return Err(Error::NotAlgebraMap(format!(
                        "f({}·{}) ≠ f({})·f({})",
                        self.labels[i], self.labels[j], self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Quotient `A/I` by the span of the given basis vectors.
    ///
    /// Checks that the span is a two-sided ideal and that it is nilpotent.
    /// Returns the quotient algebra and the projection map.
    pub fn quotient_by_basis_ideal(&self, ideal: &[usize]) -> Result<(FinDimAlgebra, AlgebraMap)> {
        let n = self.dim();
        let mut span = SpanSolver::new();
        for &i in ideal {
            if i >= n {
                return Err(Error::NotIdeal(format!("index {i} out of range")));
            }
            span.insert(vec![(i, rat(1))]);
        }
        for &i in ideal {
            for x in 0..n {
                if !span.contains(self.table[i][x].clone()) || !span.contains(self.table[x][i].clone())
                {
                    return Err(Error::NotIdeal(format!(
                        "products of {} with {} leave the span",
                        self.labels[i], self.labels[x]
                    )));
                }
            }
        }
        // nilpotency: I^m = 0 for some m <= dim I + 1
        let mut power: Vec<Vec<Rational>> = ideal.iter().map(|&i| basis_vec(n, i)).collect();
        let mut steps = 0;
        while power.iter().any(|v| v.iter().any(|x| !x.is_zero())) {
            steps += 1;
            if steps > ideal.len() + 1 {
                return Err(Error::NotNilpotent);
            }
            let mut next = Vec::new();
            for p in &power {
                for &i in ideal {
                    next.push(self.mul(p, &basis_vec(n, i)));
                }
            }
            power = next;
        }
        let keep: Vec<usize> = (0..n).filter(|i| !ideal.contains(i)).collect();
        if keep.first() != Some(&0) {
            return Err(Error::NotIdeal("ideal contains the unit".into()));
        }
        let mut pos = vec![None; n];
        for (a, &i) in keep.iter().enumerate() {
            pos[i] = Some(a);
        }
        let proj = |v: &SparseVec| -> SparseVec {
            v.iter()
                .filter_map(|(k, c)| pos[*k].map(|a| (a, c.clone())))
                .collect()
        };
        let m = keep.len();
        let mut table = vec![vec![Vec::new(); m]; m];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                table[a][b] = proj(&self.table[i][j]);
            }
        }
        let spec = AlgebraSpec {
            name: format!("{}/I", self.name),
            basis: keep.iter().map(|&i| self.labels[i].clone()).collect(),
            unit: basis_vec(m, 0),
            table,
            degrees: Some(keep.iter().map(|&i| self.degrees[i]).collect()),
            weights: self.weights.as_ref().map(|w| keep.iter().map(|&i| w[i]).collect()),
            differential: None,
        };
        let q = FinDimAlgebra::from_spec(spec)?;
        let pmap = AlgebraMap {
            matrix: SparseRationalMatrix::from_triplets(
                m,
                n,
                keep.iter().enumerate().map(|(a, &i)| (a, i, rat(1))),
            ),
        };
        Ok((q, pmap))
    }
}

impl AlgebraMap {
    pub fn identity(n: usize) -> Self {
        Self {
            matrix: SparseRationalMatrix::identity(n),
        }
    }

    pub fn compose(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap {
            matrix: self.matrix.mul(&first.matrix),
        }
    }

    /// Image of basis vector `i` as sparse coordinates.
    pub fn image(&self, i: usize) -> SparseVec {
        to_sparse(&self.matrix.column(i))
    }
}

fn spec_from_table(name: &str, labels: Vec<String>, table: Vec<Vec<SparseVec>>) -> AlgebraSpec {
    let n = labels.len();
    AlgebraSpec {
        name: name.into(),
        basis: labels,
        unit: basis_vec(n, 0),
        table,
        degrees: None,
        weights: None,
        differential: None,
    }
}

/// The ground field `k`.
pub fn ground_field() -> FinDimAlgebra {
    FinDimAlgebra::from_spec(spec_from_table(
        "k",
        vec!["1".into()],
        vec![vec![vec![(0, rat(1))]]],
    ))
    .expect("ground field is valid")
}

/// `k[ε]/ε²` with weight grading (ε has weight 1).
pub fn dual_numbers() -> FinDimAlgebra {
    truncated_poly(1, 2)
        .map(|a| a.with_name("dual_numbers"))
        .expect("dual numbers are valid")
        .relabel(&["1", "e"])
}

impl FinDimAlgebra {
    fn relabel(mut self, labels: &[&str]) -> Self {
        self.labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }
}

fn var_name(n: usize, i: usize) -> String {
    if n <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn monomial_label(n: usize, e: &[usize]) -> String {
    let mut s = String::new();
    for (i, &k) in e.iter().enumerate() {
        match k {
            0 => {}
            1 => s += &var_name(n, i),
            _ => s += &format!("{}^{}", var_name(n, i), k),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Exponent vectors of total degree `d` in `n` variables, lexicographically
/// decreasing (so `x` precedes `y`).
fn monomials_of_degree(n: usize, d: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(n - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `k[x_1..x_n]` modulo all monomials of total degree `>= cap`, weight graded
/// by total degree. `truncated_poly(1, 3)` is `k[x]/x³`.
pub fn truncated_poly(n: usize, cap: usize) -> Result<FinDimAlgebra> {
    if cap == 0 {
        return Err(Error::UnknownPreset("truncated_poly needs cap >= 1".into()));
    }
    let mons: Vec<Vec<usize>> = (0..cap).flat_map(|d| monomials_of_degree(n, d)).collect();
    let index: BTreeMap<Vec<usize>, usize> =
        mons.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let table = mons
        .iter()
        .map(|a| {
            mons.iter()
                .map(|b| {
                    let c: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    index.get(&c).map(|&k| vec![(k, rat(1))]).unwrap_or_default()
                })
                .collect()
        })
        .collect();
    let mut spec = spec_from_table(
        &format!("truncated_poly({n},{cap})"),
        mons.iter().map(|m| monomial_label(n, m)).collect(),
        table,
    );
    spec.weights = Some(mons.iter().map(|m| m.iter().sum()).collect());
    FinDimAlgebra::from_spec(spec)
}

fn matrix_units(name: &str, n: usize, keep: impl Fn(usize, usize) -> bool) -> Result<FinDimAlgebra> {
    let units: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| keep(i, j))
        .collect();
    let idx: BTreeMap<(usize, usize), usize> =
        units.iter().enumerate().map(|(a, &u)| (u, a)).collect();
    let table = units
        .iter()
        .map(|&(i, j)| {
            units
                .iter()
                .map(|&(k, l)| {
                    if j == k {
                        vec![(idx[&(i, l)], rat(1))]
                    } else {
                        vec![]
                    }
                })
                .collect()
        })
        .collect();
    let mut unit = vec![Rational::zero(); units.len()];
    for i in 0..n {
        unit[idx[&(i, i)]] = rat(1);
    }
    FinDimAlgebra::from_spec(AlgebraSpec {
        name: name.into(),
        basis: units.iter().map(|(i, j)| format!("E{}{}", i + 1, j + 1)).collect(),
        unit,
        table,
        degrees: None,
        weights: None,
        differential: None,
    })
}

/// Full matrix algebra `M_n(k)` on matrix units.
pub fn matrix_algebra(n: usize) -> Result<FinDimAlgebra> {
    if n == 0 {
        return Err(Error::UnknownPreset("matrix_algebra needs n >= 1".into()));
    }
    matrix_units(&format!("M_{n}"), n, |_, _| true)
}

/// Upper triangular `n x n` matrices.
pub fn upper_triangular(n: usize) -> Result<FinDimAlgebra> {
    if n == 0 {
        return Err(Error::UnknownPreset("upper_triangular needs n >= 1".into()));
    }
    matrix_units(&format!("upper_triangular({n})"), n, |i, j| i <= j)
}

/// Lower triangular `n x n` matrices.
pub fn lower_triangular(n: usize) -> Result<FinDimAlgebra> {
    if n == 0 {
        return Err(Error::UnknownPreset("lower_triangular needs n >= 1".into()));
    }
    matrix_units(&format!("lower_triangular({n})"), n, |i, j| i >= j)
}

/// Looks up a builtin by name: `ground_field`, `dual_numbers`,
/// `truncated_poly(n,cap)`, `matrix_algebra(n)`, `upper_triangular(n)`.
pub fn builtin(name: &str) -> Result<FinDimAlgebra> {
    let name = name.trim();
    let (head, args) = match name.split_once('(') {
        Some((h, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownPreset(name.into()))?;
            let args: std::result::Result<Vec<usize>, _> =
                inner.split(',').map(|s| s.trim().parse::<usize>()).collect();
            (h.trim(), args.map_err(|_| Error::UnknownPreset(name.into()))?)
        }
        None => (name, vec![]),
    };
    match (head, args.as_slice()) {
        ("ground_field" | "k", []) => Ok(ground_field()),
        ("dual_numbers" | "dual", []) => Ok(dual_numbers()),
        ("truncated_poly", [n, cap]) => truncated_poly(*n, *cap),
        ("matrix_algebra", [n]) => matrix_algebra(*n),
        ("upper_triangular", [n]) => upper_triangular(*n),
        _ => Err(Error::UnknownPreset(name.into())),
    }
}

/// `A ⊗ B` with `(a⊗b)(a'⊗b') = (-1)^{|a'||b|} aa'⊗bb'`, together with the
/// unit embeddings `a ↦ a⊗1` and `b ↦ 1⊗b`.
pub fn tensor_product(a: &FinDimAlgebra, b: &FinDimAlgebra) -> (FinDimAlgebra, AlgebraMap, AlgebraMap) {
    let (na, nb) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * nb + j;
    let mut table = vec![vec![Vec::new(); na * nb]; na * nb];
    for i in 0..na {
        for j in 0..nb {
            for k in 0..na {
                for l in 0..nb {
                    let sign = if (b.degrees[j] * a.degrees[k]).rem_euclid(2) == 1 {
                        rat(-1)
                    } else {
                        rat(1)
                    };
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (p, c) in a.mul_basis(i, k) {
                        for (q, d) in b.mul_basis(j, l) {
                            *acc.entry(idx(*p, *q)).or_insert_with(Rational::zero) += &sign * c * d;
                        }
                    }
                    table[idx(i, j)][idx(k, l)] =
                        acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                }
            }
        }
    }
    let labels = (0..na)
        .flat_map(|i| (0..nb).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}⊗{}", a.labels[i], b.labels[j]))
        .collect();
    let degrees = (0..na)
        .flat_map(|i| (0..nb).map(move |j| a.degrees[i] + b.degrees[j]))
        .collect();
    let weights = match (&a.weights, &b.weights) {
        (Some(wa), Some(wb)) => Some(
            (0..na)
                .flat_map(|i| (0..nb).map(move |j| wa[i] + wb[j]))
                .collect(),
        ),
        _ => None,
    };
    let differential = if a.differential.is_some() || b.differential.is_some() {
        let da = a.differential.clone().unwrap_or_else(|| SparseRationalMatrix::zero(na, na));
        let db = b.differential.clone().unwrap_or_else(|| SparseRationalMatrix::zero(nb, nb));
        let mut entries = Vec::new();
        for i in 0..na {
            for j in 0..nb {
                for (r, c, v) in da.triplets() {
                    if c == i {
                        entries.push((idx(r, j), idx(i, j), v.clone()));
                    }
                }
                let sign = if a.degrees[i].rem_euclid(2) == 1 { rat(-1) } else { rat(1) };
                for (r, c, v) in db.triplets() {
                    if c == j {
                        entries.push((idx(i, r), idx(i, j), &sign * v));
                    }
                }
            }
        }
        Some(SparseRationalMatrix::from_triplets(na * nb, na * nb, entries))
    } else {
        None
    };
    let spec = AlgebraSpec {
        name: format!("{}⊗{}", a.name, b.name),
        basis: labels,
        unit: basis_vec(na * nb, 0),
        table,
        degrees: Some(degrees),
        weights,
        differential,
    };
    let prod = FinDimAlgebra::from_spec(spec).expect("tensor product of valid algebras is valid");
    let left = AlgebraMap {
        matrix: SparseRationalMatrix::from_triplets(na * nb, na, (0..na).map(|i| (idx(i, 0), i, rat(1)))),
    };
    let right = AlgebraMap {
        matrix: SparseRationalMatrix::from_triplets(na * nb, nb, (0..nb).map(|j| (idx(0, j), j, rat(1)))),
    };
    (prod, left, right)
}

/// Opposite algebra: `e_i ·op e_j = (-1)^{|i||j|} e_j e_i`.
pub fn opposite(a: &FinDimAlgebra) -> FinDimAlgebra {
    let n = a.dim();
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let odd = (a.degrees[i] * a.degrees[j]).rem_euclid(2) == 1;
                    a.table[j][i]
                        .iter()
                        .map(|(k, c)| (*k, if odd { -c.clone() } else { c.clone() }))
                        .collect()
                })
                .collect()
        })
        .collect();
    let name = match a.name.strip_suffix("^op") {
        Some(base) => base.to_string(),
        None => format!("{}^op", a.name),
    };
    FinDimAlgebra {
        name,
        labels: a.labels.clone(),
        table,
        degrees: a.degrees.clone(),
        weights: a.weights.clone(),
        differential: a.differential.clone(),
    }
}

/// Unitalization `Ã = k·1 ⊕ A` of a (possibly non-unital) associative table.
pub fn adjoin_unit(name: &str, labels: &[String], table: &[Vec<SparseVec>]) -> Result<FinDimAlgebra> {
    let n = labels.len();
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidAlgebra("table shape mismatch".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let ij = to_dense(&table[i][j], n);
            for k in 0..n {
                let lhs = mul_vecs(table, &ij, &basis_vec(n, k));
                let rhs = mul_vecs(table, &basis_vec(n, i), &to_dense(&table[j][k], n));
                if lhs != rhs {
                    return Err(Error::NotAssociative(format!(
                        "({} {}) {}",
                        labels[i], labels[j], labels[k]
                    )));
                }
            }
        }
    }
    let m = n + 1;
    let mut t = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        t[0][i] = vec![(i, rat(1))];
        t[i][0] = vec![(i, rat(1))];
    }
    for i in 0..n {
        for j in 0..n {
            t[i + 1][j + 1] = table[i][j].iter().map(|(k, c)| (k + 1, c.clone())).collect();
        }
    }
    let mut basis = vec!["1".to_string()];
    basis.extend(labels.iter().cloned());
    FinDimAlgebra::from_spec(spec_from_table(name, basis, t))
}

// ---------------------------------------------------------------------------
// file format

pub(crate) fn value_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(rat(i)),
            None => Err(Error::Parse(format!("non-integer number {n}; use \"p/q\""))),
        },
        _ => Err(Error::Parse(format!("expected a rational, found {v}"))),
    }
}

pub(crate) fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("{what}: expected a non-negative integer")))
}

fn parse_coeff_list(v: &Value, n: usize) -> Result<SparseVec> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse("expected [[k, \"p/q\"], ...]".into()))?;
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for pair in arr {
        let p = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Parse("expected [k, \"p/q\"]".into()))?;
        let k = as_usize(&p[0], "basis index")?;
        if k >= n {
            return Err(Error::Parse(format!("basis index {k} out of range")));
        }
        *acc.entry(k).or_insert_with(Rational::zero) += value_to_rational(&p[1])?;
    }
    Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}

/// Parses the JSON algebra file format.
pub fn parse_algebra_json(text: &str) -> Result<AlgebraSpec> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    let name = obj
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("algebra")
        .to_string();
    let basis: Vec<String> = obj
        .get("basis")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `basis`".into()))?
        .iter()
        .map(|b| {
            b.as_str()
                .map(str::to_string)
                .ok_or_else(|| Error::Parse("basis labels must be strings".into()))
        })
        .collect::<Result<_>>()?;
    let n = basis.len();
    if n == 0 {
        return Err(Error::Parse("empty basis".into()));
    }
    let unit = match obj.get("unit") {
        Some(Value::String(label)) => {
            let i = basis
                .iter()
                .position(|b| b == label)
                .ok_or_else(|| Error::Parse(format!("unknown unit label `{label}`")))?;
            basis_vec(n, i)
        }
        Some(Value::Array(coords)) => {
            if coords.len() != n {
                return Err(Error::Parse("unit has wrong length".into()));
            }
            coords.iter().map(value_to_rational).collect::<Result<_>>()?
        }
        _ => return Err(Error::Parse("missing `unit`".into())),
    };
    let mut table = vec![vec![Vec::new(); n]; n];
    for entry in obj
        .get("table")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `table`".into()))?
    {
        let e = entry
            .as_array()
            .filter(|e| e.len() == 3)
            .ok_or_else(|| Error::Parse("table entries are [i, j, [[k, \"p/q\"], ...]]".into()))?;
        let i = as_usize(&e[0], "table row")?;
        let j = as_usize(&e[1], "table column")?;
        if i >= n || j >= n {
            return Err(Error::Parse(format!("table index ({i},{j}) out of range")));
        }
        table[i][j] = parse_coeff_list(&e[2], n)?;
    }
    let degrees = match obj.get("degrees") {
        None | Some(Value::Null) => None,
        Some(Value::Array(d)) => Some(
            d.iter()
                .map(|x| x.as_i64().ok_or_else(|| Error::Parse("degrees must be integers".into())))
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => return Err(Error::Parse("`degrees` must be an array".into())),
    };
    let weights = match obj.get("weights") {
        None | Some(Value::Null) => None,
        Some(Value::Array(w)) => Some(
            w.iter()
                .map(|x| as_usize(x, "weight"))
                .collect::<Result<Vec<_>>>()?,
        ),
        _ => return Err(Error::Parse("`weights` must be an array".into())),
    };
    let differential = match obj.get("differential") {
        None | Some(Value::Null) => None,
        Some(Value::Array(cols)) => {
            // entry i lists the image of e_i
            if cols.len() != n {
                return Err(Error::Parse("differential must list one image per basis element".into()));
            }
            let cols = cols
                .iter()
                .map(|c| parse_coeff_list(c, n))
                .collect::<Result<Vec<_>>>()?;
            Some(SparseRationalMatrix::from_sparse_columns(n, &cols))
        }
        _ => return Err(Error::Parse("`differential` must be an array".into())),
    };
    Ok(AlgebraSpec {
        name,
        basis,
        unit,
        table,
        degrees,
        weights,
        differential,
    })
}

/// Serializes a presentation in the JSON file format.
pub fn algebra_to_json(spec: &AlgebraSpec) -> Value {
    let coeffs = |v: &SparseVec| -> Value {
        Value::Array(
            v.iter()
                .map(|(k, c)| serde_json::json!([k, format_rational(c)]))
                .collect(),
        )
    };
    let mut table = Vec::new();
    for (i, row) in spec.table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_empty() {
                table.push(serde_json::json!([i, j, coeffs(v)]));
            }
        }
    }
    let mut obj = serde_json::Map::new();
    obj.insert("name".into(), Value::String(spec.name.clone()));
    obj.insert("basis".into(), serde_json::json!(spec.basis));
    obj.insert(
        "unit".into(),
        Value::Array(spec.unit.iter().map(|c| Value::String(format_rational(c))).collect()),
    );
    obj.insert("table".into(), Value::Array(table));
    if let Some(d) = &spec.degrees {
        obj.insert("degrees".into(), serde_json::json!(d));
    }
    if let Some(w) = &spec.weights {
        obj.insert("weights".into(), serde_json::json!(w));
    }
    if let Some(d) = &spec.differential {
        let cols: Vec<Value> = d.columns_sparse().iter().map(coeffs).collect();
        obj.insert("differential".into(), Value::Array(cols));
    }
    Value::Object(obj)
}

/// Loads and validates an algebra from JSON text.
pub fn load_algebra(text: &str) -> Result<FinDimAlgebra> {
    FinDimAlgebra::from_spec(parse_algebra_json(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for a in [
            ground_field(),
            dual_numbers(),
            truncated_poly(1, 3).unwrap(),
            truncated_poly(2, 4).unwrap(),
            matrix_algebra(2).unwrap(),
            upper_triangular(2).unwrap(),
            upper_triangular(3).unwrap(),
        ] {
            assert!(a.validate().passed(), "{} failed", a.name());
        }
    }

    #[test]
    fn dims() {
        assert_eq!(ground_field().dim(), 1);
        let d = dual_numbers();
        assert_eq!(d.dim(), 2);
        assert!(d.mul_basis(1, 1).is_empty());
        assert_eq!(truncated_poly(2, 4).unwrap().dim(), 10);
        let m = matrix_algebra(2).unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.center_basis().len(), 1);
    }

    #[test]
    fn matrix_unit_relations_after_basis_change() {
        // unit E11+E22 is not a basis vector; the normalized basis is 1, E12, E21, E22
        let m = matrix_algebra(2).unwrap();
        assert_eq!(m.labels(), &["1", "E12", "E21", "E22"]);
        // E12 E21 = E11 = 1 - E22
        assert_eq!(m.mul_basis(1, 2), &vec![(0, rat(1)), (3, rat(-1))]);
    }

    #[test]
    fn broken_unit_has_witness() {
        let spec = AlgebraSpec {
            name: "broken".into(),
            basis: vec!["e".into(), "f".into()],
            unit: vec![rat(0), rat(1)],
            table: vec![
                vec![vec![(0, rat(1))], vec![]],
                vec![vec![], vec![(1, rat(1))]],
            ],
            degrees: None,
            weights: None,
            differential: None,
        };
        let r = validate(&spec);
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().name, "unit");
        assert!(r.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn tensor_of_duals() {
        let d = dual_numbers();
        let (t, _, _) = tensor_product(&d, &d);
        assert_eq!(t.dim(), 4);
        assert!(t.validate().passed());
        // e⊗1 is index 2, 1⊗e is index 1
        assert!(t.mul_basis(2, 2).is_empty());
        assert!(t.mul_basis(1, 1).is_empty());
        assert_eq!(t.mul_basis(1, 2), t.mul_basis(2, 1));
    }

    #[test]
    fn opposite_involution() {
        let u = upper_triangular(2).unwrap();
        let uu = opposite(&opposite(&u));
        assert_eq!(uu.to_spec().table, u.to_spec().table);
        let d = dual_numbers();
        assert_eq!(opposite(&d).to_spec().table, d.to_spec().table);
    }

    #[test]
    fn adjoin_to_square_zero() {
        let a = adjoin_unit("n", &["n".into()], &[vec![vec![]]]).unwrap();
        assert_eq!(a.to_spec().table, dual_numbers().to_spec().table);
    }

    #[test]
    fn json_round_trip() {
        let m = matrix_algebra(2).unwrap();
        let text = algebra_to_json(&m.to_spec()).to_string();
        let back = load_algebra(&text).unwrap();
        assert_eq!(back.to_spec().table, m.to_spec().table);
        assert!(matches!(builtin("nope"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn quotient_of_dual_is_field() {
        let d = dual_numbers();
        let (q, p) = d.quotient_by_basis_ideal(&[1]).unwrap();
        assert_eq!(q.dim(), 1);
        d.check_algebra_map(&q, &p).unwrap();
        assert!(matches!(
            matrix_algebra(2).unwrap().quotient_by_basis_ideal(&[1]),
            Err(Error::NotIdeal(_))
        ));
    }
}
