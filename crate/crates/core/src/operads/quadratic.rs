//! Binary quadratic presentations, their Koszul duals, and the named operads.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::collection::SymmetricCollection;
use super::free::{FreeOperad, Operad};
use super::perm::parity;
use super::tree::Tree;
use crate::error::{Error, Result};
use crate::exact_linalg::{rat, to_dense, to_sparse, Echelon, Rational, SpanSolver, SparseRationalMatrix};
use crate::report::Check;

const TRANSPOSITION: [usize; 3] = [1, 0, 2];
const CYCLE: [usize; 3] = [1, 2, 0];

/// Binary generators `V = V(2)` and a `Σ_3`-stable space of relations
/// `R ⊂ FreeOp(V)(3)`, stored as an echelon basis.
#[derive(Clone, Debug)]
pub struct OperadPresentation {
    pub name: String,
    free: FreeOperad,
    relations: Vec<Vec<Rational>>,
}

impl OperadPresentation {
    pub fn new(name: impl Into<String>, generators: SymmetricCollection, relations: Vec<Vec<Rational>>) -> Result<Self> {
        if generators.arities().any(|n| n != 2) {
            return Err(Error::Unsupported("quadratic presentations need generators in arity 2 only".into()));
        }
        let free = FreeOperad::new(generators, 3)?;
        let d = free.dim(3)?;
        let mut span = Echelon::new();
        let mut basis = Vec::new();
        for r in relations {
            if r.len() != d {
                return Err(Error::ShapeMismatch(format!("relation of length {} in a space of dimension {d}", r.len())));
            }
            if span.insert(to_sparse(&r)) {
                basis.push(r);
            }
        }
        for r in &basis {
            for g in [&TRANSPOSITION, &CYCLE] {
                if !span.contains(to_sparse(&free.act(3, g, r)?)) {
                    return Err(Error::InvalidCollection("relations are not Σ_3-stable".into()));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            free,
            relations: basis,
        })
    }

    /// Presentation whose relations are the `Σ_3`-span of `seeds`.
    pub fn from_seeds(name: impl Into<String>, generators: SymmetricCollection, seeds: Vec<Vec<Rational>>) -> Result<Self> {
        let free = FreeOperad::new(generators.clone(), 3)?;
        let mut span = Echelon::new();
        let mut out: Vec<Vec<Rational>> = Vec::new();
        let mut queue = seeds;
        while let Some(r) = queue.pop() {
            if span.insert(to_sparse(&r)) {
                for g in [&TRANSPOSITION, &CYCLE] {
                    queue.push(free.act(3, g, &r)?);
                }
                out.push(r);
            }
        }
        Self::new(name, generators, out)
    }

    pub fn generators(&self) -> &SymmetricCollection {
        &self.free.generators
    }

    pub fn free(&self) -> &FreeOperad {
        &self.free
    }

    pub fn relations(&self) -> &[Vec<Rational>] {
        &self.relations
    }

    /// `dim P(3) = dim FreeOp(V)(3) − dim R`.
    pub fn arity3_dim(&self) -> usize {
        self.free.dim(3).expect("arity 3 built") - self.relations.len()
    }

    /// `dim P(n)` for `n = 1, 2, 3`.
    pub fn dims(&self) -> [usize; 3] {
        [1, self.generators().dim(2), self.arity3_dim()]
    }

    /// Arity-3 quotient dimensions by total generator degree.
    pub fn arity3_graded_dims(&self) -> BTreeMap<i64, usize> {
        let d = self.free.dim(3).expect("arity 3 built");
        let deg: Vec<i64> = (0..d).map(|i| self.free.degree(3, i)).collect();
        let mut out = BTreeMap::new();
        for &g in &deg {
            *out.entry(g).or_insert(0) += 1;
        }
        for (g, count) in out.iter_mut() {
            // dim (R ∩ F_g) = dim R − rank of R projected away from F_g
            let rows: Vec<Vec<Rational>> = self
                .relations
                .iter()
                .map(|r| r.iter().zip(&deg).map(|(x, dg)| if dg == g { Rational::zero() } else { x.clone() }).collect())
                .collect();
            let away = if rows.is_empty() { 0 } else { SparseRationalMatrix::from_dense(&rows).rank() };
            *count -= self.relations.len() - away;
        }
        out
    }

    /// The operad presented, truncated at arity 3.
    pub fn quotient(&self) -> Result<PresentedOperad> {
        PresentedOperad::new(self.clone())
    }
}

/// `⟨x, ξ⟩` between `FreeOp(V)(3)` and `FreeOp(V∨)(3)`: both trees are written
/// as `((x_a, x_b), x_c)` (moving the root decoration by the transposition
/// when leaf 0 hangs off the root), and the pairing is
/// `sgn(a b c) ⟨root, root∨⟩⟨inner, inner∨⟩`.
pub fn pairing_matrix(free: &FreeOperad, dual: &FreeOperad) -> Result<SparseRationalMatrix> {
    let (b, bd) = (free.basis(3)?, dual.basis(3)?);
    let rho = free.generators.act(2, &[1, 0]);
    let rho_d = dual.generators.act(2, &[1, 0]);
    let mut entries = Vec::new();
    for (i, (t, decs)) in b.iter().enumerate() {
        for (j, (td, decs_d)) in bd.iter().enumerate() {
            if t != td || decs[1] != decs_d[1] {
                continue;
            }
            let Tree::Node(ch) = t else { continue };
            let (order, root) = match (&ch[0], &ch[1]) {
                (Tree::Node(inner), Tree::Leaf(c)) => {
                    let (Tree::Leaf(a), Tree::Leaf(b)) = (&inner[0], &inner[1]) else { continue };
                    (vec![*a, *b, *c], if decs[0] == decs_d[0] { rat(1) } else { rat(0) })
                }
                (Tree::Leaf(c), Tree::Node(inner)) => {
                    let (Tree::Leaf(a), Tree::Leaf(b)) = (&inner[0], &inner[1]) else { continue };
                    let mut s = Rational::zero();
                    for r in 0..rho.rows() {
                        s += rho.get(r, decs[0]) * rho_d.get(r, decs_d[0]);
                    }
                    (vec![*a, *b, *c], s)
                }
                _ => continue,
            };
            let v = if parity(&order) == 1 { -root } else { root };
            if !v.is_zero() {
                entries.push((i, j, v));
            }
        }
    }
    Ok(SparseRationalMatrix::from_triplets(b.len(), bd.len(), entries))
}

/// `P∨`: generators `V∨ = V* ⊗ sgn` with `ρ∨(σ) = sgn(σ) ρ(σ^{-1})^T` and
/// relations `R⊥` under [`pairing_matrix`].
pub fn quadratic_dual(p: &OperadPresentation) -> Result<OperadPresentation> {
    let dual_gens = p.generators().dual_sign_twist(&format!("{}^v", p.generators().name))?;
    let dual_free = FreeOperad::new(dual_gens.clone(), 3)?;
    let g = pairing_matrix(p.free(), &dual_free)?;
    let d = dual_free.dim(3)?;
    let perp = if p.relations.is_empty() {
        (0..d).map(|i| unit(d, i)).collect()
    } else {
        let r = SparseRationalMatrix::from_dense(&p.relations);
        r.mul(&g).kernel_basis()
    };
    OperadPresentation::new(format!("{}^v", p.name), dual_gens, perp)
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::one();
    v
}

fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let mut e = Echelon::new();
    for v in a {
        e.insert(to_sparse(v));
    }
    a.len() == b.len() && b.iter().all(|v| e.contains(to_sparse(v)))
}

/// `g(x) = Σ dim P(n) xⁿ/n!` truncated after `x³`.
fn series(dims: [usize; 3]) -> [Rational; 4] {
    [
        Rational::zero(),
        rat(dims[0] as i64),
        Rational::new((dims[1] as i64).into(), 2.into()),
        Rational::new((dims[2] as i64).into(), 6.into()),
    ]
}

fn compose_series(g: &[Rational; 4], h: &[Rational; 4]) -> [Rational; 4] {
    let mul = |a: &[Rational; 4], b: &[Rational; 4]| {
        let mut c: [Rational; 4] = Default::default();
        for i in 0..4 {
            for j in 0..4 - i {
                c[i + j] += &a[i] * &b[j];
            }
        }
        c
    };
    let mut out: [Rational; 4] = Default::default();
    let mut pow: [Rational; 4] = [Rational::one(), Rational::zero(), Rational::zero(), Rational::zero()];
    for coef in g.iter() {
        for i in 0..4 {
            out[i] += coef * &pow[i];
        }
        pow = mul(&pow, h);
    }
    out
}

/// Result of [`duality_report`].
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub name: String,
    pub relations: usize,
    pub dual_relations: usize,
    pub dims: [usize; 3],
    pub dual_dims: [usize; 3],
    pub checks: Vec<Check>,
}

/// Computes `P∨` and checks `Σ_3`-stability of `R⊥`, involutivity
/// `(P∨)∨ = P` as presentations, and `g_P(−g_{P∨}(−x)) = x` modulo `x⁴`.
pub fn duality_report(p: &OperadPresentation) -> Result<DualityReport> {
    let mut checks = Vec::new();
    let dual = match quadratic_dual(p) {
        Ok(d) => {
            checks.push(Check::pass("dual relations are Σ_3-stable"));
            d
        }
        Err(Error::InvalidCollection(m)) => {
            checks.push(Check::fail("dual relations are Σ_3-stable", m));
            return Ok(DualityReport {
                name: p.name.clone(),
                relations: p.relations.len(),
                dual_relations: 0,
                dims: p.dims(),
                dual_dims: [0; 3],
                checks,
            });
        }
        Err(e) => return Err(e),
    };
    let back = quadratic_dual(&dual)?;
    let gens_back = [[1, 0]].iter().all(|s| back.generators().act(2, s) == p.generators().act(2, s));
    checks.push(Check::from_bool(
        "dual is involutive",
        gens_back && same_span(back.relations(), p.relations()),
        || format!("relations {} vs {}", back.relations().len(), p.relations().len()),
    ));
    let mut h = series(dual.dims());
    for (i, c) in h.iter_mut().enumerate() {
        if i % 2 == 0 {
            *c = -c.clone();
        }
    }
    // h(x) = −g∨(−x)
    let composed = compose_series(&series(p.dims()), &h);
    let target = [Rational::zero(), Rational::one(), Rational::zero(), Rational::zero()];
    checks.push(Check::from_bool("g_P(-g_dual(-x)) = x mod x^4", composed == target, || {
        format!("{composed:?}")
    }));
    Ok(DualityReport {
        name: p.name.clone(),
        relations: p.relations.len(),
        dual_relations: dual.relations().len(),
        dims: p.dims(),
        dual_dims: dual.dims(),
        checks,
    })
}

/// Quotient `FreeOp(V)/(R)` in arities `1..=3`. The basis of `P(3)` is the
/// set of standard basis vectors of `FreeOp(V)(3)` not in the span of `R`
/// and of earlier ones.
#[derive(Clone, Debug)]
pub struct PresentedOperad {
    presentation: OperadPresentation,
    complement: Vec<usize>,
    solver: SpanSolver,
}

impl PresentedOperad {
    fn new(presentation: OperadPresentation) -> Result<Self> {
        let d = presentation.free.dim(3)?;
        let mut solver = SpanSolver::new();
        for r in &presentation.relations {
            solver.insert(to_sparse(r));
        }
        let mut complement = Vec::new();
        for i in 0..d {
            if solver.insert(vec![(i, Rational::one())]).is_none() {
                complement.push(i);
            }
        }
        Ok(Self {
            presentation,
            complement,
            solver,
        })
    }

    fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let c = self.solver.express(to_sparse(v)).expect("spanning set");
        let dense = to_dense(&c, self.solver.generators());
        let nr = self.presentation.relations.len();
        self.complement.iter().map(|&i| dense[nr + i].clone()).collect()
    }

    fn lift(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        let mut out = vec![Rational::zero(); self.presentation.free.dim(3)?];
        for (c, &i) in x.iter().zip(&self.complement) {
            out[i] = c.clone();
        }
        Ok(out)
    }
}

impl Operad for PresentedOperad {
    fn name(&self) -> String {
        self.presentation.name.clone()
    }

    fn max_arity(&self) -> usize {
        3
    }

    fn dim(&self, n: usize) -> Result<usize> {
        match n {
            0 => Ok(0),
            1 => Ok(1),
            2 => Ok(self.presentation.generators().dim(2)),
            3 => Ok(self.complement.len()),
            _ => Err(Error::ArityBound(n)),
        }
    }

    fn act(&self, n: usize, perm: &[usize], x: &[Rational]) -> Result<Vec<Rational>> {
        if n == 3 {
            if x.len() != self.complement.len() {
                return Err(Error::ShapeMismatch(format!("element of length {} in P(3)", x.len())));
            }
            let y = self.presentation.free.act(3, perm, &self.lift(x)?)?;
            return Ok(self.project(&y));
        }
        self.dim(n)?;
        self.presentation.free.act(n, perm, x)
    }

    fn compose_at(&self, m: usize, i: usize, x: &[Rational], k: usize, y: &[Rational]) -> Result<Vec<Rational>> {
        if m + k - 1 > 3 {
            return Err(Error::ArityBound(m + k - 1));
        }
        match (m, k) {
            (1, _) | (_, 1) => {
                let (lx, ly) = if m == 3 { (self.lift(x)?, y.to_vec()) } else if k == 3 { (x.to_vec(), self.lift(y)?) } else { (x.to_vec(), y.to_vec()) };
                let z = self.presentation.free.compose_at(m, i, &lx, k, &ly)?;
                Ok(if m + k - 1 == 3 { self.project(&z) } else { z })
            }
            _ => Ok(self.project(&self.presentation.free.compose_at(m, i, x, k, y)?)),
        }
    }

    fn unit(&self) -> Vec<Rational> {
        vec![Rational::one()]
    }
}

fn sum(a: &[Rational], b: &[Rational], s: i64) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y * rat(s)).collect()
}

/// Sum of `ρ(c^k) x` over the cyclic group generated by `c = (1 2 0)`.
fn cyclic_sum(free: &FreeOperad, x: &[Rational]) -> Result<Vec<Rational>> {
    let once = free.act(3, &CYCLE, x)?;
    let twice = free.act(3, &CYCLE, &once)?;
    Ok(sum(&sum(x, &once, 1), &twice, 1))
}

/// `As`, `Com`, `Lie` and `Gerst` as binary quadratic presentations. `Gerst`
/// has a commutative product of degree 0 and a symmetric bracket of degree 1;
/// its relations are associativity, the Jacobi sum and the Leibniz rule,
/// written without Koszul signs.
pub fn preset_presentation(name: &str) -> Result<OperadPresentation> {
    let key = name.to_ascii_lowercase();
    let gens = match key.as_str() {
        "as" => SymmetricCollection::binary_regular("As(2)"),
        "com" => SymmetricCollection::binary_one("Com(2)", false),
        "lie" => SymmetricCollection::binary_one("Lie(2)", true),
        "gerst" => SymmetricCollection::binary_trivial("Gerst(2)", vec![0, 1]),
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    let free = FreeOperad::new(gens.clone(), 3)?;
    let g = |j: usize| free.generator(2, j);
    let c = |x: &[Rational], i: usize, y: &[Rational]| free.compose_at(2, i, x, 2, y);
    let (m, b) = (g(0)?, if gens.dim(2) > 1 { g(1)? } else { g(0)? });
    let assoc = sum(&c(&m, 0, &m)?, &c(&m, 1, &m)?, -1);
    let seeds = match key.as_str() {
        "as" | "com" => vec![assoc],
        "lie" => vec![cyclic_sum(&free, &c(&m, 0, &m)?)?],
        _ => {
            let jacobi = cyclic_sum(&free, &c(&b, 0, &b)?)?;
            // b(m(x0, x1), x2) − m(x0, b(x1, x2)) − m(b(x0, x2), x1)
            let swapped = free.act(3, &[0, 2, 1], &c(&m, 0, &b)?)?;
            let leibniz = sum(&sum(&c(&b, 0, &m)?, &c(&m, 1, &b)?, -1), &swapped, -1);
            vec![assoc, jacobi, leibniz]
        }
    };
    let display = match key.as_str() {
        "as" => "As",
        "com" => "Com",
        "lie" => "Lie",
        _ => "Gerst",
    };
    OperadPresentation::from_seeds(display, gens, seeds)
}

/// Dimension of a named operad in arity `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedDims {
    pub name: String,
    pub arity: usize,
    pub total: u64,
    /// Dimensions by degree, for graded operads.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded: Option<Vec<u64>>,
}

/// `As(n) = n!`, `Com(n) = 1`, `Lie(n) = (n−1)!`, and `Gerst(n)` with graded
/// dimensions the coefficients of `∏_{k=1}^{n−1} (1 + k t)` for `n ≤ 5`.
pub fn named_operad_dims(name: &str, n: usize) -> Result<NamedDims> {
    let key = name.to_ascii_lowercase();
    let fact = |m: usize| (1..=m as u64).product::<u64>();
    if n == 0 || n > 20 {
        return Err(Error::Bound(format!("arity {n} outside 1..=20")));
    }
    let (display, total, graded) = match key.as_str() {
        "as" => ("As", fact(n), None),
        "com" => ("Com", 1, None),
        "lie" => ("Lie", fact(n - 1), None),
        "gerst" => {
            if n > 5 {
                return Err(Error::Bound(format!("Gerst dimensions are tabulated for n ≤ 5, got {n}")));
            }
            let mut poly = vec![1u64];
            for k in 1..n as u64 {
                let mut next = vec![0u64; poly.len() + 1];
                for (i, &c) in poly.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] += k * c;
                }
                poly = next;
            }
            ("Gerst", poly.iter().sum(), Some(poly))
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    Ok(NamedDims {
        name: display.to_string(),
        arity: n,
        total,
        graded,
    })
}
