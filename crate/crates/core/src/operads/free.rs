//! Operads with explicit bases: free operads on a collection and
//! endomorphism operads of `k^w`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::collection::SymmetricCollection;
use super::perm::{identity, inverse};
use super::tree::{canonical_trees, DTree, Tree};
use super::apply_sparse;
use crate::error::{Error, Result};
use crate::exact_linalg::{Rational, SparseVec};

/// A symmetric operad with a chosen basis of each `P(n)`. Elements are dense
/// coordinate vectors. `ρ(π)` relabels inputs so that new input `p` is old
/// input `π(p)`; `x ∘_i y` plugs `y` into input `i` (0-based), the inputs of
/// the result being those of `x` before `i`, then those of `y`, then the rest.
pub trait Operad {
    fn name(&self) -> String;
    fn max_arity(&self) -> usize;
    fn dim(&self, n: usize) -> Result<usize>;
    fn act(&self, n: usize, perm: &[usize], x: &[Rational]) -> Result<Vec<Rational>>;
    fn compose_at(&self, m: usize, i: usize, x: &[Rational], k: usize, y: &[Rational]) -> Result<Vec<Rational>>;
    fn unit(&self) -> Vec<Rational>;
    fn has_differential(&self) -> bool {
        false
    }
}

fn check_len<P: Operad + ?Sized>(p: &P, n: usize, x: &[Rational]) -> Result<()> {
    let d = p.dim(n)?;
    if x.len() != d {
        return Err(Error::ShapeMismatch(format!(
            "element of length {} given for {}({n}) of dimension {d}",
            x.len(),
            p.name()
        )));
    }
    Ok(())
}

fn check_compose<P: Operad + ?Sized>(p: &P, m: usize, i: usize, x: &[Rational], k: usize, y: &[Rational]) -> Result<()> {
    if i >= m {
        return Err(Error::ShapeMismatch(format!("∘_{i} on an operation of arity {m}")));
    }
    if m + k - 1 > p.max_arity() {
        return Err(Error::ArityBound(m + k - 1));
    }
    check_len(p, m, x)?;
    check_len(p, k, y)
}

fn check_perm(n: usize, perm: &[usize]) -> Result<()> {
    let mut s = perm.to_vec();
    s.sort();
    if s != identity(n) {
        return Err(Error::ShapeMismatch(format!("{perm:?} is not a permutation of {n} inputs")));
    }
    Ok(())
}

/// `FreeOp(V)` up to a maximal arity. The basis of `FreeOp(V)(n)` is the set
/// of canonical trees on leaves `0..n` with a basis vector of `V` at each
/// vertex; `FreeOp(V)(1)` is spanned by the unit.
#[derive(Clone, Debug)]
pub struct FreeOperad {
    pub generators: SymmetricCollection,
    bound: usize,
    bases: Vec<Vec<(Tree, Vec<usize>)>>,
    index: Vec<HashMap<(Tree, Vec<usize>), usize>>,
}

/// Largest arity accepted by [`FreeOperad::new`].
pub const FREE_ARITY_BOUND: usize = 7;

impl FreeOperad {
    pub fn new(generators: SymmetricCollection, bound: usize) -> Result<Self> {
        if bound > FREE_ARITY_BOUND {
            return Err(Error::ArityBound(bound));
        }
        let mut bases = vec![Vec::new()];
        for n in 1..=bound {
            let trees = canonical_trees((1u64 << n) - 1, &|k| generators.dim(k) > 0, n.saturating_sub(1));
            let mut b = Vec::new();
            for t in trees {
                let dims: Vec<usize> = t.arities().iter().map(|&k| generators.dim(k)).collect();
                for decs in product(&dims) {
                    b.push((t.clone(), decs));
                }
            }
            bases.push(b);
        }
        let index = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
            .collect();
        Ok(Self {
            generators,
            bound,
            bases,
            index,
        })
    }

    pub fn basis(&self, n: usize) -> Result<&[(Tree, Vec<usize>)]> {
        if n > self.bound {
            return Err(Error::ArityBound(n));
        }
        Ok(&self.bases[n])
    }

    pub fn index_of(&self, n: usize, key: &(Tree, Vec<usize>)) -> Option<usize> {
        self.index.get(n)?.get(key).copied()
    }

    /// Number of generator vertices of a basis element.
    pub fn weight(&self, n: usize, i: usize) -> usize {
        self.bases[n][i].1.len()
    }

    /// Sum of generator degrees over the vertices of a basis element.
    pub fn degree(&self, n: usize, i: usize) -> i64 {
        let (t, decs) = &self.bases[n][i];
        t.arities()
            .iter()
            .zip(decs)
            .map(|(&k, &d)| self.generators.component(k).map_or(0, |c| c.degrees[d]))
            .sum()
    }

    /// Basis vector of the generator `V(k)_j` seen as a corolla.
    pub fn generator(&self, k: usize, j: usize) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.dim(k)?];
        let i = self
            .index_of(k, &(Tree::corolla(k), vec![j]))
            .ok_or_else(|| Error::ShapeMismatch(format!("no generator {j} in arity {k}")))?;
        v[i] = Rational::one();
        Ok(v)
    }

    pub(crate) fn act_decoration(&self) -> impl Fn(usize, &[usize], &SparseVec) -> SparseVec + '_ {
        |k, pi, x| apply_sparse(self.generators.component(k).expect("decorated arity").act(pi), x)
    }

    /// Coordinates of a decorated tree on leaves `0..n`.
    pub fn coordinates(&self, n: usize, t: DTree, coef: &Rational) -> Result<Vec<Rational>> {
        let mut terms = BTreeMap::new();
        t.canonicalize(&self.act_decoration()).expand_into(coef, &mut terms);
        let mut out = vec![Rational::zero(); self.dim(n)?];
        for (k, c) in terms {
            let i = self
                .index_of(n, &k)
                .ok_or_else(|| Error::ShapeMismatch(format!("tree {:?} is not in arity {n}", k.0)))?;
            out[i] += c;
        }
        Ok(out)
    }

    fn dtree(&self, n: usize, i: usize) -> DTree {
        let (t, decs) = &self.bases[n][i];
        t.decorate(decs)
    }
}

/// All index tuples below `dims`, lexicographically.
pub(crate) fn product(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &d in dims {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..d).map(move |j| {
                    let mut q = p.clone();
                    q.push(j);
                    q
                })
            })
            .collect();
    }
    out
}

impl Operad for FreeOperad {
    fn name(&self) -> String {
        format!("FreeOp({})", self.generators.name)
    }

    fn max_arity(&self) -> usize {
        self.bound
    }

    fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.basis(n)?.len())
    }

    fn act(&self, n: usize, perm: &[usize], x: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self, n, x)?;
        check_perm(n, perm)?;
        let inv = inverse(perm);
        let mut out = vec![Rational::zero(); x.len()];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let t = self.dtree(n, i).relabel(&|q| inv[q]);
            for (o, v) in self.coordinates(n, t, c)?.into_iter().enumerate() {
                out[o] += v;
            }
        }
        Ok(out)
    }

    fn compose_at(&self, m: usize, i: usize, x: &[Rational], k: usize, y: &[Rational]) -> Result<Vec<Rational>> {
        check_compose(self, m, i, x, k, y)?;
        let n = m + k - 1;
        let mut out = vec![Rational::zero(); self.dim(n)?];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let tx = self.dtree(m, a).relabel(&|q| if q < i { q } else if q == i { usize::MAX } else { q + k - 1 });
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ty = self.dtree(k, b).relabel(&|q| q + i);
                let t = tx.graft(usize::MAX, &ty);
                for (o, v) in self.coordinates(n, t, &(ca * cb))?.into_iter().enumerate() {
                    out[o] += v;
                }
            }
        }
        Ok(out)
    }

    fn unit(&self) -> Vec<Rational> {
        vec![Rational::one()]
    }

    fn has_differential(&self) -> bool {
        self.generators.has_differential()
    }
}

/// `End(k^w)(n) = Hom((k^w)^{⊗n}, k^w)` with basis `E_{o,(i_1..i_n)}` sending
/// `e_{i_1}⊗…⊗e_{i_n}` to `e_o` and every other basis tensor to zero; the
/// index of `E_{o,(i)}` is `o·w^n + Σ_j i_j w^{n−1−j}`.
#[derive(Clone, Debug)]
pub struct EndOperad {
    pub w: usize,
    bound: usize,
}

impl EndOperad {
    pub fn new(w: usize, bound: usize) -> Result<Self> {
        if w == 0 {
            return Err(Error::ShapeMismatch("End of the zero space".into()));
        }
        if (w as f64).powi(bound as i32 + 1) > 1e6 {
            return Err(Error::ArityBound(bound));
        }
        Ok(Self { w, bound })
    }

    fn decode(&self, n: usize, idx: usize) -> (usize, Vec<usize>) {
        let mut ins = vec![0; n];
        let mut r = idx;
        for j in (0..n).rev() {
            ins[j] = r % self.w;
            r /= self.w;
        }
        (r, ins)
    }

    fn encode(&self, o: usize, ins: &[usize]) -> usize {
        ins.iter().fold(o, |acc, &i| acc * self.w + i)
    }

    /// Evaluates `f ∈ End(n)` on basis inputs, returning coordinates in `k^w`.
    pub fn evaluate(&self, n: usize, f: &[Rational], inputs: &[Vec<Rational>]) -> Result<Vec<Rational>> {
        check_len(self, n, f)?;
        if inputs.len() != n || inputs.iter().any(|v| v.len() != self.w) {
            return Err(Error::ShapeMismatch(format!("expected {n} vectors of length {}", self.w)));
        }
        let mut out = vec![Rational::zero(); self.w];
        for (idx, c) in f.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (o, ins) = self.decode(n, idx);
            let mut v = c.clone();
            for (x, &i) in inputs.iter().zip(&ins) {
                v *= &x[i];
            }
            out[o] += v;
        }
        Ok(out)
    }
}

impl Operad for EndOperad {
    fn name(&self) -> String {
        format!("End(k^{})", self.w)
    }

    fn max_arity(&self) -> usize {
        self.bound
    }

    fn dim(&self, n: usize) -> Result<usize> {
        if n > self.bound {
            return Err(Error::ArityBound(n));
        }
        Ok(self.w.pow(n as u32 + 1))
    }

    fn act(&self, n: usize, perm: &[usize], x: &[Rational]) -> Result<Vec<Rational>> {
        check_len(self, n, x)?;
        check_perm(n, perm)?;
        let mut out = vec![Rational::zero(); x.len()];
        for (idx, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (o, ins) = self.decode(n, idx);
            let moved: Vec<usize> = perm.iter().map(|&p| ins[p]).collect();
            out[self.encode(o, &moved)] += c;
        }
        Ok(out)
    }

    fn compose_at(&self, m: usize, i: usize, x: &[Rational], k: usize, y: &[Rational]) -> Result<Vec<Rational>> {
        check_compose(self, m, i, x, k, y)?;
        let mut out = vec![Rational::zero(); self.dim(m + k - 1)?];
        for (a, ca) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (o, p) = self.decode(m, a);
            for (b, cb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (o2, q) = self.decode(k, b);
                if o2 != p[i] {
                    continue;
                }
                let ins: Vec<usize> = p[..i].iter().chain(&q).chain(&p[i + 1..]).copied().collect();
                out[self.encode(o, &ins)] += ca * cb;
            }
        }
        Ok(out)
    }

    fn unit(&self) -> Vec<Rational> {
        let mut u = vec![Rational::zero(); self.w * self.w];
        for o in 0..self.w {
            u[o * self.w + o] = Rational::one();
        }
        u
    }
}

/// `op_f(x; y_1, …, y_m)` for a surjection `f : {0..n} → {0..m}`, with
/// `x ∈ P(m)` and `y_j ∈ P(f^{-1}(j))`, the fibre inputs ordered increasingly.
pub fn operad_compose<P: Operad + ?Sized>(p: &P, f: &[usize], x: &[Rational], args: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let m = args.len();
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (q, &j) in f.iter().enumerate() {
        if j >= m {
            return Err(Error::ShapeMismatch(format!("f({q}) = {j} but only {m} arguments")));
        }
        fibres[j].push(q);
    }
    if let Some(j) = fibres.iter().position(Vec::is_empty) {
        return Err(Error::ShapeMismatch(format!("f is not surjective: {j} has empty fibre")));
    }
    check_len(p, m, x)?;
    let mut cur = x.to_vec();
    let mut arity = m;
    for j in (0..m).rev() {
        let k = fibres[j].len();
        cur = p.compose_at(arity, j, &cur, k, &args[j])?;
        arity += k - 1;
    }
    let order: Vec<usize> = fibres.concat();
    let sorted = order.iter().enumerate().all(|(i, &q)| i == q);
    if sorted {
        Ok(cur)
    } else {
        p.act(f.len(), &inverse(&order), &cur)
    }
}

