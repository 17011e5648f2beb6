//! Bar construction: trees whose vertices carry elements of `P[-1]`, with the
//! differential contracting internal edges.
//!
//! A basis element is a canonical tree with a basis index of `P` at each
//! vertex, read as the tensor of the shifted decorations in pre-order. Each
//! shifted decoration is odd, so reordering vertices costs the sign of the
//! permutation. Contracting the edge from `u` to its child `w` brings `w`
//! next to `u`, composes, and applies the Koszul sign of the passage over the
//! vertices before `u`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use super::collection::SymmetricCollection;
use super::free::{product, FreeOperad, Operad};
use super::perm::parity;
use super::tree::{canonical_trees, DTree, Tree};
use crate::error::{Error, Result};
use crate::exact_linalg::{to_dense, to_sparse, FiniteComplex, Rational, Shift, SparseRationalMatrix, SparseVec};
use crate::report::Check;
use crate::sampling::{rng_for, small_rational};

pub type BarKey = (Tree, Vec<usize>);

#[derive(Clone, Debug, PartialEq)]
pub struct BarElement {
    pub arity: usize,
    pub terms: BTreeMap<BarKey, Rational>,
}

impl BarElement {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn basis(arity: usize, tree: Tree, decs: Vec<usize>) -> Self {
        Self {
            arity,
            terms: BTreeMap::from([((tree, decs), Rational::from_integer(1.into()))]),
        }
    }

    /// Element given by a tree with arbitrary decorations (any child order);
    /// the decorations are read in pre-order of the tree as given.
    pub fn from_tree<P: Operad + ?Sized>(p: &P, t: DTree) -> Result<Self> {
        let shape = t.shape();
        check_arities(p, &shape)?;
        let before = shape.vertex_masks();
        let canon = t.canonicalize(&act_of(p));
        let after = canon.shape().vertex_masks();
        let coef = reorder_sign(&before, &after);
        let mut terms = BTreeMap::new();
        canon.expand_into(&coef, &mut terms);
        Ok(Self {
            arity: shape.leaf_mask().count_ones() as usize,
            terms,
        })
    }
}

fn check_arities<P: Operad + ?Sized>(p: &P, t: &Tree) -> Result<()> {
    match t.arities().into_iter().find(|&k| k > p.max_arity()) {
        Some(k) => Err(Error::ArityBound(k)),
        None => Ok(()),
    }
}

fn act_of<P: Operad + ?Sized>(p: &P) -> impl Fn(usize, &[usize], &SparseVec) -> SparseVec + '_ {
    |k, pi, x| {
        let d = p.dim(k).expect("checked arity");
        to_sparse(&p.act(k, pi, &to_dense(x, d)).expect("checked arity"))
    }
}

/// Sign of the permutation taking the vertex list `from` to `to` (vertices
/// identified by their leaf sets).
fn reorder_sign(from: &[u64], to: &[u64]) -> Rational {
    let pos: HashMap<u64, usize> = from.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let perm: Vec<usize> = to.iter().map(|m| pos[m]).collect();
    sign(parity(&perm))
}

fn sign(k: usize) -> Rational {
    Rational::from_integer(if k.is_multiple_of(2) { 1 } else { -1 }.into())
}

/// Internal edges as `(pos(u), j, pos(w))`: `w` is child `j` of `u`.
fn internal_edges(t: &Tree) -> Vec<(usize, usize, usize)> {
    fn go(t: &Tree, k: &mut usize, out: &mut Vec<(usize, usize, usize)>) {
        if let Tree::Node(ch) = t {
            let me = *k;
            *k += 1;
            for (j, c) in ch.iter().enumerate() {
                if let Tree::Node(_) = c {
                    out.push((me, j, *k));
                }
                go(c, k, out);
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut 0, &mut out);
    out
}

/// Tree with the edge below vertex `u` (child `j`) contracted; the merged
/// vertex carries `z` and the other vertices their basis decorations.
fn contracted(t: &Tree, decs: &[usize], u: usize, j: usize, z: SparseVec) -> DTree {
    fn go(t: &Tree, decs: &[usize], u: usize, j: usize, z: &mut Option<SparseVec>, k: &mut usize) -> DTree {
        match t {
            Tree::Leaf(l) => DTree::Leaf(*l),
            Tree::Node(ch) => {
                let me = *k;
                *k += 1;
                let kids: Vec<DTree> = ch.iter().map(|c| go(c, decs, u, j, z, k)).collect();
                if me != u {
                    return DTree::Node(vec![(decs[me], Rational::from_integer(1.into()))], kids);
                }
                let mut merged = Vec::new();
                for (i, c) in kids.into_iter().enumerate() {
                    match c {
                        DTree::Node(_, grand) if i == j => merged.extend(grand),
                        other => merged.push(other),
                    }
                }
                DTree::Node(z.take().expect("single merge"), merged)
            }
        }
    }
    go(t, decs, u, j, &mut Some(z), &mut 0)
}

/// The bar differential `d₂` (edge contractions). Operads with a nonzero
/// internal differential are rejected.
pub fn bar_differential<P: Operad + ?Sized>(p: &P, x: &BarElement, max_vertices: usize) -> Result<BarElement> {
    if p.has_differential() {
        return Err(Error::Unsupported("bar construction of an operad with nonzero differential".into()));
    }
    let mut out = BarElement::zero(x.arity);
    for ((t, decs), c) in &x.terms {
        if t.vertex_count() > max_vertices {
            return Err(Error::TreeBound(format!("{} vertices, bound {max_vertices}", t.vertex_count())));
        }
        check_arities(p, t)?;
        let arities = t.arities();
        let masks = t.vertex_masks();
        for (u, j, w) in internal_edges(t) {
            let (ku, kw) = (arities[u], arities[w]);
            let mut xu = vec![Rational::zero(); p.dim(ku)?];
            xu[decs[u]] = Rational::from_integer(1.into());
            let mut xw = vec![Rational::zero(); p.dim(kw)?];
            xw[decs[w]] = Rational::from_integer(1.into());
            let z = to_sparse(&p.compose_at(ku, j, &xu, kw, &xw)?);
            if z.is_empty() {
                continue;
            }
            check_arities(p, &Tree::corolla(ku + kw - 1))?;
            let merged = contracted(t, decs, u, j, z).canonicalize(&act_of(p));
            let mut from = masks.clone();
            from.remove(w);
            let s = sign(u + (w - u - 1)) * reorder_sign(&from, &merged.shape().vertex_masks());
            merged.expand_into(&(s * c), &mut out.terms);
        }
    }
    out.terms.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Checks `d² = 0` on one random decoration of every canonical tree with at
/// most `max_vertices` vertices and `2..=max_arity` leaves.
pub fn bar_d_squared_check<P: Operad + ?Sized>(
    p: &P,
    max_vertices: usize,
    max_arity: usize,
    seed: u64,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut sample = 0u64;
    for n in 2..=max_arity {
        let trees = canonical_trees((1u64 << n) - 1, &|k| k <= p.max_arity(), max_vertices);
        let mut bad = None;
        for t in &trees {
            let mut rng = rng_for(seed, "bar d^2", sample);
            sample += 1;
            let decorated = decorate_randomly(p, t, &mut rng)?;
            let x = BarElement::from_tree(p, decorated)?;
            let dd = bar_differential(p, &bar_differential(p, &x, max_vertices)?, max_vertices)?;
            if !dd.is_zero() && bad.is_none() {
                bad = Some(format!("{t:?}: {} nonzero terms", dd.terms.len()));
            }
        }
        checks.push(Check::from_bool(format!("bar d^2 = 0 in arity {n}"), bad.is_none(), || {
            bad.clone().unwrap_or_default()
        }));
    }
    Ok(checks)
}

fn decorate_randomly<P: Operad + ?Sized>(p: &P, t: &Tree, rng: &mut impl Rng) -> Result<DTree> {
    Ok(match t {
        Tree::Leaf(l) => DTree::Leaf(*l),
        Tree::Node(ch) => {
            let d = p.dim(ch.len())?;
            let mut v: SparseVec = Vec::new();
            for i in 0..d {
                if rng.gen_range(0..d) < 3 {
                    let c = small_rational(rng);
                    if !c.is_zero() {
                        v.push((i, c));
                    }
                }
            }
            if v.is_empty() {
                v.push((rng.gen_range(0..d), Rational::from_integer(1.into())));
            }
            let kids = ch.iter().map(|c| decorate_randomly(p, c, rng)).collect::<Result<_>>()?;
            DTree::Node(v, kids)
        }
    })
}

/// Homology of one weight summand of `Bar(FreeOp(V))(n)`.
#[derive(Clone, Debug, Serialize)]
pub struct WeightHomology {
    pub weight: usize,
    /// Chain dimensions for `1..` bar vertices.
    pub chain_dims: Vec<usize>,
    pub homology_dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BarHomologyReport {
    pub arity: usize,
    pub by_weight: Vec<WeightHomology>,
}

/// Largest arity accepted by [`bar_homology_check`].
pub const BAR_HOMOLOGY_BOUND: usize = 5;

/// Computes the homology of `Bar(FreeOp(V))(n)` for `2 ≤ n ≤ bound`, split by
/// the number of generator vertices, and checks that it is `V(n)` on corollas
/// of corollas and zero elsewhere.
pub fn bar_homology_check(v: &SymmetricCollection, bound: usize) -> Result<(Vec<BarHomologyReport>, Vec<Check>)> {
    if bound > BAR_HOMOLOGY_BOUND {
        return Err(Error::Bound(format!("bar homology arity {bound} exceeds {BAR_HOMOLOGY_BOUND}")));
    }
    let free = FreeOperad::new(v.clone(), bound)?;
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    for n in 2..=bound {
        let allowed = |k: usize| free.dim(k).is_ok_and(|d| d > 0);
        // basis[k][weight] for k bar vertices
        let mut bases: Vec<BTreeMap<usize, Vec<BarKey>>> = vec![BTreeMap::new(); n];
        for t in canonical_trees((1u64 << n) - 1, &allowed, n - 1) {
            let ar = t.arities();
            let dims: Vec<usize> = ar.iter().map(|&k| free.dim(k)).collect::<Result<_>>()?;
            for decs in product(&dims) {
                let w: usize = ar.iter().zip(&decs).map(|(&k, &d)| free.weight(k, d)).sum();
                bases[t.vertex_count()].entry(w).or_default().push((t.clone(), decs));
            }
        }
        let weights: Vec<usize> = bases.iter().flat_map(|b| b.keys().copied()).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let mut by_weight = Vec::new();
        for w in weights {
            let layer: Vec<&[BarKey]> = (1..n).map(|k| bases[k].get(&w).map_or(&[][..], |b| &b[..])).collect();
            let chain_dims: Vec<usize> = layer.iter().map(|b| b.len()).collect();
            let mut diffs = Vec::new();
            for (i, src) in layer.iter().enumerate() {
                let rows = if i == 0 { 0 } else { layer[i - 1].len() };
                let index: HashMap<&BarKey, usize> = if i == 0 {
                    HashMap::new()
                } else {
                    layer[i - 1].iter().enumerate().map(|(r, k)| (k, r)).collect()
                };
                let mut entries = Vec::new();
                if i > 0 {
                    for (col, key) in src.iter().enumerate() {
                        let d = bar_differential(&free, &BarElement::basis(n, key.0.clone(), key.1.clone()), n)?;
                        for (k, c) in d.terms {
                            let r = index
                                .get(&k)
                                .ok_or_else(|| Error::ComplexInvalid("bar differential left the weight summand".into()))?;
                            entries.push((*r, col, c));
                        }
                    }
                }
                diffs.push(SparseRationalMatrix::from_triplets(rows, src.len(), entries));
            }
            let homology_dims = FiniteComplex::new(1, chain_dims.clone(), diffs, Shift::Homological)?.homology_dims()?;
            let expected: Vec<usize> = (0..chain_dims.len())
                .map(|i| if i == 0 && w == 1 { v.dim(n) } else { 0 })
                .collect();
            checks.push(Check::from_bool(
                format!("bar homology concentrated on corollas (arity {n}, weight {w})"),
                homology_dims == expected,
                || format!("homology {homology_dims:?}, expected {expected:?}"),
            ));
            by_weight.push(WeightHomology {
                weight: w,
                chain_dims,
                homology_dims,
            });
        }
        reports.push(BarHomologyReport { arity: n, by_weight });
    }
    Ok((reports, checks))
}
