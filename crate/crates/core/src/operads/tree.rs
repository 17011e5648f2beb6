//! Rooted trees with labelled leaves and their canonical form.
//!
//! A tree is canonical when the children of every vertex are ordered by the
//! smallest leaf label below them. Internal vertices are listed in pre-order.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact_linalg::{Rational, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tree {
    Leaf(usize),
    Node(Vec<Tree>),
}

/// Tree whose internal vertices carry sparse vectors.
#[derive(Clone, Debug)]
pub enum DTree {
    Leaf(usize),
    Node(SparseVec, Vec<DTree>),
}

impl Tree {
    pub fn corolla(n: usize) -> Self {
        Tree::Node((0..n).map(Tree::Leaf).collect())
    }

    pub fn min_leaf(&self) -> usize {
        match self {
            Tree::Leaf(l) => *l,
            Tree::Node(ch) => ch.iter().map(Tree::min_leaf).min().expect("nonempty"),
        }
    }

    pub fn leaf_mask(&self) -> u64 {
        match self {
            Tree::Leaf(l) => 1 << l,
            Tree::Node(ch) => ch.iter().fold(0, |m, c| m | c.leaf_mask()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            Tree::Leaf(_) => 0,
            Tree::Node(ch) => 1 + ch.iter().map(Tree::vertex_count).sum::<usize>(),
        }
    }

    /// Arity of each internal vertex in pre-order.
    pub fn arities(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Tree::Node(ch) = t {
                out.push(ch.len());
            }
        });
        out
    }

    /// Leaf set of each internal vertex in pre-order.
    pub fn vertex_masks(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if let Tree::Node(_) = t {
                out.push(t.leaf_mask());
            }
        });
        out
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Tree)) {
        f(self);
        if let Tree::Node(ch) = self {
            for c in ch {
                c.walk(f);
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Tree::Leaf(_) => true,
            Tree::Node(ch) => {
                ch.windows(2).all(|w| w[0].min_leaf() < w[1].min_leaf()) && ch.iter().all(Tree::is_canonical)
            }
        }
    }

    /// Attaches the basis decorations `decs` (pre-order) as unit vectors.
    pub fn decorate(&self, decs: &[usize]) -> DTree {
        fn go(t: &Tree, decs: &[usize], k: &mut usize) -> DTree {
            match t {
                Tree::Leaf(l) => DTree::Leaf(*l),
                Tree::Node(ch) => {
                    let d = vec![(decs[*k], Rational::from_integer(1.into()))];
                    *k += 1;
                    DTree::Node(d, ch.iter().map(|c| go(c, decs, k)).collect())
                }
            }
        }
        go(self, decs, &mut 0)
    }
}

impl DTree {
    pub fn shape(&self) -> Tree {
        match self {
            DTree::Leaf(l) => Tree::Leaf(*l),
            DTree::Node(_, ch) => Tree::Node(ch.iter().map(DTree::shape).collect()),
        }
    }

    pub fn min_leaf(&self) -> usize {
        match self {
            DTree::Leaf(l) => *l,
            DTree::Node(_, ch) => ch.iter().map(DTree::min_leaf).min().expect("nonempty"),
        }
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> DTree {
        match self {
            DTree::Leaf(l) => DTree::Leaf(f(*l)),
            DTree::Node(d, ch) => DTree::Node(d.clone(), ch.iter().map(|c| c.relabel(f)).collect()),
        }
    }

    /// Replaces leaf `leaf` by `sub`.
    pub fn graft(&self, leaf: usize, sub: &DTree) -> DTree {
        match self {
            DTree::Leaf(l) if *l == leaf => sub.clone(),
            DTree::Leaf(l) => DTree::Leaf(*l),
            DTree::Node(d, ch) => DTree::Node(d.clone(), ch.iter().map(|c| c.graft(leaf, sub)).collect()),
        }
    }

    /// Sorts children by minimal leaf, transforming each decoration by
    /// `act(arity, π, x)`, where new child `p` is old child `π[p]`.
    pub fn canonicalize(self, act: &impl Fn(usize, &[usize], &SparseVec) -> SparseVec) -> DTree {
        match self {
            DTree::Leaf(l) => DTree::Leaf(l),
            DTree::Node(d, ch) => {
                let ch: Vec<DTree> = ch.into_iter().map(|c| c.canonicalize(act)).collect();
                let keys: Vec<usize> = ch.iter().map(DTree::min_leaf).collect();
                let pi = super::perm::argsort(&keys);
                let d = if pi.iter().enumerate().all(|(i, &p)| i == p) {
                    d
                } else {
                    act(ch.len(), &pi, &d)
                };
                let mut slots: Vec<Option<DTree>> = ch.into_iter().map(Some).collect();
                let ch = pi.iter().map(|&p| slots[p].take().expect("permutation")).collect();
                DTree::Node(d, ch)
            }
        }
    }

    /// Decorations in pre-order.
    pub fn decorations(&self) -> Vec<&SparseVec> {
        let mut out = Vec::new();
        fn go<'a>(t: &'a DTree, out: &mut Vec<&'a SparseVec>) {
            if let DTree::Node(d, ch) = t {
                out.push(d);
                for c in ch {
                    go(c, out);
                }
            }
        }
        go(self, &mut out);
        out
    }

    /// Expands the tensor of decorations over basis indices; `coef` multiplies
    /// every term and terms are added to `out` keyed by `(shape, indices)`.
    pub fn expand_into(&self, coef: &Rational, out: &mut BTreeMap<(Tree, Vec<usize>), Rational>) {
        let shape = self.shape();
        let decs = self.decorations();
        let mut idx = Vec::with_capacity(decs.len());
        expand(&decs, 0, coef.clone(), &mut idx, &mut |ix, c| {
            let e = out.entry((shape.clone(), ix.to_vec())).or_insert_with(Rational::zero);
            *e += c;
        });
        out.retain(|_, v| !v.is_zero());
    }
}

fn expand(
    decs: &[&SparseVec],
    k: usize,
    coef: Rational,
    idx: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize], Rational),
) {
    if coef.is_zero() {
        return;
    }
    if k == decs.len() {
        f(idx, coef);
        return;
    }
    for (i, x) in decs[k] {
        idx.push(*i);
        expand(decs, k + 1, &coef * x, idx, f);
        idx.pop();
    }
}

/// Set partitions of the bits of `mask` into blocks, blocks ordered by their
/// lowest bit.
pub fn set_partitions(mask: u64) -> Vec<Vec<u64>> {
    if mask == 0 {
        return vec![Vec::new()];
    }
    let low = mask & mask.wrapping_neg();
    let rest = mask & !low;
    let mut out = Vec::new();
    // block containing `low` is `low | s` for s a subset of rest
    let mut s = rest;
    loop {
        for mut p in set_partitions(rest & !s) {
            p.insert(0, low | s);
            out.push(p);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & rest;
    }
    out.sort();
    out
}

/// All canonical trees on the leaf set `mask` whose vertex arities satisfy
/// `allowed` and which have at most `max_vertices` internal vertices.
pub fn canonical_trees(mask: u64, allowed: &impl Fn(usize) -> bool, max_vertices: usize) -> Vec<Tree> {
    if mask.count_ones() == 1 {
        return vec![Tree::Leaf(mask.trailing_zeros() as usize)];
    }
    if max_vertices == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for blocks in set_partitions(mask) {
        if blocks.len() < 2 || !allowed(blocks.len()) {
            continue;
        }
        let mut partial: Vec<(Vec<Tree>, usize)> = vec![(Vec::new(), 1)];
        for &b in &blocks {
            let mut next = Vec::new();
            for (ch, used) in &partial {
                for t in canonical_trees(b, allowed, max_vertices - used) {
                    let u = used + t.vertex_count();
                    if u <= max_vertices {
                        let mut c = ch.clone();
                        c.push(t);
                        next.push((c, u));
                    }
                }
            }
            partial = next;
        }
        out.extend(partial.into_iter().map(|(ch, _)| Tree::Node(ch)));
    }
    out.sort();
    out
}
