//! `t(n)`: generators `t_{ij} = t_{ji}` (`i ≠ j ≤ n`) of degree 1 subject to
//! `[t_{ij}, t_{kl}] = 0` for disjoint pairs and `[t_{ij}, t_{ik} + t_{jk}] = 0`.
//!
//! Graded pieces are computed inside the enveloping algebra
//! `U = T(V)/(R)`, where `t(n)` embeds: `t_d` is spanned by `[x, ℓ]` with `x`
//! a generator and `ℓ ∈ t_{d−1}`. `U_d` is built as a quotient of
//! `V ⊗ U_{d−1}` by the image of `R ⊗ U_{d−2}`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_linalg::{axpy_sparse, rat, Echelon, Rational, SparseVec};
use crate::report::Check;

/// Quadratic relations as vectors in `V ⊗ V` (index `a·m + b` for `v_a ⊗ v_b`).
pub type Relations = Vec<SparseVec>;

fn commutator(m: usize, a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out: Vec<(usize, Rational)> = Vec::new();
    for (i, x) in a {
        for (j, y) in b {
            out.push((i * m + j, x * y));
            out.push((j * m + i, -(x * y)));
        }
    }
    normalize(out)
}

fn normalize(mut v: Vec<(usize, Rational)>) -> SparseVec {
    v.sort_by_key(|e| e.0);
    let mut out: SparseVec = Vec::new();
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !num_traits::Zero::is_zero(x));
    out
}

/// Generators `t_{ij}`, `i < j`, in lexicographic order (1-based labels).
pub fn dk_generators(n: usize) -> Vec<(usize, usize)> {
    let mut g = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            g.push((i, j));
        }
    }
    g
}

fn gen_index(gens: &[(usize, usize)], i: usize, j: usize) -> usize {
    let key = if i < j { (i, j) } else { (j, i) };
    gens.iter().position(|&g| g == key).expect("generator")
}

/// Defining relations of `t(n)` in `V ⊗ V`.
pub fn dk_relations(n: usize) -> Relations {
    let gens = dk_generators(n);
    let m = gens.len();
    let unit = |k: usize| vec![(k, rat(1))];
    let mut rels = Vec::new();
    for (a, &(i, j)) in gens.iter().enumerate() {
        for (b, &(k, l)) in gens.iter().enumerate() {
            if a < b && i != k && i != l && j != k && j != l {
                rels.push(commutator(m, &unit(a), &unit(b)));
            }
        }
        for k in 1..=n {
            if k != i && k != j {
                let s = normalize(vec![(gen_index(&gens, i, k), rat(1)), (gen_index(&gens, j, k), rat(1))]);
                rels.push(commutator(m, &unit(a), &s));
            }
        }
    }
    rels
}

struct Level {
    /// Basis of `U_d` as pairs (generator, basis index of `U_{d−1}`).
    words: Vec<(usize, usize)>,
    /// Basis index of each position of `V ⊗ U_{d−1}` that is a basis word.
    coord: Vec<Option<usize>>,
    /// Echelon form of the relation image; basis words are its non-pivot positions.
    relations: Echelon,
    /// `lmul[v]` column `b` is `v · b` for `b ∈ U_{d−1}`.
    lmul: Vec<Vec<SparseVec>>,
    /// `rmul[x]` column `b` is `b · x` for `b ∈ U_{d−1}`.
    rmul: Vec<Vec<SparseVec>>,
}

/// `U_0, …, U_D` for a quadratic algebra on `m` generators.
pub struct EnvelopingTower {
    m: usize,
    relations: Relations,
    levels: Vec<Level>,
}

impl EnvelopingTower {
    pub fn new(m: usize, relations: Relations, max_degree: usize) -> Self {
        let mut t = Self {
            m,
            relations,
            levels: vec![Level {
                words: vec![(usize::MAX, 0)],
                coord: vec![Some(0)],
                relations: Echelon::new(),
                lmul: Vec::new(),
                rmul: Vec::new(),
            }],
        };
        for _ in 1..=max_degree {
            t.extend();
        }
        t
    }

    pub fn dim(&self, d: usize) -> usize {
        self.levels[d].words.len()
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    fn extend(&mut self) {
        let d = self.levels.len();
        let m = self.m;
        let prev = self.levels[d - 1].words.len();
        let mut relations = Echelon::new();
        if d >= 2 {
            let pp = self.levels[d - 2].words.len();
            for r in &self.relations {
                for b2 in 0..pp {
                    let mut v: SparseVec = Vec::new();
                    for (idx, c) in r {
                        let (a, b) = (idx / m, idx % m);
                        let col = &self.levels[d - 1].lmul[b][b2];
                        let shifted: SparseVec = col.iter().map(|(j, x)| (a * prev + j, x.clone())).collect();
                        v = axpy_sparse(&v, &(-c.clone()), &shifted);
                    }
                    relations.insert(v);
                }
            }
        }
        let mut words = Vec::new();
        let mut coord = vec![None; m * prev];
        for (pos, slot) in coord.iter_mut().enumerate() {
            if !relations.is_pivot(pos) {
                *slot = Some(words.len());
                words.push((pos / prev, pos % prev));
            }
        }
        let mut level = Level {
            words,
            coord,
            relations,
            lmul: Vec::new(),
            rmul: Vec::new(),
        };
        level.lmul = (0..m)
            .map(|v| (0..prev).map(|b| project(&level, vec![(v * prev + b, rat(1))])).collect())
            .collect();
        level.rmul = (0..m)
            .map(|x| {
                (0..prev)
                    .map(|b| {
                        if d == 1 {
                            return vec![(level.coord[x].expect("free in degree 1"), rat(1))];
                        }
                        let (v, b1) = self.levels[d - 1].words[b];
                        let inner = &self.levels[d - 1].rmul[x][b1];
                        apply_columns(&level.lmul[v], inner)
                    })
                    .collect()
            })
            .collect();
        self.levels.push(level);
    }

    /// `v · y` and `y · v` for `y ∈ U_{d−1}`.
    pub fn left(&self, d: usize, v: usize, y: &SparseVec) -> SparseVec {
        apply_columns(&self.levels[d].lmul[v], y)
    }

    pub fn right(&self, d: usize, v: usize, y: &SparseVec) -> SparseVec {
        apply_columns(&self.levels[d].rmul[v], y)
    }

    /// `[v, y] = v·y − y·v` in `U_d`.
    pub fn bracket_generator(&self, d: usize, v: usize, y: &SparseVec) -> SparseVec {
        axpy_sparse(&self.left(d, v, y), &rat(1), &self.right(d, v, y))
    }

    /// Dimensions of the Lie subalgebra generated by `V`, degrees `1..=D`.
    pub fn lie_dims(&self) -> Vec<usize> {
        let mut dims = Vec::new();
        let mut basis: Vec<SparseVec> = (0..self.m).map(|v| vec![(v, rat(1))]).collect();
        dims.push(basis.len());
        for d in 2..=self.max_degree() {
            let mut span = Echelon::new();
            let mut next = Vec::new();
            for v in 0..self.m {
                for l in &basis {
                    let z = self.bracket_generator(d, v, l);
                    if span.insert(z.clone()) {
                        next.push(z);
                    }
                }
            }
            dims.push(next.len());
            basis = next;
        }
        dims
    }
}

/// Coordinates in `U_d` of a vector of `V ⊗ U_{d−1}`.
fn project(level: &Level, v: SparseVec) -> SparseVec {
    level
        .relations
        .reduce(v)
        .into_iter()
        .map(|(pos, c)| (level.coord[pos].expect("reduced vectors avoid pivots"), c))
        .collect()
}

/// `Σ x_j cols[j]` (`axpy_sparse(r, c, p)` is `r − c·p`).
fn apply_columns(cols: &[SparseVec], x: &SparseVec) -> SparseVec {
    let mut out: SparseVec = Vec::new();
    for (j, c) in x {
        out = axpy_sparse(&out, &(-c.clone()), &cols[*j]);
    }
    out
}

/// Outcome of [`dk_dims`].
#[derive(Clone, Debug, Serialize)]
pub struct DkReport {
    pub n: usize,
    /// `dim t(n)_d` for `d = 1..=max_degree`.
    pub dims: Vec<usize>,
    /// `dim U(t(n))_d` for `d = 0..=max_degree`.
    pub enveloping_dims: Vec<usize>,
    pub checks: Vec<Check>,
}

/// Dimensions of the graded pieces of `t(n)`, `2 ≤ n ≤ 4`, degrees `≤ 6`,
/// with checks on the central element, the free Lie substrate and the
/// substitution maps.
pub fn dk_dims(n: usize, max_degree: usize) -> Result<DkReport> {
    if !(2..=4).contains(&n) || !(1..=6).contains(&max_degree) {
        return Err(Error::Bound(format!("t(n) needs 2 ≤ n ≤ 4 and 1 ≤ degree ≤ 6 (got n = {n}, degree {max_degree})")));
    }
    let gens = dk_generators(n);
    let m = gens.len();
    let tower = EnvelopingTower::new(m, dk_relations(n), max_degree.max(2));
    let mut dims = tower.lie_dims();
    dims.truncate(max_degree);
    let enveloping_dims = (0..=max_degree).map(|d| tower.dim(d)).collect();
    let mut checks = Vec::new();

    let center: SparseVec = (0..m).map(|k| (k, rat(1))).collect();
    let central = (0..m).all(|v| tower.bracket_generator(2, v, &center).is_empty());
    checks.push(Check::from_bool("sum of all t_ij is central", central, || "nonzero bracket".into()));

    let free = EnvelopingTower::new(m, Vec::new(), max_degree.min(4));
    let fd = free.lie_dims();
    let witt = free_lie_dims(m, fd.len());
    checks.push(Check::from_bool("free Lie substrate matches Witt dimensions", fd == witt, || {
        format!("{fd:?} vs {witt:?}")
    }));
    if n == 3 {
        let expected: Vec<usize> = free_lie_dims(2, max_degree)
            .iter()
            .enumerate()
            .map(|(i, w)| w + usize::from(i == 0))
            .collect();
        checks.push(Check::from_bool("t(3) = free Lie(2) plus center", dims == expected, || {
            format!("{dims:?} vs {expected:?}")
        }));
    }
    for map in substitution_maps(n) {
        let ok = map.preserves_relations();
        checks.push(Check::from_bool(format!("{} preserves relations", map.name), ok, || "relation leaves R".into()));
    }
    Ok(DkReport {
        n,
        dims,
        enveloping_dims,
        checks,
    })
}

/// Witt's formula `(1/d) Σ_{e | d} μ(e) m^{d/e}`, degrees `1..=max_degree`.
pub fn free_lie_dims(m: usize, max_degree: usize) -> Vec<usize> {
    let mobius = |mut k: usize| -> i64 {
        let mut r = 1;
        let mut p = 2;
        while p * p <= k {
            if k.is_multiple_of(p) {
                k /= p;
                if k.is_multiple_of(p) {
                    return 0;
                }
                r = -r;
            }
            p += 1;
        }
        if k > 1 {
            -r
        } else {
            r
        }
    };
    (1..=max_degree)
        .map(|d| {
            let s: i64 = (1..=d).filter(|e| d % e == 0).map(|e| mobius(e) * (m as i64).pow((d / e) as u32)).sum();
            (s / d as i64) as usize
        })
        .collect()
}

/// Lyndon words of length `d` on `m` letters (a basis of the free Lie algebra).
pub fn lyndon_words(m: usize, d: usize) -> Vec<Vec<usize>> {
    // Duval's generation of all Lyndon words up to length d
    let mut out = Vec::new();
    if m == 0 || d == 0 {
        return out;
    }
    let mut w = vec![0usize];
    loop {
        if w.len() == d {
            out.push(w.clone());
        }
        let n = w.len();
        while w.len() < d {
            let c = w[w.len() - n];
            w.push(c);
        }
        while w.last() == Some(&(m - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => return out,
            Some(c) => *c += 1,
        }
    }
}

/// A map on generators `t(n) → t(n')`, each generator sent to a sum of generators.
#[derive(Clone, Debug)]
pub struct SubstitutionMap {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub images: Vec<SparseVec>,
}

impl SubstitutionMap {
    /// Whether the induced map `V⊗V → V'⊗V'` sends `R(n)` into `R(n')`.
    pub fn preserves_relations(&self) -> bool {
        let mt = dk_generators(self.target).len();
        let mut span = Echelon::new();
        for r in dk_relations(self.target) {
            span.insert(r);
        }
        let ms = self.images.len();
        dk_relations(self.source).iter().all(|r| {
            let mut img = Vec::new();
            for (idx, c) in r {
                for (i, x) in &self.images[idx / ms] {
                    for (j, y) in &self.images[idx % ms] {
                        img.push((i * mt + j, c * x * y));
                    }
                }
            }
            span.contains(normalize(img))
        })
    }
}

/// Generator-level operadic maps out of `t(n)`: adding a strand, doubling
/// each strand, and the transposition of strands 1 and 2.
pub fn substitution_maps(n: usize) -> Vec<SubstitutionMap> {
    let src = dk_generators(n);
    let tgt = dk_generators(n + 1);
    let mut maps = vec![SubstitutionMap {
        name: format!("t({n}) -> t({}) adding a strand", n + 1),
        source: n,
        target: n + 1,
        images: src.iter().map(|&(i, j)| vec![(gen_index(&tgt, i, j), rat(1))]).collect(),
    }];
    for k in 1..=n {
        let shift = |i: usize| if i > k { i + 1 } else { i };
        let images = src
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (shift(i), shift(j));
                if i == k || j == k {
                    let other = if i == k { b } else { a };
                    normalize(vec![(gen_index(&tgt, other, k), rat(1)), (gen_index(&tgt, other, k + 1), rat(1))])
                } else {
                    vec![(gen_index(&tgt, a, b), rat(1))]
                }
            })
            .collect();
        maps.push(SubstitutionMap {
            name: format!("t({n}) -> t({}) doubling strand {k}", n + 1),
            source: n,
            target: n + 1,
            images,
        });
    }
    let swap = |i: usize| match i {
        1 => 2,
        2 => 1,
        x => x,
    };
    maps.push(SubstitutionMap {
        name: format!("t({n}) -> t({n}) swapping strands 1 and 2"),
        source: n,
        target: n,
        images: src.iter().map(|&(i, j)| vec![(gen_index(&src, swap(i), swap(j)), rat(1))]).collect(),
    });
    maps
}

