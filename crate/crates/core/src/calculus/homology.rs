//! The calculus `(HH^•(A,A), HH_•(A,A), ⌣, [,], i, L, B)` on basis classes.

use serde::Serialize;

use super::{commutator, contract, lie_l};
use crate::algebra_core::FinDimAlgebra;
use crate::error::{Error, Result};
use crate::exact_linalg::{HomologyBasis, Rational, SparseRationalMatrix};
use crate::hochschild::{sign, Hochschild, HochschildChain, HochschildCochain};
use crate::report::Check;
use crate::sampling::rng_for;

/// Map between class bases, e.g. `i: HH^d ⊗ HH_n → HH_{n−d}` with the
/// source basis ordered as `(a, x) ↦ a·dim HH_n + x`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassOperation {
    pub name: String,
    pub degrees: Vec<usize>,
    pub target: usize,
    #[serde(skip)]
    pub matrix: SparseRationalMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct CalculusOnHomology {
    pub algebra: String,
    pub max_degree: usize,
    /// `dim HH^d(A, A)`, `d = 0..=max_degree`.
    pub cohomology_dims: Vec<usize>,
    /// `dim HH_n(A, A)`, `n = 0..=max_degree`.
    pub homology_dims: Vec<usize>,
    pub operations: Vec<ClassOperation>,
    pub checks: Vec<Check>,
}

pub(crate) struct Classes {
    pub h: Hochschild,
    pub max: usize,
    pub co: Vec<HomologyBasis>,
    pub ho: Vec<HomologyBasis>,
}

impl Classes {
    pub fn new(a: &FinDimAlgebra, max: usize) -> Result<Self> {
        let h = Hochschild::new(a)?;
        let cc = h.cochain_complex(max + 1)?;
        let ch = h.chain_complex(max + 1)?;
        Ok(Self {
            co: (0..=max).map(|d| cc.homology_basis(d as i64)).collect(),
            ho: (0..=max).map(|n| ch.homology_basis(n as i64)).collect(),
            h,
            max,
        })
    }

    pub fn cochain(&self, d: usize, k: usize) -> HochschildCochain {
        HochschildCochain {
            d,
            data: self.co[d].reps()[k].clone(),
        }
    }

    pub fn chain(&self, n: usize, k: usize) -> HochschildChain {
        HochschildChain {
            p: n,
            coords: self.ho[n].reps()[k].clone(),
        }
    }

    fn co_boundary(&self, x: &HochschildCochain) -> bool {
        x.d > self.max || self.co[x.d].is_boundary(&x.data)
    }

    fn ho_boundary(&self, x: &HochschildChain) -> bool {
        x.p > self.max || x.coords.is_empty() || self.ho[x.p].is_boundary(&x.coords)
    }

    fn co_class(&self, x: &HochschildCochain) -> Option<Vec<Rational>> {
        self.co[x.d].class_of(&x.data)
    }

    fn ho_class(&self, x: &HochschildChain) -> Option<Vec<Rational>> {
        self.ho[x.p].class_of(&x.coords)
    }

    /// Cochain pairs `(d, a, e, b)` of basis classes.
    fn co_pairs(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for d in 0..=self.max {
            for e in 0..=self.max {
                for a in 0..self.co[d].dim() {
                    for b in 0..self.co[e].dim() {
                        out.push((d, a, e, b));
                    }
                }
            }
        }
        out
    }

    fn co_ho_pairs(&self) -> Vec<(usize, usize, usize, usize)> {
        let mut out = Vec::new();
        for d in 0..=self.max {
            for n in 0..=self.max {
                for a in 0..self.co[d].dim() {
                    for x in 0..self.ho[n].dim() {
                        out.push((d, a, n, x));
                    }
                }
            }
        }
        out
    }
}

/// Axiom outcome: the first witness, if any.
struct Axiom {
    name: &'static str,
    witness: Option<String>,
}

impl Axiom {
    fn new(name: &'static str) -> Self {
        Self { name, witness: None }
    }

    fn record(&mut self, ok: bool, w: impl FnOnce() -> String) {
        if !ok && self.witness.is_none() {
            self.witness = Some(w());
        }
    }

    fn check(self) -> Check {
        match self.witness {
            None => Check::pass(self.name),
            Some(w) => Check::fail(self.name, w),
        }
    }
}

fn cname(d: usize, a: usize) -> String {
    format!("HH^{d}[{a}]")
}

fn hname(n: usize, x: usize) -> String {
    format!("HH_{n}[{x}]")
}

/// Checks every axiom and returns the report; failed axioms are recorded in
/// `checks` rather than raised.
pub fn calculus_report(a: &FinDimAlgebra, max_degree: usize) -> Result<CalculusOnHomology> {
    calculus_with(a, max_degree)
}

/// As [`calculus_report`], failing with `AxiomFailure` on the first failed axiom.
pub fn verify_calculus(a: &FinDimAlgebra, max_degree: usize) -> Result<CalculusOnHomology> {
    let r = calculus_report(a, max_degree)?;
    if let Some(c) = r.checks.iter().find(|c| c.failed()) {
        return Err(Error::AxiomFailure {
            axiom: c.name.clone(),
            witness: c.witness.clone().unwrap_or_default(),
        });
    }
    Ok(r)
}

fn calculus_with(a: &FinDimAlgebra, max: usize) -> Result<CalculusOnHomology> {
    let cl = Classes::new(a, max)?;
    let h = &cl.h;
    let mut checks = well_defined(&cl)?;
    let operations = class_operations(&cl)?;
    let cup = |x: &HochschildCochain, y: &HochschildCochain| h.cup(x, y);
    let br = |x: &HochschildCochain, y: &HochschildCochain| h.gerstenhaber_bracket(x, y);
    let i_ = |c: &HochschildCochain, y: &HochschildChain| contract(h, c, y);
    let l_ = |c: &HochschildCochain, y: &HochschildChain| lie_l(h, c, y);

    let mut comm = Axiom::new("cup graded commutative");
    let mut assoc = Axiom::new("cup associative");
    let mut anti = Axiom::new("bracket antisymmetric");
    let mut jacobi = Axiom::new("bracket Jacobi");
    let mut leibniz = Axiom::new("bracket Leibniz");
    for (d, ia, e, ib) in cl.co_pairs() {
        let (x, y) = (cl.cochain(d, ia), cl.cochain(e, ib));
        let w = || format!("{} {}", cname(d, ia), cname(e, ib));
        if d + e <= max {
            let v = cup(&x, &y)?.sub(&cup(&y, &x)?.scale(&sign(d * e)));
            comm.record(cl.co_boundary(&v), w);
        }
        if d + e >= 1 && d + e - 1 <= max {
            let v = br(&x, &y)?.add(&br(&y, &x)?.scale(&sign((d + 1) * (e + 1))));
            anti.record(cl.co_boundary(&v), w);
        }
        for f in 0..=max {
            for ic in 0..cl.co[f].dim() {
                let z = cl.cochain(f, ic);
                let w3 = || format!("{} {} {}", cname(d, ia), cname(e, ib), cname(f, ic));
                if d + e + f <= max {
                    let v = cup(&cup(&x, &y)?, &z)?.sub(&cup(&x, &cup(&y, &z)?)?);
                    assoc.record(cl.co_boundary(&v), w3);
                }
                if d + e + f >= 2 && d + e + f - 2 <= max && d + e >= 1 && e + f >= 1 && f + d >= 1 {
                    let s = |p: usize, q: usize| sign((p + 1) * (q + 1));
                    let v = br(&x, &br(&y, &z)?)?
                        .scale(&s(d, f))
                        .add(&br(&y, &br(&z, &x)?)?.scale(&s(e, d)))
                        .add(&br(&z, &br(&x, &y)?)?.scale(&s(f, e)));
                    jacobi.record(cl.co_boundary(&v), w3);
                }
                if d + e + f >= 1 && d + e + f - 1 <= max && d + e >= 1 && d + f >= 1 {
                    // [a, b⌣c] = [a,b]⌣c + (−1)^{(|a|+1)|b|} b⌣[a,c]
                    let v = br(&x, &cup(&y, &z)?)?
                        .sub(&cup(&br(&x, &y)?, &z)?)
                        .sub(&cup(&y, &br(&x, &z)?)?.scale(&sign((d + 1) * e)));
                    leibniz.record(cl.co_boundary(&v), w3);
                }
            }
        }
    }

    let mut unit = Axiom::new("i_1 = id");
    let mut imod = Axiom::new("i_a i_b = i_{a cup b}");
    let mut lmod = Axiom::new("[L_a, L_b] = L_{[a,b]}");
    let mut li = Axiom::new("[L_a, i_b] = (-1)^{|a|+1} i_{[a,b]}");
    let mut lab = Axiom::new("L_{a cup b} = L_a i_b + (-1)^{|a|} i_a L_b");
    let mut bsq = Axiom::new("B^2 = 0");
    let mut cartan = Axiom::new("[B, i_a] = L_a");
    let one = h.element_cochain(&a.unit_vector());
    for n in 0..=max {
        for ix in 0..cl.ho[n].dim() {
            let x = cl.chain(n, ix);
            let v = i_(&one, &x).sub(&x);
            unit.record(cl.ho_boundary(&v), || hname(n, ix));
            if n + 2 <= max {
                let v = h.connes_b(&h.connes_b(&x));
                bsq.record(cl.ho_boundary(&v), || hname(n, ix));
            }
        }
    }
    for (d, ia, n, ix) in cl.co_ho_pairs() {
        let (p, x) = (cl.cochain(d, ia), cl.chain(n, ix));
        let w = || format!("{} {}", cname(d, ia), hname(n, ix));
        if d <= n && n < max {
            let v = commutator(&h.connes_b(&i_(&p, &x)), &i_(&p, &h.connes_b(&x)), 1, d).sub(&l_(&p, &x));
            cartan.record(cl.ho_boundary(&v), w);
        }
        for e in 0..=max {
            for ib in 0..cl.co[e].dim() {
                let q = cl.cochain(e, ib);
                let w3 = || format!("{} {} {}", cname(d, ia), cname(e, ib), hname(n, ix));
                if d + e <= n {
                    let v = i_(&p, &i_(&q, &x)).sub(&i_(&cup(&p, &q)?, &x));
                    imod.record(cl.ho_boundary(&v), w3);
                }
                if d + e >= 1 && d + e <= n + 2 && d <= n + 1 && e <= n + 1 {
                    let v = commutator(&l_(&p, &l_(&q, &x)), &l_(&q, &l_(&p, &x)), d + 1, e + 1).sub(&l_(&br(&p, &q)?, &x));
                    lmod.record(cl.ho_boundary(&v), w3);
                }
                if d + e >= 1 && d + e <= n + 1 && e <= n {
                    let v = commutator(&l_(&p, &i_(&q, &x)), &i_(&q, &l_(&p, &x)), d + 1, e)
                        .sub(&i_(&br(&p, &q)?, &x).scale(&sign(d + 1)));
                    li.record(cl.ho_boundary(&v), w3);
                }
                if d + e <= n + 1 && e <= n {
                    let v = l_(&cup(&p, &q)?, &x)
                        .sub(&l_(&p, &i_(&q, &x)))
                        .sub(&i_(&p, &l_(&q, &x)).scale(&sign(d)));
                    lab.record(cl.ho_boundary(&v), w3);
                }
            }
        }
    }
    checks.extend(
        [comm, assoc, anti, jacobi, leibniz, unit, imod, lmod, li, lab, bsq, cartan]
            .into_iter()
            .map(Axiom::check),
    );
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(CalculusOnHomology {
        algebra: a.name().to_string(),
        max_degree: max,
        cohomology_dims: cl.co.iter().map(HomologyBasis::dim).collect(),
        homology_dims: cl.ho.iter().map(HomologyBasis::dim).collect(),
        operations,
        checks,
    })
}

/// Each operation applied to a representative and to the representative
/// plus a random boundary gives results differing by a boundary.
fn well_defined(cl: &Classes) -> Result<Vec<Check>> {
    let h = &cl.h;
    let mut rng = rng_for(0, "calculus-reps", 0);
    let bump_co = |x: &HochschildCochain, rng: &mut rand_chacha::ChaCha8Rng| {
        if x.d == 0 {
            x.clone()
        } else {
            x.add(&h.cochain_delta(&h.random_cochain(x.d - 1, rng)))
        }
    };
    let bump_ho = |x: &HochschildChain, rng: &mut rand_chacha::ChaCha8Rng| x.add(&h.b(&h.random_chain(x.p + 1, rng)));
    let mut cup = Axiom::new("well-defined cup");
    let mut br = Axiom::new("well-defined bracket");
    let mut ii = Axiom::new("well-defined i");
    let mut ll = Axiom::new("well-defined L");
    let mut bb = Axiom::new("well-defined B");
    for (d, ia, e, ib) in cl.co_pairs() {
        let (x, y) = (cl.cochain(d, ia), cl.cochain(e, ib));
        let (x2, y2) = (bump_co(&x, &mut rng), bump_co(&y, &mut rng));
        let w = || format!("{} {}", cname(d, ia), cname(e, ib));
        if d + e <= cl.max {
            let v = h.cup(&x, &y)?.sub(&h.cup(&x2, &y2)?);
            cup.record(cl.co_boundary(&v), w);
        }
        if d + e >= 1 && d + e - 1 <= cl.max {
            let v = h.gerstenhaber_bracket(&x, &y)?.sub(&h.gerstenhaber_bracket(&x2, &y2)?);
            br.record(cl.co_boundary(&v), w);
        }
    }
    for (d, ia, n, ix) in cl.co_ho_pairs() {
        let (p, x) = (cl.cochain(d, ia), cl.chain(n, ix));
        let (p2, x2) = (bump_co(&p, &mut rng), bump_ho(&x, &mut rng));
        let w = || format!("{} {}", cname(d, ia), hname(n, ix));
        if d <= n {
            let v = contract(h, &p, &x).sub(&contract(h, &p2, &x2));
            ii.record(cl.ho_boundary(&v), w);
        }
        if d <= n + 1 {
            let v = lie_l(h, &p, &x).sub(&lie_l(h, &p2, &x2));
            ll.record(cl.ho_boundary(&v), w);
        }
    }
    for n in 0..cl.max {
        for ix in 0..cl.ho[n].dim() {
            let x = cl.chain(n, ix);
            let v = h.connes_b(&x).sub(&h.connes_b(&bump_ho(&x, &mut rng)));
            bb.record(cl.ho_boundary(&v), || hname(n, ix));
        }
    }
    Ok([cup, br, ii, ll, bb].into_iter().map(Axiom::check).collect())
}

/// Matrices of the five operations on basis classes.
fn class_operations(cl: &Classes) -> Result<Vec<ClassOperation>> {
    let h = &cl.h;
    let max = cl.max;
    let mut out = Vec::new();
    let mut push = |name: &str, degrees: Vec<usize>, target: usize, cols: Vec<Option<Vec<Rational>>>| -> Result<()> {
        let rows = cols.first().and_then(|c| c.as_ref().map(Vec::len)).unwrap_or(0);
        let mut dense = Vec::with_capacity(cols.len());
        for c in cols {
            dense.push(c.ok_or_else(|| Error::AxiomFailure {
                axiom: format!("{name} preserves cycles"),
                witness: format!("degrees {degrees:?}"),
            })?);
        }
        out.push(ClassOperation {
            name: name.to_string(),
            degrees,
            target,
            matrix: SparseRationalMatrix::from_columns(rows, &dense),
        });
        Ok(())
    };
    for d in 0..=max {
        for e in 0..=max {
            if d + e <= max {
                let mut cols = Vec::new();
                for a in 0..cl.co[d].dim() {
                    for b in 0..cl.co[e].dim() {
                        cols.push(cl.co_class(&h.cup(&cl.cochain(d, a), &cl.cochain(e, b))?));
                    }
                }
                push("cup", vec![d, e], d + e, cols)?;
            }
            if d + e >= 1 && d + e - 1 <= max {
                let mut cols = Vec::new();
                for a in 0..cl.co[d].dim() {
                    for b in 0..cl.co[e].dim() {
                        cols.push(cl.co_class(&h.gerstenhaber_bracket(&cl.cochain(d, a), &cl.cochain(e, b))?));
                    }
                }
                push("bracket", vec![d, e], d + e - 1, cols)?;
            }
        }
        for n in 0..=max {
            if d <= n {
                let mut cols = Vec::new();
                for a in 0..cl.co[d].dim() {
                    for x in 0..cl.ho[n].dim() {
                        cols.push(cl.ho_class(&contract(h, &cl.cochain(d, a), &cl.chain(n, x))));
                    }
                }
                push("i", vec![d, n], n - d, cols)?;
            }
            if d <= n + 1 && n + 1 - d <= max {
                let mut cols = Vec::new();
                for a in 0..cl.co[d].dim() {
                    for x in 0..cl.ho[n].dim() {
                        cols.push(cl.ho_class(&lie_l(h, &cl.cochain(d, a), &cl.chain(n, x))));
                    }
                }
                push("L", vec![d, n], n + 1 - d, cols)?;
            }
        }
    }
    for n in 0..max {
        let cols = (0..cl.ho[n].dim()).map(|x| cl.ho_class(&h.connes_b(&cl.chain(n, x)))).collect();
        push("B", vec![n], n + 1, cols)?;
    }
    Ok(out)
}
