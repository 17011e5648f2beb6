//! Symmetric collections: per arity a vector space with a `Σ_n` action.
//!
//! The matrix `ρ(π)` of a permutation `π` relabels inputs so that new input
//! `p` is old input `π(p)`; it satisfies `ρ(π∘τ) = ρ(τ)ρ(π)`.

use std::collections::BTreeMap;

use serde_json::Value;

use super::perm::{all_perms, compose, identity, inverse, parity};
use crate::algebra_core::{as_usize, value_to_rational};
use crate::error::{Error, Result};
use crate::exact_linalg::{rat, Rational, SparseRationalMatrix};

#[derive(Clone, Debug)]
pub struct Component {
    pub dim: usize,
    /// Degree of each basis vector (zero when not given).
    pub degrees: Vec<i64>,
    action: BTreeMap<Vec<usize>, SparseRationalMatrix>,
    pub differential: Option<SparseRationalMatrix>,
}

impl Component {
    /// Closes the given generators under composition; fails if they do not
    /// generate `Σ_n` or define inconsistent matrices.
    pub fn new(
        arity: usize,
        dim: usize,
        generators: Vec<(Vec<usize>, SparseRationalMatrix)>,
        degrees: Option<Vec<i64>>,
        differential: Option<SparseRationalMatrix>,
    ) -> Result<Self> {
        let bad = |m: String| Error::InvalidCollection(format!("arity {arity}: {m}"));
        for (p, m) in &generators {
            let mut sorted = p.clone();
            sorted.sort();
            if sorted != identity(arity) {
                return Err(bad(format!("{p:?} is not a permutation")));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(bad(format!("matrix of {p:?} is not {dim}x{dim}")));
            }
        }
        let mut action = BTreeMap::new();
        action.insert(identity(arity), SparseRationalMatrix::identity(dim));
        let mut queue = vec![identity(arity)];
        while let Some(g) = queue.pop() {
            for (s, ms) in &generators {
                let h = compose(&g, s);
                let mh = ms.mul(&action[&g]);
                match action.get(&h) {
                    Some(old) if *old != mh => {
                        return Err(bad(format!("the matrices do not define an action (at {h:?})")));
                    }
                    Some(_) => {}
                    None => {
                        action.insert(h.clone(), mh);
                        queue.push(h);
                    }
                }
            }
        }
        let count = all_perms(arity).len();
        if action.len() != count {
            return Err(bad(format!("generators reach {} of {count} permutations", action.len())));
        }
        let degrees = degrees.unwrap_or_else(|| vec![0; dim]);
        if degrees.len() != dim {
            return Err(bad("wrong number of degrees".into()));
        }
        let c = Self {
            dim,
            degrees,
            action,
            differential,
        };
        c.validate(arity)?;
        Ok(c)
    }

    /// Checks `ρ(π∘τ) = ρ(τ)ρ(π)` on all pairs and, if present, `d² = 0` and `dρ = ρd`.
    fn validate(&self, arity: usize) -> Result<()> {
        let bad = |m: String| Error::InvalidCollection(format!("arity {arity}: {m}"));
        for (p, mp) in &self.action {
            for (t, mt) in &self.action {
                if self.action[&compose(p, t)] != mt.mul(mp) {
                    return Err(bad(format!("ρ({p:?}∘{t:?}) ≠ ρ({t:?})ρ({p:?})")));
                }
            }
        }
        if let Some(d) = &self.differential {
            if d.rows() != self.dim || d.cols() != self.dim {
                return Err(bad("differential has the wrong shape".into()));
            }
            if !d.mul(d).is_zero() {
                return Err(bad("differential does not square to zero".into()));
            }
            for (p, m) in &self.action {
                if d.mul(m) != m.mul(d) {
                    return Err(bad(format!("differential is not equivariant under {p:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn act(&self, perm: &[usize]) -> &SparseRationalMatrix {
        &self.action[perm]
    }
}

#[derive(Clone, Debug)]
pub struct SymmetricCollection {
    pub name: String,
    components: BTreeMap<usize, Component>,
}

impl SymmetricCollection {
    pub fn new(name: impl Into<String>, components: BTreeMap<usize, Component>) -> Result<Self> {
        if components.keys().any(|&n| n < 2) {
            return Err(Error::InvalidCollection("generators must have arity at least 2".into()));
        }
        Ok(Self {
            name: name.into(),
            components,
        })
    }

    pub fn dim(&self, n: usize) -> usize {
        self.components.get(&n).map_or(0, |c| c.dim)
    }

    pub fn component(&self, n: usize) -> Option<&Component> {
        self.components.get(&n)
    }

    pub fn arities(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    pub fn has_differential(&self) -> bool {
        self.components
            .values()
            .any(|c| c.differential.as_ref().is_some_and(|d| !d.is_zero()))
    }

    /// `ρ(π)` on `V(n)`.
    pub fn act(&self, n: usize, perm: &[usize]) -> SparseRationalMatrix {
        match self.components.get(&n) {
            Some(c) => c.act(perm).clone(),
            None => SparseRationalMatrix::zero(0, 0),
        }
    }

    /// Collection with one binary generator spanning the trivial (`sign = false`)
    /// or sign representation.
    pub fn binary_one(name: &str, sign: bool) -> Self {
        let s = if sign { rat(-1) } else { rat(1) };
        let c = Component::new(2, 1, vec![(vec![1, 0], SparseRationalMatrix::from_dense(&[vec![s]]))], None, None)
            .expect("valid action");
        Self::new(name, BTreeMap::from([(2, c)])).expect("arity 2")
    }

    /// One binary generator spanning the regular representation `k[Σ_2]`.
    pub fn binary_regular(name: &str) -> Self {
        let swap = SparseRationalMatrix::from_dense(&[vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        let c = Component::new(2, 2, vec![(vec![1, 0], swap)], None, None).expect("valid action");
        Self::new(name, BTreeMap::from([(2, c)])).expect("arity 2")
    }

    /// Trivial `Σ_2` action on `dim` binary generators with the given degrees.
    pub fn binary_trivial(name: &str, degrees: Vec<i64>) -> Self {
        let dim = degrees.len();
        let c = Component::new(2, dim, vec![(vec![1, 0], SparseRationalMatrix::identity(dim))], Some(degrees), None)
            .expect("valid action");
        Self::new(name, BTreeMap::from([(2, c)])).expect("arity 2")
    }

    /// `V* ⊗ sgn`: `ρ∨(π) = sgn(π) ρ(π^{-1})^T`.
    pub fn dual_sign_twist(&self, name: &str) -> Result<Self> {
        let mut comps = BTreeMap::new();
        for (&n, c) in &self.components {
            let gens = c
                .action
                .keys()
                .map(|p| {
                    let m = c.act(&inverse(p)).transpose();
                    (p.clone(), if parity(p) == 1 { m.scale(&rat(-1)) } else { m })
                })
                .collect();
            comps.insert(n, Component::new(n, c.dim, gens, Some(c.degrees.clone()), None)?);
        }
        Self::new(name, comps)
    }
}

/// Parses the generator-collection JSON format:
/// `{"name": .., "arities": [{"arity": 2, "dim": 1, "degrees": [0],
///   "action": [{"perm": [2, 1], "matrix": [["1"]]}], "differential": [[..]]}]}`.
/// Permutations are 1-based image lists; matrices are row lists.
pub fn parse_collection_json(text: &str) -> Result<SymmetricCollection> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("collection").to_string();
    let arities = v
        .get("arities")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing `arities`".into()))?;
    let mut comps = BTreeMap::new();
    for a in arities {
        let n = as_usize(a.get("arity").unwrap_or(&Value::Null), "arity")?;
        let dim = as_usize(a.get("dim").unwrap_or(&Value::Null), "dim")?;
        let matrix = |m: &Value| -> Result<SparseRationalMatrix> {
            let rows = m.as_array().ok_or_else(|| Error::Parse("matrix must be a list of rows".into()))?;
            let rows: Vec<Vec<Rational>> = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| Error::Parse("matrix rows must be lists".into()))?
                        .iter()
                        .map(value_to_rational)
                        .collect()
                })
                .collect::<Result<_>>()?;
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(Error::Parse(format!("arity {n}: matrices must be {dim}x{dim}")));
            }
            Ok(if dim == 0 {
                SparseRationalMatrix::zero(0, 0)
            } else {
                SparseRationalMatrix::from_dense(&rows)
            })
        };
        let mut gens = Vec::new();
        for g in a.get("action").and_then(Value::as_array).into_iter().flatten() {
            let perm: Vec<usize> = g
                .get("perm")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("action entries need `perm`".into()))?
                .iter()
                .map(|x| as_usize(x, "permutation entry"))
                .collect::<Result<_>>()?;
            if perm.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::Parse(format!("arity {n}: permutation entries are 1..={n}")));
            }
            let m = matrix(g.get("matrix").unwrap_or(&Value::Null))?;
            gens.push((perm.iter().map(|x| x - 1).collect(), m));
        }
        let degrees = match a.get("degrees") {
            None | Some(Value::Null) => None,
            Some(d) => Some(
                d.as_array()
                    .ok_or_else(|| Error::Parse("`degrees` must be a list".into()))?
                    .iter()
                    .map(|x| x.as_i64().ok_or_else(|| Error::Parse("degrees must be integers".into())))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let differential = match a.get("differential") {
            None | Some(Value::Null) => None,
            Some(m) => Some(matrix(m)?),
        };
        if comps.insert(n, Component::new(n, dim, gens, degrees, differential)?).is_some() {
            return Err(Error::Parse(format!("arity {n} listed twice")));
        }
    }
    SymmetricCollection::new(name, comps)
}
