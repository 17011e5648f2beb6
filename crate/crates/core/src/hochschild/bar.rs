//! The bullet product on the bar construction of Hochschild cochains.
//!
//! Elements of `Bar(C^•(A,A))` are formal sums of tensor words
//! `(D_1|…|D_m)`. The product `u•v` sums over all ways of splitting the word
//! `v` into consecutive blocks that either stand alone between the letters
//! of `u` or are inserted as brace arguments into a letter of `u`, with the
//! Koszul sign `(−1)^{(|D|+1)(|E|+1)}` for every letter `E` of `v` that ends
//! up left of a letter `D` of `u`.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{sign, Hochschild, HochschildCochain};
use crate::error::{Error, Result};
use crate::exact_linalg::{rat, Rational};

/// One tensor word with its coefficient.
#[derive(Clone, Debug)]
pub struct TensorTerm {
    pub coef: Rational,
    pub word: Vec<HochschildCochain>,
}

/// Formal sum of tensor words.
#[derive(Clone, Debug, Default)]
pub struct BarElement {
    pub terms: Vec<TensorTerm>,
}

impl BarElement {
    pub fn word(word: Vec<HochschildCochain>) -> Self {
        Self {
            terms: vec![TensorTerm { coef: rat(1), word }],
        }
    }

    pub fn add(&mut self, other: BarElement) {
        self.terms.extend(other.terms);
    }

    /// Bar degree `Σ (|D_i| + 1)` of a word.
    pub fn word_degree(word: &[HochschildCochain]) -> usize {
        word.iter().map(|d| d.d + 1).sum()
    }

    /// Coordinates grouped by arity pattern: each word is expanded as the
    /// Kronecker product of its letters, so equal elements have equal maps.
    pub fn coordinates(&self) -> BTreeMap<Vec<usize>, Vec<Rational>> {
        canonical(self.terms.iter().map(|t| (t.coef.clone(), vec![t.word.clone()])))
            .into_iter()
            .map(|(k, v)| (k.into_iter().flatten().collect(), v))
            .collect()
    }

    pub fn equals(&self, other: &BarElement) -> bool {
        let mut diff = self.clone();
        diff.add(other.scaled(&rat(-1)));
        diff.coordinates().values().all(|v| v.iter().all(Zero::is_zero))
    }

    pub fn scaled(&self, c: &Rational) -> BarElement {
        BarElement {
            terms: self
                .terms
                .iter()
                .map(|t| TensorTerm {
                    coef: &t.coef * c,
                    word: t.word.clone(),
                })
                .collect(),
        }
    }
}

fn kron(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(x * y);
        }
    }
    out
}

/// Canonical coordinates of a sum of tuples of words.
pub(crate) fn canonical(
    terms: impl Iterator<Item = (Rational, Vec<Vec<HochschildCochain>>)>,
) -> BTreeMap<Vec<Vec<usize>>, Vec<Rational>> {
    let mut out: BTreeMap<Vec<Vec<usize>>, Vec<Rational>> = BTreeMap::new();
    for (coef, groups) in terms {
        if coef.is_zero() {
            continue;
        }
        let key: Vec<Vec<usize>> = groups.iter().map(|w| w.iter().map(|d| d.d).collect()).collect();
        let mut v = vec![coef];
        for w in &groups {
            for d in w {
                v = kron(&v, &d.data);
            }
        }
        let slot = out
            .entry(key)
            .or_insert_with(|| vec![Rational::zero(); v.len()]);
        for (s, x) in slot.iter_mut().zip(v) {
            *s += x;
        }
    }
    out
}

/// `u • v` for two words, with words longer than `max_len` rejected.
pub fn bar_bullet(
    h: &Hochschild,
    u: &[HochschildCochain],
    v: &[HochschildCochain],
    max_len: usize,
) -> Result<BarElement> {
    if u.len() > max_len || v.len() > max_len {
        return Err(Error::LengthBound(max_len));
    }
    let mut out = BarElement::default();
    // positions: 2m+1 slots (before D1, inside D1, after D1, inside D2, ...)
    let m = u.len();
    let n = v.len();
    let slots = 2 * m + 1;
    let mut counts = vec![0usize; slots];
    distribute(n, slots, 0, &mut counts, &mut |counts| {
        let mut word = Vec::new();
        let mut exp = 0usize;
        let mut j = 0usize;
        // E's in slot 0 pass every D
        for _ in 0..counts[0] {
            exp += (v[j].d + 1) * u.iter().map(|d| d.d + 1).sum::<usize>();
            word.push(v[j].clone());
            j += 1;
        }
        for (i, d) in u.iter().enumerate() {
            let inside = counts[2 * i + 1];
            let args = &v[j..j + inside];
            let later: usize = u[i + 1..].iter().map(|d| d.d + 1).sum();
            for e in args {
                exp += (e.d + 1) * later;
            }
            if inside > d.d {
                return;
            }
            let braced = match h.brace(d, args) {
                Ok(b) => b,
                Err(_) => return,
            };
            word.push(braced);
            j += inside;
            for _ in 0..counts[2 * i + 2] {
                exp += (v[j].d + 1) * later;
                word.push(v[j].clone());
                j += 1;
            }
        }
        out.terms.push(TensorTerm { coef: sign(exp), word });
    });
    Ok(out)
}

fn distribute(n: usize, slots: usize, k: usize, counts: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if k == slots - 1 {
        counts[k] = n;
        f(counts);
        return;
    }
    for c in 0..=n {
        counts[k] = c;
        distribute(n - c, slots, k + 1, counts, f);
    }
}

/// `•` extended bilinearly to formal sums.
pub fn bullet_sums(h: &Hochschild, u: &BarElement, v: &BarElement, max_len: usize) -> Result<BarElement> {
    let mut out = BarElement::default();
    for a in &u.terms {
        for b in &v.terms {
            let prod = bar_bullet(h, &a.word, &b.word, max_len)?;
            out.add(prod.scaled(&(&a.coef * &b.coef)));
        }
    }
    Ok(out)
}

/// Deconcatenation coproduct of one word: `Σ_k (D_1..D_k) ⊗ (D_{k+1}..D_n)`.
pub fn deconcatenate(word: &[HochschildCochain]) -> Vec<(Vec<HochschildCochain>, Vec<HochschildCochain>)> {
    (0..=word.len())
        .map(|k| (word[..k].to_vec(), word[k..].to_vec()))
        .collect()
}

/// Checks `Δ(u•v) = Δ(u)•Δ(v)` for two words, with the Koszul sign
/// `(−1)^{|u_2||v_1|}` in the tensor square.
pub fn check_bialgebra(h: &Hochschild, u: &[HochschildCochain], v: &[HochschildCochain], max_len: usize) -> Result<bool> {
    let prod = bar_bullet(h, u, v, 2 * max_len)?;
    let mut lhs: Vec<(Rational, Vec<Vec<HochschildCochain>>)> = Vec::new();
    for t in &prod.terms {
        for (a, b) in deconcatenate(&t.word) {
            lhs.push((t.coef.clone(), vec![a, b]));
        }
    }
    let mut rhs: Vec<(Rational, Vec<Vec<HochschildCochain>>)> = Vec::new();
    for (u1, u2) in deconcatenate(u) {
        for (v1, v2) in deconcatenate(v) {
            let s = sign(BarElement::word_degree(&u2) * BarElement::word_degree(&v1));
            let p1 = bar_bullet(h, &u1, &v1, 2 * max_len)?;
            let p2 = bar_bullet(h, &u2, &v2, 2 * max_len)?;
            for a in &p1.terms {
                for b in &p2.terms {
                    rhs.push((&s * &a.coef * &b.coef, vec![a.word.clone(), b.word.clone()]));
                }
            }
        }
    }
    let l = canonical(lhs.into_iter());
    let mut r = canonical(rhs.into_iter());
    for (k, v) in &l {
        let slot = r.entry(k.clone()).or_insert_with(|| vec![Rational::zero(); v.len()]);
        for (s, x) in slot.iter_mut().zip(v) {
            *s -= x;
        }
    }
    Ok(r.values().all(|v| v.iter().all(Zero::is_zero)))
}
