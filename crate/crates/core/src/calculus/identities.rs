//! Seeded random checks of the chain-level identities.

use rand::Rng;

use super::{cartan_check, commutator, contract, lie_l};
use crate::algebra_core::FinDimAlgebra;
use crate::error::Result;
use crate::hochschild::{sign, Hochschild, HochschildChain, HochschildCochain};
use crate::report::Check;
use crate::sampling::rng_for;

const NAMES: [&str; 12] = [
    "b^2 = 0",
    "B^2 = 0",
    "bB + Bb = 0",
    "delta^2 = 0",
    "cup Leibniz",
    "bracket derivation",
    "brace pre-Lie",
    "[b, i_D] = i_{delta D}",
    "i_D i_E = (-1)^{|D||E|} i_{E cup D}",
    "[L_D, L_E] = L_{[D,E]}",
    "[b, L_D] + L_{delta D} = 0",
    "[L_D, B] = 0",
];

/// Runs every identity on `samples` seeded inputs, followed by the Cartan layers.
/// Cochain arities satisfy `|D| + |E| ≤ 3` and chains have degree `|D| + |E| + 1`.
pub fn identity_suite(a: &FinDimAlgebra, samples: usize, seed: u64) -> Result<Vec<Check>> {
    let h = Hochschild::new(a)?;
    let mut witness: Vec<Option<String>> = vec![None; NAMES.len()];
    for i in 0..samples {
        let mut rng = rng_for(seed, "identities", i as u64);
        let d = rng.gen_range(0..=2);
        let e = rng.gen_range(0..=(3 - d).min(2));
        let f = rng.gen_range(0..=1);
        let n = d + e + 1;
        let dc = h.random_cochain(d, &mut rng);
        let ec = h.random_cochain(e, &mut rng);
        let fc = h.random_cochain(f, &mut rng);
        let x = h.random_chain(n, &mut rng);
        let ok = sample(&h, &dc, &ec, &fc, &x)?;
        for (k, good) in ok.into_iter().enumerate() {
            if !good && witness[k].is_none() {
                witness[k] = Some(format!("sample {i}: arities ({d}, {e}, {f}), chain degree {n}"));
            }
        }
    }
    let mut checks: Vec<Check> = NAMES
        .iter()
        .zip(witness)
        .map(|(name, w)| match w {
            None => Check::pass(*name),
            Some(w) => Check::fail(*name, w),
        })
        .collect();
    checks.extend(cartan_check(a, samples, seed)?);
    Ok(checks)
}

fn sample(
    h: &Hochschild,
    dc: &HochschildCochain,
    ec: &HochschildCochain,
    fc: &HochschildCochain,
    x: &HochschildChain,
) -> Result<Vec<bool>> {
    let (d, e) = (dc.d, ec.d);
    let delta = |c: &HochschildCochain| h.cochain_delta(c);
    let cup = |p: &HochschildCochain, q: &HochschildCochain| h.cup(p, q);
    let br = |p: &HochschildCochain, q: &HochschildCochain| h.gerstenhaber_bracket(p, q);
    let i_ = |c: &HochschildCochain, y: &HochschildChain| contract(h, c, y);
    let l_ = |c: &HochschildCochain, y: &HochschildChain| lie_l(h, c, y);
    let mut ok = Vec::with_capacity(NAMES.len());

    let bx = h.b(x);
    let bbx = h.connes_b(x);
    ok.push(x.p < 2 || h.b(&bx).is_zero());
    ok.push(h.connes_b(&bbx).is_zero());
    ok.push(h.b(&bbx).add(&h.connes_b(&bx)).is_zero());
    ok.push(delta(&delta(dc)).is_zero());
    ok.push(delta(&cup(dc, ec)?) == cup(&delta(dc), ec)?.add(&cup(dc, &delta(ec))?.scale(&sign(d))));
    let e1 = if d + e == 0 { fc.clone() } else { ec.clone() };
    if d + e1.d == 0 {
        ok.push(true);
    } else {
        let lhs = delta(&br(dc, &e1)?);
        let rhs = br(&delta(dc), &e1)?.add(&br(dc, &delta(&e1))?.scale(&sign(d + 1)));
        ok.push(lhs == rhs);
    }
    ok.push(if d == 0 || e == 0 {
        true
    } else {
        let lhs = h.brace(&h.brace(dc, std::slice::from_ref(ec))?, std::slice::from_ref(fc))?;
        let ef = h.brace(ec, std::slice::from_ref(fc))?;
        let rhs = h
            .brace(dc, &[ef])?
            .add(&h.brace(dc, &[ec.clone(), fc.clone()])?)
            .add(&h.brace(dc, &[fc.clone(), ec.clone()])?.scale(&sign((e + 1) * (fc.d + 1))));
        lhs == rhs
    });
    ok.push(commutator(&h.b(&i_(dc, x)), &i_(dc, &bx), 1, d) == i_(&delta(dc), x));
    ok.push(i_(dc, &i_(ec, x)) == i_(&cup(ec, dc)?, x).scale(&sign(d * e)));
    ok.push(if d + e == 0 {
        commutator(&l_(dc, &l_(ec, x)), &l_(ec, &l_(dc, x)), 1, 1).is_zero()
    } else {
        commutator(&l_(dc, &l_(ec, x)), &l_(ec, &l_(dc, x)), d + 1, e + 1) == l_(&br(dc, ec)?, x)
    });
    ok.push(commutator(&h.b(&l_(dc, x)), &l_(dc, &bx), 1, d + 1).add(&l_(&delta(dc), x)).is_zero());
    ok.push(commutator(&l_(dc, &bbx), &h.connes_b(&l_(dc, x)), d + 1, 1).is_zero());
    Ok(ok)
}
