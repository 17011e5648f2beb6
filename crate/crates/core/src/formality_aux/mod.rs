//! Drinfeld–Kohno Lie algebras `t(n)` and the even zeta series attached to
//! the KZ associator.

mod dk;
mod zeta;
#[cfg(test)]
mod tests;

pub use dk::{
    dk_dims, dk_relations, free_lie_dims, lyndon_words, substitution_maps, DkReport, EnvelopingTower,
    SubstitutionMap,
};
pub use zeta::{
    bernoulli_numbers, even_zeta_series, gamma_phi_series, numeric_zeta, zeta_phi_check, GammaPhiSeries, GammaTerm,
    RationalPowerSeries, ZetaReport, ZetaRow,
};
