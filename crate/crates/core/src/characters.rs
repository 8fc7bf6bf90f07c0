//! Weight-multiplicity functions, exterior powers and decomposition into irreducibles.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qpoly::{QExpPoly, QPoly};
use crate::rootsys::{RootSystem, Weight};

/// A finitely supported function from weights to integers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightPoly {
    terms: BTreeMap<Weight, BigInt>,
}

impl WeightPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1·e^0`.
    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), 1)
    }

    pub fn monomial(w: Weight, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c.into());
        p
    }

    pub fn add_term(&mut self, w: Weight, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn get(&self, w: &Weight) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &WeightPoly) -> WeightPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> WeightPoly {
        let mut out = WeightPoly::zero();
        for (w, x) in &self.terms {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, other: &WeightPoly) -> WeightPoly {
        let mut out = WeightPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.add(b), x * y);
            }
        }
        out
    }

    /// Sum of all multiplicities.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Multiplicities are constant along simple reflections.
    pub fn is_w_invariant(&self, rs: &RootSystem) -> bool {
        self.terms.iter().all(|(w, c)| {
            (0..rs.rank()).all(|i| self.terms.get(&rs.reflect_weight_unchecked(i, w)) == Some(c))
        })
    }

    /// Same element with constant coefficients in `q`.
    pub fn to_qexp(&self) -> QExpPoly {
        let mut out = QExpPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &QPoly::constant(c.clone()));
        }
        out
    }
}

/// `χ_{θ_s} = r_s + Σ_{α∈R_s} e^α`.
pub fn little_adjoint_character(rs: &RootSystem) -> WeightPoly {
    let mut ch = WeightPoly::monomial(Weight::zero(rs.rank()), rs.short_rank() as i64);
    for a in rs.short_roots() {
        ch.add_term(rs.root_weight(a), BigInt::one());
    }
    ch
}

/// Layers of `∏_μ (1 + q e^μ)^{m(μ)}`, i.e. the characters of `⋀^i V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCharacter {
    layers: Vec<WeightPoly>,
}

impl GradedCharacter {
    /// Top degree `d`.
    pub fn dim(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layer(&self, i: usize) -> Option<&WeightPoly> {
        self.layers.get(i)
    }

    pub fn layers(&self) -> &[WeightPoly] {
        &self.layers
    }

    pub fn layer_dimensions(&self) -> Vec<BigInt> {
        self.layers.iter().map(WeightPoly::dimension).collect()
    }

    /// Decomposes `⋀^degree`.
    pub fn decompose_layer(&self, rs: &RootSystem, degree: usize) -> Result<LayerDecomposition> {
        let layer = self.layers.get(degree).ok_or(Error::IndexOutOfRange {
            index: degree,
            rank: self.dim(),
        })?;
        let constituents = decompose(rs, layer)?
            .into_iter()
            .map(|(highest_weight, multiplicity)| Constituent {
                dimension: weyl_dimension(rs, &highest_weight)
                    .expect("decompose only returns dominant weights"),
                highest_weight,
                multiplicity,
            })
            .collect();
        Ok(LayerDecomposition {
            degree,
            constituents,
        })
    }

    /// Decomposes every layer, in degree order.
    pub fn decompose_all(&self, rs: &RootSystem) -> Result<Vec<LayerDecomposition>> {
        (0..self.layers.len())
            .map(|d| self.decompose_layer(rs, d))
            .collect()
    }
}

pub fn exterior_powers(rs: &RootSystem, ch: &WeightPoly) -> Result<GradedCharacter> {
    if !ch.all_nonnegative() {
        return Err(Error::PreconditionViolated(
            "exterior powers need nonnegative multiplicities".into(),
        ));
    }
    let d: usize = ch
        .terms
        .values()
        .map(|c| usize::try_from(c).expect("dimension fits in usize"))
        .sum();
    let mut layers = vec![WeightPoly::zero(); d + 1];
    layers[0] = WeightPoly::one(rs.rank());
    let mut filled = 0;
    for (mu, m) in ch.terms() {
        let m = usize::try_from(m).expect("multiplicity fits in usize");
        for _ in 0..m {
            filled += 1;
            for deg in (1..=filled).rev() {
                let (lo, hi) = layers.split_at_mut(deg);
                for (w, c) in lo[deg - 1].terms() {
                    hi[0].add_term(w.add(mu), c.clone());
                }
            }
        }
    }
    Ok(GradedCharacter { layers })
}

fn check_dominant(rs: &RootSystem, lam: &Weight) -> Result<()> {
    rs.check_weight(lam)?;
    if lam.is_dominant() {
        Ok(())
    } else {
        Err(Error::NotDominant(lam.0.clone()))
    }
}

/// `Σ_{w∈W} sgn(w) m(w(λ+ρ) − ρ)`.
pub fn irreducible_multiplicity(rs: &RootSystem, wp: &WeightPoly, lam: &Weight) -> Result<BigInt> {
    check_dominant(rs, lam)?;
    let rho = rs.rho();
    let shifted = lam.add(&rho);
    let mut total = BigInt::zero();
    for w in rs.weyl_group()?.iter() {
        let mu = w.act(&shifted).sub(&rho);
        if let Some(c) = wp.terms.get(&mu) {
            if w.sign() > 0 {
                total += c;
            } else {
                total -= c;
            }
        }
    }
    Ok(total)
}

/// Moves `v` into the closed dominant chamber, returning the image and the sign
/// of the element used, or `None` when `v` lies on a wall.
fn to_dominant(rs: &RootSystem, v: &Weight) -> Option<(Weight, i32)> {
    let mut v = v.clone();
    let mut sign = 1;
    while let Some(i) = v.0.iter().position(|&c| c < 0) {
        v = rs.reflect_weight_unchecked(i, &v);
        sign = -sign;
    }
    v.0.iter().all(|&c| c > 0).then_some((v, sign))
}

/// Multiplicities of the irreducible constituents, highest first.
///
/// Each weight `μ` is sent to the chamber by the dot action; `μ` contributes
/// `sgn(w)·m(μ)` to `λ` when `w(μ+ρ) = λ+ρ`. This is the alternating sum of
/// [`irreducible_multiplicity`] regrouped by weight rather than by group element.
pub fn decompose(rs: &RootSystem, wp: &WeightPoly) -> Result<Vec<(Weight, BigInt)>> {
    if !wp.is_w_invariant(rs) {
        return Err(Error::PreconditionViolated(
            "decompose needs a W-invariant weight function".into(),
        ));
    }
    let rho = rs.rho();
    let mut acc: BTreeMap<Weight, BigInt> = BTreeMap::new();
    for (mu, c) in wp.terms() {
        rs.check_weight(mu)?;
        if let Some((v, sign)) = to_dominant(rs, &mu.add(&rho)) {
            let entry = acc.entry(v.sub(&rho)).or_default();
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
    }
    let mut out: Vec<(Weight, BigInt)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    out.sort_by(|(a, _), (b, _)| {
        rs.weight_height(b)
            .cmp(&rs.weight_height(a))
            .then_with(|| b.cmp(a))
    });
    Ok(out)
}

/// `∏_{α>0} (λ+ρ, α∨)/(ρ, α∨)`.
pub fn weyl_dimension(rs: &RootSystem, lam: &Weight) -> Result<BigInt> {
    check_dominant(rs, lam)?;
    let rho = rs.rho();
    let shifted = lam.add(&rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in rs.positive_roots() {
        let c = rs.coroot(a)?;
        num *= shifted.pair(c);
        den *= rho.pair(c);
    }
    Ok(num / den)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Constituent {
    pub highest_weight: Weight,
    #[serde(serialize_with = "crate::qpoly::ser_bigint")]
    pub dimension: BigInt,
    #[serde(serialize_with = "crate::qpoly::ser_bigint")]
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    pub degree: usize,
    pub constituents: Vec<Constituent>,
}

impl LayerDecomposition {
    /// `Σ mult·dim`.
    pub fn reconstructed_dimension(&self) -> BigInt {
        self.constituents
            .iter()
            .map(|c| &c.multiplicity * &c.dimension)
            .sum()
    }

    pub fn multiplicity_of(&self, lam: &Weight) -> BigInt {
        self.constituents
            .iter()
            .find(|c| &c.highest_weight == lam)
            .map(|c| c.multiplicity.clone())
            .unwrap_or_default()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;
    use proptest::prelude::*;

    fn rs(f: Family, r: usize) -> RootSystem {
        RootSystem::from_family(f, r).unwrap()
    }

    fn binom(n: u64, k: u64) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn little_adjoint_dimensions() {
        for (f, r, d) in [
            (Family::B, 3, 7),
            (Family::C, 3, 14),
            (Family::F, 4, 26),
            (Family::G, 2, 7),
        ] {
            let rs = rs(f, r);
            let ch = little_adjoint_character(&rs);
            assert_eq!(ch.dimension(), BigInt::from(d));
            assert_eq!(rs.little_adjoint_dim(), d);
            assert!(ch.is_w_invariant(&rs));
            let ts = rs.root_weight(rs.theta_s());
            assert_eq!(weyl_dimension(&rs, &ts).unwrap(), BigInt::from(d));
            assert_eq!(decompose(&rs, &ch).unwrap(), vec![(ts, BigInt::one())]);
        }
    }

    #[test]
    fn layer_dimensions_are_binomial() {
        for (f, r) in [(Family::B, 2), (Family::G, 2), (Family::C, 3)] {
            let rs = rs(f, r);
            let ch = little_adjoint_character(&rs);
            let g = exterior_powers(&rs, &ch).unwrap();
            let d = g.dim() as u64;
            assert_eq!(g.layer(1).unwrap(), &ch);
            for (i, dim) in g.layer_dimensions().into_iter().enumerate() {
                assert_eq!(dim, binom(d, i as u64));
            }
            assert_eq!(g.layer(g.dim()).unwrap(), &WeightPoly::one(r));
        }
    }

    #[test]
    fn g2_third_layer_zero_weight() {
        let rs = rs(Family::G, 2);
        let g = exterior_powers(&rs, &little_adjoint_character(&rs)).unwrap();
        assert_eq!(g.layer(3).unwrap().get(&Weight::zero(2)), BigInt::from(5));
    }

    #[test]
    fn b2_second_power_is_adjoint() {
        let rs = rs(Family::B, 2);
        let g = exterior_powers(&rs, &little_adjoint_character(&rs)).unwrap();
        let dec = decompose(&rs, g.layer(2).unwrap()).unwrap();
        let theta = rs.root_weight(rs.theta());
        assert_eq!(dec, vec![(theta.clone(), BigInt::one())]);
        assert_eq!(weyl_dimension(&rs, &theta).unwrap(), BigInt::from(10));
    }

    #[test]
    fn alternating_sum_agrees_with_chamber_folding() {
        for (f, r) in [(Family::B, 2), (Family::G, 2), (Family::B, 3)] {
            let rs = rs(f, r);
            let g = exterior_powers(&rs, &little_adjoint_character(&rs)).unwrap();
            for layer in g.layers() {
                let dec = decompose(&rs, layer).unwrap();
                let dec_map: BTreeMap<_, _> = dec.iter().cloned().collect();
                for w in layer.terms().map(|(w, _)| w).filter(|w| w.is_dominant()) {
                    let m = irreducible_multiplicity(&rs, layer, w).unwrap();
                    assert_eq!(m, dec_map.get(w).cloned().unwrap_or_default());
                }
            }
        }
    }

    #[test]
    fn b2_little_adjoint_in_first_and_fourth_power() {
        let rs = rs(Family::B, 2);
        let g = exterior_powers(&rs, &little_adjoint_character(&rs)).unwrap();
        let ts = rs.root_weight(rs.theta_s());
        for (deg, expect) in [(1, 1), (2, 0), (3, 0), (4, 1)] {
            let m = irreducible_multiplicity(&rs, g.layer(deg).unwrap(), &ts).unwrap();
            assert_eq!(m, BigInt::from(expect), "degree {deg}");
        }
    }

    #[test]
    fn layers_reconstruct() {
        let rs = rs(Family::C, 3);
        let g = exterior_powers(&rs, &little_adjoint_character(&rs)).unwrap();
        for dec in g.decompose_all(&rs).unwrap() {
            assert_eq!(
                dec.reconstructed_dimension(),
                g.layer(dec.degree).unwrap().dimension()
            );
            assert!(dec
                .constituents
                .iter()
                .all(|c| c.multiplicity > BigInt::zero()));
        }
    }

    #[test]
    fn errors() {
        let rs = rs(Family::B, 2);
        let ch = little_adjoint_character(&rs);
        assert!(matches!(
            irreducible_multiplicity(&rs, &ch, &Weight(vec![-1, 0])),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            weyl_dimension(&rs, &Weight(vec![0, -2])),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            weyl_dimension(&rs, &Weight(vec![0, 0, 0])),
            Err(Error::RankMismatch { .. })
        ));
        let lopsided = WeightPoly::monomial(Weight(vec![1, 0]), 1);
        assert!(matches!(
            decompose(&rs, &lopsided),
            Err(Error::PreconditionViolated(_))
        ));
    }

    proptest! {
        #[test]
        fn multiplicity_is_linear(a in 0i64..4, b in 0i64..4, deg in 0usize..6) {
            let rs = rs(Family::B, 2);
            let g = exterior_powers(&rs, &little_adjoint_character(&rs)).unwrap();
            let x = g.layer(deg).unwrap();
            let y = g.layer(5 - deg).unwrap();
            let mix = x.scale(&a.into()).add(&y.scale(&b.into()));
            for lam in [Weight(vec![0, 0]), Weight(vec![0, 2]), Weight(vec![2, 0])] {
                let lhs = irreducible_multiplicity(&rs, &mix, &lam).unwrap();
                let rhs = irreducible_multiplicity(&rs, x, &lam).unwrap() * a
                    + irreducible_multiplicity(&rs, y, &lam).unwrap() * b;
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
