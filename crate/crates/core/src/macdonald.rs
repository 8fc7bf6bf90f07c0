//! Weight functions ∇ and Δ at integer labels, their constant terms, and the
//! two inner products built from them.
//!
//! With `t_α = q^{k(α)}`:
//!
//! * `∇ = ∏_{α∈R} ∏_{i<k(α)} (1 − q^i e^α)`, used in `⟨f, h⟩ = ct(f h̄ ∇)/|W|`;
//! * `Δ = ∏_{α>0} ∏_{i<k(α)} (1 − q^i e^{−α})(1 − q^{i+1} e^α)`, used in `(f, h) = ct(f h* Δ)`.
//!
//! Δ is the asymmetric Cherednik weight. Its constant term is the closed
//! product of [`ct_delta_closed`], and `⟨f, h̄*⟩ W(q^k) = (f, h)` for W-invariant `f, h`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qpoly::{QExpPoly, QPoly};
use crate::rootsys::{KLabel, RootSystem};

/// Environment variable that overrides [`ExpansionLimits::max_terms`].
pub const TERM_CAP_ENV: &str = "LITTLEADJ_TERM_CAP";

/// Bounds on brute-force product expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionLimits {
    /// Largest number of binomial factors, `Σ_{α∈R} k(α)`, that will be expanded.
    pub max_factors: usize,
    /// Largest number of `(weight, q-exponent)` terms kept at any point.
    pub max_terms: usize,
}

impl Default for ExpansionLimits {
    fn default() -> Self {
        ExpansionLimits {
            max_factors: 30,
            max_terms: 4_000_000,
        }
    }
}

impl ExpansionLimits {
    /// Defaults, with the term cap taken from `LITTLEADJ_TERM_CAP` when set.
    pub fn from_env() -> Self {
        let mut lim = Self::default();
        if let Some(cap) = std::env::var(TERM_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            lim.max_terms = cap;
        }
        lim
    }

    pub fn global() -> Self {
        static LIMITS: OnceLock<ExpansionLimits> = OnceLock::new();
        *LIMITS.get_or_init(Self::from_env)
    }
}

/// Number of binomial factors in ∇ (and in Δ): `Σ_{α∈R} k(α)`.
pub fn factor_count(rs: &RootSystem, label: KLabel) -> usize {
    rs.all_roots()
        .iter()
        .map(|a| label.of(a.length) as usize)
        .sum()
}

fn check_label(label: KLabel) -> Result<()> {
    if label.is_positive() {
        Ok(())
    } else {
        Err(Error::InvalidLabel(format!("{label} must be positive")))
    }
}

fn expand(
    rs: &RootSystem,
    label: KLabel,
    limits: &ExpansionLimits,
    factors: impl Iterator<Item = (i64, crate::rootsys::Weight)>,
) -> Result<QExpPoly> {
    let n = factor_count(rs, label);
    if n > limits.max_factors {
        return Err(Error::ExpansionTooLarge(format!(
            "{} at label {label} has {n} factors (limit {})",
            rs.root_type(),
            limits.max_factors
        )));
    }
    let mut f = QExpPoly::one(rs.rank());
    for (qexp, mu) in factors {
        f = f.mul_binomial(-1, 2 * qexp, &mu);
        if f.term_count() > limits.max_terms {
            return Err(Error::ExpansionTooLarge(format!(
                "more than {} terms while expanding for {}",
                limits.max_terms,
                rs.root_type()
            )));
        }
    }
    Ok(f)
}

pub fn nabla(rs: &RootSystem, label: KLabel) -> Result<QExpPoly> {
    nabla_with(rs, label, &ExpansionLimits::global())
}

pub fn nabla_with(rs: &RootSystem, label: KLabel, limits: &ExpansionLimits) -> Result<QExpPoly> {
    check_label(label)?;
    let factors = rs.all_roots().iter().flat_map(|a| {
        let mu = rs.root_weight(a);
        (0..label.of(a.length) as i64).map(move |i| (i, mu.clone()))
    });
    expand(rs, label, limits, factors)
}

pub fn delta(rs: &RootSystem, label: KLabel) -> Result<QExpPoly> {
    delta_with(rs, label, &ExpansionLimits::global())
}

pub fn delta_with(rs: &RootSystem, label: KLabel, limits: &ExpansionLimits) -> Result<QExpPoly> {
    check_label(label)?;
    let factors = rs.positive_roots().iter().flat_map(|a| {
        let mu = rs.root_weight(a);
        (0..label.of(a.length) as i64).flat_map(move |i| [(i, mu.neg()), (i + 1, mu.clone())])
    });
    expand(rs, label, limits, factors)
}

pub fn constant_term(f: &QExpPoly) -> QPoly {
    f.constant_term()
}

/// `⟨f, h⟩ = ct(f h̄ ∇)/|W|`.
pub fn macdonald_inner(
    rs: &RootSystem,
    label: KLabel,
    f: &QExpPoly,
    h: &QExpPoly,
) -> Result<QPoly> {
    let nab = nabla(rs, label)?;
    macdonald_inner_with(rs, &nab, f, h)
}

/// As [`macdonald_inner`] with a precomputed ∇.
pub fn macdonald_inner_with(
    rs: &RootSystem,
    nab: &QExpPoly,
    f: &QExpPoly,
    h: &QExpPoly,
) -> Result<QPoly> {
    let order = BigInt::from(rs.weyl_group()?.len());
    f.mul(&h.bar()).ct_of_product(nab).div_integer(&order)
}

/// `(f, h) = ct(f h* Δ)`.
pub fn cherednik_inner(
    rs: &RootSystem,
    label: KLabel,
    f: &QExpPoly,
    h: &QExpPoly,
) -> Result<QPoly> {
    let del = delta(rs, label)?;
    Ok(cherednik_inner_with(&del, f, h))
}

/// As [`cherednik_inner`] with a precomputed Δ.
pub fn cherednik_inner_with(del: &QExpPoly, f: &QExpPoly, h: &QExpPoly) -> QPoly {
    f.mul(&h.star()).ct_of_product(del)
}

/// `∏_{α>0} ∏_{i=1}^{k(α)} (1 − q^{(ρ_k,α∨)+i}) / (1 − q^{(ρ_k,α∨)+1−i})`.
pub fn ct_delta_closed(rs: &RootSystem, label: KLabel) -> Result<QPoly> {
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for a in rs.positive_roots() {
        let n = rs.special_height(label, a)?;
        for i in 1..=label.of(a.length) as i64 {
            num = num.mul(&QPoly::one_plus(-1, n + i));
            den = den.mul(&QPoly::one_plus(-1, n + 1 - i));
        }
    }
    num.div_exact(&den)
}

/// `W(q^k) = ∏_{α>0} (1 − q^{(ρ_k,α∨)+k(α)}) / (1 − q^{(ρ_k,α∨)})`.
pub fn poincare_product(rs: &RootSystem, label: KLabel) -> Result<QPoly> {
    check_label(label)?;
    let mut num = QPoly::one();
    let mut den = QPoly::one();
    for a in rs.positive_roots() {
        let n = rs.special_height(label, a)?;
        num = num.mul(&QPoly::one_plus(-1, n + label.of(a.length) as i64));
        den = den.mul(&QPoly::one_plus(-1, n));
    }
    num.div_exact(&den)
}

/// `W(q^k) = Σ_{w∈W} q^{Σ_{α∈R(w)} k(α)}`.
pub fn poincare_sum(rs: &RootSystem, label: KLabel) -> Result<QPoly> {
    let pos = rs.positive_roots();
    let mut out = QPoly::zero();
    for w in rs.weyl_group()?.iter() {
        let e: i64 = w
            .inversions()
            .into_iter()
            .map(|j| label.of(pos[j].length) as i64)
            .sum();
        out = out.add(&QPoly::q(e));
    }
    Ok(out)
}

/// Whether every coefficient is constant along simple reflections.
pub fn is_w_invariant(rs: &RootSystem, f: &QExpPoly) -> bool {
    f.terms()
        .all(|(w, p)| (0..rs.rank()).all(|i| f.coeff(&rs.reflect_weight_unchecked(i, w)) == *p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub holds: bool,
    /// `⟨f, h̄*⟩ · W(q^k)`.
    pub lhs: QPoly,
    /// `(f, h)`.
    pub rhs: QPoly,
}

impl RelationReport {
    pub fn diff(&self) -> QPoly {
        self.lhs.sub(&self.rhs)
    }
}

/// Checks `⟨f, h̄*⟩ · W(q^k) = (f, h)` for W-invariant `f, h`.
pub fn verify_weight_relation(
    rs: &RootSystem,
    label: KLabel,
    f: &QExpPoly,
    h: &QExpPoly,
) -> Result<RelationReport> {
    for (name, x) in [("f", f), ("h", h)] {
        if !is_w_invariant(rs, x) {
            return Err(Error::PreconditionViolated(format!(
                "{name} is not W-invariant"
            )));
        }
    }
    let h_bar_star = h.bar().star();
    let lhs = macdonald_inner(rs, label, f, &h_bar_star)?.mul(&poincare_product(rs, label)?);
    let rhs = cherednik_inner(rs, label, f, h)?;
    Ok(RelationReport {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::little_adjoint_character;
    use crate::rootsys::{Family, Weight};
    use proptest::prelude::*;

    fn rs(f: Family, r: usize) -> RootSystem {
        RootSystem::from_family(f, r).unwrap()
    }

    fn poly(pairs: &[(i64, i64)]) -> QPoly {
        QPoly::from_degrees(pairs.iter().copied())
    }

    #[test]
    fn factor_counts() {
        assert_eq!(factor_count(&rs(Family::B, 2), KLabel::LITTLE_ADJOINT), 12);
        assert_eq!(factor_count(&rs(Family::G, 2), KLabel::LITTLE_ADJOINT), 18);
    }

    #[test]
    fn nabla_equal_labels_is_orthonormal() {
        for (f, r) in [(Family::B, 2), (Family::G, 2)] {
            let rs = rs(f, r);
            let one = QExpPoly::one(r);
            let chi = little_adjoint_character(&rs).to_qexp();
            let nab = nabla(&rs, KLabel::EQUAL).unwrap();
            assert_eq!(nab.eval_at_one(), BigInt::from(0));
            let order = rs.weyl_group().unwrap().len() as i64;
            assert_eq!(nab.constant_term(), QPoly::constant(order));
            assert_eq!(
                macdonald_inner_with(&rs, &nab, &one, &one).unwrap(),
                QPoly::one()
            );
            assert_eq!(
                macdonald_inner_with(&rs, &nab, &chi, &chi).unwrap(),
                QPoly::one()
            );
            assert_eq!(
                macdonald_inner_with(&rs, &nab, &one, &chi).unwrap(),
                QPoly::zero()
            );
        }
    }

    #[test]
    fn ct_delta_matches_closed_form_small() {
        for (f, r) in [(Family::B, 2), (Family::G, 2)] {
            let rs = rs(f, r);
            for label in [KLabel::EQUAL, KLabel::LITTLE_ADJOINT] {
                let del = delta(&rs, label).unwrap();
                assert_eq!(
                    constant_term(&del),
                    ct_delta_closed(&rs, label).unwrap(),
                    "{f}{r} {label}"
                );
            }
        }
    }

    #[test]
    fn closed_form_edge_cases() {
        let b2 = rs(Family::B, 2);
        assert_eq!(
            ct_delta_closed(&b2, KLabel::new(0, 0)).unwrap(),
            QPoly::one()
        );
        assert!(matches!(
            poincare_product(&b2, KLabel::new(0, 1)),
            Err(Error::InvalidLabel(_))
        ));
        assert!(matches!(
            delta(&rs(Family::F, 4), KLabel::EQUAL),
            Err(Error::ExpansionTooLarge(_))
        ));
        let tight = ExpansionLimits {
            max_factors: 30,
            max_terms: 10,
        };
        assert!(matches!(
            delta_with(&b2, KLabel::LITTLE_ADJOINT, &tight),
            Err(Error::ExpansionTooLarge(_))
        ));
    }

    #[test]
    fn poincare_b2() {
        let b2 = rs(Family::B, 2);
        let expect = poly(&[(0, 1), (1, 1)]).mul(&poly(&[(0, 1), (1, 1), (2, 1), (3, 1)]));
        assert_eq!(poincare_sum(&b2, KLabel::EQUAL).unwrap(), expect);
        assert_eq!(poincare_product(&b2, KLabel::EQUAL).unwrap(), expect);
        let g2 = rs(Family::G, 2);
        assert_eq!(
            poincare_sum(&g2, KLabel::LITTLE_ADJOINT).unwrap(),
            poincare_product(&g2, KLabel::LITTLE_ADJOINT).unwrap()
        );
        assert_eq!(
            poincare_product(&g2, KLabel::EQUAL).unwrap().eval_at_one(),
            BigInt::from(12)
        );
    }

    #[test]
    fn weight_relation_b2() {
        let b2 = rs(Family::B, 2);
        let one = QExpPoly::one(2);
        let chi = little_adjoint_character(&b2).to_qexp();
        for (f, h) in [(&one, &one), (&chi, &one), (&one, &chi), (&chi, &chi)] {
            let rep = verify_weight_relation(&b2, KLabel::LITTLE_ADJOINT, f, h).unwrap();
            assert!(rep.holds, "{} vs {}", rep.lhs, rep.rhs);
            assert!(rep.diff().is_zero());
        }
        let ts = QExpPoly::monomial(b2.root_weight(b2.theta_s()), QPoly::one());
        assert!(matches!(
            verify_weight_relation(&b2, KLabel::LITTLE_ADJOINT, &ts, &one),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn macdonald_inner_rejects_nonintegral() {
        let b2 = rs(Family::B, 2);
        let e = QExpPoly::monomial(Weight(vec![0, 0]), QPoly::one());
        let ts = QExpPoly::monomial(b2.root_weight(b2.theta_s()), QPoly::one());
        assert!(matches!(
            macdonald_inner(&b2, KLabel::EQUAL, &e, &ts),
            Err(Error::NonIntegralResult(_))
        ));
    }

    fn small_qexp() -> impl Strategy<Value = Vec<(i32, i32, i64, i64)>> {
        proptest::collection::vec((-2i32..3, -2i32..3, -2i64..3, -3i64..4), 0..4)
    }

    fn build(v: &[(i32, i32, i64, i64)]) -> QExpPoly {
        let mut f = QExpPoly::zero();
        for &(a, b, e, c) in v {
            f.add_term(Weight(vec![a, b]), &QPoly::q(e).scale(&c.into()));
        }
        f
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn cherednik_symmetry(xs in small_qexp(), ys in small_qexp()) {
            static DEL: OnceLock<QExpPoly> = OnceLock::new();
            let del = DEL.get_or_init(|| delta(&rs(Family::B, 2), KLabel::LITTLE_ADJOINT).unwrap());
            // Δ* = q^{-c} Δ with c = Σ_{α>0} k(α)², so (f, h)* = q^{-c} (h, f)
            let (f, h) = (build(&xs), build(&ys));
            let lhs = cherednik_inner_with(del, &f, &h).invert_q();
            let rhs = cherednik_inner_with(del, &h, &f).shift_half(-2 * 10);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ct_is_bar_stable(xs in small_qexp()) {
            static DEL: OnceLock<QExpPoly> = OnceLock::new();
            let del = DEL.get_or_init(|| delta(&rs(Family::G, 2), KLabel::EQUAL).unwrap());
            let f = build(&xs);
            prop_assert_eq!(f.ct_of_product(del), f.bar().ct_of_product(&del.bar()));
        }
    }
}
