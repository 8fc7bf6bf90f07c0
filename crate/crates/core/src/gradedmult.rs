//! Graded multiplicities `GM_λ(q) = Σ_i [⋀^i V_{θ_s} : V_λ] q^i` for `λ ∈ {0, θ_s}`.
//!
//! Four routes are available and are meant to be compared against each other:
//! the closed forms in the special exponents, decomposition of the exterior
//! powers, the constant-term inner product at label `(2,1)`, and the
//! Cherednik-form expression for `GM_{θ_s}` assembled from σ-heights.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::characters::{exterior_powers, irreducible_multiplicity, little_adjoint_character};
use crate::error::{Error, Result};
use crate::macdonald::{ct_delta_closed, macdonald_inner, poincare_product};
use crate::qpoly::{CoeffRepr, QExpPoly, QPoly};
use crate::rootsys::{Family, KLabel, RootSystem, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Closed,
    Bruteforce,
    ConstantTerm,
    FormulaT,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Closed => "closed",
            Method::Bruteforce => "bruteforce",
            Method::ConstantTerm => "ct",
            Method::FormulaT => "formula-t",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedMultiplicity {
    pub poly: QPoly,
    pub weight: Weight,
    pub method: Method,
    /// Factors whose product is `poly`, when the route produces them.
    pub factors: Option<Vec<QPoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GmChecks {
    pub palindromic: bool,
    pub degree: Option<i64>,
    #[serde(serialize_with = "crate::qpoly::ser_bigint")]
    pub value_at_1: BigInt,
    pub nonnegative: bool,
}

impl GradedMultiplicity {
    fn new(poly: QPoly, weight: Weight, method: Method) -> Self {
        GradedMultiplicity {
            poly,
            weight,
            method,
            factors: None,
        }
    }

    fn factored(factors: Vec<QPoly>, weight: Weight, method: Method) -> Self {
        let poly = factors.iter().fold(QPoly::one(), |acc, f| acc.mul(f));
        GradedMultiplicity {
            poly,
            weight,
            method,
            factors: Some(factors),
        }
    }

    /// `(degree, coefficient)` pairs.
    pub fn coefficients(&self) -> Vec<(i64, BigInt)> {
        self.poly
            .integer_terms()
            .expect("graded multiplicities have integer exponents")
    }

    /// Factored form such as `(1+q^9)(1+q^17)`, or the expansion when unavailable.
    pub fn display_factored(&self) -> String {
        match &self.factors {
            Some(fs) if fs.len() > 1 => fs.iter().map(|f| format!("({f})")).collect(),
            _ => self.poly.to_string(),
        }
    }

    pub fn checks(&self, rs: &RootSystem) -> GmChecks {
        let d = rs.little_adjoint_dim() as i64;
        GmChecks {
            palindromic: self.poly.is_palindromic(d),
            degree: self.poly.degree(),
            value_at_1: self.poly.eval_at_one(),
            nonnegative: self.poly.all_nonnegative(),
        }
    }

    pub fn report(&self, rs: &RootSystem) -> GmReport {
        GmReport {
            family: rs.family(),
            rank: rs.rank(),
            lambda: self.weight.clone(),
            method: self.method,
            expanded: self.poly.to_string(),
            factored: self.display_factored(),
            coefficients: self.coefficients(),
            checks: self.checks(rs),
        }
    }
}

/// JSON view of a graded multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GmReport {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub lambda: Weight,
    pub method: Method,
    pub expanded: String,
    pub factored: String,
    #[serde(serialize_with = "ser_coefficients")]
    pub coefficients: Vec<(i64, BigInt)>,
    pub checks: GmChecks,
}

fn ser_coefficients<S: serde::Serializer>(
    v: &[(i64, BigInt)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|(d, c)| (d, CoeffRepr(c))))
}

fn theta_s_weight(rs: &RootSystem) -> Weight {
    rs.root_weight(rs.theta_s())
}

fn check_dominant(rs: &RootSystem, lam: &Weight) -> Result<()> {
    if lam.rank() != rs.rank() {
        return Err(Error::RankMismatch {
            expected: rs.rank(),
            got: lam.0.clone(),
        });
    }
    if !lam.is_dominant() {
        return Err(Error::NotDominant(lam.0.clone()));
    }
    Ok(())
}

/// Coefficient of `q^i` is the multiplicity of `V_λ` in `⋀^i V_{θ_s}`.
pub fn gm_bruteforce(rs: &RootSystem, lam: &Weight) -> Result<GradedMultiplicity> {
    check_dominant(rs, lam)?;
    if !rs.in_root_lattice(lam) {
        return Ok(GradedMultiplicity::new(
            QPoly::zero(),
            lam.clone(),
            Method::Bruteforce,
        ));
    }
    let ext = exterior_powers(rs, &little_adjoint_character(rs))?;
    let mut poly = QPoly::zero();
    for (i, layer) in ext.layers().iter().enumerate() {
        let m = irreducible_multiplicity(rs, layer, lam)?;
        poly = poly.add(&QPoly::from_degrees([(i as i64, m)]));
    }
    Ok(GradedMultiplicity::new(
        poly,
        lam.clone(),
        Method::Bruteforce,
    ))
}

fn exponents(rs: &RootSystem) -> Vec<i64> {
    rs.special_exponents()
        .ascending()
        .into_iter()
        .map(i64::from)
        .collect()
}

/// B, C, F: `∏ (1 + q^{2h_i+1})`. G2: `(1 + q^{h_1})(1 + q^{h_1+1})`.
pub fn gm_trivial_closed(rs: &RootSystem) -> GradedMultiplicity {
    let h = exponents(rs);
    let factors = match rs.family() {
        Family::G => vec![QPoly::one_plus(1, h[0]), QPoly::one_plus(1, h[0] + 1)],
        _ => h.iter().map(|&hi| QPoly::one_plus(1, 2 * hi + 1)).collect(),
    };
    GradedMultiplicity::factored(factors, Weight::zero(rs.rank()), Method::Closed)
}

/// B, C, F: `∏_{i<r_s} (1 + q^{2h_i+1}) · Σ_i (q^{2h_i−2h_1+1} + q^{2h_i})`.
/// G2: `(1 + q^{h_1})(q + q^2 + q^3)`.
pub fn gm_little_adjoint_closed(rs: &RootSystem) -> GradedMultiplicity {
    let h = exponents(rs);
    let factors = match rs.family() {
        Family::G => vec![
            QPoly::one_plus(1, h[0]),
            QPoly::from_degrees([(1, 1), (2, 1), (3, 1)]),
        ],
        _ => {
            let mut fs: Vec<QPoly> = h[..h.len() - 1]
                .iter()
                .map(|&hi| QPoly::one_plus(1, 2 * hi + 1))
                .collect();
            let sum = QPoly::from_degrees(
                h.iter()
                    .flat_map(|&hi| [(2 * hi - 2 * h[0] + 1, 1), (2 * hi, 1)]),
            );
            fs.push(sum);
            fs
        }
    };
    GradedMultiplicity::factored(factors, theta_s_weight(rs), Method::Closed)
}

/// Dispatches to the closed form for `λ ∈ {0, θ_s}`.
pub fn gm_closed(rs: &RootSystem, lam: &Weight) -> Result<GradedMultiplicity> {
    check_dominant(rs, lam)?;
    if lam.is_zero() {
        Ok(gm_trivial_closed(rs))
    } else if *lam == theta_s_weight(rs) {
        Ok(gm_little_adjoint_closed(rs))
    } else {
        Err(Error::NoClosedForm(format!("λ = {lam}")))
    }
}

fn one_minus_q_pow(n: u32) -> QPoly {
    QPoly::one_plus(-1, 1).pow(n)
}

/// `GM_λ(−q) = (1−q)^{r_s} ⟨1, χ_λ⟩_{2,1}`, expanded by brute force.
pub fn gm_via_ct(rs: &RootSystem, lam: &Weight) -> Result<GradedMultiplicity> {
    check_dominant(rs, lam)?;
    let chi = if lam.is_zero() {
        QExpPoly::one(rs.rank())
    } else if *lam == theta_s_weight(rs) {
        little_adjoint_character(rs).to_qexp()
    } else {
        return Err(Error::NoClosedForm(format!(
            "constant-term route needs χ_λ, available for 0 and θ_s only; got {lam}"
        )));
    };
    let inner = macdonald_inner(rs, KLabel::LITTLE_ADJOINT, &QExpPoly::one(rs.rank()), &chi)?;
    let at_neg_q = one_minus_q_pow(rs.short_rank() as u32).mul(&inner);
    Ok(GradedMultiplicity::new(
        at_neg_q.subst_neg_q()?,
        lam.clone(),
        Method::ConstantTerm,
    ))
}

/// `L = ht_l θ` and `S = ht_s θ`.
pub fn theta_heights(rs: &RootSystem) -> (i64, i64) {
    (rs.long_height(rs.theta()), rs.short_height(rs.theta()))
}

/// `GM_0(−q) = (1−q)^{r_s} ct(Δ)/W(q^k)` at label `(2,1)`, from the closed products.
pub fn gm_trivial_at_neg_q(rs: &RootSystem) -> Result<QPoly> {
    let label = KLabel::LITTLE_ADJOINT;
    one_minus_q_pow(rs.short_rank() as u32)
        .mul(&ct_delta_closed(rs, label)?)
        .div_exact(&poincare_product(rs, label)?)
}

/// `GM_{θ_s}(−q) = GM_0(−q) · (r_s + (1−q^{−2})/(1−q^{L+2S}) · Σ_{α∈R_s^+} (q^{(σ_k,α)} + q^{2S+L+2−(σ_k,α)}))`.
pub fn gm_theta_formula_t(rs: &RootSystem) -> Result<GradedMultiplicity> {
    let label = KLabel::LITTLE_ADJOINT;
    let (l, s) = theta_heights(rs);
    let gm0 = gm_trivial_at_neg_q(rs)?;
    let mut sum = QPoly::zero();
    for a in rs.short_positive_roots() {
        let sigma = rs.sigma_height(label, a);
        sum = sum
            .add(&QPoly::q(sigma))
            .add(&QPoly::q(2 * s + l + 2 - sigma));
    }
    let den = QPoly::one_plus(-1, l + 2 * s);
    let num = QPoly::one_plus(-1, -2).mul(&sum);
    let bracket = den.scale(&BigInt::from(rs.short_rank())).add(&num);
    let at_neg_q = gm0
        .mul(&bracket)
        .div_exact(&den)
        .map_err(|_| Error::NonPolynomial(format!("{} / ({den})", gm0.mul(&bracket))))?;
    Ok(GradedMultiplicity::new(
        at_neg_q.subst_neg_q()?,
        theta_s_weight(rs),
        Method::FormulaT,
    ))
}

/// Runs one route for `λ`.
pub fn gm_by_method(rs: &RootSystem, lam: &Weight, method: Method) -> Result<GradedMultiplicity> {
    match method {
        Method::Closed => gm_closed(rs, lam),
        Method::Bruteforce => gm_bruteforce(rs, lam),
        Method::ConstantTerm => gm_via_ct(rs, lam),
        Method::FormulaT => {
            check_dominant(rs, lam)?;
            if *lam == theta_s_weight(rs) {
                gm_theta_formula_t(rs)
            } else {
                Err(Error::NoClosedForm(format!(
                    "formula-t covers θ_s only; got {lam}"
                )))
            }
        }
    }
}

/// One short positive root with its heights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightRow {
    pub root: Vec<i32>,
    pub coroot: Vec<i32>,
    /// `(σ_k, α)`.
    pub sigma_height: i64,
    /// `(ρ_k, α∨)`.
    pub special_height: i64,
    /// `J` or `K` in type C.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<char>,
}

/// Special heights of the short positive roots at label `(2,1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeightTable {
    #[serde(rename = "type")]
    pub family: Family,
    pub rank: usize,
    pub rows: Vec<HeightRow>,
    /// `n ↦ h(n)`.
    pub counts: BTreeMap<i64, u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_counts: Option<BTreeMap<i64, u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_counts: Option<BTreeMap<i64, u32>>,
}

impl HeightTable {
    pub fn count(&self, n: i64) -> u32 {
        self.counts.get(&n).copied().unwrap_or(0)
    }

    pub fn heights(&self) -> Vec<i64> {
        let mut h: Vec<i64> = self.rows.iter().map(|r| r.special_height).collect();
        h.sort_unstable();
        h
    }

    /// In type C, `h(n−1) = h(n+1) + 1` exactly when `n = 4p+1`, `1 ≤ p ≤ r−1`,
    /// and `h(n−1) = h(n+1)` at every other `n ≠ 1`. `None` outside type C.
    pub fn type_c_parity_holds(&self) -> Option<bool> {
        if self.family != Family::C {
            return None;
        }
        let r = self.rank as i64;
        let top = self.counts.keys().next_back().copied().unwrap_or(0) + 2;
        let ok = (2..=top).all(|n| {
            let (lo, hi) = (self.count(n - 1) as i64, self.count(n + 1) as i64);
            let special = n % 4 == 1 && (1..r).contains(&((n - 1) / 4));
            if special {
                lo == hi + 1
            } else {
                lo == hi
            }
        });
        Some(ok)
    }
}

pub fn height_table(rs: &RootSystem) -> HeightTable {
    let label = KLabel::LITTLE_ADJOINT;
    let is_c = rs.family() == Family::C;
    let mut counts = BTreeMap::new();
    let mut jc = BTreeMap::new();
    let mut kc = BTreeMap::new();
    let rows = rs
        .short_positive_roots()
        .map(|a| {
            let special_height = rs
                .special_height(label, a)
                .expect("positive roots are roots");
            *counts.entry(special_height).or_insert(0) += 1;
            let part = is_c.then(|| {
                // J: no α_r component; K: α_r appears once
                if a.coeffs[rs.rank() - 1] == 0 {
                    *jc.entry(special_height).or_insert(0) += 1;
                    'J'
                } else {
                    *kc.entry(special_height).or_insert(0) += 1;
                    'K'
                }
            });
            HeightRow {
                root: a.coeffs.clone(),
                coroot: rs.coroot(a).expect("positive roots are roots").to_vec(),
                sigma_height: rs.sigma_height(label, a),
                special_height,
                part,
            }
        })
        .collect();
    HeightTable {
        family: rs.family(),
        rank: rs.rank(),
        rows,
        counts,
        j_counts: is_c.then_some(jc),
        k_counts: is_c.then_some(kc),
    }
}

/// Whether every route in `gms` produced the same polynomial.
pub fn routes_agree(gms: &[GradedMultiplicity]) -> bool {
    gms.windows(2).all(|w| w[0].poly == w[1].poly)
}

/// `2^{r_s}`, the value `GM_0(1)` takes in types B, C and F.
pub fn expected_gm0_at_one(rs: &RootSystem) -> BigInt {
    BigInt::from(2u32).pow(rs.short_rank() as u32)
}
