//! Sparse Laurent polynomials in `q`, and group-algebra elements with such coefficients.
//!
//! Exponents are stored in halves so `q^{1/2}` is representable; `QPoly::q(n)`
//! builds `q^n` for an integer `n`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rootsys::Weight;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial_half(0, c)
    }

    /// `c · q^{half/2}`.
    pub fn monomial_half(half: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(half, c);
        }
        QPoly { terms }
    }

    /// `q^n`.
    pub fn q(n: i64) -> Self {
        Self::monomial_half(2 * n, 1)
    }

    /// `1 + c·q^n`, the building block of most closed forms.
    pub fn one_plus(c: i64, n: i64) -> Self {
        Self::one().add(&Self::monomial_half(2 * n, c))
    }

    /// Builds `Σ c_i q^i` from integer-degree pairs.
    pub fn from_degrees<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = QPoly::zero();
        for (d, c) in pairs {
            p.add_term(2 * d, c.into());
        }
        p
    }

    pub fn from_half_terms<I: IntoIterator<Item = (i64, BigInt)>>(pairs: I) -> Self {
        let mut p = QPoly::zero();
        for (h, c) in pairs {
            p.add_term(h, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (half-exponent, coefficient), increasing.
    pub fn half_terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff_half(&self, half: i64) -> BigInt {
        self.terms.get(&half).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^n`.
    pub fn coeff(&self, n: i64) -> BigInt {
        self.coeff_half(2 * n)
    }

    pub(crate) fn add_term(&mut self, half: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(half).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&half);
        }
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Integer-degree terms; `None` if a half-integer exponent is present.
    pub fn integer_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        self.has_integer_exponents()
            .then(|| self.terms.iter().map(|(e, c)| (e / 2, c.clone())).collect())
    }

    /// Highest exponent in halves.
    pub fn top_half(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent in halves.
    pub fn bottom_half(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Degree for integer-exponent polynomials (floor for half-integers).
    pub fn degree(&self) -> Option<i64> {
        self.top_half().map(|h| Integer::div_floor(&h, &2))
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, -c);
        }
        out
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    /// Multiplies by `q^{half/2}`.
    pub fn shift_half(&self, half: i64) -> QPoly {
        QPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + half, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> QPoly {
        (0..n).fold(QPoly::one(), |acc, _| acc.mul(self))
    }

    /// Exact Laurent division. Fails unless the remainder is zero.
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        let (Some(d_top), Some(d_bot)) = (d.top_half(), d.bottom_half()) else {
            return Err(Error::DivisionFailure("division by zero".into()));
        };
        let lead = &d.terms[&d_top];
        let floor = match self.bottom_half() {
            Some(b) => b - d_bot,
            None => return Ok(QPoly::zero()),
        };
        let mut rem = self.clone();
        let mut quot = QPoly::zero();
        while let Some(top) = rem.top_half() {
            let e = top - d_top;
            let c = &rem.terms[&top];
            if e < floor || !c.is_multiple_of(lead) {
                return Err(Error::DivisionFailure(format!("({self}) / ({d})")));
            }
            let k = c / lead;
            rem = rem.sub(&d.shift_half(e).scale(&k));
            quot.add_term(e, k);
        }
        Ok(quot)
    }

    /// Divides every coefficient by `n`; fails unless all are multiples.
    pub fn div_integer(&self, n: &BigInt) -> Result<QPoly> {
        if n.is_zero() || self.terms.values().any(|c| !c.is_multiple_of(n)) {
            return Err(Error::NonIntegralResult(n.to_string()));
        }
        Ok(QPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, c / n)).collect(),
        })
    }

    /// `q → −q`. Needs integer exponents.
    pub fn subst_neg_q(&self) -> Result<QPoly> {
        if !self.has_integer_exponents() {
            return Err(Error::PreconditionViolated(format!(
                "q → −q on half-integer exponents: {self}"
            )));
        }
        Ok(QPoly {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e, if (e / 2) % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        })
    }

    /// `q → q^{-1}`.
    pub fn invert_q(&self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `q^d p(1/q) = p`.
    pub fn is_palindromic(&self, d: i64) -> bool {
        self.terms
            .iter()
            .all(|(&e, c)| self.terms.get(&(2 * d - e)) == Some(c))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                write!(f, "-")?;
            } else if i > 0 {
                write!(f, "+")?;
            }
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match (e % 2 == 0, e / 2) {
                (true, 1) => write!(f, "q")?,
                (true, n) => write!(f, "q^{n}")?,
                (false, _) => write!(f, "q^({e}/2)")?,
            }
        }
        Ok(())
    }
}

/// Sorted `[[half_exponent, coefficient], ...]`; coefficients outside `i64` become strings.
impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (&e, c) in &self.terms {
            seq.serialize_element(&(e, CoeffRepr(c)))?;
        }
        seq.end()
    }
}

pub(crate) struct CoeffRepr<'a>(pub &'a BigInt);

/// Big integers serialize as JSON numbers when they fit in `i64`, else as strings.
pub(crate) fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    CoeffRepr(v).serialize(s)
}

impl Serialize for CoeffRepr<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// A group-algebra element `Σ_λ p_λ(q) e^λ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QExpPoly {
    terms: BTreeMap<Weight, QPoly>,
}

impl QExpPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(Weight::zero(rank), QPoly::one())
    }

    /// `p · e^λ`.
    pub fn monomial(w: Weight, p: QPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(w, p);
        }
        QExpPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total number of `(weight, q-exponent)` terms.
    pub fn term_count(&self) -> usize {
        self.terms.values().map(QPoly::len).sum()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &QPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Weight) -> QPoly {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, w: Weight, p: &QPoly) {
        if p.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_default();
        *entry = entry.add(p);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &QExpPoly) -> QExpPoly {
        let mut out = self.clone();
        for (w, p) in &other.terms {
            out.add_term(w.clone(), p);
        }
        out
    }

    pub fn sub(&self, other: &QExpPoly) -> QExpPoly {
        self.add(&other.scale_q(&QPoly::constant(-1)))
    }

    pub fn scale_q(&self, p: &QPoly) -> QExpPoly {
        let mut out = QExpPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.mul(p));
        }
        out
    }

    pub fn mul(&self, other: &QExpPoly) -> QExpPoly {
        let mut out = QExpPoly::zero();
        for (a, pa) in &self.terms {
            for (b, pb) in &other.terms {
                out.add_term(a.add(b), &pa.mul(pb));
            }
        }
        out
    }

    /// `self · (1 + c q^{half/2} e^μ)`, without building the binomial.
    pub fn mul_binomial(&self, c: i64, half: i64, mu: &Weight) -> QExpPoly {
        let mut out = self.clone();
        let c = BigInt::from(c);
        for (w, p) in &self.terms {
            out.add_term(w.add(mu), &p.shift_half(half).scale(&c));
        }
        out
    }

    /// `e^λ → e^{−λ}`, `q` fixed.
    pub fn bar(&self) -> QExpPoly {
        QExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, p)| (w.neg(), p.clone()))
                .collect(),
        }
    }

    /// `e^λ → e^{−λ}`, `q → q^{−1}`.
    pub fn star(&self) -> QExpPoly {
        QExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, p)| (w.neg(), p.invert_q()))
                .collect(),
        }
    }

    /// Coefficient of `e^0`.
    pub fn constant_term(&self) -> QPoly {
        self.terms
            .iter()
            .find(|(w, _)| w.is_zero())
            .map(|(_, p)| p.clone())
            .unwrap_or_default()
    }

    /// `ct(self · other)` without forming the product.
    pub fn ct_of_product(&self, other: &QExpPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (w, p) in &self.terms {
            if let Some(o) = other.terms.get(&w.neg()) {
                out = out.add(&p.mul(o));
            }
        }
        out
    }

    /// Sets `q = 1` and every `e^λ = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().map(QPoly::eval_at_one).sum()
    }
}

impl fmt::Display for QExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, p)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({p})e^{w}")?;
        }
        Ok(())
    }
}
