//! Laurent polynomials in `q^{1/2}`, `t_s`, `t_l` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::rootsys::{KLabel, LengthClass};

/// Exponent triple: (`q` in halves, `t_s`, `t_l`).
pub type Monomial = (i64, i32, i32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQTT {
    terms: BTreeMap<Monomial, BigRational>,
}

impl LaurentQTT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial((0, 0, 0), 1)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(m, BigRational::from_integer(c.into()));
        p
    }

    /// `q^n`.
    pub fn q(n: i64) -> Self {
        Self::monomial((2 * n, 0, 0), 1)
    }

    /// `t_s^a t_l^b`.
    pub fn t(a: i32, b: i32) -> Self {
        Self::monomial((0, a, b), 1)
    }

    /// `t_α^n` for a root of the given length.
    pub fn t_len(len: LengthClass, n: i32) -> Self {
        match len {
            LengthClass::Short => Self::t(n, 0),
            LengthClass::Long => Self::t(0, n),
        }
    }

    /// `h_α = t_α − t_α^{−1}`.
    pub fn h(len: LengthClass) -> Self {
        Self::t_len(len, 1).sub(&Self::t_len(len, -1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentQTT {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a0, a1, a2), x) in &self.terms {
            for (&(b0, b1, b2), y) in &other.terms {
                out.add_term((a0 + b0, a1 + b1, a2 + b2), x * y);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&m, x) in &self.terms {
            out.add_term(m, x * c);
        }
        out
    }

    /// Inverts every variable: `q → q^{-1}`, `t → t^{-1}`.
    pub fn invert_all(&self) -> Self {
        LaurentQTT {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b, c), x)| ((-a, -b, -c), x.clone()))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Substitutes `t_s = q^{-k_s/2}`, `t_l = q^{-k_l/2}`.
    pub fn specialize(&self, label: KLabel) -> Result<QPoly> {
        let mut out = QPoly::zero();
        for (&(qh, ts, tl), c) in &self.terms {
            if !c.is_integer() {
                return Err(Error::NonIntegralResult(format!(
                    "coefficient {c} in {self}"
                )));
            }
            let half = qh - label.short as i64 * ts as i64 - label.long as i64 * tl as i64;
            out = out.add(&QPoly::monomial_half(half, c.to_integer()));
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentQTT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(qh, ts, tl), c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            match qh {
                0 => {}
                2 => factors.push("q".to_string()),
                _ if qh % 2 == 0 => factors.push(format!("q^{}", qh / 2)),
                _ => factors.push(format!("q^({qh}/2)")),
            }
            for (name, e) in [("t_s", ts), ("t_l", tl)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let abs = c.abs();
            let body = match (abs.is_one(), factors.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => factors.join("*"),
                (false, true) => abs.to_string(),
                (false, false) => format!("{abs}*{}", factors.join("*")),
            };
            write!(f, "{sign}{body}")?;
        }
        Ok(())
    }
}
