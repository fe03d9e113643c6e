//! Sparse polynomials with exact rational coefficients over the monomials of
//! one sphere.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::sphere::{Monomial, MonomialS2, MonomialS3};

/// Finite linear combination of monomials. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<M: Monomial> {
    terms: BTreeMap<M, BigRational>,
}

pub type PolynomialS2 = Polynomial<MonomialS2>;
pub type PolynomialS3 = Polynomial<MonomialS3>;

impl<M: Monomial> Default for Polynomial<M> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<M: Monomial> Polynomial<M> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, M::one())
    }

    pub fn term(c: BigRational, m: M) -> Self {
        let mut p = Self::zero();
        p.add_term(c, m);
        p
    }

    pub fn monomial(m: M) -> Self {
        Self::term(BigRational::one(), m)
    }

    pub fn add_term(&mut self, c: BigRational, m: M) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest total degree of a stored term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &M) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(c.clone(), *m);
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        for (m, v) in &self.terms {
            out.add_term(v * c, *m);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(c1 * c2, m1.product(m2));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(BigRational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &M::Point) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| m.eval(x) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Exact integral over the sphere against the normalized measure.
    pub fn integral(&self) -> BigRational {
        self.terms
            .iter()
            .fold(BigRational::zero(), |acc, (m, c)| acc + c * m.moment())
    }
}

impl PolynomialS2 {
    /// Canonical form as a function on S²: every `η η̄` factor is replaced by
    /// `1 − ξ²`, leaving terms `ξ^p η^q` or `ξ^p η̄^r`. Two polynomials agree
    /// on S² exactly when their reduced forms are equal.
    pub fn reduced(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let s = m.q.min(m.r);
            // ξ^p (1 − ξ²)^s η^{q−s} η̄^{r−s}
            for e in 0..=s {
                let sign = if e % 2 == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                };
                let coeff = c * BigRational::from(crate::sphere::binomial(s, e) * sign);
                out.add_term(coeff, MonomialS2::new(m.p + 2 * e, m.q - s, m.r - s));
            }
        }
        out
    }

    /// `(1 + sign·ξ)^n` expanded.
    pub fn one_plus_xi_pow(sign: i64, n: u32) -> Self {
        let mut out = Self::zero();
        for e in 0..=n {
            let s = BigInt::from(sign).pow(e);
            out.add_term(
                BigRational::from(crate::sphere::binomial(n, e) * s),
                MonomialS2::new(e, 0, 0),
            );
        }
        out
    }
}

impl<M: Monomial> fmt::Display for Polynomial<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}·{m}")?;
            }
        }
        Ok(())
    }
}
