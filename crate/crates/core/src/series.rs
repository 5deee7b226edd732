//! Multivariate power series over the rationals, truncated by total degree.
//!
//! Invariants:
//! - every stored exponent has total degree `<= degree`
//! - no stored coefficient is zero

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn total(e: &[u32]) -> usize {
    e.iter().map(|&v| v as usize).sum()
}

impl TruncatedSeries {
    pub fn zero(n: usize, degree: usize) -> Self {
        TruncatedSeries {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, degree: usize, c: Rational) -> Self {
        Self::monomial(n, degree, vec![0; n], c)
    }

    pub fn one(n: usize, degree: usize) -> Self {
        Self::constant(n, degree, Rational::one())
    }

    /// `coeff * X^exponent`, or zero if beyond the truncation degree.
    pub fn monomial(n: usize, degree: usize, exponent: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exponent.len(), n, "exponent length must equal the variable count");
        let mut s = Self::zero(n, degree);
        if !coeff.is_zero() && total(&exponent) <= degree {
            s.terms.insert(exponent, coeff);
        }
        s
    }

    /// `c_0 + c_1 X_1 + ... + c_n X_n`.
    pub fn affine(degree: usize, constant: Rational, linear: &[Rational]) -> Self {
        let n = linear.len();
        let mut s = Self::constant(n, degree, constant);
        for (i, c) in linear.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            s.add_term(e, c.clone());
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.n])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest total degree carrying a nonzero coefficient.
    pub fn lowest_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| total(e)).min()
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() || total(&exponent) > self.degree {
            return;
        }
        let entry = self.terms.entry(exponent);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut s = Self::zero(self.n, self.degree);
        if !c.is_zero() {
            for (e, v) in &self.terms {
                s.terms.insert(e.clone(), v * c);
            }
        }
        s
    }

    /// Same series with a (possibly smaller) truncation degree.
    pub fn truncate(&self, degree: usize) -> Self {
        TruncatedSeries {
            n: self.n,
            degree,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| total(e) <= degree)
                .map(|(e, v)| (e.clone(), v.clone()))
                .collect(),
        }
    }

    /// Multiplicative inverse; requires an invertible constant term.
    ///
    /// With `f = c (1 + h)` and `h` free of constant terms, `1/f = c^{-1} sum_k (-h)^k`,
    /// which is finite after truncation.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::InvalidConfig(
                "series inverse needs a nonzero constant term".into(),
            ));
        }
        let c_inv = c.recip();
        let mut minus_h = self.scale(&(-&c_inv));
        minus_h.terms.remove(&vec![0; self.n]);
        let mut result = Self::one(self.n, self.degree);
        let mut power = Self::one(self.n, self.degree);
        for _ in 0..self.degree {
            power = &power * &minus_h;
            if power.is_zero() {
                break;
            }
            result = &result + &power;
        }
        Ok(result.scale(&c_inv))
    }

    /// Substitutes `X_i -> H` for every `i`; entry `j - 1` is the coefficient of `H^j`
    /// for `j = 1..=degree`.
    pub fn pushforward(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (e, v) in &self.terms {
            let d = total(e);
            if d > 0 {
                out[d - 1] += v;
            }
        }
        out
    }

    pub fn evaluate_exact(&self, x: &[Rational]) -> Result<Rational> {
        self.check_point(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, v)| {
                e.iter()
                    .zip(x)
                    .fold(v.clone(), |acc, (&k, xi)| acc * num_traits::pow(xi.clone(), k as usize))
            })
            .sum())
    }

    pub fn evaluate_f64(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(e, v)| {
                e.iter()
                    .zip(x)
                    .fold(to_f64(v), |acc, (&k, xi)| acc * xi.powi(k as i32))
            })
            .sum())
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: len,
            });
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.n, other.n, "series in different variable counts");
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.assert_compatible(rhs);
        let mut out = self.truncate(self.degree.min(rhs.degree));
        for (e, v) in &rhs.terms {
            out.add_term(e.clone(), v.clone());
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(&-Rational::one())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.assert_compatible(rhs);
        let degree = self.degree.min(rhs.degree);
        let mut out = TruncatedSeries::zero(self.n, degree);
        for (ea, va) in &self.terms {
            let da = total(ea);
            for (eb, vb) in &rhs.terms {
                if da + total(eb) > degree {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, va * vb);
            }
        }
        out
    }
}
