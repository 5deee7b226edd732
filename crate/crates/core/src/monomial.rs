//! Monomial ideals as sets of minimal exponent vectors, and the stretch
//! `x_i -> x_i^{r_i}`.
//!
//! Two input forms are accepted: JSON `{"n": 2, "generators": [[2,0],[1,1]]}`
//! and text such as `"x1^2, x1*x2"` (whitespace ignored, `*` optional,
//! exponent 1 implicit).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents `(i_1, ..., i_n)` of a monomial `x_1^{i_1} ... x_n^{i_n}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u64>);

impl ExponentVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().sum()
    }
}

impl From<Vec<u64>> for ExponentVector {
    fn from(v: Vec<u64>) -> Self {
        ExponentVector(v)
    }
}

/// Positive integers `r_1, ..., r_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StretchFactors(Vec<u64>);

impl StretchFactors {
    pub fn new(r: Vec<u64>) -> Result<Self> {
        if r.iter().any(|&v| v == 0) {
            return Err(Error::NonPositiveStretch);
        }
        Ok(StretchFactors(r))
    }

    /// The factors `(prod_{j != 1} a_j, ..., prod_{j != n} a_j)` attached to a
    /// lattice point `a`.
    pub fn complementary_products(a: &[u64]) -> Result<Self> {
        let factors = (0..a.len())
            .map(|i| {
                a.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v)
                    .product()
            })
            .collect();
        Self::new(factors)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }
}

/// A proper monomial ideal in `n` variables, stored by its minimal generators
/// in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Builds the ideal, dropping every generator divisible by another one.
    pub fn new(n: usize, raw_generators: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVariables);
        }
        let mut gens: Vec<ExponentVector> = raw_generators.into_iter().collect();
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        for g in &gens {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.len(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroGenerator);
            }
        }
        gens.sort();
        gens.dedup();
        let minimal: Vec<ExponentVector> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Ok(MonomialIdeal {
            n,
            generators: minimal,
        })
    }

    pub fn from_vecs(n: usize, raw: &[&[u64]]) -> Result<Self> {
        Self::new(n, raw.iter().map(|v| ExponentVector(v.to_vec())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Whether the monomial with exponent `e` lies in the ideal.
    pub fn contains_monomial(&self, e: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(e))
    }

    /// Extension under `x_i -> x_i^{r_i}`.
    pub fn stretch(&self, r: &StretchFactors) -> Result<MonomialIdeal> {
        if r.0.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: r.0.len(),
            });
        }
        let gens = self
            .generators
            .iter()
            .map(|g| ExponentVector(g.0.iter().zip(&r.0).map(|(e, f)| e * f).collect()));
        MonomialIdeal::new(self.n, gens)
    }

    /// Views the ideal in `n` variables (`n >= self.n()`), padding exponents with zeros.
    pub fn embed(&self, n: usize) -> Result<MonomialIdeal> {
        if n < self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        let gens = self.generators.iter().map(|g| {
            let mut e = g.0.clone();
            e.resize(n, 0);
            ExponentVector(e)
        });
        MonomialIdeal::new(n, gens)
    }

    /// Size of the smallest variable set meeting the support of every generator.
    pub fn height(&self) -> usize {
        let supports: Vec<u64> = self
            .generators
            .iter()
            .map(|g| {
                g.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .fold(0u64, |m, (i, _)| m | (1 << i))
            })
            .collect();
        (0u64..1 << self.n)
            .filter(|mask| supports.iter().all(|s| s & mask != 0))
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap_or(self.n)
    }

    /// Parses either the JSON or the text form. `n` overrides the variable
    /// count inferred from the highest index mentioned.
    pub fn parse(input: &str, n: Option<usize>) -> Result<MonomialIdeal> {
        let trimmed = input.trim_start();
        if trimmed.starts_with('{') {
            let json: IdealJson = serde_json::from_str(trimmed).map_err(|e| Error::Parse {
                position: e.column().saturating_sub(1),
                message: e.to_string(),
            })?;
            let ideal = json.into_ideal()?;
            return match n {
                Some(n) => ideal.embed(n),
                None => Ok(ideal),
            };
        }
        parse_text(input, n)
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            n: self.n,
            generators: self.generators.iter().map(|g| g.0.clone()).collect(),
        }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let mut first = true;
            for (i, &e) in g.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// JSON wire form of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: usize,
    pub generators: Vec<Vec<u64>>,
}

impl IdealJson {
    pub fn into_ideal(self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.n, self.generators.into_iter().map(ExponentVector))
    }
}

fn parse_text(input: &str, n_override: Option<usize>) -> Result<MonomialIdeal> {
    let bytes = input.as_bytes();
    let mut pos = 0;
    let err = |position: usize, message: &str| Error::Parse {
        position,
        message: message.to_string(),
    };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let read_number = |pos: &mut usize| -> Option<u64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        input[start..*pos].parse().ok()
    };

    // each generator as a list of (variable index, exponent) factors
    let mut raw: Vec<Vec<(usize, u64)>> = Vec::new();
    loop {
        skip_ws(&mut pos);
        let mut factors = Vec::new();
        loop {
            skip_ws(&mut pos);
            if pos >= bytes.len() || bytes[pos] != b'x' {
                return Err(err(pos, "expected a variable like `x1`"));
            }
            pos += 1;
            let idx_pos = pos;
            let idx = read_number(&mut pos).ok_or_else(|| err(idx_pos, "expected a variable index"))?;
            if idx == 0 {
                return Err(err(idx_pos, "variables are numbered from 1"));
            }
            skip_ws(&mut pos);
            let mut exp = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                skip_ws(&mut pos);
                let exp_pos = pos;
                exp = read_number(&mut pos).ok_or_else(|| err(exp_pos, "expected an exponent"))?;
            }
            factors.push((idx as usize, exp));
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            if pos < bytes.len() && bytes[pos] == b'x' {
                continue;
            }
            break;
        }
        raw.push(factors);
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b',' {
            return Err(err(pos, "expected `,` between generators"));
        }
        pos += 1;
    }

    let max_index = raw.iter().flatten().map(|&(i, _)| i).max().unwrap_or(1);
    let n = match n_override {
        Some(n) if n < max_index => {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: max_index,
            })
        }
        Some(n) => n,
        None => max_index,
    };
    let gens = raw.into_iter().map(|factors| {
        let mut e = vec![0u64; n];
        for (i, k) in factors {
            e[i - 1] += k;
        }
        ExponentVector(e)
    });
    MonomialIdeal::new(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dominated_generators_are_removed() {
        let i = MonomialIdeal::from_vecs(2, &[&[2, 0], &[3, 1]]).unwrap();
        assert_eq!(i.generators(), &[ExponentVector(vec![2, 0])]);
    }

    #[test]
    fn single_power_is_kept() {
        let i = MonomialIdeal::from_vecs(1, &[&[5]]).unwrap();
        assert_eq!(i.generators(), &[ExponentVector(vec![5])]);
    }

    #[test]
    fn unit_ideal_is_rejected() {
        assert_eq!(
            MonomialIdeal::from_vecs(2, &[&[0, 0], &[1, 1]]),
            Err(Error::ZeroGenerator)
        );
        assert!(matches!(
            MonomialIdeal::from_vecs(2, &[&[1, 1, 1]]),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert_eq!(MonomialIdeal::new(2, vec![]), Err(Error::EmptyIdeal));
    }

    #[test]
    fn stretch_scales_exponents() {
        let i = MonomialIdeal::from_vecs(2, &[&[2, 1]]).unwrap();
        let s = i.stretch(&StretchFactors::new(vec![2, 3]).unwrap()).unwrap();
        assert_eq!(s.generators(), &[ExponentVector(vec![4, 3])]);

        // (x1^l) in two variables with r = (a2, a1)
        let p = MonomialIdeal::from_vecs(2, &[&[3, 0]]).unwrap();
        let s = p.stretch(&StretchFactors::new(vec![5, 7]).unwrap()).unwrap();
        assert_eq!(s.generators(), &[ExponentVector(vec![15, 0])]);

        let id = StretchFactors::new(vec![1, 1]).unwrap();
        assert_eq!(i.stretch(&id).unwrap(), i);
        assert!(StretchFactors::new(vec![0, 1]).is_err());
    }

    #[test]
    fn complementary_products() {
        let r = StretchFactors::complementary_products(&[2, 3, 5]).unwrap();
        assert_eq!(r.as_slice(), &[15, 10, 6]);
        let r = StretchFactors::complementary_products(&[7]).unwrap();
        assert_eq!(r.as_slice(), &[1]);
    }

    #[test]
    fn parses_text_form() {
        let i = MonomialIdeal::parse("x1^2, x1*x2", None).unwrap();
        assert_eq!(i.n(), 2);
        assert_eq!(
            i.generators(),
            &[ExponentVector(vec![1, 1]), ExponentVector(vec![2, 0])]
        );
        let j = MonomialIdeal::parse(" x1 ^ 2 ,x1x2 ", None).unwrap();
        assert_eq!(i, j);
        let k = MonomialIdeal::parse("x1^2", Some(2)).unwrap();
        assert_eq!(k.generators(), &[ExponentVector(vec![2, 0])]);
    }

    #[test]
    fn parses_json_form() {
        let i = MonomialIdeal::parse(r#"{"n":1,"generators":[[3]]}"#, None).unwrap();
        assert_eq!(i.generators(), &[ExponentVector(vec![3])]);
    }

    #[test]
    fn parse_errors_carry_positions() {
        assert_eq!(MonomialIdeal::parse("x1^0", None), Err(Error::ZeroGenerator));
        match MonomialIdeal::parse("x1^2, y2", None) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            MonomialIdeal::parse("x0", None),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(
            MonomialIdeal::parse("x3", Some(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        let i = MonomialIdeal::from_vecs(3, &[&[2, 0, 1], &[0, 1, 0], &[1, 0, 3]]).unwrap();
        let text = i.to_string();
        assert_eq!(MonomialIdeal::parse(&text, Some(3)).unwrap(), i);
        let json = serde_json::to_string(&i.to_json()).unwrap();
        assert_eq!(MonomialIdeal::parse(&json, None).unwrap(), i);
    }

    #[test]
    fn height_is_minimal_vertex_cover() {
        assert_eq!(MonomialIdeal::from_vecs(2, &[&[1, 1]]).unwrap().height(), 1);
        assert_eq!(MonomialIdeal::from_vecs(2, &[&[2, 0], &[0, 3]]).unwrap().height(), 2);
        let tri = MonomialIdeal::from_vecs(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]).unwrap();
        assert_eq!(tri.height(), 2);
    }
}
