//! Log canonical thresholds of monomial ideals.
//!
//! For a monomial ideal the threshold is `1 / sigma`, where `sigma` is the
//! parameter at which the main diagonal `s (1, ..., 1)` enters the Newton
//! polyhedron. `sigma` is the primitive computed here; `lct` is its reciprocal.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lp::{solve_lp, Direction, LpOutcome, LpProblem, Relation};
use crate::monomial::{MonomialIdeal, StretchFactors};
use crate::polyhedron::{newton_polyhedron, NewtonPolyhedron};
use crate::rational::Rational;

/// A log canonical threshold, always in `(0, n]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LctValue(pub Rational);

impl LctValue {
    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `sigma = 1 / lct`.
    pub fn sigma(&self) -> Rational {
        self.0.recip()
    }
}

/// `min { s >= 0 : s (1,...,1) in P }`, solved as an LP over the extreme points:
/// minimize `s` subject to `s 1 >= sum l_j v_j`, `sum l_j = 1`, `l >= 0`.
pub fn diagonal_exit(p: &NewtonPolyhedron) -> Rational {
    let n = p.n();
    let pts = p.extreme_points();
    let k = pts.len();
    let mut objective = vec![Rational::zero(); k + 1];
    objective[0] = Rational::one();
    let mut lp = LpProblem::new(Direction::Minimize, objective);
    for i in 0..n {
        let mut row = Vec::with_capacity(k + 1);
        row.push(Rational::one());
        row.extend(pts.iter().map(|v| -Rational::from_integer(v.0[i].into())));
        lp = lp.constraint(row, Relation::Ge, Rational::zero());
    }
    let mut sum = vec![Rational::one(); k + 1];
    sum[0] = Rational::zero();
    lp = lp.constraint(sum, Relation::Eq, Rational::one());
    match solve_lp(&lp).expect("well-formed by construction") {
        LpOutcome::Optimal { value, .. } => value,
        other => unreachable!("diagonal LP is feasible and bounded below, got {other:?}"),
    }
}

/// The same quantity read off the facets: `max c / <w, 1>` over diagram facets.
pub fn diagonal_exit_from_facets(p: &NewtonPolyhedron) -> Rational {
    p.diagram_facets()
        .map(|f| {
            let total: Rational = f.normal.iter().sum();
            &f.offset / total
        })
        .max()
        .expect("a proper ideal has at least one diagram facet")
}

pub fn lct(ideal: &MonomialIdeal) -> LctValue {
    LctValue(diagonal_exit(&newton_polyhedron(ideal)).recip())
}

fn stretched_threshold(ideal: &MonomialIdeal, a: &[u64], m: u64) -> Result<(LctValue, Rational)> {
    check_lattice(ideal, a, m)?;
    let r = StretchFactors::complementary_products(a)?;
    let threshold = lct(&ideal.stretch(&r)?);
    let product: u64 = a.iter().product();
    Ok((threshold, Rational::new(m.into(), product.into())))
}

fn check_lattice(ideal: &MonomialIdeal, a: &[u64], m: u64) -> Result<()> {
    if a.len() != ideal.n() {
        return Err(Error::DimensionMismatch {
            expected: ideal.n(),
            found: a.len(),
        });
    }
    if m == 0 || a.contains(&0) {
        return Err(Error::InvalidConfig(
            "lattice coordinates and m must be positive".into(),
        ));
    }
    Ok(())
}

/// `lct(I_{a_2...a_n, ..., a_1...a_{n-1}}) >= m / (a_1 ... a_n)`.
pub fn lct_condition(ideal: &MonomialIdeal, a: &[u64], m: u64) -> Result<bool> {
    let (threshold, bound) = stretched_threshold(ideal, a, m)?;
    Ok(threshold.0 >= bound)
}

/// `a_1 ... a_n lct(I_{a_2...a_n, ..., a_1...a_{n-1}}) <= m`, the side of the
/// stretched-threshold criterion that describes membership of `a/m` in the
/// Newton region. Equality, i.e. `a/m` on the diagram, satisfies both this and
/// [`lct_condition`].
pub fn region_condition(ideal: &MonomialIdeal, a: &[u64], m: u64) -> Result<bool> {
    let (threshold, bound) = stretched_threshold(ideal, a, m)?;
    Ok(threshold.0 <= bound)
}

/// Memoized thresholds of stretched ideals.
///
/// Keys are primitive stretch directions: stretching by `g r` scales `sigma` by `g`,
/// so one entry serves every multiple of a direction.
#[derive(Debug)]
pub struct StretchedLctCache {
    ideal: MonomialIdeal,
    sigma: HashMap<Vec<u64>, Rational>,
    evaluations: u64,
}

impl StretchedLctCache {
    pub fn new(ideal: MonomialIdeal) -> Self {
        StretchedLctCache {
            ideal,
            sigma: HashMap::new(),
            evaluations: 0,
        }
    }

    /// Number of stretched ideals whose threshold was actually computed.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// `sigma` of the ideal stretched by `r`.
    pub fn sigma(&mut self, r: &StretchFactors) -> Result<Rational> {
        let g = r.as_slice().iter().fold(0u64, |acc, &v| acc.gcd(&v));
        let key: Vec<u64> = r.as_slice().iter().map(|&v| v / g).collect();
        if let Some(s) = self.sigma.get(&key) {
            return Ok(s * Rational::from_integer(g.into()));
        }
        let primitive = StretchFactors::new(key.clone())?;
        let s = lct(&self.ideal.stretch(&primitive)?).sigma();
        self.evaluations += 1;
        let out = &s * Rational::from_integer(g.into());
        self.sigma.insert(key, s);
        Ok(out)
    }

    /// [`region_condition`] through the cache: `prod(a) <= m sigma(I_r)`.
    pub fn region_condition(&mut self, a: &[u64], m: u64) -> Result<bool> {
        check_lattice(&self.ideal, a, m)?;
        let r = StretchFactors::complementary_products(a)?;
        let sigma = self.sigma(&r)?;
        let product: u64 = a.iter().product();
        // prod(a) * lct <= m  <=>  prod(a) <= m * sigma  (sigma > 0)
        debug_assert!(sigma.is_positive());
        Ok(Rational::from_integer(product.into()) <= sigma * Rational::from_integer(m.into()))
    }
}
