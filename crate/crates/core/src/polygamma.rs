//! Polygamma functions `psi^{(r)}(x)` for real `x > 0`, and the lattice-sum
//! identities they produce for pure powers and diagonal ideals.
//!
//! Evaluation shifts `x` upward with `psi^{(r)}(x) = psi^{(r)}(x+1) + (-1)^{r+1} r! / x^{r+1}`
//! until `x >= 20`, then sums the asymptotic expansion
//!
//! ```text
//! psi^{(r)}(x) ~ (-1)^{r+1} r! ( x^{-r}/r + x^{-r-1}/2
//!                + sum_{k>=1} B_{2k}/(2k)! * Gamma(r+2k)/Gamma(r+1) * x^{-r-2k} )
//! ```
//!
//! up to its smallest term.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{to_f64, Rational};

/// Arguments below this are shifted up before the asymptotic series is used.
pub const SHIFT_THRESHOLD: f64 = 20.0;

const TABLE_LEN: usize = 40;

/// `B_2, B_4, ..., B_{2K}` as exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliTable(Vec<Rational>);

impl BernoulliTable {
    /// `B_{2k}`, `k >= 1`.
    pub fn get(&self, k: usize) -> Option<&Rational> {
        k.checked_sub(1).and_then(|i| self.0.get(i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Even Bernoulli numbers from `sum_{j=0}^{n} C(n+1, j) B_j = 0`.
/// At least 8 entries are always produced.
pub fn bernoulli(k: usize) -> BernoulliTable {
    let k = k.max(8);
    let top = 2 * k;
    let mut b: Vec<Rational> = Vec::with_capacity(top + 1);
    b.push(Rational::one());
    // binomial row C(n+1, .) built incrementally
    for n in 1..=top {
        let mut row = vec![BigInt::one(); n + 2];
        for j in 1..=n {
            row[j] = binomial(n + 1, j);
        }
        let s: Rational = (0..n)
            .map(|j| Rational::from_integer(row[j].clone()) * &b[j])
            .sum();
        b.push(-s / Rational::from_integer(BigInt::from(n + 1)));
    }
    BernoulliTable((1..=k).map(|i| b[2 * i].clone()).collect())
}

fn binomial(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `B_{2k} / (2k)!` as floats, `k = 1..=TABLE_LEN`.
fn scaled_bernoulli() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli(TABLE_LEN);
        let mut fact = BigInt::one();
        let mut out = Vec::with_capacity(TABLE_LEN);
        for k in 1..=TABLE_LEN {
            fact *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
            out.push(to_f64(&(b.get(k).unwrap() / Rational::from_integer(fact.clone()))));
        }
        out
    })
}

/// Derivative order `r >= 1` of the digamma function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygammaOrder(u32);

impl PolygammaOrder {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidConfig("polygamma order must be at least 1".into()));
        }
        Ok(PolygammaOrder(r))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

struct Evaluation {
    /// `zeta(r+1, x) = sum_{a>=0} (a+x)^{-(r+1)}`.
    value: f64,
    /// Magnitude of the last asymptotic term kept, an estimate of the truncation error.
    floor: f64,
}

/// `zeta(r+1, x)` from the asymptotic expansion, `x >= SHIFT_THRESHOLD`.
/// Terms stop once they fall below `rel` times the running sum.
fn hurwitz_asymptotic(r: u32, x: f64, rel: f64) -> Evaluation {
    let rf = f64::from(r);
    let xr = x.powi(-(r as i32));
    let mut sum = xr / rf + xr / (2.0 * x);
    let inv_x2 = 1.0 / (x * x);
    // (r+1)(r+2)...(r+2k-1) = Gamma(r+2k)/Gamma(r+1)
    let mut rising = rf + 1.0;
    let mut power = xr * inv_x2;
    let mut last = f64::INFINITY;
    for (i, b) in scaled_bernoulli().iter().enumerate() {
        let k = (i + 1) as f64;
        if i > 0 {
            rising *= (rf + 2.0 * k - 2.0) * (rf + 2.0 * k - 1.0);
            power *= inv_x2;
        }
        let term = b * rising * power;
        let mag = term.abs();
        if mag >= last {
            break;
        }
        sum += term;
        last = mag;
        if mag <= rel * sum.abs() {
            break;
        }
    }
    Evaluation {
        value: sum,
        floor: last,
    }
}

/// `zeta(r+1, x)` for any `x > 0`.
fn hurwitz(r: u32, x: f64) -> Result<Evaluation> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NonPositiveArgument(x));
    }
    let exponent = -(r as i32 + 1);
    let mut shifted = x;
    let mut correction = 0.0;
    while shifted < SHIFT_THRESHOLD {
        correction += shifted.powi(exponent);
        shifted += 1.0;
    }
    let asym = hurwitz_asymptotic(r, shifted, f64::EPSILON / 4.0);
    Ok(Evaluation {
        value: asym.value + correction,
        floor: asym.floor,
    })
}

fn polygamma_sign(r: u32) -> f64 {
    if r % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// `psi^{(r)}(x)` to full double precision.
pub fn polygamma(order: PolygammaOrder, x: f64) -> Result<f64> {
    let r = order.0;
    Ok(polygamma_sign(r) * factorial(r) * hurwitz(r, x)?.value)
}

/// `psi^{(r)}(x)` with absolute error target `eps`.
///
/// Fails with [`Error::PrecisionUnreachable`] when `eps` is below the
/// truncation floor of the asymptotic series or the rounding floor of `f64`.
pub fn polygamma_with_precision(order: PolygammaOrder, x: f64, eps: f64) -> Result<f64> {
    let r = order.0;
    let e = hurwitz(r, x)?;
    let value = polygamma_sign(r) * factorial(r) * e.value;
    let floor = (factorial(r) * e.floor).max(4.0 * f64::EPSILON * value.abs());
    if !(eps >= floor) {
        return Err(Error::PrecisionUnreachable {
            requested: eps,
            floor,
        });
    }
    Ok(value)
}

/// Hurwitz zeta `zeta(s, y) = sum_{a>=0} (a+y)^{-s}` for integer `s >= 2`, `y > 0`.
pub fn hurwitz_zeta(s: u32, y: f64) -> Result<f64> {
    if s < 2 {
        return Err(Error::InvalidConfig("hurwitz zeta needs s >= 2".into()));
    }
    Ok(hurwitz(s - 1, y)?.value)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn merge(&mut self, other: CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

const CHUNK: u64 = 4096;

/// `sum_{a=lo}^{hi} f(a)` split into fixed chunks, so the result does not
/// depend on how many threads run it.
fn chunked_sum(lo: u64, hi: u64, f: impl Fn(u64) -> Result<f64> + Sync) -> Result<f64> {
    if hi < lo {
        return Ok(0.0);
    }
    let chunks = (hi - lo) / CHUNK + 1;
    let partial: Vec<CompensatedSum> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = lo + c * CHUNK;
            let end = (start + CHUNK - 1).min(hi);
            let mut acc = CompensatedSum::default();
            for a in start..=end {
                acc.add(f(a)?);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = CompensatedSum::default();
    for p in partial {
        total.merge(p);
    }
    Ok(total.value())
}

/// Value of an identity check at finite `m` next to its closed-form target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityEvaluation {
    pub value: f64,
    pub target: f64,
    /// Contribution added for the truncated tail of an infinite sum.
    pub tail_estimate: f64,
    /// Bound on the error of `tail_estimate`.
    pub tail_error_bound: f64,
}

impl IdentityEvaluation {
    pub fn abs_error(&self) -> f64 {
        (self.value - self.target).abs()
    }
}

fn require_positive(values: &[f64]) -> Result<()> {
    if let Some(index) = values.iter().position(|v| !(*v > 0.0)) {
        return Err(Error::NonPositiveParameter { index });
    }
    Ok(())
}

/// `(m/X) psi^{(1)}(m l + m/X)`, which tends to `1/(1 + l X)`.
pub fn verify_power_identity(l: u64, x: f64, m: u64) -> Result<IdentityEvaluation> {
    require_positive(&[x])?;
    if l == 0 || m == 0 {
        return Err(Error::InvalidConfig("l and m must be positive".into()));
    }
    let (mf, lf) = (m as f64, l as f64);
    let value = mf / x * polygamma(PolygammaOrder(1), mf * lf + mf / x)?;
    Ok(IdentityEvaluation {
        value,
        target: 1.0 / (1.0 + lf * x),
        tail_estimate: 0.0,
        tail_error_bound: 0.0,
    })
}

/// Tail of `sum_{a1 > cutoff} psi^{(2)}((m + a1 X1 + X2)/X2)`, estimated with
/// `psi^{(2)}(y) ~ -y^{-2}`, scaled by `m X1 / X2^2`. Returns (estimate, error bound).
fn psi2_tail(m: f64, x1: f64, x2: f64, cutoff: u64) -> Result<(f64, f64)> {
    let prefactor = m * x1 / (x2 * x2);
    // sum_{a1 >= C+1} X2^2 / (m + X2 + a1 X1)^2 = X2^2/X1^2 zeta(2, C + 1 + (m + X2)/X1)
    let z = cutoff as f64 + 1.0 + (m + x2) / x1;
    let estimate = -(x2 * x2) / (x1 * x1) * hurwitz_zeta(2, z)?;
    // |psi2(y) + y^{-2}| <= 2 y^{-3}
    let bound = 2.0 * x2.powi(3) / x1.powi(3) * hurwitz_zeta(3, z)?;
    Ok((prefactor * estimate, prefactor * bound))
}

/// Smallest power-of-two multiple of `start` whose tail error bound is below
/// `tolerance / 10`.
pub fn tail_cutoff_for(m: u64, x1: f64, x2: f64, start: u64, tolerance: f64) -> Result<u64> {
    require_positive(&[x1, x2, tolerance])?;
    let mut c = start.max(1);
    loop {
        let (_, bound) = psi2_tail(m as f64, x1, x2, c)?;
        if bound < tolerance / 10.0 || c > u64::MAX / 4 {
            return Ok(c);
        }
        c *= 2;
    }
}

fn check_cutoff(bound: f64, tolerance: Option<f64>) -> Result<()> {
    if let Some(tol) = tolerance {
        if bound > tol / 10.0 {
            return Err(Error::CutoffTooSmall {
                tail_bound: bound,
                tolerance: tol,
            });
        }
    }
    Ok(())
}

/// `1 - (-m X1 / X2^2) sum_{a1 >= m l} psi^{(2)}((m + a1 X1 + X2)/X2)`, the pure
/// power `x1^l` summed over a second variable first; tends to `l X1/(1 + l X1)`.
///
/// Terms up to `tail_cutoff` are summed directly, the rest estimated.
pub fn verify_two_variable_identity(
    l: u64,
    x1: f64,
    x2: f64,
    m: u64,
    tail_cutoff: u64,
    tolerance: Option<f64>,
) -> Result<IdentityEvaluation> {
    require_positive(&[x1, x2])?;
    if l == 0 || m == 0 {
        return Err(Error::InvalidConfig("l and m must be positive".into()));
    }
    let start = m * l;
    if tail_cutoff < start {
        return Err(Error::CutoffTooSmall {
            tail_bound: f64::INFINITY,
            tolerance: tolerance.unwrap_or(0.0),
        });
    }
    let mf = m as f64;
    let psi2 = PolygammaOrder(2);
    let head = chunked_sum(start, tail_cutoff, |a1| {
        polygamma(psi2, (mf + a1 as f64 * x1 + x2) / x2)
    })?;
    let (tail, bound) = psi2_tail(mf, x1, x2, tail_cutoff)?;
    check_cutoff(bound, tolerance)?;
    let lf = l as f64;
    Ok(IdentityEvaluation {
        value: 1.0 + mf * x1 / (x2 * x2) * head + tail,
        target: lf * x1 / (1.0 + lf * x1),
        tail_estimate: tail,
        tail_error_bound: bound,
    })
}

/// Left side of the diagonal-ideal identity at finite `m`:
///
/// ```text
/// 1 + (m X1 / X2^2) ( sum_{a1=1}^{m l1 - 1} psi^{(2)}(m l2 - floor(a1 l2 / l1) + (m + a1 X1)/X2)
///                     + sum_{a1 >= m l1} psi^{(2)}(1 + (m + a1 X1)/X2) )
/// ```
///
/// which tends to `l1 l2 X1 X2 / ((1 + l1 X1)(1 + l2 X2))`.
pub fn verify_diagonal_identity(
    l1: u64,
    l2: u64,
    x1: f64,
    x2: f64,
    m: u64,
    tail_cutoff: u64,
    tolerance: Option<f64>,
) -> Result<IdentityEvaluation> {
    require_positive(&[x1, x2])?;
    if l1 == 0 || l2 == 0 || m == 0 {
        return Err(Error::InvalidConfig("l1, l2 and m must be positive".into()));
    }
    let start = m * l1;
    if tail_cutoff < start {
        return Err(Error::CutoffTooSmall {
            tail_bound: f64::INFINITY,
            tolerance: tolerance.unwrap_or(0.0),
        });
    }
    let mf = m as f64;
    let psi2 = PolygammaOrder(2);
    let finite = chunked_sum(1, start - 1, |a1| {
        let shift = (m * l2 - (a1 * l2) / l1) as f64;
        polygamma(psi2, shift + (mf + a1 as f64 * x1) / x2)
    })?;
    let infinite = chunked_sum(start, tail_cutoff, |a1| {
        polygamma(psi2, 1.0 + (mf + a1 as f64 * x1) / x2)
    })?;
    let (tail, bound) = psi2_tail(mf, x1, x2, tail_cutoff)?;
    check_cutoff(bound, tolerance)?;
    let (l1f, l2f) = (l1 as f64, l2 as f64);
    Ok(IdentityEvaluation {
        value: 1.0 + mf * x1 / (x2 * x2) * (finite + infinite) + tail,
        target: l1f * l2f * x1 * x2 / ((1.0 + l1f * x1) * (1.0 + l2f * x2)),
        tail_estimate: tail,
        tail_error_bound: bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn psi(r: u32, x: f64) -> f64 {
        polygamma(PolygammaOrder::new(r).unwrap(), x).unwrap()
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(1);
        assert!(b.len() >= 8);
        assert_eq!(b.get(1), Some(&ratio(1, 6)));
        assert_eq!(b.get(2), Some(&ratio(-1, 30)));
        assert_eq!(b.get(3), Some(&ratio(1, 42)));
        assert_eq!(b.get(6), Some(&ratio(-691, 2730)));
        assert_eq!(b.get(7), Some(&ratio(7, 6)));
        assert_eq!(b.get(0), None);
    }

    #[test]
    fn trigamma_at_one_is_zeta_two() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((psi(1, 1.0) - z2).abs() < 4.0 * f64::EPSILON);
    }

    #[test]
    fn trigamma_leading_terms() {
        // psi1(x) = 1/x + 1/(2x^2) + 1/(6x^3) - 1/(30 x^5) + ...
        let x: f64 = 1000.0;
        let approx = 1.0 / x + 1.0 / (2.0 * x * x) + 1.0 / (6.0 * x.powi(3));
        let diff = psi(1, x) - approx;
        assert!((diff - (-1.0 / (30.0 * x.powi(5)))).abs() < 1e-18);
    }

    #[test]
    fn rejects_bad_arguments() {
        let r = PolygammaOrder::new(1).unwrap();
        assert_eq!(polygamma(r, 0.0), Err(Error::NonPositiveArgument(0.0)));
        assert!(polygamma(r, -2.5).is_err());
        assert!(polygamma(r, f64::NAN).is_err());
        assert!(PolygammaOrder::new(0).is_err());
    }

    #[test]
    fn precision_floor_reported() {
        let r = PolygammaOrder::new(2).unwrap();
        assert!(polygamma_with_precision(r, 3.0, 1e-12).is_ok());
        assert!(matches!(
            polygamma_with_precision(r, 3.0, 0.0),
            Err(Error::PrecisionUnreachable { .. })
        ));
    }

    #[test]
    fn hurwitz_matches_polygamma() {
        // zeta(3, y) = -psi2(y)/2
        let y = 7.25;
        assert!((hurwitz_zeta(3, y).unwrap() + psi(2, y) / 2.0).abs() < 1e-18);
        assert!(hurwitz_zeta(1, y).is_err());
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::default();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-14).abs() < 1e-27);
    }

    #[test]
    fn power_identity_trend() {
        let target = 0.5;
        let mut prev = f64::INFINITY;
        for m in [10, 100, 1000, 10_000] {
            let e = verify_power_identity(2, 0.5, m).unwrap();
            assert_eq!(e.target, target);
            assert!(e.abs_error() < prev);
            prev = e.abs_error();
        }
        assert!(verify_power_identity(2, 0.0, 1).is_err());
    }

    #[test]
    fn cutoff_below_start_rejected() {
        assert!(matches!(
            verify_two_variable_identity(2, 0.5, 0.5, 10, 5, None),
            Err(Error::CutoffTooSmall { .. })
        ));
        assert!(matches!(
            verify_two_variable_identity(2, 0.5, 0.5, 10, 20, Some(1e-30)),
            Err(Error::CutoffTooSmall { .. })
        ));
    }
}
