//! Lattice-sum approximation of the Segre class.
//!
//! At level `m` the estimate is
//!
//! ```text
//! S(m) = sum over a in Z_{>0}^n with a/m in N of  m n! X_1...X_n / (m + a.X)^{n+1}
//! ```
//!
//! where `N` is the closed Newton region. This is the complement of the
//! threshold-selected index set (the full-orthant sum tends to 1), and it
//! converges to the Segre class at rate `O(1/m)` in practice.
//!
//! Points are visited one column at a time: the first `n - 1` coordinates fix a
//! column, and the region meets it in `1 <= a_n <= T`. Membership is downward
//! closed, so columns are enumerated with early termination, and each column
//! sum is a difference of two Hurwitz zeta values. Unbounded directions are cut
//! at `ray_cutoff` in every coordinate, with a rigorous bound on what is lost.

use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lct::StretchedLctCache;
use crate::monomial::MonomialIdeal;
use crate::polygamma::{hurwitz_zeta, CompensatedSum};
use crate::polyhedron::{newton_polyhedron, IntegerFacet};
use crate::rational::{to_f64, Rational};
use crate::segre::segre_class;

/// How a lattice point `a` is assigned to the Newton region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionMode {
    /// `a_1...a_n lct(I_r) <= m` with `r_i = prod_{j != i} a_j`, the threshold of the
    /// stretched ideal recomputed (and memoized) per point.
    LctBased,
    /// Facet inequalities of the Newton polyhedron at `a/m`.
    MembershipBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    ExactRational,
    Float64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimatorConfig {
    pub m: u64,
    pub x: Vec<Rational>,
    pub condition_mode: ConditionMode,
    /// Largest coordinate visited along unbounded directions; `None` means `10 m^2`.
    pub ray_cutoff: Option<u64>,
    pub arithmetic: Arithmetic,
    pub threads: usize,
    /// Fail with [`Error::CutoffTooSmall`] if the tail bound exceeds this.
    pub tolerance: Option<f64>,
}

impl EstimatorConfig {
    pub fn new(m: u64, x: Vec<Rational>) -> Self {
        EstimatorConfig {
            m,
            x,
            condition_mode: ConditionMode::MembershipBased,
            ray_cutoff: None,
            arithmetic: Arithmetic::Float64,
            threads: 1,
            tolerance: None,
        }
    }

    pub fn with_mode(mut self, mode: ConditionMode) -> Self {
        self.condition_mode = mode;
        self
    }

    pub fn with_cutoff(mut self, cutoff: u64) -> Self {
        self.ray_cutoff = Some(cutoff);
        self
    }

    pub fn with_arithmetic(mut self, arithmetic: Arithmetic) -> Self {
        self.arithmetic = arithmetic;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = Some(tolerance);
        self
    }

    /// Same settings at another level; an explicit cutoff is kept as is.
    pub fn at_level(&self, m: u64) -> Self {
        EstimatorConfig { m, ..self.clone() }
    }

    pub fn cutoff(&self) -> u64 {
        self.ray_cutoff
            .unwrap_or_else(|| self.m.saturating_mul(self.m).saturating_mul(10))
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidConfig("m must be at least 1".into()));
        }
        if self.x.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.x.len(),
            });
        }
        if let Some(index) = self.x.iter().position(|v| *v <= Rational::zero()) {
            return Err(Error::NonPositiveParameter { index });
        }
        if self.cutoff() < self.m {
            return Err(Error::InvalidConfig(format!(
                "ray cutoff {} is below m = {}",
                self.cutoff(),
                self.m
            )));
        }
        if self.threads == 0 {
            return Err(Error::InvalidConfig("threads must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: f64,
    /// The sum itself in exact mode.
    pub exact: Option<Rational>,
    /// Rigorous upper bound on the part of the sum beyond the ray cutoff.
    pub tail_bound: f64,
    pub points: u128,
    pub columns: u64,
    /// Stretched-ideal thresholds computed (lct-based mode only).
    pub lct_evaluations: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub m: u64,
    pub estimate: f64,
    pub exact: f64,
    pub abs_error: f64,
    pub seconds: f64,
}

fn check_point(a: &[u64], m: u64, n: usize) -> Result<()> {
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
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

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// `m n! X_1...X_n / (m + a.X)^{n+1}`, exactly.
pub fn kernel_term(a: &[u64], m: u64, x: &[Rational]) -> Result<Rational> {
    let n = x.len();
    check_point(a, m, n)?;
    let mut denom = Rational::from_integer(m.into());
    let mut numer = Rational::from_integer((m * factorial(n)).into());
    for (ai, xi) in a.iter().zip(x) {
        denom += Rational::from_integer((*ai).into()) * xi;
        numer *= xi;
    }
    Ok(numer / num_traits::pow(denom, n + 1))
}

/// [`kernel_term`] in floating point.
pub fn kernel_term_f64(a: &[u64], m: u64, x: &[f64]) -> Result<f64> {
    let n = x.len();
    check_point(a, m, n)?;
    let mf = m as f64;
    let denom = mf + a.iter().zip(x).map(|(ai, xi)| *ai as f64 * xi).sum::<f64>();
    let numer = mf * factorial(n) as f64 * x.iter().product::<f64>();
    Ok(numer / denom.powi(n as i32 + 1))
}

/// Largest `a_n <= cutoff` with `(prefix, a_n)/m` in the region, or 0 if none.
fn column_top_by_facets(facets: &[IntegerFacet], prefix: &[u64], m: u64, cutoff: u64) -> u64 {
    let last = prefix.len();
    let mut best: i128 = 0;
    for f in facets {
        let rhs = f.offset * m as i128
            - prefix
                .iter()
                .zip(&f.normal)
                .map(|(&a, &w)| a as i128 * w)
                .sum::<i128>();
        let wn = f.normal[last];
        if wn == 0 {
            if rhs >= 0 {
                return cutoff;
            }
        } else if rhs >= 0 {
            best = best.max(rhs / wn);
        }
    }
    best.min(cutoff as i128) as u64
}

/// The same column top from stretched thresholds. `hint` is a known upper bound
/// (the top of a column that dominates this one); the search gallops down from
/// it and then bisects, relying on membership being monotone along the column.
fn column_top_by_lct(
    cache: &mut StretchedLctCache,
    prefix: &[u64],
    m: u64,
    hint: u64,
) -> Result<u64> {
    let mut point = prefix.to_vec();
    point.push(1);
    let last = point.len() - 1;
    let mut test = |t: u64| {
        point[last] = t;
        cache.region_condition(&point, m)
    };
    if hint == 0 || !test(1)? {
        return Ok(0);
    }
    if test(hint)? {
        return Ok(hint);
    }
    // invariant: test(lo) holds, test(hi) fails
    let mut hi = hint;
    let mut step = 1;
    let mut lo = loop {
        if hint <= step + 1 {
            break 1;
        }
        let probe = hint - step;
        if test(probe)? {
            break probe;
        }
        hi = probe;
        step *= 2;
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if test(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Column tops from thresholds, reusing the previous column as an upper bound
/// whenever the new prefix dominates it coordinatewise.
struct LctColumns {
    cache: StretchedLctCache,
    m: u64,
    cutoff: u64,
    previous: Option<(Vec<u64>, u64)>,
}

impl LctColumns {
    fn new(ideal: &MonomialIdeal, m: u64, cutoff: u64) -> Self {
        LctColumns {
            cache: StretchedLctCache::new(ideal.clone()),
            m,
            cutoff,
            previous: None,
        }
    }

    fn top(&mut self, prefix: &[u64]) -> Result<u64> {
        let hint = match &self.previous {
            Some((p, t)) if p.len() == prefix.len() && p.iter().zip(prefix).all(|(a, b)| a <= b) => *t,
            _ => self.cutoff,
        };
        let t = column_top_by_lct(&mut self.cache, prefix, self.m, hint)?;
        self.previous = Some((prefix.to_vec(), t));
        Ok(t)
    }
}

/// Visits every nonempty column. `top(prefix)` gives the column height for a full
/// `(n-1)`-prefix; shorter prefixes are probed by padding with ones.
fn for_each_column(
    n: usize,
    cutoff: u64,
    top: &mut impl FnMut(&[u64]) -> Result<u64>,
    visit: &mut impl FnMut(&[u64], u64) -> Result<()>,
) -> Result<()> {
    if n == 1 {
        let t = top(&[])?;
        if t > 0 {
            visit(&[], t)?;
        }
        return Ok(());
    }
    let len = n - 1;
    let mut prefix = vec![1u64; len];
    walk(0, &mut prefix, cutoff, top, visit)
}

fn walk(
    depth: usize,
    prefix: &mut Vec<u64>,
    cutoff: u64,
    top: &mut impl FnMut(&[u64]) -> Result<u64>,
    visit: &mut impl FnMut(&[u64], u64) -> Result<()>,
) -> Result<()> {
    let len = prefix.len();
    for v in 1..=cutoff {
        prefix[depth] = v;
        for p in prefix.iter_mut().skip(depth + 1) {
            *p = 1;
        }
        let t = top(prefix)?;
        if t == 0 {
            break;
        }
        if depth + 1 == len {
            visit(prefix, t)?;
        } else {
            walk(depth + 1, prefix, cutoff, top, visit)?;
        }
    }
    Ok(())
}

/// Columns are summed in batches; each batch is split into fixed sub-chunks so the
/// reduction order does not depend on the thread count.
const BATCH: usize = 1 << 16;
const SUB_CHUNK: usize = 1 << 10;
const DIRECT_LIMIT: u64 = 256;

struct ColumnBatch {
    prefixes: Vec<u64>,
    tops: Vec<u64>,
}

impl ColumnBatch {
    fn new() -> Self {
        ColumnBatch {
            prefixes: Vec::new(),
            tops: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.tops.len()
    }

    fn clear(&mut self) {
        self.prefixes.clear();
        self.tops.clear();
    }
}

struct FloatKernel {
    n: usize,
    mf: f64,
    x: Vec<f64>,
    /// `m n! prod X / X_n^{n+1}`.
    scale: f64,
}

impl FloatKernel {
    fn new(m: u64, x: &[f64]) -> Self {
        let n = x.len();
        let mf = m as f64;
        let xn = x[n - 1];
        let scale = mf * factorial(n) as f64 * x.iter().product::<f64>() / xn.powi(n as i32 + 1);
        FloatKernel {
            n,
            mf,
            x: x.to_vec(),
            scale,
        }
    }

    /// `sum_{a_n=1}^{top} kernel(prefix, a_n)`.
    fn column(&self, prefix: &[u64], top: u64) -> Result<f64> {
        let xn = self.x[self.n - 1];
        let b = self.mf + prefix.iter().zip(&self.x).map(|(a, x)| *a as f64 * x).sum::<f64>();
        let y = b / xn;
        let s = self.n as u32 + 1;
        let raw = if top <= DIRECT_LIMIT {
            let mut acc = CompensatedSum::default();
            for a in (1..=top).rev() {
                acc.add((a as f64 + y).powi(-(s as i32)));
            }
            acc.value()
        } else {
            hurwitz_zeta(s, 1.0 + y)? - hurwitz_zeta(s, top as f64 + 1.0 + y)?
        };
        Ok(self.scale * raw)
    }
}

struct ExactKernel {
    n: usize,
    m: Rational,
    x: Vec<Rational>,
    numer: Rational,
}

impl ExactKernel {
    fn new(m: u64, x: &[Rational]) -> Self {
        let n = x.len();
        let mut numer = Rational::from_integer((m * factorial(n)).into());
        for xi in x {
            numer *= xi;
        }
        ExactKernel {
            n,
            m: Rational::from_integer(m.into()),
            x: x.to_vec(),
            numer,
        }
    }

    fn column(&self, prefix: &[u64], top: u64) -> Rational {
        let mut b = self.m.clone();
        for (a, x) in prefix.iter().zip(&self.x) {
            b += Rational::from_integer((*a).into()) * x;
        }
        let xn = &self.x[self.n - 1];
        let mut acc = Rational::zero();
        let mut denom = b + xn;
        for _ in 0..top {
            acc += num_traits::pow(denom.clone(), self.n + 1).recip();
            denom += xn;
        }
        acc * &self.numer
    }
}

enum Accumulator {
    Float(FloatKernel, CompensatedSum),
    Exact(ExactKernel, Rational),
}

impl Accumulator {
    fn flush(&mut self, batch: &ColumnBatch, width: usize) -> Result<()> {
        let prefix_of = |i: usize| &batch.prefixes[i * width..(i + 1) * width];
        let ranges: Vec<(usize, usize)> = (0..batch.len())
            .step_by(SUB_CHUNK)
            .map(|s| (s, (s + SUB_CHUNK).min(batch.len())))
            .collect();
        match self {
            Accumulator::Float(kernel, total) => {
                let parts: Vec<CompensatedSum> = ranges
                    .par_iter()
                    .map(|&(s, e)| {
                        let mut acc = CompensatedSum::default();
                        for i in s..e {
                            acc.add(kernel.column(prefix_of(i), batch.tops[i])?);
                        }
                        Ok(acc)
                    })
                    .collect::<Result<_>>()?;
                for p in parts {
                    total.merge(p);
                }
            }
            Accumulator::Exact(kernel, total) => {
                let parts: Vec<Rational> = ranges
                    .par_iter()
                    .map(|&(s, e)| {
                        (s..e)
                            .map(|i| kernel.column(prefix_of(i), batch.tops[i]))
                            .fold(Rational::zero(), |acc, v| acc + v)
                    })
                    .collect();
                for p in parts {
                    *total += p;
                }
            }
        }
        Ok(())
    }
}

/// Upper bound on the kernel mass of region points with some coordinate above `cutoff`.
///
/// Such a point lies in `{a : <w, a> <= c m}` for a diagram facet `(w, c)` that does
/// not confine axis `i` below the cutoff. Bounding the supported coordinates by
/// their count and integrating the free ones gives
/// `m |S|! prod_{j in S} (c m X_j / w_j) (m + cutoff X_i)^{-(|S|+1)}` with `S = supp w`.
pub fn tail_bound(facets: &[IntegerFacet], m: u64, x: &[f64], cutoff: u64) -> f64 {
    let mf = m as f64;
    let mut bound = 0.0;
    for (i, xi) in x.iter().enumerate() {
        for f in facets {
            let w_i = f.normal[i];
            if (f.offset * m as i128) <= w_i * cutoff as i128 {
                continue;
            }
            let c = f.offset as f64;
            let mut support = 0usize;
            let mut product = 1.0;
            for (w, xj) in f.normal.iter().zip(x) {
                if *w > 0 {
                    support += 1;
                    product *= c * mf * xj / *w as f64;
                }
            }
            bound += mf * factorial(support) as f64 * product
                / (mf + cutoff as f64 * xi).powi(support as i32 + 1);
        }
    }
    bound
}

/// Lattice-sum approximation of the Segre class of `ideal` at `cfg.x`.
pub fn estimate(ideal: &MonomialIdeal, cfg: &EstimatorConfig) -> Result<Estimate> {
    let n = ideal.n();
    cfg.validate(n)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| estimate_in_pool(ideal, cfg))
}

fn estimate_in_pool(ideal: &MonomialIdeal, cfg: &EstimatorConfig) -> Result<Estimate> {
    let n = ideal.n();
    let m = cfg.m;
    let cutoff = cfg.cutoff();
    let x_f64: Vec<f64> = cfg.x.iter().map(to_f64).collect();
    let facets = newton_polyhedron(ideal).integer_diagram_facets();

    let tail = tail_bound(&facets, m, &x_f64, cutoff);
    if let Some(tol) = cfg.tolerance {
        if tail > tol {
            return Err(Error::CutoffTooSmall {
                tail_bound: tail,
                tolerance: tol,
            });
        }
    }

    let mut acc = match cfg.arithmetic {
        Arithmetic::Float64 => Accumulator::Float(FloatKernel::new(m, &x_f64), CompensatedSum::default()),
        Arithmetic::ExactRational => Accumulator::Exact(ExactKernel::new(m, &cfg.x), Rational::zero()),
    };
    let width = n - 1;
    let mut batch = ColumnBatch::new();
    let mut points: u128 = 0;
    let mut columns: u64 = 0;
    let mut visit = |prefix: &[u64], t: u64| -> Result<()> {
        batch.prefixes.extend_from_slice(prefix);
        batch.tops.push(t);
        points += u128::from(t);
        columns += 1;
        if batch.len() >= BATCH {
            acc.flush(&batch, width)?;
            batch.clear();
        }
        Ok(())
    };

    let mut lct_evaluations = 0;
    match cfg.condition_mode {
        ConditionMode::MembershipBased => {
            let mut top = |p: &[u64]| Ok(column_top_by_facets(&facets, p, m, cutoff));
            for_each_column(n, cutoff, &mut top, &mut visit)?;
        }
        ConditionMode::LctBased => {
            let mut columns = LctColumns::new(ideal, m, cutoff);
            let mut top = |p: &[u64]| columns.top(p);
            for_each_column(n, cutoff, &mut top, &mut visit)?;
            lct_evaluations = columns.cache.evaluations();
        }
    }
    acc.flush(&batch, width)?;

    let (value, exact) = match acc {
        Accumulator::Float(_, total) => (total.value(), None),
        Accumulator::Exact(_, total) => (to_f64(&total), Some(total)),
    };
    Ok(Estimate {
        value,
        exact,
        tail_bound: tail,
        points,
        columns,
        lct_evaluations,
    })
}

/// Index-set comparison between the two condition modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ModeComparison {
    pub columns: u64,
    pub membership_points: u128,
    pub lct_points: u128,
    /// Points selected by exactly one mode with every coordinate above 1.
    pub interior_discrepancies: u128,
    /// Points selected by exactly one mode with some coordinate equal to 1.
    pub unit_discrepancies: u128,
}

/// Compares the index sets of both modes column by column up to `cutoff`.
pub fn compare_modes(ideal: &MonomialIdeal, m: u64, cutoff: u64) -> Result<ModeComparison> {
    let n = ideal.n();
    if m == 0 || cutoff < m {
        return Err(Error::InvalidConfig("need m >= 1 and cutoff >= m".into()));
    }
    let facets = newton_polyhedron(ideal).integer_diagram_facets();
    let columns = std::cell::RefCell::new(LctColumns::new(ideal, m, cutoff));
    let both = |p: &[u64]| -> Result<(u64, u64)> {
        let a = column_top_by_facets(&facets, p, m, cutoff);
        let b = columns.borrow_mut().top(p)?;
        Ok((a, b))
    };
    let mut out = ModeComparison::default();
    let mut top = |p: &[u64]| both(p).map(|(a, b)| a.max(b));
    let mut visit = |p: &[u64], _: u64| -> Result<()> {
        // repeated probes are served from the threshold cache
        let (a, b) = both(p)?;
        out.columns += 1;
        out.membership_points += u128::from(a);
        out.lct_points += u128::from(b);
        let (lo, hi) = (a.min(b), a.max(b));
        let diff = u128::from(hi - lo);
        if diff == 0 {
            return Ok(());
        }
        if p.contains(&1) {
            out.unit_discrepancies += diff;
        } else if lo == 0 {
            out.unit_discrepancies += 1;
            out.interior_discrepancies += diff - 1;
        } else {
            out.interior_discrepancies += diff;
        }
        Ok(())
    };
    for_each_column(n, cutoff, &mut top, &mut visit)?;
    Ok(out)
}

/// Estimates at each `m` in `m_list` next to the exact Segre class value.
pub fn convergence_report(
    ideal: &MonomialIdeal,
    cfg: &EstimatorConfig,
    m_list: &[u64],
) -> Result<Vec<ConvergenceRow>> {
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidConfig("m list must be strictly increasing".into()));
    }
    let n = ideal.n();
    cfg.validate(n)?;
    let exact = to_f64(&segre_class(ideal, n.max(1))?.evaluate_exact(&cfg.x)?);
    m_list
        .iter()
        .map(|&m| {
            let start = Instant::now();
            let e = estimate(ideal, &cfg.at_level(m))?;
            Ok(ConvergenceRow {
                m,
                estimate: e.value,
                exact,
                abs_error: (e.value - exact).abs(),
                seconds: start.elapsed().as_secs_f64(),
            })
        })
        .collect()
}

/// Number of lattice points `a` with `a/m` in the region and all `a_i <= cutoff`,
/// by direct scan of the box. Only for small test cases.
pub fn count_points_brute_force(ideal: &MonomialIdeal, m: u64, cutoff: u64) -> u128 {
    let n = ideal.n();
    let facets = newton_polyhedron(ideal).integer_diagram_facets();
    let mut a = vec![1u64; n];
    let mut count = 0u128;
    loop {
        let inside = facets.iter().any(|f| {
            f.normal
                .iter()
                .zip(&a)
                .map(|(&w, &v)| w * v as i128)
                .sum::<i128>()
                <= f.offset * m as i128
        });
        if inside {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            a[i] += 1;
            if a[i] <= cutoff {
                break;
            }
            a[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ideal(n: usize, g: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_vecs(n, g).unwrap()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_term(&[1], 1, &[int(1)]).unwrap(), ratio(1, 4));
        assert_eq!(kernel_term(&[1, 1], 1, &[int(1), int(1)]).unwrap(), ratio(2, 27));
        assert!((kernel_term_f64(&[1, 1], 1, &[1.0, 1.0]).unwrap() - 2.0 / 27.0).abs() < 1e-16);
        assert!(kernel_term(&[0], 1, &[int(1)]).is_err());
    }

    #[test]
    fn column_tops_from_facets() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        let f = newton_polyhedron(&i).integer_diagram_facets();
        // 3 a1 + 2 a2 <= 6 m
        assert_eq!(column_top_by_facets(&f, &[1], 2, 100), 4);
        assert_eq!(column_top_by_facets(&f, &[4], 2, 100), 0);
        let i = ideal(2, &[&[1, 1]]);
        let f = newton_polyhedron(&i).integer_diagram_facets();
        assert_eq!(column_top_by_facets(&f, &[3], 3, 100), 100);
        assert_eq!(column_top_by_facets(&f, &[4], 3, 100), 3);
    }

    #[test]
    fn point_counts_match_box_scan() {
        for (n, g) in [
            (2usize, vec![vec![2u64, 0], vec![0, 3]]),
            (2, vec![vec![2, 0], vec![1, 1]]),
            (2, vec![vec![1, 1]]),
            (3, vec![vec![1, 0, 0], vec![0, 2, 1]]),
            (1, vec![vec![3]]),
        ] {
            let refs: Vec<&[u64]> = g.iter().map(|v| v.as_slice()).collect();
            let i = ideal(n, &refs);
            for m in 1..4u64 {
                let cutoff = 12;
                let cfg = EstimatorConfig::new(m, vec![int(1); n]).with_cutoff(cutoff);
                let e = estimate(&i, &cfg).unwrap();
                assert_eq!(e.points, count_points_brute_force(&i, m, cutoff), "{i} m={m}");
                let lct = estimate(&i, &cfg.clone().with_mode(ConditionMode::LctBased)).unwrap();
                assert_eq!(lct.points, e.points);
            }
        }
    }

    #[test]
    fn pure_power_converges() {
        let i = ideal(1, &[&[1]]);
        let e = estimate(&i, &EstimatorConfig::new(1000, vec![int(1)])).unwrap();
        assert!((e.value - 0.5).abs() < 5e-3);
        assert_eq!(e.tail_bound, 0.0);
    }

    #[test]
    fn large_parameters_suppress_kernel() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let e = estimate(&i, &EstimatorConfig::new(1, vec![int(10_000), int(10_000)])).unwrap();
        assert!(e.value < 1e-3);
    }

    #[test]
    fn invalid_configs() {
        let i = ideal(2, &[&[1, 1]]);
        assert!(estimate(&i, &EstimatorConfig::new(0, vec![int(1), int(1)])).is_err());
        assert!(matches!(
            estimate(&i, &EstimatorConfig::new(2, vec![int(1)])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            estimate(&i, &EstimatorConfig::new(2, vec![int(1), int(0)])),
            Err(Error::NonPositiveParameter { index: 1 })
        ));
        assert!(estimate(&i, &EstimatorConfig::new(5, vec![int(1), int(1)]).with_cutoff(4)).is_err());
        assert!(matches!(
            estimate(
                &i,
                &EstimatorConfig::new(5, vec![int(1), int(1)])
                    .with_cutoff(5)
                    .with_tolerance(1e-12)
            ),
            Err(Error::CutoffTooSmall { .. })
        ));
    }

    #[test]
    fn mode_comparison_counts() {
        let i = ideal(2, &[&[2, 0], &[1, 1]]);
        let c = compare_modes(&i, 6, 60).unwrap();
        assert_eq!(c.interior_discrepancies, 0);
        assert_eq!(c.unit_discrepancies, 0);
        assert_eq!(c.membership_points, count_points_brute_force(&i, 6, 60));
    }
}
