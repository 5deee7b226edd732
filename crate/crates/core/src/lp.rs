//! Dense two-phase simplex over exact rationals.
//!
//! Pivoting follows Bland's rule (lowest eligible index enters, ties in the
//! ratio test leave by lowest basic index), which rules out cycling; with exact
//! arithmetic that is the only failure mode, so the solver always terminates
//! and is fully deterministic.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Variable bounds; `None` means unbounded on that side.
#[derive(Debug, Clone, PartialEq)]
pub struct Bound {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

impl Bound {
    pub fn non_negative() -> Self {
        Bound {
            lower: Some(Rational::zero()),
            upper: None,
        }
    }

    pub fn free() -> Self {
        Bound {
            lower: None,
            upper: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub direction: Direction,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bound>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, witness: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn is_feasible(&self) -> bool {
        !matches!(self, LpOutcome::Infeasible)
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

impl LpProblem {
    /// A problem over `objective.len()` non-negative variables and no constraints.
    pub fn new(direction: Direction, objective: Vec<Rational>) -> Self {
        let bounds = vec![Bound::non_negative(); objective.len()];
        LpProblem {
            direction,
            objective,
            constraints: Vec::new(),
            bounds,
        }
    }

    /// A pure feasibility problem over `vars` non-negative variables.
    pub fn feasibility(vars: usize) -> Self {
        Self::new(Direction::Minimize, vec![Rational::zero(); vars])
    }

    pub fn constraint(mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn bound(mut self, var: usize, bound: Bound) -> Self {
        self.bounds[var] = bound;
        self
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if self.bounds.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.bounds.len(),
            });
        }
        for c in &self.constraints {
            if c.coeffs.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.coeffs.len(),
                });
            }
        }
        Ok(())
    }
}

/// How an original variable is expressed through non-negative columns.
enum VarMap {
    /// `x = offset + y[col]`
    Shifted { col: usize, offset: Rational },
    /// `x = offset - y[col]`
    Mirrored { col: usize, offset: Rational },
    /// `x = y[pos] - y[neg]`
    Split { pos: usize, neg: usize },
}

pub fn solve_lp(problem: &LpProblem) -> Result<LpOutcome> {
    problem.validate()?;
    let n = problem.num_vars();

    // Rewrite every variable in terms of non-negative columns.
    let mut maps = Vec::with_capacity(n);
    let mut ncols = 0;
    let mut extra_rows: Vec<(usize, Rational)> = Vec::new();
    for b in &problem.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), u) => {
                if let Some(u) = u {
                    if u < l {
                        return Ok(LpOutcome::Infeasible);
                    }
                    extra_rows.push((ncols, u - l));
                }
                maps.push(VarMap::Shifted {
                    col: ncols,
                    offset: l.clone(),
                });
                ncols += 1;
            }
            (None, Some(u)) => {
                maps.push(VarMap::Mirrored {
                    col: ncols,
                    offset: u.clone(),
                });
                ncols += 1;
            }
            (None, None) => {
                maps.push(VarMap::Split {
                    pos: ncols,
                    neg: ncols + 1,
                });
                ncols += 2;
            }
        }
    }

    let substitute = |coeffs: &[Rational]| -> (Vec<Rational>, Rational) {
        let mut row = vec![Rational::zero(); ncols];
        let mut constant = Rational::zero();
        for (a, map) in coeffs.iter().zip(&maps) {
            match map {
                VarMap::Shifted { col, offset } => {
                    row[*col] += a;
                    constant += a * offset;
                }
                VarMap::Mirrored { col, offset } => {
                    row[*col] -= a;
                    constant += a * offset;
                }
                VarMap::Split { pos, neg } => {
                    row[*pos] += a;
                    row[*neg] -= a;
                }
            }
        }
        (row, constant)
    };

    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = problem
        .constraints
        .iter()
        .map(|c| {
            let (row, constant) = substitute(&c.coeffs);
            (row, c.relation, &c.rhs - constant)
        })
        .collect();
    for (col, cap) in extra_rows {
        let mut row = vec![Rational::zero(); ncols];
        row[col] = Rational::from_integer(1.into());
        rows.push((row, Relation::Le, cap));
    }

    let (mut cost, cost_constant) = substitute(&problem.objective);
    if problem.direction == Direction::Maximize {
        cost.iter_mut().for_each(|c| *c = -c.clone());
    }

    let mut tableau = Tableau::build(ncols, &rows);
    if !tableau.phase_one() {
        return Ok(LpOutcome::Infeasible);
    }
    if !tableau.phase_two(&cost) {
        return Ok(LpOutcome::Unbounded);
    }

    let y = tableau.solution(ncols);
    let witness: Vec<Rational> = maps
        .iter()
        .map(|map| match map {
            VarMap::Shifted { col, offset } => offset + &y[*col],
            VarMap::Mirrored { col, offset } => offset - &y[*col],
            VarMap::Split { pos, neg } => &y[*pos] - &y[*neg],
        })
        .collect();
    let mut value: Rational = cost.iter().zip(&y).map(|(c, v)| c * v).sum();
    if problem.direction == Direction::Maximize {
        value = -value;
    }
    value += cost_constant;
    Ok(LpOutcome::Optimal { value, witness })
}

struct Tableau {
    /// Constraint rows, each `[coefficients..., rhs]`.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Columns at or beyond this index are artificial.
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(ncols: usize, rows: &[(Vec<Rational>, Relation, Rational)]) -> Self {
        let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
        let first_artificial = ncols + n_slack;
        // artificial variables are added for every row without a usable slack
        let mut needs_artificial = Vec::with_capacity(rows.len());
        for (_, rel, rhs) in rows {
            let flipped = rhs.is_negative();
            let slack_positive = match rel {
                Relation::Le => !flipped,
                Relation::Ge => flipped,
                Relation::Eq => false,
            };
            needs_artificial.push(!slack_positive);
        }
        let n_art = needs_artificial.iter().filter(|&&b| b).count();
        let width = first_artificial + n_art;

        let mut out_rows = Vec::with_capacity(rows.len());
        let mut basis = Vec::with_capacity(rows.len());
        let mut slack = ncols;
        let mut art = first_artificial;
        for ((coeffs, rel, rhs), &needs_art) in rows.iter().zip(&needs_artificial) {
            let mut row = vec![Rational::zero(); width + 1];
            row[..ncols].clone_from_slice(coeffs);
            row[width] = rhs.clone();
            let slack_col = match rel {
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    slack += 1;
                    Some(slack - 1)
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                    Some(slack - 1)
                }
                Relation::Eq => None,
            };
            if rhs.is_negative() {
                row.iter_mut().for_each(|v| *v = -v.clone());
            }
            if needs_art {
                row[art] = Rational::from_integer(1.into());
                basis.push(art);
                art += 1;
            } else {
                basis.push(slack_col.expect("slack exists when no artificial is needed"));
            }
            out_rows.push(row);
        }
        Tableau {
            rows: out_rows,
            basis,
            first_artificial,
            width,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs the simplex on `cost` restricted to columns `< allowed`.
    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            // reduced costs c_j - c_B B^{-1} A_j
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[b].is_zero() {
                        rc -= &cost[b] * &row[j];
                    }
                }
                rc.is_negative()
            });
            let Some(c) = entering else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn phase_one(&mut self) -> bool {
        if self.first_artificial == self.width {
            return true;
        }
        let mut cost = vec![Rational::zero(); self.width];
        for c in cost.iter_mut().skip(self.first_artificial) {
            *c = Rational::from_integer(1.into());
        }
        self.optimize(&cost, self.width);
        let infeasibility: Rational = self
            .rows
            .iter()
            .zip(&self.basis)
            .filter(|(_, &b)| b >= self.first_artificial)
            .map(|(row, _)| row[self.width].clone())
            .sum();
        if infeasibility.is_positive() {
            return false;
        }
        // drive zero-valued artificials out of the basis, dropping redundant rows
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        true
    }

    fn phase_two(&mut self, cost: &[Rational]) -> bool {
        let mut full = vec![Rational::zero(); self.width];
        full[..cost.len()].clone_from_slice(cost);
        self.optimize(&full, self.first_artificial)
    }

    fn solution(&self, ncols: usize) -> Vec<Rational> {
        let mut y = vec![Rational::zero(); ncols];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < ncols {
                y[b] = row[self.width].clone();
            }
        }
        y
    }
}
