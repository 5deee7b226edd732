//! Exact Segre classes of monomial subschemes.
//!
//! The Newton region `N` is star-shaped about the origin, so coning the origin
//! over a triangulation of each diagram facet cuts it into generalized
//! simplices: `conv(0, v_1, ..., v_p) + cone(e_{k_1}, ..., e_{k_q})` with
//! `p + q = n`. On such a piece
//!
//! ```text
//! int n! X_1...X_n da / (1 + a.X)^{n+1}
//!     = |det(v_1, ..., v_p, e_{k_1}, ..., e_{k_q})| * prod_{i not a ray} X_i
//!       / prod_k (1 + v_k.X)
//! ```
//!
//! and summing over pieces gives the class as a power series in the
//! coordinate hyperplane classes `X_i`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::polyhedron::{for_each_subset, newton_polyhedron, NewtonPolyhedron, RationalPoint};
use crate::rational::{format_rational, to_f64, Rational};
use crate::series::TruncatedSeries;

/// Where a point sits relative to a piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Interior,
    Boundary,
    Outside,
}

/// `conv(v_0, ..., v_p) + cone(e_k : k in ray_axes)`, full-dimensional.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralizedSimplex {
    finite_vertices: Vec<RationalPoint>,
    ray_axes: Vec<usize>,
    jacobian: Rational,
    /// Inverse of the edge matrix, rows map `p - v_0` to edge coordinates.
    inverse_edges: Vec<Vec<Rational>>,
}

impl GeneralizedSimplex {
    pub fn new(finite_vertices: Vec<RationalPoint>, ray_axes: Vec<usize>) -> Result<Self> {
        let n = finite_vertices.first().map_or(0, RationalPoint::len);
        if finite_vertices.is_empty() || finite_vertices.len() - 1 + ray_axes.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: finite_vertices.len().saturating_sub(1) + ray_axes.len(),
            });
        }
        let mut sorted = ray_axes.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::NonCancellingRay { axis: w[0] });
        }
        let v0 = &finite_vertices[0];
        // columns of the edge matrix: v_i - v_0, then e_k
        let mut columns: Vec<Vec<Rational>> = finite_vertices[1..]
            .iter()
            .map(|v| v.0.iter().zip(&v0.0).map(|(a, b)| a - b).collect())
            .collect();
        for &k in &ray_axes {
            if k >= n {
                return Err(Error::DimensionMismatch { expected: n, found: k + 1 });
            }
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            columns.push(e);
        }
        let matrix: Vec<Vec<Rational>> = (0..n)
            .map(|i| columns.iter().map(|c| c[i].clone()).collect())
            .collect();
        let jacobian = linalg::determinant(&matrix).abs();
        if jacobian.is_zero() {
            return Err(Error::DegenerateFacet);
        }
        let inverse_edges = linalg::inverse(&matrix).ok_or(Error::DegenerateFacet)?;
        Ok(GeneralizedSimplex {
            finite_vertices,
            ray_axes,
            jacobian,
            inverse_edges,
        })
    }

    pub fn n(&self) -> usize {
        self.finite_vertices[0].len()
    }

    pub fn finite_vertices(&self) -> &[RationalPoint] {
        &self.finite_vertices
    }

    pub fn ray_axes(&self) -> &[usize] {
        &self.ray_axes
    }

    pub fn jacobian(&self) -> &Rational {
        &self.jacobian
    }

    pub fn is_bounded(&self) -> bool {
        self.ray_axes.is_empty()
    }

    pub fn locate(&self, p: &RationalPoint) -> Location {
        let v0 = &self.finite_vertices[0];
        let shifted: Vec<Rational> = p.0.iter().zip(&v0.0).map(|(a, b)| a - b).collect();
        let coords = linalg::mat_vec(&self.inverse_edges, &shifted);
        let p_count = self.finite_vertices.len() - 1;
        let simplex_sum: Rational = coords[..p_count].iter().sum();
        let slack = Rational::one() - simplex_sum;
        if coords.iter().any(Signed::is_negative) || slack.is_negative() {
            Location::Outside
        } else if coords.iter().any(Zero::is_zero) || slack.is_zero() {
            Location::Boundary
        } else {
            Location::Interior
        }
    }

    fn affine_at(&self, v: &RationalPoint, x: &[Rational]) -> Rational {
        Rational::one() + v.0.iter().zip(x).map(|(a, b)| a * b).sum::<Rational>()
    }

    /// Exact value of the kernel integral over this piece at rational `X`.
    pub fn integral_exact(&self, x: &[Rational]) -> Rational {
        let numerator = (0..self.n())
            .filter(|i| !self.ray_axes.contains(i))
            .fold(self.jacobian.clone(), |acc, i| acc * &x[i]);
        let denominator = self
            .finite_vertices
            .iter()
            .fold(Rational::one(), |acc, v| acc * self.affine_at(v, x));
        numerator / denominator
    }

    /// Floating-point value of the kernel integral over this piece.
    pub fn integral_f64(&self, x: &[f64]) -> f64 {
        let numerator = (0..self.n())
            .filter(|i| !self.ray_axes.contains(i))
            .fold(to_f64(&self.jacobian), |acc, i| acc * x[i]);
        let denominator = self.finite_vertices.iter().fold(1.0, |acc, v| {
            acc * (1.0 + v.0.iter().zip(x).map(|(a, b)| to_f64(a) * b).sum::<f64>())
        });
        numerator / denominator
    }
}

/// Cuts the Newton region into generalized simplices, one cone per simplex of a
/// placing triangulation of each diagram facet, vertices placed in
/// lexicographic order.
pub fn cone_decomposition(p: &NewtonPolyhedron) -> Result<Vec<GeneralizedSimplex>> {
    cone_decomposition_by(p, |_, _| {})
}

/// As [`cone_decomposition`], with `reorder(facet_index, vertices)` choosing the
/// placing order of each facet's vertices.
pub fn cone_decomposition_by(
    p: &NewtonPolyhedron,
    mut reorder: impl FnMut(usize, &mut Vec<ExponentVector>),
) -> Result<Vec<GeneralizedSimplex>> {
    let n = p.n();
    let mut pieces = Vec::new();
    for (fi, facet) in p.diagram_facets().enumerate() {
        let mut vertices = p.facet_vertices(facet);
        vertices.sort();
        reorder(fi, &mut vertices);
        let rays = facet.ray_axes();
        // generators of the cone over the facet: its vertices, then its rays
        let mut generators: Vec<Vec<Rational>> = vertices
            .iter()
            .map(|v| v.0.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        for &k in &rays {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            generators.push(e);
        }
        for cell in triangulate_cone(&generators, n) {
            let mut finite = vec![RationalPoint(vec![Rational::zero(); n])];
            let mut ray_axes = Vec::new();
            for g in cell {
                if g < vertices.len() {
                    finite.push(RationalPoint(generators[g].clone()));
                } else {
                    ray_axes.push(rays[g - vertices.len()]);
                }
            }
            pieces.push(GeneralizedSimplex::new(finite, ray_axes)?);
        }
    }
    Ok(pieces)
}

/// Placing triangulation of `cone(generators)`; returns index sets of the
/// simplicial cones. Generators are inserted in the given order.
fn triangulate_cone(generators: &[Vec<Rational>], n: usize) -> Vec<Vec<usize>> {
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut coords: Vec<usize> = Vec::new();

    let det_in = |cols: &[usize], members: &[usize]| -> Rational {
        let m: Vec<Vec<Rational>> = members
            .iter()
            .map(|&g| cols.iter().map(|&c| generators[g][c].clone()).collect())
            .collect();
        linalg::determinant(&m)
    };

    for g in 0..generators.len() {
        if generators[g].iter().all(Zero::is_zero) {
            continue;
        }
        let mut candidate: Vec<Vec<Rational>> =
            basis.iter().map(|&b| generators[b].clone()).collect();
        candidate.push(generators[g].clone());
        if linalg::rank(&candidate) > basis.len() {
            // g leaves the current span: cone every cell over it
            if cells.is_empty() {
                cells.push(vec![g]);
            } else {
                for c in cells.iter_mut() {
                    c.push(g);
                }
            }
            basis.push(g);
            coords = independent_coordinates(&candidate, n);
            continue;
        }
        // g is in the span: attach it to every boundary facet it sees
        let mut facet_count: std::collections::HashMap<Vec<usize>, (usize, usize)> =
            std::collections::HashMap::new();
        for c in &cells {
            for (pos, &u) in c.iter().enumerate() {
                let mut tau = c.clone();
                tau.remove(pos);
                tau.sort_unstable();
                facet_count.entry(tau).or_insert((0, u)).0 += 1;
            }
        }
        let mut visible: Vec<Vec<usize>> = facet_count
            .into_iter()
            .filter(|(_, (count, _))| *count == 1)
            .filter_map(|(tau, (_, u))| {
                let mut with_u = tau.clone();
                with_u.push(u);
                let mut with_g = tau.clone();
                with_g.push(g);
                let su = det_in(&coords, &with_u);
                let sg = det_in(&coords, &with_g);
                let opposite = (su.is_positive() && sg.is_negative()) || (su.is_negative() && sg.is_positive());
                opposite.then_some(tau)
            })
            .collect();
        visible.sort();
        for mut tau in visible {
            tau.push(g);
            cells.push(tau);
        }
    }
    for c in cells.iter_mut() {
        c.sort_unstable();
    }
    cells
}

/// Coordinates on which the rows of `vectors` stay independent.
fn independent_coordinates(vectors: &[Vec<Rational>], n: usize) -> Vec<usize> {
    let d = vectors.len();
    let mut chosen = None;
    for_each_subset(n, d, &mut |cols| {
        if chosen.is_some() {
            return;
        }
        let m: Vec<Vec<Rational>> = vectors
            .iter()
            .map(|v| cols.iter().map(|&c| v[c].clone()).collect())
            .collect();
        if !linalg::determinant(&m).is_zero() {
            chosen = Some(cols.to_vec());
        }
    });
    chosen.expect("independent vectors have a nonzero maximal minor")
}

/// The kernel integral over one piece as a series truncated at total degree `degree`.
pub fn integrate_piece(piece: &GeneralizedSimplex, n: usize, degree: usize) -> Result<TruncatedSeries> {
    if piece.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: piece.n(),
        });
    }
    // each ray e_k contributes 1/X_k, cancelling X_k in X_1...X_n
    let mut exponent = vec![1u32; n];
    for &k in piece.ray_axes() {
        if exponent[k] == 0 {
            return Err(Error::NonCancellingRay { axis: k });
        }
        exponent[k] = 0;
    }
    let mut series = TruncatedSeries::monomial(n, degree, exponent, piece.jacobian().clone());
    for v in piece.finite_vertices() {
        if v.0.iter().all(Zero::is_zero) {
            continue;
        }
        if series.is_zero() {
            break;
        }
        let factor = TruncatedSeries::affine(degree, Rational::one(), &v.0).inverse()?;
        series = &series * &factor;
    }
    Ok(series)
}

/// Segre class of the subscheme of `P^ambient_dim` defined by a monomial ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct SegreClassResult {
    pub ambient_dim: usize,
    /// Series in the coordinate hyperplane classes `X_1, ..., X_n`.
    pub multivariate: TruncatedSeries,
    /// Coefficients of `H^1, ..., H^ambient_dim`.
    pub pushforward: Vec<Rational>,
    pub pieces: Vec<GeneralizedSimplex>,
}

fn check_parameters<T: PartialOrd + Default>(x: &[T], n: usize) -> Result<()> {
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: x.len(),
        });
    }
    if let Some(index) = x.iter().position(|v| !(*v > T::default())) {
        return Err(Error::NonPositiveParameter { index });
    }
    Ok(())
}

impl SegreClassResult {
    pub fn n(&self) -> usize {
        self.multivariate.n()
    }

    /// The rational function (sum of piece closed forms) at positive rational `X`.
    pub fn evaluate_exact(&self, x: &[Rational]) -> Result<Rational> {
        let zero = Rational::zero();
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        if let Some(index) = x.iter().position(|v| *v <= zero) {
            return Err(Error::NonPositiveParameter { index });
        }
        Ok(self.pieces.iter().map(|p| p.integral_exact(x)).sum())
    }

    /// The rational function at positive real `X`.
    pub fn evaluate_f64(&self, x: &[f64]) -> Result<f64> {
        check_parameters(x, self.n())?;
        Ok(self.pieces.iter().map(|p| p.integral_f64(x)).sum())
    }

    /// The truncated series at `X`; approximates the rational function for small `X`.
    pub fn evaluate_series(&self, x: &[f64]) -> Result<f64> {
        check_parameters(x, self.n())?;
        self.multivariate.evaluate_f64(x)
    }

    pub fn to_json(&self) -> SegreJson {
        SegreJson {
            pushforward: self.pushforward.iter().map(format_rational).collect(),
            multivariate: self
                .multivariate
                .terms()
                .map(|(e, c)| SeriesTermJson {
                    exp: e.clone(),
                    coeff: format_rational(c),
                })
                .collect(),
            pieces: self.pieces.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTermJson {
    pub exp: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegreJson {
    pub pushforward: Vec<String>,
    pub multivariate: Vec<SeriesTermJson>,
    pub pieces: usize,
}

/// Sums the per-piece series over the cone decomposition, truncated at
/// `ambient_dim`, and pushes forward along `X_i -> H`.
pub fn segre_class(ideal: &MonomialIdeal, ambient_dim: usize) -> Result<SegreClassResult> {
    let n = ideal.n();
    if ambient_dim + 1 < n {
        return Err(Error::AmbientTooSmall {
            ambient_dim,
            min: n - 1,
        });
    }
    let pieces = cone_decomposition(&newton_polyhedron(ideal))?;
    let partial: Vec<TruncatedSeries> = pieces
        .par_iter()
        .map(|p| integrate_piece(p, n, ambient_dim))
        .collect::<Result<_>>()?;
    let multivariate = partial
        .iter()
        .fold(TruncatedSeries::zero(n, ambient_dim), |acc, s| &acc + s);
    let pushforward = multivariate.pushforward();
    Ok(SegreClassResult {
        ambient_dim,
        multivariate,
        pushforward,
        pieces,
    })
}
