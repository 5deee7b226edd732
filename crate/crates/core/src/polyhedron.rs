//! Newton polyhedron `P(I) = conv(exponents of I) = conv(generators) + orthant`
//! and the Newton region, the closure of the complement of `P(I)` in the
//! non-negative orthant.
//!
//! Facets are found by exhaustive search over `n`-subsets of extreme points
//! and axis directions. Every decision here is a sign test on exact rationals.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::lp::{solve_lp, LpOutcome, LpProblem, Relation};
use crate::monomial::{ExponentVector, MonomialIdeal};
use crate::rational::{format_rational, primitive_integer_vector, Rational};

/// A point with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn from_integers(v: &[u64]) -> Self {
        RationalPoint(v.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    /// The lattice point `a / m`.
    pub fn scaled_lattice(a: &[u64], m: u64) -> Self {
        RationalPoint(
            a.iter()
                .map(|&x| Rational::new(x.into(), m.into()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// The inequality `<normal, a> >= offset`, normalized to a primitive integer
/// normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
}

impl Facet {
    /// Facets with positive offset face the origin and bound the Newton region.
    pub fn is_diagram(&self) -> bool {
        self.offset.is_positive()
    }

    pub fn value(&self, p: &[Rational]) -> Rational {
        self.normal.iter().zip(p).map(|(w, x)| w * x).sum()
    }

    fn value_int(&self, v: &ExponentVector) -> Rational {
        self.normal
            .iter()
            .zip(&v.0)
            .map(|(w, &x)| w * Rational::from_integer(x.into()))
            .sum()
    }

    /// Axes `k` with `normal[k] = 0`; these are recession directions of the facet.
    pub fn ray_axes(&self) -> Vec<usize> {
        (0..self.normal.len())
            .filter(|&k| self.normal[k].is_zero())
            .collect()
    }
}

/// A facet with machine-integer coefficients, for hot loops over lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerFacet {
    pub normal: Vec<i128>,
    pub offset: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    n: usize,
    extreme_points: Vec<ExponentVector>,
    facets: Vec<Facet>,
}

impl NewtonPolyhedron {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn extreme_points(&self) -> &[ExponentVector] {
        &self.extreme_points
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn diagram_facets(&self) -> impl Iterator<Item = &Facet> {
        self.facets.iter().filter(|f| f.is_diagram())
    }

    /// Extreme points lying on the hyperplane of `facet`.
    pub fn facet_vertices(&self, facet: &Facet) -> Vec<ExponentVector> {
        self.extreme_points
            .iter()
            .filter(|v| facet.value_int(v) == facet.offset)
            .cloned()
            .collect()
    }

    /// Diagram facets as machine integers. Panics only if a coefficient does
    /// not fit in `i128`, which cannot happen for exponents that fit in `u64`
    /// at the dimensions this crate handles.
    pub fn integer_diagram_facets(&self) -> Vec<IntegerFacet> {
        self.diagram_facets()
            .map(|f| IntegerFacet {
                normal: f
                    .normal
                    .iter()
                    .map(|w| w.to_integer().to_i128().expect("facet normal fits in i128"))
                    .collect(),
                offset: f.offset.to_integer().to_i128().expect("facet offset fits in i128"),
            })
            .collect()
    }

    /// Membership in `P` through the facet inequalities (boundary included).
    pub fn contains(&self, p: &RationalPoint) -> Result<bool> {
        self.check_len(p)?;
        Ok(self.facets.iter().all(|f| f.value(&p.0) >= f.offset))
    }

    /// Membership in `P` through the LP `exists l >= 0, sum l = 1, sum l_j v_j <= p`.
    pub fn contains_lp(&self, p: &RationalPoint) -> Result<bool> {
        self.check_len(p)?;
        Ok(convex_combination_below(&self.extreme_points, &p.0, self.n).is_feasible())
    }

    /// Membership in the (closed) Newton region: `p >= 0` is not in the interior
    /// of `P`, i.e. `<w, p> <= c` for some diagram facet.
    pub fn in_region(&self, p: &RationalPoint) -> Result<bool> {
        self.check_len(p)?;
        if let Some(index) = p.0.iter().position(|x| x.is_negative()) {
            return Err(Error::NegativeCoordinate { index });
        }
        Ok(self.diagram_facets().any(|f| f.value(&p.0) <= f.offset))
    }

    fn check_len(&self, p: &RationalPoint) -> Result<()> {
        if p.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.len(),
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> PolyhedronJson {
        PolyhedronJson {
            n: self.n,
            extreme_points: self.extreme_points.iter().map(|v| v.0.clone()).collect(),
            facets: self
                .facets
                .iter()
                .map(|f| FacetJson {
                    normal: f.normal.iter().map(format_rational).collect(),
                    offset: format_rational(&f.offset),
                    kind: if f.is_diagram() { "diagram" } else { "coordinate" }.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetJson {
    pub normal: Vec<String>,
    pub offset: String,
    pub kind: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedronJson {
    pub n: usize,
    pub extreme_points: Vec<Vec<u64>>,
    pub facets: Vec<FacetJson>,
}

/// LP: is some convex combination of `points` componentwise `<= target`?
fn convex_combination_below(points: &[ExponentVector], target: &[Rational], n: usize) -> LpOutcome {
    let k = points.len();
    let mut lp = LpProblem::feasibility(k);
    for i in 0..n {
        let coeffs = points
            .iter()
            .map(|v| Rational::from_integer(v.0[i].into()))
            .collect();
        lp = lp.constraint(coeffs, Relation::Le, target[i].clone());
    }
    lp = lp.constraint(
        vec![Rational::from_integer(1.into()); k],
        Relation::Eq,
        Rational::from_integer(1.into()),
    );
    solve_lp(&lp).expect("well-formed by construction")
}

fn to_rational(v: &ExponentVector) -> Vec<Rational> {
    v.0.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Extreme points and all facets of `conv(generators) + orthant`.
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> NewtonPolyhedron {
    let n = ideal.n();
    let gens = ideal.generators();
    let extreme_points: Vec<ExponentVector> = gens
        .iter()
        .enumerate()
        .filter(|&(i, v)| {
            let others: Vec<ExponentVector> = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, g)| g.clone())
                .collect();
            others.is_empty() || !convex_combination_below(&others, &to_rational(v), n).is_feasible()
        })
        .map(|(_, v)| v.clone())
        .collect();

    let facets = enumerate_facets(n, &extreme_points);
    NewtonPolyhedron {
        n,
        extreme_points,
        facets,
    }
}

enum Element<'a> {
    Point(&'a ExponentVector),
    Ray(usize),
}

fn enumerate_facets(n: usize, extreme_points: &[ExponentVector]) -> Vec<Facet> {
    let elements: Vec<Element> = extreme_points
        .iter()
        .map(Element::Point)
        .chain((0..n).map(Element::Ray))
        .collect();
    let mut found: BTreeSet<(Vec<BigInt>, BigInt)> = BTreeSet::new();
    for_each_subset(elements.len(), n, &mut |subset| {
        if !subset.iter().any(|&i| matches!(elements[i], Element::Point(_))) {
            return;
        }
        // unknowns (w_1..w_n, c): points give <w, v> - c = 0, rays give w_k = 0
        let rows: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&i| match &elements[i] {
                Element::Point(v) => {
                    let mut r = to_rational(v);
                    r.push(Rational::from_integer((-1).into()));
                    r
                }
                Element::Ray(k) => {
                    let mut r = vec![Rational::zero(); n + 1];
                    r[*k] = Rational::from_integer(1.into());
                    r
                }
            })
            .collect();
        let ns = linalg::nullspace(&rows, n + 1);
        if ns.len() != 1 {
            return;
        }
        let mut coeffs = primitive_integer_vector(&ns[0]);
        let w = &coeffs[..n];
        if w.iter().all(Zero::is_zero) {
            return;
        }
        let has_pos = w.iter().any(Signed::is_positive);
        let has_neg = w.iter().any(Signed::is_negative);
        if has_pos && has_neg {
            return;
        }
        if has_neg {
            coeffs.iter_mut().for_each(|x| *x = -x.clone());
        }
        let (w, c) = coeffs.split_at(n);
        let c = c[0].clone();
        let valid = extreme_points.iter().all(|v| {
            let s: BigInt = w.iter().zip(&v.0).map(|(a, &b)| a * BigInt::from(b)).sum();
            s >= c
        });
        if valid {
            found.insert((w.to_vec(), c));
        }
    });
    found
        .into_iter()
        .map(|(w, c)| Facet {
            normal: w.into_iter().map(Rational::from_integer).collect(),
            offset: Rational::from_integer(c),
        })
        .collect()
}

/// Calls `f` with each `k`-subset of `0..len` in lexicographic order.
pub(crate) fn for_each_subset(len: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, len: usize, k: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if acc.len() == k {
            f(acc);
            return;
        }
        for i in start..len {
            if len - i < k - acc.len() {
                break;
            }
            acc.push(i);
            rec(i + 1, len, k, acc, f);
            acc.pop();
        }
    }
    rec(0, len, k, &mut Vec::with_capacity(k), f);
}

/// Membership of `p` in the Newton region of `ideal`.
pub fn in_newton_region(ideal: &MonomialIdeal, p: &RationalPoint) -> Result<bool> {
    newton_polyhedron(ideal).in_region(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn ideal(n: usize, g: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_vecs(n, g).unwrap()
    }

    fn pt(v: &[(i64, i64)]) -> RationalPoint {
        RationalPoint(v.iter().map(|&(p, q)| ratio(p, q)).collect())
    }

    fn facet(normal: &[i64], offset: i64) -> Facet {
        Facet {
            normal: normal.iter().map(|&v| int(v)).collect(),
            offset: int(offset),
        }
    }

    #[test]
    fn diagonal_ideal() {
        let p = newton_polyhedron(&ideal(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(p.extreme_points().len(), 2);
        let diagram: Vec<_> = p.diagram_facets().cloned().collect();
        // a1/2 + a2/3 >= 1
        assert_eq!(diagram, vec![facet(&[3, 2], 6)]);
        assert_eq!(p.facets().len(), 3);
    }

    #[test]
    fn translated_orthant() {
        let p = newton_polyhedron(&ideal(2, &[&[1, 1]]));
        assert_eq!(p.extreme_points(), &[ExponentVector(vec![1, 1])]);
        assert_eq!(p.facets(), &[facet(&[0, 1], 1), facet(&[1, 0], 1)]);
    }

    #[test]
    fn two_diagram_facets() {
        let p = newton_polyhedron(&ideal(2, &[&[2, 0], &[1, 1]]));
        assert_eq!(p.extreme_points().len(), 2);
        let diagram: Vec<_> = p.diagram_facets().cloned().collect();
        assert_eq!(diagram, vec![facet(&[1, 0], 1), facet(&[1, 1], 2)]);
    }

    #[test]
    fn non_extreme_generator_dropped() {
        // (1,1) lies above the segment from (2,0) to (0,2)
        let p = newton_polyhedron(&ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert_eq!(p.extreme_points().len(), 2);
        let p = newton_polyhedron(&ideal(2, &[&[4, 0], &[2, 2], &[0, 4]]));
        assert_eq!(
            p.extreme_points(),
            &[ExponentVector(vec![0, 4]), ExponentVector(vec![4, 0])]
        );
    }

    #[test]
    fn membership_examples() {
        let p = newton_polyhedron(&ideal(1, &[&[3]]));
        assert!(p.contains(&pt(&[(3, 1)])).unwrap());
        let p = newton_polyhedron(&ideal(2, &[&[1, 1]]));
        assert!(!p.contains(&pt(&[(1, 2), (1, 2)])).unwrap());
        assert!(!p.contains_lp(&pt(&[(1, 2), (1, 2)])).unwrap());
        let p = newton_polyhedron(&ideal(2, &[&[2, 0], &[1, 1]]));
        assert!(p.contains(&pt(&[(3, 2), (1, 2)])).unwrap());
        assert!(p.contains_lp(&pt(&[(3, 2), (1, 2)])).unwrap());
        assert!(p.contains(&pt(&[(1, 1)])).is_err());
    }

    #[test]
    fn newton_region_examples() {
        let l = 3;
        let i = ideal(1, &[&[l]]);
        let m = 10;
        for a1 in 1..m * l {
            assert!(in_newton_region(&i, &RationalPoint::scaled_lattice(&[a1], m)).unwrap());
        }
        assert!(in_newton_region(&i, &RationalPoint::scaled_lattice(&[m * l], m)).unwrap());
        assert!(!in_newton_region(&i, &RationalPoint::scaled_lattice(&[m * l + 1], m)).unwrap());

        let d = ideal(2, &[&[2, 0], &[0, 3]]);
        assert!(in_newton_region(&d, &pt(&[(1, 1), (3, 2)])).unwrap());

        let c = ideal(2, &[&[1, 1]]);
        assert!(in_newton_region(&c, &pt(&[(1, 2), (100, 1)])).unwrap());
        assert!(!in_newton_region(&c, &pt(&[(3, 2), (100, 1)])).unwrap());
        assert_eq!(
            in_newton_region(&c, &pt(&[(-1, 2), (1, 1)])),
            Err(Error::NegativeCoordinate { index: 0 })
        );
    }

    #[test]
    fn facets_are_supported_by_enough_elements() {
        let p = newton_polyhedron(&ideal(3, &[&[3, 0, 0], &[0, 2, 1], &[1, 1, 1], &[0, 0, 4]]));
        for f in p.facets() {
            assert!(f.normal.iter().all(|w| !w.is_negative()));
            let mut rows: Vec<Vec<Rational>> = p
                .facet_vertices(f)
                .iter()
                .map(|v| {
                    let mut r = to_rational(v);
                    r.push(int(1));
                    r
                })
                .collect();
            for k in f.ray_axes() {
                let mut r = vec![int(0); 4];
                r[k] = int(1);
                rows.push(r);
            }
            assert!(linalg::rank(&rows) >= 3, "facet {f:?}");
            for v in p.extreme_points() {
                assert!(f.value_int(v) >= f.offset);
            }
        }
    }

    #[test]
    fn json_dump_uses_rational_strings() {
        let p = newton_polyhedron(&ideal(2, &[&[2, 0], &[0, 3]]));
        let json = serde_json::to_value(p.to_json()).unwrap();
        assert_eq!(json["extreme_points"], serde_json::json!([[0, 3], [2, 0]]));
        let diagram = json["facets"]
            .as_array()
            .unwrap()
            .iter()
            .find(|f| f["kind"] == "diagram")
            .unwrap();
        assert_eq!(diagram["normal"], serde_json::json!(["3", "2"]));
        assert_eq!(diagram["offset"], "6");
    }

    #[test]
    fn subsets_enumerated_lexicographically() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, &mut |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
    }
}
