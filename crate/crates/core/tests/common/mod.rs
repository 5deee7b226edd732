#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use segre_core::rational::to_f64;
use segre_core::{ExponentVector, GeneralizedSimplex, MonomialIdeal, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ideal(n: usize, g: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::from_vecs(n, g).unwrap()
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// 1 to `max_gens` random nonzero generators with entries in `0..=max_exp`.
pub fn random_ideal(rng: &mut impl Rng, n: usize, max_gens: usize, max_exp: u64) -> MonomialIdeal {
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<ExponentVector> = (0..count)
        .map(|_| loop {
            let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if v.iter().any(|&e| e > 0) {
                break ExponentVector(v);
            }
        })
        .collect();
    MonomialIdeal::new(n, gens).unwrap()
}

/// Gauss-Legendre nodes and weights on `[0, 1]`, Newton iteration on `P_k`.
pub fn gauss_legendre(k: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (k as f64 + 0.5)).cos();
        let mut deriv = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=k {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            deriv = k as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / deriv;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * deriv * deriv);
        out.push(((1.0 - x) / 2.0, w / 2.0));
    }
    out
}

/// Composite rule: `panels` equal panels of `k`-point Gauss-Legendre on `[0, 1]`.
pub fn composite_rule(k: usize, panels: usize) -> Vec<(f64, f64)> {
    let base = gauss_legendre(k);
    let h = 1.0 / panels as f64;
    (0..panels)
        .flat_map(|p| base.iter().map(move |&(x, w)| ((p as f64 + x) * h, w * h)))
        .collect()
}

/// Panels `[1 - 2^-j, 1 - 2^-(j+1)]` for `j < levels` plus `[1 - 2^-levels, 1]`,
/// each with `k`-point Gauss-Legendre. Resolves integrands that are only
/// bounded, not smooth, at `u = 1`.
pub fn graded_rule(k: usize, levels: u32) -> Vec<(f64, f64)> {
    let base = gauss_legendre(k);
    let mut edges: Vec<f64> = (0..=levels).map(|j| 1.0 - 0.5f64.powi(j as i32)).collect();
    edges.push(1.0);
    edges
        .windows(2)
        .flat_map(|e| {
            let (a, h) = (e[0], e[1] - e[0]);
            base.iter().map(move |&(x, w)| (a + x * h, w * h))
        })
        .collect()
}

fn det_f64(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let pivot = (c..n)
            .max_by(|&i, &j| a[i][c].abs().partial_cmp(&a[j][c].abs()).unwrap())
            .unwrap();
        if a[pivot][c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            a.swap(pivot, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                a[r][k] -= f * a[c][k];
            }
        }
    }
    det
}

/// Tensorized quadrature of `n! prod X / (1 + a.X)^{n+1}` over a piece.
///
/// The simplex part is reached through the collapsed (Duffy) map from the unit
/// cube, each ray coordinate through `t X_k = u / (1 - u)` so the decay scale
/// of the kernel maps to the middle of the interval.
pub fn quadrature_piece(piece: &GeneralizedSimplex, x: &[f64]) -> f64 {
    let rule = composite_rule(16, 4);
    let ray_rule = graded_rule(10, 30);
    let n = piece.n();
    let verts: Vec<Vec<f64>> = piece
        .finite_vertices()
        .iter()
        .map(|v| v.0.iter().map(to_f64).collect())
        .collect();
    let p = verts.len() - 1;
    let rays = piece.ray_axes();
    let mut cols: Vec<Vec<f64>> = (1..=p)
        .map(|j| (0..n).map(|i| verts[j][i] - verts[0][i]).collect())
        .collect();
    for &k in rays {
        let mut e = vec![0.0; n];
        e[k] = 1.0;
        cols.push(e);
    }
    let rows: Vec<Vec<f64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    let linear_jac = det_f64(rows).abs();
    let fact: f64 = (1..=n).map(|v| v as f64).product();
    let scale = fact * x.iter().product::<f64>() * linear_jac;

    let dims = n;
    let mut idx = vec![0usize; dims];
    let mut total = 0.0;
    loop {
        let mut weight = 1.0;
        // collapsed coordinates for the simplex part
        let mut s = vec![0.0; p];
        let mut remaining = 1.0;
        for j in 0..p {
            let (u, w) = rule[idx[j]];
            s[j] = remaining * u;
            weight *= w * remaining;
            remaining *= 1.0 - u;
        }
        let mut point = verts[0].clone();
        for (j, sj) in s.iter().enumerate() {
            for i in 0..n {
                point[i] += sj * (verts[j + 1][i] - verts[0][i]);
            }
        }
        for (r, &k) in rays.iter().enumerate() {
            let (u, w) = ray_rule[idx[p + r]];
            let t = u / (1.0 - u) / x[k];
            weight *= w / ((1.0 - u) * (1.0 - u) * x[k]);
            point[k] += t;
        }
        let dot: f64 = point.iter().zip(x).map(|(a, b)| a * b).sum();
        total += weight / (1.0 + dot).powi(n as i32 + 1);

        let mut d = 0;
        loop {
            if d == dims {
                return scale * total;
            }
            idx[d] += 1;
            let len = if d < p { rule.len() } else { ray_rule.len() };
            if idx[d] < len {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
