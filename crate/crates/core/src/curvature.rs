//! Pointwise curvature of coordinate metrics in dimension four.
//!
//! Sign conventions: `R_abcd = K (g_ac g_bd - g_ad g_bc)` on a space form of
//! curvature `K`, so the round sphere has positive curvature operator.
//! Norms of `W±` and `Ric°` are the sums of squared eigenvalues of the
//! corresponding operators (`W±` on `Λ±`, `Ric°` on the tangent space). This
//! is a factor 4 away from the full-index tensor norm `Σ W_abcd²` used by some
//! texts.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::{Matrix3, Matrix4, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::flat_catalog::Sign;

pub type Point = [f64; 4];
pub type Tensor3 = [[[f64; 4]; 4]; 4];
pub type Tensor4 = [[[[f64; 4]; 4]; 4]; 4];

pub const DIMENSION: usize = 4;
pub const DEFAULT_STEP: f64 = 1e-4;
pub const MIN_STEP: f64 = 1e-9;
pub const MODEL_NAMES: [&str; 6] = ["F4", "H4", "H3xE1", "H2xE2", "H2xH2", "CH2"];

/// Ordering of the `Λ²` basis; `Λ±` is spanned by `(b_i ± b_{i+3})/√2`.
pub const LAMBDA2_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

type MetricFn = Arc<dyn Fn(&Point) -> Matrix4<f64> + Send + Sync>;
type DerivativeFn = Arc<dyn Fn(&Point) -> [Matrix4<f64>; 4] + Send + Sync>;
type DomainFn = Arc<dyn Fn(&Point) -> bool + Send + Sync>;

/// A metric on an open subset of R⁴.
#[derive(Clone)]
pub struct MetricChart {
    name: String,
    metric: MetricFn,
    derivative: Option<DerivativeFn>,
    domain: DomainFn,
    orientation: Sign,
    base_point: Point,
    sample_box: [(f64, f64); 4],
}

impl fmt::Debug for MetricChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricChart")
            .field("name", &self.name)
            .field("exact_derivative", &self.derivative.is_some())
            .field("orientation", &self.orientation)
            .field("base_point", &self.base_point)
            .finish()
    }
}

impl MetricChart {
    pub fn new(
        name: impl Into<String>,
        metric: impl Fn(&Point) -> Matrix4<f64> + Send + Sync + 'static,
        domain: impl Fn(&Point) -> bool + Send + Sync + 'static,
        base_point: Point,
    ) -> MetricChart {
        MetricChart {
            name: name.into(),
            metric: Arc::new(metric),
            derivative: None,
            domain: Arc::new(domain),
            orientation: Sign::Plus,
            base_point,
            sample_box: base_point.map(|c| (c - 0.5, c + 0.5)),
        }
    }

    /// Exact first partials: entry `k` is `∂g/∂x_k`.
    pub fn with_derivative(
        mut self,
        derivative: impl Fn(&Point) -> [Matrix4<f64>; 4] + Send + Sync + 'static,
    ) -> MetricChart {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn without_derivative(mut self) -> MetricChart {
        self.derivative = None;
        self
    }

    pub fn with_orientation(mut self, orientation: Sign) -> MetricChart {
        self.orientation = orientation;
        self
    }

    /// Box from which [`random_points`] samples; it must lie in the domain.
    pub fn with_sample_box(mut self, sample_box: [(f64, f64); 4]) -> MetricChart {
        self.sample_box = sample_box;
        self
    }

    pub fn reversed(&self) -> MetricChart {
        let mut c = self.clone();
        c.orientation = -c.orientation;
        c
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> usize {
        DIMENSION
    }

    pub fn orientation(&self) -> Sign {
        self.orientation
    }

    pub fn base_point(&self) -> Point {
        self.base_point
    }

    pub fn has_exact_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn in_domain(&self, p: &Point) -> bool {
        p.iter().all(|c| c.is_finite()) && (self.domain)(p)
    }

    pub fn metric_at(&self, p: &Point) -> Result<Matrix4<f64>> {
        if !self.in_domain(p) {
            return Err(Error::Curvature(format!("{}: point {p:?} is outside the domain", self.name)));
        }
        Ok((self.metric)(p))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub chart: String,
    pub point: Point,
    pub metric: [[f64; 4]; 4],
    /// `christoffel[a][b][c] = Γ^a_bc`.
    pub christoffel: Tensor3,
    /// Lowered `R_abcd`.
    pub riemann: Tensor4,
    pub weyl: Tensor4,
    pub ricci: [[f64; 4]; 4],
    pub scalar: f64,
    pub traceless_ricci_norm2: f64,
    /// Descending.
    pub wplus_eigenvalues: [f64; 3],
    pub wminus_eigenvalues: [f64; 3],
    pub wplus_norm2: f64,
    pub wminus_norm2: f64,
    pub chi_density: f64,
    pub sigma_density: f64,
    pub delta_plus_density: f64,
    pub delta_minus_density: f64,
}

impl CurvatureReport {
    /// Scalar invariants in a fixed order, for comparisons between points or steps.
    pub fn invariants(&self) -> Vec<(&'static str, f64)> {
        let mut v = vec![
            ("scalar", self.scalar),
            ("traceless_ricci_norm2", self.traceless_ricci_norm2),
            ("wplus_norm2", self.wplus_norm2),
            ("wminus_norm2", self.wminus_norm2),
        ];
        let names_p = ["wplus_eigenvalue_0", "wplus_eigenvalue_1", "wplus_eigenvalue_2"];
        let names_m = ["wminus_eigenvalue_0", "wminus_eigenvalue_1", "wminus_eigenvalue_2"];
        v.extend(names_p.into_iter().zip(self.wplus_eigenvalues));
        v.extend(names_m.into_iter().zip(self.wminus_eigenvalues));
        v.extend([
            ("chi_density", self.chi_density),
            ("sigma_density", self.sigma_density),
            ("delta_plus_density", self.delta_plus_density),
            ("delta_minus_density", self.delta_minus_density),
        ]);
        v
    }

    fn inverse_metric(&self) -> Matrix4<f64> {
        Matrix4::from_fn(|i, j| self.metric[i][j]).try_inverse().expect("metric was positive definite")
    }

    /// Gauss-Bonnet integrand `(|Rm|² - 4|Ric|² + s²)/(32π²)` with full-index norms.
    pub fn chi_density_from_riemann(&self) -> f64 {
        let gi = self.inverse_metric();
        let up = raise_all(&self.riemann, &gi);
        let mut rm2 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        rm2 += self.riemann[a][b][c][d] * up[a][b][c][d];
                    }
                }
            }
        }
        let ric = Matrix4::from_fn(|i, j| self.ricci[i][j]);
        let mixed = gi * ric;
        let ric2 = (mixed * mixed).trace();
        (rm2 - 4.0 * ric2 + self.scalar * self.scalar) / (32.0 * PI * PI)
    }

    /// Largest deviation from the algebraic Bianchi symmetries.
    pub fn bianchi_defect(&self) -> f64 {
        let r = &self.riemann;
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let v = r[a][b][c][d];
                        worst = worst
                            .max((v + r[b][a][c][d]).abs())
                            .max((v + r[a][b][d][c]).abs())
                            .max((v - r[c][d][a][b]).abs())
                            .max((v + r[a][c][d][b] + r[a][d][b][c]).abs());
                    }
                }
            }
        }
        worst
    }

    /// Largest `g^{ac} W_abcd` component.
    pub fn weyl_trace_defect(&self) -> f64 {
        let gi = self.inverse_metric();
        let mut worst: f64 = 0.0;
        for b in 0..4 {
            for d in 0..4 {
                let mut t = 0.0;
                for a in 0..4 {
                    for c in 0..4 {
                        t += gi[(a, c)] * self.weyl[a][b][c][d];
                    }
                }
                worst = worst.max(t.abs());
            }
        }
        worst
    }
}

fn raise_all(t: &Tensor4, gi: &Matrix4<f64>) -> Tensor4 {
    let mut out = *t;
    for slot in 0..4 {
        out = contract_slot(&out, slot, |i, j| gi[(i, j)]);
    }
    out
}

/// Replace index `slot` by `Σ_j m(i, j) t[.. j ..]`.
fn contract_slot(t: &Tensor4, slot: usize, m: impl Fn(usize, usize) -> f64) -> Tensor4 {
    let mut out = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut idx = [a, b, c, d];
                    let i = idx[slot];
                    let mut s = 0.0;
                    for j in 0..4 {
                        idx[slot] = j;
                        s += m(i, j) * t[idx[0]][idx[1]][idx[2]][idx[3]];
                    }
                    out[a][b][c][d] = s;
                }
            }
        }
    }
    out
}

fn to_array(m: &Matrix4<f64>) -> [[f64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| m[(i, j)]))
}

fn shifted(p: &Point, k: usize, h: f64) -> Point {
    let mut q = *p;
    q[k] += h;
    q
}

/// Central difference with one Richardson level: `(4 D(h/2) - D(h)) / 3`.
fn richardson<T, F>(p: &Point, k: usize, h: f64, f: F) -> Result<T>
where
    F: Fn(&Point) -> Result<T>,
    T: Combine,
{
    let d = |h: f64| -> Result<T> {
        let plus = f(&shifted(p, k, h))?;
        let minus = f(&shifted(p, k, -h))?;
        Ok(plus.lin(1.0 / (2.0 * h), &minus, -1.0 / (2.0 * h)))
    };
    let coarse = d(h)?;
    let fine = d(h / 2.0)?;
    Ok(fine.lin(4.0 / 3.0, &coarse, -1.0 / 3.0))
}

trait Combine: Sized {
    fn lin(&self, a: f64, other: &Self, b: f64) -> Self;
}

impl Combine for Matrix4<f64> {
    fn lin(&self, a: f64, other: &Self, b: f64) -> Self {
        self * a + other * b
    }
}

impl Combine for Tensor3 {
    fn lin(&self, a: f64, other: &Self, b: f64) -> Self {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| std::array::from_fn(|k| a * self[i][j][k] + b * other[i][j][k]))
        })
    }
}

fn metric_partials(chart: &MetricChart, p: &Point, h: f64) -> Result<[Matrix4<f64>; 4]> {
    if !chart.in_domain(p) {
        return Err(Error::Curvature(format!("{}: point {p:?} is outside the domain", chart.name)));
    }
    if let Some(exact) = &chart.derivative {
        return Ok(exact(p));
    }
    let mut out = [Matrix4::zeros(); 4];
    for (k, slot) in out.iter_mut().enumerate() {
        *slot = richardson(p, k, h, |q| chart.metric_at(q))?;
    }
    Ok(out)
}

fn christoffel_at(chart: &MetricChart, p: &Point, h: f64) -> Result<Tensor3> {
    let g = chart.metric_at(p)?;
    let gi = g.try_inverse().ok_or_else(|| Error::Curvature(format!("{}: metric is singular at {p:?}", chart.name)))?;
    let dg = metric_partials(chart, p, h)?;
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                let mut s = 0.0;
                for d in 0..4 {
                    s += gi[(a, d)] * (dg[b][(d, c)] + dg[c][(d, b)] - dg[d][(b, c)]);
                }
                gamma[a][b][c] = 0.5 * s;
            }
        }
    }
    Ok(gamma)
}

fn sorted_desc(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// Full curvature data at `point`; `step` drives the finite differences.
pub fn curvature_at(chart: &MetricChart, point: &Point, step: f64) -> Result<CurvatureReport> {
    if !(step.is_finite() && step >= MIN_STEP) {
        return Err(Error::Curvature(format!("step {step} underflows (minimum {MIN_STEP})")));
    }
    if !chart.in_domain(point) {
        return Err(Error::Curvature(format!("{}: point {point:?} is outside the domain", chart.name)));
    }
    for k in 0..4 {
        for h in [2.0 * step, -2.0 * step] {
            if !chart.in_domain(&shifted(point, k, h)) {
                return Err(Error::Curvature(format!(
                    "{}: step {step} leaves the domain around {point:?}",
                    chart.name
                )));
            }
        }
    }
    let g = chart.metric_at(point)?;
    if (g - g.transpose()).abs().max() > 1e-12 * (1.0 + g.abs().max()) {
        return Err(Error::Curvature(format!("{}: metric is not symmetric at {point:?}", chart.name)));
    }
    let chol = g
        .cholesky()
        .ok_or_else(|| Error::Curvature(format!("{}: metric is not positive definite at {point:?}", chart.name)))?;
    let gi = chol.inverse();

    let gamma = christoffel_at(chart, point, step)?;
    let mut dgamma = [[[[0.0; 4]; 4]; 4]; 4];
    for (k, slot) in dgamma.iter_mut().enumerate() {
        *slot = richardson(point, k, step, |q| christoffel_at(chart, q, step))?;
    }

    // R^a_bcd = ∂_c Γ^a_db - ∂_d Γ^a_cb + Γ^a_ce Γ^e_db - Γ^a_de Γ^e_cb
    let mut rup = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let mut s = dgamma[c][a][d][b] - dgamma[d][a][c][b];
                    for e in 0..4 {
                        s += gamma[a][c][e] * gamma[e][d][b] - gamma[a][d][e] * gamma[e][c][b];
                    }
                    rup[a][b][c][d] = s;
                }
            }
        }
    }
    let riemann = contract_slot(&rup, 0, |i, j| g[(i, j)]);

    let mut ric = Matrix4::zeros();
    for b in 0..4 {
        for d in 0..4 {
            ric[(b, d)] = (0..4).map(|a| rup[a][b][a][d]).sum();
        }
    }
    let ric = (ric + ric.transpose()) * 0.5;
    let scalar = (gi * ric).trace();

    let mut weyl = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let gg = g[(a, c)] * g[(b, d)] - g[(a, d)] * g[(b, c)];
                    let kn = g[(a, c)] * ric[(b, d)] - g[(a, d)] * ric[(b, c)] - g[(b, c)] * ric[(a, d)]
                        + g[(b, d)] * ric[(a, c)];
                    weyl[a][b][c][d] = riemann[a][b][c][d] - 0.5 * kn + scalar / 6.0 * gg;
                }
            }
        }
    }

    // Orthonormal frame: columns of L^{-T}, positively oriented w.r.t. the coordinates.
    let frame = chol
        .l()
        .try_inverse()
        .ok_or_else(|| Error::Curvature(format!("{}: degenerate frame at {point:?}", chart.name)))?
        .transpose();
    let mut wf = weyl;
    for slot in 0..4 {
        wf = contract_slot(&wf, slot, |i, j| frame[(j, i)]);
    }
    let ricf = frame.transpose() * ric * frame;
    let ric0 = ricf - Matrix4::identity() * (scalar / 4.0);
    let traceless_ricci_norm2 = ric0.iter().map(|x| x * x).sum();

    let block = |sign: f64| -> Matrix3<f64> {
        let m = Matrix3::from_fn(|i, j| {
            let (pi, qi) = (LAMBDA2_BASIS[i], LAMBDA2_BASIS[i + 3]);
            let (pj, qj) = (LAMBDA2_BASIS[j], LAMBDA2_BASIS[j + 3]);
            0.5 * (wf[pi.0][pi.1][pj.0][pj.1]
                + sign * wf[pi.0][pi.1][qj.0][qj.1]
                + sign * wf[qi.0][qi.1][pj.0][pj.1]
                + wf[qi.0][qi.1][qj.0][qj.1])
        });
        (m + m.transpose()) * 0.5
    };
    let (mut plus, mut minus) = (block(1.0), block(-1.0));
    if chart.orientation == Sign::Minus {
        std::mem::swap(&mut plus, &mut minus);
    }
    let eig = |m: Matrix3<f64>| -> [f64; 3] {
        let e = SymmetricEigen::new(m).eigenvalues;
        sorted_desc([e[0], e[1], e[2]])
    };
    let (wplus_eigenvalues, wminus_eigenvalues) = (eig(plus), eig(minus));
    let wplus_norm2: f64 = wplus_eigenvalues.iter().map(|x| x * x).sum();
    let wminus_norm2: f64 = wminus_eigenvalues.iter().map(|x| x * x).sum();

    let s2 = scalar * scalar / 24.0;
    let eight_pi2 = 8.0 * PI * PI;
    let chi_density = (wplus_norm2 + wminus_norm2 - 0.5 * traceless_ricci_norm2 + s2) / eight_pi2;
    let sigma_density = (wplus_norm2 - wminus_norm2) / (12.0 * PI * PI);
    let delta_plus_density = (3.0 * wplus_norm2 - wminus_norm2 - 0.5 * traceless_ricci_norm2 + s2) / eight_pi2;
    let delta_minus_density = (3.0 * wminus_norm2 - wplus_norm2 - 0.5 * traceless_ricci_norm2 + s2) / eight_pi2;

    Ok(CurvatureReport {
        chart: chart.name.clone(),
        point: *point,
        metric: to_array(&g),
        christoffel: gamma,
        riemann,
        weyl,
        ricci: to_array(&ric),
        scalar,
        traceless_ricci_norm2,
        wplus_eigenvalues,
        wminus_eigenvalues,
        wplus_norm2,
        wminus_norm2,
        chi_density,
        sigma_density,
        delta_plus_density,
        delta_minus_density,
    })
}

/// `max | |W+|² - |W-|² |` over the points.
pub fn selfdual_balance(chart: &MetricChart, points: &[Point]) -> Result<f64> {
    points.iter().try_fold(0.0_f64, |worst, p| {
        let r = curvature_at(chart, p, DEFAULT_STEP)?;
        Ok(worst.max((r.wplus_norm2 - r.wminus_norm2).abs()))
    })
}

/// Uniform samples from the chart's sample box.
pub fn random_points(chart: &MetricChart, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| chart.sample_box.map(|(lo, hi)| rng.random_range(lo..hi))).collect()
}

fn diag(d: [f64; 4]) -> Matrix4<f64> {
    Matrix4::from_diagonal(&d.into())
}

fn upper_half(dim: usize, y: usize) -> impl Fn(&Point) -> bool + Send + Sync {
    let _ = dim;
    move |p: &Point| p[y] > 0.0
}

/// Metric `Σ_i w_i(p) dx_i²` where `w_i = y_{f(i)}^{-2}` or 1.
fn hyperbolic_product(name: &str, heights: [Option<usize>; 4], base: Point) -> MetricChart {
    let weight = move |p: &Point| heights.map(|h| h.map_or(1.0, |k| 1.0 / (p[k] * p[k])));
    let ys: Vec<usize> = heights.iter().flatten().copied().collect();
    let domain = move |p: &Point| ys.iter().all(|&k| p[k] > 0.0);
    let mut sample_box = [(-2.0, 2.0); 4];
    for k in heights.iter().flatten() {
        sample_box[*k] = (0.5, 3.0);
    }
    MetricChart::new(name, move |p: &Point| diag(weight(p)), domain, base)
        .with_derivative(move |p: &Point| {
            std::array::from_fn(|k| {
                let d = heights.map(|h| if h == Some(k) { -2.0 / p[k].powi(3) } else { 0.0 });
                diag(d)
            })
        })
        .with_sample_box(sample_box)
}

/// `(dx²+dy²)/y² + ((x²+y²)dp² + 2x dp dq + dq²)/y` on `y > 0`, coordinates `(x, y, p, q)`.
pub fn f4_chart() -> MetricChart {
    let metric = |p: &Point| {
        let (x, y) = (p[0], p[1]);
        Matrix4::new(
            1.0 / (y * y),
            0.0,
            0.0,
            0.0,
            0.0,
            1.0 / (y * y),
            0.0,
            0.0,
            0.0,
            0.0,
            (x * x + y * y) / y,
            x / y,
            0.0,
            0.0,
            x / y,
            1.0 / y,
        )
    };
    let derivative = |p: &Point| {
        let (x, y) = (p[0], p[1]);
        let dx = Matrix4::new(
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            0.0,
            2.0 * x / y,
            1.0 / y,
            0.0,
            0.0,
            1.0 / y,
            0.0,
        );
        let y3 = -2.0 / (y * y * y);
        let dy = Matrix4::new(
            y3,
            0.0,
            0.0,
            0.0,
            0.0,
            y3,
            0.0,
            0.0,
            0.0,
            0.0,
            1.0 - x * x / (y * y),
            -x / (y * y),
            0.0,
            0.0,
            -x / (y * y),
            -1.0 / (y * y),
        );
        [dx, dy, Matrix4::zeros(), Matrix4::zeros()]
    };
    MetricChart::new("F4", metric, upper_half(4, 1), [0.0, 1.0, 0.0, 0.0])
        .with_derivative(derivative)
        .with_sample_box([(-2.0, 2.0), (0.5, 3.0), (-2.0, 2.0), (-2.0, 2.0)])
}

/// Contact coefficient of the horospherical complex hyperbolic chart.
pub const CH2_TWIST: f64 = 1.0;

/// `dt² + e^{2t}(dx²+dy²) + e^{4t}(dz + c(x dy - y dx))²`, coordinates `(t, x, y, z)`,
/// `c` = [`CH2_TWIST`]. Holomorphic sectional curvature -4, scalar -24; the
/// coordinate orientation is the complex one, so `W-` vanishes.
pub fn ch2_chart() -> MetricChart {
    ch2_chart_with(CH2_TWIST)
}

fn ch2_chart_with(twist: f64) -> MetricChart {
    let theta = move |p: &Point| [0.0, -twist * p[2], twist * p[1], 1.0];
    let metric = move |p: &Point| {
        let (e2, e4) = ((2.0 * p[0]).exp(), (4.0 * p[0]).exp());
        let th = theta(p);
        Matrix4::from_fn(|i, j| {
            let base = match i {
                _ if i != j => 0.0,
                0 => 1.0,
                1 | 2 => e2,
                _ => 0.0,
            };
            base + e4 * th[i] * th[j]
        })
    };
    let derivative = move |p: &Point| {
        let (e2, e4) = ((2.0 * p[0]).exp(), (4.0 * p[0]).exp());
        let th = theta(p);
        let dt = Matrix4::from_fn(|i, j| {
            let base = if i == j && (i == 1 || i == 2) { 2.0 * e2 } else { 0.0 };
            base + 4.0 * e4 * th[i] * th[j]
        });
        let sym = |dth: [f64; 4]| Matrix4::from_fn(|i, j| e4 * (dth[i] * th[j] + th[i] * dth[j]));
        [dt, sym([0.0, 0.0, twist, 0.0]), sym([0.0, -twist, 0.0, 0.0]), Matrix4::zeros()]
    };
    MetricChart::new("CH2", metric, |_: &Point| true, [0.0; 4])
        .with_derivative(derivative)
        .with_sample_box([(-1.0, 1.0); 4])
}

pub fn model_chart(name: &str) -> Result<MetricChart> {
    Ok(match name {
        "F4" => f4_chart(),
        "H4" => hyperbolic_product("H4", [Some(3), Some(3), Some(3), Some(3)], [0.0, 0.0, 0.0, 1.0]),
        "H3xE1" => hyperbolic_product("H3xE1", [Some(2), Some(2), Some(2), None], [0.0, 0.0, 1.0, 0.0]),
        "H2xE2" => hyperbolic_product("H2xE2", [Some(1), Some(1), None, None], [0.0, 1.0, 0.0, 0.0]),
        "H2xH2" => hyperbolic_product("H2xH2", [Some(1), Some(1), Some(3), Some(3)], [0.0, 1.0, 0.0, 1.0]),
        "CH2" => ch2_chart(),
        other => return Err(Error::UnknownChart(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() < tol
    }

    #[test]
    fn f4_base_point_metric_is_identity() {
        let c = f4_chart();
        assert!((c.metric_at(&c.base_point()).unwrap() - Matrix4::identity()).abs().max() < 1e-15);
    }

    #[test]
    fn f4_constants() {
        let r = curvature_at(&f4_chart(), &[0.0, 1.0, 0.0, 0.0], DEFAULT_STEP).unwrap();
        assert!(close(r.scalar, -3.0, 1e-8), "{}", r.scalar);
        assert!(close(r.wplus_norm2, 0.375, 1e-8));
        assert!(close(r.wminus_norm2, 0.375, 1e-8));
        assert!(close(r.traceless_ricci_norm2, 2.25, 1e-8));
        assert!(close(r.chi_density, 0.0, 1e-9));
    }

    #[test]
    fn h4_is_space_form() {
        let c = model_chart("H4").unwrap();
        let p = [0.3, -0.2, 1.1, 1.7];
        let r = curvature_at(&c, &p, DEFAULT_STEP).unwrap();
        assert!(close(r.scalar, -12.0, 1e-7));
        assert!(r.traceless_ricci_norm2 < 1e-12);
        assert!(r.wplus_norm2 < 1e-12 && r.wminus_norm2 < 1e-12);
        let g = r.metric;
        for a in 0..4 {
            for b in 0..4 {
                for cc in 0..4 {
                    for d in 0..4 {
                        let oracle = -(g[a][cc] * g[b][d] - g[a][d] * g[b][cc]);
                        assert!(close(r.riemann[a][b][cc][d], oracle, 1e-7));
                    }
                }
            }
        }
    }

    #[test]
    fn ch2_is_einstein_and_half_conformally_flat() {
        let c = ch2_chart();
        for p in random_points(&c, 4, 3) {
            let r = curvature_at(&c, &p, DEFAULT_STEP).unwrap();
            assert!(r.traceless_ricci_norm2 < 1e-10, "{r:?}");
            assert!(r.wminus_norm2 < 1e-10, "{:?} {}", r.point, r.wminus_norm2);
            assert!(r.delta_minus_density.abs() < 1e-10);
            assert!(r.wplus_norm2 > 0.1);
            let s = r.scalar;
            let expected = sorted_desc([s / 6.0, -s / 12.0, -s / 12.0]);
            for (a, b) in r.wplus_eigenvalues.iter().zip(expected) {
                assert!(close(*a, b, 1e-7));
            }
        }
    }

    #[test]
    fn finite_differences_match_exact_partials() {
        for name in MODEL_NAMES {
            let exact = model_chart(name).unwrap();
            let fd = exact.clone().without_derivative();
            let p = random_points(&exact, 1, 11)[0];
            let a = curvature_at(&exact, &p, DEFAULT_STEP).unwrap();
            let b = curvature_at(&fd, &p, DEFAULT_STEP).unwrap();
            for ((n, x), (_, y)) in a.invariants().into_iter().zip(b.invariants()) {
                assert!(close(x, y, 1e-6), "{name} {n}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn orientation_swaps_blocks() {
        let c = ch2_chart();
        let p = [0.2, 0.4, -0.3, 0.9];
        let a = curvature_at(&c, &p, DEFAULT_STEP).unwrap();
        let b = curvature_at(&c.reversed(), &p, DEFAULT_STEP).unwrap();
        assert_eq!(a.wplus_eigenvalues, b.wminus_eigenvalues);
        assert_eq!(a.wminus_norm2, b.wplus_norm2);
    }

    #[test]
    fn domain_and_step_errors() {
        let c = f4_chart();
        assert!(curvature_at(&c, &[0.0, -1.0, 0.0, 0.0], DEFAULT_STEP).is_err());
        assert!(curvature_at(&c, &[0.0, 1e-5, 0.0, 0.0], DEFAULT_STEP).is_err());
        assert!(curvature_at(&c, &[0.0, 1.0, 0.0, 0.0], 0.0).is_err());
        assert!(curvature_at(&c, &[0.0, 1.0, 0.0, 0.0], 1e-20).is_err());
        assert!(matches!(model_chart("S4"), Err(Error::UnknownChart(_))));
        let bad = MetricChart::new("bad", |_: &Point| diag([1.0, 1.0, 1.0, -1.0]), |_: &Point| true, [0.0; 4]);
        assert!(curvature_at(&bad, &[0.0; 4], DEFAULT_STEP).is_err());
    }
}
