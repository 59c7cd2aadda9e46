//! Fekete points: minimisers of the discrete Coulomb-gas Hamiltonians.
//!
//! Complex ensemble:
//! `H = Σ_{j<k} log 1/|z_j − z_k|² + N Σ_j Q(z_j)`.
//!
//! Symplectic ensemble, storing only upper half-plane points:
//! `H = Σ_{j<k} log 1/|z_j − z_k|² + Σ_{j≤k} log 1/|z_j − z̄_k|² + 2N Σ_j Q(z_j)`.
//!
//! Gradients are returned as complex numbers `∂_x H + i ∂_y H`.

use alloc::vec;
use alloc::vec::Vec;

// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::energy::potential_q;
use crate::geometry::{BoundaryComponent, Droplet};
use crate::{Complex, Error, ModelParams, Result};

/// Pairs closer than this are treated as collisions.
pub const COLLISION_GUARD: f64 = 1e-9;
const ARMIJO_C1: f64 = 1e-4;

/// Which Hamiltonian to minimise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ensemble {
    /// Complex eigenvalues.
    Complex,
    /// Quaternionic eigenvalues, stored as their upper half-plane representatives.
    Symplectic,
}

/// Step-size rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepPolicy {
    /// A constant step, only shortened to avoid collisions.
    Fixed(f64),
    /// Armijo backtracking with halving.
    Backtracking,
}

/// Minimisation setup.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeketeConfig {
    /// Number of stored points.
    pub n_points: usize,
    /// Hamiltonian.
    pub ensemble: Ensemble,
    /// Potential parameters.
    pub params: ModelParams,
    /// Seed of the initial configuration.
    pub seed: u64,
    /// Iteration cap.
    pub max_iters: usize,
    /// Stop once [`FeketeResult::grad_norm`] falls below this.
    pub grad_tol: f64,
    /// Step-size rule.
    pub step_policy: StepPolicy,
    /// L-BFGS memory; 0 gives plain gradient descent.
    pub memory: usize,
}

impl FeketeConfig {
    /// Defaults: seed 0, 20 000 iterations, `grad_tol = 1e-6`, backtracking
    /// gradient descent with no quasi-Newton memory.
    pub fn new(n_points: usize, ensemble: Ensemble, params: ModelParams) -> Self {
        Self {
            n_points,
            ensemble,
            params,
            seed: 0,
            max_iters: 20_000,
            grad_tol: 1e-6,
            step_policy: StepPolicy::Backtracking,
            memory: 0,
        }
    }

    /// Checks `n_points ≥ 2` and `grad_tol > 0`.
    pub fn validate(&self) -> Result<()> {
        if self.n_points < 2 {
            return Err(Error::InvalidParameter {
                name: "n_points",
                value: self.n_points as f64,
            });
        }
        if !(self.grad_tol > 0.0) {
            return Err(Error::InvalidParameter {
                name: "grad_tol",
                value: self.grad_tol,
            });
        }
        if let StepPolicy::Fixed(s) = self.step_policy {
            if !(s > 0.0) {
                return Err(Error::InvalidParameter {
                    name: "step",
                    value: s,
                });
            }
        }
        Ok(())
    }

    fn weight(&self) -> f64 {
        let n = self.n_points as f64;
        match self.ensemble {
            Ensemble::Complex => n,
            Ensemble::Symplectic => 2.0 * n,
        }
    }
}

/// Outcome of [`minimize`].
#[derive(Debug, Clone, PartialEq)]
pub struct FeketeResult {
    /// Final configuration.
    pub points: Vec<Complex>,
    /// Hamiltonian at the final configuration.
    pub final_energy: f64,
    /// `max_j |∇_j H| / N`, the largest per-point force on the scale of `Q`.
    pub grad_norm: f64,
    /// Accepted iterations.
    pub iterations: usize,
    /// Whether `grad_norm ≤ grad_tol` was reached.
    pub converged: bool,
}

/// The Hamiltonian; `+∞` for collisions or, in the symplectic case, points
/// on or below the real axis.
pub fn hamiltonian(points: &[Complex], config: &FeketeConfig) -> f64 {
    let w = config.weight();
    let sym = config.ensemble == Ensemble::Symplectic;
    let mut h = 0.0;
    for (j, &zj) in points.iter().enumerate() {
        let q = potential_q(zj, &config.params);
        if !q.is_finite() {
            return f64::INFINITY;
        }
        h += w * q;
        if sym {
            if zj.im <= COLLISION_GUARD {
                return f64::INFINITY;
            }
            h -= (4.0 * zj.im * zj.im).ln();
        }
        for &zk in &points[j + 1..] {
            let d2 = (zj - zk).norm_sqr();
            if d2 < COLLISION_GUARD * COLLISION_GUARD {
                return f64::INFINITY;
            }
            h -= d2.ln();
            if sym {
                h -= (zj - zk.conj()).norm_sqr().ln();
            }
        }
    }
    h
}

/// `∇_x Q + i ∇_y Q`.
fn grad_q(z: Complex, params: &ModelParams) -> Complex {
    let tau = params.tau();
    let mut g = Complex::new(2.0 * z.re / (1.0 + tau), 2.0 * z.im / (1.0 - tau));
    if params.c() > 0.0 {
        let d = z - params.p();
        g -= 2.0 * params.c() * d / d.norm_sqr();
    }
    g
}

/// Analytic gradient of [`hamiltonian`], one complex entry per point.
pub fn gradient(points: &[Complex], config: &FeketeConfig) -> Result<Vec<Complex>> {
    let w = config.weight();
    let sym = config.ensemble == Ensemble::Symplectic;
    let n = points.len();
    let mut g = vec![Complex::new(0.0, 0.0); n];
    for j in 0..n {
        let zj = points[j];
        if params_pole(zj, &config.params) || (sym && zj.im <= COLLISION_GUARD) {
            return Err(Error::Pole);
        }
        g[j] += w * grad_q(zj, &config.params);
        if sym {
            // d/dy of −log(4y²)
            g[j] += Complex::new(0.0, -2.0 / zj.im);
        }
        for k in j + 1..n {
            let d = zj - points[k];
            let d2 = d.norm_sqr();
            if d2 < COLLISION_GUARD * COLLISION_GUARD {
                return Err(Error::Pole);
            }
            let f = 2.0 * d / d2;
            g[j] -= f;
            g[k] += f;
            if sym {
                let m = zj - points[k].conj();
                let fm = 2.0 * m / m.norm_sqr();
                g[j] -= fm;
                g[k] += fm.conj();
            }
        }
    }
    Ok(g)
}

fn params_pole(z: Complex, params: &ModelParams) -> bool {
    params.c() > 0.0 && (z - params.p()).norm() == 0.0
}

/// Largest componentwise discrepancy between [`gradient`] and central
/// differences of [`hamiltonian`] with step `h`, relative to `max(|g_j|, 1)`.
pub fn gradient_check(points: &[Complex], config: &FeketeConfig, h: f64) -> Result<f64> {
    let g = gradient(points, config)?;
    let mut work = points.to_vec();
    let mut worst = 0.0f64;
    for j in 0..points.len() {
        let mut fd = [0.0; 2];
        for (axis, slot) in fd.iter_mut().enumerate() {
            let e = if axis == 0 {
                Complex::new(h, 0.0)
            } else {
                Complex::new(0.0, h)
            };
            work[j] = points[j] + e;
            let hp = hamiltonian(&work, config);
            work[j] = points[j] - e;
            let hm = hamiltonian(&work, config);
            work[j] = points[j];
            *slot = (hp - hm) / (2.0 * h);
        }
        let scale = g[j].norm().max(1.0);
        worst = worst
            .max((fd[0] - g[j].re).abs() / scale)
            .max((fd[1] - g[j].im).abs() / scale);
    }
    Ok(worst)
}

/// Seeded uniform sample of `E` (upper half only for the symplectic ensemble).
pub fn initial_points(config: &FeketeConfig) -> Vec<Complex> {
    let (ax, bx) = config.params.ellipse_axes();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::with_capacity(config.n_points);
    while out.len() < config.n_points {
        let x: f64 = rng.random::<f64>() * 2.0 - 1.0;
        let y: f64 = rng.random::<f64>() * 2.0 - 1.0;
        if x * x + y * y >= 1.0 {
            continue;
        }
        let mut z = Complex::new(ax * x, bx * y);
        if config.ensemble == Ensemble::Symplectic {
            if y == 0.0 {
                continue;
            }
            z.im = z.im.abs();
        }
        if params_pole(z, &config.params) {
            continue;
        }
        out.push(z);
    }
    out
}

fn max_force(g: &[Complex], n: usize) -> f64 {
    g.iter().fold(0.0f64, |m, v| m.max(v.norm())) / n as f64
}

fn dot(a: &[Complex], b: &[Complex]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.re * y.re + x.im * y.im)
        .sum()
}

/// Minimises from [`initial_points`].
pub fn minimize(config: &FeketeConfig) -> Result<FeketeResult> {
    config.validate()?;
    minimize_from(initial_points(config), config)
}

/// Minimises from a given configuration. Accepted steps never raise the
/// Hamiltonian; non-convergence is reported through
/// [`FeketeResult::converged`].
pub fn minimize_from(mut points: Vec<Complex>, config: &FeketeConfig) -> Result<FeketeResult> {
    config.validate()?;
    if points.len() != config.n_points {
        return Err(Error::Inconsistent("point count differs from n_points"));
    }
    let n = points.len();
    let mut energy = hamiltonian(&points, config);
    if !energy.is_finite() {
        return Err(Error::Pole);
    }
    let mut g = gradient(&points, config)?;
    let mut history: Vec<(Vec<Complex>, Vec<Complex>, f64)> = Vec::new();
    let mut step = 0.1 / ((n as f64).sqrt() * max_force(&g, n).max(1e-300) * n as f64);
    let mut iterations = 0;
    let mut trial = vec![Complex::new(0.0, 0.0); n];
    while iterations < config.max_iters {
        if max_force(&g, n) <= config.grad_tol {
            break;
        }
        let mut dir = lbfgs_direction(&g, &history);
        let mut slope = dot(&g, &dir);
        if !(slope < 0.0) {
            history.clear();
            dir = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }
        let quasi = !history.is_empty();
        let mut alpha = match config.step_policy {
            StepPolicy::Fixed(s) => s,
            StepPolicy::Backtracking if quasi => 1.0,
            StepPolicy::Backtracking => step,
        };
        let mut accepted = None;
        for _ in 0..60 {
            for ((t, p), d) in trial.iter_mut().zip(&points).zip(&dir) {
                *t = p + alpha * d;
            }
            let e = hamiltonian(&trial, config);
            let ok = match config.step_policy {
                StepPolicy::Fixed(_) => e.is_finite(),
                StepPolicy::Backtracking => e <= energy + ARMIJO_C1 * alpha * slope,
            };
            if ok {
                accepted = Some(e);
                break;
            }
            alpha *= 0.5;
        }
        let Some(e_new) = accepted else { break };
        let g_new = gradient(&trial, config)?;
        if config.memory > 0 {
            let s: Vec<Complex> = trial.iter().zip(&points).map(|(a, b)| a - b).collect();
            let y: Vec<Complex> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
            let sy = dot(&s, &y);
            if sy > 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
                if history.len() == config.memory {
                    history.remove(0);
                }
                history.push((s, y, 1.0 / sy));
            }
        }
        core::mem::swap(&mut points, &mut trial);
        energy = e_new;
        g = g_new;
        if !quasi {
            step = alpha * 2.0;
        }
        iterations += 1;
    }
    let grad_norm = max_force(&g, n);
    Ok(FeketeResult {
        points,
        final_energy: energy,
        grad_norm,
        iterations,
        converged: grad_norm <= config.grad_tol,
    })
}

/// Two-loop recursion; plain steepest descent when the history is empty.
fn lbfgs_direction(g: &[Complex], history: &[(Vec<Complex>, Vec<Complex>, f64)]) -> Vec<Complex> {
    let mut q: Vec<Complex> = g.to_vec();
    let mut alphas = Vec::with_capacity(history.len());
    for (s, y, rho) in history.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    if let Some((s, y, _)) = history.last() {
        let gamma = dot(s, y) / dot(y, y);
        for qi in q.iter_mut() {
            *qi *= gamma;
        }
    }
    for ((s, y, rho), a) in history.iter().zip(alphas.iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter().map(|v| -v).collect()
}

/// Agreement between a point cloud and an analytic droplet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchReport {
    /// Fraction of points inside the droplet dilated by the margin.
    pub inside_fraction: f64,
    /// Points inside the hole shrunk by the margin (Regime I only).
    pub hole_violations: usize,
    /// Hausdorff distance between the convex hull of the points and the outer boundary.
    pub hull_distance: f64,
}

/// Compares `points` with `droplet` at the given margin.
pub fn droplet_match(points: &[Complex], droplet: &Droplet, margin: f64) -> MatchReport {
    let curves = droplet.boundaries(1024);
    let polylines: Vec<Vec<Complex>> = curves.iter().map(|c| c.points()).collect();
    let inside = points
        .iter()
        .filter(|&&z| {
            droplet.contains(z)
                || polylines
                    .iter()
                    .any(|poly| distance_to_polyline(z, poly) <= margin)
        })
        .count();
    let hole_violations = match droplet {
        Droplet::DoublyConnected { disc, .. } => points
            .iter()
            .filter(|&&z| (z - disc.center).norm() < disc.radius - margin)
            .count(),
        Droplet::SimplyConnected { .. } => 0,
    };
    let outer = curves
        .iter()
        .zip(&polylines)
        .find(|(c, _)| c.component == BoundaryComponent::Outer)
        .map(|(_, p)| p.as_slice())
        .unwrap_or(&[]);
    let hull = convex_hull(points);
    let hull_distance = hausdorff(&hull, outer);
    MatchReport {
        inside_fraction: if points.is_empty() {
            0.0
        } else {
            inside as f64 / points.len() as f64
        },
        hole_violations,
        hull_distance,
    }
}

/// Distance from `z` to the closed polyline.
pub fn distance_to_polyline(z: Complex, poly: &[Complex]) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| distance_to_segment(z, poly[i], poly[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

fn distance_to_segment(z: Complex, a: Complex, b: Complex) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + t * ab)).norm()
}

fn hausdorff(a: &[Complex], b: &[Complex]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return f64::INFINITY;
    }
    let one = a
        .iter()
        .map(|&z| distance_to_polyline(z, b))
        .fold(0.0, f64::max);
    let two = b
        .iter()
        .map(|&z| distance_to_polyline(z, a))
        .fold(0.0, f64::max);
    one.max(two)
}

/// Convex hull, counter-clockwise, by the monotone chain.
pub fn convex_hull(points: &[Complex]) -> Vec<Complex> {
    let mut pts: Vec<Complex> = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let cross =
        |o: Complex, a: Complex, b: Complex| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    let mut hull: Vec<Complex> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: alloc::boxed::Box<dyn Iterator<Item = &Complex>> = if pass == 0 {
            alloc::boxed::Box::new(pts.iter())
        } else {
            alloc::boxed::Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2
                && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
            {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Sizes of the connected components of the graph linking points at most
/// `radius` apart, largest first.
pub fn cluster_sizes(points: &[Complex], radius: f64) -> Vec<usize> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let r2 = radius * radius;
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm_sqr() <= r2 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut sizes = vec![0usize; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        sizes[r] += 1;
    }
    let mut out: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Number of clusters holding at least `min_fraction` of the points.
pub fn significant_components(points: &[Complex], radius: f64, min_fraction: f64) -> usize {
    let min = (min_fraction * points.len() as f64).ceil() as usize;
    cluster_sizes(points, radius)
        .into_iter()
        .filter(|&s| s >= min.max(1))
        .count()
}
