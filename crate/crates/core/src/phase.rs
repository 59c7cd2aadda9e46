//! Classification of `(p, c, τ)` into the three regimes.
//!
//! Regime I is decided by explicit inequalities. Regime II is the image of
//! the admissible set `{0 < a < 1, 0 ≤ κ < κ_cri(a)}` under
//! `(a, κ) ↦ (c, p)`, so membership is decided by inverting that map
//! numerically: a seed grid followed by damped Newton iteration. Whatever is
//! left is Regime III.

use alloc::vec::Vec;

// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::critical::kappa_cri;
use crate::geometry::solve_r;
use crate::params::{regime1_max_p, tangency_branch, triple_point};
use crate::{ConformalParams, Error, ModelParams, Result};

/// Topology of the droplet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    /// Regime I: an ellipse with a disc removed.
    DoublyConnected,
    /// Regime II: the complement of a rational conformal image.
    SimplyConnected,
    /// Regime III: two disjoint simply connected pieces.
    TwoComponents,
}

impl Phase {
    /// Roman-numeral label `"I"`, `"II"` or `"III"`.
    pub fn label(self) -> &'static str {
        match self {
            Phase::DoublyConnected => "I",
            Phase::SimplyConnected => "II",
            Phase::TwoComponents => "III",
        }
    }
}

/// Critical manifolds separating the regimes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CriticalManifold {
    /// The disc touches the ellipse at its rightmost point.
    RegimeIAndII,
    /// The disc touches the ellipse at a conjugate pair of points.
    RegimeIAndIII,
    /// `κ = κ_cri(a)`.
    RegimeIIAndIII,
    /// The triple point.
    TriplePoint,
}

impl CriticalManifold {
    /// Short tag such as `"I_II"`.
    pub fn label(self) -> &'static str {
        match self {
            CriticalManifold::RegimeIAndII => "I_II",
            CriticalManifold::RegimeIAndIII => "I_III",
            CriticalManifold::RegimeIIAndIII => "II_III",
            CriticalManifold::TriplePoint => "Triple",
        }
    }
}

/// Proximity to a critical manifold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFlag {
    /// Which manifold.
    pub manifold: CriticalManifold,
    /// Distance estimate, in `p` for the Regime I edges, in `κ` for the
    /// Regime II/III edge and Euclidean in `(p, c)` for the triple point.
    pub distance: f64,
}

/// A regime tag with the boundary flags that were within tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct Regime {
    /// The topology.
    pub phase: Phase,
    /// Nearby critical manifolds.
    pub flags: Vec<BoundaryFlag>,
}

/// Outcome of a numerical inversion of `(a, κ) ↦ (c, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionReport {
    /// The admissible solution, if any.
    pub solution: Option<ConformalParams>,
    /// Best Newton end point, admissible or not.
    pub a: f64,
    /// κ at the best end point.
    pub kappa: f64,
    /// `κ_cri(a)` at the best end point.
    pub kappa_cri: f64,
    /// Scaled max-norm residual at the best end point.
    pub residual: f64,
    /// Number of numerically distinct admissible solutions found. More than
    /// one would contradict the expected uniqueness and is worth reporting.
    pub distinct_solutions: usize,
}

/// Result of [`classify`].
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    /// The regime.
    pub regime: Regime,
    /// Conformal map parameters in Regime II.
    pub conformal: Option<ConformalParams>,
    /// Inversion diagnostics, when an inversion was attempted.
    pub inversion: Option<InversionReport>,
}

/// Knobs for the Regime II inversion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionOptions {
    /// Seed grid size along `a`.
    pub grid_a: usize,
    /// Seed grid size along `κ/κ_cri(a)`.
    pub grid_kappa: usize,
    /// Newton starts taken from the best-scoring seeds.
    pub starts: usize,
    /// Convergence tolerance on the scaled residual.
    pub tol: f64,
    /// Newton iteration cap per start.
    pub max_newton: usize,
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self {
            grid_a: 64,
            grid_kappa: 64,
            starts: 4,
            tol: 1e-10,
            max_newton: 100,
        }
    }
}

/// Knobs for [`Classifier`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    /// Distance below which a boundary flag is raised.
    pub boundary_tol: f64,
    /// Inversion settings.
    pub inversion: InversionOptions,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        Self {
            boundary_tol: 1e-9,
            inversion: InversionOptions::default(),
        }
    }
}

/// The closed-form map `(a, κ) ↦ (c, p)`.
///
/// Fails when `(1−a²)²(1−τ²+2τκ) − κ² ≤ 0`.
pub fn forward_map(a: f64, kappa: f64, tau: f64) -> Result<(f64, f64)> {
    let a2 = a * a;
    let b = 1.0 - a2;
    let d = b * b * (1.0 - tau * tau + 2.0 * tau * kappa) - kappa * kappa;
    if !(d > 0.0) || !(a > 0.0 && a < 1.0) {
        return Err(Error::OutOfDomain(
            "forward map denominator must be positive",
        ));
    }
    let c = kappa / a2 * (b * b * (1.0 - tau * a2) + a2 * kappa) / d;
    let p = ((1.0 + tau) / (1.0 - tau)).sqrt()
        * ((1.0 - tau) * b * (1.0 + tau * a2) - (1.0 - tau * a2) * kappa)
        / (a * d.sqrt());
    Ok((c, p))
}

/// True iff `(p, c, τ)` satisfies the Regime I inequalities (closed on the Regime I side).
pub fn in_regime1(params: &ModelParams) -> bool {
    match regime1_max_p(params.c(), params.tau()) {
        Some(max) => params.p() <= max,
        None => false,
    }
}

/// Geometric test that the disc `D` lies in the ellipse `E`.
///
/// A disc no wider than the curvature radius `B²/A` at the vertex fits iff
/// it fits at the rightmost point. A wider disc first touches at a conjugate
/// pair, found as a double root of the quadratic obtained by eliminating `y`
/// between the two boundary equations.
pub fn disc_inside_ellipse(params: &ModelParams) -> bool {
    let (p, c, tau) = (params.p(), params.c(), params.tau());
    let (big_a, big_b) = params.ellipse_axes();
    let rho = params.disc_radius();
    if rho <= big_b * big_b / big_a {
        return p + rho <= big_a;
    }
    // 4τx² − 2(1+τ)²px + (1+τ)²(p² + (1−τ)(1−τ−2cτ)) has no real root
    let t1 = (1.0 + tau) * (1.0 + tau);
    let qa = 4.0 * tau;
    let qb = -2.0 * t1 * p;
    let qc = t1 * (p * p + (1.0 - tau) * (1.0 - tau - 2.0 * c * tau));
    let disc = qb * qb - 4.0 * qa * qc;
    disc <= 0.0 && p - rho >= -big_a
}

/// Admissible solution of `forward_map(a, κ) = (c, p)` found with default options.
pub fn invert_regime2(params: &ModelParams) -> Option<ConformalParams> {
    Classifier::new(params.tau())
        .ok()?
        .invert(params.p(), params.c())
        .solution
}

/// The `τ = 0` inversion in closed form: `a²` is the root in
/// `(0, min(1, 1/p²))` of `x³ − ((p² + 4c + 2)/(2p²))x² + 1/(2p⁴)`, and
/// `R = (1+p²a²)/(2pa)`, `κ = (1−a²)(1−p²a²)/(1+p²a²)`.
pub fn tau0_inversion(p: f64, c: f64) -> Result<ConformalParams> {
    if !(c > 0.0) || !(p > (1.0 + c).sqrt() - c.sqrt()) {
        return Err(Error::Inconsistent("not a tau = 0 Regime II point"));
    }
    let p2 = p * p;
    let beta = (p2 + 4.0 * c + 2.0) / (2.0 * p2);
    let gamma = 1.0 / (2.0 * p2 * p2);
    let g = |x: f64| (x - beta) * x * x + gamma;
    let (mut lo, mut hi) = (0.0, (1.0 / p2).min(1.0));
    if !(g(hi) < 0.0) {
        return Err(Error::Bracket("tau = 0 cubic"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    let a = x.sqrt();
    let pa2 = p2 * x;
    ConformalParams::new(
        (1.0 + pa2) / (2.0 * p * a),
        a,
        (1.0 - x) * (1.0 - pa2) / (1.0 + pa2),
    )
}

/// The pure-ellipse map for `c = 0`, `p > 1 + τ`: `κ = 0`, `R = 1` and `1/a + τa = p`.
fn charge_free_map(p: f64, tau: f64) -> Result<ConformalParams> {
    let a = if tau == 0.0 {
        1.0 / p
    } else {
        (p - (p * p - 4.0 * tau).sqrt()) / (2.0 * tau)
    };
    ConformalParams::new(1.0, a, 0.0)
}

#[derive(Debug, Clone, Copy)]
struct Seed {
    a: f64,
    kappa: f64,
    c: f64,
    p: f64,
}

/// A reusable classifier for one value of `τ`. Caches `κ_cri` along the seed
/// grid and the forward images of the seeds.
#[derive(Debug, Clone)]
pub struct Classifier {
    tau: f64,
    options: ClassifyOptions,
    seeds: Vec<Seed>,
    triple: Option<(f64, f64)>,
}

impl Classifier {
    /// Classifier with default options.
    pub fn new(tau: f64) -> Result<Self> {
        Self::with_options(tau, ClassifyOptions::default())
    }

    /// Classifier with explicit options.
    pub fn with_options(tau: f64, options: ClassifyOptions) -> Result<Self> {
        if !(0.0..1.0).contains(&tau) {
            return Err(Error::InvalidParameter {
                name: "tau",
                value: tau,
            });
        }
        let inv = options.inversion;
        let mut seeds = Vec::with_capacity(inv.grid_a * inv.grid_kappa);
        for i in 0..inv.grid_a {
            let a = (i as f64 + 0.5) / inv.grid_a as f64;
            let kc = kappa_cri(a, tau)?;
            for j in 0..inv.grid_kappa {
                let kappa = kc * j as f64 / inv.grid_kappa as f64;
                if let Ok((c, p)) = forward_map(a, kappa, tau) {
                    seeds.push(Seed { a, kappa, c, p });
                }
            }
        }
        let triple = if tau > 0.0 {
            triple_point(tau).ok()
        } else {
            None
        };
        Ok(Self {
            tau,
            options,
            seeds,
            triple,
        })
    }

    /// The `τ` this classifier was built for.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Active options.
    pub fn options(&self) -> &ClassifyOptions {
        &self.options
    }

    /// Classifies `(p, c)` at this classifier's `τ`.
    pub fn classify_pc(&self, p: f64, c: f64) -> Result<Classification> {
        let params = ModelParams::new(p, c, self.tau)?;
        Ok(self.classify_params(&params))
    }

    /// Classifies `params`, whose `τ` must match [`tau`](Self::tau).
    pub fn classify(&self, params: &ModelParams) -> Result<Classification> {
        if params.tau() != self.tau {
            return Err(Error::Inconsistent("classifier built for a different tau"));
        }
        Ok(self.classify_params(params))
    }

    fn classify_params(&self, params: &ModelParams) -> Classification {
        let (p, c, tau) = (params.p(), params.c(), params.tau());
        let mut flags = self.regime1_flags(p, c);
        if in_regime1(params) {
            return Classification {
                regime: Regime {
                    phase: Phase::DoublyConnected,
                    flags,
                },
                conformal: None,
                inversion: None,
            };
        }
        let simply = |cp: ConformalParams, flags| Classification {
            regime: Regime {
                phase: Phase::SimplyConnected,
                flags,
            },
            conformal: Some(cp),
            inversion: None,
        };
        if c == 0.0 {
            if let Ok(cp) = charge_free_map(p, tau) {
                return simply(cp, flags);
            }
        }
        if tau == 0.0 {
            if let Ok(cp) = tau0_inversion(p, c) {
                return simply(cp, flags);
            }
        }
        let report = self.invert(p, c);
        if report.residual <= self.options.inversion.tol {
            let gap = (report.kappa - report.kappa_cri).abs();
            if gap <= self.options.boundary_tol {
                flags.push(BoundaryFlag {
                    manifold: CriticalManifold::RegimeIIAndIII,
                    distance: gap,
                });
            }
        }
        let phase = if report.solution.is_some() {
            Phase::SimplyConnected
        } else {
            Phase::TwoComponents
        };
        Classification {
            regime: Regime { phase, flags },
            conformal: report.solution,
            inversion: Some(report),
        }
    }

    fn regime1_flags(&self, p: f64, c: f64) -> Vec<BoundaryFlag> {
        let tol = self.options.boundary_tol;
        let tau = self.tau;
        let mut flags = Vec::new();
        let c_tri = self.triple.map(|t| t.0).unwrap_or(f64::INFINITY);
        if c <= c_tri {
            let d = (p - tangency_branch(c, tau)).abs();
            if d <= tol {
                flags.push(BoundaryFlag {
                    manifold: CriticalManifold::RegimeIAndII,
                    distance: d,
                });
            }
        }
        if c >= c_tri {
            if let Some(max) = regime1_max_p(c, tau) {
                let d = (p - max).abs();
                if d <= tol {
                    flags.push(BoundaryFlag {
                        manifold: CriticalManifold::RegimeIAndIII,
                        distance: d,
                    });
                }
            }
        }
        if let Some((ct, pt)) = self.triple {
            let d = (p - pt).hypot(c - ct);
            if d <= tol {
                flags.push(BoundaryFlag {
                    manifold: CriticalManifold::TriplePoint,
                    distance: d,
                });
            }
        }
        flags
    }

    /// Inverts `(a, κ) ↦ (c, p)` by multi-start damped Newton from the best seeds.
    pub fn invert(&self, p: f64, c: f64) -> InversionReport {
        let opts = self.options.inversion;
        let mut best: [(f64, usize); 8] = [(f64::INFINITY, usize::MAX); 8];
        let starts = opts.starts.clamp(1, best.len());
        for (idx, s) in self.seeds.iter().enumerate() {
            let score = ((s.c - c) / (1.0 + c)).abs() + ((s.p - p) / (1.0 + p)).abs();
            if score < best[starts - 1].0 {
                let mut k = starts - 1;
                while k > 0 && best[k - 1].0 > score {
                    best[k] = best[k - 1];
                    k -= 1;
                }
                best[k] = (score, idx);
            }
        }
        let mut report = InversionReport {
            solution: None,
            a: f64::NAN,
            kappa: f64::NAN,
            kappa_cri: f64::NAN,
            residual: f64::INFINITY,
            distinct_solutions: 0,
        };
        let mut found: Vec<(f64, f64)> = Vec::new();
        let mut best_admissible = f64::INFINITY;
        for &(_, idx) in best.iter().take(starts) {
            let Some(seed) = self.seeds.get(idx) else {
                continue;
            };
            let (a, kappa, res) = newton(self.tau, p, c, seed.a, seed.kappa, &opts);
            if !res.is_finite() {
                continue;
            }
            let kc = kappa_cri(a, self.tau).unwrap_or(f64::NAN);
            let admissible = res <= opts.tol && kappa >= 0.0 && kappa < kc;
            if admissible {
                if !found
                    .iter()
                    .any(|&(fa, fk)| (fa - a).abs() < 1e-7 && (fk - kappa).abs() < 1e-7)
                {
                    found.push((a, kappa));
                }
                if res < best_admissible {
                    best_admissible = res;
                    report.a = a;
                    report.kappa = kappa;
                    report.kappa_cri = kc;
                    report.residual = res;
                }
            } else if best_admissible.is_infinite() && res < report.residual {
                report.a = a;
                report.kappa = kappa;
                report.kappa_cri = kc;
                report.residual = res;
            }
        }
        report.distinct_solutions = found.len();
        if best_admissible.is_finite() {
            report.solution = solve_r(report.a, report.kappa, self.tau)
                .and_then(|r| ConformalParams::new(r, report.a, report.kappa))
                .ok();
        }
        report
    }
}

/// Scaled residual of `forward_map(a, κ) − (c, p)`, or `None` off the domain.
fn residual(tau: f64, p: f64, c: f64, a: f64, kappa: f64) -> Option<(f64, f64)> {
    let (fc, fp) = forward_map(a, kappa, tau).ok()?;
    Some(((fc - c) / (1.0 + c), (fp - p) / (1.0 + p)))
}

fn merit(r: (f64, f64)) -> f64 {
    r.0.abs().max(r.1.abs())
}

const POLISH_STEPS: usize = 2;

/// Damped Newton with a central-difference Jacobian. Returns the end point
/// and its scaled residual.
fn newton(tau: f64, p: f64, c: f64, a0: f64, k0: f64, opts: &InversionOptions) -> (f64, f64, f64) {
    let (mut a, mut k) = (a0, k0);
    let Some(mut r) = residual(tau, p, c, a, k) else {
        return (a, k, f64::INFINITY);
    };
    // a few steps past the tolerance bring the residual to roundoff level,
    // which the closed-form energies need to agree with each other
    let mut polish = 0;
    for _ in 0..opts.max_newton {
        let m = merit(r);
        if m <= opts.tol {
            if polish == POLISH_STEPS || m == 0.0 {
                break;
            }
            polish += 1;
        }
        let ha = 1e-7 * a.min(1.0 - a);
        let hk = 1e-7 * k.abs().max(1e-4 * (1.0 - a * a));
        let (Some(ra_p), Some(ra_m), Some(rk_p), Some(rk_m)) = (
            residual(tau, p, c, a + ha, k),
            residual(tau, p, c, a - ha, k),
            residual(tau, p, c, a, k + hk),
            residual(tau, p, c, a, k - hk),
        ) else {
            break;
        };
        let j11 = (ra_p.0 - ra_m.0) / (2.0 * ha);
        let j21 = (ra_p.1 - ra_m.1) / (2.0 * ha);
        let j12 = (rk_p.0 - rk_m.0) / (2.0 * hk);
        let j22 = (rk_p.1 - rk_m.1) / (2.0 * hk);
        let det = j11 * j22 - j12 * j21;
        if !(det.abs() > 0.0) || !det.is_finite() {
            break;
        }
        let da = -(j22 * r.0 - j12 * r.1) / det;
        let dk = -(-j21 * r.0 + j11 * r.1) / det;
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let na = a + lambda * da;
            let nk = k + lambda * dk;
            if na > 0.0 && na < 1.0 {
                if let Some(nr) = residual(tau, p, c, na, nk) {
                    if merit(nr) < m {
                        a = na;
                        k = nk;
                        r = nr;
                        accepted = true;
                        break;
                    }
                }
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (a, k, merit(r))
}

/// Classifies one parameter triple with default options.
pub fn classify(params: &ModelParams) -> Classification {
    match Classifier::new(params.tau()) {
        Ok(cl) => cl.classify_params(params),
        // tau was validated by ModelParams; a failing classifier means a
        // broken invariant, reported as the complement regime
        Err(_) => Classification {
            regime: Regime {
                phase: Phase::TwoComponents,
                flags: Vec::new(),
            },
            conformal: None,
            inversion: None,
        },
    }
}

/// A row-major grid of phases: index `ic * p_values.len() + ip`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    /// The `τ` of the scan.
    pub tau: f64,
    /// Column coordinates.
    pub p_values: Vec<f64>,
    /// Row coordinates.
    pub c_values: Vec<f64>,
    /// Phases, row-major by `c`.
    pub phases: Vec<Phase>,
}

impl PhaseGrid {
    /// Phase at row `ic`, column `ip`.
    pub fn get(&self, ic: usize, ip: usize) -> Phase {
        self.phases[ic * self.p_values.len() + ip]
    }

    /// Number of cells with the given phase.
    pub fn count(&self, phase: Phase) -> usize {
        self.phases.iter().filter(|&&ph| ph == phase).count()
    }
}

/// `n` evenly spaced values from `lo` to `hi`, endpoints included.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Sequential phase-diagram scan over `p_range × c_range` with
/// `resolution = (columns, rows)` grid nodes, endpoints included.
pub fn phase_diagram_scan(
    tau: f64,
    p_range: (f64, f64),
    c_range: (f64, f64),
    resolution: (usize, usize),
) -> Result<PhaseGrid> {
    let (np, nc) = resolution;
    if np == 0 || nc == 0 {
        return Err(Error::InvalidParameter {
            name: "resolution",
            value: 0.0,
        });
    }
    let cl = Classifier::new(tau)?;
    let p_values = linspace(p_range.0, p_range.1, np);
    let c_values = linspace(c_range.0, c_range.1, nc);
    let mut phases = Vec::with_capacity(np * nc);
    for &c in &c_values {
        for &p in &p_values {
            phases.push(cl.classify_pc(p, c)?.regime.phase);
        }
    }
    Ok(PhaseGrid {
        tau,
        p_values,
        c_values,
        phases,
    })
}
