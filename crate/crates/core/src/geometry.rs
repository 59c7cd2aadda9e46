//! Droplet geometry: the ellipse-minus-disc set of Regime I and the rational
//! conformal map of Regime II.

use alloc::vec::Vec;
use core::f64::consts::PI;

// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::cubic::cubic_roots;
use crate::phase::{Classification, Phase};
use crate::quadrature::GaussLegendre;
use crate::{Complex, ConformalParams, Error, ModelParams, Result};

/// Default number of boundary samples.
pub const DEFAULT_SAMPLES: usize = 1024;
/// Maximum number of adaptive refinement passes over a sampled boundary.
pub const MAX_REFINEMENTS: usize = 4;
/// Roots of the inverse cubic with modulus at least `1 − ROOT_SLACK` count as exterior.
const ROOT_SLACK: f64 = 1e-12;

/// The ellipse `E` centred at the origin with horizontal major axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseSpec {
    /// Horizontal semi-axis `(1+τ)√(1+c)`.
    pub semi_major: f64,
    /// Vertical semi-axis `(1−τ)√(1+c)`.
    pub semi_minor: f64,
}

impl EllipseSpec {
    /// True for points in the closed ellipse.
    pub fn contains(&self, zeta: Complex) -> bool {
        let x = zeta.re / self.semi_major;
        let y = zeta.im / self.semi_minor;
        x * x + y * y <= 1.0
    }

    /// Boundary point at parameter angle `θ`.
    pub fn point(&self, theta: f64) -> Complex {
        Complex::new(self.semi_major * theta.cos(), self.semi_minor * theta.sin())
    }

    /// Schwarz function of the exterior, `τζ + 2AB/(ζ + √(ζ² − (A² − B²)))`.
    ///
    /// The square root branch behaves like `ζ` at infinity; its cut is the
    /// focal segment, which lies inside the ellipse.
    pub fn schwarz(&self, zeta: Complex) -> Complex {
        let (a, b) = (self.semi_major, self.semi_minor);
        let tau = (a - b) / (a + b);
        let focal = a * a - b * b;
        let root = if zeta.norm() == 0.0 {
            Complex::new(0.0, focal.sqrt())
        } else {
            zeta * (Complex::new(1.0, 0.0) - focal / (zeta * zeta)).sqrt()
        };
        tau * zeta + 2.0 * a * b / (zeta + root)
    }
}

/// The excised disc `D`, centred on the real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscSpec {
    /// Centre, the point-charge location `p`.
    pub center: f64,
    /// Radius `√(c(1−τ²))`.
    pub radius: f64,
}

impl DiscSpec {
    /// True for points of the open disc.
    pub fn contains_open(&self, zeta: Complex) -> bool {
        (zeta - self.center).norm() < self.radius
    }

    /// Boundary point at angle `θ`.
    pub fn point(&self, theta: f64) -> Complex {
        Complex::new(self.center, 0.0) + Complex::from_polar(self.radius, theta)
    }

    /// Schwarz function of the circle, `p + ρ²/(ζ − p)`.
    pub fn schwarz(&self, zeta: Complex) -> Result<Complex> {
        let d = zeta - self.center;
        if d.norm() == 0.0 {
            return Err(Error::Pole);
        }
        Ok(self.center + self.radius * self.radius / d)
    }
}

/// `R` from `(a, κ, τ)`: `R² = (1−τ²)/(1 − τ² + 2τκ − κ²/(1−a²)²)`.
pub fn solve_r(a: f64, kappa: f64, tau: f64) -> Result<f64> {
    let b = 1.0 - a * a;
    let rad = 1.0 - tau * tau + 2.0 * tau * kappa - kappa * kappa / (b * b);
    if !(rad > 0.0) {
        return Err(Error::OutOfDomain(
            "1 - tau^2 + 2 tau kappa - kappa^2/(1-a^2)^2 <= 0",
        ));
    }
    Ok(((1.0 - tau * tau) / rad).sqrt())
}

/// The rational map `f(z) = R(z + τ/z − κ/(z−a) − κ/(a(1−τ)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalMap {
    params: ConformalParams,
    tau: f64,
}

impl ConformalMap {
    /// Wraps parameters; no univalence check is performed here.
    pub fn new(params: ConformalParams, tau: f64) -> Self {
        Self { params, tau }
    }

    /// Map parameters.
    pub fn params(&self) -> &ConformalParams {
        &self.params
    }

    /// Non-Hermiticity parameter.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    fn offset(&self) -> f64 {
        self.params.kappa() / (self.params.a() * (1.0 - self.tau))
    }

    /// `f(z)`. Non-finite at the poles `0` and `a`, which lie inside the unit disc.
    pub fn eval(&self, z: Complex) -> Complex {
        let (r, a, k) = (self.params.r(), self.params.a(), self.params.kappa());
        r * (z + self.tau / z - k / (z - a) - self.offset())
    }

    /// `f(z)` with explicit rejection of the poles.
    pub fn try_eval(&self, z: Complex) -> Result<Complex> {
        if z.norm() == 0.0 || (z - self.params.a()).norm() == 0.0 {
            return Err(Error::Pole);
        }
        Ok(self.eval(z))
    }

    /// `f'(z) = R(1 − τ/z² + κ/(z−a)²)`.
    pub fn derivative(&self, z: Complex) -> Complex {
        let (r, a, k) = (self.params.r(), self.params.a(), self.params.kappa());
        let za = z - a;
        r * (1.0 - self.tau / (z * z) + k / (za * za))
    }

    /// `f(e^{iθ})`.
    pub fn boundary_point(&self, theta: f64) -> Complex {
        self.eval(Complex::from_polar(1.0, theta))
    }

    /// All three solutions of `f(z) = ζ`.
    pub fn preimages(&self, zeta: Complex) -> [Complex; 3] {
        let (r, a, k) = (self.params.r(), self.params.a(), self.params.kappa());
        let w = zeta / r;
        let tau = self.tau;
        let b = -(a + self.offset() + w);
        let c = tau + tau * k / (1.0 - tau) + a * w;
        let d = Complex::new(-tau * a, 0.0);
        cubic_roots(b, c, d)
    }

    /// The exterior inverse `F(ζ)`, the preimage with `|z| ≥ 1`.
    pub fn inverse(&self, zeta: Complex) -> Result<Complex> {
        let roots = self.preimages(zeta);
        roots
            .iter()
            .copied()
            .filter(|z| z.norm() >= 1.0 - ROOT_SLACK)
            .fold(None, |best: Option<Complex>, z| match best {
                Some(b) if b.norm() >= z.norm() => Some(b),
                _ => Some(z),
            })
            .ok_or(Error::InsideDomain)
    }

    /// Schwarz function `S(ζ) = f(1/F(ζ))` on the closed exterior.
    pub fn schwarz(&self, zeta: Complex) -> Result<Complex> {
        let z = self.inverse(zeta)?;
        self.try_eval(z.inv())
    }

    /// True if `ζ` lies in the closed droplet bounded by `f(∂𝔻)`.
    pub fn encloses(&self, zeta: Complex) -> bool {
        match self.inverse(zeta) {
            Err(_) => true,
            Ok(z) => z.norm() <= 1.0 + ROOT_SLACK,
        }
    }

    /// Enclosed area `(1/2)∫ Re(conj(f) f'(z) z) dθ` over `z = e^{iθ}`, by
    /// composite Gauss–Legendre with panels scaled to the pole distance `1 − a`.
    pub fn area(&self) -> f64 {
        let gl = GaussLegendre::new(32);
        let panels = ((4.0 / (1.0 - self.params.a())).ceil() as usize).clamp(16, 4096);
        0.5 * gl.integrate_periodic(panels, |t| {
            let z = Complex::from_polar(1.0, t);
            (self.eval(z).conj() * self.derivative(z) * z).re
        })
    }

    /// Samples `f(e^{iθ})` at `n` uniform angles with adaptive refinement.
    pub fn sample_boundary(&self, n: usize) -> BoundaryPolyline {
        sample_adaptive(BoundaryComponent::Outer, n, |t| self.boundary_point(t))
    }
}

/// Which boundary curve of a droplet a sample belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryComponent {
    /// The outer boundary: the ellipse in Regime I, `f(∂𝔻)` in Regime II.
    Outer,
    /// The circle around the point charge in Regime I.
    Inner,
}

/// One boundary sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySample {
    /// Parameter angle.
    pub theta: f64,
    /// Boundary point.
    pub zeta: Complex,
}

/// A closed boundary curve sampled counter-clockwise in its parameter; the
/// last point connects back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPolyline {
    /// Which curve this is.
    pub component: BoundaryComponent,
    /// Samples ordered by increasing angle in `[0, 2π)`.
    pub samples: Vec<BoundarySample>,
    /// Set when adjacent samples are still more than 1% of the diameter
    /// apart after [`MAX_REFINEMENTS`] passes.
    pub under_resolved: bool,
}

impl BoundaryPolyline {
    /// The sample points alone.
    pub fn points(&self) -> Vec<Complex> {
        self.samples.iter().map(|s| s.zeta).collect()
    }
}

fn sample_adaptive(
    component: BoundaryComponent,
    n: usize,
    curve: impl Fn(f64) -> Complex,
) -> BoundaryPolyline {
    let n = n.max(3);
    let mut samples: Vec<BoundarySample> = (0..n)
        .map(|k| {
            let theta = 2.0 * PI * k as f64 / n as f64;
            BoundarySample {
                theta,
                zeta: curve(theta),
            }
        })
        .collect();
    let (lo, hi) = bbox(samples.iter().map(|s| s.zeta));
    let threshold = 0.01 * (hi - lo).norm();
    let too_far = |s: &[BoundarySample], i: usize| {
        let j = (i + 1) % s.len();
        (s[j].zeta - s[i].zeta).norm() > threshold
    };
    for _ in 0..MAX_REFINEMENTS {
        if !(0..samples.len()).any(|i| too_far(&samples, i)) {
            break;
        }
        let mut refined = Vec::with_capacity(2 * samples.len());
        for i in 0..samples.len() {
            refined.push(samples[i]);
            if too_far(&samples, i) {
                let t0 = samples[i].theta;
                let t1 = if i + 1 == samples.len() {
                    2.0 * PI
                } else {
                    samples[i + 1].theta
                };
                let theta = 0.5 * (t0 + t1);
                refined.push(BoundarySample {
                    theta,
                    zeta: curve(theta),
                });
            }
        }
        samples = refined;
    }
    let under_resolved = (0..samples.len()).any(|i| too_far(&samples, i));
    BoundaryPolyline {
        component,
        samples,
        under_resolved,
    }
}

fn bbox(points: impl Iterator<Item = Complex>) -> (Complex, Complex) {
    let mut lo = Complex::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Complex::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for z in points {
        lo.re = lo.re.min(z.re);
        lo.im = lo.im.min(z.im);
        hi.re = hi.re.max(z.re);
        hi.im = hi.im.max(z.im);
    }
    (lo, hi)
}

/// Winding number of the closed polyline around `point`.
pub fn winding_number(poly: &[Complex], point: Complex) -> i32 {
    let mut w = 0;
    for i in 0..poly.len() {
        let a = poly[i] - point;
        let b = poly[(i + 1) % poly.len()] - point;
        let cross = a.re * b.im - a.im * b.re;
        if a.im <= 0.0 {
            if b.im > 0.0 && cross > 0.0 {
                w += 1;
            }
        } else if b.im <= 0.0 && cross < 0.0 {
            w -= 1;
        }
    }
    w
}

/// True if two non-adjacent edges of the closed polyline cross.
pub fn self_intersects(poly: &[Complex]) -> bool {
    let n = poly.len();
    if n < 4 {
        return false;
    }
    let orient = |a: Complex, b: Complex, c: Complex| {
        let v = (b - a).re * (c - a).im - (b - a).im * (c - a).re;
        if v > 0.0 {
            1
        } else if v < 0.0 {
            -1
        } else {
            0
        }
    };
    let edge = |i: usize| (poly[i], poly[(i + 1) % n]);
    let boxes: Vec<(Complex, Complex)> = (0..n)
        .map(|i| bbox([poly[i], poly[(i + 1) % n]].into_iter()))
        .collect();
    for i in 0..n {
        let (p1, p2) = edge(i);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (bi, bj) = (boxes[i], boxes[j]);
            if bi.1.re < bj.0.re || bj.1.re < bi.0.re || bi.1.im < bj.0.im || bj.1.im < bi.0.im {
                continue;
            }
            let (q1, q2) = edge(j);
            let d1 = orient(p1, p2, q1);
            let d2 = orient(p1, p2, q2);
            let d3 = orient(q1, q2, p1);
            let d4 = orient(q1, q2, p2);
            if d1 * d2 < 0 && d3 * d4 < 0 {
                return true;
            }
        }
    }
    false
}

/// An explicit droplet.
#[derive(Debug, Clone, PartialEq)]
pub enum Droplet {
    /// Regime I: `E \ D`.
    DoublyConnected {
        /// Outer ellipse.
        ellipse: EllipseSpec,
        /// Excised disc; radius 0 when `c = 0`.
        disc: DiscSpec,
    },
    /// Regime II: the complement of `f(𝔻ᶜ)`.
    SimplyConnected {
        /// The exterior conformal map.
        map: ConformalMap,
        /// Sampled outer boundary.
        boundary: BoundaryPolyline,
    },
}

/// Builds the droplet for a Regime I or II classification using
/// [`DEFAULT_SAMPLES`] boundary samples.
pub fn build_droplet(params: &ModelParams, classification: &Classification) -> Result<Droplet> {
    build_droplet_with(params, classification, DEFAULT_SAMPLES)
}

/// As [`build_droplet`] with an explicit boundary sample count.
pub fn build_droplet_with(
    params: &ModelParams,
    classification: &Classification,
    n_samples: usize,
) -> Result<Droplet> {
    match classification.regime.phase {
        Phase::DoublyConnected => Ok(doubly_connected(params)),
        Phase::SimplyConnected => {
            let cp = classification
                .conformal
                .ok_or(Error::Inconsistent("missing conformal parameters"))?;
            let map = ConformalMap::new(cp, params.tau());
            Ok(Droplet::SimplyConnected {
                map,
                boundary: map.sample_boundary(n_samples),
            })
        }
        Phase::TwoComponents => Err(Error::UnsupportedRegime),
    }
}

/// The ellipse and disc of `params`, regardless of whether the disc fits.
pub fn doubly_connected(params: &ModelParams) -> Droplet {
    let (semi_major, semi_minor) = params.ellipse_axes();
    Droplet::DoublyConnected {
        ellipse: EllipseSpec {
            semi_major,
            semi_minor,
        },
        disc: DiscSpec {
            center: params.p(),
            radius: params.disc_radius(),
        },
    }
}

impl Droplet {
    /// Area of the droplet: closed form in Regime I, contour quadrature in Regime II.
    pub fn area(&self) -> f64 {
        match self {
            Droplet::DoublyConnected { ellipse, disc } => {
                PI * (ellipse.semi_major * ellipse.semi_minor - disc.radius * disc.radius)
            }
            Droplet::SimplyConnected { map, .. } => map.area(),
        }
    }

    /// Closed-set membership.
    pub fn contains(&self, zeta: Complex) -> bool {
        match self {
            Droplet::DoublyConnected { ellipse, disc } => {
                ellipse.contains(zeta) && !disc.contains_open(zeta)
            }
            Droplet::SimplyConnected { map, .. } => map.encloses(zeta),
        }
    }

    /// Schwarz function of the given boundary component.
    pub fn schwarz(&self, zeta: Complex, component: BoundaryComponent) -> Result<Complex> {
        match (self, component) {
            (Droplet::DoublyConnected { ellipse, .. }, BoundaryComponent::Outer) => {
                Ok(ellipse.schwarz(zeta))
            }
            (Droplet::DoublyConnected { disc, .. }, BoundaryComponent::Inner) => disc.schwarz(zeta),
            (Droplet::SimplyConnected { map, .. }, BoundaryComponent::Outer) => map.schwarz(zeta),
            (Droplet::SimplyConnected { .. }, BoundaryComponent::Inner) => Err(
                Error::Inconsistent("simply connected droplet has no inner boundary"),
            ),
        }
    }

    /// All boundary curves, `n` base samples each.
    pub fn boundaries(&self, n: usize) -> Vec<BoundaryPolyline> {
        match self {
            Droplet::DoublyConnected { ellipse, disc } => {
                let mut out =
                    alloc::vec![sample_adaptive(BoundaryComponent::Outer, n, |t| ellipse.point(t))];
                if disc.radius > 0.0 {
                    out.push(sample_adaptive(BoundaryComponent::Inner, n, |t| {
                        disc.point(t)
                    }));
                }
                out
            }
            Droplet::SimplyConnected { boundary, map } => {
                if boundary.samples.len() >= n {
                    alloc::vec![boundary.clone()]
                } else {
                    alloc::vec![map.sample_boundary(n)]
                }
            }
        }
    }

    /// Axis-aligned bounding box `(lower-left, upper-right)` of the droplet.
    pub fn bounding_box(&self) -> (Complex, Complex) {
        match self {
            Droplet::DoublyConnected { ellipse, .. } => (
                Complex::new(-ellipse.semi_major, -ellipse.semi_minor),
                Complex::new(ellipse.semi_major, ellipse.semi_minor),
            ),
            Droplet::SimplyConnected { boundary, .. } => {
                bbox(boundary.samples.iter().map(|s| s.zeta))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(r: f64, a: f64, k: f64, tau: f64) -> ConformalMap {
        ConformalMap::new(ConformalParams::new(r, a, k).unwrap(), tau)
    }

    #[test]
    fn joukowsky_when_kappa_zero() {
        let m = map(1.0, 0.5, 0.0, 0.4);
        let z = Complex::new(1.3, -0.7);
        assert!((m.eval(z) - (z + 0.4 / z)).norm() < 1e-15);
    }

    #[test]
    fn inverse_round_trip() {
        let m = map(solve_r(0.7, 0.1, 0.3).unwrap(), 0.7, 0.1, 0.3);
        for &z in &[
            Complex::new(2.0, 0.0),
            Complex::new(0.3, 1.2),
            Complex::new(-4.0, -0.5),
        ] {
            let back = m.inverse(m.eval(z)).unwrap();
            assert!((back - z).norm() < 1e-10, "{z} -> {back}");
        }
        let roots = m.preimages(Complex::new(0.4, 2.0));
        let prod = roots[0] * roots[1] * roots[2];
        assert!((prod - 0.3 * 0.7).norm() < 1e-12);
    }

    #[test]
    fn solve_r_limits() {
        assert_eq!(solve_r(0.4, 0.0, 0.6).unwrap(), 1.0);
        assert!(solve_r(0.5, 0.9, 0.0).is_err());
    }

    #[test]
    fn ellipse_schwarz_on_boundary() {
        let e = EllipseSpec {
            semi_major: 1.5 * 1.4f64.sqrt(),
            semi_minor: 0.5 * 1.4f64.sqrt(),
        };
        for k in 0..32 {
            let z = e.point(0.2 * k as f64);
            assert!((e.schwarz(z) - z.conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn polyline_predicates() {
        let square = [
            Complex::new(0.0, 0.0),
            Complex::new(1.0, 0.0),
            Complex::new(1.0, 1.0),
            Complex::new(0.0, 1.0),
        ];
        assert_eq!(winding_number(&square, Complex::new(0.5, 0.5)), 1);
        assert_eq!(winding_number(&square, Complex::new(1.5, 0.5)), 0);
        assert!(!self_intersects(&square));
        let bowtie = [square[0], square[2], square[1], square[3]];
        assert!(self_intersects(&bowtie));
    }
}
