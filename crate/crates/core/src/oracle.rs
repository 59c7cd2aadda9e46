//! Brute-force cell quadrature of the equilibrium measure.
//!
//! Independent of the closed-form energy and gap formulas. The droplet is
//! rasterised on a uniform grid, with exact coverage along each of several
//! sub-rows per cell. Regime II membership comes from the sampled boundary
//! polygon rather than the inverse map. Logarithmic kernels between nearby
//! cells use exact square averages; far cells use the midpoint rule, whose
//! second-order error vanishes because `log|z|` is harmonic.

use alloc::vec;
use alloc::vec::Vec;
// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::energy::potential_q;
use crate::geometry::{BoundaryComponent, Droplet};
use crate::quadrature::GaussLegendre;
use crate::{Complex, ModelParams};

/// Default cell width.
pub const DEFAULT_CELL: f64 = 0.01;
/// Sub-rows per cell used for coverage.
const SUB_ROWS: usize = 8;
/// Offsets up to this many cells use exact square-pair kernels.
const NEAR: i64 = 4;
/// Boundary samples used for the Regime II polygon.
const POLYGON_SAMPLES: usize = 8192;

/// One grid cell carrying equilibrium mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    /// Column index.
    pub ix: i64,
    /// Row index.
    pub iy: i64,
    /// Cell centre.
    pub center: Complex,
    /// Mass, normalised so the cells sum to one.
    pub mass: f64,
}

/// The equilibrium measure discretised on square cells.
#[derive(Debug, Clone)]
pub struct CellMeasure {
    h: f64,
    cells: Vec<Cell>,
}

impl CellMeasure {
    /// Rasterises `droplet` with cell width `h`. The density is uniform, so
    /// masses are coverage fractions normalised to total mass one.
    pub fn new(droplet: &Droplet, h: f64) -> Self {
        let (lo, hi) = droplet.bounding_box();
        let x0 = lo.re - h;
        let y0 = lo.im - h;
        let nx = (((hi.re - lo.re) / h).ceil() as usize) + 2;
        let ny = (((hi.im - lo.im) / h).ceil() as usize) + 2;
        let mut cover = vec![0.0; nx * ny];
        let polygon: Vec<Complex> = match droplet {
            Droplet::SimplyConnected { map, .. } => map.sample_boundary(POLYGON_SAMPLES).points(),
            Droplet::DoublyConnected { .. } => Vec::new(),
        };
        let mut spans = Vec::new();
        for iy in 0..ny {
            for sub in 0..SUB_ROWS {
                let y = y0 + h * (iy as f64 + (sub as f64 + 0.5) / SUB_ROWS as f64);
                spans.clear();
                row_spans(droplet, &polygon, y, &mut spans);
                for &(xa, xb) in &spans {
                    let ka = (((xa - x0) / h).floor().max(0.0)) as usize;
                    let kb = (((xb - x0) / h).floor() as usize).min(nx - 1);
                    for k in ka..=kb {
                        let cl = x0 + h * k as f64;
                        let overlap = xb.min(cl + h) - xa.max(cl);
                        if overlap > 0.0 {
                            cover[iy * nx + k] += overlap / h / SUB_ROWS as f64;
                        }
                    }
                }
            }
        }
        let total: f64 = cover.iter().sum();
        let cells = cover
            .iter()
            .enumerate()
            .filter(|(_, &w)| w > 0.0)
            .map(|(i, &w)| {
                let (ix, iy) = ((i % nx) as i64, (i / nx) as i64);
                Cell {
                    ix,
                    iy,
                    center: Complex::new(x0 + h * (ix as f64 + 0.5), y0 + h * (iy as f64 + 0.5)),
                    mass: w / total,
                }
            })
            .collect();
        Self { h, cells }
    }

    /// Cell width.
    pub fn cell_width(&self) -> f64 {
        self.h
    }

    /// Cells with positive mass.
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `∫ g dμ` by the midpoint rule.
    pub fn integrate(&self, mut g: impl FnMut(Complex) -> f64) -> f64 {
        self.cells.iter().map(|c| c.mass * g(c.center)).sum()
    }

    /// `∫ log(1/|ζ − η|²) dμ(η)`, with exact square averages for cells near `ζ`.
    pub fn log_potential(&self, zeta: Complex) -> f64 {
        let h = self.h;
        let mut acc = 0.0;
        for c in &self.cells {
            let d = zeta - c.center;
            let v = if d.re.abs() < 3.0 * h && d.im.abs() < 3.0 * h {
                -square_mean_log_sq(
                    d.re - 0.5 * h,
                    d.re + 0.5 * h,
                    d.im - 0.5 * h,
                    d.im + 0.5 * h,
                )
            } else {
                -d.norm_sqr().ln()
            };
            acc += c.mass * v;
        }
        acc
    }

    /// `∬ log(1/|z − w|) dμ(z) dμ(w)`.
    pub fn self_energy(&self) -> f64 {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for c in &self.cells {
            xmin = xmin.min(c.ix);
            xmax = xmax.max(c.ix);
            ymin = ymin.min(c.iy);
            ymax = ymax.max(c.iy);
        }
        let wx = xmax - xmin;
        let wy = ymax - ymin;
        let stride = (wy + 1) as usize;
        // kernel on non-negative offsets; log|·| is even in each coordinate
        let lh = self.h.ln();
        let gl = GaussLegendre::new(16);
        let mut table = vec![0.0; ((wx + 1) as usize) * stride];
        for dx in 0..=wx {
            for dy in 0..=wy {
                let k = if dx <= NEAR && dy <= NEAR {
                    unit_pair_kernel(dx as f64, dy as f64, &gl)
                } else {
                    -0.5 * ((dx * dx + dy * dy) as f64).ln()
                };
                table[dx as usize * stride + dy as usize] = k - lh;
            }
        }
        let mut total = 0.0;
        for (i, ci) in self.cells.iter().enumerate() {
            let mut row = 0.0;
            for cj in &self.cells[i + 1..] {
                let dx = (ci.ix - cj.ix).unsigned_abs() as usize;
                let dy = (ci.iy - cj.iy).unsigned_abs() as usize;
                row += cj.mass * table[dx * stride + dy];
            }
            total += ci.mass * (2.0 * row + ci.mass * table[0]);
        }
        total
    }
}

/// Horizontal spans of the droplet along the line `Im ζ = y`.
fn row_spans(droplet: &Droplet, polygon: &[Complex], y: f64, out: &mut Vec<(f64, f64)>) {
    match droplet {
        Droplet::DoublyConnected { ellipse, disc } => {
            let t = 1.0 - (y / ellipse.semi_minor).powi(2);
            if t <= 0.0 {
                return;
            }
            let xe = ellipse.semi_major * t.sqrt();
            let s = disc.radius * disc.radius - y * y;
            if s <= 0.0 {
                out.push((-xe, xe));
                return;
            }
            let xd = s.sqrt();
            let (da, db) = (disc.center - xd, disc.center + xd);
            if da > -xe {
                out.push((-xe, da.min(xe)));
            }
            if db < xe {
                out.push((db.max(-xe), xe));
            }
        }
        Droplet::SimplyConnected { .. } => {
            let mut xs: Vec<f64> = Vec::new();
            let n = polygon.len();
            for i in 0..n {
                let a = polygon[i];
                let b = polygon[(i + 1) % n];
                if (a.im <= y) != (b.im <= y) {
                    xs.push(a.re + (y - a.im) / (b.im - a.im) * (b.re - a.re));
                }
            }
            xs.sort_by(f64::total_cmp);
            for pair in xs.chunks_exact(2) {
                out.push((pair[0], pair[1]));
            }
        }
    }
}

/// Antiderivative `F` with `∂²F/∂x∂y = log(x² + y²)`.
fn log_sq_antiderivative(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    if r2 == 0.0 {
        return 0.0;
    }
    let mut v = x * y * (r2.ln() - 3.0);
    if x != 0.0 {
        v += x * x * (y / x).atan();
    }
    if y != 0.0 {
        v += y * y * (x / y).atan();
    }
    v
}

/// Mean of `log(x² + y²)` over the rectangle `[x0, x1] × [y0, y1]`.
fn square_mean_log_sq(x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let f = log_sq_antiderivative;
    (f(x1, y1) - f(x0, y1) - f(x1, y0) + f(x0, y0)) / ((x1 - x0) * (y1 - y0))
}

/// Mean of `−log|z − w|` for `z` uniform in the unit square and `w` in the
/// same square shifted by `(dx, dy)`: inner mean exact, outer by Gauss–Legendre.
fn unit_pair_kernel(dx: f64, dy: f64, gl: &GaussLegendre) -> f64 {
    gl.integrate(0.0, 1.0, |x| {
        gl.integrate(0.0, 1.0, |y| {
            -0.5 * square_mean_log_sq(dx - x, dx + 1.0 - x, dy - y, dy + 1.0 - y)
        })
    })
}

/// Weighted logarithmic energy `∬ log(1/|z−w|) dμ dμ + ∫ Q dμ` by cell quadrature.
pub fn log_energy_numeric(params: &ModelParams, droplet: &Droplet, h: f64) -> f64 {
    let m = CellMeasure::new(droplet, h);
    m.self_energy() + m.integrate(|z| potential_q(z, params))
}

/// Numeric potential `𝒰(ζ) = ∫ log(1/|ζ−η|²) dμ(η) + Q(ζ)` and its gap to
/// the value at a boundary reference point.
#[derive(Debug, Clone)]
pub struct NumericGap {
    measure: CellMeasure,
    params: ModelParams,
    reference: f64,
}

impl NumericGap {
    /// Rasterises the droplet once; the reference is the rightmost point of
    /// the ellipse in Regime I and `f(1)` in Regime II.
    pub fn new(params: &ModelParams, droplet: &Droplet, h: f64) -> Self {
        let measure = CellMeasure::new(droplet, h);
        let b = match droplet {
            Droplet::DoublyConnected { ellipse, .. } => Complex::new(ellipse.semi_major, 0.0),
            Droplet::SimplyConnected { map, .. } => map.boundary_point(0.0),
        };
        let mut out = Self {
            measure,
            params: *params,
            reference: 0.0,
        };
        out.reference = out.potential(b);
        out
    }

    /// `𝒰(ζ)`.
    pub fn potential(&self, zeta: Complex) -> f64 {
        self.measure.log_potential(zeta) + potential_q(zeta, &self.params)
    }

    /// `𝒰(ζ) − 𝒰(b)` for the boundary reference `b`.
    pub fn gap(&self, zeta: Complex) -> f64 {
        self.potential(zeta) - self.reference
    }

    /// The underlying measure.
    pub fn measure(&self) -> &CellMeasure {
        &self.measure
    }
}

/// One-shot numeric gap at the default cell width.
pub fn u_gap_numeric(zeta: Complex, params: &ModelParams, droplet: &Droplet) -> f64 {
    NumericGap::new(params, droplet, DEFAULT_CELL).gap(zeta)
}

/// Signed-area check helper: the Schwarz residual `|S(ζ) − conj ζ|` over a
/// boundary component's samples.
pub fn schwarz_residual(droplet: &Droplet, component: BoundaryComponent, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for poly in droplet.boundaries(n) {
        if poly.component != component {
            continue;
        }
        for s in &poly.samples {
            if let Ok(v) = droplet.schwarz(s.zeta, component) {
                worst = worst.max((v - s.zeta.conj()).norm());
            } else {
                worst = f64::INFINITY;
            }
        }
    }
    worst
}
