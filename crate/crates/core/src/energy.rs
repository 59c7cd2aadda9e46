//! Potential, Robin constants, logarithmic energies and the exterior gap.
//!
//! The equilibrium measure is uniform with density `1/(1−τ²)` on the droplet
//! against `dA = d²ζ/π`, and the energy is
//! `I = ∬ log(1/|z−w|) dμ dμ + ∫ Q dμ`. Every report satisfies
//! `I = C + ½∫Q dμ`, where `C` is the Robin constant.

// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::{solve_r, ConformalMap};
use crate::phase::{classify, forward_map, in_regime1, Phase};
use crate::{Complex, ConformalParams, Error, ModelParams, Result};

/// Relative tolerance for accepting `(params, cp)` as the same droplet.
const CONSISTENCY_TOL: f64 = 1e-8;

/// Energies of the equilibrium measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    /// Regime the formulas belong to.
    pub phase: Phase,
    /// Weighted logarithmic energy `I_Q(μ_Q)`.
    pub energy: f64,
    /// Robin constant.
    pub robin: f64,
    /// `∫ Q dμ_Q`.
    pub potential_integral: f64,
    /// Leading moments coefficient `𝒦 = 3/4 − I_Q(μ_Q)`.
    pub moments_coeff: f64,
}

/// `Q(ζ) = (|ζ|² − τ Re ζ²)/(1−τ²) − 2c log|ζ − p|`; `+∞` at `ζ = p` when `c > 0`.
pub fn potential_q(zeta: Complex, params: &ModelParams) -> f64 {
    let (p, c, tau) = (params.p(), params.c(), params.tau());
    let quad = (zeta.norm_sqr() - tau * (zeta * zeta).re) / (1.0 - tau * tau);
    if c == 0.0 {
        return quad;
    }
    let d = (zeta - p).norm();
    if d == 0.0 {
        return f64::INFINITY;
    }
    quad - 2.0 * c * d.ln()
}

/// `x² log x` with the limit 0 at 0.
fn x2_log(x: f64, arg: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x * arg.ln()
    }
}

/// Energy, Robin constant and `∫Q dμ` in Regime I.
pub fn energy_doubly(params: &ModelParams) -> Result<EnergyReport> {
    if !in_regime1(params) {
        return Err(Error::Inconsistent("parameters are not in Regime I"));
    }
    let (p, c, tau) = (params.p(), params.c(), params.tau());
    let l1c = (1.0 + c).ln();
    let s = c * (1.0 - tau * tau);
    let energy = 0.75 + 1.5 * c + 0.5 * x2_log(c, s)
        - 0.5 * (1.0 + c) * (1.0 + c) * l1c
        - c * p * p / (1.0 + tau);
    let robin = 0.5 * (1.0 + c) * (1.0 - l1c);
    let potential_integral =
        0.5 + 2.0 * c + x2_log(c, s) - c * (1.0 + c) * l1c - 2.0 * c * p * p / (1.0 + tau);
    Ok(EnergyReport {
        phase: Phase::DoublyConnected,
        energy,
        robin,
        potential_integral,
        moments_coeff: moments_doubly(p, c, tau),
    })
}

fn check_consistent(params: &ModelParams, cp: &ConformalParams) -> Result<()> {
    let tau = params.tau();
    let (c, p) = forward_map(cp.a(), cp.kappa(), tau)?;
    let r = solve_r(cp.a(), cp.kappa(), tau)?;
    let close = |x: f64, y: f64| (x - y).abs() <= CONSISTENCY_TOL * (1.0 + y.abs());
    if close(c, params.c()) && close(p, params.p()) && close(r, cp.r()) {
        Ok(())
    } else {
        Err(Error::Inconsistent(
            "conformal parameters do not reproduce (p, c)",
        ))
    }
}

/// Energy, Robin constant and `∫Q dμ` in Regime II for the map `cp`.
pub fn energy_simply(params: &ModelParams, cp: &ConformalParams) -> Result<EnergyReport> {
    check_consistent(params, cp)?;
    let (p, c, tau) = (params.p(), params.c(), params.tau());
    let (r, a, k) = (cp.r(), cp.a(), cp.kappa());
    let t2 = 1.0 - tau * tau;
    let a2 = a * a;
    let b = 1.0 - a2;
    let a3 = a2 * a;
    let big_a = 2.0 - 3.0 * a2 - 3.0 * tau * a2 + 2.0 * tau * a2 * a2;
    let big_b = 2.0 - 3.0 * a2 + 3.0 * tau * a2 - 2.0 * tau * a2 * a2;
    let lr = r.ln();
    let la = a.ln();
    // c² log(c(1−τ²)(1−a²)/(Rκ)); c and κ vanish together
    let clog = if c == 0.0 {
        0.0
    } else {
        c * c * (c * t2 * b / (r * k)).ln()
    };
    let energy = 0.75 + 1.5 * c - c * p * p / (1.0 + tau)
        + r.powi(3) * k * p / (2.0 * t2 * t2 * a3) * (big_a * (1.0 - tau) - big_b * k / b)
        + 2.0 * c * (1.0 + c) * la
        + clog
        - (1.0 + c) * (1.0 + c) * lr;
    let robin = 0.5 * (1.0 + c) - r * k * p / (2.0 * a * t2) + c * la - (1.0 + c) * lr;
    let clog2 = if c == 0.0 {
        0.0
    } else {
        2.0 * c * c * (c * t2 * b / k).ln()
    };
    let potential_integral = 0.5 + 2.0 * c - 2.0 * c * p * p / (1.0 + tau)
        + 2.0 * c * (1.0 + 2.0 * c) * (a / r).ln()
        + clog2
        - r.powi(3) * k * p / (t2 * t2 * a3)
            * ((1.0 + tau * a2) * k - (1.0 - tau) * b * (1.0 - tau * a2))
        + b * r * c * p / (a * (1.0 + tau))
        - r * c * k * p / (a * t2);
    Ok(EnergyReport {
        phase: Phase::SimplyConnected,
        energy,
        robin,
        potential_integral,
        moments_coeff: moments_simply(p, c, tau, cp),
    })
}

/// Classifies `params` and evaluates the matching closed forms.
pub fn energy(params: &ModelParams) -> Result<EnergyReport> {
    let cl = classify(params);
    match cl.regime.phase {
        Phase::DoublyConnected => energy_doubly(params),
        Phase::SimplyConnected => {
            let cp = cl
                .conformal
                .ok_or(Error::Inconsistent("missing conformal parameters"))?;
            energy_simply(params, &cp)
        }
        Phase::TwoComponents => Err(Error::UnsupportedRegime),
    }
}

fn moments_doubly(z: f64, c: f64, tau: f64) -> f64 {
    c * z * z / (1.0 + tau) - 1.5 * c + 0.5 * (1.0 + c) * (1.0 + c) * (1.0 + c).ln()
        - 0.5 * x2_log(c, c * (1.0 - tau * tau))
}

fn moments_simply(z: f64, c: f64, tau: f64, cp: &ConformalParams) -> f64 {
    let (r, a, k) = (cp.r(), cp.a(), cp.kappa());
    let t2 = 1.0 - tau * tau;
    let a2 = a * a;
    let b = 1.0 - a2;
    let big_a = 2.0 - 3.0 * a2 - 3.0 * tau * a2 + 2.0 * tau * a2 * a2;
    let big_b = 2.0 - 3.0 * a2 + 3.0 * tau * a2 - 2.0 * tau * a2 * a2;
    let clog = if c == 0.0 {
        0.0
    } else {
        c * c * (c * t2 * b / (r * k)).ln()
    };
    c * z * z / (1.0 + tau)
        - 1.5 * c
        - r.powi(3) * k * big_a / (2.0 * t2 * t2 * a2 * a) * (1.0 - tau - big_b / big_a * k / b) * z
        - 2.0 * c * (1.0 + c) * a.ln()
        - clog
        + (1.0 + c) * (1.0 + c) * r.ln()
}

/// Leading coefficient `𝒦` of `log E|det(X − z)|^{2cN}` for real `z`.
pub fn moments_coeff(z: f64, c: f64, tau: f64) -> Result<f64> {
    let params = ModelParams::new(z.abs(), c, tau)?;
    let cl = classify(&params);
    match cl.regime.phase {
        Phase::DoublyConnected => Ok(moments_doubly(params.p(), c, tau)),
        Phase::SimplyConnected => {
            let cp = cl
                .conformal
                .ok_or(Error::Inconsistent("missing conformal parameters"))?;
            Ok(moments_simply(params.p(), c, tau, &cp))
        }
        Phase::TwoComponents => Err(Error::UnsupportedRegime),
    }
}

/// Exterior gap `𝒰(ζ) − ℓ` of the Regime II potential, where `𝒰` is the
/// left-hand side of the variational inequality and `ℓ` its boundary value.
///
/// Non-negative on the exterior iff `κ < κ_cri`; zero on the boundary.
pub fn u_gap(zeta: Complex, params: &ModelParams, cp: &ConformalParams) -> Result<f64> {
    let map = ConformalMap::new(*cp, params.tau());
    if (zeta - params.p()).norm() == 0.0 && params.c() > 0.0 {
        return Err(Error::Pole);
    }
    let z = map.inverse(zeta)?;
    Ok(gap_at_preimage(z, &map, params.p(), params.c()))
}

/// The gap evaluated at a preimage `z` with `|z| ≥ 1`. Unlike [`u_gap`] it
/// needs no inversion, so it also works for non-admissible `κ`.
pub fn gap_at_preimage(z: Complex, map: &ConformalMap, p: f64, c: f64) -> f64 {
    let cp = map.params();
    let (r, a, k) = (cp.r(), cp.a(), cp.kappa());
    let tau = map.tau();
    let fz = map.eval(z);
    let fz_inv = map.eval(z.inv());
    let pole = r * k * p * (z * z - 1.0) / ((z - a) * (a * z - 1.0));
    (fz.norm_sqr() - (fz * fz_inv).re + pole.re) / (1.0 - tau * tau)
        - 2.0 * c * ((a * z - 1.0).norm() / (z - a).norm()).ln()
        - 2.0 * (1.0 + c) * z.norm().ln()
}
