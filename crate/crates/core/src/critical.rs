//! Critical values of κ and the critical points of the exterior potential.
//!
//! For fixed `(a, τ)` the function `H(a, ·)` changes sign exactly once on
//! `(κ₁, κ_max]`; its zero `κ_cri` separates simply connected droplets
//! (Regime II) from the two-component phase.

// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::geometry::ConformalMap;
use crate::params::{kappa_max, kappa_min, kappa_one};
use crate::{Complex, ConformalParams, Error, Result};

/// Below this `τ` the non-real critical points are not searched for.
const TAU_EPS: f64 = 1e-12;

/// The four distinguished values of κ for a given `(a, τ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaBounds {
    /// Lower univalence endpoint.
    pub min: f64,
    /// Onset of the non-real critical pair.
    pub one: f64,
    /// Zero of `H(a, ·)`.
    pub cri: f64,
    /// Upper univalence endpoint.
    pub max: f64,
}

/// Computes `κ_min ≤ 0 ≤ κ₁ ≤ κ_cri ≤ κ_max`.
pub fn kappa_bounds(a: f64, tau: f64) -> Result<KappaBounds> {
    Ok(KappaBounds {
        min: kappa_min(a, tau),
        one: kappa_one(a, tau),
        cri: kappa_cri(a, tau)?,
        max: kappa_max(a, tau),
    })
}

/// The real critical preimage: the larger root of
/// `z + 1/z = a + 1/a + κ/(a(1−τ))`.
///
/// Defined for `κ ≥ κ_min`; equals `1/a` at `κ = 0`.
pub fn z_star(a: f64, kappa: f64, tau: f64) -> f64 {
    let s = a * a + 1.0 + kappa / (1.0 - tau);
    let disc = (s * s - 4.0 * a * a).max(0.0);
    (s + disc.sqrt()) / (2.0 * a)
}

/// The function whose sign decides whether the real critical point of the
/// exterior potential dips below the boundary value.
pub fn h_function(a: f64, kappa: f64, tau: f64) -> f64 {
    let z = z_star(a, kappa, tau);
    let a2 = a * a;
    let b = 1.0 - a2;
    let ta2 = tau * a2;
    let t1 = (1.0 - tau) / a * (1.0 + ta2 - (1.0 - ta2) / (1.0 - tau) * kappa / b) * (z - 1.0 / z);
    let t2 = 2.0
        * ((1.0 - ta2) * kappa / a2 + kappa * kappa / (b * b))
        * ((a * z - 1.0).abs() / (z - a).abs()).ln();
    let t3 = 2.0 * (1.0 - tau * tau + (1.0 + ta2) * kappa / a2) * z.ln();
    t1 - t2 - t3
}

/// The unique zero of `H(a, ·)` on `(κ₁, κ_max]`; `κ_max` when `τ = 0`.
pub fn kappa_cri(a: f64, tau: f64) -> Result<f64> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
        });
    }
    if !(0.0..1.0).contains(&tau) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
        });
    }
    let mut hi = kappa_max(a, tau);
    if tau == 0.0 {
        return Ok(hi);
    }
    let mut lo = kappa_one(a, tau);
    let h_lo = h_function(a, lo, tau);
    let h_hi = h_function(a, hi, tau);
    if h_hi == 0.0 {
        return Ok(hi);
    }
    if !(h_lo > 0.0 && h_hi < 0.0) {
        return Err(Error::Bracket("kappa_cri"));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let h = h_function(a, mid, tau);
        if h > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let mid = 0.5 * (lo + hi);
    // one secant-style Newton polish, kept only if it stays in the bracket
    let step = 1e-7 * hi;
    let dh = (h_function(a, mid + step, tau) - h_function(a, mid - step, tau)) / (2.0 * step);
    let newton = mid - h_function(a, mid, tau) / dh;
    if newton.is_finite() && newton > lo && newton < hi {
        Ok(newton)
    } else {
        Ok(mid)
    }
}

/// A critical point `ζ = f(z)` of the exterior potential together with its preimage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    /// Preimage under `f`, outside the unit disc.
    pub z: Complex,
    /// The critical point itself.
    pub zeta: Complex,
}

/// Critical points of the exterior potential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoints {
    /// The real critical point `ζ_* = f(z_*)`, always to the right of `p`.
    pub real_point: CriticalPoint,
    /// The non-real conjugate pair, present when `κ₁ < κ < κ_max`.
    pub conjugate_pair: Option<[CriticalPoint; 2]>,
}

/// Locates the critical points for the map with parameters `cp`.
pub fn critical_points(cp: &ConformalParams, tau: f64) -> CriticalPoints {
    let (a, kappa) = (cp.a(), cp.kappa());
    let map = ConformalMap::new(*cp, tau);
    let zr = Complex::new(z_star(a, kappa, tau), 0.0);
    let real_point = CriticalPoint {
        z: zr,
        zeta: map.eval(zr),
    };
    CriticalPoints {
        real_point,
        conjugate_pair: conjugate_pair(&map, a, kappa, tau),
    }
}

fn conjugate_pair(map: &ConformalMap, a: f64, kappa: f64, tau: f64) -> Option<[CriticalPoint; 2]> {
    if tau < TAU_EPS || !(kappa > kappa_one(a, tau) && kappa < kappa_max(a, tau)) {
        return None;
    }
    let cos2 = (1.0 + tau) / (4.0 * tau) * (1.0 + tau - kappa / (1.0 - a * a));
    if !(cos2 > 0.0 && cos2 < 1.0) {
        return None;
    }
    let cos = cos2.sqrt();
    let q = (1.0 + tau * a * a) * cos / (a * (1.0 + tau));
    if q <= 1.0 {
        return None;
    }
    let r = q + (q * q - 1.0).sqrt();
    let theta = cos.acos();
    let z = Complex::from_polar(r, theta);
    let upper = CriticalPoint {
        z,
        zeta: map.eval(z),
    };
    let lower = CriticalPoint {
        z: z.conj(),
        zeta: upper.zeta.conj(),
    };
    Some([upper, lower])
}
