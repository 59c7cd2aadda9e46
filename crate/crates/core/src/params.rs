//! Parameter types and the closed-form special values they determine.

// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// The physical triple `(p, c, τ)` defining the potential.
///
/// `p` is the location of the point charge on the real axis, `c` its
/// strength, measured per eigenvalue, and `τ` the non-Hermiticity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    p: f64,
    c: f64,
    tau: f64,
}

impl ModelParams {
    /// Validates `p ≥ 0`, `c ≥ 0` and `0 ≤ τ < 1`.
    pub fn new(p: f64, c: f64, tau: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
            });
        }
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c,
            });
        }
        if !(tau.is_finite() && (0.0..1.0).contains(&tau)) {
            return Err(Error::InvalidParameter {
                name: "tau",
                value: tau,
            });
        }
        Ok(Self { p, c, tau })
    }

    /// Point-charge location.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Point-charge strength.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Non-Hermiticity parameter.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Semi-axes `((1+τ)√(1+c), (1−τ)√(1+c))` of the ellipse `E`.
    pub fn ellipse_axes(&self) -> (f64, f64) {
        let s = (1.0 + self.c).sqrt();
        ((1.0 + self.tau) * s, (1.0 - self.tau) * s)
    }

    /// Radius `√(c(1−τ²))` of the disc `D` centred at `p`.
    pub fn disc_radius(&self) -> f64 {
        (self.c * (1.0 - self.tau * self.tau)).sqrt()
    }
}

/// Parameters `(R, a, κ)` of the exterior conformal map
/// `f(z) = R(z + τ/z − κ/(z−a) − κ/(a(1−τ)))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalParams {
    r: f64,
    a: f64,
    kappa: f64,
}

impl ConformalParams {
    /// Validates `R > 0`, `0 < a < 1` and a finite `κ`.
    pub fn new(r: f64, a: f64, kappa: f64) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameter {
                name: "R",
                value: r,
            });
        }
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::InvalidParameter {
                name: "a",
                value: a,
            });
        }
        if !kappa.is_finite() {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
            });
        }
        Ok(Self { r, a, kappa })
    }

    /// Conformal radius.
    pub fn r(&self) -> f64 {
        self.r
    }

    /// Preimage of the point charge is `1/a`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// Residue strength of the pole at `a`.
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

/// Lower end of the univalence interval, `−(1−τ)(1−a)²`.
pub fn kappa_min(a: f64, tau: f64) -> f64 {
    -(1.0 - tau) * (1.0 - a) * (1.0 - a)
}

/// Upper end of the univalence interval.
pub fn kappa_max(a: f64, tau: f64) -> f64 {
    let ta2 = tau * a * a;
    let q = (1.0 - ta2) / (1.0 + ta2);
    q * q * (1.0 + tau) * (1.0 - a * a)
}

/// Threshold above which two non-real critical points appear, `(1−τ)²(1−a²)/(1+τ)`.
pub fn kappa_one(a: f64, tau: f64) -> f64 {
    (1.0 - tau) * (1.0 - tau) * (1.0 - a * a) / (1.0 + tau)
}

/// The point `(c_tri, p_tri)` where all three regimes meet.
///
/// As `τ → 0` the triple point escapes to `c → ∞`, `p → 0`, so `τ = 0` is rejected.
pub fn triple_point(tau: f64) -> Result<(f64, f64)> {
    if !(tau > 0.0 && tau < 1.0) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
        });
    }
    let d = 3.0 + tau * tau;
    let c = (1.0 - tau).powi(3) / (2.0 * tau * d);
    let p = 2.0 * (2.0 * tau * (1.0 + tau) / d).sqrt();
    Ok((c, p))
}

/// Largest `p` for which `(p, c, τ)` is in Regime I, or `None` when no
/// `p ≥ 0` qualifies (`c > (1−τ)/(2τ)`).
pub fn regime1_max_p(c: f64, tau: f64) -> Option<f64> {
    if tau == 0.0 {
        return Some((1.0 + c).sqrt() - c.sqrt());
    }
    let c_tri = (1.0 - tau).powi(3) / (2.0 * tau * (3.0 + tau * tau));
    if c <= c_tri {
        Some(tangency_branch(c, tau))
    } else if 2.0 * tau * c <= 1.0 - tau {
        Some(
            2.0 * (tau * (1.0 - tau - 2.0 * c * tau) / (1.0 - tau))
                .max(0.0)
                .sqrt(),
        )
    } else {
        None
    }
}

/// `(1+τ)√(1+c) − √(c(1−τ²))`: the disc touches the ellipse at its rightmost point.
pub(crate) fn tangency_branch(c: f64, tau: f64) -> f64 {
    (1.0 + tau) * (1.0 + c).sqrt() - (c * (1.0 - tau * tau)).sqrt()
}
