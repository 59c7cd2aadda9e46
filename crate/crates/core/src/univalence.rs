//! Univalence of the exterior map via the quadratic Schur–Cohn test.
//!
//! For `|z| > 1`, `f(z) = f(w)` with `w ≠ z` forces `w` to be a root of
//!
//! ```text
//! p_z(w) = z(z−a)w² − ((az+τ)(z−a) − κz)w + aτ(z−a).
//! ```
//!
//! The map is univalent on the exterior disc iff both roots of `p_z` stay in
//! the closed unit disc for every `|z| = 1`. This happens exactly for
//! `κ_min ≤ κ ≤ κ_max`.

use core::f64::consts::PI;

// std in the crate graph (tests, dev builds) shadows these with inherent methods
#[allow(unused_imports)]
use num_traits::Float;

use crate::Complex;

/// Tolerance absorbing rounding at tangency in the Schur–Cohn quantities.
pub const TANGENCY_TOL: f64 = 1e-12;

/// Coefficients of `p_z(w) = a0 + a1 w + a2 w²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PzCoeffs {
    /// Constant term `aτ(z−a)`.
    pub a0: Complex,
    /// Linear term `−((az+τ)(z−a) − κz)`.
    pub a1: Complex,
    /// Leading term `z(z−a)`.
    pub a2: Complex,
}

/// Coefficients of `p_z` for a point `z` on the unit circle.
pub fn pz_coeffs(z: Complex, a: f64, kappa: f64, tau: f64) -> PzCoeffs {
    let za = z - a;
    PzCoeffs {
        a0: a * tau * za,
        a1: -((a * z + tau) * za - kappa * z),
        a2: z * za,
    }
}

/// True iff every root of `a0 + a1 w + a2 w²` lies in the closed unit disc.
///
/// Uses the sign of the second Schur transform when the first one is
/// negative at the origin. The degenerate cases fall back to explicit roots.
pub fn schur_cohn_quadratic(a0: Complex, a1: Complex, a2: Complex) -> bool {
    if a2.norm() == 0.0 {
        if a1.norm() == 0.0 {
            return true;
        }
        return (a0 / a1).norm() <= 1.0 + TANGENCY_TOL;
    }
    let p1 = a0.norm_sqr() - a2.norm_sqr();
    if p1 > TANGENCY_TOL {
        // product of the roots exceeds one in modulus
        return false;
    }
    if p1 >= -TANGENCY_TOL {
        return roots_in_closed_disc(a0, a1, a2);
    }
    let cross = a0.conj() * a1 - a2 * a1.conj();
    let p2 = p1 * p1 - cross.norm_sqr();
    p2 > -TANGENCY_TOL
}

fn roots_in_closed_disc(a0: Complex, a1: Complex, a2: Complex) -> bool {
    let disc = (a1 * a1 - 4.0 * a2 * a0).sqrt();
    // pick the numerically stable pair
    let q = if (a1.conj() * disc).re >= 0.0 {
        -0.5 * (a1 + disc)
    } else {
        -0.5 * (a1 - disc)
    };
    let w1 = q / a2;
    let w2 = if q.norm() == 0.0 {
        Complex::new(0.0, 0.0)
    } else {
        a0 / q
    };
    w1.norm() <= 1.0 + 1e-9 && w2.norm() <= 1.0 + 1e-9
}

/// Points of the unit circle where the univalence inequality is tight at an
/// endpoint of the κ interval: `z = 1` for `κ_min` and the conjugate pair
/// `(a(1+τ) ± i√((1−a²)(1−τ²a²)))/(1+τa²)` for `κ_max`.
pub fn extremal_points(a: f64, tau: f64) -> [Complex; 3] {
    let den = 1.0 + tau * a * a;
    let re = a * (1.0 + tau) / den;
    let im = ((1.0 - a * a) * (1.0 - tau * tau * a * a)).sqrt() / den;
    [
        Complex::new(1.0, 0.0),
        Complex::new(re, im),
        Complex::new(re, -im),
    ]
}

/// Scans `n_samples` points of the unit circle plus the extremal points and
/// reports whether the exterior map is univalent.
pub fn is_univalent(a: f64, kappa: f64, tau: f64, n_samples: usize) -> bool {
    if !(a > 0.0 && a < 1.0) || !kappa.is_finite() {
        return false;
    }
    let passes = |z: Complex| {
        let c = pz_coeffs(z, a, kappa, tau);
        schur_cohn_quadratic(c.a0, c.a1, c.a2)
    };
    extremal_points(a, tau).into_iter().all(passes)
        && (0..n_samples).all(|k| {
            passes(Complex::from_polar(
                1.0,
                2.0 * PI * k as f64 / n_samples as f64,
            ))
        })
}
