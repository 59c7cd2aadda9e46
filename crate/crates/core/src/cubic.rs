//! Roots of complex cubics.

use core::f64::consts::PI;

use crate::Complex;

/// All three roots of `z³ + b z² + c z + d`, with multiplicity.
///
/// Cardano's formula in complex arithmetic, followed by two Newton steps per
/// root to clean up cancellation. The cube-root branch is chosen to maximise
/// `|u|`, which keeps `v = −P/(3u)` well conditioned.
pub fn cubic_roots(b: Complex, c: Complex, d: Complex) -> [Complex; 3] {
    let third = 1.0 / 3.0;
    let shift = b * third;
    // depressed cubic t³ + P t + Q with z = t − b/3
    let p = c - b * b * third;
    let q = b * b * b * (2.0 / 27.0) - b * c * third + d;
    let disc = (q * q * 0.25 + p * p * p / 27.0).sqrt();
    let u3a = -q * 0.5 + disc;
    let u3b = -q * 0.5 - disc;
    let u3 = if u3a.norm() >= u3b.norm() { u3a } else { u3b };
    let omega = Complex::from_polar(1.0, 2.0 * PI / 3.0);
    let mut roots = if u3.norm() == 0.0 {
        // P = Q = 0: triple root
        [Complex::new(0.0, 0.0); 3]
    } else {
        let u = u3.powf(third);
        let v = -p / (3.0 * u);
        let mut t = [Complex::new(0.0, 0.0); 3];
        let mut w = Complex::new(1.0, 0.0);
        for slot in t.iter_mut() {
            *slot = w * u + v / w;
            w *= omega;
        }
        t
    };
    for z in roots.iter_mut() {
        *z -= shift;
        for _ in 0..2 {
            let f = ((*z + b) * *z + c) * *z + d;
            let df = (3.0 * *z + 2.0 * b) * *z + c;
            if df.norm() == 0.0 {
                break;
            }
            let next = *z - f / df;
            let fn_ = ((next + b) * next + c) * next + d;
            if fn_.norm() < f.norm() {
                *z = next;
            } else {
                break;
            }
        }
    }
    roots
}
