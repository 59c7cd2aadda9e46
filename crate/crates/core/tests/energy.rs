use droplet_core::oracle::{log_energy_numeric, u_gap_numeric};
use droplet_core::*;
use proptest::prelude::*;

#[test]
fn charge_free_energy() {
    for tau in [0.0, 0.3, 0.7] {
        let r = energy(&ModelParams::new(0.4, 0.0, tau).unwrap()).unwrap();
        assert!((r.energy - 0.75).abs() < 1e-14);
        assert!(r.moments_coeff.abs() < 1e-14);
    }
}

#[test]
fn two_component_energy_is_unsupported() {
    let params = ModelParams::new(1.0, 0.4, 0.5).unwrap();
    assert!(matches!(energy(&params), Err(Error::UnsupportedRegime)));
    assert!(moments_coeff(1.0, 0.4, 0.5).is_err());
}

#[test]
fn closed_forms_match_quadrature_oracle() {
    for (p, c, tau) in [(0.3, 0.4, 0.5), (2.0, 1.0, 0.0)] {
        let params = ModelParams::new(p, c, tau).unwrap();
        let d = build_droplet(&params, &classify(&params)).unwrap();
        let closed = energy(&params).unwrap().energy;
        let numeric = log_energy_numeric(&params, &d, 0.02);
        assert!(
            (closed - numeric).abs() < 1e-3,
            "{p} {c} {tau}: {closed} vs {numeric}"
        );
    }
}

#[test]
fn gap_matches_numeric_potential() {
    let params = ModelParams::new(2.0, 1.0, 0.3).unwrap();
    let cl = classify(&params);
    let cp = cl.conformal.unwrap();
    let d = build_droplet(&params, &cl).unwrap();
    for zeta in [
        Complex::new(-2.0, 0.5),
        Complex::new(0.3, 1.5),
        Complex::new(2.4, -0.3),
    ] {
        let exact = u_gap(zeta, &params, &cp).unwrap();
        let numeric = u_gap_numeric(zeta, &params, &d);
        assert!(
            (exact - numeric).abs() < 1e-3,
            "{zeta}: {exact} vs {numeric}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_splits_into_robin_and_potential(p in 0.0f64..3.0, c in 0.0f64..2.0, tau in 0.0f64..0.9) {
        let params = ModelParams::new(p, c, tau).unwrap();
        if let Ok(r) = energy(&params) {
            prop_assert!((r.energy - r.robin - 0.5 * r.potential_integral).abs() < 1e-12 * (1.0 + r.energy.abs()));
            prop_assert!((r.moments_coeff - (0.75 - r.energy)).abs() < 1e-12);
            let k = moments_coeff(p, c, tau).unwrap();
            prop_assert!((k - (0.75 - r.energy)).abs() < 1e-12 * (1.0 + k.abs()));
        }
    }

    #[test]
    fn gap_is_nonnegative_outside(a in 0.1f64..0.9, t in 0.05f64..0.9, tau in 0.0f64..0.8,
                                  r in 1.001f64..4.0, th in 0.0f64..std::f64::consts::TAU) {
        let kappa = t * kappa_cri(a, tau).unwrap();
        let (c, p) = forward_map(a, kappa, tau).unwrap();
        let params = ModelParams::new(p, c, tau).unwrap();
        let cp = classify(&params).conformal.unwrap();
        let zeta = ConformalMap::new(cp, tau).eval(Complex::from_polar(r, th));
        prop_assert!(u_gap(zeta, &params, &cp).unwrap() >= -1e-9);
    }
}
