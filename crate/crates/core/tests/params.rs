use droplet_core::*;
use proptest::prelude::*;

#[test]
fn triple_point_at_one_third() {
    let (c, p) = triple_point(1.0 / 3.0).unwrap();
    assert!((c - 1.0 / 7.0).abs() < 1e-12);
    assert!((p - 2.0 * 14f64.sqrt() / 7.0).abs() < 1e-12);
}

#[test]
fn regime_one_edges_at_one_third() {
    let tau = 1.0 / 3.0;
    let b1 = regime1_max_p(1.0 / 14.0, tau).unwrap();
    assert!((b1 - 2.0 * 7f64.sqrt() * (30f64.sqrt() - 1.0) / 21.0).abs() < 1e-10);
    let b2 = regime1_max_p(3.0 / 7.0, tau).unwrap();
    assert!((b2 - 4.0 / 21f64.sqrt()).abs() < 1e-10);
}

#[test]
fn disc_too_large_has_no_regime_one() {
    assert!(regime1_max_p(2.0, 0.5).is_none());
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(ModelParams::new(-0.1, 0.4, 0.5).is_err());
    assert!(ModelParams::new(0.1, -0.4, 0.5).is_err());
    assert!(ModelParams::new(0.1, 0.4, 1.0).is_err());
    assert!(ModelParams::new(f64::NAN, 0.4, 0.5).is_err());
    assert!(ConformalParams::new(1.0, 1.0, 0.1).is_err());
    assert!(ConformalParams::new(-1.0, 0.5, 0.1).is_err());
}

proptest! {
    #[test]
    fn kappa_ordering(a in 0.01f64..0.99, tau in 0.01f64..0.99) {
        let b = kappa_bounds(a, tau).unwrap();
        prop_assert!(b.min < 0.0);
        prop_assert!(b.min < b.one && b.one < b.max);
        prop_assert!(b.cri <= b.max * (1.0 + 1e-12));
        prop_assert!(b.cri > 0.0);
    }

    #[test]
    fn regime_one_edge_is_inside_ellipse(c in 0.001f64..1.0, tau in 0.0f64..0.95) {
        if let Some(pmax) = regime1_max_p(c, tau) {
            let inside = ModelParams::new(pmax * 0.999, c, tau).unwrap();
            prop_assert!(in_regime1(&inside) || pmax * 0.001 < 1e-12);
            let outside = ModelParams::new(pmax * 1.001 + 1e-9, c, tau).unwrap();
            prop_assert!(!in_regime1(&outside));
        }
    }
}
