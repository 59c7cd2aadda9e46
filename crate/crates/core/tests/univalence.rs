use droplet_core::*;
use proptest::prelude::*;

fn injective_on_samples(a: f64, kappa: f64, tau: f64) -> bool {
    let r = geometry::solve_r(a, kappa, tau).unwrap();
    let map = ConformalMap::new(ConformalParams::new(r, a, kappa).unwrap(), tau);
    let poly = map.sample_boundary(2048).points();
    !geometry::self_intersects(&poly)
}

#[test]
fn injective_and_folded_maps() {
    let (a, tau) = (0.7, 0.3);
    assert!(is_univalent(a, 0.1, tau, 256));
    assert!(injective_on_samples(a, 0.1, tau));
    assert!(!is_univalent(a, 0.45, tau, 256));
    assert!(!injective_on_samples(a, 0.45, tau));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matches_kappa_interval(a in 0.02f64..0.98, s in -0.2f64..1.2, tau in 0.0f64..0.95) {
        let b = kappa_bounds(a, tau).unwrap();
        let kappa = b.min + s * (b.max - b.min);
        let margin = 1e-6 * (b.max - b.min);
        prop_assume!((kappa - b.min).abs() > margin && (kappa - b.max).abs() > margin);
        prop_assert_eq!(is_univalent(a, kappa, tau, 256), kappa > b.min && kappa < b.max);
    }
}
