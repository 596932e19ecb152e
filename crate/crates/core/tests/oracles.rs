use l2zeta::census::{geodesic_census, series_from_census};
use l2zeta::fixtures;
use l2zeta::zeta::{closed_form_taylor, theta_integral_det, zeta_at, PuData};
use num_complex::Complex64;
use proptest::prelude::*;

#[test]
fn taylor_coefficients_match_census() {
    for (name, g) in [
        ("line", fixtures::line()),
        ("row1", fixtures::table1(1)),
        ("sawtooth", fixtures::sawtooth()),
        ("row4", fixtures::table1(4)),
        ("triladder", fixtures::triladder()),
    ] {
        let p = PuData::from_graph(&g).unwrap();
        let taylor = closed_form_taylor(&p, 8).unwrap_or_else(|e| panic!("{name}: {e}"));
        let series = series_from_census(&geodesic_census(&g, 8).unwrap());
        assert_eq!(taylor, series, "{name}");
    }
}

#[test]
fn graph1_at_five_hundredths() {
    let g = fixtures::table1(1);
    let p = PuData::from_graph(&g).unwrap();
    let u = Complex64::new(0.05, 0.0);
    let z = zeta_at(&p, u).unwrap().value;
    let det = theta_integral_det(&g, u, 4096).unwrap();
    let lhs = z.inv();
    let rhs = (1.0 - u * u).powi(-p.chi as i32) * det;
    assert!((lhs - rhs).norm() / lhs.norm() < 1e-8);
}

fn random_u() -> impl Strategy<Value = Complex64> {
    (0.005f64..0.1, 0.0f64..std::f64::consts::TAU).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]
    #[test]
    fn closed_form_matches_theta_integral(which in 0usize..9, u in random_u()) {
        let (name, g) = fixtures::all().swap_remove(which);
        let p = PuData::from_graph(&g).unwrap();
        let z = zeta_at(&p, u).unwrap();
        prop_assert!(z.in_checked_region, "{} at {}", name, u);
        let det = theta_integral_det(&g, u, 256).unwrap();
        let lhs = z.value.inv();
        let rhs = (1.0 - u * u).powi(-p.chi as i32) * det;
        prop_assert!((lhs - rhs).norm() / lhs.norm() < 1e-8, "{}: {} vs {}", name, lhs, rhs);
    }
}
