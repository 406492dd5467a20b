use euler2c::HillComponent;
use euler2c_web::demo;

#[test]
fn constants_match_closed_forms() {
    let k = demo::constants(0.25).unwrap();
    assert!((k.c_j - (-1.0 - 3f64.sqrt() / 2.0)).abs() < 1e-15);
    assert!(k.c0 < k.c_j);
    let half = demo::constants(0.5).unwrap();
    assert_eq!((half.l, half.c_j), (0.5, -2.0));
    assert!(demo::constants(0.0).is_err());
}

#[test]
fn equal_mass_boundary_is_positively_curved() {
    let flat = demo::hill_curvature(0.5, -2.2, HillComponent::Earth, 200).unwrap();
    assert_eq!(flat.len(), 3 * 200);
    for pt in flat.chunks(3) {
        assert!(pt[2] > 0.0, "kappa {} at ({}, {})", pt[2], pt[0], pt[1]);
    }
}

#[test]
fn heavier_body_boundary_bends_inward_at_critical_energy() {
    let p = demo::constants(0.3).unwrap();
    let flat = demo::hill_curvature(0.3, p.c_j, HillComponent::Earth, 2000).unwrap();
    assert!(flat.chunks(3).any(|pt| pt[2] < 0.0));
}

#[test]
fn verdicts_for_both_regimes() {
    let v = demo::elliptic_verdict(0.5, -2.5, HillComponent::Earth, 24).unwrap();
    assert_eq!((v.theory.as_str(), v.oracle.as_str()), ("Convex", "Convex"));
    assert!(v.min_value > 0.0 && v.samples > 0);

    let v = demo::elliptic_verdict(0.3, -1.9167, HillComponent::Earth, 60).unwrap();
    assert_eq!(v.theory, "NonConvex");
    assert!(v.worst_x.is_finite() && v.worst_y.is_finite());
    assert!(demo::component("sun").is_err());
}
