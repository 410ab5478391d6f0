use dbubble_core::certificate::{
    convexity_proxy, lattice_witness, parallelogram_certificate, region_monotone, shifted_curves, Parallelogram,
};
use dbubble_core::constructors::construct_equal;

#[test]
fn composition_agrees_with_direct_search() {
    let base = parallelogram_certificate(6000.0);
    assert!(base.contained);
    for big in [7000.0, 1e4, 1e5] {
        assert!(region_monotone(6000.0, big, 1000));
        let direct = parallelogram_certificate(big);
        assert!(direct.contained, "N = {big}");
        assert!(direct.margin >= base.margin);
    }
}

#[test]
fn base_translation_fits_larger_regions() {
    // the parallelogram placed for the base case stays inside every larger region
    let base = parallelogram_certificate(6000.0);
    let t = base.center.x;
    for big in [6500.0, 7000.0, 1e4, 1e5, 1e6] {
        let rc = shifted_curves(big).unwrap();
        let clear = Parallelogram::at(t).corners().iter().map(|&p| rc.clearance(p)).fold(f64::INFINITY, f64::min);
        assert!(clear > 0.0, "N = {big}");
    }
}

#[test]
fn curvature_proxy_holds() {
    for n in [100.0, 250.0, 1000.0, 6000.0, 2e4, 1e5] {
        assert!(convexity_proxy(n, 1e-3), "n = {n}");
    }
}

#[test]
fn algebraic_search_agrees() {
    // 100 volumes spread over (6000, 10000]
    for i in 1..=100u64 {
        let v = 6000 + i * 40;
        let p = construct_equal(v as f64, 1).unwrap();
        assert!(p.is_some(), "V = {v}");
        let cert = parallelogram_certificate(v as f64);
        let w = lattice_witness(v, &cert).unwrap();
        assert!(w.feasible, "V = {v}");
        assert!(p.unwrap().triple.objective() as i64 <= w.objective());
    }
}

#[test]
fn small_regions_fail() {
    for n in [1.0, 10.0, 100.0, 500.0] {
        assert!(!parallelogram_certificate(n).contained, "n = {n}");
    }
}
