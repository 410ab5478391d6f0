//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Run with `cargo test --release -p dbubble --test acceptance`. Exits non-zero
//! if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dbubble::sweep::{heatmap_svg, run_sweep, SweepOptions, YELLOW};
use dbubble_core::certificate::{parallelogram_certificate, region_monotone, shifted_curves};
use dbubble_core::constructors::{construct, construct_equal, round_square};
use dbubble_core::continuous::{alpha0, branch_value, ceil_rho_cont, rho_cont, Regime};
use dbubble_core::oracle::{exact_min, family_min, ExactError, DEFAULT_NODE_BUDGET};
use dbubble_core::polyomino::{
    db_perimeter, disconnected_witness, hole_witness, perimeter, rectangle, trim_from, trim_to_volume, CellSet, Side,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// Sub-check results for one criterion.
#[derive(Default)]
struct Checks(Vec<(bool, String)>);

impl Checks {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.0.push((ok, what.into()));
    }

    fn passed(&self) -> bool {
        self.0.iter().all(|(ok, _)| *ok)
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Smallest `k` with `k² >= 48 v`, i.e. `⌈2√(12v)⌉`.
fn ceil_sqrt_48(v: u64) -> u64 {
    let t = 48 * v;
    let mut k = (t as f64).sqrt() as u64;
    while k * k < t {
        k += 1;
    }
    while k > 0 && (k - 1) * (k - 1) >= t {
        k -= 1;
    }
    k
}

fn sharp_small_example(c: &mut Checks) {
    let start = Instant::now();
    let r = exact_min(7, 4, DEFAULT_NODE_BUDGET);
    let elapsed = start.elapsed();
    let ceil = ceil_rho_cont(7, 4).unwrap();
    c.check(ceil == 17, format!("ceil rho_cont(7,4) = {ceil} (expected 17)"));
    match r {
        Ok(r) => {
            c.check(r.exact, "search completed");
            c.check(r.value == 19, format!("exact_min(7,4) = {} (expected 19)", r.value));
            let g = r.value.saturating_sub(ceil);
            c.check(g == 2, format!("gap = {g} (expected 2)"));
        }
        Err(e) => c.check(false, format!("exact_min(7,4) failed: {e}")),
    }
    c.check(elapsed < Duration::from_secs(600), format!("runtime {:.2?} (limit 10 min)", elapsed));
}

fn equal_thirteen(c: &mut Checks) {
    let f = family_min(13, 13).unwrap();
    c.check(f.value == 27, format!("family_min(13,13) = {} (expected 27)", f.value));
    let rho = rho_cont(13.0, 13.0).unwrap();
    c.check((rho - 2.0 * 156f64.sqrt()).abs() < 1e-12, format!("rho_cont(13,13) = {rho:.6} = 2√156"));
    c.check((rho - 24.980).abs() < 1e-3, format!("|rho_cont − 24.980| = {:.2e} (tol 1e-3)", (rho - 24.980).abs()));
    let ceil = ceil_rho_cont(13, 13).unwrap();
    c.check(f.value - ceil == 2, format!("gap = {} (expected 2)", f.value - ceil));
    let start = Instant::now();
    match exact_min(13, 13, DEFAULT_NODE_BUDGET) {
        Ok(r) => c.check(r.value == 27, format!("exhaustive search completed: exact value {} in {:.2?}", r.value, start.elapsed())),
        Err(ExactError::BudgetExceeded(r)) => c.check(
            !r.exact && r.value == f.value,
            format!(
                "exhaustive search stopped after {} nodes ({:.2?}); 27 reported as upper bound",
                r.nodes_explored,
                start.elapsed()
            ),
        ),
        Err(e) => c.check(false, format!("exact_min(13,13) failed: {e}")),
    }
}

fn upper_bound_sweep(c: &mut Checks) {
    let start = Instant::now();
    let mut pairs = 0;
    let mut violations = Vec::new();
    for n in 1..=500u64 {
        for m in 1..=n / 2 {
            pairs += 1;
            let ok = construct(n, m).ok().and_then(|k| {
                let report = db_perimeter(&k.config).ok()?;
                let volumes = k.config.volumes() == (n as usize, m as usize);
                Some(volumes && report.rho_db == k.rho_db && k.rho_db <= ceil_rho_cont(n, m).ok()? + 2)
            });
            if ok != Some(true) {
                violations.push((n, m));
            }
        }
    }
    let elapsed = start.elapsed();
    c.check(violations.is_empty(), format!("{pairs} pairs, {} violations {:?}", violations.len(), &violations[..violations.len().min(5)]));
    c.check(elapsed < Duration::from_secs(60), format!("runtime {:.2?} (limit 1 min)", elapsed));
}

fn lower_bound_small(c: &mut Checks) {
    let mut pairs = 0;
    let mut violations = Vec::new();
    for s in 2..=10u64 {
        for m in 1..s {
            let n = s - m;
            pairs += 1;
            let ceil = ceil_rho_cont(n.max(m), n.min(m)).unwrap();
            match exact_min(n, m, DEFAULT_NODE_BUDGET) {
                Ok(r) if r.value >= ceil => {}
                _ => violations.push((n, m)),
            }
        }
    }
    c.check(violations.is_empty(), format!("{pairs} ordered pairs with n+m <= 10, violations {violations:?}"));
}

fn equal_volume_triples(c: &mut Checks) {
    let mut violations = Vec::new();
    for v in 6001..=7000u64 {
        let budget = ceil_sqrt_48(v) + 1;
        match construct_equal(v as f64, 1) {
            Ok(Some(p)) if p.triple.objective() <= budget && p.construction.config.volumes() == (v as usize, v as usize) => {}
            _ => violations.push(v),
        }
    }
    c.check(violations.is_empty(), format!("V in [6001, 7000]: {} violations {:?}", violations.len(), &violations[..violations.len().min(5)]));
    let budget = ceil_sqrt_48(6000) + 1;
    c.check(budget == 538, format!("⌈2√72000⌉ + 1 = {budget}"));
    match construct_equal(6000.0, 1) {
        Ok(Some(p)) => {
            let t = p.triple;
            c.check(t.objective() <= budget, format!("V=6000 triple ({}, {}, {}) within budget", t.x, t.y, t.z));
            c.check(t.objective() == 538, format!("V=6000 objective {} (expected 538)", t.objective()));
        }
        other => c.check(false, format!("construct_equal(6000, 1) = {other:?}")),
    }
}

fn certificate(c: &mut Checks) {
    let cert = parallelogram_certificate(6000.0);
    c.check(cert.contained && cert.margin > 0.0, format!("contained = {}, margin {:.6}", cert.contained, cert.margin));
    c.check(cert.hits_all_shifts, format!("hits_all_shifts = {}", cert.hits_all_shifts));
    c.check(cert.shift_clearance >= 2e-3, format!("sampled shift clearance {:.3e} at step 1e-3 (required >= 2e-3)", cert.shift_clearance));
    let mono = region_monotone(6000.0, 1e5, 1000);
    c.check(mono, format!("region_monotone(6000, 1e5, 1000) = {mono}"));
    let formula = ((1.0 + 8.0 * 18000f64.sqrt()).sqrt() - 3.0) / 12.0;
    match shifted_curves(6000.0) {
        Ok(rc) => {
            c.check((rc.x_right - 2.4813).abs() <= 1e-3, format!("x_right(6000) = {:.6} (2.4813 ± 1e-3)", rc.x_right));
            c.check((rc.x_right - formula).abs() <= 1e-9, format!("closed form {formula:.6}"));
        }
        Err(e) => c.check(false, format!("shifted_curves(6000) failed: {e}")),
    }
}

fn continuity(c: &mut Checks) {
    let xs: Vec<f64> = (0..100).map(|i| 10f64.powf(3.0 * i as f64 / 99.0)).collect();
    let a0 = alpha0();
    let low_mid = xs
        .iter()
        .map(|&x| (branch_value(Regime::Low, x, a0 * x) - branch_value(Regime::Mid, x, a0 * x)).abs())
        .fold(0.0, f64::max);
    let mid_high = xs
        .iter()
        .map(|&x| (branch_value(Regime::Mid, x, x / 2.0) - branch_value(Regime::High, x, x / 2.0)).abs())
        .fold(0.0, f64::max);
    c.check(low_mid < 1e-6, format!("max jump at α₀ over 100 X in [1, 1e3]: {low_mid:.2e} (tol 1e-6)"));
    c.check(mid_high < 1e-12, format!("max jump at 1/2: {mid_high:.2e} (tol 1e-12)"));
}

fn rounding_and_trimming(c: &mut Checks) {
    let mut bad = None;
    for v in 1..=1_000_000u64 {
        let r = round_square(v).unwrap();
        if r.area() < v || r.perimeter() as f64 > 4.0 * (v as f64).sqrt() + 2.0 + 1e-9 {
            bad = Some(v);
            break;
        }
    }
    c.check(bad.is_none(), format!("round_square for V <= 1e6: first violation {bad:?}"));

    let mut runner =
        TestRunner::new_with_rng(Config { cases: 10_000, failure_persistence: None, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let strategy = (1u32..30, 1u32..30, 0.0f64..1.0, proptest::option::of((1u32..30, 1u32..30)), any::<bool>());
    let result = runner.run(&strategy, |(w, h, frac, corner, right)| {
        let shape = rectangle(0, 0, w, h);
        let protected: CellSet = match corner {
            Some((cw, ch)) => rectangle((w - cw.min(w)) as i32, (h - ch.min(h)) as i32, cw.min(w), ch.min(h)),
            None => CellSet::new(),
        };
        let lo = protected.len().max(1);
        let target = lo + ((shape.len() - lo) as f64 * frac) as usize;
        let trimmed = if right && protected.is_empty() {
            trim_from(&shape, target, &protected, Side::Right)
        } else {
            trim_to_volume(&shape, target, &protected)
        }
        .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(trimmed.len(), target);
        prop_assert!(protected.is_subset(&trimmed));
        prop_assert!(perimeter(&trimmed) <= perimeter(&shape));
        prop_assert!(disconnected_witness(&trimmed).is_none() && hole_witness(&trimmed).is_none());
        Ok(())
    });
    c.check(result.is_ok(), format!("trimming on 10^4 random rectangles: {}", result.err().map_or("no counterexample".into(), |e| e.to_string())));
}

fn heatmap(c: &mut Checks) {
    // (7,4) has n + m = 11, so the sweep reaches one diagonal further to contain it.
    let opts = SweepOptions { exact_limit: 11, node_budget: DEFAULT_NODE_BUDGET, exact_only: true };
    let rows: Vec<_> = match run_sweep(10, 5, &opts, &|_, _| None) {
        Ok(r) => r.into_iter().map(|(row, _)| row).filter(|r| r.n + r.m <= 11).collect(),
        Err(e) => return c.check(false, format!("sweep failed: {e}")),
    };
    let bad: Vec<_> = rows.iter().filter(|r| !r.exact || !matches!(r.gap, Some(0..=2))).map(|r| (r.n, r.m)).collect();
    c.check(bad.is_empty(), format!("{} cells, all exact with gap in {{0,1,2}}; offending {bad:?}", rows.len()));
    let svg = heatmap_svg(&rows);
    c.check(svg.matches("<rect").count() == rows.len(), "one rect per cell");
    let cell = svg.lines().find(|l| l.contains(r#"data-n="7" data-m="4""#)).unwrap_or("");
    let gap = rows.iter().find(|r| (r.n, r.m) == (7, 4)).and_then(|r| r.gap);
    c.check(cell.contains(&format!(r#"fill="{YELLOW}""#)), format!("(7,4) cell yellow: gap {gap:?}"));
}

fn main() -> ExitCode {
    let criteria: [(&str, fn(&mut Checks)); 9] = [
        ("sharp gap at (7,4)", sharp_small_example),
        ("equal volumes (13,13)", equal_thirteen),
        ("upper bound sweep n <= 500, m/n <= 1/2", upper_bound_sweep),
        ("lower bound n+m <= 10", lower_bound_small),
        ("equal-volume integer triples", equal_volume_triples),
        ("parallelogram certificate at n = 6000", certificate),
        ("continuity at regime boundaries", continuity),
        ("rounding and trimming properties", rounding_and_trimming),
        ("gap heatmap n+m <= 11", heatmap),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let mut checks = Checks::default();
        let start = Instant::now();
        run(&mut checks);
        let ok = checks.passed();
        failed += usize::from(!ok);
        println!("criterion {}: {} {name} ({:.2?})", i + 1, verdict(ok), start.elapsed());
        for (ok, what) in &checks.0 {
            println!("    [{}] {what}", verdict(*ok));
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
