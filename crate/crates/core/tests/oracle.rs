use std::collections::BTreeSet;

use dbubble_core::constructors::construct;
use dbubble_core::continuous::ceil_rho_cont;
use dbubble_core::oracle::{exact_min, family_min, DEFAULT_NODE_BUDGET};
use dbubble_core::polyomino::{canonical_form, db_perimeter, is_valid, measure, Cell, CellSet, LatticeConfig};

/// All fixed polyominoes of `size` cells, translated to the origin.
fn fixed_polyominoes(size: usize) -> Vec<CellSet> {
    let normalize = |s: &CellSet| -> CellSet {
        let x0 = s.iter().map(|c| c.x).min().unwrap();
        let y0 = s.iter().map(|c| c.y).min().unwrap();
        s.iter().map(|c| Cell::new(c.x - x0, c.y - y0)).collect()
    };
    let mut level: BTreeSet<CellSet> = [[Cell::new(0, 0)].into_iter().collect()].into_iter().collect();
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for shape in &level {
            for c in shape {
                for nb in c.neighbors() {
                    if !shape.contains(&nb) {
                        let mut grown = shape.clone();
                        grown.insert(nb);
                        next.insert(normalize(&grown));
                    }
                }
            }
        }
        level = next;
    }
    level.into_iter().collect()
}

/// Independent minimum: every pair of shapes at every offset that keeps the
/// bubbles disjoint and within one cell of touching.
fn brute_force(n: usize, m: usize) -> u64 {
    let big = fixed_polyominoes(n);
    let small = fixed_polyominoes(m);
    let mut best = u64::MAX;
    for a in &big {
        let aw = a.iter().map(|c| c.x).max().unwrap();
        let ah = a.iter().map(|c| c.y).max().unwrap();
        for b in &small {
            let bw = b.iter().map(|c| c.x).max().unwrap();
            let bh = b.iter().map(|c| c.y).max().unwrap();
            for dx in -(bw + 2)..=(aw + 2) {
                for dy in -(bh + 2)..=(ah + 2) {
                    let moved: CellSet = b.iter().map(|c| Cell::new(c.x + dx, c.y + dy)).collect();
                    if moved.iter().any(|c| a.contains(c)) {
                        continue;
                    }
                    let config = LatticeConfig::from_sets(a.clone(), moved);
                    if is_valid(&config) {
                        best = best.min(measure(&config).rho_db);
                    }
                }
            }
        }
    }
    best
}

#[test]
fn polyomino_counts() {
    let counts: Vec<usize> = (1..=6).map(|k| fixed_polyominoes(k).len()).collect();
    assert_eq!(counts, [1, 2, 6, 19, 63, 216]);
}

#[test]
fn exact_matches_brute_force() {
    for total in 2..=8usize {
        for m in 1..=total / 2 {
            let n = total - m;
            let r = exact_min(n as u64, m as u64, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(r.value, brute_force(n, m), "({n}, {m})");
        }
    }
}

#[test]
fn sharp_pair_brute_force() {
    let r = exact_min(7, 4, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(r.value, brute_force(7, 4));
    assert_eq!(r.value, 17);
}

#[test]
fn sandwich() {
    for total in 2..=14u64 {
        for m in 1..=total / 2 {
            let n = total - m;
            let ceil = ceil_rho_cont(n, m).unwrap();
            let exact = exact_min(n, m, DEFAULT_NODE_BUDGET).unwrap();
            let family = family_min(n, m).unwrap();
            let built = construct(n, m).unwrap();
            assert!(exact.exact);
            assert!(ceil <= exact.value, "({n}, {m})");
            assert!(exact.value <= family.value, "({n}, {m})");
            assert!(family.value <= built.rho_db, "({n}, {m})");
            assert!(exact.value <= ceil + 2, "({n}, {m})");
        }
    }
}

#[test]
fn symmetric_in_arguments() {
    for (n, m) in [(5, 3), (9, 2), (6, 6), (8, 5)] {
        let a = exact_min(n, m, DEFAULT_NODE_BUDGET).unwrap();
        let b = exact_min(m, n, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(canonical_form(&a.config.swapped()), canonical_form(&b.config));
        assert_eq!(b.config.volumes(), (m as usize, n as usize));
    }
}

#[test]
fn witnesses_remeasure() {
    for (n, m) in [(1, 1), (2, 1), (7, 4), (9, 4), (6, 5), (10, 3)] {
        let r = exact_min(n, m, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(r.config.volumes(), (n as usize, m as usize));
        assert_eq!(db_perimeter(&r.config).unwrap().rho_db, r.value);
        assert_eq!(canonical_form(&r.config), r.config);
    }
}

#[test]
fn deterministic() {
    let a = exact_min(8, 5, DEFAULT_NODE_BUDGET).unwrap();
    let b = exact_min(8, 5, DEFAULT_NODE_BUDGET).unwrap();
    assert_eq!(a, b);
    assert_eq!(family_min(13, 13).unwrap(), family_min(13, 13).unwrap());
}

#[test]
fn family_bounds_constructor_widely() {
    for n in 1..=60u64 {
        for m in 1..=n {
            let f = family_min(n, m).unwrap();
            let c = construct(n, m).unwrap();
            assert!(f.value <= c.rho_db);
            assert!(f.value >= ceil_rho_cont(n, m).unwrap());
        }
    }
}

#[test]
fn family_attains_exact_on_small_volumes() {
    for s in 2..=14u64 {
        for m in 1..=s / 2 {
            let n = s - m;
            let e = exact_min(n, m, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(family_min(n, m).unwrap().value, e.value, "({n},{m})");
        }
    }
}
