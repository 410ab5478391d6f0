//! Exhaustive search over all valid configurations.
//!
//! Sliding two disjoint bubbles together until they share an edge never
//! increases the perimeter, so it suffices to enumerate edge-connected unions
//! `U = A ∪ B` and all ways of splitting them. For a split,
//! `ρ_DB = ρ(U) + shared`, and since `shared >= 1`, unions with
//! `ρ(U) + 1` not below the incumbent are skipped; the union's bounding box
//! only grows as cells are added, giving the pruning rule while it is built.
//! Only strict improvements replace the incumbent, which starts at the upper
//! bound's configuration, so the witness is deterministic.
//!
//! Unions are generated as fixed polyominoes (Redelmeier's method), kept only
//! in their least orientation, and splits as connected subsets of the
//! union's adjacency graph, again by Redelmeier's method on the graph.

use alloc::boxed::Box;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{normalize, upper_bound, OracleResult};
use crate::polyomino::{canonical_form, hole_witness, Cell, CellSet, LatticeConfig};
use crate::Error;

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq)]
pub enum ExactError {
    Invalid(Error),
    /// Search stopped early; carries the best configuration found so far with
    /// `exact = false`.
    BudgetExceeded(Box<OracleResult>),
}

impl fmt::Display for ExactError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactError::Invalid(e) => e.fmt(f),
            ExactError::BudgetExceeded(r) => {
                write!(f, "node budget exhausted after {} nodes, best value so far {}", r.nodes_explored, r.value)
            }
        }
    }
}

impl From<Error> for ExactError {
    fn from(e: Error) -> Self {
        ExactError::Invalid(e)
    }
}

struct OutOfBudget;

struct Search {
    size: usize,
    small: usize,
    budget: u64,
    nodes: u64,
    best: u64,
    witness: LatticeConfig,
    // polyomino growth state
    side: i32,
    seen: Vec<bool>,
    cells: Vec<Cell>,
}

impl Search {
    fn tick(&mut self) -> core::result::Result<(), OutOfBudget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(OutOfBudget)
        } else {
            Ok(())
        }
    }

    fn index(&self, c: Cell) -> usize {
        (c.y as usize) * (2 * self.side as usize + 1) + (c.x + self.side) as usize
    }

    /// Cells reachable by the growth: the root row from the root rightwards,
    /// and every row above it.
    fn allowed(&self, c: Cell) -> bool {
        c.y >= 0 && c.y < self.side && c.x > -self.side && c.x < self.side && (c.y > 0 || c.x >= 0)
    }

    fn grow(&mut self, mut untried: Vec<Cell>, bbox: (i32, i32, i32, i32)) -> core::result::Result<(), OutOfBudget> {
        while let Some(c) = untried.pop() {
            self.tick()?;
            let bbox = (bbox.0.min(c.x), bbox.1.min(c.y), bbox.2.max(c.x), bbox.3.max(c.y));
            let semi = (bbox.2 - bbox.0 + 1 + bbox.3 - bbox.1 + 1) as u64;
            if 2 * semi + 1 >= self.best {
                continue;
            }
            self.cells.push(c);
            if self.cells.len() == self.size {
                self.union_found()?;
            } else {
                let mut added = Vec::new();
                for nb in c.neighbors() {
                    if self.allowed(nb) {
                        let i = self.index(nb);
                        if !self.seen[i] {
                            self.seen[i] = true;
                            added.push(nb);
                        }
                    }
                }
                let mut next = untried.clone();
                next.extend_from_slice(&added);
                let r = self.grow(next, bbox);
                for nb in &added {
                    let i = self.index(*nb);
                    self.seen[i] = false;
                }
                r?;
            }
            self.cells.pop();
        }
        Ok(())
    }

    fn union_found(&mut self) -> core::result::Result<(), OutOfBudget> {
        let n = self.size;
        let cells = self.cells.clone();
        let mut adj = vec![0u64; n];
        let mut pairs = 0u64;
        for (i, a) in cells.iter().enumerate() {
            for (j, b) in cells.iter().enumerate() {
                if (a.x - b.x).abs() + (a.y - b.y).abs() == 1 {
                    adj[i] |= 1 << j;
                    if i < j {
                        pairs += 1;
                    }
                }
            }
        }
        let rho_u = 4 * n as u64 - 2 * pairs;
        if rho_u + 1 >= self.best || !least_orientation(&cells) {
            return Ok(());
        }
        let full: u64 = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        for root in 0..n {
            let below = (1u64 << root) - 1;
            let seen = below | (1 << root);
            self.split(&cells, &adj, full, rho_u, 0, 1 << root, seen)?;
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn split(
        &mut self,
        cells: &[Cell],
        adj: &[u64],
        full: u64,
        rho_u: u64,
        chosen: u64,
        mut untried: u64,
        seen: u64,
    ) -> core::result::Result<(), OutOfBudget> {
        while untried != 0 {
            self.tick()?;
            let v = untried.trailing_zeros() as usize;
            untried &= untried - 1;
            let chosen = chosen | (1 << v);
            // cells seen but neither chosen nor pending are already in A
            let settled = seen & !chosen & !untried;
            let wall: u64 = bits(chosen).map(|c| (adj[c] & settled).count_ones() as u64).sum();
            if rho_u + wall >= self.best {
                continue;
            }
            if chosen.count_ones() as usize == self.small {
                self.split_found(cells, adj, full, rho_u, chosen);
            } else {
                let fresh = adj[v] & !seen & full;
                self.split(cells, adj, full, rho_u, chosen, untried | fresh, seen | fresh)?;
            }
        }
        Ok(())
    }

    fn split_found(&mut self, cells: &[Cell], adj: &[u64], full: u64, rho_u: u64, b: u64) {
        let a = full & !b;
        let shared: u64 = bits(b).map(|v| (adj[v] & a).count_ones() as u64).sum();
        let value = rho_u + shared;
        if value >= self.best || !mask_connected(adj, a) {
            return;
        }
        let a_set: CellSet = bits(a).map(|i| cells[i]).collect();
        let b_set: CellSet = bits(b).map(|i| cells[i]).collect();
        if hole_witness(&a_set).is_some() || hole_witness(&b_set).is_some() {
            return;
        }
        self.best = value;
        self.witness = canonical_form(&LatticeConfig::from_sets(a_set, b_set));
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn mask_connected(adj: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let mut reached = 1u64 << mask.trailing_zeros();
    loop {
        let grown = bits(reached).fold(reached, |acc, v| acc | (adj[v] & mask));
        if grown == reached {
            return reached == mask;
        }
        reached = grown;
    }
}

/// Whether `cells` is lexicographically least among its eight images, each
/// translated to the origin.
fn least_orientation(cells: &[Cell]) -> bool {
    let key = |f: &dyn Fn(Cell) -> (i32, i32)| {
        let mut v: Vec<(i32, i32)> = cells.iter().map(|&c| f(c)).collect();
        let x0 = v.iter().map(|p| p.0).min().unwrap_or(0);
        let y0 = v.iter().map(|p| p.1).min().unwrap_or(0);
        for p in &mut v {
            *p = (p.1 - y0, p.0 - x0);
        }
        v.sort_unstable();
        v
    };
    let own = key(&|c| (c.x, c.y));
    let images: [&dyn Fn(Cell) -> (i32, i32); 7] = [
        &|c| (-c.y, c.x),
        &|c| (-c.x, -c.y),
        &|c| (c.y, -c.x),
        &|c| (-c.x, c.y),
        &|c| (c.x, -c.y),
        &|c| (c.y, c.x),
        &|c| (-c.y, -c.x),
    ];
    images.iter().all(|f| own <= key(*f))
}

/// Minimum double-bubble perimeter over every valid configuration with
/// `|A| = n`, `|B| = m`, with a witness in canonical form.
///
/// The incumbent starts at the smaller of the family search and the
/// constructor. `node_budget` caps the number of search nodes.
pub fn exact_min(n: u64, m: u64, node_budget: u64) -> core::result::Result<OracleResult, ExactError> {
    let (big, small, swapped) = normalize(n, m);
    if small == 0 || big + small > 64 {
        return Err(Error::InvalidVolumes { large: big as f64, small: small as f64 }.into());
    }
    let seed = upper_bound(big, small)?;
    let size = (big + small) as usize;
    let side = size as i32;
    let mut search = Search {
        size,
        small: small as usize,
        budget: node_budget,
        nodes: 0,
        best: seed.value,
        witness: canonical_form(&seed.config),
        side,
        seen: vec![false; (2 * side as usize + 1) * side as usize],
        cells: Vec::with_capacity(size),
    };
    let root = Cell::new(0, 0);
    let i = search.index(root);
    search.seen[i] = true;
    let outcome = search.grow(vec![root], (0, 0, 0, 0));

    let orient = |config: LatticeConfig| if swapped { canonical_form(&config.swapped()) } else { config };
    let nodes = search.nodes;
    let exact = outcome.is_ok();
    let (value, config) = (search.best, search.witness);
    let result = OracleResult { n, m, value, config: orient(config), exact, nodes_explored: nodes };
    if exact {
        Ok(result)
    } else {
        Err(ExactError::BudgetExceeded(Box::new(result)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyomino::{db_perimeter, rectangle};

    fn exact(n: u64, m: u64) -> OracleResult {
        exact_min(n, m, DEFAULT_NODE_BUDGET).unwrap()
    }

    #[test]
    fn tiny_values() {
        let r = exact(1, 1);
        assert_eq!(r.value, 7);
        assert!(r.exact);
        assert_eq!(r.config, LatticeConfig::new([Cell::new(0, 0)], [Cell::new(1, 0)]));
        assert_eq!(exact(2, 1).value, 9);
        assert_eq!(exact(2, 2).value, 10);
    }

    #[test]
    fn meets_ceiling_at_seven_four() {
        // a 3 × 4 block missing one corner: L of seven cells under a 2 × 2 square
        let r = exact(7, 4);
        assert_eq!(r.value, 17);
        assert_eq!(r.config.volumes(), (7, 4));
        let report = db_perimeter(&r.config).unwrap();
        assert_eq!((report.rho_a, report.rho_b, report.shared, report.rho_db), (12, 8, 3, 17));
    }

    #[test]
    fn argument_order() {
        let r = exact(4, 7);
        assert_eq!(r.value, 17);
        assert_eq!(r.config.volumes(), (4, 7));
        assert_eq!(exact(1, 2).value, 9);
    }

    #[test]
    fn budget_exceeded_keeps_upper_bound() {
        match exact_min(8, 5, 50) {
            Err(ExactError::BudgetExceeded(r)) => {
                assert!(!r.exact);
                assert_eq!(r.value, crate::oracle::upper_bound(8, 5).unwrap().value);
                assert_eq!(r.config.volumes(), (8, 5));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_volumes() {
        assert!(matches!(exact_min(3, 0, 10), Err(ExactError::Invalid(_))));
    }

    #[test]
    fn orientation_filter() {
        // exactly one of the four rotations of an L tromino is least
        let mut shape = vec![Cell::new(0, 0), Cell::new(1, 0), Cell::new(0, 1)];
        let mut passing = 0;
        for _ in 0..4 {
            passing += least_orientation(&shape) as usize;
            shape = shape.iter().map(|c| Cell::new(-c.y, c.x)).collect();
        }
        assert_eq!(passing, 1);
        let bar: Vec<Cell> = rectangle(0, 0, 3, 1).into_iter().collect();
        let column: Vec<Cell> = rectangle(0, 0, 1, 3).into_iter().collect();
        assert_ne!(least_orientation(&bar), least_orientation(&column));
    }
}
