//! Two-bubble configurations as sets of unit cells.
//!
//! A cell `(x, y)` is the closed square `[x, x+1] × [y, y+1]`. Every set whose
//! boundary lies on grid lines is a finite union of such cells, so a
//! configuration is just two disjoint cell sets.

mod render;

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

pub use render::{render, RenderFormat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub x: i32,
    pub y: i32,
}

impl Cell {
    pub const fn new(x: i32, y: i32) -> Self {
        Cell { x, y }
    }

    pub fn neighbors(self) -> [Cell; 4] {
        let Cell { x, y } = self;
        [Cell::new(x + 1, y), Cell::new(x - 1, y), Cell::new(x, y + 1), Cell::new(x, y - 1)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bubble {
    A,
    B,
}

impl Bubble {
    pub fn label(self) -> char {
        match self {
            Bubble::A => 'A',
            Bubble::B => 'B',
        }
    }
}

pub type CellSet = BTreeSet<Cell>;

/// Cells of `w × h` rectangle with lower-left cell `(x0, y0)`.
pub fn rectangle(x0: i32, y0: i32, w: u32, h: u32) -> CellSet {
    let mut cells = CellSet::new();
    for dx in 0..w as i32 {
        for dy in 0..h as i32 {
            cells.insert(Cell::new(x0 + dx, y0 + dy));
        }
    }
    cells
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LatticeConfig {
    a: CellSet,
    b: CellSet,
}

impl LatticeConfig {
    pub fn new(a: impl IntoIterator<Item = Cell>, b: impl IntoIterator<Item = Cell>) -> Self {
        LatticeConfig { a: a.into_iter().collect(), b: b.into_iter().collect() }
    }

    pub fn from_sets(a: CellSet, b: CellSet) -> Self {
        LatticeConfig { a, b }
    }

    pub fn a(&self) -> &CellSet {
        &self.a
    }

    pub fn b(&self) -> &CellSet {
        &self.b
    }

    pub fn cells(&self, bubble: Bubble) -> &CellSet {
        match bubble {
            Bubble::A => &self.a,
            Bubble::B => &self.b,
        }
    }

    pub fn volumes(&self) -> (usize, usize) {
        (self.a.len(), self.b.len())
    }

    pub fn bubble_at(&self, cell: Cell) -> Option<Bubble> {
        if self.a.contains(&cell) {
            Some(Bubble::A)
        } else if self.b.contains(&cell) {
            Some(Bubble::B)
        } else {
            None
        }
    }

    /// Same configuration with the labels of the two bubbles exchanged.
    pub fn swapped(&self) -> Self {
        LatticeConfig { a: self.b.clone(), b: self.a.clone() }
    }

    /// `(min_x, min_y, max_x, max_y)` over both bubbles.
    pub fn bounding_box(&self) -> Option<(i32, i32, i32, i32)> {
        bounding_box(self.a.iter().chain(self.b.iter()))
    }

    pub fn into_sets(self) -> (CellSet, CellSet) {
        (self.a, self.b)
    }
}

pub(crate) fn bounding_box<'a>(cells: impl Iterator<Item = &'a Cell>) -> Option<(i32, i32, i32, i32)> {
    cells.fold(None, |acc, c| {
        Some(match acc {
            None => (c.x, c.y, c.x, c.y),
            Some((x0, y0, x1, y1)) => (x0.min(c.x), y0.min(c.y), x1.max(c.x), y1.max(c.y)),
        })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Violation {
    Overlap(Cell),
    Empty(Bubble),
    /// `cell` is not edge-connected to the rest of the bubble.
    Disconnected { bubble: Bubble, cell: Cell },
    /// `cell` lies outside the bubble but is enclosed by it.
    Hole { bubble: Bubble, cell: Cell },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Overlap(c) => write!(f, "overlap at ({}, {})", c.x, c.y),
            Violation::Empty(b) => write!(f, "bubble {} is empty", b.label()),
            Violation::Disconnected { bubble, cell } => {
                write!(f, "bubble {} is not connected, ({}, {}) unreachable", bubble.label(), cell.x, cell.y)
            }
            Violation::Hole { bubble, cell } => {
                write!(f, "bubble {} is not simply connected, hole at ({}, {})", bubble.label(), cell.x, cell.y)
            }
        }
    }
}

/// First cell (in set order) not edge-reachable from the smallest cell.
pub fn disconnected_witness(cells: &CellSet) -> Option<Cell> {
    let (x0, y0, x1, _) = bounding_box(cells.iter())?;
    let w = (x1 - x0 + 1) as usize;
    let idx = |c: &Cell| (c.y - y0) as usize * w + (c.x - x0) as usize;
    let size = cells.iter().map(|c| idx(c)).max().unwrap_or(0) + 1;
    // 0 = empty, 1 = member, 2 = reached
    let mut grid = alloc::vec![0u8; size];
    for c in cells {
        grid[idx(c)] = 1;
    }
    let start = *cells.iter().next()?;
    grid[idx(&start)] = 2;
    let mut stack = alloc::vec![start];
    let mut reached = 1;
    while let Some(c) = stack.pop() {
        for nb in c.neighbors() {
            if nb.x < x0 || nb.x > x1 || nb.y < y0 {
                continue;
            }
            let i = idx(&nb);
            if i < size && grid[i] == 1 {
                grid[i] = 2;
                reached += 1;
                stack.push(nb);
            }
        }
    }
    if reached == cells.len() {
        None
    } else {
        cells.iter().find(|c| grid[idx(c)] != 2).copied()
    }
}

/// First enclosed non-member cell, scanning row by row.
///
/// The complement must be edge-connected to the outside. A bubble touching
/// itself only at a corner point therefore also reports a hole, since its
/// boundary is not a simple curve.
pub fn hole_witness(cells: &CellSet) -> Option<Cell> {
    let (x0, y0, x1, y1) = bounding_box(cells.iter())?;
    let (x0, y0, x1, y1) = (x0 - 1, y0 - 1, x1 + 1, y1 + 1);
    let w = (x1 - x0 + 1) as usize;
    let h = (y1 - y0 + 1) as usize;
    let idx = |x: i32, y: i32| (y - y0) as usize * w + (x - x0) as usize;
    let mut member = alloc::vec![false; w * h];
    for c in cells {
        member[idx(c.x, c.y)] = true;
    }
    let mut outside = alloc::vec![false; w * h];
    let mut stack = alloc::vec![(x0, y0)];
    outside[0] = true;
    while let Some((x, y)) = stack.pop() {
        for (nx, ny) in [(x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)] {
            if nx < x0 || nx > x1 || ny < y0 || ny > y1 {
                continue;
            }
            let i = idx(nx, ny);
            if !member[i] && !outside[i] {
                outside[i] = true;
                stack.push((nx, ny));
            }
        }
    }
    (0..w * h)
        .find(|&i| !member[i] && !outside[i])
        .map(|i| Cell::new(x0 + (i % w) as i32, y0 + (i / w) as i32))
}

/// `Ok(())` iff both bubbles are nonempty, disjoint, edge-connected and hole-free.
pub fn validate(config: &LatticeConfig) -> core::result::Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    if let Some(c) = config.a.intersection(&config.b).next() {
        violations.push(Violation::Overlap(*c));
    }
    for bubble in [Bubble::A, Bubble::B] {
        let cells = config.cells(bubble);
        if cells.is_empty() {
            violations.push(Violation::Empty(bubble));
            continue;
        }
        if let Some(cell) = disconnected_witness(cells) {
            violations.push(Violation::Disconnected { bubble, cell });
        }
        if let Some(cell) = hole_witness(cells) {
            violations.push(Violation::Hole { bubble, cell });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

pub fn is_valid(config: &LatticeConfig) -> bool {
    validate(config).is_ok()
}

/// Number of unit edges with exactly one incident cell in `cells`.
pub fn perimeter(cells: &CellSet) -> u64 {
    let adjacent = cells
        .iter()
        .map(|c| {
            let right = cells.contains(&Cell::new(c.x + 1, c.y)) as u64;
            let up = cells.contains(&Cell::new(c.x, c.y + 1)) as u64;
            right + up
        })
        .sum::<u64>();
    4 * cells.len() as u64 - 2 * adjacent
}

/// Number of unit edges with one incident cell in `a` and the other in `b`.
/// Corner contacts contribute nothing.
pub fn shared_edges(a: &CellSet, b: &CellSet) -> u64 {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    small
        .iter()
        .map(|c| c.neighbors().iter().filter(|nb| large.contains(nb)).count() as u64)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PerimeterReport {
    pub rho_a: u64,
    pub rho_b: u64,
    pub shared: u64,
    pub rho_db: u64,
}

/// Perimeter of a configuration without validating it first.
pub fn measure(config: &LatticeConfig) -> PerimeterReport {
    let rho_a = perimeter(&config.a);
    let rho_b = perimeter(&config.b);
    let shared = shared_edges(&config.a, &config.b);
    PerimeterReport { rho_a, rho_b, shared, rho_db: rho_a + rho_b - shared }
}

pub fn db_perimeter(config: &LatticeConfig) -> Result<PerimeterReport> {
    validate(config).map_err(Error::InvalidConfig)?;
    Ok(measure(config))
}

/// The eight symmetries of the square grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    FlipX,
    FlipY,
    Transpose,
    AntiTranspose,
}

impl Symmetry {
    pub const ALL: [Symmetry; 8] = [
        Symmetry::Identity,
        Symmetry::Rot90,
        Symmetry::Rot180,
        Symmetry::Rot270,
        Symmetry::FlipX,
        Symmetry::FlipY,
        Symmetry::Transpose,
        Symmetry::AntiTranspose,
    ];

    /// Image of a cell. Cell `(x, y)` has center `(x + ½, y + ½)`, so the
    /// rotation `(u, v) ↦ (−v, u)` sends it to `(−y − 1, x)`.
    pub fn apply(self, c: Cell) -> Cell {
        let Cell { x, y } = c;
        match self {
            Symmetry::Identity => Cell::new(x, y),
            Symmetry::Rot90 => Cell::new(-y - 1, x),
            Symmetry::Rot180 => Cell::new(-x - 1, -y - 1),
            Symmetry::Rot270 => Cell::new(y, -x - 1),
            Symmetry::FlipX => Cell::new(-x - 1, y),
            Symmetry::FlipY => Cell::new(x, -y - 1),
            Symmetry::Transpose => Cell::new(y, x),
            Symmetry::AntiTranspose => Cell::new(-y - 1, -x - 1),
        }
    }

    pub fn apply_config(self, config: &LatticeConfig) -> LatticeConfig {
        LatticeConfig {
            a: config.a.iter().map(|&c| self.apply(c)).collect(),
            b: config.b.iter().map(|&c| self.apply(c)).collect(),
        }
    }
}

/// Translate so that the smallest x and y over both bubbles are zero.
pub fn normalize_translation(config: &LatticeConfig) -> LatticeConfig {
    match config.bounding_box() {
        None => config.clone(),
        Some((x0, y0, _, _)) => LatticeConfig {
            a: config.a.iter().map(|c| Cell::new(c.x - x0, c.y - y0)).collect(),
            b: config.b.iter().map(|c| Cell::new(c.x - x0, c.y - y0)).collect(),
        },
    }
}

/// Row-major comparison key: bubble A then bubble B, cells ordered by `(y, x)`.
pub(crate) fn canonical_key(config: &LatticeConfig) -> (Vec<(i32, i32)>, Vec<(i32, i32)>) {
    let key = |s: &CellSet| {
        let mut v: Vec<(i32, i32)> = s.iter().map(|c| (c.y, c.x)).collect();
        v.sort_unstable();
        v
    };
    (key(&config.a), key(&config.b))
}

/// Least representative under grid symmetries, translation, and, when both
/// bubbles have the same volume, exchange of labels.
pub fn canonical_form(config: &LatticeConfig) -> LatticeConfig {
    let swap = config.a.len() == config.b.len();
    let mut best: Option<(LatticeConfig, (Vec<(i32, i32)>, Vec<(i32, i32)>))> = None;
    for sym in Symmetry::ALL {
        let image = normalize_translation(&sym.apply_config(config));
        let candidates = if swap { [Some(image.swapped()), Some(image)] } else { [None, Some(image)] };
        for candidate in candidates.into_iter().flatten() {
            let key = canonical_key(&candidate);
            if best.as_ref().map_or(true, |(_, k)| key < *k) {
                best = Some((candidate, key));
            }
        }
    }
    best.map(|(c, _)| c).unwrap_or_default()
}

/// Cell removal order for trimming: column by column starting at `side`,
/// bottom-up inside each column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Remove cells from `shape` until `target` remain, leftmost column first and
/// bottom-up within a column, never removing `protected` cells.
pub fn trim_to_volume(shape: &CellSet, target: usize, protected: &CellSet) -> Result<CellSet> {
    trim_from(shape, target, protected, Side::Left)
}

/// [`trim_to_volume`] with the sweep starting from either side.
pub fn trim_from(shape: &CellSet, target: usize, protected: &CellSet, side: Side) -> Result<CellSet> {
    let mut order: Vec<Cell> = shape.iter().filter(|c| !protected.contains(c)).copied().collect();
    let reachable = shape.len() - order.len();
    if target < reachable {
        return Err(Error::TrimBlocked { target, reachable });
    }
    match side {
        Side::Left => order.sort_unstable_by_key(|c| (c.x, c.y)),
        Side::Right => order.sort_unstable_by_key(|c| (-c.x, c.y)),
    }
    let mut result = shape.clone();
    for c in order.iter().take(shape.len().saturating_sub(target)) {
        result.remove(c);
    }
    Ok(result)
}
