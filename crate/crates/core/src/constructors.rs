//! Lattice configurations whose perimeter is within a small constant of
//! `⌈ρ_cont⌉`.
//!
//! Each constructor rounds the continuous minimizer to integer side lengths
//! without losing volume, then trims the surplus with a staircase sweep that
//! never increases perimeter.

use crate::continuous::{alpha0, ceil_rho_cont};
use crate::math::{ceil, ceil_sqrt, ceil_two_sqrt_twelve, floor, isqrt, sqrt};
use crate::polyomino::{db_perimeter, rectangle, trim_from, Cell, CellSet, LatticeConfig, Side};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// Square outer shape with the small bubble in a corner (small ratios).
    CornerSquare,
    /// Square bubble with a rectangular tab on one side (intermediate ratios).
    SideTab,
    /// Two rectangles of equal height and equal volume.
    EqualPair,
    /// Equal pair with the dividing wall moved and a corner notch (large ratios).
    ShiftedPair,
}

impl Provenance {
    pub fn name(self) -> &'static str {
        match self {
            Provenance::CornerSquare => "corner-square",
            Provenance::SideTab => "side-tab",
            Provenance::EqualPair => "equal-pair",
            Provenance::ShiftedPair => "shifted-pair",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        [Provenance::CornerSquare, Provenance::SideTab, Provenance::EqualPair, Provenance::ShiftedPair]
            .into_iter()
            .find(|p| p.name() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RectDims {
    pub w: u32,
    pub h: u32,
}

impl RectDims {
    pub fn area(self) -> u64 {
        self.w as u64 * self.h as u64
    }

    pub fn perimeter(self) -> u64 {
        2 * (self.w as u64 + self.h as u64)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Construction {
    pub config: LatticeConfig,
    pub rho_db: u64,
    /// `⌈ρ_cont⌉ + slack`.
    pub bound: u64,
    pub slack: u64,
    pub provenance: Provenance,
    /// Whether the volume pair lies in the range where the bound is proven.
    pub guaranteed: bool,
}

impl Construction {
    pub fn within_bound(&self) -> bool {
        self.rho_db <= self.bound
    }
}

fn volumes_ok(n: u64, m: u64) -> Result<()> {
    if m >= 1 && m <= n && n <= i32::MAX as u64 {
        Ok(())
    } else {
        Err(Error::InvalidVolumes { large: n as f64, small: m as f64 })
    }
}

/// Integer rectangle replacing a square of area `v`.
///
/// With `s = ⌊√v⌋`: a perfect square stays `s × s`; if the fractional part of
/// `√v` is below one half the result is `(s+1) × s` (width raised, height
/// lowered), otherwise `(s+1) × (s+1)`.
pub fn round_square(v: u64) -> Result<RectDims> {
    if v < 1 || v > (i32::MAX as u64) {
        return Err(Error::InvalidVolumes { large: v as f64, small: v as f64 });
    }
    let s = isqrt(v);
    Ok(if s * s == v {
        RectDims { w: s as u32, h: s as u32 }
    } else if v <= s * s + s {
        // √v < s + ½  ⇔  v < s² + s + ¼
        RectDims { w: (s + 1) as u32, h: s as u32 }
    } else {
        RectDims { w: (s + 1) as u32, h: (s + 1) as u32 }
    })
}

fn finish(config: LatticeConfig, n: u64, m: u64, slack: u64, provenance: Provenance, guaranteed: bool) -> Result<Construction> {
    debug_assert_eq!(config.volumes(), (n as usize, m as usize));
    let report = db_perimeter(&config)?;
    let bound = ceil_rho_cont(n, m)? + slack;
    Ok(Construction { config, rho_db: report.rho_db, bound, slack, provenance, guaranteed })
}

/// Outer `outer_w × outer_h` rectangle with bubble B occupying the
/// `w × h` top-right corner.
///
/// B is trimmed first from its lower-left, handing freed cells to A, then the
/// outer shape is trimmed from its lower-left without touching B.
pub fn corner_layout(outer: RectDims, inner: RectDims, n: u64, m: u64) -> Option<LatticeConfig> {
    if inner.w > outer.w || inner.h > outer.h || inner.area() < m || outer.area() < n + m {
        return None;
    }
    let all = rectangle(0, 0, outer.w, outer.h);
    let b_full = rectangle((outer.w - inner.w) as i32, (outer.h - inner.h) as i32, inner.w, inner.h);
    let b = trim_from(&b_full, m as usize, &CellSet::new(), Side::Left).ok()?;
    let union = trim_from(&all, (n + m) as usize, &b, Side::Left).ok()?;
    let a: CellSet = union.difference(&b).copied().collect();
    Some(LatticeConfig::from_sets(a, b))
}

/// Bubble A as a `a_dims` rectangle, bubble B as a `b_dims` rectangle flush
/// against A's right side starting at row `offset`. A is trimmed from the
/// left, B from the right.
pub fn side_layout(a_dims: RectDims, b_dims: RectDims, offset: i32, n: u64, m: u64) -> Option<LatticeConfig> {
    if a_dims.area() < n || b_dims.area() < m {
        return None;
    }
    let a = rectangle(0, 0, a_dims.w, a_dims.h);
    let b = rectangle(a_dims.w as i32, offset, b_dims.w, b_dims.h);
    let a = trim_from(&a, n as usize, &CellSet::new(), Side::Left).ok()?;
    let b = trim_from(&b, m as usize, &CellSet::new(), Side::Right).ok()?;
    Some(LatticeConfig::from_sets(a, b))
}

/// Two rectangles `x × z` (A) and `y × z` (B) side by side, with the bottom
/// `notch` cells of A's last column handed to B. A is trimmed from the left,
/// B from the right.
pub fn notch_layout(x: u32, y: u32, z: u32, notch: u32, n: u64, m: u64) -> Option<LatticeConfig> {
    if x == 0 || z == 0 || notch >= z {
        return None;
    }
    let mut a = rectangle(0, 0, x, z);
    let mut b = rectangle(x as i32, 0, y, z);
    for row in 0..notch as i32 {
        let c = Cell::new(x as i32 - 1, row);
        a.remove(&c);
        b.insert(c);
    }
    if (a.len() as u64) < n || (b.len() as u64) < m || b.is_empty() {
        return None;
    }
    let a = trim_from(&a, n as usize, &CellSet::new(), Side::Left).ok()?;
    let b = trim_from(&b, m as usize, &CellSet::new(), Side::Right).ok()?;
    Some(LatticeConfig::from_sets(a, b))
}

/// Small ratios `m/n <= α₀`: rounded outer square with the rounded square of
/// B in its top-right corner.
pub fn construct_low_alpha(n: u64, m: u64) -> Result<Construction> {
    volumes_ok(n, m)?;
    if m as f64 / n as f64 > alpha0() {
        return Err(Error::RatioOutOfRange { n, m });
    }
    let outer = round_square(n + m)?;
    let inner = round_square(m)?;
    let config = corner_layout(outer, inner, n, m).ok_or(Error::TrimBlocked { target: n as usize, reachable: 0 })?;
    finish(config, n, m, 2, Provenance::CornerSquare, true)
}

/// Dimensions used for intermediate ratios: A's rectangle (height is the side
/// shared with B) and B's rectangle.
pub fn mid_alpha_dims(n: u64, m: u64) -> Result<(RectDims, RectDims)> {
    volumes_ok(n, m)?;
    let s = isqrt(n);
    let a = if s * s == n {
        RectDims { w: s as u32, h: s as u32 }
    } else if n <= s * s + s {
        RectDims { w: s as u32, h: (s + 1) as u32 }
    } else {
        RectDims { w: (s + 1) as u32, h: (s + 1) as u32 }
    };

    let two_m = 2 * m;
    let k = isqrt(two_m);
    let frac_low = two_m <= k * k + k;
    // ⌈√(2m)/2⌉: least w with 2w² >= m; ⌊√(2m)/2⌋: largest w with 2w² <= m.
    let half_ceil = {
        let mut w = isqrt(m / 2);
        while 2 * w * w < m {
            w += 1;
        }
        w
    };
    let half_floor = {
        let mut w = isqrt(m / 2) + 1;
        while 2 * w * w > m {
            w -= 1;
        }
        w
    };
    let (h, w) = match (k % 2 == 1, frac_low) {
        (true, true) => (k, half_ceil),
        (true, false) => (ceil_sqrt(two_m), half_ceil),
        (false, true) => (ceil_sqrt(two_m), half_floor),
        (false, false) => (k, half_ceil),
    };
    Ok((a, RectDims { w: w as u32, h: h as u32 }))
}

/// Intermediate ratios `α₀ < m/n <= 1/2`: rounded square A with a rounded
/// `√(2m) × √(2m)/2` tab B flush against its right side.
pub fn construct_mid_alpha(n: u64, m: u64) -> Result<Construction> {
    volumes_ok(n, m)?;
    if m as f64 / n as f64 <= alpha0() || 2 * m > n {
        return Err(Error::RatioOutOfRange { n, m });
    }
    let (a, b) = mid_alpha_dims(n, m)?;
    let offset = (a.h as i32 - b.h as i32).div_euclid(2);
    let config = side_layout(a, b, offset, n, m).ok_or(Error::TrimBlocked { target: m as usize, reachable: 0 })?;
    finish(config, n, m, 2, Provenance::SideTab, true)
}

/// Side lengths of two rectangles `x × z` and `y × z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl Triple {
    /// Double-bubble perimeter `3z + 2(x + y)` of the two rectangles.
    pub fn objective(&self) -> u64 {
        3 * self.z + 2 * (self.x + self.y)
    }
}

fn ceil_div_real(v: f64, z: u64) -> u64 {
    let q = ceil(v / z as f64) as u64;
    // guard against rounding in the division
    let mut q = q.max(1);
    while (q as f64) * (z as f64) < v {
        q += 1;
    }
    while q > 1 && ((q - 1) as f64) * (z as f64) >= v {
        q -= 1;
    }
    q
}

/// `⌈2√(12 v)⌉`, exact for integer `v`.
pub fn equal_budget_base(v: f64) -> u64 {
    if v == floor(v) && v >= 1.0 && v < 1e15 {
        ceil_two_sqrt_twelve(v as u64)
    } else {
        ceil(2.0 * sqrt(12.0 * v)) as u64
    }
}

/// Integer triple minimizing `3z + 2(x + y)` subject to `xz >= v`, `yz >= v`.
///
/// For fixed `z` the best choice is `x = y = ⌈v/z⌉`. A window around the
/// continuous optimum `√(4v/3)` gives an incumbent; every `z` whose lower
/// bound `3z + 4v/z` does not exceed it is then scanned, so the result is the
/// exact minimum. Ties go to the `z` nearest the continuous optimum, then the
/// smaller `z`.
pub fn min_triple(v: f64) -> Triple {
    let z_star = sqrt(4.0 * v / 3.0);
    let eval = |z: u64| {
        let x = ceil_div_real(v, z);
        Triple { x, y: x, z }
    };
    let better = |a: &Triple, b: &Triple| {
        let da = crate::math::abs(a.z as f64 - z_star);
        let db = crate::math::abs(b.z as f64 - z_star);
        (a.objective(), da, a.z) < (b.objective(), db, b.z)
    };
    let lo = (floor(z_star) as u64).saturating_sub(3).max(1);
    let hi = ceil(z_star) as u64 + 3;
    let mut best = eval(lo);
    for z in lo..=hi {
        let t = eval(z);
        if better(&t, &best) {
            best = t;
        }
    }
    let z_max = best.objective() / 3;
    for z in 1..=z_max {
        if 3.0 * z as f64 + 4.0 * v / z as f64 > best.objective() as f64 {
            continue;
        }
        let t = eval(z);
        if better(&t, &best) {
            best = t;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualPair {
    pub triple: Triple,
    /// `⌈2√(12v)⌉ + slack`.
    pub budget: u64,
    pub construction: Construction,
}

fn equal_config(triple: Triple, volume: u64) -> Result<LatticeConfig> {
    notch_layout(triple.x as u32, triple.y as u32, triple.z as u32, 0, volume, volume)
        .ok_or(Error::TrimBlocked { target: volume as usize, reachable: 0 })
}

/// Two rectangles of height `z` holding at least `v` each, if the best
/// integer triple meets `⌈2√(12v)⌉ + budget_slack`. Both bubbles are trimmed
/// to `⌈v⌉` cells.
pub fn construct_equal(v: f64, budget_slack: u64) -> Result<Option<EqualPair>> {
    if !(v > 0.0) || v > (i32::MAX / 4) as f64 {
        return Err(Error::InvalidVolumes { large: v, small: v });
    }
    let triple = min_triple(v);
    let budget = equal_budget_base(v) + budget_slack;
    if triple.objective() > budget {
        return Ok(None);
    }
    let volume = ceil(v) as u64;
    let config = equal_config(triple, volume)?;
    let construction = finish(config, volume, volume, 1, Provenance::EqualPair, v > 6000.0)?;
    Ok(Some(EqualPair { triple, budget, construction }))
}

/// Large ratios `1/2 <= m/n <= 1`.
///
/// Builds the best equal pair for `(n+m)/2`, moves the dividing wall to column
/// `⌈n/z⌉` so A holds at least `n`, and if B drops below `m` hands the bottom
/// of A's last column to B. Equal volumes use the equal pair directly.
pub fn construct_high_alpha(n: u64, m: u64) -> Result<Construction> {
    volumes_ok(n, m)?;
    if 2 * m < n {
        return Err(Error::RatioOutOfRange { n, m });
    }
    if n == m {
        let triple = min_triple(n as f64);
        let config = equal_config(triple, n)?;
        return finish(config, n, m, 1, Provenance::EqualPair, n > 6000);
    }
    let t = min_triple((n + m) as f64 / 2.0);
    let width = t.x + t.y;
    let a_cols = n.div_ceil(t.z);
    let b_area = (width - a_cols) * t.z;
    let notch = m.saturating_sub(b_area);
    let config = notch_layout(a_cols as u32, (width - a_cols) as u32, t.z as u32, notch as u32, n, m)
        .ok_or(Error::TrimBlocked { target: m as usize, reachable: b_area as usize })?;
    finish(config, n, m, 2, Provenance::ShiftedPair, n > 8000)
}

/// Dispatch on the ratio `m/n`.
pub fn construct(n: u64, m: u64) -> Result<Construction> {
    volumes_ok(n, m)?;
    if m as f64 / n as f64 <= alpha0() {
        construct_low_alpha(n, m)
    } else if 2 * m <= n {
        construct_mid_alpha(n, m)
    } else {
        construct_high_alpha(n, m)
    }
}
