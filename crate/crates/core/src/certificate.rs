//! Numeric evidence that two equal rectangles of common height always fit
//! within `⌈2√(12n)⌉ + 1` once `n` is large enough.
//!
//! Integer pairs `(X, Y)` with `z = (c + 1 − 2(X + Y)) / 3` lie on a plane; the
//! feasible ones satisfy `Xz >= n` and `Yz >= n`. In coordinates
//! `u = (X + Y)/3`, `v = (2Y − X)/3` the feasible set is the region between
//! two curves, and integer points with a fixed residue of `X + Y` form a
//! translate of `Z²`. A fixed parallelogram that fits in the (conservative)
//! region and meets every translate therefore contains a feasible point.

use crate::math::{abs, ceil, floor, sqrt};
use crate::{Error, Result};
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

fn region_ceiling(n: f64) -> f64 {
    if n == floor(n) && n < 1e15 {
        crate::math::ceil_two_sqrt_twelve(n as u64) as f64
    } else {
        ceil(2.0 * sqrt(12.0 * n))
    }
}

/// Boundary curves of the feasible region with the ceiling kept:
/// `y₁` from `Xz = n` and `y₂` from `Yz = n`.
pub fn projected_curves(n: f64, x: f64) -> Result<(f64, f64)> {
    let c = region_ceiling(n);
    let d = c - 6.0 * x + 1.0;
    if d == 0.0 {
        return Err(Error::Pole { x });
    }
    Ok(((2.0 * x * d - 3.0 * n) / d, (-x * d + 3.0 * n) / d))
}

/// Plane height `z` and integer coordinates (as reals) for a point in the
/// transformed plane.
pub fn to_lattice(n: f64, p: Point) -> (f64, f64, f64) {
    let c = region_ceiling(n);
    let x = 2.0 * p.x - p.y;
    let y = p.x + p.y;
    (x, y, (c + 1.0 - 2.0 * (x + y)) / 3.0)
}

/// Inverse of [`to_lattice`] on the `(X, Y)` coordinates.
pub fn from_lattice(x: f64, y: f64) -> Point {
    Point::new((x + y) / 3.0, (2.0 * y - x) / 3.0)
}

/// The ceiling-dropped region, translated so both corners lie near the
/// origin on `y = x/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionCurves {
    pub n: f64,
    pub x_left: f64,
    pub x_right: f64,
    root: f64,
}

/// Offset applied to the transformed plane before the region is studied.
pub fn region_shift(n: f64) -> Point {
    let r = sqrt(3.0 * n);
    Point::new((1.0 + r) / 3.0, (1.0 + r) / 6.0)
}

pub fn shifted_curves(n: f64) -> Result<RegionCurves> {
    if !(n >= 1.0) || !n.is_finite() {
        return Err(Error::InvalidVolumes { large: n, small: n });
    }
    let root = sqrt(3.0 * n);
    let s = sqrt(1.0 + 8.0 * root);
    Ok(RegionCurves { n, x_left: (-s - 3.0) / 12.0, x_right: (s - 3.0) / 12.0, root })
}

impl RegionCurves {
    fn denom(&self, x: f64) -> f64 {
        4.0 * self.root - 12.0 * x - 2.0
    }

    fn upper(&self, x: f64) -> f64 {
        let r = self.root;
        (r * (1.0 + 2.0 * x) - 1.0 - 10.0 * x - 24.0 * x * x) / self.denom(x)
    }

    fn lower(&self, x: f64) -> f64 {
        let r = self.root;
        (r * (2.0 * x - 1.0) + 1.0 + 8.0 * x + 12.0 * x * x) / self.denom(x)
    }

    fn checked(&self, x: f64, f: fn(&Self, f64) -> f64) -> Result<f64> {
        if self.denom(x) == 0.0 {
            Err(Error::Pole { x })
        } else {
            Ok(f(self, x))
        }
    }

    /// Upper curve `ỹ₁`.
    pub fn y1(&self, x: f64) -> Result<f64> {
        self.checked(x, Self::upper)
    }

    /// Lower curve `ỹ₂`.
    pub fn y2(&self, x: f64) -> Result<f64> {
        self.checked(x, Self::lower)
    }

    /// Vertical clearance of `p` inside the region; negative outside.
    pub fn clearance(&self, p: Point) -> f64 {
        if p.x <= self.x_left || p.x >= self.x_right {
            return -1.0;
        }
        (self.upper(p.x) - p.y).min(p.y - self.lower(p.x))
    }

    /// `count` evenly spaced abscissae strictly inside the region.
    pub fn samples(&self, count: usize) -> impl Iterator<Item = f64> + '_ {
        let step = (self.x_right - self.x_left) / (count + 1) as f64;
        (1..=count).map(move |i| self.x_left + step * i as f64)
    }
}

/// Region growth from `n` to `big`: at every sample the upper curve does not
/// drop and the lower curve does not rise, the corners move outward, and the
/// right corner stays left of the upper curve's validity limit `√(n/3) − 1/6`.
pub fn region_monotone(n: f64, big: f64, samples: usize) -> bool {
    let (Ok(small), Ok(large)) = (shifted_curves(n), shifted_curves(big)) else {
        return false;
    };
    if big < n {
        return false;
    }
    let tol = 1e-9;
    if large.x_right < small.x_right - tol || large.x_left > small.x_left + tol {
        return false;
    }
    if small.x_right > sqrt(n / 3.0) - 1.0 / 6.0 + tol {
        return false;
    }
    let endpoints = [small.x_left, small.x_right];
    let grows = small.samples(samples).chain(endpoints).all(|x| {
        large.upper(x) >= small.upper(x) - tol && large.lower(x) <= small.lower(x) + tol
    });
    grows
}

/// Second differences at step `h` across the region interior: `ỹ₁` concave,
/// `ỹ₂` convex. Corner containment of a convex polygon then implies full
/// containment.
pub fn convexity_proxy(n: f64, h: f64) -> bool {
    let Ok(rc) = shifted_curves(n) else { return false };
    let tol = 1e-9;
    let mut x = rc.x_left + h;
    while x + h < rc.x_right {
        let d1 = rc.upper(x - h) - 2.0 * rc.upper(x) + rc.upper(x + h);
        let d2 = rc.lower(x - h) - 2.0 * rc.lower(x) + rc.lower(x + h);
        if d1 > tol || d2 < -tol {
            return false;
        }
        x += h;
    }
    true
}

/// Translate of the integer lattice in transformed coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftedLattice {
    pub shift: Point,
}

impl ShiftedLattice {
    /// The three reference shifts.
    pub const ALL: [ShiftedLattice; 3] = [
        ShiftedLattice { shift: Point::new(0.0, 0.0) },
        ShiftedLattice { shift: Point::new(1.0 / 3.0, -2.0 / 3.0) },
        ShiftedLattice { shift: Point::new(2.0 / 3.0, -4.0 / 3.0) },
    ];

    /// Shifts induced by the residue of `X + Y` mod 3 under [`from_lattice`]:
    /// `k/3 · (1, −1) ≡ k/3 · (1, 2)` modulo `Z²`.
    pub const INDUCED: [ShiftedLattice; 3] = [
        ShiftedLattice { shift: Point::new(0.0, 0.0) },
        ShiftedLattice { shift: Point::new(1.0 / 3.0, 2.0 / 3.0) },
        ShiftedLattice { shift: Point::new(2.0 / 3.0, 4.0 / 3.0) },
    ];

    /// Points of this lattice with `|x − cx| <= rx` and `|y − cy| <= ry`.
    fn points_near(&self, c: Point, rx: f64, ry: f64) -> impl Iterator<Item = Point> + '_ {
        let s = self.shift;
        let x0 = ceil(c.x - rx - s.x) as i64;
        let x1 = floor(c.x + rx - s.x) as i64;
        let y0 = ceil(c.y - ry - s.y) as i64;
        let y1 = floor(c.y + ry - s.y) as i64;
        (x0..=x1).flat_map(move |i| (y0..=y1).map(move |j| Point::new(i as f64 + s.x, j as f64 + s.y)))
    }
}

/// Edge vectors of the fixed parallelogram.
pub const EDGE_A: Point = Point::new(2.0 / 3.0, 2.0 / 3.0);
pub const EDGE_B: Point = Point::new(2.0, 1.0);

/// Parallelogram spanned by [`EDGE_A`] and [`EDGE_B`], centred at `(t, t/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parallelogram {
    pub center: Point,
}

impl Parallelogram {
    pub fn at(t: f64) -> Self {
        Parallelogram { center: Point::new(t, t / 2.0) }
    }

    /// Corners in counter-clockwise order.
    pub fn corners(&self) -> [Point; 4] {
        let c = self.center;
        let (a, b) = (EDGE_A, EDGE_B);
        let half = |sa: f64, sb: f64| Point::new(c.x + (sa * a.x + sb * b.x) / 2.0, c.y + (sa * a.y + sb * b.y) / 2.0);
        [half(-1.0, -1.0), half(-1.0, 1.0), half(1.0, 1.0), half(1.0, -1.0)]
    }

    /// Distance from `p` to the nearest edge line; negative outside.
    pub fn clearance(&self, p: Point) -> f64 {
        let (a, b) = (EDGE_A, EDGE_B);
        let (dx, dy) = (p.x - self.center.x, p.y - self.center.y);
        let det = a.x * b.y - a.y * b.x;
        // p − center = α·a + β·b
        let alpha = (dx * b.y - dy * b.x) / det;
        let beta = (a.x * dy - a.y * dx) / det;
        let width_a = abs(det) / sqrt(b.x * b.x + b.y * b.y);
        let width_b = abs(det) / sqrt(a.x * a.x + a.y * a.y);
        ((0.5 - abs(alpha)) * width_a).min((0.5 - abs(beta)) * width_b)
    }

    /// Largest clearance of a point of `lattice` inside this parallelogram.
    pub fn best_lattice_clearance(&self, lattice: &ShiftedLattice) -> Option<(Point, f64)> {
        let rx = (EDGE_A.x + EDGE_B.x) / 2.0 + 1e-9;
        let ry = (EDGE_A.y + EDGE_B.y) / 2.0 + 1e-9;
        lattice
            .points_near(self.center, rx, ry)
            .map(|p| (p, self.clearance(p)))
            .filter(|&(_, d)| d >= -1e-12)
            .map(|(p, d)| (p, d.max(0.0)))
            .max_by(|a, b| a.1.total_cmp(&b.1))
    }
}

/// Lattice coverage independent of the translation.
///
/// With `f(p) = 2y − x`, the parallelogram is the band `|f − f(center)| <= 1/3`
/// cut to one period of `EDGE_B` (along which `f` is constant). Each line
/// `f = const` meets a translate of `Z²` in points spaced exactly `EDGE_B`
/// apart, so every translation contains a lattice point iff some line
/// `f ≡ f(shift) (mod 1)` lies in the band; centres on `y = x/2` have `f = 0`.
pub fn covers_every_translation(lattice: &ShiftedLattice) -> bool {
    let f = 2.0 * lattice.shift.y - lattice.shift.x;
    let r = f - floor(f + 0.5);
    abs(r) <= 1.0 / 3.0 + 1e-12
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub n: f64,
    pub center: Point,
    pub contained: bool,
    pub hits_all_shifts: bool,
    /// Minimum vertical clearance of the corners to the region curves.
    pub margin: f64,
    /// Smallest, over sampled translations and shifts, of the best lattice
    /// point's distance to the parallelogram boundary.
    pub shift_clearance: f64,
}

/// Best translation along `y = x/2`: coarse grid at step `1e-4`, then a fine
/// pass around the best grid point.
fn best_translation(rc: &RegionCurves) -> (f64, f64) {
    let margin_at = |t: f64| {
        Parallelogram::at(t).corners().iter().map(|&p| rc.clearance(p)).fold(f64::INFINITY, f64::min)
    };
    let mut best = (0.0, f64::NEG_INFINITY);
    let steps = ((rc.x_right - rc.x_left) / 1e-4) as usize + 1;
    for i in 0..=steps {
        let t = rc.x_left + i as f64 * 1e-4;
        let m = margin_at(t);
        if m > best.1 {
            best = (t, m);
        }
    }
    let t0 = best.0;
    for i in -1000..=1000 {
        let t = t0 + i as f64 * 1e-7;
        let m = margin_at(t);
        if m > best.1 {
            best = (t, m);
        }
    }
    best
}

/// Sampled coverage: at each translation in one period (step `step`), the
/// smallest over `lattices` of the best point's clearance, or `None` if some
/// lattice is missed.
pub fn sampled_shift_clearance(lattices: &[ShiftedLattice], step: f64) -> Option<f64> {
    let count = (EDGE_B.x / step) as usize;
    let mut worst = f64::INFINITY;
    for i in 0..count {
        let p = Parallelogram::at(i as f64 * step);
        for l in lattices {
            let (_, d) = p.best_lattice_clearance(l)?;
            worst = worst.min(d);
        }
    }
    Some(worst)
}

pub fn parallelogram_certificate(n: f64) -> Certificate {
    let lattices: Vec<ShiftedLattice> = ShiftedLattice::ALL.into_iter().chain(ShiftedLattice::INDUCED).collect();
    let sampled = sampled_shift_clearance(&lattices, 1e-3);
    let hits_all_shifts = sampled.is_some() && lattices.iter().all(covers_every_translation);
    let shift_clearance = sampled.unwrap_or(-1.0);
    let Ok(rc) = shifted_curves(n) else {
        return Certificate {
            n,
            center: Point::new(0.0, 0.0),
            contained: false,
            hits_all_shifts,
            margin: f64::NEG_INFINITY,
            shift_clearance,
        };
    };
    let (t, margin) = best_translation(&rc);
    Certificate {
        n,
        center: Parallelogram::at(t).center,
        contained: margin > 0.0,
        hits_all_shifts,
        margin,
        shift_clearance,
    }
}

/// Integer triple read off a lattice point inside the certified parallelogram.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeWitness {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    /// `xz >= n` and `yz >= n`.
    pub feasible: bool,
}

impl LatticeWitness {
    pub fn objective(&self) -> i64 {
        3 * self.z + 2 * (self.x + self.y)
    }
}

/// The feasible integer point nearest the certificate's parallelogram centre,
/// with `z` integral on the plane `3z + 2(X + Y) = ⌈2√(12n)⌉ + 1`.
pub fn lattice_witness(n: u64, cert: &Certificate) -> Option<LatticeWitness> {
    if !cert.contained {
        return None;
    }
    let nf = n as f64;
    let shift = region_shift(nf);
    let para = Parallelogram { center: cert.center };
    let c = crate::math::ceil_two_sqrt_twelve(n) as i64;
    let centre = Point::new(cert.center.x + shift.x, cert.center.y + shift.y);
    let (cx, cy, _) = to_lattice(nf, centre);
    let mut best: Option<(LatticeWitness, f64)> = None;
    for x in (cx as i64 - 4)..=(cx as i64 + 4) {
        for y in (cy as i64 - 4)..=(cy as i64 + 4) {
            let rest = c + 1 - 2 * (x + y);
            if rest <= 0 || rest % 3 != 0 {
                continue;
            }
            let p = from_lattice(x as f64, y as f64);
            let d = para.clearance(Point::new(p.x - shift.x, p.y - shift.y));
            if d < 0.0 {
                continue;
            }
            let z = rest / 3;
            let w = LatticeWitness { x, y, z, feasible: x * z >= n as i64 && y * z >= n as i64 };
            if best.map_or(true, |(_, bd)| d > bd) {
                best = Some((w, d));
            }
        }
    }
    best.map(|(w, _)| w)
}
