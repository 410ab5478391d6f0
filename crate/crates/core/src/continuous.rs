//! Continuous ℓ¹ double-bubble minimum and its minimizing shapes.
//!
//! For volumes `X >= Y > 0` with ratio `α = Y / X` the minimum is piecewise:
//!
//! | regime | ratio            | value               | shape                                  |
//! |--------|------------------|---------------------|----------------------------------------|
//! | Low    | `0 < α <= α₀`    | `4√(X+Y) + 2√Y`     | square of side `√(X+Y)`, `√Y` corner   |
//! | Mid    | `α₀ <= α <= 1/2` | `4√X + 2√(2Y)`      | square `√X` with `√(2Y) × √(2Y)/2` tab |
//! | High   | `1/2 <= α <= 1`  | `2√(6(X+Y))`        | two rectangles sharing a side `z`      |
//!
//! with `α₀ = (688 − 480√2) / 49`.

use crate::math::{ceil, is_square, sqrt};
use crate::{Error, Result};

/// Ratio separating the corner-square and side-tab minimizers.
pub fn alpha0() -> f64 {
    (688.0 - 480.0 * sqrt(2.0)) / 49.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    Low,
    Mid,
    High,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Low => "low",
            Regime::Mid => "mid",
            Regime::High => "high",
        }
    }
}

/// Side lengths of the minimizing shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// Outer square side `√(X+Y)` and corner square side `√Y`.
    Low { outer: f64, inner: f64 },
    /// Square side `√X`, tab height `√(2Y)` and tab width `√(2Y)/2`.
    Mid { side: f64, height: f64, width: f64 },
    /// Widths `x`, `y` of the two rectangles and their common height `z`.
    High { x: f64, y: f64, z: f64 },
}

impl Shape {
    /// Double-bubble perimeter of the shape with the shared wall counted once.
    pub fn perimeter(&self) -> f64 {
        match *self {
            Shape::Low { outer, inner } => 4.0 * outer + 2.0 * inner,
            Shape::Mid { side, height, width } => 4.0 * side + height + 2.0 * width,
            Shape::High { x, y, z } => 3.0 * z + 2.0 * (x + y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuousSolution {
    pub regime: Regime,
    pub value: f64,
    pub shape: Shape,
}

fn check(x: f64, y: f64) -> Result<()> {
    // NaN fails every comparison and is rejected here too.
    if y > 0.0 && y <= x && x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidVolumes { large: x, small: y })
    }
}

/// Regime of the volume pair. At `α = α₀` and `α = 1/2` the lower tag wins.
pub fn regime(x: f64, y: f64) -> Result<Regime> {
    check(x, y)?;
    let alpha = y / x;
    Ok(if alpha <= alpha0() {
        Regime::Low
    } else if 2.0 * y <= x {
        Regime::Mid
    } else {
        Regime::High
    })
}

fn value_in(regime: Regime, x: f64, y: f64) -> f64 {
    match regime {
        Regime::Low => 4.0 * sqrt(x + y) + 2.0 * sqrt(y),
        Regime::Mid => 4.0 * sqrt(x) + 2.0 * sqrt(2.0 * y),
        Regime::High => 2.0 * sqrt(6.0 * (x + y)),
    }
}

/// Formula of a given regime evaluated regardless of whether the ratio lies in it.
/// Used to compare neighbouring branches at their common boundary.
pub fn branch_value(regime: Regime, x: f64, y: f64) -> f64 {
    value_in(regime, x, y)
}

pub fn rho_cont(x: f64, y: f64) -> Result<f64> {
    Ok(value_in(regime(x, y)?, x, y))
}

pub fn continuous_shape(x: f64, y: f64) -> Result<ContinuousSolution> {
    let regime = regime(x, y)?;
    let shape = match regime {
        Regime::Low => Shape::Low { outer: sqrt(x + y), inner: sqrt(y) },
        Regime::Mid => {
            let height = sqrt(2.0 * y);
            Shape::Mid { side: sqrt(x), height, width: height / 2.0 }
        }
        Regime::High => {
            let k = sqrt(3.0 / (2.0 * (x + y)));
            Shape::High { x: x * k, y: y * k, z: sqrt(2.0 * (x + y) / 3.0) }
        }
    };
    Ok(ContinuousSolution { regime, value: value_in(regime, x, y), shape })
}

/// `⌈ρ_cont(n, m)⌉` for integer volumes `n >= m >= 1`.
///
/// Exact whenever the value is an integer: a sum `p√a + q√b` with positive
/// integer coefficients is rational only if both radicands are squares, and
/// `2√(6(n+m))` is handled with integer square roots.
pub fn ceil_rho_cont(n: u64, m: u64) -> Result<u64> {
    let r = regime(n as f64, m as f64)?;
    Ok(match r {
        Regime::High => crate::math::ceil_sqrt(24 * (n + m)),
        Regime::Low if is_square(n + m) && is_square(m) => {
            4 * crate::math::isqrt(n + m) + 2 * crate::math::isqrt(m)
        }
        Regime::Mid if is_square(n) && is_square(2 * m) => {
            4 * crate::math::isqrt(n) + 2 * crate::math::isqrt(2 * m)
        }
        _ => ceil(value_in(r, n as f64, m as f64)) as u64,
    })
}
