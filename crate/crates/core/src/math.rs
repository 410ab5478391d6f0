//! Small numeric helpers that work without `std`.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn ceil(x: f64) -> f64 {
    libm::ceil(x)
}

#[inline]
pub fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Largest `s` with `s * s <= v`.
pub fn isqrt(v: u64) -> u64 {
    if v < 2 {
        return v;
    }
    let mut s = libm::sqrt(v as f64) as u64;
    while s * s > v {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= v {
        s += 1;
    }
    s
}

/// Smallest `s` with `s * s >= v`.
pub fn ceil_sqrt(v: u64) -> u64 {
    let s = isqrt(v);
    if s * s == v {
        s
    } else {
        s + 1
    }
}

pub fn is_square(v: u64) -> bool {
    let s = isqrt(v);
    s * s == v
}

/// `⌈2√(12 v)⌉` for integer `v`, computed exactly as the least `k` with `k² ≥ 48 v`.
pub fn ceil_two_sqrt_twelve(v: u64) -> u64 {
    ceil_sqrt(48 * v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_roots() {
        for v in 0..5000u64 {
            let s = isqrt(v);
            assert!(s * s <= v && (s + 1) * (s + 1) > v);
            let c = ceil_sqrt(v);
            assert!(c * c >= v && (c == 0 || (c - 1) * (c - 1) < v));
        }
        assert_eq!(isqrt(u32::MAX as u64 * 4), 131071);
    }

    #[test]
    fn ceil_of_perimeter_bound() {
        // 2√(12·6000) = 536.656...
        assert_eq!(ceil_two_sqrt_twelve(6000), 537);
        // 2√144 = 24 exactly
        assert_eq!(ceil_two_sqrt_twelve(12), 24);
    }
}
