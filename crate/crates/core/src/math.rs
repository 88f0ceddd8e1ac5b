//! Scalar helpers built on `libm` so results are identical across platforms
//! and with or without `std`.

pub const LN_2: f64 = core::f64::consts::LN_2;

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub fn log2(x: f64) -> f64 {
    libm::log2(x)
}

#[inline]
pub fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

/// `x * ln(y)` with the `0 * ln 0 = 0` convention.
#[inline]
pub fn xlny(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * ln(y)
    }
}

/// Natural-log Bernoulli entropy `h(p)` in nats.
#[inline]
pub fn bernoulli_entropy_nats(p: f64) -> f64 {
    -(xlny(p, p) + xlny(1.0 - p, 1.0 - p))
}

/// `ln(n!)` by direct summation for small `n`, `lgamma` beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 64 {
        (2..=n).map(|k| ln(k as f64)).sum()
    } else {
        libm::lgamma(n as f64 + 1.0)
    }
}

/// Mean and (population) standard deviation.
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, sqrt(var))
}

/// Relative-tolerance comparison used for score ties.
#[inline]
pub fn approx_le(a: f64, b: f64) -> bool {
    a <= b + TIE_TOLERANCE * (1.0f64).max(b.abs())
}

/// Scores closer than this (relative) are treated as ties. Permuted group
/// labels reorder floating-point sums, so equal statistics can differ in
/// the last few bits.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_factorial_matches_product() {
        assert!((ln_factorial(5) - ln(120.0)).abs() < 1e-12);
        assert_eq!(ln_factorial(0), 0.0);
        let big = ln_factorial(70);
        let direct: f64 = (2..=70).map(|k| ln(k as f64)).sum();
        assert!((big - direct).abs() < 1e-9);
    }

    #[test]
    fn entropy_endpoints_vanish() {
        assert_eq!(bernoulli_entropy_nats(0.0), 0.0);
        assert_eq!(bernoulli_entropy_nats(1.0), 0.0);
        assert!((bernoulli_entropy_nats(0.5) - LN_2).abs() < 1e-15);
    }
}
