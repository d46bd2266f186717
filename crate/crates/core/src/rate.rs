//! Exponential growth rates from finite sequences.
//!
//! A rate is the slope `log(v_m / v_{m-k}) / k` over the trailing window
//! `k = ⌈m/3⌉`. Sequences whose trailing ratio stays below `1 + 0.01·k` are
//! treated as sub-exponential and assigned rate zero.

/// Per-step slack of the sub-exponential test.
pub const POLY_EPS_PER_STEP: f64 = 0.01;

/// Trailing window length for a sequence whose last index is `m`.
pub fn trailing_window(m: usize) -> usize {
    m.div_ceil(3).max(1)
}

/// Rate of a sequence of positive values `v_0, …, v_m`.
pub fn trailing_rate(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = values.len() - 1;
    let k = trailing_window(m);
    let ratio = values[m] / values[m - k];
    if ratio < 1.0 + POLY_EPS_PER_STEP * k as f64 {
        0.0
    } else {
        ratio.ln() / k as f64
    }
}

/// [`trailing_rate`] for integer sequences.
pub fn trailing_rate_usize(values: &[usize]) -> f64 {
    let values: Vec<f64> = values.iter().map(|&v| v as f64).collect();
    trailing_rate(&values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window() {
        assert_eq!(trailing_window(0), 1);
        assert_eq!(trailing_window(1), 1);
        assert_eq!(trailing_window(3), 1);
        assert_eq!(trailing_window(4), 2);
        assert_eq!(trailing_window(30), 10);
    }

    #[test]
    fn constant_and_linear_are_zero() {
        assert_eq!(trailing_rate_usize(&[1; 10]), 0.0);
        assert_eq!(trailing_rate_usize(&[5]), 0.0);
        let linear: Vec<usize> = (1..=300).collect();
        assert_eq!(trailing_rate_usize(&linear), 0.0);
    }

    #[test]
    fn geometric_recovers_ratio() {
        let geo: Vec<f64> = (0..12).map(|k| 3f64.powi(k)).collect();
        assert!((trailing_rate(&geo) - 3f64.ln()).abs() < 1e-12);
    }
}
