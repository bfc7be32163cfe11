//! Tone burst, carrier demodulation and envelope delay estimation.

use std::f64::consts::PI;
use std::ops::Range;

use crate::complex::ComplexValue;

/// `sin(ωt) · ½(1 − cos(2πt/T_b))` for `0 ≤ t ≤ T_b`, zero elsewhere, with
/// `T_b = n_cycles` periods.
pub fn tone_burst(t: f64, omega: f64, n_cycles: f64) -> f64 {
    let period = 2.0 * PI / omega;
    let tb = n_cycles * period;
    if !(0.0..=tb).contains(&t) {
        return 0.0;
    }
    (omega * t).sin() * 0.5 * (1.0 - (2.0 * PI * t / tb).cos())
}

/// `Σ u_k e^{iωkΔt}` over the samples in `range`.
pub fn carrier_component(series: &[f64], range: Range<usize>, omega_dt: f64) -> ComplexValue {
    let mut acc = ComplexValue::new(0.0, 0.0);
    for k in range {
        let (s, c) = (omega_dt * k as f64).sin_cos();
        acc += ComplexValue::new(series[k] * c, series[k] * s);
    }
    acc
}

/// Amplitude envelope by quadrature demodulation at the carrier followed by a
/// moving average over one carrier period.
pub fn envelope(series: &[f64], omega_dt: f64) -> Vec<f64> {
    let n = series.len();
    let width = ((2.0 * PI / omega_dt).round() as usize).max(1);
    let mixed: Vec<ComplexValue> = series
        .iter()
        .enumerate()
        .map(|(k, &u)| {
            let (s, c) = (omega_dt * k as f64).sin_cos();
            ComplexValue::new(u * c, u * s)
        })
        .collect();
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(ComplexValue::new(0.0, 0.0));
    for m in &mixed {
        let last = *prefix.last().unwrap();
        prefix.push(last + m);
    }
    let half = width / 2;
    (0..n)
        .map(|k| {
            let lo = k.saturating_sub(half);
            let hi = (lo + width).min(n);
            let lo = hi.saturating_sub(width);
            2.0 * (prefix[hi] - prefix[lo]).norm() / (hi - lo) as f64
        })
        .collect()
}

/// Lag (in samples, sub-sample by parabolic interpolation) maximizing
/// `Σ x[k] y[k + lag]` over `lag ∈ [0, max_lag]`.
pub fn xcorr_delay(x: &[f64], y: &[f64], max_lag: usize) -> Option<f64> {
    let corr = |lag: usize| -> f64 {
        x.iter()
            .zip(y.iter().skip(lag))
            .map(|(a, b)| a * b)
            .sum()
    };
    let values: Vec<f64> = (0..=max_lag.min(y.len().saturating_sub(1))).map(corr).collect();
    let (best, _) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    if best == 0 || best + 1 >= values.len() {
        return Some(best as f64);
    }
    let (l, c, r) = (values[best - 1], values[best], values[best + 1]);
    let den = l - 2.0 * c + r;
    let shift = if den != 0.0 { 0.5 * (l - r) / den } else { 0.0 };
    Some(best as f64 + shift)
}
