//! Power spectrum of the total-system discord.
//!
//! D(ρ_ABC)(t) = 1 − (cos²α · cos 2Ω₊t − sin²α · cos 2Ω₀t)² is an almost
//! periodic signal with at most four tones:
//!
//! ```text
//! frequency      weight
//! 2(Ω₊ − Ω₀)     cos²α sin²α
//! 4Ω₀            sin⁴α / 2
//! 2(Ω₊ + Ω₀)     cos²α sin²α
//! 4Ω₊            cos⁴α / 2
//! ```
//!
//! so α = 0 leaves a single line at 4Ω₊ independent of n, an empty cavity
//! (Ω₀ = 0) leaves two lines at 2Ω₊ and 4Ω₊, and the generic case has four.
//! The transform here is the one-sided integral (1/√2π)∫₀^T D e^{iωt} dt over
//! the finite window, evaluated by trapezoidal quadrature at the natural DFT
//! frequencies; peak positions of the tones are window-invariant.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::discord::gqd_abc_closed;
use crate::error::{Error, Result};
use crate::model::SystemParams;

pub const DEFAULT_THRESHOLD_FRACTION: f64 = 0.05;
pub const DEFAULT_MIN_SEPARATION_BINS: f64 = 4.0;

/// Uniformly sampled D(ρ_ABC)(t).
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub t_values: Vec<f64>,
    pub values: Vec<f64>,
    pub params: Option<SystemParams>,
}

impl TimeSeries {
    /// Wraps externally produced samples on the uniform grid `[0, t_max]`.
    pub fn from_values(t_max: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 || t_max <= 0.0 || t_max.is_nan() {
            return Err(Error::InvalidGrid(
                "need at least two samples and a positive window".into(),
            ));
        }
        let n = values.len();
        let t_values = (0..n)
            .map(|j| t_max * j as f64 / (n - 1) as f64)
            .collect();
        Ok(Self {
            t_values,
            values,
            params: None,
        })
    }

    pub fn t_max(&self) -> f64 {
        *self.t_values.last().expect("non-empty grid")
    }
}

/// Samples the closed-form total-system discord on `n_samples` points
/// spanning `[0, t_max]` inclusive.
pub fn sample_series(p: &SystemParams, t_max: f64, n_samples: usize) -> Result<TimeSeries> {
    if t_max <= 0.0 || t_max.is_nan() || n_samples < 2 {
        return Err(Error::InvalidGrid(format!(
            "invalid sampling window: t_max = {t_max}, n_samples = {n_samples}"
        )));
    }
    let mut t_values = Vec::with_capacity(n_samples);
    let mut values = Vec::with_capacity(n_samples);
    for j in 0..n_samples {
        let t = t_max * j as f64 / (n_samples - 1) as f64;
        t_values.push(t);
        values.push(gqd_abc_closed(p, t).value);
    }
    Ok(TimeSeries {
        t_values,
        values,
        params: Some(*p),
    })
}

/// A detected spectral peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub omega: f64,
    pub height: f64,
}

/// Magnitudes of the windowed transform on the nonnegative frequency grid,
/// plus whatever peaks have been detected on it.
#[derive(Debug, Clone)]
pub struct SpectrumResult {
    pub omega: Vec<f64>,
    pub magnitude: Vec<f64>,
    pub peaks: Vec<Peak>,
    /// Time span used for the transform window.
    pub window: f64,
}

/// Complex windowed transform (1/√2π)∫₀^T f(t) e^{iωt} dt by trapezoidal
/// quadrature, returned at the DFT frequencies ω_k = 2πk/(N·dt) for
/// k = 0..=N/2. The quadrature sum at these frequencies is an FFT plus the
/// two endpoint corrections.
pub fn windowed_transform(values: &[f64], t_max: f64) -> Result<(Vec<f64>, Vec<Complex64>)> {
    let n = values.len();
    if n < 2 || t_max <= 0.0 || t_max.is_nan() {
        return Err(Error::InvalidGrid(
            "transform needs at least two samples and a positive window".into(),
        ));
    }
    let dt = t_max / (n - 1) as f64;
    let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let mut planner = FftPlanner::new();
    // unnormalized inverse transform: buf[k] = Σ_j f_j e^{+2πi jk/N}
    planner.plan_fft_inverse(n).process(&mut buf);

    let half = n / 2 + 1;
    let norm = dt / (2.0 * std::f64::consts::PI).sqrt();
    let f0 = values[0];
    let f_last = values[n - 1];
    let mut omega = Vec::with_capacity(half);
    let mut out = Vec::with_capacity(half);
    for k in 0..half {
        let w = 2.0 * std::f64::consts::PI * k as f64 / (n as f64 * dt);
        // e^{iω_k t_{N-1}} = e^{-2πik/N}
        let endpoint = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64);
        out.push((buf[k] - 0.5 * f0 - 0.5 * f_last * endpoint) * norm);
        omega.push(w);
    }
    Ok((omega, out))
}

/// Magnitude spectrum of a sampled series. Peaks start out empty; see
/// [`detect_peaks`].
pub fn fourier(series: &TimeSeries) -> Result<SpectrumResult> {
    let (omega, f) = windowed_transform(&series.values, series.t_max())?;
    Ok(SpectrumResult {
        omega,
        magnitude: f.iter().map(|z| z.norm()).collect(),
        peaks: Vec::new(),
        window: series.t_max(),
    })
}

/// Local maxima of the magnitude spectrum above `threshold_fraction` of the
/// global maximum, excluding the DC neighbourhood ω < 2·(2π/T); candidates
/// closer than `min_separation_bins` merge into the tallest of the cluster,
/// and surviving locations are refined by quadratic interpolation on the
/// log-magnitude.
pub fn detect_peaks(
    spec: &SpectrumResult,
    threshold_fraction: f64,
    min_separation_bins: f64,
) -> Result<Vec<Peak>> {
    if !(threshold_fraction > 0.0 && threshold_fraction < 1.0) {
        return Err(Error::InvalidGrid(format!(
            "threshold_fraction must lie in (0, 1), got {threshold_fraction}"
        )));
    }
    let mag = &spec.magnitude;
    let n = mag.len();
    if n < 3 {
        return Ok(Vec::new());
    }
    let bin_width = spec.omega[1] - spec.omega[0];
    let dc_cut = 2.0 * (2.0 * std::f64::consts::PI / spec.window);
    let first_k = spec.omega.iter().position(|&w| w >= dc_cut).unwrap_or(n);

    let mut global_max = 0.0f64;
    for k in first_k..n {
        global_max = global_max.max(mag[k]);
    }
    if global_max <= 0.0 {
        return Ok(Vec::new());
    }
    let threshold = threshold_fraction * global_max;

    let mut candidates = Vec::new();
    for k in first_k.max(1)..n - 1 {
        if mag[k] >= threshold && mag[k] > mag[k - 1] && mag[k] >= mag[k + 1] {
            candidates.push(k);
        }
    }

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in candidates {
        match clusters.last_mut() {
            Some(cluster) if (k - *cluster.last().unwrap()) as f64 <= min_separation_bins => {
                cluster.push(k);
            }
            _ => clusters.push(vec![k]),
        }
    }

    let refine = |k: usize| -> Peak {
        let (l, c, r) = (mag[k - 1], mag[k], mag[k + 1]);
        if l <= 0.0 || r <= 0.0 {
            return Peak {
                omega: spec.omega[k],
                height: c,
            };
        }
        let (ll, lc, lr) = (l.ln(), c.ln(), r.ln());
        let den = ll - 2.0 * lc + lr;
        let delta = if den == 0.0 {
            0.0
        } else {
            (0.5 * (ll - lr) / den).clamp(-0.5, 0.5)
        };
        Peak {
            omega: spec.omega[k] + delta * bin_width,
            height: (lc - 0.25 * (ll - lr) * delta).exp(),
        }
    };

    Ok(clusters
        .into_iter()
        .map(|cluster| {
            let best = cluster
                .into_iter()
                .max_by(|&a, &b| mag[a].partial_cmp(&mag[b]).expect("finite"))
                .expect("non-empty cluster");
            refine(best)
        })
        .collect())
}

/// Convenience wrapper: transform plus peak detection in one call.
pub fn analyze(
    series: &TimeSeries,
    threshold_fraction: f64,
    min_separation_bins: f64,
) -> Result<SpectrumResult> {
    let mut spec = fourier(series)?;
    spec.peaks = detect_peaks(&spec, threshold_fraction, min_separation_bins)?;
    Ok(spec)
}

/// The analytically expected spectral lines of D(ρ_ABC)(t), ascending, with
/// zero-frequency and zero-weight tones removed and duplicates collapsed.
pub fn predicted_frequencies(p: &SystemParams) -> Vec<f64> {
    let wp = p.rabi_plus();
    let w0 = p.rabi_zero();
    let c = p.alpha().cos().powi(2);
    let s = p.alpha().sin().powi(2);
    let mut tones = [
        (2.0 * (wp - w0), c * s),
        (4.0 * w0, 0.5 * s * s),
        (2.0 * (wp + w0), c * s),
        (4.0 * wp, 0.5 * c * c),
    ];
    tones.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
    let mut out: Vec<f64> = Vec::new();
    for (w, weight) in tones {
        let distinct = !out.iter().any(|&u| (u - w).abs() <= 1e-9 * p.g());
        if w > 1e-12 * p.g() && weight > 1e-30 && distinct {
            out.push(w);
        }
    }
    out
}
