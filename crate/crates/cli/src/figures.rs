//! Datasets behind the standard figures: four α curves per figure, with
//! F1-F4 sampling the closed-form discords over time and F5 emitting the
//! log-log power spectrum of the total-system discord.

use clap::ValueEnum;
use jc_gqd::discord::{gqd_ab_closed, gqd_abc_closed, gqd_ac_closed, gqd_bc_closed};
use jc_gqd::spectrum::{fourier, sample_series};
use jc_gqd::SystemParams;

use crate::config::time_grid;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    /// D(ρ_AB) vs t
    F1,
    /// D(ρ_AC) vs t
    F2,
    /// D(ρ_BC) vs t
    F3,
    /// D(ρ_ABC) vs t
    F4,
    /// log-log spectrum of D(ρ_ABC)
    F5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    N0,
    N3,
}

impl Variant {
    pub fn fock_number(self) -> u32 {
        match self {
            Variant::N0 => 0,
            Variant::N3 => 3,
        }
    }
}

/// The four curve angles, in the plotting order α = π/4, π/6, π/12, 0.
pub fn figure_alphas() -> [f64; 4] {
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_6, PI};
    [FRAC_PI_4, FRAC_PI_6, PI / 12.0, 0.0]
}

pub fn alpha_column_names() -> [&'static str; 4] {
    [
        "alpha_pi_over_4",
        "alpha_pi_over_6",
        "alpha_pi_over_12",
        "alpha_0",
    ]
}

/// Time-domain curves for F1-F4: the time grid plus one discord curve per
/// angle in [`figure_alphas`] order.
pub fn time_curves(
    id: FigureId,
    n: u32,
    g: f64,
    nu: f64,
    t_max: f64,
    samples: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), CliError> {
    let quantity: fn(&SystemParams, f64) -> f64 = match id {
        FigureId::F1 => |p, t| gqd_ab_closed(p, t).value,
        FigureId::F2 => |p, t| gqd_ac_closed(p, t).value,
        FigureId::F3 => |p, t| gqd_bc_closed(p, t).value,
        FigureId::F4 => |p, t| gqd_abc_closed(p, t).value,
        FigureId::F5 => {
            return Err(CliError::Usage(
                "F5 is a spectrum figure; use spectrum_curves".into(),
            ))
        }
    };
    let ts = time_grid(t_max, samples)?;
    let mut curves = Vec::with_capacity(4);
    for alpha in figure_alphas() {
        let p = SystemParams::resonant(alpha, n, g, nu)?;
        curves.push(ts.iter().map(|&t| quantity(&p, t)).collect());
    }
    Ok((ts, curves))
}

/// Log-log spectrum curves for F5: log10(ω) for every positive-frequency bin
/// plus log10|F| per angle. Magnitudes are floored at 1e-300 before taking
/// the logarithm.
pub fn spectrum_curves(
    n: u32,
    g: f64,
    nu: f64,
    t_max: f64,
    samples: usize,
) -> Result<(Vec<f64>, Vec<Vec<f64>>), CliError> {
    let mut log_omega: Option<Vec<f64>> = None;
    let mut curves = Vec::with_capacity(4);
    for alpha in figure_alphas() {
        let p = SystemParams::resonant(alpha, n, g, nu)?;
        let spec = fourier(&sample_series(&p, t_max, samples)?)?;
        if log_omega.is_none() {
            log_omega = Some(spec.omega[1..].iter().map(|w| w.log10()).collect());
        }
        curves.push(
            spec.magnitude[1..]
                .iter()
                .map(|m| m.max(1e-300).log10())
                .collect(),
        );
    }
    Ok((log_omega.expect("at least one curve"), curves))
}

/// A minimal gnuplot script for a dataset written by the figure command.
pub fn gnuplot_script(id: FigureId, data_file: &str) -> String {
    let (xlabel, ylabel, extra) = match id {
        FigureId::F5 => ("log10(omega)", "log10|F|", ""),
        _ => ("t", "geometric discord", "set yrange [0:1.05]\n"),
    };
    let mut script = format!(
        "set datafile separator \",\"\nset key autotitle columnhead\n\
         set xlabel \"{xlabel}\"\nset ylabel \"{ylabel}\"\n{extra}"
    );
    script.push_str(&format!(
        "plot for [col=2:5] \"{data_file}\" using 1:col with lines\n"
    ));
    script
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variant_maps_to_fock_number() {
        assert_eq!(Variant::N0.fock_number(), 0);
        assert_eq!(Variant::N3.fock_number(), 3);
    }

    #[test]
    fn curves_have_consistent_lengths() {
        let (ts, curves) = time_curves(FigureId::F1, 3, 1.0, 1.0, 25.0, 50).unwrap();
        assert_eq!(ts.len(), 50);
        assert_eq!(curves.len(), 4);
        assert!(curves.iter().all(|c| c.len() == 50));
    }

    #[test]
    fn f5_refuses_the_time_domain_builder() {
        assert!(time_curves(FigureId::F5, 0, 1.0, 1.0, 25.0, 10).is_err());
    }

    #[test]
    fn spectrum_curves_skip_the_dc_bin() {
        let (logw, curves) = spectrum_curves(0, 1.0, 1.0, 50.0, 512).unwrap();
        assert_eq!(logw.len(), 512 / 2 + 1 - 1);
        assert!(logw[0].is_finite());
        assert!(curves.iter().all(|c| c.len() == logw.len()));
        assert!(curves.iter().flatten().all(|v| v.is_finite()));
    }
}
