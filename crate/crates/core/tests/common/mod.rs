//! Shared helpers for the integration suites: an independent Runge-Kutta
//! oracle for the closed-form amplitudes, and deterministic random inputs.

use num_complex::Complex64;

/// Numerically integrates i ∂_t ψ = H ψ for the four-level sector spanned by
/// {|1_A 0_B n⟩, |0_A 1_B n⟩, |0_A 0_B (n+1)⟩, |1_A 1_B (n−1)⟩}, with the
/// atomic splitting ω, cavity frequency ν and coupling g entering through
///
/// ```text
///     ⎛ νn                    g√(n+1)                ⎞
///     ⎜        νn                        g√n         ⎟
/// H = ⎜ g√(n+1)        −ω + ν(n+1)                   ⎟
///     ⎝        g√n                  ω + ν(n−1)       ⎠
/// ```
///
/// starting from (cos α, sin α, 0, 0). Classic fixed-step RK4; the step is
/// scaled to the largest frequency in the problem.
pub fn rk4_amplitudes(
    alpha: f64,
    n: u32,
    g: f64,
    nu: f64,
    omega: f64,
    t_end: f64,
) -> [Complex64; 4] {
    let nf = n as f64;
    let om_p = g * (nf + 1.0).sqrt();
    let om_0 = g * nf.sqrt();
    let h = [
        [nu * nf, 0.0, om_p, 0.0],
        [0.0, nu * nf, 0.0, om_0],
        [om_p, 0.0, -omega + nu * (nf + 1.0), 0.0],
        [0.0, om_0, 0.0, omega + nu * (nf - 1.0)],
    ];

    let deriv = |y: &[Complex64; 4]| -> [Complex64; 4] {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (i, row) in h.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, &hij) in row.iter().enumerate() {
                acc += hij * y[j];
            }
            out[i] = Complex64::new(0.0, -1.0) * acc;
        }
        out
    };

    let omega_scale = om_p + nu.abs() * (nf + 1.0) + omega.abs() + 1.0;
    let steps = ((t_end * omega_scale / 1e-3).ceil() as usize).clamp(1_000, 2_000_000);
    let dt = t_end / steps as f64;

    let mut y = [
        Complex64::new(alpha.cos(), 0.0),
        Complex64::new(alpha.sin(), 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    for _ in 0..steps {
        let k1 = deriv(&y);
        let mut y2 = y;
        for i in 0..4 {
            y2[i] += 0.5 * dt * k1[i];
        }
        let k2 = deriv(&y2);
        let mut y3 = y;
        for i in 0..4 {
            y3[i] += 0.5 * dt * k2[i];
        }
        let k3 = deriv(&y3);
        let mut y4 = y;
        for i in 0..4 {
            y4[i] += dt * k3[i];
        }
        let k4 = deriv(&y4);
        for i in 0..4 {
            y[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    y
}
