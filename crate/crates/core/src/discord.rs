//! Geometric quantum discord: the squared Hilbert-Schmidt distance from a
//! state to the nearest classical-quantum state, normalized so Bell states
//! score 1.
//!
//! Three independent routes are provided and cross-checked in the tests:
//!
//! 1. the two-qubit Bloch formula ½(‖x‖² + ‖T‖² − k_max),
//! 2. the qubit-qudit formula tr(S) − λ_max(S) with
//!    v_i = tr_A(ρ (σ_i ⊗ I)) and S_ij = tr(v_i v_j),
//! 3. direct minimization of 2‖ρ − Π(ρ)‖² over von Neumann measurements
//!    Π_± = (I ± u·σ)/2 on the measured qubit.
//!
//! Closed forms specialized to the Jaynes-Cummings + spectator-atom family
//! are provided for every bipartition; they are plain polynomials in the
//! amplitude populations |x_i|².

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{self, hermitian_eigenvalues, kron, ComplexMatrix, DensityMatrix};
use crate::model::{amplitudes, SystemParams};

/// Values in [−NEGATIVE_CLAMP, 0) are floating-point noise around an exact
/// zero and clamp to 0.
pub const NEGATIVE_CLAMP: f64 = 1e-12;

/// Which route produced a [`GqdResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GqdPath {
    ClosedForm,
    BlochTwoQubit,
    VsPipeline,
    MeasurementMin,
}

/// Which argument of the Max[·,·] in a closed form was active (ties count as
/// the first).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxBranch {
    First,
    Second,
}

/// Unit vector on the Bloch sphere selecting a von Neumann measurement.
#[derive(Debug, Clone, Copy)]
pub struct MeasurementDirection {
    u: [f64; 3],
}

impl MeasurementDirection {
    pub fn new(u: [f64; 3]) -> Result<Self> {
        let norm_sq = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "measurement direction must be a unit vector, |u|² = {norm_sq}"
            )));
        }
        Ok(Self { u })
    }

    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            u: [st * cp, st * sp, ct],
        }
    }

    pub fn components(&self) -> [f64; 3] {
        self.u
    }

    pub fn z(&self) -> f64 {
        self.u[2]
    }
}

/// A discord value together with the route that produced it and whatever
/// diagnostics that route had available.
#[derive(Debug, Clone)]
pub struct GqdResult {
    pub value: f64,
    pub path: GqdPath,
    /// Eigenvalues of the route's 3×3 matrix (descending), where applicable.
    pub eigenvalues: Option<[f64; 3]>,
    /// Optimal measurement direction (measurement-minimization route only).
    pub direction: Option<MeasurementDirection>,
    /// Active Max branch (closed forms with a Max only).
    pub branch: Option<MaxBranch>,
}

fn clamp_value(v: f64) -> f64 {
    if (-NEGATIVE_CLAMP..0.0).contains(&v) {
        0.0
    } else {
        v
    }
}

fn sorted3_desc(mut v: [f64; 3]) -> [f64; 3] {
    v.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    v
}

fn eig3_desc(k: &[[f64; 3]; 3]) -> [f64; 3] {
    let m = ComplexMatrix::from_fn(3, 3, |i, j| Complex64::new(k[i][j], 0.0));
    let e = hermitian_eigenvalues(&m).expect("symmetric 3x3");
    [e[0], e[1], e[2]]
}

// ---------------------------------------------------------------------------
// Bloch decomposition and the two-qubit formula
// ---------------------------------------------------------------------------

/// Pauli expansion of a two-qubit state: local Bloch vectors x, y and the
/// correlation matrix T with t_ij = tr(ρ (σ_i ⊗ σ_j)).
#[derive(Debug, Clone)]
pub struct BlochDecomposition {
    pub x: [f64; 3],
    pub y: [f64; 3],
    pub corr: [[f64; 3]; 3],
}

impl BlochDecomposition {
    /// Rebuilds ρ = ¼(I⊗I + Σ x_i σ_i⊗I + Σ y_i I⊗σ_i + Σ t_ij σ_i⊗σ_j).
    pub fn reconstruct(&self) -> DensityMatrix {
        let id = ComplexMatrix::identity(2);
        let sigma = matrix::paulis();
        let mut m = kron(&id, &id);
        for i in 0..3 {
            m = m.add(&kron(&sigma[i], &id).scale(self.x[i]));
            m = m.add(&kron(&id, &sigma[i]).scale(self.y[i]));
            for j in 0..3 {
                m = m.add(&kron(&sigma[i], &sigma[j]).scale(self.corr[i][j]));
            }
        }
        DensityMatrix::new(
            m.scale(0.25),
            matrix::SubsystemDims::new(vec![2, 2]).expect("valid dims"),
        )
        .expect("hermitian by construction")
    }
}

fn ensure_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims().sizes() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "expected a two-qubit state, got subsystem dimensions {:?}",
            rho.dims().sizes()
        )));
    }
    Ok(())
}

pub fn bloch_decompose(rho: &DensityMatrix) -> Result<BlochDecomposition> {
    ensure_two_qubits(rho)?;
    let m = rho.matrix();
    let id = ComplexMatrix::identity(2);
    let sigma = matrix::paulis();
    let expval = |op: &ComplexMatrix| m.mul(op).trace().re;
    let mut x = [0.0; 3];
    let mut y = [0.0; 3];
    let mut corr = [[0.0; 3]; 3];
    for i in 0..3 {
        x[i] = expval(&kron(&sigma[i], &id));
        y[i] = expval(&kron(&id, &sigma[i]));
        for j in 0..3 {
            corr[i][j] = expval(&kron(&sigma[i], &sigma[j]));
        }
    }
    Ok(BlochDecomposition { x, y, corr })
}

/// Normalized two-qubit geometric discord ½(‖x‖² + ‖T‖² − k_max), with k_max
/// the largest eigenvalue of x xᵗ + T Tᵗ.
pub fn gqd_two_qubit(rho: &DensityMatrix) -> Result<GqdResult> {
    let b = bloch_decompose(rho)?;
    let mut k = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut v = b.x[i] * b.x[j];
            for l in 0..3 {
                v += b.corr[i][l] * b.corr[j][l];
            }
            k[i][j] = v;
        }
    }
    let eig = eig3_desc(&k);
    let x_sq: f64 = b.x.iter().map(|v| v * v).sum();
    let t_sq: f64 = b.corr.iter().flatten().map(|v| v * v).sum();
    Ok(GqdResult {
        value: clamp_value(0.5 * (x_sq + t_sq - eig[0])),
        path: GqdPath::BlochTwoQubit,
        eigenvalues: Some(eig),
        direction: None,
        branch: None,
    })
}

// ---------------------------------------------------------------------------
// Qubit-qudit v/S pipeline
// ---------------------------------------------------------------------------

/// The 3×3 correlation matrix S_ij = tr(v_i v_j) with
/// v_i = tr_A(ρ (σ_i ⊗ I_d)); the measured qubit must be the first
/// subsystem, the remaining factors are grouped into the qudit.
pub fn correlation_matrix(rho: &DensityMatrix) -> Result<[[f64; 3]; 3]> {
    let sizes = rho.dims().sizes();
    if sizes[0] != 2 {
        return Err(Error::MeasuredSideNotQubit(sizes[0]));
    }
    let d = rho.dim() / 2;
    let m = rho.matrix();
    let sigma = matrix::paulis();

    let mut v: Vec<ComplexMatrix> = Vec::with_capacity(3);
    for s in &sigma {
        let mut vi = ComplexMatrix::zeros(d, d);
        for b in 0..d {
            for bp in 0..d {
                let mut acc = Complex64::new(0.0, 0.0);
                for a in 0..2 {
                    for ap in 0..2 {
                        acc += m[(a * d + b, ap * d + bp)] * s[(ap, a)];
                    }
                }
                vi[(b, bp)] = acc;
            }
        }
        v.push(vi);
    }

    let trace_prod = |a: &ComplexMatrix, b: &ComplexMatrix| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..d {
            for j in 0..d {
                acc += a[(i, j)] * b[(j, i)];
            }
        }
        acc
    };

    let mut s_mat = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let val = 0.5 * (trace_prod(&v[i], &v[j]) + trace_prod(&v[j], &v[i])).re;
            s_mat[i][j] = val;
            s_mat[j][i] = val;
        }
    }
    Ok(s_mat)
}

/// Normalized qubit-qudit geometric discord tr(S) − λ_max(S) for a state
/// with the measured qubit first. Reduces to [`gqd_two_qubit`] when d = 2.
pub fn gqd_qubit_qudit(rho: &DensityMatrix) -> Result<GqdResult> {
    let s = correlation_matrix(rho)?;
    let eig = eig3_desc(&s);
    let trace = s[0][0] + s[1][1] + s[2][2];
    Ok(GqdResult {
        value: clamp_value(trace - eig[0]),
        path: GqdPath::VsPipeline,
        eigenvalues: Some(eig),
        direction: None,
        branch: None,
    })
}

// ---------------------------------------------------------------------------
// Closed forms for the Jaynes-Cummings + spectator family
// ---------------------------------------------------------------------------

fn closed_result(value: f64, eig: [f64; 3], branch: Option<MaxBranch>) -> GqdResult {
    GqdResult {
        value: clamp_value(value),
        path: GqdPath::ClosedForm,
        eigenvalues: Some(sorted3_desc(eig)),
        direction: None,
        branch,
    }
}

pub(crate) fn closed_ab_from_probs(pr: &[f64; 4]) -> GqdResult {
    let q = pr[0] * pr[1];
    let z = (pr[0] - pr[2]).powi(2) + (pr[1] - pr[3]).powi(2);
    let branch = if 2.0 * q >= z {
        MaxBranch::First
    } else {
        MaxBranch::Second
    };
    let kmax = match branch {
        MaxBranch::First => 2.0 * q,
        MaxBranch::Second => z,
    };
    closed_result(4.0 * q + z - kmax, [2.0 * q, 2.0 * q, z], Some(branch))
}

pub(crate) fn closed_ac_from_probs(pr: &[f64; 4]) -> GqdResult {
    let s_zz = pr[0] * pr[0] + pr[1] * pr[1] + pr[2] * pr[2] + pr[3] * pr[3] - 2.0 * pr[0] * pr[1];
    let w = pr[0] * pr[2] + pr[1] * pr[3];
    let branch = if s_zz >= 2.0 * w {
        MaxBranch::First
    } else {
        MaxBranch::Second
    };
    let kmax = match branch {
        MaxBranch::First => s_zz,
        MaxBranch::Second => 2.0 * w,
    };
    closed_result(s_zz + 4.0 * w - kmax, [2.0 * w, 2.0 * w, s_zz], Some(branch))
}

pub(crate) fn closed_bc_from_probs(pr: &[f64; 4]) -> GqdResult {
    // same structure as the A-C case with the atom branches exchanged:
    // the cross products become |x2x3|² + |x1x4|²
    let swapped = [pr[1], pr[0], pr[2], pr[3]];
    closed_ac_from_probs(&swapped)
}

pub(crate) fn closed_abc_from_probs(pr: &[f64; 4]) -> GqdResult {
    let w1 = pr[0] + pr[3];
    let w0 = pr[1] + pr[2];
    closed_result(
        4.0 * w1 * w0,
        [2.0 * w0 * w1, 2.0 * w0 * w1, w0 * w0 + w1 * w1],
        None,
    )
}

pub(crate) fn closed_b_ac_from_probs(pr: &[f64; 4]) -> GqdResult {
    let w0 = pr[0] + pr[2];
    let w1 = pr[1] + pr[3];
    closed_result(
        4.0 * w0 * w1,
        [2.0 * w0 * w1, 2.0 * w0 * w1, w0 * w0 + w1 * w1],
        None,
    )
}

pub(crate) fn closed_ba_from_probs(pr: &[f64; 4]) -> GqdResult {
    let q = pr[0] * pr[1];
    let z = (pr[1] - pr[2]).powi(2) + (pr[0] - pr[3]).powi(2);
    let branch = if 2.0 * q >= z {
        MaxBranch::First
    } else {
        MaxBranch::Second
    };
    let kmax = match branch {
        MaxBranch::First => 2.0 * q,
        MaxBranch::Second => z,
    };
    closed_result(4.0 * q + z - kmax, [2.0 * q, 2.0 * q, z], Some(branch))
}

/// Closed-form discord of the two-atom state, measurement on A:
/// 4|x1x2|² + (|x1|²−|x3|²)² + (|x2|²−|x4|²)²
/// − Max[2|x1x2|², (|x1|²−|x3|²)² + (|x2|²−|x4|²)²].
pub fn gqd_ab_closed(p: &SystemParams, t: f64) -> GqdResult {
    closed_ab_from_probs(&amplitudes(p, t).probabilities())
}

/// Closed-form discord of atom A with the cavity, measurement on A.
pub fn gqd_ac_closed(p: &SystemParams, t: f64) -> GqdResult {
    closed_ac_from_probs(&amplitudes(p, t).probabilities())
}

/// Closed-form discord of atom B with the cavity, measurement on B.
pub fn gqd_bc_closed(p: &SystemParams, t: f64) -> GqdResult {
    closed_bc_from_probs(&amplitudes(p, t).probabilities())
}

/// Closed-form discord of the total system, measurement on A:
/// 4(|x1|²+|x4|²)(|x2|²+|x3|²).
pub fn gqd_abc_closed(p: &SystemParams, t: f64) -> GqdResult {
    closed_abc_from_probs(&amplitudes(p, t).probabilities())
}

/// Closed-form discord of the total system, measurement on B:
/// 4(|x1|²+|x3|²)(|x2|²+|x4|²).
pub fn gqd_b_ac_closed(p: &SystemParams, t: f64) -> GqdResult {
    closed_b_ac_from_probs(&amplitudes(p, t).probabilities())
}

/// Closed-form discord of the two-atom state, measurement on B.
pub fn gqd_ba_closed(p: &SystemParams, t: f64) -> GqdResult {
    closed_ba_from_probs(&amplitudes(p, t).probabilities())
}

// ---------------------------------------------------------------------------
// Measurement disturbance and its minimization
// ---------------------------------------------------------------------------

fn qubit_split(rho: &DensityMatrix, measured: usize) -> Result<(usize, usize)> {
    let sizes = rho.dims().sizes();
    if measured >= sizes.len() {
        return Err(Error::DimensionMismatch(format!(
            "measured subsystem index {measured} out of range for {sizes:?}"
        )));
    }
    if sizes[measured] != 2 {
        return Err(Error::MeasuredSideNotQubit(sizes[measured]));
    }
    let pre: usize = sizes[..measured].iter().product();
    let post: usize = sizes[measured + 1..].iter().product();
    Ok((pre, post))
}

/// ‖ρ − Π(ρ)‖² for the von Neumann measurement along `dir` on the
/// `measured` qubit, evaluated by sandwiching both projectors
/// Π_± = (I ± u·σ)/2 explicitly. Valid for any state, not just the model
/// family.
pub fn measurement_residual(
    rho: &DensityMatrix,
    measured: usize,
    dir: &MeasurementDirection,
) -> Result<f64> {
    let (pre, post) = qubit_split(rho, measured)?;
    let u = dir.components();
    let sigma = matrix::paulis();
    let mut u_sigma = ComplexMatrix::zeros(2, 2);
    for (i, s) in sigma.iter().enumerate() {
        u_sigma = u_sigma.add(&s.scale(u[i]));
    }
    let embed = |p2: &ComplexMatrix| {
        kron(
            &kron(&ComplexMatrix::identity(pre.max(1)), p2),
            &ComplexMatrix::identity(post.max(1)),
        )
    };
    let p_plus = embed(&ComplexMatrix::identity(2).add(&u_sigma).scale(0.5));
    let p_minus = embed(&ComplexMatrix::identity(2).sub(&u_sigma).scale(0.5));
    let m = rho.matrix();
    let projected = p_plus
        .mul(m)
        .mul(&p_plus)
        .add(&p_minus.mul(m).mul(&p_minus));
    Ok(m.sub(&projected).frobenius_norm_sq())
}

/// Same quantity computed through the algebraic identity
/// Σ_± Π_± ρ Π_± = ½(ρ + UρU) with U = u·σ on the measured slot, which
/// avoids building the full projectors. Used by the minimizer;
/// equality with [`measurement_residual`] is pinned by a test.
fn residual_conjugation(m: &ComplexMatrix, post: usize, u: [f64; 3]) -> f64 {
    let n = m.rows();
    let u2 = [
        [Complex64::new(u[2], 0.0), Complex64::new(u[0], -u[1])],
        [Complex64::new(u[0], u[1]), Complex64::new(-u[2], 0.0)],
    ];
    let mut acc = 0.0;
    for r in 0..n {
        let ar = (r / post) % 2;
        let r0 = r - ar * post;
        for c in 0..n {
            let bc = (c / post) % 2;
            let c0 = c - bc * post;
            let mut s = Complex64::new(0.0, 0.0);
            for ap in 0..2 {
                for bp in 0..2 {
                    s += u2[ar][ap] * m[(r0 + ap * post, c0 + bp * post)] * u2[bp][bc];
                }
            }
            acc += (m[(r, c)] - s).norm_sqr();
        }
    }
    0.25 * acc
}

fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

const GRID_THETA: usize = 64;
const GRID_PHI: usize = 128;

/// A candidate only replaces the incumbent when it wins by more than this,
/// so that rounding noise on a flat objective cannot pull the minimizer off
/// an exact grid optimum (the pole, for the model family).
const IMPROVEMENT_MARGIN: f64 = 1e-13;

/// Discord by direct minimization: 2 × min over the Bloch sphere of the
/// measurement disturbance on the `measured` qubit. Deterministic coarse
/// grid (64 × 128 in θ, φ, evaluated in a fixed order with strict-improvement
/// updates) followed by alternating golden-section refinement below 1e-8 in
/// angle; a refined point is only accepted when it strictly beats the grid,
/// so exact grid optima — the poles, for this model family — survive ties.
pub fn gqd_measurement_min(rho: &DensityMatrix, measured: usize) -> Result<GqdResult> {
    let (_pre, post) = qubit_split(rho, measured)?;
    let m = rho.matrix();
    let eval = |theta: f64, phi: f64| {
        residual_conjugation(
            m,
            post.max(1),
            MeasurementDirection::from_angles(theta, phi).components(),
        )
    };

    let theta_step = std::f64::consts::PI / (GRID_THETA - 1) as f64;
    let phi_step = 2.0 * std::f64::consts::PI / GRID_PHI as f64;

    let mut best = (f64::INFINITY, 0.0f64, 0.0f64);
    for i in 0..GRID_THETA {
        let theta = theta_step * i as f64;
        for j in 0..GRID_PHI {
            let phi = phi_step * j as f64;
            let r = eval(theta, phi);
            if r < best.0 - IMPROVEMENT_MARGIN {
                best = (r, theta, phi);
            }
        }
    }

    let (mut cur, mut th, mut ph) = best;
    for _round in 0..3 {
        let lo = (th - theta_step).max(0.0);
        let hi = (th + theta_step).min(std::f64::consts::PI);
        let (t_cand, f_cand) = golden_min(|x| eval(x, ph), lo, hi, 1e-9);
        if f_cand < cur - IMPROVEMENT_MARGIN {
            cur = f_cand;
            th = t_cand;
        }
        let (p_cand, f_cand) = golden_min(|x| eval(th, x), ph - phi_step, ph + phi_step, 1e-9);
        if f_cand < cur - IMPROVEMENT_MARGIN {
            cur = f_cand;
            ph = p_cand;
        }
    }

    Ok(GqdResult {
        value: clamp_value(2.0 * cur),
        path: GqdPath::MeasurementMin,
        eigenvalues: None,
        direction: Some(MeasurementDirection::from_angles(th, ph)),
        branch: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SubsystemDims;
    use crate::model::{
        equivalent_two_qubit, rho_ab, rho_abc, rho_ac, rho_ba, rho_bac, rho_bc, SystemParams,
    };
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

    fn params(alpha: f64, n: u32) -> SystemParams {
        SystemParams::resonant(alpha, n, 1.0, 1.0).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_pure(rng: &mut ChaCha8Rng, dims: Vec<usize>) -> DensityMatrix {
        let n: usize = dims.iter().product();
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        DensityMatrix::from_pure_state(&v, SubsystemDims::new(dims).unwrap()).unwrap()
    }

    fn random_mixed(rng: &mut ChaCha8Rng, dims: Vec<usize>, rank: usize) -> DensityMatrix {
        let n: usize = dims.iter().product();
        let mut m = ComplexMatrix::zeros(n, n);
        let mut weights = vec![];
        for _ in 0..rank {
            weights.push(rng.gen::<f64>() + 0.05);
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        for &w in &weights {
            let pure = random_pure(rng, dims.clone());
            m = m.add(&pure.matrix().scale(w));
        }
        DensityMatrix::new(m, SubsystemDims::new(dims).unwrap()).unwrap()
    }

    fn product_state(rng: &mut ChaCha8Rng, d_b: usize) -> DensityMatrix {
        let a = random_mixed(rng, vec![2], 2);
        let b = random_mixed(rng, vec![d_b], d_b);
        DensityMatrix::new(
            kron(a.matrix(), b.matrix()),
            SubsystemDims::new(vec![2, d_b]).unwrap(),
        )
        .unwrap()
    }

    fn bell_state() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)];
        DensityMatrix::from_pure_state(&psi, SubsystemDims::new(vec![2, 2]).unwrap()).unwrap()
    }

    #[test]
    fn bloch_of_maximally_mixed_vanishes() {
        let rho = DensityMatrix::new(
            ComplexMatrix::identity(4).scale(0.25),
            SubsystemDims::new(vec![2, 2]).unwrap(),
        )
        .unwrap();
        let b = bloch_decompose(&rho).unwrap();
        for v in b.x.iter().chain(&b.y).chain(b.corr.iter().flatten()) {
            assert_abs_diff_eq!(*v, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn bloch_of_bell_state() {
        let b = bloch_decompose(&bell_state()).unwrap();
        for i in 0..3 {
            assert_abs_diff_eq!(b.x[i], 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(b.y[i], 0.0, epsilon = 1e-14);
        }
        assert_abs_diff_eq!(b.corr[0][0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.corr[1][1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.corr[2][2], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.corr[0][1], 0.0, epsilon = 1e-14);
    }

    #[test]
    fn bloch_z_component_of_two_atom_state() {
        // With ρ = |Ψ⟩⟨Ψ| the A-side z-component is
        // (|x2|²+|x3|²) − (|x1|²+|x4|²).
        let p = params(0.6, 2);
        let t = 1.9;
        let pr = amplitudes(&p, t).probabilities();
        let b = bloch_decompose(&rho_ab(&p, t)).unwrap();
        assert_abs_diff_eq!(b.x[2], (pr[1] + pr[2]) - (pr[0] + pr[3]), epsilon = 1e-13);
    }

    #[test]
    fn bloch_reconstruction_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let rho = random_mixed(&mut rng, vec![2, 2], 3);
            let rebuilt = bloch_decompose(&rho).unwrap().reconstruct();
            for i in 0..4 {
                for j in 0..4 {
                    assert!(
                        (rho.matrix()[(i, j)] - rebuilt.matrix()[(i, j)]).norm() < 1e-12,
                        "entry ({i},{j}) diverged"
                    );
                }
            }
        }
    }

    #[test]
    fn two_qubit_discord_of_product_state_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..10 {
            let rho = product_state(&mut rng, 2);
            let d = gqd_two_qubit(&rho).unwrap();
            assert!(d.value < 1e-10, "product state discord = {}", d.value);
        }
    }

    #[test]
    fn two_qubit_discord_of_bell_state_is_one() {
        let d = gqd_two_qubit(&bell_state()).unwrap();
        assert_abs_diff_eq!(d.value, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn pipeline_agrees_with_two_qubit_formula_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..25 {
            let rho = random_mixed(&mut rng, vec![2, 2], 4);
            let a = gqd_two_qubit(&rho).unwrap().value;
            let b = gqd_qubit_qudit(&rho).unwrap().value;
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn pipeline_of_qubit_qutrit_product_state_vanishes() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..10 {
            let rho = product_state(&mut rng, 3);
            assert!(gqd_qubit_qudit(&rho).unwrap().value < 1e-10);
        }
    }

    #[test]
    fn pipeline_rejects_non_qubit_measured_side() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let rho = random_pure(&mut rng, vec![3, 2]);
        assert!(matches!(
            gqd_qubit_qudit(&rho),
            Err(Error::MeasuredSideNotQubit(3))
        ));
    }

    #[test]
    fn correlation_matrix_matches_known_diagonal_for_two_atom_state() {
        // S = diag(2|x1x2|², 2|x1x2|², (|x1|²−|x3|²)² + (|x2|²−|x4|²)²),
        // which also pins the σ_z = |0⟩⟨0| − |1⟩⟨1| convention.
        for (alpha, n, t) in [(0.5, 2, 1.3), (FRAC_PI_4, 0, 3.7), (1.1, 4, 0.4)] {
            let p = params(alpha, n);
            let pr = amplitudes(&p, t).probabilities();
            let s = correlation_matrix(&rho_ab(&p, t)).unwrap();
            let q = 2.0 * pr[0] * pr[1];
            let z = (pr[0] - pr[2]).powi(2) + (pr[1] - pr[3]).powi(2);
            assert_abs_diff_eq!(s[0][0], q, epsilon = 1e-13);
            assert_abs_diff_eq!(s[1][1], q, epsilon = 1e-13);
            assert_abs_diff_eq!(s[2][2], z, epsilon = 1e-13);
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        assert_abs_diff_eq!(s[i][j], 0.0, epsilon = 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn closed_ab_limits() {
        assert_abs_diff_eq!(
            gqd_ab_closed(&params(FRAC_PI_4, 0), 0.0).value,
            1.0,
            epsilon = 1e-15
        );
        for t in [0.0, 0.7, 2.9, 11.0] {
            assert_eq!(gqd_ab_closed(&params(0.0, 3), t).value, 0.0);
        }
        // t = 0: sin²(2α) for any α, and equal to the Bloch formula.
        for alpha in [0.2, 0.9, 1.4] {
            let p = params(alpha, 2);
            let closed = gqd_ab_closed(&p, 0.0).value;
            assert_abs_diff_eq!(closed, (2.0 * alpha).sin().powi(2), epsilon = 1e-14);
            assert_abs_diff_eq!(
                closed,
                gqd_two_qubit(&rho_ab(&p, 0.0)).unwrap().value,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn closed_ac_limits() {
        assert_abs_diff_eq!(gqd_ac_closed(&params(0.9, 2), 0.0).value, 0.0, epsilon = 1e-15);
        // α = 0 leaves the single-frequency oscillation sin²(2Ω₊t).
        let p = params(0.0, 3);
        for t in [0.3, 1.1, 2.2] {
            assert_abs_diff_eq!(
                gqd_ac_closed(&p, t).value,
                (2.0 * p.rabi_plus() * t).sin().powi(2),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn closed_forms_match_pipeline_on_sample_grid() {
        for alpha in [0.0, PI / 12.0, FRAC_PI_6, FRAC_PI_4] {
            for n in [0u32, 1, 3] {
                let p = params(alpha, n);
                for k in 0..40 {
                    let t = 25.0 * k as f64 / 39.0;
                    let pr = amplitudes(&p, t).probabilities();
                    let pairs = [
                        (closed_ab_from_probs(&pr).value, rho_ab(&p, t)),
                        (closed_ac_from_probs(&pr).value, rho_ac(&p, t)),
                        (closed_bc_from_probs(&pr).value, rho_bc(&p, t)),
                        (closed_abc_from_probs(&pr).value, rho_abc(&p, t)),
                        (closed_b_ac_from_probs(&pr).value, rho_bac(&p, t)),
                        (closed_ba_from_probs(&pr).value, rho_ba(&p, t)),
                    ];
                    for (closed, state) in pairs {
                        let pipe = gqd_qubit_qudit(&state).unwrap().value;
                        assert!(
                            (closed - pipe).abs() < 1e-10,
                            "alpha={alpha} n={n} t={t}: closed {closed} vs pipeline {pipe}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn closed_ba_matches_verbatim_polynomial() {
        // Factored form vs the expanded polynomial
        // Q + 2p1(2p2 − p4) − 2p2p3 − Max[2p1p2, Q − 2p2p3 − 2p1p4].
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..200 {
            let mut pr = [0.0; 4];
            let mut total = 0.0;
            for v in pr.iter_mut() {
                *v = rng.gen::<f64>();
                total += *v;
            }
            for v in pr.iter_mut() {
                *v /= total;
            }
            let q_sum = pr.iter().map(|x| x * x).sum::<f64>();
            let verbatim = q_sum + 2.0 * pr[0] * (2.0 * pr[1] - pr[3]) - 2.0 * pr[1] * pr[2]
                - f64::max(
                    2.0 * pr[0] * pr[1],
                    q_sum - 2.0 * pr[1] * pr[2] - 2.0 * pr[0] * pr[3],
                );
            assert_abs_diff_eq!(closed_ba_from_probs(&pr).value, verbatim, epsilon = 1e-14);
        }
    }

    #[test]
    fn closed_ba_limits() {
        assert_abs_diff_eq!(
            gqd_ba_closed(&params(FRAC_PI_4, 2), 0.0).value,
            1.0,
            epsilon = 1e-15
        );
        for t in [0.4, 1.7, 6.1] {
            assert_eq!(gqd_ba_closed(&params(0.0, 2), t).value, 0.0);
        }
    }

    #[test]
    fn closed_total_system_limits() {
        for alpha in [0.0, 0.4, FRAC_PI_4] {
            let expected = (2.0 * alpha).sin().powi(2);
            assert_abs_diff_eq!(
                gqd_abc_closed(&params(alpha, 3), 0.0).value,
                expected,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                gqd_b_ac_closed(&params(alpha, 3), 0.0).value,
                expected,
                epsilon = 1e-14
            );
        }
        let p = params(0.0, 2);
        for t in [0.5, 1.9] {
            assert_abs_diff_eq!(
                gqd_abc_closed(&p, t).value,
                (2.0 * p.rabi_plus() * t).sin().powi(2),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn equivalent_two_qubit_reproduces_total_system_discord() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..50 {
            let p = SystemParams::resonant(
                rng.gen_range(0.0..FRAC_PI_2),
                rng.gen_range(0..6),
                rng.gen_range(0.3..2.0),
                rng.gen_range(0.3..2.0),
            )
            .unwrap();
            let t = rng.gen_range(0.0..30.0);
            let via_ax = gqd_two_qubit(&equivalent_two_qubit(&p, t)).unwrap().value;
            assert_abs_diff_eq!(via_ax, gqd_abc_closed(&p, t).value, epsilon = 1e-10);
        }
    }

    #[test]
    fn residual_matches_evaluated_model_formula() {
        // For model states: ½[1 − (|x1|²−|x2|²−|x3|²+|x4|²)² u_z²].
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..20 {
            let p = SystemParams::resonant(
                rng.gen_range(0.0..FRAC_PI_2),
                rng.gen_range(0..5),
                1.0,
                1.0,
            )
            .unwrap();
            let t = rng.gen_range(0.0..20.0);
            let rho = rho_abc(&p, t);
            let pr = amplitudes(&p, t).probabilities();
            let contrast = pr[0] - pr[1] - pr[2] + pr[3];
            let dir = MeasurementDirection::from_angles(
                rng.gen_range(0.0..PI),
                rng.gen_range(0.0..2.0 * PI),
            );
            let got = measurement_residual(&rho, 0, &dir).unwrap();
            let want = 0.5 * (1.0 - contrast * contrast * dir.z() * dir.z());
            assert_abs_diff_eq!(got, want, epsilon = 1e-12);
        }
    }

    #[test]
    fn residual_along_x_axis_is_half_for_model_states() {
        let dir = MeasurementDirection::new([1.0, 0.0, 0.0]).unwrap();
        let rho = rho_abc(&params(0.7, 2), 3.1);
        assert_abs_diff_eq!(
            measurement_residual(&rho, 0, &dir).unwrap(),
            0.5,
            epsilon = 1e-13
        );
    }

    #[test]
    fn residual_vanishes_for_classical_state_measured_along_its_basis() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = c(0.5, 0.0);
        m[(3, 3)] = c(0.5, 0.0);
        let rho = DensityMatrix::new(m, SubsystemDims::new(vec![2, 2]).unwrap()).unwrap();
        let dir = MeasurementDirection::new([0.0, 0.0, 1.0]).unwrap();
        assert_abs_diff_eq!(
            measurement_residual(&rho, 0, &dir).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pole_measurement_minimizes_residual_for_model_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        for _ in 0..10 {
            let p = SystemParams::resonant(
                rng.gen_range(0.0..FRAC_PI_2),
                rng.gen_range(0..4),
                1.0,
                1.0,
            )
            .unwrap();
            let rho = rho_abc(&p, rng.gen_range(0.0..15.0));
            let pole = MeasurementDirection::new([0.0, 0.0, 1.0]).unwrap();
            let at_pole = measurement_residual(&rho, 0, &pole).unwrap();
            for _ in 0..25 {
                let dir = MeasurementDirection::from_angles(
                    rng.gen_range(0.0..PI),
                    rng.gen_range(0.0..2.0 * PI),
                );
                assert!(measurement_residual(&rho, 0, &dir).unwrap() >= at_pole - 1e-14);
            }
        }
    }

    #[test]
    fn conjugation_residual_equals_projector_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for dims in [vec![2, 2], vec![2, 2, 3], vec![2, 3]] {
            for _ in 0..8 {
                let rho = random_mixed(&mut rng, dims.clone(), 3);
                let dir = MeasurementDirection::from_angles(
                    rng.gen_range(0.0..PI),
                    rng.gen_range(0.0..2.0 * PI),
                );
                let slow = measurement_residual(&rho, 0, &dir).unwrap();
                let post: usize = dims[1..].iter().product();
                let fast = residual_conjugation(rho.matrix(), post, dir.components());
                assert_abs_diff_eq!(slow, fast, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn minimization_matches_closed_total_forms() {
        for (alpha, n, t) in [(FRAC_PI_4, 0, 0.9), (FRAC_PI_6, 3, 2.2), (0.2, 1, 7.5)] {
            let p = params(alpha, n);
            let rho = rho_abc(&p, t);
            let on_a = gqd_measurement_min(&rho, 0).unwrap();
            assert_abs_diff_eq!(on_a.value, gqd_abc_closed(&p, t).value, epsilon = 1e-6);
            assert!(on_a.direction.unwrap().z().abs() > 1.0 - 1e-6);
            let on_b = gqd_measurement_min(&rho, 1).unwrap();
            assert_abs_diff_eq!(on_b.value, gqd_b_ac_closed(&p, t).value, epsilon = 1e-6);
        }
    }

    #[test]
    fn minimization_vanishes_on_classical_state() {
        let mut m = ComplexMatrix::zeros(4, 4);
        m[(0, 0)] = c(0.3, 0.0);
        m[(3, 3)] = c(0.7, 0.0);
        let rho = DensityMatrix::new(m, SubsystemDims::new(vec![2, 2]).unwrap()).unwrap();
        let d = gqd_measurement_min(&rho, 0).unwrap();
        assert!(d.value < 1e-8);
    }

    #[test]
    fn degenerate_state_still_reports_pole_direction() {
        // At t = 0, α = π/4 every direction does equally well; the
        // deterministic tie-break must keep the pole.
        let rho = rho_abc(&params(FRAC_PI_4, 1), 0.0);
        let d = gqd_measurement_min(&rho, 0).unwrap();
        assert!(d.direction.unwrap().z().abs() > 1.0 - 1e-9);
        assert_abs_diff_eq!(d.value, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn local_unitary_invariance_of_two_qubit_discord() {
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..10 {
            let rho = random_mixed(&mut rng, vec![2, 2], 3);
            // random single-qubit unitaries from normalized Gram-Schmidt
            let mut make_u = || {
                let a = ComplexMatrix::from_fn(2, 2, |_, _| {
                    c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
                });
                let col0 = [a[(0, 0)], a[(1, 0)]];
                let n0 = (col0[0].norm_sqr() + col0[1].norm_sqr()).sqrt();
                let col0 = [col0[0] / n0, col0[1] / n0];
                let mut col1 = [a[(0, 1)], a[(1, 1)]];
                let proj = col0[0].conj() * col1[0] + col0[1].conj() * col1[1];
                col1[0] -= proj * col0[0];
                col1[1] -= proj * col0[1];
                let n1 = (col1[0].norm_sqr() + col1[1].norm_sqr()).sqrt();
                ComplexMatrix::from_fn(2, 2, move |i, j| {
                    if j == 0 {
                        col0[i]
                    } else {
                        col1[i] / n1
                    }
                })
            };
            let u = kron(&make_u(), &make_u());
            let rotated = DensityMatrix::new(
                u.mul(rho.matrix()).mul(&u.dagger()),
                SubsystemDims::new(vec![2, 2]).unwrap(),
            )
            .unwrap();
            assert_abs_diff_eq!(
                gqd_two_qubit(&rho).unwrap().value,
                gqd_two_qubit(&rotated).unwrap().value,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn discord_values_stay_in_range_on_model_grid() {
        for alpha in [0.0, PI / 12.0, FRAC_PI_6, FRAC_PI_4, 1.5] {
            for n in [0u32, 2, 5] {
                let p = params(alpha, n);
                for k in 0..60 {
                    let t = 25.0 * k as f64 / 59.0;
                    for v in [
                        gqd_ab_closed(&p, t).value,
                        gqd_ac_closed(&p, t).value,
                        gqd_bc_closed(&p, t).value,
                        gqd_abc_closed(&p, t).value,
                        gqd_b_ac_closed(&p, t).value,
                        gqd_ba_closed(&p, t).value,
                    ] {
                        assert!((0.0..=1.0 + 1e-12).contains(&v), "out of range: {v}");
                    }
                }
            }
        }
    }
}
