//! Exact resonant dynamics of a Jaynes-Cummings atom A coupled to a single
//! cavity mode C, alongside an isolated spectator atom B.
//!
//! The two atoms start in cos α |1_A 0_B⟩ + sin α |0_A 1_B⟩ with the cavity
//! in the Fock state |n⟩. On resonance (Δ = ω − ν = 0) the state stays inside
//! the span of four kets and evolves with the two Rabi rates Ω₊ = g√(n+1) and
//! Ω₀ = g√n:
//!
//! ```text
//! x1(t) = e^{-i n ν t} cos(Ω₊ t) cos α     on |1_A 0_B n_C⟩
//! x2(t) = e^{-i n ν t} cos(Ω₀ t) sin α     on |0_A 1_B n_C⟩
//! x3(t) = -i e^{-i n ν t} sin(Ω₊ t) cos α  on |0_A 0_B (n+1)_C⟩
//! x4(t) = -i e^{-i n ν t} sin(Ω₀ t) sin α  on |1_A 1_B (n-1)_C⟩
//! ```
//!
//! The cavity therefore only ever occupies the levels n−1, n, n+1, which is
//! the truncation used for every density matrix built here. For n = 0 the
//! |n−1⟩ level does not exist and x4 ≡ 0.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, DensityMatrix, SubsystemDims};

/// Physical configuration of one run: mixing angle α, initial Fock number n,
/// coupling g and the (locked) cavity/atom frequencies ν = ω.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SystemParams {
    alpha: f64,
    n: u32,
    g: f64,
    nu: f64,
    omega: f64,
}

impl SystemParams {
    /// Validates and builds a parameter set. The closed-form solution above
    /// only holds on resonance, so any nonzero detuning ω − ν is rejected.
    pub fn new(alpha: f64, n: u32, g: f64, nu: f64, omega: f64) -> Result<Self> {
        if !alpha.is_finite() || !(0.0..=std::f64::consts::FRAC_PI_2).contains(&alpha) {
            return Err(Error::InvalidParams(format!(
                "mixing angle alpha must lie in [0, pi/2], got {alpha}"
            )));
        }
        if !g.is_finite() || g <= 0.0 {
            return Err(Error::InvalidParams(format!(
                "coupling g must be positive, got {g}"
            )));
        }
        if !nu.is_finite() || !omega.is_finite() {
            return Err(Error::InvalidParams("frequencies must be finite".into()));
        }
        if omega - nu != 0.0 {
            return Err(Error::InvalidParams(format!(
                "detuning omega - nu must be exactly zero, got {}",
                omega - nu
            )));
        }
        Ok(Self {
            alpha,
            n,
            g,
            nu,
            omega,
        })
    }

    /// Resonant constructor: ω is set equal to ν.
    pub fn resonant(alpha: f64, n: u32, g: f64, nu: f64) -> Result<Self> {
        Self::new(alpha, n, g, nu, nu)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn detuning(&self) -> f64 {
        self.omega - self.nu
    }

    /// Fast Rabi rate Ω₊ = g√(n+1).
    pub fn rabi_plus(&self) -> f64 {
        self.g * (self.n as f64 + 1.0).sqrt()
    }

    /// Slow Rabi rate Ω₀ = g√n (zero for an initially empty cavity).
    pub fn rabi_zero(&self) -> f64 {
        self.g * (self.n as f64).sqrt()
    }
}

/// The four amplitudes of the evolved state at time `t`.
#[derive(Debug, Clone, Copy)]
pub struct Amplitudes {
    pub x1: Complex64,
    pub x2: Complex64,
    pub x3: Complex64,
    pub x4: Complex64,
    pub t: f64,
}

impl Amplitudes {
    /// `[|x1|², |x2|², |x3|², |x4|²]`.
    pub fn probabilities(&self) -> [f64; 4] {
        [
            self.x1.norm_sqr(),
            self.x2.norm_sqr(),
            self.x3.norm_sqr(),
            self.x4.norm_sqr(),
        ]
    }

    pub fn norm_sq(&self) -> f64 {
        let p = self.probabilities();
        p[0] + p[1] + p[2] + p[3]
    }
}

/// The cavity Fock levels actually populated: `[n-1, n, n+1]`, or `[n, n+1]`
/// when the cavity starts empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CavityBasis {
    levels: Vec<u32>,
}

impl CavityBasis {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn index_of(&self, level: u32) -> Option<usize> {
        self.levels.iter().position(|&l| l == level)
    }
}

pub fn cavity_basis(n: u32) -> CavityBasis {
    let levels = if n == 0 {
        vec![0, 1]
    } else {
        vec![n - 1, n, n + 1]
    };
    CavityBasis { levels }
}

/// Closed-form amplitudes at time `t ≥ 0`.
pub fn amplitudes(p: &SystemParams, t: f64) -> Amplitudes {
    let phase = Complex64::from_polar(1.0, -(p.n as f64) * p.nu * t);
    let minus_i = Complex64::new(0.0, -1.0);
    let (sin_a, cos_a) = p.alpha.sin_cos();
    let wp = p.rabi_plus() * t;
    let w0 = p.rabi_zero() * t;
    Amplitudes {
        x1: phase * (wp.cos() * cos_a),
        x2: phase * (w0.cos() * sin_a),
        x3: minus_i * phase * (wp.sin() * cos_a),
        x4: minus_i * phase * (w0.sin() * sin_a),
        t,
    }
}

/// Unit state vector on A ⊗ B ⊗ C with the cavity truncated to
/// [`cavity_basis`]. Index layout is `(a·2 + b)·L + c` with `a, b` the atomic
/// labels and `c` the position of the Fock level in the basis.
pub fn state_vector(p: &SystemParams, t: f64) -> Vec<Complex64> {
    let basis = cavity_basis(p.n);
    let l = basis.len();
    let a = amplitudes(p, t);
    let mut psi = vec![Complex64::new(0.0, 0.0); 4 * l];
    let mut put = |qa: usize, qb: usize, level: u32, v: Complex64| {
        let c = basis.index_of(level).expect("level inside cavity basis");
        psi[(qa * 2 + qb) * l + c] = v;
    };
    put(1, 0, p.n, a.x1);
    put(0, 1, p.n, a.x2);
    put(0, 0, p.n + 1, a.x3);
    if p.n >= 1 {
        put(1, 1, p.n - 1, a.x4);
    }
    psi
}

/// Pure-state projector |Ψ(t)⟩⟨Ψ(t)| with subsystem dimensions [2, 2, L].
pub fn rho_abc(p: &SystemParams, t: f64) -> DensityMatrix {
    let basis = cavity_basis(p.n);
    let dims = SubsystemDims::new(vec![2, 2, basis.len()]).expect("valid dims");
    DensityMatrix::from_pure_state(&state_vector(p, t), dims).expect("consistent state length")
}

/// Two-atom reduced state tr_C ρ_ABC, dimensions [2, 2].
pub fn rho_ab(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_abc(p, t).partial_trace(&[0, 1]).expect("valid keep set")
}

/// Atom A + cavity reduced state, dimensions [2, L].
pub fn rho_ac(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_abc(p, t).partial_trace(&[0, 2]).expect("valid keep set")
}

/// Atom B + cavity reduced state, dimensions [2, L].
pub fn rho_bc(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_abc(p, t).partial_trace(&[1, 2]).expect("valid keep set")
}

pub fn rho_a(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_abc(p, t).partial_trace(&[0]).expect("valid keep set")
}

pub fn rho_b(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_abc(p, t).partial_trace(&[1]).expect("valid keep set")
}

pub fn rho_c(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_abc(p, t).partial_trace(&[2]).expect("valid keep set")
}

/// Two-atom state with the subsystem order swapped to (B, A), for
/// measurements on B.
pub fn rho_ba(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_ab(p, t).permute(&[1, 0]).expect("valid permutation")
}

/// Full state reordered to (B, A, C), for measurements on B.
pub fn rho_bac(p: &SystemParams, t: f64) -> DensityMatrix {
    rho_abc(p, t).permute(&[1, 0, 2]).expect("valid permutation")
}

/// The equivalent two-qubit state ρ_AX obtained by collapsing B ⊗ C onto the
/// two orthogonal branch vectors that accompany |0_A⟩ and |1_A⟩. On the
/// ordered basis (|0_A 0_X⟩, |0_A 1_X⟩, |1_A 0_X⟩, |1_A 1_X⟩) only the
/// central block is populated:
///
/// ```text
/// ⟨01|ρ|01⟩ = |x2|²+|x3|²,  ⟨10|ρ|10⟩ = |x1|²+|x4|²,
/// ⟨01|ρ|10⟩ = ⟨10|ρ|01⟩ = √((|x1|²+|x4|²)(|x2|²+|x3|²)).
/// ```
///
/// When one branch weight vanishes the expression degenerates smoothly to
/// the rank-1 projector on the surviving branch.
pub fn equivalent_two_qubit(p: &SystemParams, t: f64) -> DensityMatrix {
    let pr = amplitudes(p, t).probabilities();
    let w1 = pr[0] + pr[3];
    let w0 = pr[1] + pr[2];
    let coh = (w0 * w1).sqrt();
    let mut m = ComplexMatrix::zeros(4, 4);
    m[(1, 1)] = Complex64::new(w0, 0.0);
    m[(2, 2)] = Complex64::new(w1, 0.0);
    m[(1, 2)] = Complex64::new(coh, 0.0);
    m[(2, 1)] = Complex64::new(coh, 0.0);
    DensityMatrix::new(m, SubsystemDims::new(vec![2, 2]).expect("valid dims"))
        .expect("hermitian by construction")
}
