//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything in the crate lives on composite spaces of dimension at most
//! [`MAX_DIM`] (the atom + atom + cavity space is never larger than 12), so
//! the implementations favour clarity and numerical tightness over asymptotic
//! performance: plain row-major storage, textbook Kronecker products and
//! partial traces, and a cyclic Jacobi eigensolver for Hermitian matrices.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard upper bound on matrix dimension, enforced at construction.
pub const MAX_DIM: usize = 64;

/// Entrywise tolerance when validating inputs that must be Hermitian.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Entrywise Hermiticity tolerance for density matrices.
pub const DENSITY_HERMITICITY_TOL: f64 = 1e-12;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Zero matrix. Panics if either dimension exceeds [`MAX_DIM`] or is zero.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(
            rows >= 1 && cols >= 1 && rows <= MAX_DIM && cols <= MAX_DIM,
            "matrix dimensions {rows}x{cols} outside supported range 1..={MAX_DIM}"
        );
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Squared Frobenius norm, Σ|m_ij|² = tr(M†M).
    pub fn frobenius_norm_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Largest entrywise deviation from M = M†.
    pub fn hermiticity_deviation(&self) -> f64 {
        assert!(self.is_square());
        let mut dev: f64 = 0.0;
        for i in 0..self.rows {
            for j in i..self.cols {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_deviation() <= tol
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Pauli matrices `[σx, σy, σz]` on the ordered qubit basis (|0⟩, |1⟩), with
/// σz = |0⟩⟨0| − |1⟩⟨1|.
pub fn paulis() -> [ComplexMatrix; 3] {
    [pauli_x(), pauli_y(), pauli_z()]
}

pub fn pauli_x() -> ComplexMatrix {
    ComplexMatrix::from_fn(2, 2, |i, j| {
        if i != j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

pub fn pauli_y() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 1)] = Complex64::new(0.0, -1.0);
    m[(1, 0)] = Complex64::new(0.0, 1.0);
    m
}

pub fn pauli_z() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    m[(1, 1)] = Complex64::new(-1.0, 0.0);
    m
}

/// Kronecker product a ⊗ b.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i1 in 0..a.rows() {
        for j1 in 0..a.cols() {
            let v = a[(i1, j1)];
            for i2 in 0..b.rows() {
                for j2 in 0..b.cols() {
                    out[(i1 * b.rows() + i2, j1 * b.cols() + j2)] = v * b[(i2, j2)];
                }
            }
        }
    }
    out
}

/// Ordered list of subsystem dimensions annotating a composite-space matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsystemDims {
    sizes: Vec<usize>,
}

impl SubsystemDims {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::DimensionMismatch(
                "subsystem dimensions must be positive and non-empty".into(),
            ));
        }
        let total: usize = sizes.iter().product();
        if total > MAX_DIM {
            return Err(Error::DimensionMismatch(format!(
                "total dimension {total} exceeds supported maximum {MAX_DIM}"
            )));
        }
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.sizes.iter().product()
    }
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        s[i] = s[i + 1] * dims[i + 1];
    }
    s
}

fn multi_indices(dims: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &d in dims {
        let mut next = Vec::with_capacity(out.len() * d);
        for prefix in &out {
            for v in 0..d {
                let mut p = prefix.clone();
                p.push(v);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Partial trace of a composite-space matrix, keeping the subsystems listed
/// in `keep` (strictly increasing indices) in their original order. An empty
/// `keep` traces everything out, leaving a 1×1 matrix holding the trace.
pub fn partial_trace(
    rho: &ComplexMatrix,
    dims: &SubsystemDims,
    keep: &[usize],
) -> Result<ComplexMatrix> {
    if !rho.is_square() || rho.rows() != dims.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{} but subsystem dimensions describe a space of dimension {}",
            rho.rows(),
            rho.cols(),
            dims.total_dim()
        )));
    }
    if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&k| k >= dims.len()) {
        return Err(Error::DimensionMismatch(
            "keep indices must be strictly increasing and in range".into(),
        ));
    }

    let sizes = dims.sizes();
    let full_strides = strides(sizes);
    let traced: Vec<usize> = (0..sizes.len()).filter(|i| !keep.contains(i)).collect();
    let keep_dims: Vec<usize> = keep.iter().map(|&k| sizes[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| sizes[k]).collect();

    let keep_idx = multi_indices(&keep_dims);
    let traced_idx = multi_indices(&traced_dims);

    let flatten = |kept: &[usize], tr: &[usize]| -> usize {
        let mut idx = 0;
        for (pos, &sub) in keep.iter().enumerate() {
            idx += kept[pos] * full_strides[sub];
        }
        for (pos, &sub) in traced.iter().enumerate() {
            idx += tr[pos] * full_strides[sub];
        }
        idx
    };

    let out_dim = keep_dims.iter().product::<usize>().max(1);
    let mut out = ComplexMatrix::zeros(out_dim, out_dim);
    for (r, row_k) in keep_idx.iter().enumerate() {
        for (c, col_k) in keep_idx.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for tr in &traced_idx {
                acc += rho[(flatten(row_k, tr), flatten(col_k, tr))];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

/// Reorder subsystems: position `i` of the result holds old subsystem
/// `perm[i]`.
pub fn permute_subsystems(
    rho: &ComplexMatrix,
    dims: &SubsystemDims,
    perm: &[usize],
) -> Result<ComplexMatrix> {
    let sizes = dims.sizes();
    if !rho.is_square() || rho.rows() != dims.total_dim() {
        return Err(Error::DimensionMismatch(
            "matrix does not match subsystem dimensions".into(),
        ));
    }
    let mut seen = vec![false; sizes.len()];
    if perm.len() != sizes.len() || perm.iter().any(|&p| p >= sizes.len() || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::DimensionMismatch(
            "perm must be a permutation of the subsystem indices".into(),
        ));
    }

    let old_strides = strides(sizes);
    let new_sizes: Vec<usize> = perm.iter().map(|&p| sizes[p]).collect();
    let new_strides = strides(&new_sizes);
    let n = dims.total_dim();

    let map = |idx: usize| -> usize {
        let mut out = 0;
        for (pos, &p) in perm.iter().enumerate() {
            let digit = (idx / old_strides[p]) % sizes[p];
            out += digit * new_strides[pos];
        }
        out
    };

    let mut out = ComplexMatrix::zeros(n, n);
    for r in 0..n {
        for c in 0..n {
            out[(map(r), map(c))] = rho[(r, c)];
        }
    }
    Ok(out)
}

/// All eigenvalues of a Hermitian matrix, sorted in descending order, via
/// cyclic complex Jacobi rotations. Inputs failing the Hermiticity check
/// ([`HERMITICITY_TOL`] on the largest entry deviation) are rejected.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(
            "eigenvalues of a non-square matrix".into(),
        ));
    }
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            deviation,
            tolerance: HERMITICITY_TOL,
        });
    }

    let n = m.rows();
    // Work on the symmetrized copy so the sub-tolerance asymmetry of the
    // input cannot leak into the iteration.
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)].conj()));
    let scale = a.frobenius_norm_sq().sqrt().max(1.0);

    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let gamma = apq.norm();
                if gamma <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / gamma;
                let tau = (a[(p, p)].re - a[(q, q)].re) / (2.0 * gamma);
                // Smaller root of t² − 2τt − 1 = 0 for a stable rotation angle.
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // A <- J† A J with J[p][p]=c, J[p][q]=s·phase,
                // J[q][p]=−s·phase*, J[q][q]=c.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * phase.conj() * akq;
                    a[(k, q)] = s * phase * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * phase * aqk;
                    a[(q, k)] = s * phase.conj() * apk + c * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut vals: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    vals.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    Ok(vals)
}

/// Density matrix: a Hermitian [`ComplexMatrix`] with subsystem metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: ComplexMatrix,
    dims: SubsystemDims,
}

impl DensityMatrix {
    /// Wraps a matrix after checking squareness, the dimension bookkeeping
    /// and Hermiticity within [`DENSITY_HERMITICITY_TOL`].
    pub fn new(mat: ComplexMatrix, dims: SubsystemDims) -> Result<Self> {
        if !mat.is_square() || mat.rows() != dims.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{}, subsystem dimensions give {}",
                mat.rows(),
                mat.cols(),
                dims.total_dim()
            )));
        }
        let deviation = mat.hermiticity_deviation();
        if deviation > DENSITY_HERMITICITY_TOL {
            return Err(Error::NotHermitian {
                deviation,
                tolerance: DENSITY_HERMITICITY_TOL,
            });
        }
        Ok(Self { mat, dims })
    }

    /// Projector |ψ⟩⟨ψ| onto a (not necessarily normalized) state vector.
    pub fn from_pure_state(psi: &[Complex64], dims: SubsystemDims) -> Result<Self> {
        if psi.len() != dims.total_dim() {
            return Err(Error::DimensionMismatch(format!(
                "state vector has length {}, subsystem dimensions give {}",
                psi.len(),
                dims.total_dim()
            )));
        }
        let n = psi.len();
        let mat = ComplexMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj());
        Ok(Self { mat, dims })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn dims(&self) -> &SubsystemDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn trace(&self) -> Complex64 {
        self.mat.trace()
    }

    /// tr(ρ²); coincides with the squared Frobenius norm for Hermitian ρ.
    pub fn purity(&self) -> f64 {
        self.mat.frobenius_norm_sq()
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let mat = partial_trace(&self.mat, &self.dims, keep)?;
        let sizes: Vec<usize> = keep.iter().map(|&k| self.dims.sizes()[k]).collect();
        let dims = if sizes.is_empty() {
            SubsystemDims::new(vec![1])?
        } else {
            SubsystemDims::new(sizes)?
        };
        Ok(DensityMatrix { mat, dims })
    }

    pub fn permute(&self, perm: &[usize]) -> Result<DensityMatrix> {
        let mat = permute_subsystems(&self.mat, &self.dims, perm)?;
        let sizes: Vec<usize> = perm.iter().map(|&p| self.dims.sizes()[p]).collect();
        Ok(DensityMatrix {
            mat,
            dims: SubsystemDims::new(sizes)?,
        })
    }
}
