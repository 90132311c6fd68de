//! Dense Hermitian eigensolver and Pauli-string expectation values.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::boson::{hamiltonian_matrix, BosonConfig};
use crate::error::{Error, Result};
use crate::index::QubitCount;
use crate::matrix::DenseOperator;
use crate::terms::PauliTermList;

/// Largest matrix [`eigen_hermitian`] accepts.
pub const MAX_EIGEN_DIM: usize = 2048;

const HERMITIAN_TOLERANCE: f64 = 1e-10;
const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with matching eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the normalised eigenvector for `eigenvalues[k]`.
    pub eigenvectors: DenseOperator,
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        let n = self.eigenvectors.dim();
        (0..n).map(|i| self.eigenvectors[(i, k)]).collect()
    }

    pub fn ground_state(&self) -> Vec<Complex64> {
        self.eigenvector(0)
    }
}

/// Cyclic complex Jacobi diagonalisation of a Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a[p][q]` and then
/// applies the real Jacobi rotation that zeroes it.
pub fn eigen_hermitian(a: &DenseOperator) -> Result<Spectrum> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::domain("empty matrix"));
    }
    if n > MAX_EIGEN_DIM {
        return Err(Error::Resource(format!(
            "eigensolver limited to dimension {MAX_EIGEN_DIM}, got {n}"
        )));
    }
    let scale = a.max_abs().max(1.0);
    for i in 0..n {
        for j in i..n {
            if (a[(i, j)] - a[(j, i)].conj()).norm() > HERMITIAN_TOLERANCE * scale {
                return Err(Error::domain(format!(
                    "matrix is not Hermitian at ({i}, {j})"
                )));
            }
        }
    }

    let mut m = a.clone();
    let mut v = DenseOperator::identity(n);
    let total_norm = a.frobenius_norm();
    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= f64::EPSILON * total_norm || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::Numeric(format!(
            "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| m[(x, x)].re.total_cmp(&m[(y, y)].re));
    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let mut eigenvectors = DenseOperator::zeros(n);
    for (col, &k) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, col)] = v[(i, k)];
        }
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

fn rotate(m: &mut DenseOperator, v: &mut DenseOperator, p: usize, q: usize) {
    let apq = m[(p, q)];
    let magnitude = apq.norm();
    if magnitude == 0.0 {
        return;
    }
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let phase = apq / magnitude;
    let theta = (aqq - app) / (2.0 * magnitude);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta.abs() > 1e150 { 0.5 / theta } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    // Unitary G acting on (p, q): G = diag(1, conj(phase)) * [[c, s], [-s, c]].
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = -phase.conj() * s;
    let g_qq = phase.conj() * c;
    let n = m.dim();
    for k in 0..n {
        let (x, y) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = x * g_pp + y * g_qp;
        m[(k, q)] = x * g_pq + y * g_qq;
    }
    for k in 0..n {
        let (x, y) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = g_pp.conj() * x + g_qp.conj() * y;
        m[(q, k)] = g_pq.conj() * x + g_qq.conj() * y;
    }
    m[(p, q)] = Complex64::new(0.0, 0.0);
    m[(q, p)] = Complex64::new(0.0, 0.0);
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;
    for k in 0..n {
        let (x, y) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = x * g_pp + y * g_qp;
        v[(k, q)] = x * g_pq + y * g_qq;
    }
}

/// Smallest eigenvalue of the boson Hamiltonian for each coupling in `couplings`.
pub fn ground_energy_sweep(cfg: &BosonConfig, couplings: &[f64]) -> Result<Vec<(f64, f64)>> {
    couplings
        .par_iter()
        .map(|&lambda| {
            let h = hamiltonian_matrix(&cfg.with_coupling(lambda))?.to_dense();
            Ok((lambda, eigen_hermitian(&h)?.ground_energy()))
        })
        .collect()
}

/// Amplitudes of a `Q`-qubit register; basis state `b` has qubit `q` equal to bit `q` of `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    qubits: QubitCount,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(qubits: QubitCount, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != qubits.dim() {
            return Err(Error::domain(format!(
                "expected {} amplitudes for {qubits} qubits, got {}",
                qubits.dim(),
                amplitudes.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::domain("amplitudes must be finite"));
        }
        Ok(StateVector { qubits, amplitudes })
    }

    /// Computational basis state `|index>`.
    pub fn basis(qubits: QubitCount, index: usize) -> Result<Self> {
        if index >= qubits.dim() {
            return Err(Error::domain(format!("basis index {index} out of range")));
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); qubits.dim()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { qubits, amplitudes })
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// `<psi| sum_r c_r P_r |psi>`, applying each Pauli string by bit operations.
///
/// A string with X-mask `x` (crumbs 1, 2), Z-mask `z` (crumbs 2, 3) and `k`
/// Y factors maps `|b>` to `i^k (-1)^{popcount(b & z)} |b ^ x>`.
pub fn expectation(terms: &PauliTermList, psi: &StateVector) -> Result<Complex64> {
    if terms.qubits() != psi.qubits {
        return Err(Error::domain(format!(
            "term list has {} qubits but state has {}",
            terms.qubits(),
            psi.qubits
        )));
    }
    let amps = &psi.amplitudes;
    let mut total = Complex64::new(0.0, 0.0);
    for t in terms {
        let (mut x_mask, mut z_mask) = (0usize, 0usize);
        for q in 0..terms.qubits().get() {
            let crumb = t.index.crumb(q);
            if crumb == 1 || crumb == 2 {
                x_mask |= 1 << q;
            }
            if crumb >= 2 {
                z_mask |= 1 << q;
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (b, &a) in amps.iter().enumerate() {
            let sign = if (b & z_mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            acc += amps[b ^ x_mask].conj() * a * sign;
        }
        let phase = Complex64::new(0.0, 1.0).powu(t.index.count_y());
        total += t.coefficient * phase * acc;
    }
    Ok(total)
}
