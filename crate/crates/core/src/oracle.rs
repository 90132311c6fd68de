//! Brute-force reference implementations.
//!
//! Nothing here touches the crumb arithmetic of [`crate::index`] or the
//! transform kernels. Pauli strings are built as explicit Kronecker products
//! and coefficients come from the trace inner product `Tr(P A) / N`, which
//! costs `O(N^4)` over all strings.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index::{PauliIndex, QubitCount};
use crate::matrix::DenseOperator;
use crate::terms::{PauliTerm, PauliTermList};

/// Largest register the oracle accepts.
pub const MAX_ORACLE_QUBITS: u32 = 8;

fn single_qubit(letter: u64) -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    match letter {
        0 => [[one, o], [o, one]],
        1 => [[o, one], [one, o]],
        2 => [[o, -i], [i, o]],
        3 => [[one, o], [o, -one]],
        _ => unreachable!("letters are two-bit values"),
    }
}

fn kron(a: &DenseOperator, b: &[[Complex64; 2]; 2]) -> DenseOperator {
    let n = a.dim();
    let mut out = DenseOperator::zeros(2 * n);
    for i in 0..n {
        for j in 0..n {
            for (k, row) in b.iter().enumerate() {
                for (l, &v) in row.iter().enumerate() {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * v;
                }
            }
        }
    }
    out
}

fn guard(qubits: QubitCount) -> Result<()> {
    if qubits.get() > MAX_ORACLE_QUBITS {
        return Err(Error::Resource(format!(
            "oracle limited to {MAX_ORACLE_QUBITS} qubits, got {qubits}"
        )));
    }
    Ok(())
}

/// Matrix of the Pauli string `r`, factor for qubit `Q-1` leftmost.
pub fn pauli_matrix(r: PauliIndex, qubits: QubitCount) -> Result<DenseOperator> {
    guard(qubits)?;
    if r.get() >= 1u64 << (2 * qubits.get()) {
        return Err(Error::domain(format!("index {} out of range", r.get())));
    }
    let mut m = DenseOperator::identity(1);
    for q in (0..qubits.get()).rev() {
        let letter = (r.get() / 4u64.pow(q)) % 4;
        m = kron(&m, &single_qubit(letter));
    }
    Ok(m)
}

/// Coefficients `Tr(P_r A) / N` for every string `r`.
pub fn oracle_decompose(a: &DenseOperator) -> Result<PauliTermList> {
    let n = a.dim();
    if !n.is_power_of_two() || n < 2 {
        return Err(Error::domain(format!(
            "oracle needs a power-of-two dimension of at least 2, got {n}"
        )));
    }
    let qubits = QubitCount::new(n.trailing_zeros())?;
    guard(qubits)?;
    let mut terms = Vec::with_capacity(n * n);
    for r in 0..(n * n) as u64 {
        let p = pauli_matrix(PauliIndex(r), qubits)?;
        let mut trace = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for k in 0..n {
                trace += p[(i, k)] * a[(k, i)];
            }
        }
        terms.push(PauliTerm {
            index: PauliIndex(r),
            coefficient: trace / n as f64,
        });
    }
    PauliTermList::new(qubits, terms, 0.0)
}

/// `sum_r c_r P_r` as a dense matrix.
pub fn oracle_reconstruct(terms: &PauliTermList) -> Result<DenseOperator> {
    let qubits = terms.qubits();
    guard(qubits)?;
    let n = qubits.dim();
    let mut out = DenseOperator::zeros(n);
    for t in terms {
        let p = pauli_matrix(t.index, qubits)?;
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] += t.coefficient * p[(i, j)];
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q(n: u32) -> QubitCount {
        QubitCount::new(n).unwrap()
    }

    #[test]
    fn single_qubit_matrices() {
        assert_eq!(pauli_matrix(PauliIndex(0), q(1)).unwrap(), DenseOperator::identity(2));
        assert_eq!(
            pauli_matrix(PauliIndex(2), q(1)).unwrap().as_slice(),
            &[c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)]
        );
        let zz = pauli_matrix(PauliIndex(0b1111), q(2)).unwrap();
        let expect = [1.0, -1.0, -1.0, 1.0].map(|x| c(x, 0.0));
        assert_eq!(zz, DenseOperator::diagonal(&expect));
    }

    #[test]
    fn tensor_order_puts_high_qubit_left() {
        // "XI": X on qubit 1, identity on qubit 0
        let xi = pauli_matrix(PauliIndex(0b0100), q(2)).unwrap();
        assert_eq!(xi[(2, 0)], c(1.0, 0.0));
        assert_eq!(xi[(1, 0)], c(0.0, 0.0));
    }

    #[test]
    fn orthogonality_exhaustive() {
        for qubits in 1..=3 {
            let qc = q(qubits);
            let n = qc.dim();
            let mats: Vec<_> = (0..(n * n) as u64)
                .map(|r| pauli_matrix(PauliIndex(r), qc).unwrap())
                .collect();
            for (r, a) in mats.iter().enumerate() {
                let allowed = [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
                assert!(a.as_slice().iter().all(|z| allowed.contains(z)));
                for (s, b) in mats.iter().enumerate() {
                    let tr = a.matmul(b).trace();
                    let expect = if r == s { n as f64 } else { 0.0 };
                    assert_eq!(tr, c(expect, 0.0), "r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn decompose_examples() {
        let id = oracle_decompose(&DenseOperator::identity(4)).unwrap();
        for t in &id {
            let expect = if t.index.get() == 0 { c(1.0, 0.0) } else { c(0.0, 0.0) };
            assert_eq!(t.coefficient, expect);
        }
        let a = DenseOperator::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let coeffs = oracle_decompose(&a).unwrap().to_coefficients();
        assert_eq!(coeffs, vec![c(2.5, 0.0), c(2.5, 0.0), c(0.0, -0.5), c(-1.5, 0.0)]);
    }

    #[test]
    fn reconstruct_examples() {
        let x = PauliTermList::from_labels([("X", c(1.0, 0.0))]).unwrap();
        assert_eq!(
            oracle_reconstruct(&x).unwrap(),
            DenseOperator::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
        );
        let empty = PauliTermList::empty(q(2));
        assert_eq!(oracle_reconstruct(&empty).unwrap(), DenseOperator::zeros(4));
    }

    #[test]
    fn size_guards() {
        assert!(matches!(pauli_matrix(PauliIndex(0), q(9)), Err(Error::Resource(_))));
        assert!(oracle_decompose(&DenseOperator::identity(3)).is_err());
        assert!(oracle_decompose(&DenseOperator::identity(1)).is_err());
    }
}
