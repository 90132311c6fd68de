//! Pauli-string decomposition of square complex matrices.
//!
//! An `n x n` matrix is embedded in a `2^Q x 2^Q` block, its entries are laid
//! out along interlaced row/column bits, and `Q` butterfly passes turn them
//! into the coefficients of `sum_r c_r P_r`. The dense path costs
//! `O(N^2 log N)`; the sparse path only visits coordinates that are nonzero.
//!
//! ```
//! use crumbs::{forward, DenseOperator, EmbedConfig, InputMatrix};
//!
//! let a = DenseOperator::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
//! let terms = forward(&InputMatrix::from(a), &EmbedConfig::default(), 0.0).unwrap();
//! assert_eq!(terms.coefficient_of("Z").unwrap().re, -1.5);
//! ```

pub mod boson;
pub mod dense;
pub mod eigen;
pub mod error;
pub mod formats;
pub mod index;
pub mod matrix;
pub mod oracle;
pub mod scaling;
pub mod sparse;
pub mod terms;

pub use boson::{first_order_energy, hamiltonian_matrix, BosonConfig, FockBasis};
pub use dense::{embed, forward, inverse, reconstruct, CoordinateVector, EmbedConfig};
pub use eigen::{eigen_hermitian, expectation, ground_energy_sweep, Spectrum, StateVector};
pub use error::{Error, Result};
pub use index::{
    deinterlace, interlace, parse_label, pauli_label, PauliIndex, QubitCount, MAX_QUBITS,
};
pub use matrix::{DenseOperator, Field, InputMatrix, Triplet};
pub use num_complex::Complex64;
pub use oracle::{oracle_decompose, oracle_reconstruct, pauli_matrix};
pub use scaling::{scaling_experiment, Regime, ScalingRow};
pub use sparse::{sparse_forward, workload_bound, SparseCoordinateMap, WorkloadStats};
pub use terms::{PauliTerm, PauliTermList};
