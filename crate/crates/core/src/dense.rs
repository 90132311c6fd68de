//! Dense in-place transform between matrix entries and Pauli coordinates.
//!
//! The matrix is first copied into a flat coordinate array of length `4^Q`,
//! entry `(i, j)` landing at the interlaced index of `i` and `j`. Each of the
//! `Q` iterations then updates every pair `(r, r*)`, where `r*` flips crumb
//! `q`, through the 2x2 map
//!
//! ```text
//! c'[r]  = c[r] + c[r*]      (crumb q of r in {0, 1})
//! c'[r*] = c[r] - c[r*]
//! ```
//!
//! and a final pass scales by `2^-Q` and multiplies by `i^k`, `k` being the
//! number of Y factors in the label.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::index::{PauliIndex, QubitCount};
use crate::matrix::{DenseOperator, InputMatrix};
use crate::terms::{PauliTerm, PauliTermList};

/// Largest register the dense path will allocate (`4^14` coordinates, 4 GiB).
pub const MAX_DENSE_QUBITS: u32 = 14;

// Iterations below this crumb are run tile by tile so each tile stays in cache.
const TILE_CRUMBS: u32 = 6;

/// How an `n x n` matrix is placed in the `N x N` register.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbedConfig {
    /// Value placed on the padded part of the diagonal.
    pub delta: Complex64,
    /// Register size; defaults to the smallest that fits.
    pub qubits: Option<QubitCount>,
}

impl Default for EmbedConfig {
    fn default() -> Self {
        EmbedConfig {
            delta: Complex64::new(0.0, 0.0),
            qubits: None,
        }
    }
}

impl EmbedConfig {
    pub fn with_delta(delta: impl Into<Complex64>) -> Self {
        EmbedConfig {
            delta: delta.into(),
            qubits: None,
        }
    }

    /// Register size for an `n`-dimensional input.
    pub fn resolve_qubits(&self, n: usize) -> Result<QubitCount> {
        let qubits = match self.qubits {
            Some(q) => q,
            None => QubitCount::for_dimension(n)?,
        };
        if n > qubits.dim() {
            return Err(Error::Dimension {
                n,
                qubits: qubits.get(),
                capacity: qubits.dim(),
            });
        }
        Ok(qubits)
    }
}

/// Flat array of `4^Q` coordinates together with the number of iterations applied.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateVector {
    qubits: QubitCount,
    data: Vec<Complex64>,
    stage: u32,
}

fn check_dense_size(qubits: QubitCount) -> Result<()> {
    if qubits.get() > MAX_DENSE_QUBITS {
        return Err(Error::Resource(format!(
            "dense transform limited to {MAX_DENSE_QUBITS} qubits, got {qubits}"
        )));
    }
    Ok(())
}

/// Copies `a` into a stage-0 coordinate vector, padding the diagonal with `cfg.delta`.
pub fn embed(a: &InputMatrix, cfg: &EmbedConfig) -> Result<CoordinateVector> {
    let n = a.dim();
    let qubits = cfg.resolve_qubits(n)?;
    check_dense_size(qubits)?;
    let mut data = vec![Complex64::new(0.0, 0.0); qubits.coordinate_count()];
    a.for_each_entry(|i, j, v| {
        data[PauliIndex::join(i as u64, j as u64).get() as usize] = v;
    });
    for i in n..qubits.dim() {
        data[PauliIndex::join(i as u64, i as u64).get() as usize] = cfg.delta;
    }
    Ok(CoordinateVector {
        qubits,
        data,
        stage: 0,
    })
}

impl CoordinateVector {
    /// Wraps raw stage-0 coordinates (matrix entries in interlaced order).
    pub fn from_coordinates(qubits: QubitCount, data: Vec<Complex64>) -> Result<Self> {
        check_dense_size(qubits)?;
        if data.len() != qubits.coordinate_count() {
            return Err(Error::domain(format!(
                "expected {} coordinates for {qubits} qubits, got {}",
                qubits.coordinate_count(),
                data.len()
            )));
        }
        Ok(CoordinateVector {
            qubits,
            data,
            stage: 0,
        })
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<Complex64> {
        self.data
    }

    fn expect_stage(&self, expected: u32) -> Result<()> {
        if self.stage != expected {
            return Err(Error::Stage {
                expected,
                found: self.stage,
            });
        }
        Ok(())
    }

    /// Applies the next single iteration (`q = stage`).
    pub fn apply_iteration(&mut self) -> Result<()> {
        if self.stage >= self.qubits.get() {
            return Err(Error::Stage {
                expected: self.qubits.get() - 1,
                found: self.stage,
            });
        }
        butterfly_pass(&mut self.data, self.stage);
        self.stage += 1;
        Ok(())
    }

    /// Runs all `Q` iterations, taking the vector from stage 0 to stage `Q`.
    pub fn forward_iterations(mut self) -> Result<Self> {
        self.expect_stage(0)?;
        run_all_iterations(&mut self.data, self.qubits.get());
        self.stage = self.qubits.get();
        Ok(self)
    }

    /// Same as [`forward_iterations`](Self::forward_iterations), spreading pair updates over the rayon pool.
    pub fn forward_iterations_par(mut self) -> Result<Self> {
        self.expect_stage(0)?;
        run_all_iterations_par(&mut self.data, self.qubits.get());
        self.stage = self.qubits.get();
        Ok(self)
    }

    /// Scales and phases stage-`Q` coordinates into Pauli coefficients.
    /// Terms with modulus below `threshold` are omitted.
    pub fn finalize(&self, threshold: f64) -> Result<PauliTermList> {
        self.expect_stage(self.qubits.get())?;
        let scale = (-(self.qubits.get() as f64)).exp2();
        let terms = self
            .data
            .iter()
            .enumerate()
            .filter_map(|(r, &c)| {
                let index = PauliIndex(r as u64);
                let coefficient = mul_i_pow(c, index.count_y()) * scale;
                (threshold <= 0.0 || coefficient.norm() >= threshold)
                    .then_some(PauliTerm { index, coefficient })
            })
            .collect();
        Ok(PauliTermList::from_sorted_unchecked(
            self.qubits,
            terms,
            threshold,
        ))
    }

    /// Reads stage-0 coordinates back out as the `N x N` matrix.
    pub fn to_matrix(&self) -> Result<DenseOperator> {
        self.expect_stage(0)?;
        let n = self.qubits.dim();
        let mut m = DenseOperator::zeros(n);
        for (r, &v) in self.data.iter().enumerate() {
            let (i, j) = PauliIndex(r as u64).split();
            m[(i as usize, j as usize)] = v;
        }
        Ok(m)
    }
}

/// Embeds `a`, runs the iterations and returns its Pauli expansion.
pub fn forward(a: &InputMatrix, cfg: &EmbedConfig, threshold: f64) -> Result<PauliTermList> {
    embed(a, cfg)?.forward_iterations()?.finalize(threshold)
}

/// Turns Pauli coefficients back into stage-0 coordinates.
///
/// `m` squared is `2I`, so undoing the iterations is the same iterations
/// again, preceded by removing the `i^k` phase; the `2^-Q` factors cancel.
pub fn inverse(terms: &PauliTermList) -> Result<CoordinateVector> {
    let qubits = terms.qubits();
    check_dense_size(qubits)?;
    let mut data = vec![Complex64::new(0.0, 0.0); qubits.coordinate_count()];
    for t in terms {
        data[t.index.get() as usize] = t.coefficient;
    }
    inverse_coordinates(qubits, data)
}

/// [`inverse`] for a full coefficient array in index order.
pub fn inverse_coordinates(qubits: QubitCount, mut coefficients: Vec<Complex64>) -> Result<CoordinateVector> {
    check_dense_size(qubits)?;
    if coefficients.len() != qubits.coordinate_count() {
        return Err(Error::domain(format!(
            "expected {} coefficients for {qubits} qubits, got {}",
            qubits.coordinate_count(),
            coefficients.len()
        )));
    }
    for (r, c) in coefficients.iter_mut().enumerate() {
        let k = PauliIndex(r as u64).count_y();
        *c = mul_i_pow(*c, (4 - k % 4) % 4);
    }
    run_all_iterations(&mut coefficients, qubits.get());
    Ok(CoordinateVector {
        qubits,
        data: coefficients,
        stage: 0,
    })
}

/// Dense `N x N` matrix of a Pauli expansion.
pub fn reconstruct(terms: &PauliTermList) -> Result<DenseOperator> {
    inverse(terms)?.to_matrix()
}

/// `z * i^k`, computed by swapping components.
#[inline]
pub(crate) fn mul_i_pow(z: Complex64, k: u32) -> Complex64 {
    match k % 4 {
        0 => z,
        1 => Complex64::new(-z.im, z.re),
        2 => Complex64::new(-z.re, -z.im),
        _ => Complex64::new(z.im, -z.re),
    }
}

#[inline]
fn pair_update(lo: &mut [Complex64], hi: &mut [Complex64]) {
    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
        let (u, v) = (*a, *b);
        *a = u + v;
        *b = u - v;
    }
}

// Within each block of 4^(q+1) entries, the four quarters hold crumb q = 0..3
// with all other crumbs aligned. Quarter 0 pairs with 3, quarter 1 with 2.
#[inline]
fn split_quarters(block: &mut [Complex64], quarter: usize) -> [&mut [Complex64]; 4] {
    let (a01, a23) = block.split_at_mut(2 * quarter);
    let (a0, a1) = a01.split_at_mut(quarter);
    let (a2, a3) = a23.split_at_mut(quarter);
    [a0, a1, a2, a3]
}

fn butterfly_pass(data: &mut [Complex64], q: u32) {
    let quarter = 1usize << (2 * q);
    for block in data.chunks_exact_mut(4 * quarter) {
        let [a0, a1, a2, a3] = split_quarters(block, quarter);
        pair_update(a0, a3);
        pair_update(a1, a2);
    }
}

fn run_all_iterations(data: &mut [Complex64], qubits: u32) {
    let tiled = qubits.min(TILE_CRUMBS);
    for tile in data.chunks_exact_mut(1 << (2 * tiled)) {
        for q in 0..tiled {
            butterfly_pass(tile, q);
        }
    }
    let mut q = tiled;
    while q < qubits {
        if q + 1 < qubits {
            fused_pass(data, q);
            q += 2;
        } else {
            butterfly_pass(data, q);
            q += 1;
        }
    }
}

const FUSED_CHUNK: usize = 512;

/// Pair update on `block[i..i + len]` and `block[j..j + len]`, `i + len <= j`.
#[inline]
fn pair_at(block: &mut [Complex64], i: usize, j: usize, len: usize) {
    let (lo, hi) = block.split_at_mut(j);
    pair_update(&mut lo[i..i + len], &mut hi[..len]);
}

/// Iterations `q` and `q + 1` in one sweep over memory.
fn fused_pass(data: &mut [Complex64], q: u32) {
    let quarter = 1usize << (2 * q);
    for block in data.chunks_exact_mut(16 * quarter) {
        for o in (0..quarter).step_by(FUSED_CHUNK) {
            let len = FUSED_CHUNK.min(quarter - o);
            for h in 0..4 {
                let base = 4 * h * quarter + o;
                pair_at(block, base, base + 3 * quarter, len);
                pair_at(block, base + quarter, base + 2 * quarter, len);
            }
            for l in 0..4 {
                let base = l * quarter + o;
                pair_at(block, base, base + 12 * quarter, len);
                pair_at(block, base + 4 * quarter, base + 8 * quarter, len);
            }
        }
    }
}

const PAR_CHUNK: usize = 1 << 12;

fn run_all_iterations_par(data: &mut [Complex64], qubits: u32) {
    let tiled = qubits.min(TILE_CRUMBS);
    data.par_chunks_exact_mut(1 << (2 * tiled)).for_each(|tile| {
        for q in 0..tiled {
            butterfly_pass(tile, q);
        }
    });
    for q in tiled..qubits {
        let quarter = 1usize << (2 * q);
        let blocks = data.len() / (4 * quarter);
        if blocks >= rayon::current_num_threads() {
            data.par_chunks_exact_mut(4 * quarter).for_each(|block| {
                let [a0, a1, a2, a3] = split_quarters(block, quarter);
                pair_update(a0, a3);
                pair_update(a1, a2);
            });
        } else {
            for block in data.chunks_exact_mut(4 * quarter) {
                let [a0, a1, a2, a3] = split_quarters(block, quarter);
                a0.par_chunks_mut(PAR_CHUNK)
                    .zip(a3.par_chunks_mut(PAR_CHUNK))
                    .chain(a1.par_chunks_mut(PAR_CHUNK).zip(a2.par_chunks_mut(PAR_CHUNK)))
                    .for_each(|(lo, hi)| pair_update(lo, hi));
            }
        }
    }
}
