//! Sparse variant of the forward transform.
//!
//! Only nonzero coordinates are stored. Every iteration scans the current
//! entries, updates each pair `(r, r*)` once and records how many nonzero
//! coordinates it produced, which is the workload measure `L`.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dense::{mul_i_pow, EmbedConfig};
use crate::error::{Error, Result};
use crate::index::{PauliIndex, QubitCount};
use crate::matrix::InputMatrix;
use crate::terms::{PauliTerm, PauliTermList};

/// Produced values smaller than this fraction of `|c[r]| + |c[r*]|` count as cancelled.
pub const CANCELLATION_TOLERANCE: f64 = 1e-15;

/// Map from coordinate index to nonzero value.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseCoordinateMap {
    qubits: QubitCount,
    entries: HashMap<u64, Complex64>,
    stage: u32,
}

/// Coordinate-production counts of one sparse run.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkloadStats {
    /// Nonzero coordinates present before the first iteration.
    pub initial: u64,
    /// Nonzero coordinates produced by each iteration.
    pub per_iteration: Vec<u64>,
    /// Sum of `per_iteration`.
    pub total: u64,
    /// [`workload_bound`] for the initial count.
    pub bound: f64,
}

impl SparseCoordinateMap {
    pub fn new(qubits: QubitCount) -> Self {
        SparseCoordinateMap {
            qubits,
            entries: HashMap::new(),
            stage: 0,
        }
    }

    /// Stage-0 map of an embedded matrix, skipping exact zeros.
    pub fn embed(a: &InputMatrix, cfg: &EmbedConfig) -> Result<Self> {
        let n = a.dim();
        let qubits = cfg.resolve_qubits(n)?;
        let mut map = Self::new(qubits);
        a.for_each_entry(|i, j, v| {
            map.insert_unchecked(PauliIndex::join(i as u64, j as u64), v);
        });
        for i in n..qubits.dim() {
            map.insert_unchecked(PauliIndex::join(i as u64, i as u64), cfg.delta);
        }
        Ok(map)
    }

    /// Sets a stage-0 coordinate. Zero values remove the entry.
    pub fn insert(&mut self, index: PauliIndex, value: Complex64) -> Result<()> {
        if index.get() >= self.qubits.coordinate_count() as u64 {
            return Err(Error::domain(format!(
                "index {} out of range for {} qubits",
                index.get(),
                self.qubits
            )));
        }
        if self.stage != 0 {
            return Err(Error::Stage {
                expected: 0,
                found: self.stage,
            });
        }
        self.insert_unchecked(index, value);
        Ok(())
    }

    fn insert_unchecked(&mut self, index: PauliIndex, value: Complex64) {
        if value == Complex64::new(0.0, 0.0) {
            self.entries.remove(&index.get());
        } else {
            self.entries.insert(index.get(), value);
        }
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: PauliIndex) -> Complex64 {
        self.entries.get(&index.get()).copied().unwrap_or_default()
    }

    pub fn keys(&self) -> impl Iterator<Item = PauliIndex> + '_ {
        self.entries.keys().map(|&r| PauliIndex(r))
    }

    /// Dense array of all `4^Q` coordinates.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.qubits.coordinate_count()];
        for (&r, &v) in &self.entries {
            out[r as usize] = v;
        }
        out
    }

    /// Runs the next iteration and returns how many nonzero coordinates it produced.
    pub fn apply_iteration(&mut self) -> Result<u64> {
        let q = self.stage;
        if q >= self.qubits.get() {
            return Err(Error::Stage {
                expected: self.qubits.get() - 1,
                found: q,
            });
        }
        let high_bit = 1u64 << (2 * q + 1);
        let mut next = HashMap::with_capacity(2 * self.entries.len());
        let mut produced = 0u64;
        let mut emit = |r: u64, value: Complex64, scale: f64| {
            if value.norm() > CANCELLATION_TOLERANCE * scale {
                next.insert(r, value);
                produced += 1;
            }
        };
        for (&r, &v) in &self.entries {
            let p = PauliIndex(r).partner(q).get();
            // Each pair is handled from its member with crumb q in {0, 1}.
            let (lo, hi, lo_val, hi_val) = if r & high_bit == 0 {
                (r, p, v, self.entries.get(&p).copied().unwrap_or_default())
            } else if self.entries.contains_key(&p) {
                continue;
            } else {
                (p, r, Complex64::new(0.0, 0.0), v)
            };
            let scale = lo_val.norm() + hi_val.norm();
            emit(lo, lo_val + hi_val, scale);
            emit(hi, lo_val - hi_val, scale);
        }
        self.entries = next;
        self.stage += 1;
        Ok(produced)
    }
}

/// Upper bound on the coordinates produced from `l` initial nonzeros.
///
/// `2(N-1)l` while `l <= N`; above that the saturating estimate
/// `N^2 [log2(N l / N^2) + 2(1 - l / N^2)]`. Both give `2N(N-1)` at `l = N`
/// and the dense count `N^2 log2 N` at `l = N^2`.
pub fn workload_bound(l: u64, qubits: QubitCount) -> Result<f64> {
    let n = qubits.dim() as f64;
    let n2 = qubits.coordinate_count() as u64;
    if l > n2 {
        return Err(Error::domain(format!(
            "initial count {l} exceeds {n2} coordinates"
        )));
    }
    if l as f64 <= n {
        return Ok(2.0 * (n - 1.0) * l as f64);
    }
    let density = l as f64 / n2 as f64;
    Ok(n2 as f64 * ((n * density).log2() + 2.0 * (1.0 - density)))
}

/// Runs all iterations on `map`, returning the Pauli expansion and workload counts.
pub fn sparse_forward(
    mut map: SparseCoordinateMap,
    threshold: f64,
) -> Result<(PauliTermList, WorkloadStats)> {
    if map.stage != 0 {
        return Err(Error::Stage {
            expected: 0,
            found: map.stage,
        });
    }
    let qubits = map.qubits;
    let initial = map.len() as u64;
    let mut per_iteration = Vec::with_capacity(qubits.get() as usize);
    for _ in 0..qubits.get() {
        per_iteration.push(map.apply_iteration()?);
    }
    let scale = (-(qubits.get() as f64)).exp2();
    let mut terms: Vec<PauliTerm> = map
        .entries
        .into_iter()
        .map(|(r, c)| {
            let index = PauliIndex(r);
            PauliTerm {
                index,
                coefficient: mul_i_pow(c, index.count_y()) * scale,
            }
        })
        .filter(|t| threshold <= 0.0 || t.coefficient.norm() >= threshold)
        .collect();
    terms.sort_by_key(|t| t.index);
    let stats = WorkloadStats {
        initial,
        total: per_iteration.iter().sum(),
        per_iteration,
        bound: workload_bound(initial, qubits)?,
    };
    Ok((
        PauliTermList::from_sorted_unchecked(qubits, terms, threshold),
        stats,
    ))
}

/// `l` distinct uniformly random indices carrying random nonzero complex values.
///
/// Moduli lie in `[0.5, 1.5)` with uniform phase, so exact cancellations
/// occur with probability zero.
pub fn random_support(l: u64, qubits: QubitCount, seed: u64) -> Result<SparseCoordinateMap> {
    let total = qubits.coordinate_count();
    if l > total as u64 {
        return Err(Error::domain(format!(
            "cannot place {l} nonzeros among {total} coordinates"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut map = SparseCoordinateMap::new(qubits);
    map.entries.reserve(l as usize);
    let picks: Vec<usize> = if l as usize == total {
        (0..total).collect()
    } else {
        sample(&mut rng, total, l as usize).into_vec()
    };
    for r in picks {
        let modulus = rng.gen_range(0.5..1.5);
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        map.entries.insert(r as u64, Complex64::from_polar(modulus, phase));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::forward;
    use crate::matrix::DenseOperator;

    fn q(n: u32) -> QubitCount {
        QubitCount::new(n).unwrap()
    }

    #[test]
    fn single_nonzero_doubles() {
        for seed in 0..5 {
            let map = random_support(1, q(3), seed).unwrap();
            let (_, stats) = sparse_forward(map, 0.0).unwrap();
            assert_eq!(stats.per_iteration, vec![2, 4, 8]);
            assert_eq!(stats.total, 14);
            assert_eq!(stats.bound, 14.0);
        }
    }

    #[test]
    fn dense_support_saturates() {
        let map = random_support(64, q(3), 7).unwrap();
        let (_, stats) = sparse_forward(map, 0.0).unwrap();
        assert_eq!(stats.per_iteration, vec![64, 64, 64]);
        assert_eq!(stats.total, 192);
    }

    #[test]
    fn diagonal_stays_diagonal() {
        let values: Vec<_> = [0.7, -1.3, 2.2, 0.4, 1.9, -0.8, 3.1, 1.1]
            .iter()
            .map(|&x| Complex64::new(x, 0.25 * x))
            .collect();
        let a = DenseOperator::diagonal(&values).into();
        let mut map = SparseCoordinateMap::embed(&a, &EmbedConfig::default()).unwrap();
        assert_eq!(map.len(), 8);
        let mut total = 0;
        for _ in 0..3 {
            total += map.apply_iteration().unwrap();
            assert_eq!(map.len(), 8);
            assert!(map.keys().all(PauliIndex::is_diagonal));
        }
        assert_eq!(total, 24);
    }

    #[test]
    fn empty_support() {
        let map = random_support(0, q(3), 1).unwrap();
        let (terms, stats) = sparse_forward(map, 0.0).unwrap();
        assert!(terms.is_empty());
        assert_eq!(stats.total, 0);
        assert_eq!(stats.bound, 0.0);
    }

    #[test]
    fn support_below_critical_point_obeys_bound() {
        for seed in 0..10 {
            let map = random_support(8, q(3), seed).unwrap();
            let (_, stats) = sparse_forward(map, 0.0).unwrap();
            assert!(stats.total <= 112, "seed {seed}: {}", stats.total);
        }
    }

    #[test]
    fn bound_formula_values() {
        assert_eq!(workload_bound(1, q(3)).unwrap(), 14.0);
        assert_eq!(workload_bound(8, q(3)).unwrap(), 112.0);
        assert!((workload_bound(64, q(3)).unwrap() - 192.0).abs() < 1e-9);
        assert!(workload_bound(65, q(3)).is_err());
        // the saturating branch evaluated exactly at l = N agrees with the linear one
        for qubits in 1..=10 {
            let n = (1u64 << qubits) as f64;
            let density = 1.0 / n;
            let saturating = n * n * ((n * density).log2() + 2.0 * (1.0 - density));
            assert!((saturating - 2.0 * n * (n - 1.0)).abs() < 1e-6);
        }
    }

    #[test]
    fn random_support_errors_and_determinism() {
        assert!(random_support(17, q(2), 0).is_err());
        assert_eq!(random_support(5, q(3), 42).unwrap(), random_support(5, q(3), 42).unwrap());
        assert_eq!(random_support(5, q(3), 42).unwrap().len(), 5);
    }

    #[test]
    fn matches_dense_path() {
        let map = random_support(20, q(3), 3).unwrap();
        let coords = map.to_dense();
        let dense = crate::dense::CoordinateVector::from_coordinates(q(3), coords)
            .unwrap()
            .forward_iterations()
            .unwrap()
            .finalize(0.0)
            .unwrap();
        let (sparse, _) = sparse_forward(map, 0.0).unwrap();
        let sparse = sparse.to_coefficients();
        for t in &dense {
            assert!((t.coefficient - sparse[t.index.get() as usize]).norm() < 1e-12);
        }
    }

    #[test]
    fn embed_skips_zeros_and_adds_delta() {
        let a = DenseOperator::identity(3).into();
        let map = SparseCoordinateMap::embed(&a, &EmbedConfig::with_delta(5.0)).unwrap();
        assert_eq!(map.len(), 4);
        assert_eq!(map.get(PauliIndex::join(3, 3)), Complex64::new(5.0, 0.0));
        let dense = forward(&a, &EmbedConfig::with_delta(5.0), 0.0).unwrap();
        let (sparse, _) = sparse_forward(map, 0.0).unwrap();
        assert_eq!(dense.to_coefficients(), sparse.to_coefficients());
    }
}
