//! Workload scaling experiments over register size and initial sparsity.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::index::QubitCount;
use crate::sparse::{random_support, sparse_forward, workload_bound};

/// Largest register a scaling run may use (`4^12` coordinates).
pub const MAX_SCALING_QUBITS: u32 = 12;

/// Initial nonzero count as a function of `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `l = 1`
    Single,
    /// `l = N`
    Linear,
    /// `l = N^2`
    Dense,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Single, Regime::Linear, Regime::Dense];

    pub fn initial_count(self, qubits: QubitCount) -> u64 {
        match self {
            Regime::Single => 1,
            Regime::Linear => qubits.dim() as u64,
            Regime::Dense => qubits.coordinate_count() as u64,
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Single => "1",
            Regime::Linear => "N",
            Regime::Dense => "N2",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "single" => Ok(Regime::Single),
            "N" | "n" | "linear" => Ok(Regime::Linear),
            "N2" | "n2" | "N^2" | "dense" => Ok(Regime::Dense),
            other => Err(Error::domain(format!("unknown regime {other:?}"))),
        }
    }
}

/// One measured run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub qubits: u32,
    pub initial: u64,
    pub measured: u64,
    pub bound: f64,
    pub seed: u64,
}

/// Runs the sparse transform on random supports for every `(Q, regime, seed)`.
pub fn scaling_experiment(
    qubit_range: std::ops::RangeInclusive<u32>,
    regimes: &[Regime],
    seeds: &[u64],
) -> Result<Vec<ScalingRow>> {
    if *qubit_range.end() > MAX_SCALING_QUBITS {
        return Err(Error::Resource(format!(
            "scaling runs limited to {MAX_SCALING_QUBITS} qubits, got {}",
            qubit_range.end()
        )));
    }
    let mut rows = Vec::new();
    for q in qubit_range {
        let qubits = QubitCount::new(q)?;
        for &regime in regimes {
            let l = regime.initial_count(qubits);
            for &seed in seeds {
                let map = random_support(l, qubits, seed)?;
                let (_, stats) = sparse_forward(map, 0.0)?;
                rows.push(ScalingRow {
                    qubits: q,
                    initial: l,
                    measured: stats.total,
                    bound: workload_bound(l, qubits)?,
                    seed,
                });
            }
        }
    }
    Ok(rows)
}

pub const CSV_HEADER: &str = "Q,l,L_measured,L_bound,seed";

pub fn write_csv<W: Write>(mut out: W, rows: &[ScalingRow]) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.qubits, r.initial, r.measured, r.bound, r.seed
        )?;
    }
    Ok(())
}
