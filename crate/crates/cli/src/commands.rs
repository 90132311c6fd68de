use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crumbs::formats::{self, format_float};
use crumbs::{
    eigen_hermitian, first_order_energy, forward, hamiltonian_matrix, reconstruct,
    scaling_experiment, sparse_forward, EmbedConfig, InputMatrix, PauliTermList, QubitCount,
    SparseCoordinateMap,
};
use log::info;

use crate::Command;

/// Dense path when more than this fraction of coordinates is nonzero.
const AUTO_DENSITY: f64 = 1.0 / 8.0;

#[derive(Debug)]
pub enum CliError {
    Lib(crumbs::Error),
    Io(PathBuf, io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(crumbs::Error::Parse { .. } | crumbs::Error::Domain(_)) => 2,
            CliError::Lib(crumbs::Error::Dimension { .. }) => 3,
            CliError::Lib(crumbs::Error::Resource(_)) => 4,
            CliError::Lib(_) | CliError::Io(..) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
        }
    }
}

impl From<crumbs::Error> for CliError {
    fn from(e: crumbs::Error) -> Self {
        CliError::Lib(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn open_in(path: &Path) -> Result<Box<dyn BufRead>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(BufReader::new(io::stdin())));
    }
    let file = File::open(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    Ok(Box::new(BufReader::new(file)))
}

fn write_out(path: &Path, body: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<()> {
    let io_err = |e| CliError::Io(path.to_owned(), e);
    if path.as_os_str() == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        body(&mut lock).map_err(io_err)?;
        lock.flush().map_err(io_err)
    } else {
        let mut w = BufWriter::new(File::create(path).map_err(io_err)?);
        body(&mut w).map_err(io_err)?;
        w.flush().map_err(io_err)
    }
}

fn qubit_count(q: Option<u32>) -> Result<Option<QubitCount>> {
    Ok(q.map(QubitCount::new).transpose()?)
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Decompose {
            input,
            pad_delta,
            qubits,
            threshold,
            sparse,
            dense,
            auto: _,
            count_work,
            out,
        } => {
            let a = formats::read_matrix(open_in(&input)?)?;
            let cfg = EmbedConfig {
                delta: pad_delta,
                qubits: qubit_count(qubits)?,
            };
            let q = cfg.resolve_qubits(a.dim())?;
            let padding = if pad_delta == 0.0.into() { 0 } else { q.dim() - a.dim() };
            let initial = a.nonzero_count() + padding;
            let density = initial as f64 / q.coordinate_count() as f64;
            let use_sparse = sparse || (!dense && density <= AUTO_DENSITY);
            info!(
                "n={}, Q={q}, initial nonzeros={initial}, path={}",
                a.dim(),
                if use_sparse { "sparse" } else { "dense" }
            );
            let mut comments = vec![format!(
                "n={} delta={},{} threshold={}",
                a.dim(),
                format_float(pad_delta.re),
                format_float(pad_delta.im),
                format_float(threshold)
            )];
            let terms = if use_sparse {
                let map = SparseCoordinateMap::embed(&a, &cfg)?;
                let (terms, stats) = sparse_forward(map, threshold)?;
                if count_work {
                    let per: Vec<String> = stats.per_iteration.iter().map(u64::to_string).collect();
                    comments.push(format!(
                        "workload path=sparse initial={} per_iteration={} total={} bound={}",
                        stats.initial,
                        per.join(","),
                        stats.total,
                        stats.bound
                    ));
                }
                terms
            } else {
                let terms = forward(&a, &cfg, threshold)?;
                if count_work {
                    let n = q.coordinate_count() as u64;
                    comments.push(format!(
                        "workload path=dense per_iteration={n}x{q} total={}",
                        n * q.get() as u64
                    ));
                }
                terms
            };
            write_out(&out, |w| formats::write_terms(w, &terms, &comments))
        }
        Command::Reconstruct {
            input,
            qubits,
            dim,
            out,
        } => {
            let terms = formats::read_terms(open_in(&input)?, qubit_count(qubits)?)?;
            let mut m = reconstruct(&terms)?;
            if let Some(n) = dim {
                m = m.leading_block(n)?;
            }
            write_out(&out, |w| formats::write_dense(w, &m))
        }
        Command::Bench {
            qmin,
            qmax,
            regimes,
            seeds,
            out,
        } => {
            if qmin == 0 || qmin > qmax {
                return Err(crumbs::Error::Domain(format!("need 1 <= qmin <= qmax, got {qmin}..{qmax}")).into());
            }
            let seeds: Vec<u64> = (0..seeds).collect();
            let start = std::time::Instant::now();
            let rows = scaling_experiment(qmin..=qmax, &regimes, &seeds)?;
            info!("{} runs in {:.2} s", rows.len(), start.elapsed().as_secs_f64());
            write_out(&out, |w| crumbs::scaling::write_csv(w, &rows))
        }
        Command::Boson {
            config,
            lambda_grid,
            out,
            terms_out,
            matrix_out,
        } => {
            let mut text = String::new();
            open_in(&config)?
                .read_to_string(&mut text)
                .map_err(|e| CliError::Io(config.clone(), e))?;
            let file = formats::parse_boson_config(&text)?;
            let cfg = EmbedConfig::with_delta(file.delta);

            let h = hamiltonian_matrix(&file.model)?;
            let q = cfg.resolve_qubits(h.dim())?;
            info!("n={}, Q={q}, nonzeros={}", h.dim(), h.nonzero_count());
            if let Some(path) = &matrix_out {
                write_out(path, |w| formats::write_matrix(w, &h))?;
            }
            if let Some(path) = &terms_out {
                let terms = forward(&h, &cfg, 1e-12)?;
                info!("{} Pauli terms above 1e-12", terms.len());
                let comments = [format!("n={} delta={} lambda={}", h.dim(), file.delta, file.model.coupling)];
                write_out(path, |w| formats::write_terms(w, &terms, &comments))?;
            }

            let mut rows = Vec::with_capacity(lambda_grid.0.len());
            for &lambda in &lambda_grid.0 {
                let model = file.model.with_coupling(lambda);
                let h = hamiltonian_matrix(&model)?;
                let exact = ground_energy_via_terms(&h, &cfg)?;
                rows.push((lambda, exact, first_order_energy(&model)?));
            }
            write_out(&out, |w| {
                writeln!(w, "lambda,E_exact,E_perturbative")?;
                for (lambda, exact, pert) in &rows {
                    writeln!(w, "{lambda},{exact},{pert}")?;
                }
                Ok(())
            })
        }
    }
}

/// Decomposes, rebuilds from the terms, crops the padding and diagonalises.
fn ground_energy_via_terms(h: &InputMatrix, cfg: &EmbedConfig) -> Result<f64> {
    let terms: PauliTermList = forward(h, cfg, 0.0)?;
    let rebuilt = reconstruct(&terms)?.leading_block(h.dim())?;
    Ok(eigen_hermitian(&rebuilt)?.ground_energy())
}
