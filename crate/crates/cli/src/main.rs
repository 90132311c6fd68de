use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use num_complex::Complex64;

mod commands;

#[derive(Parser, Debug)]
#[command(name = "crumbs", version, about = "Pauli-string decomposition of square complex matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a matrix file into a sorted Pauli term list.
    #[command(group(ArgGroup::new("path").args(["sparse", "dense", "auto"])))]
    Decompose {
        /// Matrix file (`dense <n>` or `coo <n> <nnz>`), `-` for stdin.
        input: PathBuf,
        /// Value placed on the padded diagonal, `re` or `re,im`.
        #[arg(long, value_parser = parse_delta, default_value = "0")]
        pad_delta: Complex64,
        /// Register size; defaults to the smallest that fits.
        #[arg(long)]
        qubits: Option<u32>,
        /// Drop terms with modulus below this.
        #[arg(long, default_value_t = 1e-12)]
        threshold: f64,
        /// Track only nonzero coordinates.
        #[arg(long)]
        sparse: bool,
        /// Transform the full coordinate array.
        #[arg(long)]
        dense: bool,
        /// Dense when more than 1/8 of the coordinates are nonzero (default).
        #[arg(long)]
        auto: bool,
        /// Append workload statistics as comment lines.
        #[arg(long)]
        count_work: bool,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Rebuild the dense matrix from a term list.
    Reconstruct {
        /// Terms file, `-` for stdin.
        input: PathBuf,
        /// Register size for a file without terms or header.
        #[arg(long)]
        qubits: Option<u32>,
        /// Keep only the leading `dim x dim` block.
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Measure sparse-transform workload on random supports; writes CSV.
    Bench {
        #[arg(long, default_value_t = 1)]
        qmin: u32,
        #[arg(long, default_value_t = 8)]
        qmax: u32,
        /// Comma-separated regimes out of `1`, `N`, `N2`.
        #[arg(long, default_value = "1,N,N2", value_delimiter = ',')]
        regimes: Vec<crumbs::Regime>,
        /// Number of seeds per point, seeds are `0..count`.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value = "-")]
        out: PathBuf,
    },
    /// Ground-state energy of the boson model over a coupling grid; writes CSV.
    Boson {
        /// `key=value` config file.
        config: PathBuf,
        /// `start:stop:step`, inclusive.
        #[arg(long, default_value = "0:5:0.25", value_parser = parse_grid)]
        lambda_grid: Grid,
        #[arg(long, default_value = "-")]
        out: PathBuf,
        /// Also write the term list at the config's coupling.
        #[arg(long)]
        terms_out: Option<PathBuf>,
        /// Also write the Hamiltonian at the config's coupling.
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone)]
pub struct Grid(pub Vec<f64>);

fn parse_delta(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("invalid number {t:?}"))
    };
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse(re)?, parse(im)?)),
        None => Ok(Complex64::new(parse(s)?, 0.0)),
    }
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("invalid number {t:?}")))
        .collect::<Result<_, _>>()?;
    let [start, stop, step] = parts.as_slice() else {
        return Err("expected start:stop:step".into());
    };
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || *step <= 0.0 || stop < start {
        return Err("need finite start <= stop and step > 0".into());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 100_000 {
        return Err("grid has too many points".into());
    }
    Ok(Grid((0..=count).map(|k| start + k as f64 * step).collect()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .format_target(false)
        .init();
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            log::error!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_values() {
        assert_eq!(parse_delta("100").unwrap(), Complex64::new(100.0, 0.0));
        assert_eq!(parse_delta("1.5,-2").unwrap(), Complex64::new(1.5, -2.0));
        assert!(parse_delta("x").is_err());
        assert!(parse_delta("nan").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("0:5:0.25").unwrap().0;
        assert_eq!(g.len(), 21);
        assert_eq!(g[20], 5.0);
        assert_eq!(parse_grid("1:1:0.5").unwrap().0, vec![1.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("2:1:0.1").is_err());
    }

    #[test]
    fn cli_definition() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
