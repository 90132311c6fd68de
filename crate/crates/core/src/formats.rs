//! Plain-text file formats.
//!
//! Matrix files start with a header line, either `dense <n>` followed by `n`
//! rows of `n` whitespace-separated entries (`re`, `imj`, `re+imj` or
//! `re-imj`), or `coo <n> <nnz>` followed by `nnz` lines `i j re im`.
//!
//! Term files hold one `<label> <re> <im>` line per Pauli string, labels
//! sorted, highest qubit leftmost. Lines starting with `#` are comments; a
//! `# qubits=<Q>` comment records the register size so that an empty list
//! still round-trips.
//!
//! Boson configs are `key=value` pairs separated by whitespace or newlines.

use std::io::{self, BufRead, Write};

use num_complex::Complex64;

use crate::boson::BosonConfig;
use crate::error::{Error, Result};
use crate::index::{parse_label, QubitCount};
use crate::matrix::{DenseOperator, InputMatrix, Triplet};
use crate::terms::{PauliTerm, PauliTermList};

/// Shortest round-trip text for a float; `-0` is written as `0`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else if (1e-5..1e16).contains(&x.abs()) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn format_complex_token(z: Complex64) -> String {
    if z.im == 0.0 {
        format_float(z.re)
    } else {
        let im = format_float(z.im);
        let sign = if im.starts_with('-') { "" } else { "+" };
        format!("{}{sign}{im}j", format_float(z.re))
    }
}

fn parse_float(token: &str, line: usize) -> Result<f64> {
    let x: f64 = token
        .parse()
        .map_err(|_| Error::parse(line, format!("invalid number {token:?}")))?;
    if !x.is_finite() {
        return Err(Error::parse(line, format!("non-finite number {token:?}")));
    }
    Ok(x)
}

/// Parses `re`, `imj`, `re+imj` or `re-imj`.
pub fn parse_complex_token(token: &str, line: usize) -> Result<Complex64> {
    let Some(body) = token.strip_suffix('j') else {
        return Ok(Complex64::new(parse_float(token, line)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    match split {
        Some(k) => Ok(Complex64::new(
            parse_float(&body[..k], line)?,
            parse_float(&body[k..], line)?,
        )),
        None => Ok(Complex64::new(0.0, parse_float(body, line)?)),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .map(|(k, line)| {
            line.map(|l| (k + 1, l))
                .map_err(|e| Error::parse(k + 1, e.to_string()))
        })
        .filter(|r| match r {
            Ok((_, l)) => {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            }
            Err(_) => true,
        })
}

pub fn read_matrix<R: BufRead>(reader: R) -> Result<InputMatrix> {
    let mut lines = content_lines(reader);
    let (hline, header) = lines
        .next()
        .transpose()?
        .ok_or_else(|| Error::parse(1, "missing matrix header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let parse_usize = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::parse(hline, format!("invalid size {s:?}")))
    };
    match fields.as_slice() {
        ["dense", n] => {
            let n = parse_usize(n)?;
            if n == 0 {
                return Err(Error::parse(hline, "dimension must be at least 1"));
            }
            let mut data = Vec::with_capacity(n * n);
            for row in 0..n {
                let (line, text) = lines
                    .next()
                    .transpose()?
                    .ok_or_else(|| Error::parse(hline, format!("expected {n} rows, found {row}")))?;
                let before = data.len();
                for tok in text.split_whitespace() {
                    data.push(parse_complex_token(tok, line)?);
                }
                if data.len() - before != n {
                    return Err(Error::parse(
                        line,
                        format!("expected {n} entries, found {}", data.len() - before),
                    ));
                }
            }
            if let Some(extra) = lines.next().transpose()? {
                return Err(Error::parse(extra.0, "unexpected trailing data"));
            }
            InputMatrix::dense(DenseOperator::from_row_major(n, data)?)
        }
        ["coo", n, nnz] => {
            let n = parse_usize(n)?;
            let nnz = parse_usize(nnz)?;
            let mut entries = Vec::with_capacity(nnz);
            let mut seen = std::collections::HashSet::with_capacity(nnz);
            for k in 0..nnz {
                let (line, text) = lines
                    .next()
                    .transpose()?
                    .ok_or_else(|| Error::parse(hline, format!("expected {nnz} entries, found {k}")))?;
                let toks: Vec<&str> = text.split_whitespace().collect();
                let [i, j, re, im] = toks.as_slice() else {
                    return Err(Error::parse(line, "expected `i j re im`"));
                };
                let row: usize = i
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid row {i:?}")))?;
                let col: usize = j
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid column {j:?}")))?;
                if row >= n || col >= n {
                    return Err(Error::parse(line, format!("entry ({row}, {col}) out of range")));
                }
                if !seen.insert((row, col)) {
                    return Err(Error::parse(line, format!("duplicate entry ({row}, {col})")));
                }
                let value = Complex64::new(parse_float(re, line)?, parse_float(im, line)?);
                entries.push(Triplet { row, col, value });
            }
            if let Some(extra) = lines.next().transpose()? {
                return Err(Error::parse(extra.0, "unexpected trailing data"));
            }
            InputMatrix::sparse(n, entries).map_err(|e| Error::parse(hline, e.to_string()))
        }
        _ => Err(Error::parse(
            hline,
            "header must be `dense <n>` or `coo <n> <nnz>`",
        )),
    }
}

pub fn write_matrix<W: Write>(mut out: W, m: &InputMatrix) -> io::Result<()> {
    match m {
        InputMatrix::Dense(d) => write_dense(out, d),
        InputMatrix::Sparse { dim, entries } => {
            writeln!(out, "coo {dim} {}", entries.len())?;
            for t in entries {
                writeln!(
                    out,
                    "{} {} {} {}",
                    t.row,
                    t.col,
                    format_float(t.value.re),
                    format_float(t.value.im)
                )?;
            }
            Ok(())
        }
    }
}

pub fn write_dense<W: Write>(mut out: W, m: &DenseOperator) -> io::Result<()> {
    writeln!(out, "dense {}", m.dim())?;
    for i in 0..m.dim() {
        let row: Vec<String> = m.row(i).iter().map(|&z| format_complex_token(z)).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Reads a term list. `qubits` is used when the file has neither terms nor a
/// `# qubits=` comment.
pub fn read_terms<R: BufRead>(reader: R, qubits: Option<QubitCount>) -> Result<PauliTermList> {
    let mut declared = None;
    let mut register = None;
    let mut terms = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line_no = k + 1;
        let line = line.map_err(|e| Error::parse(line_no, e.to_string()))?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            for field in comment.split_whitespace() {
                if let Some(v) = field.strip_prefix("qubits=") {
                    let q = v
                        .parse::<u32>()
                        .ok()
                        .and_then(|q| QubitCount::new(q).ok())
                        .ok_or_else(|| Error::parse(line_no, format!("invalid qubit count {v:?}")))?;
                    declared = Some(q);
                }
            }
            continue;
        }
        let toks: Vec<&str> = text.split_whitespace().collect();
        let [label, re, im] = toks.as_slice() else {
            return Err(Error::parse(line_no, "expected `<label> <re> <im>`"));
        };
        let (index, q) = parse_label(label).map_err(|e| Error::parse(line_no, e.to_string()))?;
        match register {
            None => register = Some(q),
            Some(prev) if prev != q => {
                return Err(Error::parse(
                    line_no,
                    format!("label {label:?} has {q} qubits, expected {prev}"),
                ))
            }
            _ => {}
        }
        terms.push(PauliTerm {
            index,
            coefficient: Complex64::new(parse_float(re, line_no)?, parse_float(im, line_no)?),
        });
    }
    let qubits = match (register, declared.or(qubits)) {
        (Some(r), Some(d)) if r != d => {
            return Err(Error::parse(1, format!("labels have {r} qubits but {d} were declared")))
        }
        (Some(r), _) => r,
        (None, Some(d)) => d,
        (None, None) => return Err(Error::parse(1, "empty term list without a qubit count")),
    };
    PauliTermList::new(qubits, terms, 0.0).map_err(|e| Error::parse(1, e.to_string()))
}

/// Writes `terms` preceded by `# qubits=<Q>` and any extra comment lines.
pub fn write_terms<W: Write>(mut out: W, terms: &PauliTermList, comments: &[String]) -> io::Result<()> {
    writeln!(out, "# qubits={}", terms.qubits())?;
    for c in comments {
        writeln!(out, "# {c}")?;
    }
    for t in terms {
        writeln!(
            out,
            "{} {} {}",
            terms.label(t),
            format_float(t.coefficient.re),
            format_float(t.coefficient.im)
        )?;
    }
    Ok(())
}

/// A boson model plus the padding value for its embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct BosonFile {
    pub model: BosonConfig,
    pub delta: f64,
}

/// Parses `Lx=2 Ly=1 Lz=1 Mx=2 My=1 Mz=1 mass=0 Nmax=4 lambda=1.0 delta=100`.
///
/// Box lengths, mode counts and `Nmax` are required; `mass`, `lambda` and
/// `delta` default to zero.
pub fn parse_boson_config(text: &str) -> Result<BosonFile> {
    let mut lengths = [None; 3];
    let mut modes = [None; 3];
    let mut max_particles = None;
    let (mut mass, mut coupling, mut delta) = (0.0, 0.0, 0.0);
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        for field in content.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, format!("expected key=value, got {field:?}")))?;
            let int = || -> Result<u32> {
                value
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid integer for {key}: {value:?}")))
            };
            match key {
                "Lx" => lengths[0] = Some(parse_float(value, line_no)?),
                "Ly" => lengths[1] = Some(parse_float(value, line_no)?),
                "Lz" => lengths[2] = Some(parse_float(value, line_no)?),
                "Mx" => modes[0] = Some(int()?),
                "My" => modes[1] = Some(int()?),
                "Mz" => modes[2] = Some(int()?),
                "Nmax" => max_particles = Some(int()?),
                "mass" => mass = parse_float(value, line_no)?,
                "lambda" => coupling = parse_float(value, line_no)?,
                "delta" => delta = parse_float(value, line_no)?,
                other => return Err(Error::parse(line_no, format!("unknown key {other:?}"))),
            }
        }
    }
    let last = text.lines().count().max(1);
    let require = |v: Option<f64>, name: &str| v.ok_or_else(|| Error::parse(last, format!("missing key {name}")));
    let require_int = |v: Option<u32>, name: &str| v.ok_or_else(|| Error::parse(last, format!("missing key {name}")));
    let model = BosonConfig {
        box_lengths: [
            require(lengths[0], "Lx")?,
            require(lengths[1], "Ly")?,
            require(lengths[2], "Lz")?,
        ],
        modes_per_axis: [
            require_int(modes[0], "Mx")?,
            require_int(modes[1], "My")?,
            require_int(modes[2], "Mz")?,
        ],
        mass,
        coupling,
        max_particles: require_int(max_particles, "Nmax")?,
    };
    model
        .validate()
        .map_err(|e| Error::parse(last, e.to_string()))?;
    Ok(BosonFile { model, delta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_tokens() {
        assert_eq!(parse_complex_token("1.5", 1).unwrap(), c(1.5, 0.0));
        assert_eq!(parse_complex_token("1.5+2j", 1).unwrap(), c(1.5, 2.0));
        assert_eq!(parse_complex_token("-1e-3-2.5e+2j", 1).unwrap(), c(-1e-3, -250.0));
        assert_eq!(parse_complex_token("-2j", 1).unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex_token("3E5j", 1).unwrap(), c(0.0, 3e5));
        assert!(matches!(parse_complex_token("abc", 7), Err(Error::Parse { line: 7, .. })));
        assert!(parse_complex_token("inf", 1).is_err());
    }

    #[test]
    fn float_formatting() {
        assert_eq!(format_float(2.5), "2.5");
        assert_eq!(format_float(-0.0), "0");
        assert_eq!(format_float(-0.5), "-0.5");
        assert_eq!(format_float(1e-20), "1e-20");
        assert_eq!(format_complex_token(c(1.0, -2.0)), "1-2j");
        assert_eq!(format_complex_token(c(0.0, 1e-7)), "0+1e-7j");
    }

    #[test]
    fn dense_matrix_file() {
        let text = "# comment\ndense 2\n1 2+1j\n\n3 -4j\n";
        let m = read_matrix(text.as_bytes()).unwrap().to_dense();
        assert_eq!(m.as_slice(), &[c(1.0, 0.0), c(2.0, 1.0), c(3.0, 0.0), c(0.0, -4.0)]);
    }

    #[test]
    fn coo_matrix_file() {
        let text = "coo 3 2\n0 2 1.5 0\n2 0 0 -1\n";
        let m = read_matrix(text.as_bytes()).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(m.to_dense()[(2, 0)], c(0.0, -1.0));
    }

    #[test]
    fn matrix_parse_errors_carry_lines() {
        let cases = [
            ("dense 2\n1 2\n3\n", 3),
            ("dense 2\n1 x\n3 4\n", 2),
            ("sparse 2\n", 1),
            ("coo 2 1\n0 5 1 0\n", 2),
            ("coo 2 2\n0 0 1 0\n0 0 2 0\n", 3),
            ("dense 1\n1\n2\n", 3),
        ];
        for (text, line) in cases {
            match read_matrix(text.as_bytes()) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(read_matrix("".as_bytes()).is_err());
    }

    #[test]
    fn terms_file() {
        let text = "# qubits=1\nI 2.5 0\nX 2.5 0\nY 0 -0.5\nZ -1.5 0\n";
        let terms = read_terms(text.as_bytes(), None).unwrap();
        assert_eq!(terms.len(), 4);
        assert_eq!(terms.coefficient_of("Y").unwrap(), c(0.0, -0.5));
        let mut buf = Vec::new();
        write_terms(&mut buf, &terms, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), text);
    }

    #[test]
    fn terms_errors() {
        assert!(matches!(read_terms("A 1 0\n".as_bytes(), None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            read_terms("X 1 0\nXX 1 0\n".as_bytes(), None),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(read_terms("X 1\n".as_bytes(), None).is_err());
        assert!(read_terms("".as_bytes(), None).is_err());
        let one = QubitCount::new(1).unwrap();
        let empty = read_terms("".as_bytes(), Some(one)).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.qubits(), one);
    }

    #[test]
    fn boson_config() {
        let f = parse_boson_config("Lx=2 Ly=1 Lz=1 Mx=2 My=1 Mz=1 mass=0 Nmax=4 lambda=1.0 delta=100").unwrap();
        assert_eq!(f.model, BosonConfig::demo(1.0));
        assert_eq!(f.delta, 100.0);
        let multi = "# demo\nLx=2 Ly=1 Lz=1\nMx=2 My=1 Mz=1\nNmax=4\n";
        assert_eq!(parse_boson_config(multi).unwrap().model, BosonConfig::demo(0.0));
        assert!(matches!(parse_boson_config("Lx=2 foo=1"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_boson_config("Lx=2 Ly=1 Lz=1 Mx=2 My=1 Mz=1").is_err());
        assert!(parse_boson_config("Lx=-2 Ly=1 Lz=1 Mx=2 My=1 Mz=1 Nmax=1").is_err());
        assert!(parse_boson_config("Lx=2 Ly=1 Lz=1 Mx=a My=1 Mz=1 Nmax=1").is_err());
    }

    fn arb_complex() -> impl Strategy<Value = Complex64> {
        let part = prop_oneof![Just(0.0), -1e6..1e6f64, any::<f64>().prop_filter("finite", |x| x.is_finite())];
        (part.clone(), part).prop_map(|(re, im)| c(re, im))
    }

    proptest! {
        #[test]
        fn dense_roundtrip(n in 1usize..5, seed in proptest::collection::vec(arb_complex(), 16)) {
            let data: Vec<_> = (0..n * n).map(|k| seed[k % seed.len()]).collect();
            let m = InputMatrix::dense(DenseOperator::from_row_major(n, data).unwrap()).unwrap();
            let mut buf = Vec::new();
            write_matrix(&mut buf, &m).unwrap();
            prop_assert_eq!(read_matrix(buf.as_slice()).unwrap(), m);
        }

        #[test]
        fn coo_and_terms_roundtrip(values in proptest::collection::vec(arb_complex(), 1..16)) {
            let entries: Vec<_> = values.iter().enumerate()
                .map(|(k, &value)| Triplet { row: k / 4, col: k % 4, value })
                .collect();
            let m = InputMatrix::sparse(4, entries).unwrap();
            let mut buf = Vec::new();
            write_matrix(&mut buf, &m).unwrap();
            prop_assert_eq!(read_matrix(buf.as_slice()).unwrap(), m);

            let terms = PauliTermList::new(
                QubitCount::new(2).unwrap(),
                values.iter().enumerate()
                    .map(|(k, &coefficient)| PauliTerm { index: crate::index::PauliIndex(k as u64), coefficient })
                    .collect(),
                0.0,
            ).unwrap();
            let mut buf = Vec::new();
            write_terms(&mut buf, &terms, &["note".to_string()]).unwrap();
            prop_assert_eq!(read_terms(buf.as_slice(), None).unwrap(), terms);
        }
    }
}
