use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::index::{parse_label, pauli_label, PauliIndex, QubitCount};

/// One Pauli string with its coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm {
    pub index: PauliIndex,
    pub coefficient: Complex64,
}

/// Pauli-string expansion of an operator, sorted by index.
///
/// Index order equals lexicographic label order, since labels list the
/// highest crumb first and `I < X < Y < Z` matches crumb values 0..=3.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTermList {
    qubits: QubitCount,
    terms: Vec<PauliTerm>,
    threshold: f64,
}

impl PauliTermList {
    /// Validates and sorts `terms`. Terms below `threshold` in modulus are dropped.
    pub fn new(qubits: QubitCount, mut terms: Vec<PauliTerm>, threshold: f64) -> Result<Self> {
        let limit = qubits.coordinate_count() as u64;
        if let Some(t) = terms.iter().find(|t| t.index.get() >= limit) {
            return Err(Error::domain(format!(
                "term index {} out of range for {qubits} qubits",
                t.index.get()
            )));
        }
        terms.sort_by_key(|t| t.index);
        if let Some(w) = terms.windows(2).find(|w| w[0].index == w[1].index) {
            return Err(Error::domain(format!(
                "duplicate term {}",
                pauli_label(w[0].index, qubits)?
            )));
        }
        if threshold > 0.0 {
            terms.retain(|t| t.coefficient.norm() >= threshold);
        }
        Ok(PauliTermList {
            qubits,
            terms,
            threshold,
        })
    }

    pub(crate) fn from_sorted_unchecked(
        qubits: QubitCount,
        terms: Vec<PauliTerm>,
        threshold: f64,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].index < w[1].index));
        PauliTermList {
            qubits,
            terms,
            threshold,
        }
    }

    /// Builds a list from `(label, coefficient)` pairs; all labels must share one length.
    pub fn from_labels<'a>(
        pairs: impl IntoIterator<Item = (&'a str, Complex64)>,
    ) -> Result<Self> {
        let mut qubits = None;
        let mut terms = Vec::new();
        for (label, coefficient) in pairs {
            let (index, q) = parse_label(label)?;
            match qubits {
                None => qubits = Some(q),
                Some(prev) if prev != q => {
                    return Err(Error::domain(format!(
                        "label {label:?} has {q} qubits, expected {prev}"
                    )))
                }
                _ => {}
            }
            terms.push(PauliTerm { index, coefficient });
        }
        let qubits = qubits.ok_or_else(|| Error::domain("empty term list has no qubit count"))?;
        Self::new(qubits, terms, 0.0)
    }

    pub fn empty(qubits: QubitCount) -> Self {
        PauliTermList {
            qubits,
            terms: Vec::new(),
            threshold: 0.0,
        }
    }

    pub fn qubits(&self) -> QubitCount {
        self.qubits
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = &PauliTerm> {
        self.terms.iter()
    }

    /// Coefficient of `index`, zero when absent.
    pub fn coefficient(&self, index: PauliIndex) -> Complex64 {
        self.terms
            .binary_search_by_key(&index, |t| t.index)
            .map(|k| self.terms[k].coefficient)
            .unwrap_or_default()
    }

    pub fn coefficient_of(&self, label: &str) -> Result<Complex64> {
        let (index, q) = parse_label(label)?;
        if q != self.qubits {
            return Err(Error::domain(format!(
                "label {label:?} does not match {} qubits",
                self.qubits
            )));
        }
        Ok(self.coefficient(index))
    }

    pub fn label(&self, term: &PauliTerm) -> String {
        pauli_label(term.index, self.qubits).expect("term indices are validated on construction")
    }

    /// All `4^Q` coefficients in index order.
    pub fn to_coefficients(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.qubits.coordinate_count()];
        for t in &self.terms {
            out[t.index.get() as usize] = t.coefficient;
        }
        out
    }
}

impl<'a> IntoIterator for &'a PauliTermList {
    type Item = &'a PauliTerm;
    type IntoIter = std::slice::Iter<'a, PauliTerm>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_by_label() {
        let one = Complex64::new(1.0, 0.0);
        let list = PauliTermList::from_labels([("ZI", one), ("XY", one), ("II", one)]).unwrap();
        let labels: Vec<_> = list.iter().map(|t| list.label(t)).collect();
        assert_eq!(labels, ["II", "XY", "ZI"]);
        assert_eq!(list.coefficient_of("XY").unwrap(), one);
        assert_eq!(list.coefficient_of("YY").unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn rejects_bad_input() {
        let one = Complex64::new(1.0, 0.0);
        assert!(PauliTermList::from_labels([("X", one), ("XX", one)]).is_err());
        assert!(PauliTermList::from_labels([("X", one), ("X", one)]).is_err());
        let q = QubitCount::new(1).unwrap();
        let bad = PauliTerm {
            index: PauliIndex(4),
            coefficient: one,
        };
        assert!(PauliTermList::new(q, vec![bad], 0.0).is_err());
    }

    #[test]
    fn threshold_drops_small_terms() {
        let q = QubitCount::new(1).unwrap();
        let terms = vec![
            PauliTerm { index: PauliIndex(0), coefficient: Complex64::new(1e-14, 0.0) },
            PauliTerm { index: PauliIndex(3), coefficient: Complex64::new(0.5, 0.0) },
        ];
        let list = PauliTermList::new(q, terms, 1e-12).unwrap();
        assert_eq!(list.len(), 1);
        assert_eq!(list.terms()[0].index, PauliIndex(3));
    }
}
