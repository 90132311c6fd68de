//! Crumb-packed coordinate indices.
//!
//! A coordinate index `r` packs one two-bit crumb per qubit. Crumb `q`
//! occupies bits `2q+1` (row bit `i_q`) and `2q` (column bit `j_q`), so the
//! crumb value is `2 * i_q + j_q` and also names the single-qubit Pauli
//! factor on qubit `q`: 0 = I, 1 = X, 2 = Y, 3 = Z. Reading all high bits
//! gives the row index, all low bits the column index.

use std::fmt;

use crate::error::{Error, Result};

/// Largest register a 64-bit index can address.
pub const MAX_QUBITS: u32 = 32;

const LOW_BITS: u64 = 0x5555_5555_5555_5555;

/// Number of qubits `Q` in the register. The matrix side is `N = 2^Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitCount(u32);

impl QubitCount {
    pub fn new(qubits: u32) -> Result<Self> {
        if qubits == 0 || qubits > MAX_QUBITS {
            return Err(Error::domain(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {qubits}"
            )));
        }
        Ok(QubitCount(qubits))
    }

    /// Smallest register holding an `n`-dimensional space, never fewer than one qubit.
    pub fn for_dimension(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("matrix dimension must be at least 1"));
        }
        let bits = usize::BITS - (n - 1).leading_zeros();
        QubitCount::new(bits.max(1))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Matrix side `N = 2^Q`.
    #[inline]
    pub fn dim(self) -> usize {
        1usize << self.0
    }

    /// Number of coordinates `N^2 = 4^Q`.
    #[inline]
    pub fn coordinate_count(self) -> usize {
        1usize << (2 * self.0)
    }

    fn mask(self) -> u64 {
        if self.0 == MAX_QUBITS {
            u64::MAX
        } else {
            (1u64 << (2 * self.0)) - 1
        }
    }
}

impl fmt::Display for QubitCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Packed coordinate index, one crumb per qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PauliIndex(pub u64);

impl PauliIndex {
    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    /// Crumb value on qubit `q`.
    #[inline]
    pub fn crumb(self, q: u32) -> u8 {
        ((self.0 >> (2 * q)) & 3) as u8
    }

    /// Flips both bits of crumb `q`, mapping crumb `c` to `3 - c`.
    #[inline]
    pub fn partner(self, q: u32) -> PauliIndex {
        PauliIndex(self.0 ^ (3u64 << (2 * q)))
    }

    /// `(-1)^{i_q}`: `+1` for crumbs 0 and 1, `-1` for crumbs 2 and 3.
    #[inline]
    pub fn self_sign(self, q: u32) -> i8 {
        if (self.0 >> (2 * q + 1)) & 1 == 0 {
            1
        } else {
            -1
        }
    }

    /// Number of crumbs equal to `0b10` (Y factors).
    #[inline]
    pub fn count_y(self) -> u32 {
        ((self.0 >> 1) & !self.0 & LOW_BITS).count_ones()
    }

    /// True when every crumb is 0 or 3, i.e. the index sits on the matrix diagonal.
    #[inline]
    pub fn is_diagonal(self) -> bool {
        ((self.0 >> 1) ^ self.0) & LOW_BITS == 0
    }

    /// Splits into `(row, column)` without a range check.
    #[inline]
    pub fn split(self) -> (u64, u64) {
        (compact(self.0 >> 1), compact(self.0))
    }

    /// Interleaves `row` into the odd bits and `column` into the even bits.
    #[inline]
    pub fn join(row: u64, column: u64) -> PauliIndex {
        PauliIndex((spread(row) << 1) | spread(column))
    }
}

// Morton spread of the low 32 bits into the even bit positions.
#[inline]
fn spread(x: u64) -> u64 {
    let mut x = x & 0xFFFF_FFFF;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & LOW_BITS;
    x
}

#[inline]
fn compact(x: u64) -> u64 {
    let mut x = x & LOW_BITS;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x
}

fn check_index(r: PauliIndex, qubits: QubitCount) -> Result<()> {
    if r.0 & !qubits.mask() != 0 {
        return Err(Error::domain(format!(
            "index {} out of range for {qubits} qubits",
            r.0
        )));
    }
    Ok(())
}

fn check_qubit(q: u32, qubits: QubitCount) -> Result<()> {
    if q >= qubits.get() {
        return Err(Error::domain(format!(
            "qubit position {q} out of range for {qubits} qubits"
        )));
    }
    Ok(())
}

/// Maps the matrix position `(i, j)` to its coordinate index.
pub fn interlace(i: u64, j: u64, qubits: QubitCount) -> Result<PauliIndex> {
    let n = qubits.dim() as u64;
    if i >= n || j >= n {
        return Err(Error::domain(format!(
            "matrix position ({i}, {j}) out of range for dimension {n}"
        )));
    }
    Ok(PauliIndex::join(i, j))
}

/// Inverse of [`interlace`].
pub fn deinterlace(r: PauliIndex, qubits: QubitCount) -> Result<(u64, u64)> {
    check_index(r, qubits)?;
    Ok(r.split())
}

pub fn partner(r: PauliIndex, q: u32, qubits: QubitCount) -> Result<PauliIndex> {
    check_index(r, qubits)?;
    check_qubit(q, qubits)?;
    Ok(r.partner(q))
}

pub fn count_y_crumbs(r: PauliIndex, qubits: QubitCount) -> Result<u32> {
    check_index(r, qubits)?;
    Ok(r.count_y())
}

pub fn self_sign(r: PauliIndex, q: u32, qubits: QubitCount) -> Result<i8> {
    check_qubit(q, qubits)?;
    Ok(r.self_sign(q))
}

const LETTERS: [char; 4] = ['I', 'X', 'Y', 'Z'];

/// Pauli label of `r`, highest qubit first (`"YZX"` for crumbs `(1, 3, 2)` low to high).
pub fn pauli_label(r: PauliIndex, qubits: QubitCount) -> Result<String> {
    check_index(r, qubits)?;
    Ok((0..qubits.get())
        .rev()
        .map(|q| LETTERS[r.crumb(q) as usize])
        .collect())
}

/// Parses a label over `{I, X, Y, Z}` back into an index and its qubit count.
pub fn parse_label(label: &str) -> Result<(PauliIndex, QubitCount)> {
    let qubits = QubitCount::new(label.chars().count() as u32)
        .map_err(|_| Error::domain(format!("label {label:?} has invalid length")))?;
    let mut r = 0u64;
    for c in label.chars() {
        let crumb = match c {
            'I' => 0,
            'X' => 1,
            'Y' => 2,
            'Z' => 3,
            other => {
                return Err(Error::domain(format!(
                    "invalid Pauli letter {other:?} in label {label:?}"
                )))
            }
        };
        r = (r << 2) | crumb;
    }
    Ok((PauliIndex(r), qubits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: u32) -> QubitCount {
        QubitCount::new(n).unwrap()
    }

    #[test]
    fn qubit_count_for_dimension() {
        assert_eq!(QubitCount::for_dimension(1).unwrap().get(), 1);
        assert_eq!(QubitCount::for_dimension(2).unwrap().get(), 1);
        assert_eq!(QubitCount::for_dimension(3).unwrap().get(), 2);
        assert_eq!(QubitCount::for_dimension(15).unwrap().get(), 4);
        assert_eq!(QubitCount::for_dimension(16).unwrap().get(), 4);
        assert_eq!(QubitCount::for_dimension(17).unwrap().get(), 5);
        assert!(QubitCount::for_dimension(0).is_err());
        assert!(QubitCount::new(0).is_err());
        assert!(QubitCount::new(33).is_err());
    }

    #[test]
    fn interlace_examples() {
        let r = interlace(6, 3, q(3)).unwrap();
        assert_eq!(r.get(), 0b101101);
        assert_eq!(r.get(), 45);
        assert_eq!((r.crumb(2), r.crumb(1), r.crumb(0)), (2, 3, 1));
        assert_eq!(interlace(0, 0, q(5)).unwrap().get(), 0);
        assert_eq!(interlace(1, 0, q(1)).unwrap().get(), 2);
        assert_eq!(interlace(0, 1, q(1)).unwrap().get(), 1);
        assert!(interlace(8, 0, q(3)).is_err());
        assert!(interlace(0, 2, q(1)).is_err());
    }

    #[test]
    fn deinterlace_examples() {
        assert_eq!(deinterlace(PauliIndex(45), q(3)).unwrap(), (6, 3));
        assert_eq!(deinterlace(PauliIndex(0), q(2)).unwrap(), (0, 0));
        assert_eq!(deinterlace(PauliIndex(3), q(1)).unwrap(), (1, 1));
        assert!(deinterlace(PauliIndex(4), q(1)).is_err());
    }

    #[test]
    fn partner_examples() {
        assert_eq!(partner(PauliIndex(45), 1, q(3)).unwrap().get(), 0b100001);
        assert_eq!(partner(PauliIndex(0), 0, q(1)).unwrap().get(), 3);
        assert_eq!(partner(PauliIndex(2), 0, q(1)).unwrap().get(), 1);
        assert!(partner(PauliIndex(0), 1, q(1)).is_err());
    }

    #[test]
    fn y_count_examples() {
        assert_eq!(count_y_crumbs(PauliIndex(45), q(3)).unwrap(), 1);
        assert_eq!(count_y_crumbs(PauliIndex(0), q(4)).unwrap(), 0);
        assert_eq!(count_y_crumbs(PauliIndex(0b1010), q(2)).unwrap(), 2);
        assert_eq!(count_y_crumbs(PauliIndex(0b1111), q(2)).unwrap(), 0);
    }

    #[test]
    fn sign_truth_table() {
        // crumb -> (self sign, partner crumb)
        let table = [(0u64, 1i8, 3u8), (1, 1, 2), (2, -1, 1), (3, -1, 0)];
        for (crumb, sign, partner_crumb) in table {
            for qpos in 0..3u32 {
                let r = PauliIndex(crumb << (2 * qpos) | 0b01_00_00_00);
                assert_eq!(self_sign(r, qpos, q(4)).unwrap(), sign);
                assert_eq!(r.partner(qpos).crumb(qpos), partner_crumb);
                // exactly one member of each pair carries the minus sign
                assert_eq!(r.self_sign(qpos) * r.partner(qpos).self_sign(qpos), -1);
            }
        }
    }

    #[test]
    fn label_examples() {
        assert_eq!(pauli_label(PauliIndex(45), q(3)).unwrap(), "YZX");
        assert_eq!(pauli_label(PauliIndex(0), q(2)).unwrap(), "II");
        assert_eq!(pauli_label(PauliIndex(3), q(1)).unwrap(), "Z");
        assert_eq!(parse_label("YZX").unwrap(), (PauliIndex(45), q(3)));
        assert!(parse_label("XA").is_err());
        assert!(parse_label("").is_err());
    }

    #[test]
    fn full_width_register() {
        let top = QubitCount::new(MAX_QUBITS).unwrap();
        let r = interlace(u32::MAX as u64, 0, top).unwrap();
        assert_eq!(r.get(), 0xAAAA_AAAA_AAAA_AAAA);
        assert_eq!(deinterlace(r, top).unwrap(), (u32::MAX as u64, 0));
    }

    proptest! {
        #[test]
        fn interlace_roundtrip(qubits in 1u32..=16, i in any::<u64>(), j in any::<u64>()) {
            let qc = q(qubits);
            let n = qc.dim() as u64;
            let (i, j) = (i % n, j % n);
            let r = interlace(i, j, qc).unwrap();
            prop_assert!(r.get() < qc.coordinate_count() as u64);
            prop_assert_eq!(deinterlace(r, qc).unwrap(), (i, j));
            for qpos in 0..qubits {
                let expected = 2 * ((i >> qpos) & 1) + ((j >> qpos) & 1);
                prop_assert_eq!(r.crumb(qpos) as u64, expected);
            }
            prop_assert_eq!(r.is_diagonal(), i == j);
        }

        #[test]
        fn partner_is_local_involution(qubits in 1u32..=16, raw in any::<u64>(), qpos in 0u32..16) {
            let qc = q(qubits);
            let qpos = qpos % qubits;
            let r = PauliIndex(raw & qc.mask());
            let p = partner(r, qpos, qc).unwrap();
            prop_assert_eq!(p.partner(qpos), r);
            prop_assert_eq!(p.crumb(qpos), 3 - r.crumb(qpos));
            for other in (0..qubits).filter(|&o| o != qpos) {
                prop_assert_eq!(p.crumb(other), r.crumb(other));
            }
        }

        #[test]
        fn label_roundtrip(qubits in 1u32..=16, raw in any::<u64>()) {
            let qc = q(qubits);
            let r = PauliIndex(raw & qc.mask());
            let label = pauli_label(r, qc).unwrap();
            let ys = label.chars().filter(|&c| c == 'Y').count() as u32;
            prop_assert_eq!(ys, r.count_y());
            prop_assert_eq!(parse_label(&label).unwrap(), (r, qc));
        }
    }
}
