use std::fmt;

use crate::error::{Error, Result};

/// Largest supported dimension: rows are packed one byte each into a `u64`.
pub const MAX_DIMENSION: usize = 8;

/// An `n × n` matrix over the two-element field, `n <= 8`.
///
/// Row `i` occupies byte `i` of `bits`; column `j` is bit `j` of that byte.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    n: u8,
    bits: u64,
}

impl BinaryMatrix {
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIMENSION).contains(&n));
        BinaryMatrix {
            n: n as u8,
            bits: 0,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Matrix unit with a single 1 at the 1-based position `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.set(i - 1, j - 1, true);
        m
    }

    /// From rows of 0/1 entries.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if !(1..=MAX_DIMENSION).contains(&n) {
            return Err(Error::OutOfRange {
                what: "matrix dimension",
                value: n,
            });
        }
        let mut m = Self::zero(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::OutOfRange {
                    what: "matrix row length",
                    value: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => m.set(i, j, true),
                    _ => {
                        return Err(Error::OutOfRange {
                            what: "matrix entry",
                            value: v as usize,
                        })
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn dimension(&self) -> usize {
        self.n as usize
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits >> (8 * i + j) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let bit = 1u64 << (8 * i + j);
        if value {
            self.bits |= bit;
        } else {
            self.bits &= !bit;
        }
    }

    fn row(&self, i: usize) -> u64 {
        self.bits >> (8 * i) & 0xff
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.dimension())
            .map(|i| {
                (0..self.dimension())
                    .map(|j| self.get(i, j) as u8)
                    .collect()
            })
            .collect()
    }

    /// Product over GF(2): row `i` of `AB` is the XOR of the rows `j` of `B`
    /// with `a_ij = 1`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut bits = 0;
        for i in 0..self.dimension() {
            let mut row = 0;
            for j in 0..self.dimension() {
                if self.get(i, j) {
                    row ^= other.row(j);
                }
            }
            bits |= row << (8 * i);
        }
        BinaryMatrix { n: self.n, bits }
    }

    /// Whether computing `self * other` never adds two 1s in one position.
    pub fn product_without_cancellation(&self, other: &Self) -> bool {
        (0..self.dimension()).all(|i| {
            let mut seen = 0;
            (0..self.dimension()).filter(|&j| self.get(i, j)).all(|j| {
                let clash = seen & other.row(j) != 0;
                seen |= other.row(j);
                !clash
            })
        })
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.dimension()).all(|i| (0..i).all(|j| !self.get(i, j)))
    }

    /// Each row has at most one 1.
    pub fn is_row_monomial(&self) -> bool {
        (0..self.dimension()).all(|i| self.row(i).count_ones() <= 1)
    }
}

/// Rows of digits separated by `/`, e.g. `10/01`.
impl fmt::Display for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dimension() {
            if i > 0 {
                f.write_str("/")?;
            }
            for j in 0..self.dimension() {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}
