use std::fmt;

use crate::error::{Error, Result};

/// A partial map of the chain `1 < 2 < ... < m`, acting on the right:
/// `i(ab) = (ia)b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialTransformation {
    // image[i - 1] is the image of i
    image: Vec<Option<u8>>,
}

impl PartialTransformation {
    /// From 1-based images; `None` marks a point outside the domain.
    pub fn new(image: Vec<Option<usize>>) -> Result<Self> {
        let m = image.len();
        if m == 0 || m > u8::MAX as usize {
            return Err(Error::OutOfRange {
                what: "degree",
                value: m,
            });
        }
        let image = image
            .into_iter()
            .map(|v| match v {
                Some(j) if (1..=m).contains(&j) => Ok(Some(j as u8)),
                Some(j) => Err(Error::OutOfRange {
                    what: "image point",
                    value: j,
                }),
                None => Ok(None),
            })
            .collect::<Result<_>>()?;
        Ok(PartialTransformation { image })
    }

    /// From `(i, iα)` pairs, 1-based.
    pub fn from_pairs(degree: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut image = vec![None; degree];
        for &(i, j) in pairs {
            if !(1..=degree).contains(&i) {
                return Err(Error::OutOfRange {
                    what: "domain point",
                    value: i,
                });
            }
            image[i - 1] = Some(j);
        }
        Self::new(image)
    }

    pub fn identity(degree: usize) -> Self {
        PartialTransformation {
            image: (1..=degree as u8).map(Some).collect(),
        }
    }

    pub fn empty(degree: usize) -> Self {
        PartialTransformation {
            image: vec![None; degree],
        }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of the 1-based point `i`.
    pub fn apply(&self, i: usize) -> Option<usize> {
        self.image[i - 1].map(usize::from)
    }

    /// 1-based images in order.
    pub fn images(&self) -> impl Iterator<Item = Option<usize>> + '_ {
        self.image.iter().map(|v| v.map(usize::from))
    }

    pub fn domain_size(&self) -> usize {
        self.image.iter().flatten().count()
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Self) -> Self {
        let image = self
            .image
            .iter()
            .map(|v| v.and_then(|j| other.image[j as usize - 1]))
            .collect();
        PartialTransformation { image }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.degree() + 1];
        self.image.iter().flatten().all(|&j| {
            let fresh = !seen[j as usize];
            seen[j as usize] = true;
            fresh
        })
    }

    /// `i <= j` implies `iα <= jα` on the domain.
    pub fn is_order_preserving(&self) -> bool {
        let defined: Vec<u8> = self.image.iter().flatten().copied().collect();
        defined.windows(2).all(|w| w[0] <= w[1])
    }

    /// `i <= iα` on the domain.
    pub fn is_extensive(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, v)| v.is_none_or(|j| i < j as usize))
    }
}

/// Compact label: one symbol per point, `-` where undefined, e.g. `2-4-`.
/// Points above 9 are written in brackets.
impl fmt::Display for PartialTransformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.image {
            match v {
                None => f.write_str("-")?,
                Some(j) if *j < 10 => write!(f, "{j}")?,
                Some(j) => write!(f, "[{j}]")?,
            }
        }
        Ok(())
    }
}
