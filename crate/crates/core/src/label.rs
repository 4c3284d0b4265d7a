//! Labels of graph-basis states.
//!
//! The label `a_1 ... a_n` with signs `a_i = ±1` names the common eigenvector
//! of the stabilizer generators with eigenvalues `a_i`. Bit `i` of the packed
//! index is set when qubit `i` (0-based) carries the sign `-`.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::MAX_QUBITS;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel {
    bits: u32,
    n: u8,
}

impl BasisLabel {
    pub fn new(n: usize, bits: u32) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        if bits >> n != 0 {
            return Err(Error::OutOfRange(format!(
                "label index {bits} does not fit {n} qubits"
            )));
        }
        Ok(Self { bits, n: n as u8 })
    }

    /// The all-plus label, i.e. the graph state itself.
    pub fn zero(n: usize) -> Self {
        Self { bits: 0, n: n as u8 }
    }

    /// Builds a label from signs `+1`/`-1`, one per qubit.
    pub fn from_signs(signs: &[i8]) -> Result<Self> {
        let mut bits = 0;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => {}
                -1 => bits |= 1 << i,
                _ => return Err(Error::Parse(format!("sign {s} is not ±1"))),
            }
        }
        Self::new(signs.len(), bits)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let signs: Vec<i8> = text
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '−' => Ok(-1),
                _ => Err(Error::Parse(format!("bad label {text:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::from_signs(&signs)
    }

    pub fn index(self) -> usize {
        self.bits as usize
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn n(self) -> usize {
        self.n as usize
    }

    pub fn sign(self, qubit: usize) -> i8 {
        if self.is_minus(qubit) {
            -1
        } else {
            1
        }
    }

    pub fn is_minus(self, qubit: usize) -> bool {
        (self.bits >> qubit) & 1 == 1
    }

    /// Flips the signs on every qubit set in `mask`.
    pub fn flip(self, mask: u32) -> Self {
        Self {
            bits: self.bits ^ (mask & ((1 << self.n) - 1)),
            n: self.n,
        }
    }

    pub fn all(n: usize) -> impl Iterator<Item = BasisLabel> {
        (0..1u32 << n).map(move |bits| BasisLabel { bits, n: n as u8 })
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n() {
            f.write_str(if self.is_minus(i) { "-" } else { "+" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_display_roundtrip() {
        let l = BasisLabel::parse("+-+-").unwrap();
        assert_eq!(l.index(), 0b1010);
        assert_eq!(l.to_string(), "+-+-");
        assert_eq!(l.sign(1), -1);
        assert_eq!(l.sign(0), 1);
        assert!(BasisLabel::parse("+x").is_err());
        assert!(BasisLabel::new(3, 8).is_err());
    }

    #[test]
    fn flip_respects_width() {
        let l = BasisLabel::zero(3).flip(0b1111);
        assert_eq!(l.index(), 0b111);
    }
}
