//! Pauli strings with exact phases, and the stabilizer group of a graph state.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_QUBITS};

/// `i^phase` times a tensor product of `I, X, Y, Z`.
///
/// Qubit `q` carries `X` when bit `q` of `x` is set, `Z` when bit `q` of `z`
/// is set, and `Y` when both are.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u8,
    x: u32,
    z: u32,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        Self {
            n: n as u8,
            x: 0,
            z: 0,
            phase: 0,
        }
    }

    pub fn new(n: usize, x: u32, z: u32, phase: u8) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        if (x | z) >> n != 0 {
            return Err(Error::OutOfRange(format!("Pauli masks exceed {n} qubits")));
        }
        Ok(Self {
            n: n as u8,
            x,
            z,
            phase: phase % 4,
        })
    }

    /// Parses strings such as `"XZ11"`, `"-YIZ"` or `"iXY"`; `1` and `I` both mean identity.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let (phase, body) = if let Some(rest) = text.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = text.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = text.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = text.strip_prefix('-') {
            (2, rest)
        } else {
            (0, text.strip_prefix('+').unwrap_or(text))
        };
        let (mut x, mut z) = (0u32, 0u32);
        let mut n = 0;
        for (q, c) in body.chars().enumerate() {
            match c {
                'I' | '1' => {}
                'X' => x |= 1 << q,
                'Z' => z |= 1 << q,
                'Y' => {
                    x |= 1 << q;
                    z |= 1 << q;
                }
                _ => return Err(Error::Parse(format!("bad Pauli string {text:?}"))),
            }
            n = q + 1;
        }
        Self::new(n, x, z, phase)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_mask(&self) -> u32 {
        self.x
    }

    pub fn z_mask(&self) -> u32 {
        self.z
    }

    /// Exponent `p` of the global phase `i^p`.
    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// `+1` or `-1` for Hermitian strings, `None` for phases `±i`.
    pub fn sign(&self) -> Option<i8> {
        match self.phase {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }

    /// Letter on qubit `q`: one of `I, X, Y, Z`.
    pub fn letter(&self, q: usize) -> char {
        match ((self.x >> q) & 1, (self.z >> q) & 1) {
            (0, 0) => 'I',
            (1, 0) => 'X',
            (0, 1) => 'Z',
            _ => 'Y',
        }
    }

    /// Number of `Y` factors on the qubits in `mask`.
    pub fn count_y(&self, mask: u32) -> u32 {
        (self.x & self.z & mask).count_ones()
    }

    pub fn multiply(&self, other: &PauliString) -> Result<PauliString> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n(), other.n()));
        }
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let phase = self.phase as u32
            + other.phase as u32
            + (self.x & self.z).count_ones()
            + (other.x & other.z).count_ones()
            + 2 * (self.z & other.x).count_ones()
            + 4 * MAX_QUBITS as u32
            - (x & z).count_ones();
        Ok(PauliString {
            n: self.n,
            x,
            z,
            phase: (phase % 4) as u8,
        })
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["", "i", "-", "-i"][self.phase as usize])?;
        for q in 0..self.n() {
            let c = self.letter(q);
            write!(f, "{}", if c == 'I' { '1' } else { c })?;
        }
        Ok(())
    }
}

/// The generator `K_q = X_q Z_{N(q)}` of the graph-state stabilizer.
pub fn stabilizer_generator(g: &Graph, q: usize) -> Result<PauliString> {
    g.check_qubit(q)?;
    PauliString::new(g.n(), 1 << q, g.neighbours(q), 0)
}

/// The stabilizer element `∏_{q ∈ subset} K_q`, multiplied in increasing qubit order.
pub fn group_element(g: &Graph, subset: u32) -> Result<PauliString> {
    if subset >> g.n() != 0 {
        return Err(Error::OutOfRange(format!(
            "subset {subset:#b} exceeds {} qubits",
            g.n()
        )));
    }
    let mut acc = PauliString::identity(g.n());
    for q in 0..g.n() {
        if (subset >> q) & 1 == 1 {
            acc = acc.multiply(&stabilizer_generator(g, q)?)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_generators() {
        let c4 = Graph::builtin("C4").unwrap();
        let gens: Vec<String> = (0..4)
            .map(|q| stabilizer_generator(&c4, q).unwrap().to_string())
            .collect();
        assert_eq!(gens, ["XZ11", "ZXZ1", "1ZXZ", "11ZX"]);
        assert!(stabilizer_generator(&c4, 4).is_err());
    }

    #[test]
    fn single_qubit_products() {
        let x = PauliString::parse("X").unwrap();
        let y = PauliString::parse("Y").unwrap();
        let z = PauliString::parse("Z").unwrap();
        assert_eq!(x.multiply(&y).unwrap(), PauliString::parse("iZ").unwrap());
        assert_eq!(y.multiply(&z).unwrap(), PauliString::parse("iX").unwrap());
        assert_eq!(z.multiply(&x).unwrap(), PauliString::parse("iY").unwrap());
        assert_eq!(x.multiply(&z).unwrap(), PauliString::parse("-iY").unwrap());
        assert_eq!(y.multiply(&y).unwrap(), PauliString::identity(1));
    }

    #[test]
    fn group_elements_are_hermitian_and_commute() {
        let c5 = Graph::builtin("C5").unwrap();
        let all: Vec<PauliString> = (0..32).map(|s| group_element(&c5, s).unwrap()).collect();
        for p in &all {
            assert!(p.sign().is_some());
            for q in &all {
                assert!(p.commutes_with(q));
            }
        }
        assert_eq!(group_element(&c5, 0b11).unwrap().to_string(), "YYZ11");
    }

    #[test]
    fn mismatched_sizes_error() {
        let a = PauliString::parse("XX").unwrap();
        let b = PauliString::parse("XXX").unwrap();
        assert!(a.multiply(&b).is_err());
    }
}
