//! Diagonal entanglement witnesses `W = Σ_k w_k |Γ_k⟩⟨Γ_k|`.
//!
//! A witness is valid when `Tr(W σ) ≥ 0` for every biseparable `σ`. Here that
//! is certified per bipartition `M` by a decomposition `w = p + T^(M) q` with
//! `p, q ≥ 0`, i.e. `W = P + Q^{T_M}` with `P, Q ⪰ 0` diagonal. Both parts are
//! non-negative on states with a positive partial transpose across `M`, and so
//! on every state separable across `M`.

use num_traits::Signed;

use crate::dense;
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::label::BasisLabel;
use crate::rational::{self, int, rat, Rational};
use crate::simplex::{self, LinearProgram, LpOutcome};
use crate::state::GraphDiagonalState;
use crate::transfer::TransferMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalWitness {
    graph: Graph,
    coeffs: Vec<Rational>,
    name: String,
}

impl DiagonalWitness {
    pub fn new(graph: Graph, coeffs: Vec<Rational>, name: impl Into<String>) -> Result<Self> {
        if coeffs.len() != graph.dim() {
            return Err(Error::SizeMismatch(coeffs.len(), graph.dim()));
        }
        Ok(Self {
            graph,
            coeffs,
            name: name.into(),
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, label: BasisLabel) -> &Rational {
        &self.coeffs[label.index()]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// `Tr(W ρ) = Σ_k w_k λ_k`.
    pub fn evaluate(&self, state: &GraphDiagonalState) -> Result<Rational> {
        if state.graph() != &self.graph {
            return Err(Error::GraphMismatch(
                "witness and state live on different graphs".into(),
            ));
        }
        Ok(rational::dot(&self.coeffs, state.weights()))
    }

    /// Moves the coefficient of label `k` to `map[k]`, on graph `graph`.
    pub fn relabeled(&self, graph: Graph, map: &[usize]) -> Result<Self> {
        if map.len() != self.coeffs.len() || graph.dim() != self.coeffs.len() {
            return Err(Error::SizeMismatch(map.len(), self.coeffs.len()));
        }
        let mut coeffs = vec![rational::zero(); self.coeffs.len()];
        for (k, w) in self.coeffs.iter().enumerate() {
            coeffs[map[k]] = w.clone();
        }
        Self::new(graph, coeffs, self.name.clone())
    }

    /// Conjugation by `Z` on the qubits in `mask`.
    pub fn flip_signs(&self, mask: u32) -> Self {
        let full = (1u32 << self.graph.n()) - 1;
        let map: Vec<usize> = (0..self.coeffs.len())
            .map(|k| k ^ (mask & full) as usize)
            .collect();
        self.relabeled(self.graph.clone(), &map)
            .expect("xor is a bijection")
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self {
            graph: self.graph.clone(),
            coeffs: self.coeffs.iter().map(|w| w * factor).collect(),
            name: self.name.clone(),
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

fn require_graph(g: &Graph, expected: &str) -> Result<()> {
    if *g != Graph::builtin(expected)? {
        return Err(Error::GraphMismatch(format!("witness requires the {expected} graph")));
    }
    Ok(())
}

const A: u32 = 0b0001;
const D: u32 = 0b1000;

/// `1/2 - |Γ_k⟩⟨Γ_k| - 1/2 Σ_{l opposite k} |Γ_l⟩⟨Γ_l|` on the four-qubit path,
/// where the opposite labels differ from `k` in both end qubits.
pub fn w1_witness(g: &Graph, anchor: BasisLabel) -> Result<DiagonalWitness> {
    require_graph(g, "C4")?;
    let k = anchor.bits();
    let coeffs = (0..16u32)
        .map(|l| {
            if l == k {
                rat(-1, 2)
            } else if (l ^ k) & (A | D) == A | D {
                int(0)
            } else {
                rat(1, 2)
            }
        })
        .collect();
    DiagonalWitness::new(g.clone(), coeffs, format!("W1({anchor})"))
}

/// `1/2 - |Γ_k⟩⟨Γ_k| - |Γ_o⟩⟨Γ_o|` on the four-qubit path, where `o` differs
/// from `k` in both end qubits.
pub fn w2_witness(g: &Graph, anchor: BasisLabel, partner: BasisLabel) -> Result<DiagonalWitness> {
    require_graph(g, "C4")?;
    let (k, o) = (anchor.bits(), partner.bits());
    if (k ^ o) & (A | D) != A | D {
        return Err(Error::Precondition(format!(
            "{partner} must differ from {anchor} on both end qubits"
        )));
    }
    let coeffs = (0..16u32)
        .map(|l| if l == k || l == o { rat(-1, 2) } else { rat(1, 2) })
        .collect();
    DiagonalWitness::new(g.clone(), coeffs, format!("W2({anchor},{partner})"))
}

/// Every witness used by the complete four-qubit criterion: 16 of the first
/// kind followed by 64 of the second, in label order.
pub fn c4_witness_family(g: &Graph) -> Result<Vec<DiagonalWitness>> {
    let mut out = Vec::with_capacity(80);
    for k in BasisLabel::all(4) {
        out.push(w1_witness(g, k)?);
    }
    for k in BasisLabel::all(4) {
        for mid in 0..4u32 {
            let o = ((k.bits() ^ (A | D)) & (A | D)) | (mid << 1);
            out.push(w2_witness(g, k, BasisLabel::new(4, o)?)?);
        }
    }
    Ok(out)
}

/// Five-qubit witness for the `Y` graph, zero on white noise at `p = 9/25`.
pub fn y5_witness(g: &Graph) -> Result<DiagonalWitness> {
    require_graph(g, "Y5")?;
    let coeffs = (0..32u32)
        .map(|l| {
            let a1 = l & 1 == 1;
            let tail = (l >> 3) & 0b11 != 0;
            if l == 0 {
                rat(-1, 2)
            } else if a1 && tail {
                int(0)
            } else {
                rat(1, 2)
            }
        })
        .collect();
    DiagonalWitness::new(g.clone(), coeffs, "W_Y5")
}

/// Five-qubit witness for the path, zero on white noise at `p = 9/25`.
pub fn c5_witness(g: &Graph) -> Result<DiagonalWitness> {
    require_graph(g, "C5")?;
    let coeffs = (0..32u32)
        .map(|l| {
            let m = |q: u32| (l >> q) & 1 == 1;
            let mut w = rat(1, 2);
            if l == 0 {
                w -= int(1);
            }
            if m(0) && m(4) {
                w -= rat(1, 2);
            }
            if !m(0) && m(1) && m(4) {
                w -= rat(1, 4);
            }
            if m(0) && m(3) && !m(4) {
                w -= rat(1, 4);
            }
            w
        })
        .collect();
    DiagonalWitness::new(g.clone(), coeffs, "W_C5")
}

fn cyclic_orbit(pattern: &str) -> Vec<u32> {
    let base = BasisLabel::parse(pattern).expect("valid pattern").bits();
    let n = pattern.len() as u32;
    let full = (1u32 << n) - 1;
    let mut out: Vec<u32> = (0..n)
        .map(|s| ((base << s) | (base >> (n - s))) & full)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Five-qubit ring witness with the integer coefficients as usually printed;
/// zero on white noise at `p = 7/19`.
pub fn r5_witness(g: &Graph) -> Result<DiagonalWitness> {
    require_graph(g, "R5")?;
    let mut coeffs = vec![int(0); 32];
    for (pattern, w) in [
        ("++++-", 3),
        ("++-+-", 3),
        ("++---", 3),
        ("+++--", 1),
        ("+-+--", 1),
        ("+----", 1),
        ("-----", -1),
        ("+++++", -3),
    ] {
        for l in cyclic_orbit(pattern) {
            coeffs[l as usize] = int(w);
        }
    }
    DiagonalWitness::new(g.clone(), coeffs, "W_R5")
}

/// [`r5_witness`] rescaled so that its expectation on the maximally mixed state is 1.
pub fn r5_witness_rescaled(g: &Graph) -> Result<DiagonalWitness> {
    Ok(r5_witness(g)?
        .scaled(&rat(4, 7))
        .with_name("W_R5/rescaled"))
}

/// `1/2 - |Γ_k⟩⟨Γ_k|` on a star graph.
pub fn ghz_witness(g: &Graph, anchor: BasisLabel) -> Result<DiagonalWitness> {
    if star_center(g).is_none() {
        return Err(Error::GraphMismatch("witness requires a star graph".into()));
    }
    if anchor.n() != g.n() {
        return Err(Error::SizeMismatch(anchor.n(), g.n()));
    }
    let coeffs = (0..g.dim())
        .map(|l| {
            if l == anchor.index() {
                rat(-1, 2)
            } else {
                rat(1, 2)
            }
        })
        .collect();
    DiagonalWitness::new(g.clone(), coeffs, format!("W_GHZ({anchor})"))
}

/// Centre of a star graph on at least two qubits.
pub fn star_center(g: &Graph) -> Option<usize> {
    let n = g.n();
    if n < 2 || g.edges().len() != n - 1 {
        return None;
    }
    (0..n).find(|&c| g.degree(c) == n - 1)
}

/// How one bipartition was certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionCheck {
    /// `T w ≥ 0`, so `w = T (T w)`.
    TransposeNonnegative,
    /// `w ≥ 0` already.
    Nonnegative,
    /// `w = p + T q` with the stated `q ≥ 0`, found by linear programming.
    Decomposed { q: Vec<Rational> },
    /// No decomposition exists.
    Failed,
}

#[derive(Clone, Debug)]
pub struct WitnessValidation {
    pub checks: Vec<(Bipartition, PartitionCheck)>,
}

impl WitnessValidation {
    pub fn is_valid(&self) -> bool {
        self.checks
            .iter()
            .all(|(_, c)| *c != PartitionCheck::Failed)
    }

    pub fn failures(&self) -> Vec<Bipartition> {
        self.checks
            .iter()
            .filter(|(_, c)| *c == PartitionCheck::Failed)
            .map(|(m, _)| *m)
            .collect()
    }

    /// Whether every bipartition passed the plain `T w ≥ 0` test.
    pub fn is_transpose_nonnegative(&self) -> bool {
        self.checks
            .iter()
            .all(|(_, c)| *c == PartitionCheck::TransposeNonnegative)
    }
}

/// Certifies `w = p + T^(M) q` with `p, q ≥ 0` for one bipartition.
pub fn check_partition(w: &DiagonalWitness, t: &TransferMatrix) -> Result<PartitionCheck> {
    if t.graph() != w.graph() {
        return Err(Error::GraphMismatch("transfer matrix for another graph".into()));
    }
    let coeffs = w.coeffs();
    if t.apply(coeffs)?.iter().all(|v| !v.is_negative()) {
        return Ok(PartitionCheck::TransposeNonnegative);
    }
    if coeffs.iter().all(|v| !v.is_negative()) {
        return Ok(PartitionCheck::Nonnegative);
    }
    let mut q = vec![rational::zero(); coeffs.len()];
    for coset in t.cosets() {
        let local: Vec<Rational> = coset.iter().map(|&k| coeffs[k].clone()).collect();
        if local.iter().all(|v| !v.is_negative()) {
            continue;
        }
        match decompose_block(&t.block(coset), &local)? {
            Some(x) => {
                for (&k, v) in coset.iter().zip(x) {
                    q[k] = v;
                }
            }
            None => return Ok(PartitionCheck::Failed),
        }
    }
    Ok(PartitionCheck::Decomposed { q })
}

/// Finds `q ≥ 0` with `T q ≤ w` on one block, if one exists.
fn decompose_block(t: &[Vec<Rational>], w: &[Rational]) -> Result<Option<Vec<Rational>>> {
    let m = w.len();
    let a: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = t[i].clone();
            row.extend((0..m).map(|j| if i == j { rational::one() } else { rational::zero() }));
            row
        })
        .collect();
    let lp = LinearProgram {
        a,
        b: w.to_vec(),
        c: vec![rational::zero(); 2 * m],
    };
    Ok(match simplex::solve_warm(&lp)? {
        LpOutcome::Optimal { x, .. } => Some(x[..m].to_vec()),
        _ => None,
    })
}

/// Checks every bipartition of the witness's graph.
pub fn validate_witness(w: &DiagonalWitness) -> Result<WitnessValidation> {
    validate_witness_on(w, &Bipartition::all(w.graph().n()))
}

pub fn validate_witness_on(
    w: &DiagonalWitness,
    partitions: &[Bipartition],
) -> Result<WitnessValidation> {
    let checks = partitions
        .iter()
        .map(|m| {
            let t = TransferMatrix::new(w.graph(), m)?;
            Ok((*m, check_partition(w, &t)?))
        })
        .collect::<Result<_>>()?;
    Ok(WitnessValidation { checks })
}

/// Dense re-check of one certified bipartition: the operator
/// `W - Q^{T_M}` must be positive semidefinite. Returns its least eigenvalue.
pub fn dense_partition_residual(
    w: &DiagonalWitness,
    m: &Bipartition,
    check: &PartitionCheck,
) -> Result<f64> {
    let g = w.graph();
    let coeffs: Vec<f64> = w.coeffs().iter().map(rational::to_f64).collect();
    let wd = dense::diagonal_to_dense(g, &coeffs)?;
    let q: Vec<f64> = match check {
        PartitionCheck::TransposeNonnegative => {
            let t = TransferMatrix::new(g, m)?;
            t.apply(w.coeffs())?.iter().map(rational::to_f64).collect()
        }
        PartitionCheck::Nonnegative => vec![0.0; g.dim()],
        PartitionCheck::Decomposed { q } => q.iter().map(rational::to_f64).collect(),
        PartitionCheck::Failed => {
            return Err(Error::Certificate(format!("no decomposition across {m}")))
        }
    };
    if q.iter().any(|v| *v < 0.0) {
        return Err(Error::Certificate("negative q".into()));
    }
    let qt = dense::partial_transpose(&dense::diagonal_to_dense(g, &q)?, m)?;
    let mut residual = wd;
    residual.add_scaled(&qt, -1.0);
    dense::min_eigenvalue(&residual)
}

/// Least value of `p` with `Tr(W ρ(p)) ≤ 0` on white-noise states, if the
/// expectation decreases in `p`.
pub fn white_noise_root(w: &DiagonalWitness) -> Option<Rational> {
    let d = int(w.graph().dim() as i64);
    let mean = rational::sum(w.coeffs()) / d;
    let slope = &w.coeffs()[0] - &mean;
    if !slope.is_negative() {
        return None;
    }
    Some(-mean / slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn white_noise_roots() {
        let c4 = Graph::builtin("C4").unwrap();
        let w1 = w1_witness(&c4, BasisLabel::zero(4)).unwrap();
        assert_eq!(white_noise_root(&w1), Some(rat(5, 13)));
        let y5 = Graph::builtin("Y5").unwrap();
        assert_eq!(white_noise_root(&y5_witness(&y5).unwrap()), Some(rat(9, 25)));
        let c5 = Graph::builtin("C5").unwrap();
        assert_eq!(white_noise_root(&c5_witness(&c5).unwrap()), Some(rat(9, 25)));
        let r5 = Graph::builtin("R5").unwrap();
        assert_eq!(white_noise_root(&r5_witness(&r5).unwrap()), Some(rat(7, 19)));
    }

    #[test]
    fn rescaled_ring_witness_has_unit_mean() {
        let r5 = Graph::builtin("R5").unwrap();
        let w = r5_witness_rescaled(&r5).unwrap();
        let mm = GraphDiagonalState::maximally_mixed(r5);
        assert_eq!(w.evaluate(&mm).unwrap(), rational::one());
    }

    #[test]
    fn wrong_graph_is_rejected() {
        let c5 = Graph::builtin("C5").unwrap();
        assert!(w1_witness(&c5, BasisLabel::zero(5)).is_err());
        assert!(y5_witness(&c5).is_err());
        let c4 = Graph::builtin("C4").unwrap();
        assert!(ghz_witness(&c4, BasisLabel::zero(4)).is_err());
        let same_block = BasisLabel::parse("+-++").unwrap();
        assert!(w2_witness(&c4, BasisLabel::zero(4), same_block).is_err());
    }

    #[test]
    fn family_has_eighty_members() {
        let c4 = Graph::builtin("C4").unwrap();
        assert_eq!(c4_witness_family(&c4).unwrap().len(), 80);
    }

    #[test]
    fn negative_projector_is_not_a_witness() {
        let c4 = Graph::builtin("C4").unwrap();
        let mut coeffs = vec![int(0); 16];
        coeffs[0] = int(-1);
        let w = DiagonalWitness::new(c4, coeffs, "bad").unwrap();
        assert!(!validate_witness(&w).unwrap().is_valid());
    }
}
