//! Graph-diagonal states `ρ = Σ_k λ_k |Γ_k⟩⟨Γ_k|` with exact weights.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{check_permutation, Graph};
use crate::label::BasisLabel;
use crate::pauli::{group_element, PauliString};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDiagonalState {
    graph: Graph,
    weights: Vec<Rational>,
}

impl GraphDiagonalState {
    /// A normalized state: weights are non-negative and sum to one.
    pub fn new(graph: Graph, weights: Vec<Rational>) -> Result<Self> {
        let s = Self::unnormalized(graph, weights)?;
        if s.total() != rational::one() {
            return Err(Error::InvalidState(format!(
                "weights sum to {}, not 1",
                s.total()
            )));
        }
        Ok(s)
    }

    /// Non-negative weights with arbitrary total, used for partial states
    /// during decompositions.
    pub fn unnormalized(graph: Graph, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != graph.dim() {
            return Err(Error::SizeMismatch(weights.len(), graph.dim()));
        }
        if let Some(k) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidState(format!(
                "negative weight {} on label {}",
                weights[k],
                BasisLabel::new(graph.n(), k as u32)?
            )));
        }
        Ok(Self { graph, weights })
    }

    /// Builds a normalized state from `(label, weight)` pairs; missing labels get zero.
    pub fn from_labels(graph: Graph, entries: &[(BasisLabel, Rational)]) -> Result<Self> {
        let mut weights = vec![rational::zero(); graph.dim()];
        for (label, w) in entries {
            if label.n() != graph.n() {
                return Err(Error::SizeMismatch(label.n(), graph.n()));
            }
            weights[label.index()] += w;
        }
        Self::new(graph, weights)
    }

    pub fn pure(graph: Graph, label: BasisLabel) -> Result<Self> {
        Self::from_labels(graph, &[(label, rational::one())])
    }

    pub fn maximally_mixed(graph: Graph) -> Self {
        let d = graph.dim() as i64;
        let weights = vec![rational::rat(1, d); graph.dim()];
        Self { graph, weights }
    }

    /// `p |G⟩⟨G| + (1 - p) I / 2^n` for `p ∈ [0, 1]`.
    pub fn white_noise(graph: Graph, p: &Rational) -> Result<Self> {
        if p.is_negative() || *p > rational::one() {
            return Err(Error::OutOfRange(format!("white-noise weight {p} not in [0, 1]")));
        }
        let noise = (rational::one() - p) / rational::int(graph.dim() as i64);
        let mut weights = vec![noise; graph.dim()];
        weights[0] += p;
        Ok(Self { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn dim(&self) -> usize {
        self.graph.dim()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<Rational> {
        self.weights
    }

    pub fn weight(&self, label: BasisLabel) -> &Rational {
        &self.weights[label.index()]
    }

    pub fn total(&self) -> Rational {
        rational::sum(&self.weights)
    }

    pub fn is_normalized(&self) -> bool {
        self.total() == rational::one()
    }

    /// Labels with non-zero weight, in index order.
    pub fn support(&self) -> Vec<BasisLabel> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(k, _)| BasisLabel::new(self.n(), k as u32).expect("index fits"))
            .collect()
    }

    /// Rescales to unit trace.
    pub fn normalized(&self) -> Result<Self> {
        let t = self.total();
        if t.is_zero() {
            return Err(Error::InvalidState("cannot normalize the zero state".into()));
        }
        Ok(Self {
            graph: self.graph.clone(),
            weights: self.weights.iter().map(|w| w / &t).collect(),
        })
    }

    /// Moves the weight of label `k` to `map[k]`, on graph `graph`.
    pub fn relabeled(&self, graph: Graph, map: &[usize]) -> Result<Self> {
        if graph.n() != self.n() || map.len() != self.dim() {
            return Err(Error::SizeMismatch(map.len(), self.dim()));
        }
        let mut weights = vec![rational::zero(); self.dim()];
        let mut seen = vec![false; self.dim()];
        for (k, w) in self.weights.iter().enumerate() {
            let t = map[k];
            if t >= self.dim() || seen[t] {
                return Err(Error::Precondition("label map is not a bijection".into()));
            }
            seen[t] = true;
            weights[t] = w.clone();
        }
        Ok(Self { graph, weights })
    }

    /// Applies `Z` on every qubit in `mask`, which flips those label signs.
    pub fn flip_signs(&self, mask: u32) -> Self {
        let full = (1u32 << self.n()) - 1;
        let map: Vec<usize> = (0..self.dim()).map(|k| k ^ (mask & full) as usize).collect();
        self.relabeled(self.graph.clone(), &map).expect("xor is a bijection")
    }

    /// Relabels qubit `i` as `perm[i]` in both the graph and the labels.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n())?;
        let graph = self.graph.permuted(perm)?;
        let map: Vec<usize> = (0..self.dim())
            .map(|k| permute_bits(k as u32, perm) as usize)
            .collect();
        self.relabeled(graph, &map)
    }

    /// Cyclic shift of the qubits by `shift` places; the graph must be invariant.
    pub fn translate(&self, shift: usize) -> Result<Self> {
        let n = self.n();
        let perm: Vec<usize> = (0..n).map(|q| (q + shift) % n).collect();
        let moved = self.permuted(&perm)?;
        if moved.graph != self.graph {
            return Err(Error::GraphMismatch(
                "graph is not invariant under the cyclic shift".into(),
            ));
        }
        Ok(moved)
    }

    /// The same operator written in the basis of the graph complemented at `a`.
    pub fn relabel_lc(&self, a: usize) -> Result<Self> {
        let graph = self.graph.local_complement(a)?;
        let map: Vec<usize> = BasisLabel::all(self.n())
            .map(|k| self.graph.label_transform_lc(a, k).map(|l| l.index()))
            .collect::<Result<_>>()?;
        self.relabeled(graph, &map)
    }

    pub fn scaled(&self, factor: &Rational) -> Result<Self> {
        Self::unnormalized(
            self.graph.clone(),
            self.weights.iter().map(|w| w * factor).collect(),
        )
    }
}

pub fn permute_bits(bits: u32, perm: &[usize]) -> u32 {
    perm.iter()
        .enumerate()
        .filter(|(q, _)| (bits >> q) & 1 == 1)
        .fold(0, |acc, (_, &p)| acc | (1 << p))
}

/// `|Γ_k⟩⟨Γ_k| = 2^{-n} Σ_S χ_k(S) g_S`, returned as `(χ_k(S) / 2^n, g_S)` pairs.
pub fn basis_projector(g: &Graph, label: BasisLabel) -> Result<Vec<(Rational, PauliString)>> {
    if label.n() != g.n() {
        return Err(Error::SizeMismatch(label.n(), g.n()));
    }
    let d = g.dim() as i64;
    (0..g.dim() as u32)
        .map(|s| {
            let chi = if (label.bits() & s).count_ones().is_multiple_of(2) { 1 } else { -1 };
            Ok((rational::rat(chi, d), group_element(g, s)?))
        })
        .collect()
}
