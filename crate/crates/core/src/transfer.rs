//! The partial transpose of a graph-diagonal state, restricted to the diagonal.
//!
//! Transposing the qubits of one side maps each stabilizer element `g_S` to
//! `ε_S g_S` with `ε_S = (-1)^{#Y in g_S on that side}`. Graph-diagonal states
//! therefore stay graph-diagonal, and the new weights are `T λ` with
//! `T_{jk} = f(j ⊕ k)`, `f(v) = 2^{-n} Σ_S ε_S (-1)^{|v ∧ S|}`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::gf2;
use crate::graph::{Bipartition, Graph};
use crate::pauli::group_element;
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub struct TransferMatrix {
    graph: Graph,
    partition: Bipartition,
    kernel: Vec<Rational>,
    shifts: Vec<(usize, Rational)>,
    subspace: Vec<usize>,
    cosets: Vec<Vec<usize>>,
    cut_rank: usize,
}

impl TransferMatrix {
    pub fn new(g: &Graph, m: &Bipartition) -> Result<Self> {
        if m.n() != g.n() {
            return Err(Error::SizeMismatch(m.n(), g.n()));
        }
        let d = g.dim();
        let mut f: Vec<i64> = (0..d as u32)
            .map(|s| {
                let y = group_element(g, s).map(|p| p.count_y(m.mask()))?;
                Ok(if y % 2 == 0 { 1 } else { -1 })
            })
            .collect::<Result<_>>()?;
        walsh_hadamard(&mut f);
        let denom = rational::int(d as i64);
        let kernel: Vec<Rational> = f.iter().map(|&v| rational::int(v) / &denom).collect();
        let shifts: Vec<(usize, Rational)> = kernel
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(v, f)| (v, f.clone()))
            .collect();
        let basis = gf2::span_basis(shifts.iter().map(|(v, _)| *v as u64));
        let mut subspace: Vec<usize> =
            gf2::span_elements(&basis).into_iter().map(|v| v as usize).collect();
        subspace.sort_unstable();
        let mut seen = vec![false; d];
        let mut cosets = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let coset: Vec<usize> = subspace.iter().map(|&v| start ^ v).collect();
            for &k in &coset {
                seen[k] = true;
            }
            cosets.push(coset);
        }
        Ok(Self {
            graph: g.clone(),
            partition: *m,
            kernel,
            shifts,
            subspace,
            cosets,
            cut_rank: g.cut_rank(m)?,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn partition(&self) -> &Bipartition {
        &self.partition
    }

    pub fn cut_rank(&self) -> usize {
        self.cut_rank
    }

    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// `f(v)` for every shift `v`.
    pub fn kernel(&self) -> &[Rational] {
        &self.kernel
    }

    pub fn entry(&self, j: usize, k: usize) -> &Rational {
        &self.kernel[j ^ k]
    }

    /// Shifts with non-zero kernel value.
    pub fn shifts(&self) -> &[(usize, Rational)] {
        &self.shifts
    }

    /// The span of the shifts, sorted.
    pub fn subspace(&self) -> &[usize] {
        &self.subspace
    }

    /// Cosets `c ⊕ V` of the shift span `V`, each listed in the order of
    /// [`Self::subspace`]. `T` is block diagonal on them and every block
    /// equals [`Self::block_pattern`].
    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    /// `f(v_i ⊕ v_l)` over the shift span: the common block of every coset.
    pub fn block_pattern(&self) -> Vec<Vec<Rational>> {
        self.block(&self.subspace)
    }

    pub fn apply(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.dim() {
            return Err(Error::SizeMismatch(x.len(), self.dim()));
        }
        Ok((0..self.dim())
            .map(|j| {
                self.shifts.iter().fold(rational::zero(), |acc, (v, f)| {
                    let xk = &x[j ^ v];
                    if xk.is_zero() {
                        acc
                    } else {
                        acc + f * xk
                    }
                })
            })
            .collect())
    }

    /// `T` restricted to one coset, rows and columns in the coset's order.
    pub fn block(&self, coset: &[usize]) -> Vec<Vec<Rational>> {
        coset
            .iter()
            .map(|&j| coset.iter().map(|&k| self.entry(j, k).clone()).collect())
            .collect()
    }

    pub fn dense(&self) -> Vec<Vec<Rational>> {
        let all: Vec<usize> = (0..self.dim()).collect();
        self.block(&all)
    }

    /// Exact PPT test: `T λ ≥ 0` entrywise.
    pub fn is_ppt(&self, weights: &[Rational]) -> Result<bool> {
        Ok(self.apply(weights)?.iter().all(|v| !v.is_negative()))
    }
}

/// In-place unnormalized Walsh-Hadamard transform.
pub fn walsh_hadamard(a: &mut [i64]) {
    let mut h = 1;
    while h < a.len() {
        for i in (0..a.len()).step_by(2 * h) {
            for j in i..i + h {
                let (x, y) = (a[j], a[j + h]);
                a[j] = x + y;
                a[j + h] = x - y;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::BasisLabel;
    use crate::rational::rat;

    #[test]
    fn cut_rank_sets_block_size() {
        let c4 = Graph::builtin("C4").unwrap();
        for m in Bipartition::all(4) {
            let t = TransferMatrix::new(&c4, &m).unwrap();
            let r = t.cut_rank();
            assert!(t.cosets().iter().all(|c| c.len() == 1 << (2 * r)));
            assert_eq!(t.kernel()[0], rat(1, 1 << r));
        }
    }

    #[test]
    fn t_is_a_symmetric_involution() {
        let y5 = Graph::builtin("Y5").unwrap();
        for m in Bipartition::all(5) {
            let t = TransferMatrix::new(&y5, &m).unwrap();
            let dense = t.dense();
            for j in 0..32 {
                let col: Vec<Rational> = (0..32).map(|k| dense[k][j].clone()).collect();
                assert_eq!(rational::sum(&col), rational::one());
                let tt = t.apply(&col).unwrap();
                for (i, v) in tt.iter().enumerate() {
                    let expected = if i == j { rational::one() } else { rational::zero() };
                    assert_eq!(*v, expected);
                }
            }
        }
    }

    #[test]
    fn bell_pair_in_one_block_is_ppt() {
        let c4 = Graph::builtin("C4").unwrap();
        let ab = Bipartition::parse(4, "AB|CD").unwrap();
        let t = TransferMatrix::new(&c4, &ab).unwrap();
        let mut w = vec![rational::zero(); 16];
        w[BasisLabel::parse("++++").unwrap().index()] = rat(1, 2);
        w[BasisLabel::parse("+-++").unwrap().index()] = rat(1, 2);
        assert!(t.is_ppt(&w).unwrap());
        w[BasisLabel::parse("+-++").unwrap().index()] = rational::zero();
        w[0] = rational::one();
        assert!(!t.is_ppt(&w).unwrap());
    }

    #[test]
    fn walsh_hadamard_of_delta() {
        let mut a = vec![1, 0, 0, 0];
        walsh_hadamard(&mut a);
        assert_eq!(a, vec![1, 1, 1, 1]);
    }
}
