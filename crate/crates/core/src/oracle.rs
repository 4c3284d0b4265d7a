//! Cross-checks of the exact transfer matrices and witnesses against dense
//! linear algebra.

use num_traits::{One, Zero};

use crate::dense;
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, MAX_ORBIT_QUBITS};
use crate::label::BasisLabel;
use crate::rational::{self, Rational};
use crate::state::GraphDiagonalState;
use crate::transfer::TransferMatrix;
use crate::witness::{self, DiagonalWitness};

#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Adds a value to one transfer-matrix entry `(partition index, row,
    /// column)` before comparing, to exercise mismatch reporting.
    pub tamper: Option<(usize, usize, usize, f64)>,
    /// Skip the witness checks.
    pub skip_witnesses: bool,
}

#[derive(Clone, Debug)]
pub struct PartitionReport {
    pub partition: Bipartition,
    pub cut_rank: usize,
    pub schmidt_rank: usize,
    /// Symmetric, involutive, with unit column sums, exactly.
    pub invariants_hold: bool,
    /// Largest `|T_jk - ⟨Γ_j|(|Γ_k⟩⟨Γ_k|)^{T_M}|Γ_j⟩|`.
    pub max_deviation: f64,
    /// Largest off-diagonal graph-basis entry of any `(|Γ_k⟩⟨Γ_k|)^{T_M}`.
    pub max_off_diagonal: f64,
}

impl PartitionReport {
    pub fn rank_matches(&self) -> bool {
        1usize << self.cut_rank == self.schmidt_rank
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub name: String,
    pub valid: bool,
    /// Least eigenvalue of `W - Q^{T_M}` over the certified bipartitions.
    pub min_residual: f64,
}

#[derive(Clone, Debug)]
pub struct OracleReport {
    pub graph: Graph,
    pub partitions: Vec<PartitionReport>,
    pub witnesses: Vec<WitnessReport>,
}

impl OracleReport {
    pub fn max_deviation(&self) -> f64 {
        self.partitions
            .iter()
            .map(|p| p.max_deviation.max(p.max_off_diagonal))
            .fold(0.0, f64::max)
    }

    /// Every check passes, with dense deviations below `tol`.
    pub fn is_consistent(&self, tol: f64) -> bool {
        self.partitions
            .iter()
            .all(|p| p.invariants_hold && p.rank_matches())
            && self.max_deviation() < tol
            && self.witnesses.iter().all(|w| w.valid && w.min_residual > -tol)
    }
}

/// Exact invariants of a transfer matrix.
pub fn transfer_invariants_hold(t: &TransferMatrix) -> bool {
    let m = t.dense();
    let d = m.len();
    let symmetric = (0..d).all(|j| (0..d).all(|k| m[j][k] == m[k][j]));
    let column_sums = (0..d).all(|k| (0..d).map(|j| &m[j][k]).sum::<Rational>().is_one());
    let involution = (0..d).all(|j| {
        (0..d).all(|k| {
            let v: Rational = (0..d).map(|l| &m[j][l] * &m[l][k]).sum();
            if j == k {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    });
    symmetric && column_sums && involution
}

/// Witnesses from the catalogue that apply to `g`.
pub fn named_witnesses(g: &Graph) -> Result<Vec<DiagonalWitness>> {
    let mut out = Vec::new();
    if *g == Graph::builtin("C4")? {
        out.extend(witness::c4_witness_family(g)?);
    }
    if *g == Graph::builtin("Y5")? {
        out.push(witness::y5_witness(g)?);
    }
    if *g == Graph::builtin("C5")? {
        out.push(witness::c5_witness(g)?);
    }
    if *g == Graph::builtin("R5")? {
        out.push(witness::r5_witness(g)?);
    }
    if witness::star_center(g).is_some() {
        out.push(witness::ghz_witness(g, BasisLabel::zero(g.n()))?);
    }
    Ok(out)
}

/// Compares every transfer matrix of `g` with dense partial transposes of
/// the graph-basis projectors, and re-checks the applicable witnesses.
pub fn oracle_crosscheck(g: &Graph, options: &OracleOptions) -> Result<OracleReport> {
    if g.n() > MAX_ORBIT_QUBITS {
        return Err(Error::TooManyQubits {
            n: g.n(),
            max: MAX_ORBIT_QUBITS,
        });
    }
    let projectors: Vec<dense::DenseOperator> = BasisLabel::all(g.n())
        .map(|k| dense::state_to_dense(&GraphDiagonalState::pure(g.clone(), k)?))
        .collect::<Result<_>>()?;
    let mut partitions = Vec::new();
    for (idx, m) in Bipartition::all(g.n()).into_iter().enumerate() {
        let t = TransferMatrix::new(g, &m)?;
        let mut exact: Vec<Vec<f64>> = t
            .dense()
            .iter()
            .map(|row| row.iter().map(rational::to_f64).collect())
            .collect();
        if let Some((p, j, k, delta)) = options.tamper {
            if p == idx {
                exact[j][k] += delta;
            }
        }
        let mut max_deviation: f64 = 0.0;
        let mut max_off_diagonal: f64 = 0.0;
        for (k, proj) in projectors.iter().enumerate() {
            let pt = dense::in_graph_basis(&dense::partial_transpose(proj, &m)?, g)?;
            for j in 0..g.dim() {
                for l in 0..g.dim() {
                    let v = pt.get(j, l);
                    if j == l {
                        max_deviation = max_deviation
                            .max((v.re - exact[j][k]).abs())
                            .max(v.im.abs());
                    } else {
                        max_off_diagonal = max_off_diagonal.max(v.norm());
                    }
                }
            }
        }
        partitions.push(PartitionReport {
            partition: m,
            cut_rank: t.cut_rank(),
            schmidt_rank: dense::schmidt_rank(g, &m)?,
            invariants_hold: transfer_invariants_hold(&t),
            max_deviation,
            max_off_diagonal,
        });
    }
    let mut witnesses = Vec::new();
    if !options.skip_witnesses {
        for w in named_witnesses(g)? {
            let validation = witness::validate_witness(&w)?;
            let mut min_residual = f64::INFINITY;
            for (m, check) in &validation.checks {
                if let Ok(r) = witness::dense_partition_residual(&w, m, check) {
                    min_residual = min_residual.min(r);
                }
            }
            witnesses.push(WitnessReport {
                name: w.name().to_string(),
                valid: validation.is_valid(),
                min_residual,
            });
        }
    }
    Ok(OracleReport {
        graph: g.clone(),
        partitions,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c4_is_consistent() {
        let g = Graph::builtin("C4").unwrap();
        let r = oracle_crosscheck(&g, &OracleOptions::default()).unwrap();
        assert!(r.is_consistent(1e-10), "{:?}", r.max_deviation());
        assert_eq!(r.witnesses.len(), 80);
    }

    #[test]
    fn tampering_is_reported() {
        let g = Graph::builtin("GHZ3").unwrap();
        let options = OracleOptions {
            tamper: Some((1, 0, 0, 1e-3)),
            skip_witnesses: true,
        };
        let r = oracle_crosscheck(&g, &options).unwrap();
        assert!(!r.is_consistent(1e-10));
        assert!(r.partitions[1].max_deviation >= 1e-3 - 1e-12);
    }

    #[test]
    fn seven_qubits_are_rejected() {
        let g = Graph::path(7).unwrap();
        assert!(matches!(
            oracle_crosscheck(&g, &OracleOptions::default()),
            Err(Error::TooManyQubits { .. })
        ));
    }
}
