//! White-noise thresholds `p*`: the state `p |Γ_0⟩⟨Γ_0| + (1 - p) 1/D` is
//! biseparable for `p ≤ p*` and genuinely multipartite entangled above.
//!
//! Starting from a witness detecting the pure state, the root of its
//! expectation along the white-noise line is classified. A biseparable
//! verdict there makes the root the exact threshold; an entangled verdict
//! supplies a stronger witness with a larger root, and the search repeats.

use num_traits::Signed;

use crate::classifier::c6::{c6_bound_values, c6_graph};
use crate::classifier::{classify, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};
use crate::state::GraphDiagonalState;
use crate::witness::{self, DiagonalWitness};

const MAX_ROUNDS: usize = 64;

#[derive(Clone, Debug)]
pub struct ThresholdReport {
    /// Exact threshold when both sides are certified at the same point.
    pub exact: Option<Rational>,
    /// Largest `p` with a certified biseparable verdict.
    pub lower: Rational,
    /// Entanglement is certified for every `p` above this value.
    pub upper: Rational,
    /// Witness whose white-noise root is `upper`.
    pub witness: Option<DiagonalWitness>,
    /// Witnesses tried before the search settled.
    pub rounds: usize,
}

pub fn white_noise_verdict(g: &Graph, p: &Rational) -> Result<Verdict> {
    classify(&GraphDiagonalState::white_noise(g.clone(), p)?)
}

pub fn white_noise_threshold(g: &Graph) -> Result<ThresholdReport> {
    if *g == c6_graph() {
        let (lower, upper) = c6_bound_values();
        return Ok(ThresholdReport {
            exact: None,
            lower,
            upper,
            witness: None,
            rounds: 0,
        });
    }
    let mut w = match white_noise_verdict(g, &rational::one())? {
        Verdict::Gme { witness, .. } => witness,
        _ => {
            return Err(Error::UnsupportedGraph(
                "the pure graph state is not certified as genuinely multipartite entangled".into(),
            ))
        }
    };
    for round in 1..=MAX_ROUNDS {
        let root = witness::white_noise_root(&w).ok_or_else(|| {
            Error::Certificate("witness does not decrease along the white-noise line".into())
        })?;
        match white_noise_verdict(g, &root)? {
            Verdict::Biseparable { .. } => {
                return Ok(ThresholdReport {
                    exact: Some(root.clone()),
                    lower: root.clone(),
                    upper: root,
                    witness: Some(w),
                    rounds: round,
                })
            }
            Verdict::Gme { witness: next, .. } => {
                let next_root = witness::white_noise_root(&next).ok_or_else(|| {
                    Error::Certificate("witness does not decrease along the white-noise line".into())
                })?;
                if !(&next_root - &root).is_positive() {
                    return Err(Error::Certificate("threshold search made no progress".into()));
                }
                w = next;
            }
            Verdict::Inconclusive { .. } => {
                return Ok(ThresholdReport {
                    exact: None,
                    lower: rational::zero(),
                    upper: root,
                    witness: Some(w),
                    rounds: round,
                })
            }
        }
    }
    Err(Error::Certificate(format!(
        "threshold search did not settle within {MAX_ROUNDS} witnesses"
    )))
}

/// Verdict labels at the given points.
pub fn sweep(g: &Graph, points: &[Rational]) -> Result<Vec<(Rational, &'static str)>> {
    points
        .iter()
        .map(|p| Ok((p.clone(), white_noise_verdict(g, p)?.label())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn named_thresholds() {
        for (name, expected) in [("C4", rat(5, 13)), ("Y5", rat(9, 25)), ("C5", rat(9, 25)), ("R5", rat(7, 19)), ("GHZ3", rat(3, 7))] {
            let r = white_noise_threshold(&Graph::builtin(name).unwrap()).unwrap();
            assert_eq!(r.exact, Some(expected), "{name}");
        }
    }

    #[test]
    fn six_qubit_path_reports_bounds() {
        let r = white_noise_threshold(&Graph::builtin("C6").unwrap()).unwrap();
        assert_eq!((r.lower, r.upper, r.exact), (rat(11, 43), rat(51, 179), None));
    }
}
