//! Star-graph (GHZ-diagonal) states: a single witness family decides.

use num_traits::Signed;

use super::canonical::{find_family_map, Family};
use super::pairs::{circle_pairs, Builder};
use super::{CertificateKind, Verdict};
use crate::error::{Error, Result};
use crate::label::BasisLabel;
use crate::rational;
use crate::state::GraphDiagonalState;
use crate::witness;

/// Genuinely multipartite entangled exactly when some weight exceeds 1/2.
/// Otherwise the weights split into equal-weight pairs of basis states, each
/// PPT and of rank two across a cut-rank-one bipartition.
pub fn ghz_diagonal_check(s: &GraphDiagonalState) -> Result<Verdict> {
    let g = s.graph();
    let map = find_family_map(g)?
        .filter(|m| matches!(m.family, Family::Star(_)))
        .ok_or_else(|| Error::GraphMismatch("not equivalent to a star graph".into()))?;
    if !map.is_identity() {
        let canonical = map.to_canonical(s)?;
        return map.verdict_from_canonical(ghz_diagonal_check(&canonical)?, s);
    }
    let (k, max) = s
        .weights()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .expect("nonempty state");
    let half = rational::rat(1, 2);
    if *max > half {
        let w = witness::ghz_witness(g, BasisLabel::new(g.n(), k as u32)?)?;
        let value = w.evaluate(s)?;
        debug_assert!(value.is_negative());
        return Ok(Verdict::Gme { witness: w, value });
    }
    let mut b = Builder::new(g)?;
    for (x, y, mass) in circle_pairs(s.weights())? {
        b.pair(x, y, &mass, CertificateKind::GhzMixture)?;
    }
    Ok(Verdict::Biseparable {
        decomposition: b.finish(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::verify_verdict;
    use crate::graph::Graph;
    use crate::rational::rat;

    fn state(g: &Graph, top: crate::rational::Rational) -> GraphDiagonalState {
        let rest = (rational::one() - &top) / rational::int(g.dim() as i64 - 1);
        let mut w = vec![rest; g.dim()];
        w[3] = top;
        GraphDiagonalState::new(g.clone(), w).unwrap()
    }

    #[test]
    fn half_is_the_boundary() {
        let g = Graph::builtin("GHZ4").unwrap();
        let at = state(&g, rat(1, 2));
        let v = ghz_diagonal_check(&at).unwrap();
        assert!(v.is_biseparable());
        verify_verdict(&v, &at).unwrap();
        let above = state(&g, rat(3, 5));
        let v = ghz_diagonal_check(&above).unwrap();
        assert!(v.is_gme());
        verify_verdict(&v, &above).unwrap();
    }

    #[test]
    fn complete_graph_goes_through_the_map() {
        let g = Graph::complete(3).unwrap();
        let s = GraphDiagonalState::maximally_mixed(g);
        let v = ghz_diagonal_check(&s).unwrap();
        verify_verdict(&v, &s).unwrap();
        assert!(ghz_diagonal_check(&GraphDiagonalState::maximally_mixed(Graph::path(4).unwrap())).is_err());
    }
}
