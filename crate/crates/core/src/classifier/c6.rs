//! Bounds for the six-qubit path mixed with white noise.

use num_traits::Signed;

use super::five_qubit::{c5_remainder, scale_with_noise, white_noise_parameter};
use super::pairs::{excluded_partners, Builder};
use super::{CertificateKind, Decomposition, Verdict};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::ppt_mixture::{self, LpCertificate};
use crate::rational::{self, rat, Rational};
use crate::state::GraphDiagonalState;

pub fn c6_graph() -> Graph {
    Graph::path(6).expect("valid graph")
}

/// Biseparable up to the first value, genuinely multipartite entangled above
/// the second.
pub fn c6_bound_values() -> (Rational, Rational) {
    (rat(11, 43), rat(51, 179))
}

/// The bounds together with a decomposition of the white-noise state at the
/// lower one.
pub fn c6_bounds() -> Result<(Rational, Rational, Decomposition)> {
    let (lower, upper) = c6_bound_values();
    Ok((lower, upper, lower_decomposition()?))
}

/// At the lower bound the state is `23|Γ_0⟩ + Σ_{k≠0} |Γ_k⟩` up to
/// normalization. Partners of the all-plus label outside the 44 excluded
/// ones pair with it; the excluded labels with last sign `+` form the
/// five-qubit path remainder, and those with last sign `-` match into pairs.
fn lower_decomposition() -> Result<Decomposition> {
    let g = c6_graph();
    let excluded = excluded_partners(&g)?;
    if excluded.len() != 44 {
        return Err(Error::Certificate(format!(
            "expected 44 excluded partners, found {}",
            excluded.len()
        )));
    }
    let mut b = Builder::new(&g)?;
    let one = rational::one();
    let two = rational::int(2);
    for l in (1..g.dim()).filter(|l| !excluded.contains(l)) {
        b.pair(0, l, &two, CertificateKind::Explicit)?;
    }
    c5_remainder(&mut b, 6, &one)?;
    let last_minus: Vec<usize> = excluded.iter().copied().filter(|l| l >> 5 == 1).collect();
    b.match_labels(&last_minus, &one, CertificateKind::Explicit)?;
    let mut d = b.finish();
    d.scale(&(one / rational::int(23 + 63)));
    Ok(d)
}

pub fn recognise_white_noise(s: &GraphDiagonalState) -> Result<Option<Rational>> {
    if *s.graph() != c6_graph() {
        return Ok(None);
    }
    Ok(white_noise_parameter(s))
}

/// Biseparable at or below the lower bound; otherwise the PPT-mixture
/// program either yields a witness or leaves the point undecided.
pub fn classify_c6_white_noise(p: &Rational) -> Result<Verdict> {
    if p.is_negative() || *p > rational::one() {
        return Err(Error::OutOfRange(format!("p = {p} is outside [0, 1]")));
    }
    let g = c6_graph();
    let (lower, upper) = c6_bound_values();
    if *p <= lower {
        return Ok(Verdict::Biseparable {
            decomposition: scale_with_noise(&g, lower_decomposition()?, p, &lower)?,
        });
    }
    let s = GraphDiagonalState::white_noise(g.clone(), p)?;
    match ppt_mixture::is_ppt_mixture(&s, None)? {
        LpCertificate::Infeasible(f) => {
            let witness = ppt_mixture::dual_witness(&f, &g)?;
            let value = witness.evaluate(&s)?;
            Ok(Verdict::Gme { witness, value })
        }
        LpCertificate::Feasible(dec) => Ok(Verdict::Inconclusive {
            reason: format!("between the bounds {lower} and {upper}"),
            ppt_mixture: Some(dec),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::verify_decomposition;

    #[test]
    fn lower_bound_decomposition_verifies() {
        let (lower, upper, d) = c6_bounds().unwrap();
        assert_eq!(lower, rat(11, 43));
        assert_eq!(upper, rat(51, 179));
        let s = GraphDiagonalState::white_noise(c6_graph(), &lower).unwrap();
        let report = verify_decomposition(&d, &s);
        assert!(report.is_valid(), "{:?}", report.problems);
    }
}
