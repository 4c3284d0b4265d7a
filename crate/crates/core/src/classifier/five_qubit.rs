//! White-noise thresholds of the five-qubit `Y`, path and ring graph states,
//! with explicit decompositions at and below each threshold.

use std::fmt;

use num_traits::Signed;

use super::pairs::{excluded_partners, Builder};
use super::{CertificateKind, Decomposition, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::label::BasisLabel;
use crate::rational::{self, rat, Rational};
use crate::state::GraphDiagonalState;
use crate::witness::{self, DiagonalWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WhiteNoiseFamily {
    Y5,
    C5,
    R5,
}

impl WhiteNoiseFamily {
    pub const ALL: [WhiteNoiseFamily; 3] = [WhiteNoiseFamily::Y5, WhiteNoiseFamily::C5, WhiteNoiseFamily::R5];

    pub fn name(self) -> &'static str {
        match self {
            WhiteNoiseFamily::Y5 => "Y5",
            WhiteNoiseFamily::C5 => "C5",
            WhiteNoiseFamily::R5 => "R5",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| Error::UnsupportedGraph(format!("{name:?} is not one of Y5, C5, R5")))
    }

    pub fn graph(self) -> Graph {
        Graph::builtin(self.name()).expect("builtin graph")
    }

    /// Largest `p` at which the white-noise state is biseparable.
    pub fn threshold(self) -> Rational {
        match self {
            WhiteNoiseFamily::Y5 | WhiteNoiseFamily::C5 => rat(9, 25),
            WhiteNoiseFamily::R5 => rat(7, 19),
        }
    }

    /// Witness whose white-noise root is the threshold.
    pub fn witness(self) -> Result<DiagonalWitness> {
        let g = self.graph();
        match self {
            WhiteNoiseFamily::Y5 => witness::y5_witness(&g),
            WhiteNoiseFamily::C5 => witness::c5_witness(&g),
            WhiteNoiseFamily::R5 => witness::r5_witness(&g),
        }
    }
}

impl fmt::Display for WhiteNoiseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `p` when `s` is `p |Γ_0⟩⟨Γ_0| + (1 - p) 1/D` on its graph.
pub fn white_noise_parameter(s: &GraphDiagonalState) -> Option<Rational> {
    let w = s.weights();
    let rest = &w[1];
    if w[1..].iter().any(|x| x != rest) {
        return None;
    }
    let p = rational::one() - rest * rational::int(s.dim() as i64);
    (&p + rest == w[0]).then_some(p)
}

/// Recognises white-noise states of the three named five-qubit graphs.
pub fn recognise_white_noise(s: &GraphDiagonalState) -> Result<Option<(WhiteNoiseFamily, Rational)>> {
    if s.n() != 5 {
        return Ok(None);
    }
    for family in WhiteNoiseFamily::ALL {
        if *s.graph() == family.graph() {
            return Ok(white_noise_parameter(s).map(|p| (family, p)));
        }
    }
    Ok(None)
}

/// Exact verdict for `p |Γ_0⟩⟨Γ_0| + (1 - p) 1/32`.
pub fn classify_white_noise(family: WhiteNoiseFamily, p: &Rational) -> Result<Verdict> {
    if p.is_negative() || *p > rational::one() {
        return Err(Error::OutOfRange(format!("p = {p} is outside [0, 1]")));
    }
    let g = family.graph();
    let s = GraphDiagonalState::white_noise(g.clone(), p)?;
    let threshold = family.threshold();
    if *p > threshold {
        let w = family.witness()?;
        let value = w.evaluate(&s)?;
        return Ok(Verdict::Gme { witness: w, value });
    }
    let at = threshold_decomposition(family)?;
    Ok(Verdict::Biseparable {
        decomposition: scale_with_noise(&g, at, p, &threshold)?,
    })
}

/// Decomposition of the white-noise state at `p ≤ p*` from one at `p*`:
/// `ρ(p) = (p/p*) ρ(p*) + (1 - p/p*) 1/D`, with the identity matched into
/// separable pairs.
pub fn scale_with_noise(
    g: &Graph,
    mut at_threshold: Decomposition,
    p: &Rational,
    threshold: &Rational,
) -> Result<Decomposition> {
    let ratio = p / threshold;
    at_threshold.scale(&ratio);
    at_threshold.terms.retain(|t| t.weight.is_positive());
    let noise = rational::one() - &ratio;
    if noise.is_positive() {
        let mut b = Builder::new(g)?;
        let each = &noise / rational::int(g.dim() as i64);
        let labels: Vec<usize> = (0..g.dim()).collect();
        b.match_labels(&labels, &each, CertificateKind::Explicit)?;
        at_threshold.extend(b.finish());
    }
    Ok(at_threshold)
}

fn pattern_labels(patterns: &[&str]) -> Vec<usize> {
    let mut out: Vec<usize> = patterns
        .iter()
        .flat_map(|p| {
            let n = p.chars().count();
            let chars: Vec<char> = p.chars().collect();
            (0..1usize << n).filter(move |&k| {
                chars.iter().enumerate().all(|(q, c)| match c {
                    '+' => (k >> q) & 1 == 0,
                    '-' => (k >> q) & 1 == 1,
                    _ => true,
                })
            })
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

fn weights_of(dim: usize, labels: &[&str], w: &Rational) -> Vec<Rational> {
    let mut out = vec![rational::zero(); dim];
    for l in labels {
        out[BasisLabel::parse(l).expect("valid label").index()] = w.clone();
    }
    out
}

/// Pairs of the all-plus label with every partner outside `excluded`, each
/// carrying `mass_each` per label.
fn pairs_with_zero(b: &mut Builder, g: &Graph, excluded: &[usize], mass_each: &Rational) -> Result<()> {
    let mass = mass_each * rational::int(2);
    for l in (1..g.dim()).filter(|l| !excluded.contains(l)) {
        b.pair(0, l, &mass, CertificateKind::Explicit)?;
    }
    Ok(())
}

/// Decomposition of the white-noise state exactly at the threshold.
pub fn threshold_decomposition(family: WhiteNoiseFamily) -> Result<Decomposition> {
    let g = family.graph();
    let mut b = Builder::new(&g)?;
    let one = rational::one();
    let total = match family {
        WhiteNoiseFamily::Y5 => {
            let excluded = pattern_labels(&["-**-+", "-***-"]);
            pairs_with_zero(&mut b, &g, &excluded, &one)?;
            b.match_labels(&excluded, &one, CertificateKind::Explicit)?;
            rational::int(19 + 31)
        }
        WhiteNoiseFamily::C5 => {
            let excluded = pattern_labels(&["-**-+", "+-**-", "-***-"]);
            pairs_with_zero(&mut b, &g, &excluded, &one)?;
            c5_remainder(&mut b, 5, &one)?;
            rational::int(19 + 31)
        }
        WhiteNoiseFamily::R5 => {
            r5_threshold(&mut b)?;
            rational::int(59 + 3 * 31)
        }
    };
    let mut d = b.finish();
    d.scale(&(one / total));
    Ok(d)
}

/// The four rank-four states whose sum with two separable pairs is the
/// remainder `4|+++++⟩ + Σ|-ij-+⟩ + Σ|+-ij-⟩ + Σ|-ijk-⟩` on the path; extra
/// qubits beyond the fifth carry `+`.
pub(crate) fn c5_remainder(b: &mut Builder, n: usize, unit: &Rational) -> Result<()> {
    let pad = "+".repeat(n - 5);
    let etas: [([&str; 4], CertificateKind); 4] = [
        (["+++++", "+-++-", "-++-+", "--+--"], CertificateKind::SmolinBased),
        (["+++++", "+-+--", "--+-+", "-+++-"], CertificateKind::SmolinBased),
        (["+++++", "+--+-", "----+", "-++--"], CertificateKind::PptRank4),
        (["+++++", "+----", "-+--+", "--++-"], CertificateKind::PptRank4),
    ];
    let dim = 1usize << n;
    for (labels, kind) in etas {
        let padded: Vec<String> = labels.iter().map(|l| format!("{l}{pad}")).collect();
        let refs: Vec<&str> = padded.iter().map(String::as_str).collect();
        b.component(weights_of(dim, &refs, unit), kind)?;
    }
    let rest = pattern_labels(&[&format!("-*-*-{pad}")]);
    b.match_labels(&rest, unit, CertificateKind::Explicit)
}

fn rotate(label: usize, t: usize) -> usize {
    ((label << t) | (label >> (5 - t))) & 0b11111
}

fn r5_threshold(b: &mut Builder) -> Result<()> {
    let three = rational::int(3);
    for partner in ["++++-", "++-+-", "++---"] {
        let l = BasisLabel::parse(partner)?.index();
        for t in 0..5 {
            b.pair(0, rotate(l, t), &(&three * rational::int(2)), CertificateKind::Explicit)?;
        }
    }
    let etas: [([&str; 4], CertificateKind); 4] = [
        (["+++++", "+--++", "--+-+", "-+--+"], CertificateKind::SmolinBased),
        (["+++++", "--+++", "++--+", "----+"], CertificateKind::PptRank4),
        (["+++++", "--+++", "-+---", "+----"], CertificateKind::PptRank4),
        (["+++++", "--+-+", "+--+-", "-+---"], CertificateKind::PptRank4),
    ];
    let share = rat(14, 20);
    for (labels, kind) in etas {
        for t in 0..5 {
            let mut w = vec![rational::zero(); 32];
            for l in labels {
                w[rotate(BasisLabel::parse(l)?.index(), t)] = share.clone();
            }
            b.component(w, kind)?;
        }
    }
    let all_minus = 0b11111;
    let fifth = rat(1, 5);
    for pattern in ["+++--", "+-+--", "+----"] {
        let l = BasisLabel::parse(pattern)?.index();
        for t in 0..5 {
            b.pair(all_minus, rotate(l, t), &(&fifth * rational::int(2)), CertificateKind::Explicit)?;
        }
    }
    Ok(())
}

/// Labels whose equal mixture with the all-plus label is entangled across
/// every cut.
pub fn excluded_labels(family: WhiteNoiseFamily) -> Result<Vec<usize>> {
    excluded_partners(&family.graph())
}

/// Equal mixture of the four Bell-pair products with matching signs on the
/// graph with edges `A-B` and `A'-B'`; separable across `AA'|BB'`.
pub fn smolin_state() -> GraphDiagonalState {
    let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).expect("valid graph");
    let entries: Vec<(BasisLabel, Rational)> = (0..4u32)
        .map(|s| {
            let (s1, s2) = (s & 1, s >> 1);
            let bits = s1 | (s2 << 1) | (s1 << 2) | (s2 << 3);
            (BasisLabel::new(4, bits).expect("valid label"), rat(1, 4))
        })
        .collect();
    GraphDiagonalState::from_labels(g, &entries).expect("normalized")
}

/// The cut across which [`smolin_state`] is separable.
pub fn smolin_partition() -> Bipartition {
    Bipartition::from_qubits(4, &[0, 2]).expect("valid bipartition")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::verify_decomposition;

    #[test]
    fn excluded_label_counts() {
        assert_eq!(excluded_labels(WhiteNoiseFamily::Y5).unwrap(), pattern_labels(&["-**-+", "-***-"]));
        assert_eq!(
            excluded_labels(WhiteNoiseFamily::C5).unwrap(),
            pattern_labels(&["-**-+", "+-**-", "-***-"])
        );
        assert_eq!(excluded_labels(WhiteNoiseFamily::C5).unwrap().len(), 16);
    }

    #[test]
    fn threshold_decompositions_verify() {
        for family in WhiteNoiseFamily::ALL {
            let s = GraphDiagonalState::white_noise(family.graph(), &family.threshold()).unwrap();
            let d = threshold_decomposition(family).unwrap();
            let report = verify_decomposition(&d, &s);
            assert!(report.is_valid(), "{family}: {:?}", report.problems);
        }
    }

    #[test]
    fn below_threshold_and_above() {
        let v = classify_white_noise(WhiteNoiseFamily::C5, &rat(37, 100)).unwrap();
        assert!(v.is_gme());
        let p = rat(1, 5);
        let v = classify_white_noise(WhiteNoiseFamily::R5, &p).unwrap();
        let s = GraphDiagonalState::white_noise(WhiteNoiseFamily::R5.graph(), &p).unwrap();
        match v {
            Verdict::Biseparable { decomposition } => {
                assert!(verify_decomposition(&decomposition, &s).is_valid())
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn smolin_state_is_rank_four_and_ppt() {
        let s = smolin_state();
        assert!(s.is_normalized());
        assert_eq!(s.support().len(), 4);
        let rho = crate::dense::state_to_dense(&s).unwrap();
        assert_eq!(crate::dense::rank(&rho, 1e-9).unwrap(), 4);
        assert!(crate::dense::is_ppt(&s, &smolin_partition(), 1e-10).unwrap());
    }
}
