//! Complete decision procedures with certificates.

pub mod c4;
pub mod c6;
pub mod canonical;
pub mod five_qubit;
pub mod ghz;
pub mod pairs;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::dense;
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, MAX_ORBIT_QUBITS};
use crate::ppt_mixture::{self, LpCertificate, PptDecomposition};
use crate::rational::{self, Rational};
use crate::state::GraphDiagonalState;
use crate::transfer::TransferMatrix;
use crate::witness::{self, DiagonalWitness};

pub use c4::{bell_mixture_separable, decompose_c4, lemma2_separable_pair, theorem3_check};
pub use c6::c6_bounds;
pub use five_qubit::{classify_white_noise, smolin_state, WhiteNoiseFamily};
pub use ghz::ghz_diagonal_check;

/// Why a component is separable across its bipartition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    /// Equal mixture of two basis states of the four-qubit path.
    PairLemma2,
    /// Mixture inside one Bell-like block whose largest weight is at most
    /// the sum of the others.
    BellMixture,
    /// Equal mixture of two basis states of a star graph.
    GhzMixture,
    /// Rank-four state built from the two-pair Smolin state.
    SmolinBased,
    /// PPT state of rank at most four.
    PptRank4,
    /// Any PPT component; separability follows from cut rank one or from
    /// its rank not exceeding a local rank.
    Explicit,
}

impl CertificateKind {
    pub fn name(self) -> &'static str {
        match self {
            CertificateKind::PairLemma2 => "PairLemma2",
            CertificateKind::BellMixture => "BellMixture",
            CertificateKind::GhzMixture => "GhzMixture",
            CertificateKind::SmolinBased => "SmolinBased",
            CertificateKind::PptRank4 => "PptRank4",
            CertificateKind::Explicit => "Explicit",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "PairLemma2" => CertificateKind::PairLemma2,
            "BellMixture" => CertificateKind::BellMixture,
            "GhzMixture" => CertificateKind::GhzMixture,
            "SmolinBased" => CertificateKind::SmolinBased,
            "PptRank4" => CertificateKind::PptRank4,
            "Explicit" => CertificateKind::Explicit,
            _ => return Err(Error::Parse(format!("unknown certificate kind {name:?}"))),
        })
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ComponentCertificate {
    pub kind: CertificateKind,
    pub partition: Bipartition,
}

/// `weight · component`, with the component normalized.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub weight: Rational,
    pub component: GraphDiagonalState,
    pub certificate: ComponentCertificate,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct Decomposition {
    pub terms: Vec<Term>,
}

impl Decomposition {
    /// Adds `weights` (not necessarily normalized) as one term, skipping zero mass.
    pub fn push_unnormalized(
        &mut self,
        graph: &Graph,
        weights: Vec<Rational>,
        certificate: ComponentCertificate,
    ) -> Result<()> {
        let weight = rational::sum(&weights);
        if weight.is_zero() {
            return Ok(());
        }
        let component = GraphDiagonalState::unnormalized(graph.clone(), weights)?.normalized()?;
        self.terms.push(Term {
            weight,
            component,
            certificate,
        });
        Ok(())
    }

    /// `Σ weight · component`.
    pub fn reassemble(&self, dim: usize) -> Vec<Rational> {
        let mut total = vec![rational::zero(); dim];
        for t in &self.terms {
            for (acc, w) in total.iter_mut().zip(t.component.weights()) {
                if !w.is_zero() {
                    *acc += &t.weight * w;
                }
            }
        }
        total
    }

    /// Multiplies every weight by `factor`.
    pub fn scale(&mut self, factor: &Rational) {
        for t in &mut self.terms {
            t.weight *= factor;
        }
    }

    pub fn extend(&mut self, other: Decomposition) {
        self.terms.extend(other.terms);
    }

    /// Total weight, which is one for a decomposition of a normalized state.
    pub fn total_weight(&self) -> Rational {
        self.terms.iter().map(|t| t.weight.clone()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty() || self.total_weight().is_zero()
    }

    pub fn has_unit_weight(&self) -> bool {
        self.total_weight().is_one()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// Genuinely multipartite entangled, certified by `witness` with `value < 0`.
    Gme {
        witness: DiagonalWitness,
        value: Rational,
    },
    Biseparable {
        decomposition: Decomposition,
    },
    Inconclusive {
        reason: String,
        ppt_mixture: Option<PptDecomposition>,
    },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Gme { .. } => "GME",
            Verdict::Biseparable { .. } => "BISEPARABLE",
            Verdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }

    pub fn is_gme(&self) -> bool {
        matches!(self, Verdict::Gme { .. })
    }

    pub fn is_biseparable(&self) -> bool {
        matches!(self, Verdict::Biseparable { .. })
    }
}

/// Outcome of [`verify_decomposition`]; `problems` is empty exactly when valid.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub problems: Vec<String>,
    /// Least dense eigenvalue of any component's partial transpose.
    pub min_dense_eigenvalue: Option<f64>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

/// Dense-oracle tolerance for partial-transpose eigenvalues.
pub const DENSE_TOLERANCE: f64 = 1e-10;

/// Exact reassembly plus per-component certificate checks. Dense checks run
/// when the register has at most six qubits.
pub fn verify_decomposition(d: &Decomposition, s: &GraphDiagonalState) -> VerificationReport {
    let mut report = VerificationReport::default();
    let g = s.graph();
    for (i, t) in d.terms.iter().enumerate() {
        if !t.weight.is_positive() {
            report.problems.push(format!("term {i}: weight {} is not positive", t.weight));
        }
        if t.component.graph() != g {
            report.problems.push(format!("term {i}: component on another graph"));
            continue;
        }
        if !t.component.is_normalized() {
            report.problems.push(format!("term {i}: component is not normalized"));
        }
        match check_component(&t.component, &t.certificate) {
            Ok(eig) => {
                if let Some(e) = eig {
                    let m = report.min_dense_eigenvalue.get_or_insert(e);
                    *m = m.min(e);
                }
            }
            Err(e) => report.problems.push(format!("term {i}: {e}")),
        }
    }
    if d.reassemble(s.dim()) != s.weights() {
        report.problems.push("terms do not reassemble the state".into());
    }
    report
}

/// Checks one component; returns the dense least eigenvalue when computed.
pub fn check_component(c: &GraphDiagonalState, cert: &ComponentCertificate) -> Result<Option<f64>> {
    let g = c.graph();
    let m = &cert.partition;
    if m.n() != g.n() {
        return Err(Error::SizeMismatch(m.n(), g.n()));
    }
    let t = TransferMatrix::new(g, m)?;
    if !t.is_ppt(c.weights())? {
        return Err(Error::Certificate(format!("not PPT across {m}")));
    }
    let support = c.support();
    let uniform_pair = support.len() == 2 && c.weight(support[0]) == c.weight(support[1]);
    match cert.kind {
        CertificateKind::PairLemma2 => {
            if !uniform_pair {
                return Err(Error::Certificate("not an equal two-label mixture".into()));
            }
            if *g == Graph::path(4)? && lemma2_separable_pair(support[0], support[1]).is_none() {
                return Err(Error::Certificate(format!(
                    "{} and {} differ on both end qubits",
                    support[0], support[1]
                )));
            }
            if t.cut_rank() != 1 {
                return Err(Error::Certificate(format!("{m} is not a one-pair cut")));
            }
        }
        CertificateKind::GhzMixture => {
            if !uniform_pair {
                return Err(Error::Certificate("not an equal two-label mixture".into()));
            }
        }
        CertificateKind::BellMixture => {
            if t.cut_rank() != 1 {
                return Err(Error::Certificate(format!("{m} is not a one-pair cut")));
            }
            let coset = t
                .cosets()
                .iter()
                .find(|cs| cs.contains(&support.first().map_or(0, |l| l.index())))
                .expect("cosets cover every label");
            if support.iter().any(|l| !coset.contains(&l.index())) {
                return Err(Error::Certificate("support spans several blocks".into()));
            }
            let block: Vec<Rational> = coset.iter().map(|&k| c.weights()[k].clone()).collect();
            if !bell_mixture_separable(&block) {
                return Err(Error::Certificate("a weight exceeds the sum of the others".into()));
            }
        }
        CertificateKind::SmolinBased | CertificateKind::PptRank4 => {
            if support.len() > 4 {
                return Err(Error::Certificate(format!("rank {} exceeds four", support.len())));
            }
        }
        CertificateKind::Explicit => {}
    }
    if g.n() > MAX_ORBIT_QUBITS {
        if t.cut_rank() != 1 {
            return Err(Error::Certificate(
                "rank condition needs the dense oracle, which is limited to six qubits".into(),
            ));
        }
        return Ok(None);
    }
    let rho = dense::state_to_dense(c)?;
    let eig = dense::min_eigenvalue(&dense::partial_transpose(&rho, m)?)?;
    if eig < -DENSE_TOLERANCE {
        return Err(Error::Certificate(format!(
            "dense partial transpose across {m} has eigenvalue {eig:e}"
        )));
    }
    if t.cut_rank() != 1 {
        let rank = support.len();
        let left = dense::rank(&dense::partial_trace_keep(&rho, m.mask())?, 1e-9)?;
        let right = dense::rank(&dense::partial_trace_keep(&rho, m.complement_mask())?, 1e-9)?;
        if rank > left.max(right) {
            return Err(Error::Certificate(format!(
                "rank {rank} exceeds both local ranks {left} and {right} across {m}"
            )));
        }
    }
    Ok(Some(eig))
}

/// Re-checks any verdict: witness validity and negativity, or decomposition soundness.
pub fn verify_verdict(v: &Verdict, s: &GraphDiagonalState) -> Result<()> {
    match v {
        Verdict::Gme { witness, value } => {
            let actual = witness.evaluate(s)?;
            if actual != *value || !actual.is_negative() {
                return Err(Error::Certificate(format!(
                    "witness evaluates to {actual}, claimed {value}"
                )));
            }
            let report = witness::validate_witness(witness)?;
            if !report.is_valid() {
                return Err(Error::Certificate(format!(
                    "witness fails across {:?}",
                    report.failures().iter().map(|m| m.to_string()).collect::<Vec<_>>()
                )));
            }
            Ok(())
        }
        Verdict::Biseparable { decomposition } => {
            let report = verify_decomposition(decomposition, s);
            if report.is_valid() {
                Ok(())
            } else {
                Err(Error::Certificate(report.problems.join("; ")))
            }
        }
        Verdict::Inconclusive { ppt_mixture, .. } => match ppt_mixture {
            Some(dec) => ppt_mixture::verify_certificate(&LpCertificate::Feasible(dec.clone()), s),
            None => Ok(()),
        },
    }
}

/// Classifies any supported graph-diagonal state.
///
/// White-noise states of the named five- and six-qubit graphs use their
/// closed-form thresholds. Graphs equivalent to the four-qubit path, a star
/// or a `Y` graph use their complete criteria. Anything else with at most six
/// qubits goes to the PPT-mixture program, where infeasibility proves
/// entanglement and a mixture over cut-rank-one splits proves biseparability.
pub fn classify(s: &GraphDiagonalState) -> Result<Verdict> {
    let g = s.graph();
    if let Some((family, p)) = five_qubit::recognise_white_noise(s)? {
        return classify_white_noise(family, &p);
    }
    if let Some(p) = c6::recognise_white_noise(s)? {
        return c6::classify_c6_white_noise(&p);
    }
    if let Some(map) = canonical::find_family_map(g)? {
        return match map.family {
            canonical::Family::Path4 => theorem3_check(s),
            canonical::Family::Star(_) => ghz_diagonal_check(s),
            canonical::Family::YGraph(_) => ppt_mixture::classify_yn(s),
        };
    }
    classify_general(s)
}

/// PPT-mixture based classification for graphs without a complete criterion.
pub fn classify_general(s: &GraphDiagonalState) -> Result<Verdict> {
    let g = s.graph();
    if g.n() > MAX_ORBIT_QUBITS {
        return Err(Error::TooManyQubits {
            n: g.n(),
            max: MAX_ORBIT_QUBITS,
        });
    }
    if !g.is_connected() {
        return Err(Error::UnsupportedGraph(
            "disconnected graphs have no genuinely multipartite entangled graph-diagonal states"
                .into(),
        ));
    }
    let one_bp = g.one_bp_partitions();
    if !one_bp.is_empty() {
        if let LpCertificate::Feasible(dec) = ppt_mixture::is_ppt_mixture(s, Some(&one_bp))? {
            let mut decomposition = Decomposition::default();
            for (m, x) in dec.parts {
                decomposition.push_unnormalized(
                    g,
                    x,
                    ComponentCertificate {
                        kind: CertificateKind::Explicit,
                        partition: m,
                    },
                )?;
            }
            return Ok(Verdict::Biseparable { decomposition });
        }
    }
    match ppt_mixture::is_ppt_mixture(s, None)? {
        LpCertificate::Infeasible(f) => {
            let witness = ppt_mixture::dual_witness(&f, g)?;
            let value = witness.evaluate(s)?;
            Ok(Verdict::Gme { witness, value })
        }
        LpCertificate::Feasible(dec) => Ok(Verdict::Inconclusive {
            reason: "PPT mixture; biseparability is not implied for this graph".into(),
            ppt_mixture: Some(dec),
        }),
    }
}
