//! Complete criterion and constructive decompositions for four-qubit
//! path-diagonal states.

use std::sync::OnceLock;

use num_traits::{Signed, Zero};

use super::canonical::{find_family_map, Family};
use super::pairs::{Builder, PairOracle};
use super::{CertificateKind, Decomposition, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::label::BasisLabel;
use crate::rational::{self, Rational};
use crate::state::GraphDiagonalState;
use crate::transfer::TransferMatrix;
use crate::witness;

const ENDS: usize = 0b1001;

fn opposite(k: usize, l: usize) -> bool {
    (k ^ l) & ENDS == ENDS
}

fn same_block(k: usize, l: usize) -> bool {
    (k ^ l) & ENDS == 0
}

fn path4() -> &'static Graph {
    static G: OnceLock<Graph> = OnceLock::new();
    G.get_or_init(|| Graph::path(4).expect("valid graph"))
}

/// Cut-rank-one bipartition certifying the equal mixture of `k1` and `k2` on
/// the four-qubit path, or `None` when the labels differ on both end qubits.
pub fn lemma2_separable_pair(k1: BasisLabel, k2: BasisLabel) -> Option<Bipartition> {
    if k1.n() != 4 || k2.n() != 4 || k1 == k2 || opposite(k1.index(), k2.index()) {
        return None;
    }
    let oracle = PairOracle::for_graph(path4()).ok()?;
    oracle
        .partition(k1.index(), k2.index())
        .filter(|m| matches!(path4().cut_rank(m), Ok(1)))
}

/// Whether every weight is at most the sum of the others.
pub fn bell_mixture_separable(weights: &[Rational]) -> bool {
    if weights.iter().any(|w| w.is_negative()) {
        return false;
    }
    let total = rational::sum(weights);
    weights.iter().all(|w| w * rational::int(2) <= total)
}

/// Complete decision for states on graphs equivalent to the four-qubit path.
/// The most violated of the 80 witness conditions certifies entanglement;
/// otherwise the state is decomposed explicitly.
pub fn theorem3_check(s: &GraphDiagonalState) -> Result<Verdict> {
    let g = s.graph();
    if g != path4() {
        let map = find_family_map(g)?
            .filter(|m| m.family == Family::Path4)
            .ok_or_else(|| Error::GraphMismatch("not equivalent to the four-qubit path".into()))?;
        let canonical = map.to_canonical(s)?;
        return map.verdict_from_canonical(theorem3_check(&canonical)?, s);
    }
    let mut worst: Option<(Rational, witness::DiagonalWitness)> = None;
    for w in witness::c4_witness_family(g)? {
        let v = w.evaluate(s)?;
        if v.is_negative() && worst.as_ref().is_none_or(|(b, _)| v < *b) {
            worst = Some((v, w));
        }
    }
    if let Some((value, witness)) = worst {
        return Ok(Verdict::Gme { witness, value });
    }
    Ok(Verdict::Biseparable {
        decomposition: decompose_c4(s)?,
    })
}

/// One of the linear conditions, as `slack = Σ coeff_l F_l ≥ 0`.
struct Condition {
    coeffs: [i32; 16],
}

impl Condition {
    fn first(k: usize) -> Self {
        let mut coeffs = [1; 16];
        for (l, c) in coeffs.iter_mut().enumerate() {
            if l == k {
                *c = -1;
            } else if opposite(k, l) {
                *c = 0;
            }
        }
        Self { coeffs }
    }

    fn second(k: usize, o: usize) -> Self {
        let mut coeffs = [1; 16];
        coeffs[k] = -1;
        coeffs[o] = -1;
        Self { coeffs }
    }

    fn slack(&self, f: &[Rational]) -> Rational {
        let mut s = rational::zero();
        for (c, w) in self.coeffs.iter().zip(f) {
            if !w.is_zero() {
                s += w * rational::int(*c as i64);
            }
        }
        s
    }
}

enum Tight {
    First(usize),
    Second(usize, usize),
}

fn conditions() -> Vec<(Condition, Tight)> {
    let mut out = Vec::with_capacity(80);
    for k in 0..16 {
        out.push((Condition::first(k), Tight::First(k)));
    }
    for k in 0..16 {
        for o in (0..16).filter(|&o| opposite(k, o)) {
            out.push((Condition::second(k, o), Tight::Second(k, o)));
        }
    }
    out
}

/// Explicit biseparable decomposition of a four-qubit path-diagonal state
/// satisfying all 80 conditions.
///
/// Admissible pairs are subtracted in label order, each by the largest
/// amount keeping every condition satisfied. As soon as a condition becomes
/// an equality the remainder splits into pairs and Bell-block mixtures.
pub fn decompose_c4(s: &GraphDiagonalState) -> Result<Decomposition> {
    let g = s.graph();
    if g != path4() {
        let map = find_family_map(g)?
            .filter(|m| m.family == Family::Path4)
            .ok_or_else(|| Error::GraphMismatch("not equivalent to the four-qubit path".into()))?;
        let canonical = map.to_canonical(s)?;
        let d = decompose_c4(&canonical)?;
        return match map.verdict_from_canonical(Verdict::Biseparable { decomposition: d }, s)? {
            Verdict::Biseparable { decomposition } => Ok(decomposition),
            _ => unreachable!("biseparable verdicts map to biseparable verdicts"),
        };
    }
    let conds = conditions();
    let mut f: Vec<Rational> = s.weights().to_vec();
    let mut slacks: Vec<Rational> = conds.iter().map(|(c, _)| c.slack(&f)).collect();
    if slacks.iter().any(|v| v.is_negative()) {
        return Err(Error::Precondition("state violates a separability condition".into()));
    }
    let mut b = Builder::new(g)?;
    let pairs: Vec<(usize, usize)> = (0..16)
        .flat_map(|a| (a + 1..16).map(move |c| (a, c)))
        .filter(|&(a, c)| !opposite(a, c))
        .collect();
    loop {
        if f.iter().all(|w| w.is_zero()) {
            return Ok(b.finish());
        }
        if let Some(i) = slacks.iter().position(|v| v.is_zero()) {
            terminal(&mut b, &conds[i].1, &f)?;
            return Ok(b.finish());
        }
        let mut tight = false;
        for &(k1, k2) in &pairs {
            if f[k1].is_zero() || f[k2].is_zero() {
                continue;
            }
            let mut eps = f[k1].clone().min(f[k2].clone());
            let rates: Vec<i32> = conds
                .iter()
                .map(|(c, _)| c.coeffs[k1] + c.coeffs[k2])
                .collect();
            for (slack, &r) in slacks.iter().zip(&rates) {
                if r > 0 {
                    let limit = slack / rational::int(r as i64);
                    if limit < eps {
                        eps = limit;
                    }
                }
            }
            if eps.is_zero() {
                continue;
            }
            f[k1] -= &eps;
            f[k2] -= &eps;
            for (slack, &r) in slacks.iter_mut().zip(&rates) {
                if r != 0 {
                    *slack -= &eps * rational::int(r as i64);
                }
            }
            b.pair(k1, k2, &(&eps * rational::int(2)), CertificateKind::PairLemma2)?;
            if slacks.iter().any(|v| v.is_zero()) {
                tight = true;
                break;
            }
        }
        if !tight && f.iter().any(|w| !w.is_zero()) {
            return Err(Error::Certificate(
                "pair subtraction stalled without reaching an equality".into(),
            ));
        }
    }
}

/// Cut-rank-one bipartition whose transfer blocks are the end-qubit blocks.
fn block_partition() -> Result<Bipartition> {
    let g = path4();
    for m in g.one_bp_partitions() {
        let t = TransferMatrix::new(g, &m)?;
        if t.cosets().iter().all(|c| c.iter().all(|&l| same_block(l, c[0]))) {
            return Ok(m);
        }
    }
    Err(Error::Certificate("no bipartition has the end-qubit blocks".into()))
}

fn block_weights(f: &[Rational], anchor: usize, replace: Option<Rational>) -> Vec<Rational> {
    (0..16)
        .map(|l| {
            if !same_block(l, anchor) {
                rational::zero()
            } else if l == anchor {
                replace.clone().unwrap_or_else(|| f[l].clone())
            } else {
                f[l].clone()
            }
        })
        .collect()
}

fn terminal(b: &mut Builder, which: &Tight, f: &[Rational]) -> Result<()> {
    let two = rational::int(2);
    let block = block_partition()?;
    match *which {
        Tight::First(k) => {
            for l in (0..16).filter(|&l| l != k && !opposite(k, l)) {
                if f[l].is_positive() {
                    b.pair(k, l, &(&f[l] * &two), CertificateKind::PairLemma2)?;
                }
            }
            let o = k ^ ENDS;
            b.with_partition(block_weights(f, o, None), CertificateKind::BellMixture, block)?;
        }
        Tight::Second(k, o) => {
            let others = |anchor: usize| -> Rational {
                (0..16)
                    .filter(|&l| l != anchor && same_block(l, anchor))
                    .map(|l| f[l].clone())
                    .sum()
            };
            let (k_rest, o_rest) = (others(k), others(o));
            b.with_partition(
                block_weights(f, k, Some(k_rest.clone())),
                CertificateKind::BellMixture,
                block,
            )?;
            b.with_partition(
                block_weights(f, o, Some(o_rest.clone())),
                CertificateKind::BellMixture,
                block,
            )?;
            let mut cap_k = &f[k] - &k_rest;
            let mut cap_o = &f[o] - &o_rest;
            for a in (0..16).filter(|&a| !same_block(a, k) && !same_block(a, o)) {
                let to_k = f[a].clone().min(cap_k.clone());
                let to_o = &f[a] - &to_k;
                if to_k.is_positive() {
                    b.pair(k, a, &(&to_k * &two), CertificateKind::PairLemma2)?;
                }
                if to_o.is_positive() {
                    b.pair(o, a, &(&to_o * &two), CertificateKind::PairLemma2)?;
                }
                cap_k -= &to_k;
                cap_o -= &to_o;
            }
            if !cap_k.is_zero() || !cap_o.is_zero() {
                return Err(Error::Certificate("equality block does not balance".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::verify_decomposition;
    use crate::rational::rat;

    fn l(s: &str) -> BasisLabel {
        BasisLabel::parse(s).unwrap()
    }

    #[test]
    fn pair_catalog_examples() {
        assert_eq!(
            lemma2_separable_pair(l("++++"), l("-+++")),
            Some(Bipartition::parse(4, "A|BCD").unwrap())
        );
        assert_eq!(
            lemma2_separable_pair(l("++++"), l("+--+")),
            Some(Bipartition::parse(4, "AB|CD").unwrap())
        );
        assert_eq!(lemma2_separable_pair(l("++++"), l("-++-")), None);
    }

    #[test]
    fn bell_mixture_examples() {
        assert!(bell_mixture_separable(&vec![rat(1, 4); 4]));
        assert!(!bell_mixture_separable(&[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]));
        assert!(bell_mixture_separable(&[rat(1, 2), rat(1, 2), rat(0, 1), rat(0, 1)]));
    }

    #[test]
    fn threshold_state_decomposes() {
        let s = GraphDiagonalState::white_noise(path4().clone(), &rat(5, 13)).unwrap();
        let d = decompose_c4(&s).unwrap();
        assert!(d.terms.iter().any(|t| t.certificate.kind == CertificateKind::BellMixture));
        let report = verify_decomposition(&d, &s);
        assert!(report.is_valid(), "{:?}", report.problems);
    }

    #[test]
    fn uniform_state_decomposes_into_pairs() {
        let s = GraphDiagonalState::maximally_mixed(path4().clone());
        let d = decompose_c4(&s).unwrap();
        assert!(verify_decomposition(&d, &s).is_valid());
    }

    #[test]
    fn pure_state_is_rejected() {
        let s = GraphDiagonalState::pure(path4().clone(), BasisLabel::zero(4)).unwrap();
        assert!(decompose_c4(&s).is_err());
        assert!(theorem3_check(&s).unwrap().is_gme());
    }
}
