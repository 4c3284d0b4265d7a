//! Separable pairs and component search shared by the decomposition builders.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{Signed, Zero};

use super::{check_component, CertificateKind, ComponentCertificate, Decomposition};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::rational::{self, Rational};
use crate::transfer::TransferMatrix;

/// For each label difference `d`, the first bipartition across which the
/// equal mixture of two labels differing by `d` is PPT.
///
/// A pair has rank two while every local rank of a state on a connected cut
/// is at least two, so PPT across any cut already makes the pair separable
/// there. Cut-rank-one bipartitions are preferred.
pub struct PairOracle {
    partition_for: Vec<Option<Bipartition>>,
}

impl PairOracle {
    fn build(g: &Graph) -> Result<Self> {
        let dim = g.dim();
        let mut parts: Vec<(usize, Bipartition)> = Bipartition::all(g.n())
            .into_iter()
            .map(|m| Ok((g.cut_rank(&m)?, m)))
            .collect::<Result<_>>()?;
        parts.retain(|(r, _)| *r > 0);
        parts.sort_by_key(|(r, _)| usize::from(*r != 1));
        let mut partition_for = vec![None; dim];
        for (_, m) in parts {
            let t = TransferMatrix::new(g, &m)?;
            let kernel = t.kernel();
            for (d, slot) in partition_for.iter_mut().enumerate().skip(1) {
                if slot.is_none()
                    && (0..dim).all(|v| !(&kernel[v] + &kernel[v ^ d]).is_negative())
                {
                    *slot = Some(m);
                }
            }
        }
        Ok(Self { partition_for })
    }

    /// Shared oracle for `g`, built once per graph.
    pub fn for_graph(g: &Graph) -> Result<Arc<PairOracle>> {
        static CACHE: OnceLock<Mutex<HashMap<Graph, Arc<PairOracle>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(o) = cache.lock().expect("pair cache").get(g) {
            return Ok(o.clone());
        }
        let oracle = Arc::new(Self::build(g)?);
        cache
            .lock()
            .expect("pair cache")
            .insert(g.clone(), oracle.clone());
        Ok(oracle)
    }

    pub fn partition(&self, a: usize, b: usize) -> Option<Bipartition> {
        if a == b {
            return None;
        }
        self.partition_for[a ^ b]
    }

    pub fn separable(&self, a: usize, b: usize) -> bool {
        self.partition(a, b).is_some()
    }
}

/// Labels `l` whose equal mixture with label 0 is not PPT across any cut.
pub fn excluded_partners(g: &Graph) -> Result<Vec<usize>> {
    let o = PairOracle::for_graph(g)?;
    Ok((1..g.dim()).filter(|&l| !o.separable(0, l)).collect())
}

/// Splits `weights` into equal-weight pairs of distinct labels, as
/// `(a, b, mass)` with `mass / 2` on each label. Requires every weight to be
/// at most half the total.
///
/// The mass is laid out on an interval of length `S` in label order and the
/// point `x` is matched with `x + S/2`.
pub fn circle_pairs(weights: &[Rational]) -> Result<Vec<(usize, usize, Rational)>> {
    let total = rational::sum(weights);
    if total.is_zero() {
        return Ok(Vec::new());
    }
    let half = &total / rational::int(2);
    if weights.iter().any(|w| w > &half) {
        return Err(Error::Precondition("a weight exceeds half the total".into()));
    }
    let segments: Vec<(usize, Rational)> = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_positive())
        .map(|(k, w)| (k, w.clone()))
        .collect();
    let mut lower = Cursor::new(&segments, rational::zero());
    let mut upper = Cursor::new(&segments, half.clone());
    let mut out = Vec::new();
    let mut done = rational::zero();
    while done < half {
        let step = lower.remaining.clone().min(upper.remaining.clone());
        out.push((lower.label(), upper.label(), &step * rational::int(2)));
        done += &step;
        lower.advance(&step);
        upper.advance(&step);
    }
    Ok(out)
}

struct Cursor<'a> {
    segments: &'a [(usize, Rational)],
    idx: usize,
    remaining: Rational,
}

impl<'a> Cursor<'a> {
    fn new(segments: &'a [(usize, Rational)], mut offset: Rational) -> Self {
        let mut idx = 0;
        while offset >= segments[idx].1 {
            offset -= &segments[idx].1;
            idx += 1;
        }
        Self {
            segments,
            idx,
            remaining: &segments[idx].1 - offset,
        }
    }

    fn label(&self) -> usize {
        self.segments[self.idx].0
    }

    fn advance(&mut self, step: &Rational) {
        self.remaining -= step;
        if self.remaining.is_zero() && self.idx + 1 < self.segments.len() {
            self.idx += 1;
            self.remaining = self.segments[self.idx].1.clone();
        }
    }
}

/// Perfect matching of `labels` into separable pairs, found by backtracking
/// in label order.
pub fn perfect_matching(oracle: &PairOracle, labels: &[usize]) -> Option<Vec<(usize, usize)>> {
    fn go(
        oracle: &PairOracle,
        free: &mut Vec<usize>,
        out: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some(&a) = free.first() else {
            return true;
        };
        for i in 1..free.len() {
            let b = free[i];
            if oracle.separable(a, b) {
                free.remove(i);
                free.remove(0);
                out.push((a, b));
                if go(oracle, free, out) {
                    return true;
                }
                out.pop();
                free.insert(0, a);
                free.insert(i, b);
            }
        }
        false
    }
    if labels.len() % 2 == 1 {
        return None;
    }
    let mut free = labels.to_vec();
    let mut out = Vec::new();
    go(oracle, &mut free, &mut out).then_some(out)
}

/// Collects components on one graph, finding certifying bipartitions.
pub struct Builder {
    graph: Graph,
    oracle: Arc<PairOracle>,
    pub decomposition: Decomposition,
}

impl Builder {
    pub fn new(graph: &Graph) -> Result<Self> {
        Ok(Self {
            graph: graph.clone(),
            oracle: PairOracle::for_graph(graph)?,
            decomposition: Decomposition::default(),
        })
    }

    pub fn oracle(&self) -> &PairOracle {
        &self.oracle
    }

    /// Adds `mass / 2` on each of `a` and `b`.
    pub fn pair(&mut self, a: usize, b: usize, mass: &Rational, kind: CertificateKind) -> Result<()> {
        let partition = self.oracle.partition(a, b).ok_or_else(|| {
            Error::Certificate(format!("labels {a} and {b} form no separable pair"))
        })?;
        let mut w = vec![rational::zero(); self.graph.dim()];
        let each = mass / rational::int(2);
        w[a] = each.clone();
        w[b] = each;
        self.decomposition
            .push_unnormalized(&self.graph, w, ComponentCertificate { kind, partition })
    }

    /// Adds a component with a known partition.
    pub fn with_partition(
        &mut self,
        weights: Vec<Rational>,
        kind: CertificateKind,
        partition: Bipartition,
    ) -> Result<()> {
        self.decomposition
            .push_unnormalized(&self.graph, weights, ComponentCertificate { kind, partition })
    }

    /// Adds a component certified across the first bipartition that passes
    /// the verification checks for `kind`.
    pub fn component(&mut self, weights: Vec<Rational>, kind: CertificateKind) -> Result<()> {
        let partition = certifying_partition(&self.graph, &weights, kind)?;
        self.with_partition(weights, kind, partition)
    }

    /// Matches `labels` (each carrying `mass_each`) into separable pairs.
    pub fn match_labels(&mut self, labels: &[usize], mass_each: &Rational, kind: CertificateKind) -> Result<()> {
        let pairs = perfect_matching(&self.oracle, labels)
            .ok_or_else(|| Error::Certificate("no perfect matching into separable pairs".into()))?;
        let mass = mass_each * rational::int(2);
        for (a, b) in pairs {
            self.pair(a, b, &mass, kind)?;
        }
        Ok(())
    }

    pub fn finish(self) -> Decomposition {
        self.decomposition
    }
}

/// First bipartition (cut rank one first) across which `weights` passes
/// [`check_component`] as `kind`.
pub fn certifying_partition(g: &Graph, weights: &[Rational], kind: CertificateKind) -> Result<Bipartition> {
    let component = crate::state::GraphDiagonalState::unnormalized(g.clone(), weights.to_vec())?
        .normalized()?;
    let mut parts: Vec<(usize, Bipartition)> = Bipartition::all(g.n())
        .into_iter()
        .map(|m| Ok((g.cut_rank(&m)?, m)))
        .collect::<Result<_>>()?;
    parts.sort_by_key(|(r, _)| *r);
    for (_, m) in parts {
        let cert = ComponentCertificate { kind, partition: m };
        if check_component(&component, &cert).is_ok() {
            return Ok(m);
        }
    }
    Err(Error::Certificate(format!("no bipartition certifies this {kind} component")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn circle_pairs_cover_weights() {
        let w = vec![rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 8)];
        let pairs = circle_pairs(&w).unwrap();
        let mut back = vec![rational::zero(); 4];
        for (a, b, m) in &pairs {
            assert_ne!(a, b);
            back[*a] += m / rational::int(2);
            back[*b] += m / rational::int(2);
        }
        assert_eq!(back, w);
        assert!(circle_pairs(&[rat(3, 4), rat(1, 4)]).is_err());
    }

    #[test]
    fn c4_excluded_partners_are_end_flips() {
        let g = Graph::path(4).unwrap();
        assert_eq!(excluded_partners(&g).unwrap(), vec![9, 11, 13, 15]);
    }
}
