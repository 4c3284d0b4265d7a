//! Maps graphs onto the canonical member of a supported family by local
//! complementations and a qubit permutation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{ComponentCertificate, Decomposition, Term, Verdict};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, MAX_ORBIT_QUBITS};
use crate::label::BasisLabel;
use crate::ppt_mixture::PptDecomposition;
use crate::rational::{self, Rational};
use crate::state::{permute_bits, GraphDiagonalState};
use crate::witness::DiagonalWitness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// The four-qubit path.
    Path4,
    /// Star with centre 0, the GHZ class.
    Star(usize),
    /// [`Graph::y_graph`] on five or more qubits.
    YGraph(usize),
}

impl Family {
    pub fn canonical(self) -> Result<Graph> {
        match self {
            Family::Path4 => Graph::path(4),
            Family::Star(n) => Graph::star(n),
            Family::YGraph(n) => Graph::y_graph(n),
        }
    }

    fn candidates(n: usize) -> Vec<Family> {
        let mut out = vec![Family::Star(n)];
        if n == 4 {
            out.push(Family::Path4);
        }
        if n >= 5 {
            out.push(Family::YGraph(n));
        }
        out
    }
}

/// Local unitary taking states on `graph` to states on `canonical`.
#[derive(Clone, Debug)]
pub struct FamilyMap {
    pub family: Family,
    pub graph: Graph,
    pub canonical: Graph,
    /// Local complementations applied first, in order.
    pub lc_sequence: Vec<usize>,
    /// Qubit `q` becomes `perm[q]` after the complementations.
    pub perm: Vec<usize>,
    forward: Vec<usize>,
    backward: Vec<usize>,
    inverse_perm: Vec<usize>,
}

impl FamilyMap {
    fn new(family: Family, graph: &Graph, lc_sequence: Vec<usize>, perm: Vec<usize>) -> Result<Self> {
        let n = graph.n();
        let mut forward = Vec::with_capacity(graph.dim());
        for k in BasisLabel::all(n) {
            let mut h = graph.clone();
            let mut label = k;
            for &a in &lc_sequence {
                label = h.label_transform_lc(a, label)?;
                h = h.local_complement(a)?;
            }
            forward.push(permute_bits(label.bits(), &perm) as usize);
        }
        let mut backward = vec![0; forward.len()];
        for (k, &c) in forward.iter().enumerate() {
            backward[c] = k;
        }
        let mut inverse_perm = vec![0; n];
        for (q, &p) in perm.iter().enumerate() {
            inverse_perm[p] = q;
        }
        let canonical = family.canonical()?;
        let mut h = graph.clone();
        for &a in &lc_sequence {
            h = h.local_complement(a)?;
        }
        if h.permuted(&perm)? != canonical {
            return Err(Error::GraphMismatch("family map does not reach the canonical graph".into()));
        }
        Ok(Self {
            family,
            graph: graph.clone(),
            canonical,
            lc_sequence,
            perm,
            forward,
            backward,
            inverse_perm,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.graph == self.canonical
    }

    pub fn label_to_canonical(&self, k: usize) -> usize {
        self.forward[k]
    }

    pub fn label_from_canonical(&self, k: usize) -> usize {
        self.backward[k]
    }

    pub fn partition_to_canonical(&self, m: &Bipartition) -> Result<Bipartition> {
        m.permuted(&self.perm)
    }

    pub fn partition_from_canonical(&self, m: &Bipartition) -> Result<Bipartition> {
        m.permuted(&self.inverse_perm)
    }

    pub fn to_canonical(&self, s: &GraphDiagonalState) -> Result<GraphDiagonalState> {
        s.relabeled(self.canonical.clone(), &self.forward)
    }

    pub fn state_from_canonical(&self, s: &GraphDiagonalState) -> Result<GraphDiagonalState> {
        s.relabeled(self.graph.clone(), &self.backward)
    }

    pub fn witness_from_canonical(&self, w: &DiagonalWitness) -> Result<DiagonalWitness> {
        w.relabeled(self.graph.clone(), &self.backward)
    }

    fn weights_from_canonical(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![rational::zero(); x.len()];
        for (c, v) in x.iter().enumerate() {
            out[self.backward[c]] = v.clone();
        }
        out
    }

    /// Transports a verdict on the canonical graph back to `original`.
    pub fn verdict_from_canonical(&self, v: Verdict, original: &GraphDiagonalState) -> Result<Verdict> {
        if self.is_identity() {
            return Ok(v);
        }
        Ok(match v {
            Verdict::Gme { witness, .. } => {
                let witness = self.witness_from_canonical(&witness)?;
                let value = witness.evaluate(original)?;
                Verdict::Gme { witness, value }
            }
            Verdict::Biseparable { decomposition } => {
                let terms = decomposition
                    .terms
                    .into_iter()
                    .map(|t| {
                        Ok(Term {
                            weight: t.weight,
                            component: self.state_from_canonical(&t.component)?,
                            certificate: ComponentCertificate {
                                kind: t.certificate.kind,
                                partition: self.partition_from_canonical(&t.certificate.partition)?,
                            },
                        })
                    })
                    .collect::<Result<_>>()?;
                Verdict::Biseparable {
                    decomposition: Decomposition { terms },
                }
            }
            Verdict::Inconclusive {
                reason,
                ppt_mixture,
            } => {
                let ppt_mixture = match ppt_mixture {
                    Some(d) => Some(PptDecomposition {
                        parts: d
                            .parts
                            .into_iter()
                            .map(|(m, x)| {
                                Ok((self.partition_from_canonical(&m)?, self.weights_from_canonical(&x)))
                            })
                            .collect::<Result<_>>()?,
                    }),
                    None => None,
                };
                Verdict::Inconclusive {
                    reason,
                    ppt_mixture,
                }
            }
        })
    }
}

/// Permutation `perm` with `g.permuted(perm) == target`, if any.
pub fn isomorphism(g: &Graph, target: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n != target.n() || g.edges().len() != target.edges().len() {
        return None;
    }
    let mut degrees_g: Vec<usize> = (0..n).map(|q| g.degree(q)).collect();
    let mut degrees_t: Vec<usize> = (0..n).map(|q| target.degree(q)).collect();
    degrees_g.sort_unstable();
    degrees_t.sort_unstable();
    if degrees_g != degrees_t {
        return None;
    }
    fn extend(g: &Graph, t: &Graph, perm: &mut Vec<usize>, used: &mut u32) -> bool {
        let q = perm.len();
        if q == g.n() {
            return true;
        }
        for p in 0..g.n() {
            if (*used >> p) & 1 == 1 || g.degree(q) != t.degree(p) {
                continue;
            }
            if (0..q).any(|r| g.has_edge(q, r) != t.has_edge(p, perm[r])) {
                continue;
            }
            perm.push(p);
            *used |= 1 << p;
            if extend(g, t, perm, used) {
                return true;
            }
            perm.pop();
            *used &= !(1 << p);
        }
        false
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = 0u32;
    extend(g, target, &mut perm, &mut used).then_some(perm)
}

/// Finds a map onto a supported family. Complementation orbits are searched
/// up to six qubits; larger graphs must be a relabelled star, complete graph
/// or `Y` graph.
pub fn find_family_map(g: &Graph) -> Result<Option<Arc<FamilyMap>>> {
    static CACHE: OnceLock<Mutex<HashMap<Graph, Option<Arc<FamilyMap>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("family cache").get(g) {
        return Ok(hit.clone());
    }
    let found = search(g)?.map(Arc::new);
    cache
        .lock()
        .expect("family cache")
        .insert(g.clone(), found.clone());
    Ok(found)
}

fn search(g: &Graph) -> Result<Option<FamilyMap>> {
    let n = g.n();
    if n < 2 || !g.is_connected() {
        return Ok(None);
    }
    let targets: Vec<(Family, Graph)> = Family::candidates(n)
        .into_iter()
        .map(|f| Ok((f, f.canonical()?)))
        .collect::<Result<_>>()?;
    if n <= MAX_ORBIT_QUBITS {
        for (h, path) in g.lc_orbit()? {
            for (family, target) in &targets {
                if let Some(perm) = isomorphism(&h, target) {
                    return Ok(Some(FamilyMap::new(*family, g, path, perm)?));
                }
            }
        }
        return Ok(None);
    }
    for (family, target) in &targets {
        if let Some(perm) = isomorphism(g, target) {
            return Ok(Some(FamilyMap::new(*family, g, Vec::new(), perm)?));
        }
    }
    if g.edges().len() == n * (n - 1) / 2 {
        let perm: Vec<usize> = (0..n).collect();
        return Ok(Some(FamilyMap::new(Family::Star(n), g, vec![0], perm)?));
    }
    Ok(None)
}
