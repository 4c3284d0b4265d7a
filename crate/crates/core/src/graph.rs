//! Simple undirected graphs on labelled qubits, bipartitions and local
//! complementation.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2;
use crate::label::BasisLabel;

/// Largest register the library accepts at all.
pub const MAX_QUBITS: usize = 8;
/// Largest register for orbit enumeration and dense cross-checks.
pub const MAX_ORBIT_QUBITS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u32>,
}

impl Graph {
    /// The edgeless graph on `n` qubits.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_QUBITS {
            return Err(Error::TooManyQubits { n, max: MAX_QUBITS });
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-based edges. Self-loops and duplicates are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(a, b) in edges {
            for q in [a, b] {
                if q >= n {
                    return Err(Error::QubitOutOfRange { index: q, n });
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on qubit {a}")));
            }
            if g.has_edge(a, b) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a}-{b}")));
            }
            g.toggle_edge(a, b);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows given as bit masks.
    pub fn from_adjacency(adj: Vec<u32>) -> Result<Self> {
        let n = adj.len();
        let g = Self::empty(n)?;
        for (i, &row) in adj.iter().enumerate() {
            if row >> n != 0 || (row >> i) & 1 == 1 {
                return Err(Error::InvalidGraph(format!("bad adjacency row {i}")));
            }
            for (j, &other) in adj.iter().enumerate() {
                if ((row >> j) & 1) != ((other >> i) & 1) {
                    return Err(Error::InvalidGraph("adjacency is not symmetric".into()));
                }
            }
        }
        Ok(Self { n: g.n, adj })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn ring(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph("a ring needs at least 3 qubits".into()));
        }
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    /// Star with centre qubit 0; its graph state is the GHZ state up to local unitaries.
    pub fn star(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Path 0-1-2 with further leaves 3..n attached to qubit 2.
    pub fn y_graph(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidGraph("Y graphs need at least 4 qubits".into()));
        }
        let mut edges = vec![(0, 1), (1, 2)];
        edges.extend((3..n).map(|i| (2, i)));
        Self::from_edges(n, &edges)
    }

    /// Named graphs: `GHZ<n>` (star), `C<n>` (path), `R<n>` (ring), `Y<n>`, `K<n>`.
    pub fn builtin(name: &str) -> Result<Self> {
        let name = name.trim();
        let split = name
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::InvalidGraph(format!("unknown graph {name:?}")))?;
        let (family, digits) = name.split_at(split);
        let n: usize = digits
            .parse()
            .map_err(|_| Error::InvalidGraph(format!("unknown graph {name:?}")))?;
        match family.to_ascii_uppercase().as_str() {
            "GHZ" | "S" => Self::star(n),
            "C" | "P" => Self::path(n),
            "R" => Self::ring(n),
            "Y" if n >= 5 => Self::y_graph(n),
            "K" => Self::complete(n),
            _ => Err(Error::InvalidGraph(format!("unknown graph {name:?}"))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Hilbert-space dimension `2^n`.
    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        (self.adj[a] >> b) & 1 == 1
    }

    /// Neighbourhood of qubit `a` as a bit mask.
    pub fn neighbours(&self, a: usize) -> u32 {
        self.adj[a]
    }

    pub fn adjacency(&self) -> &[u32] {
        &self.adj
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adj[a].count_ones() as usize
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) {
        self.adj[a] ^= 1 << b;
        self.adj[b] ^= 1 << a;
    }

    /// Edges as 0-based pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let full = (1u32 << self.n) - 1;
        let mut seen = 1u32;
        let mut frontier = 1u32;
        while frontier != 0 {
            let mut next = 0;
            for a in 0..self.n {
                if (frontier >> a) & 1 == 1 {
                    next |= self.adj[a];
                }
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == full
    }

    /// Local complementation at qubit `a`: complements the subgraph induced on `N(a)`.
    pub fn local_complement(&self, a: usize) -> Result<Self> {
        self.check_qubit(a)?;
        let mut g = self.clone();
        let nb = self.adj[a];
        for u in 0..self.n {
            for v in u + 1..self.n {
                if (nb >> u) & 1 == 1 && (nb >> v) & 1 == 1 {
                    g.toggle_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// Relabels qubit `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n)?;
        let mut g = Self::empty(self.n)?;
        for (a, b) in self.edges() {
            g.toggle_edge(perm[a], perm[b]);
        }
        Ok(g)
    }

    pub fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    /// GF(2) rank of the adjacency block between the two sides of `m`.
    pub fn cut_rank(&self, m: &Bipartition) -> Result<usize> {
        if m.n() != self.n {
            return Err(Error::SizeMismatch(m.n(), self.n));
        }
        let side = m.mask();
        let rows: Vec<u64> = (0..self.n)
            .filter(|&a| (side >> a) & 1 == 1)
            .map(|a| (self.adj[a] & !side) as u64)
            .collect();
        Ok(gf2::rank(&rows))
    }

    /// Bipartitions whose cut rank is one, in canonical order.
    pub fn one_bp_partitions(&self) -> Vec<Bipartition> {
        Bipartition::all(self.n)
            .into_iter()
            .filter(|m| matches!(self.cut_rank(m), Ok(1)))
            .collect()
    }

    /// Every graph reachable by local complementations, with the shortest
    /// complementation sequence (lexicographically first among equals) from `self`.
    pub fn lc_orbit(&self) -> Result<Vec<(Graph, Vec<usize>)>> {
        if self.n > MAX_ORBIT_QUBITS {
            return Err(Error::TooManyQubits {
                n: self.n,
                max: MAX_ORBIT_QUBITS,
            });
        }
        let mut seen: HashMap<Graph, usize> = HashMap::new();
        let mut out: Vec<(Graph, Vec<usize>)> = vec![(self.clone(), Vec::new())];
        seen.insert(self.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(idx) = queue.pop_front() {
            for a in 0..self.n {
                let next = out[idx].0.local_complement(a)?;
                if !seen.contains_key(&next) {
                    let mut path = out[idx].1.clone();
                    path.push(a);
                    seen.insert(next.clone(), out.len());
                    out.push((next, path));
                    queue.push_back(out.len() - 1);
                }
            }
        }
        Ok(out)
    }

    /// Image of a graph-basis label under local complementation at `a`.
    ///
    /// The local unitary realising the complementation maps `|Γ_k⟩` of this
    /// graph to `|Γ_k'⟩` of the complemented graph, up to phase, where `k'`
    /// flips the neighbours of `a` whenever qubit `a` carries the sign `-`.
    pub fn label_transform_lc(&self, a: usize, label: BasisLabel) -> Result<BasisLabel> {
        self.check_qubit(a)?;
        if label.n() != self.n {
            return Err(Error::SizeMismatch(label.n(), self.n));
        }
        Ok(if label.is_minus(a) {
            label.flip(self.adj[a])
        } else {
            label
        })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .iter()
            .map(|(a, b)| format!("{}-{}", a + 1, b + 1))
            .collect();
        write!(f, "n={} [{}]", self.n, edges.join(", "))
    }
}

pub fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::SizeMismatch(perm.len(), n));
    }
    let mut seen = 0u32;
    for &p in perm {
        if p >= n || (seen >> p) & 1 == 1 {
            return Err(Error::InvalidGraph(format!("{perm:?} is not a permutation")));
        }
        seen |= 1 << p;
    }
    Ok(())
}

/// A split of the qubits into two non-empty sides.
///
/// Stored canonically by the side that does not contain qubit 0, so `M` and
/// its complement compare equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n: u8,
    mask: u32,
}

impl Bipartition {
    /// Accepts either side as a qubit mask.
    pub fn new(n: usize, side: u32) -> Result<Self> {
        if !(2..=MAX_QUBITS).contains(&n) {
            return Err(Error::InvalidBipartition(format!(
                "{n} qubits cannot be bipartitioned"
            )));
        }
        let full = (1u32 << n) - 1;
        if side & !full != 0 {
            return Err(Error::InvalidBipartition(format!(
                "side {side:#b} exceeds {n} qubits"
            )));
        }
        let mask = if side & 1 == 1 { full & !side } else { side };
        if mask == 0 {
            return Err(Error::InvalidBipartition("one side is empty".into()));
        }
        Ok(Self { n: n as u8, mask })
    }

    pub fn from_qubits(n: usize, side: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &q in side {
            if q >= n {
                return Err(Error::QubitOutOfRange { index: q, n });
            }
            mask |= 1 << q;
        }
        Self::new(n, mask)
    }

    /// Parses letter notation such as `"AD|BC"` or `"BC"` (one side only).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        let first = text.split('|').next().unwrap_or("");
        let mut side = 0u32;
        for c in first.chars() {
            let q = (c.to_ascii_uppercase() as u32).wrapping_sub('A' as u32) as usize;
            if !c.is_ascii_alphabetic() || q >= n {
                return Err(Error::InvalidBipartition(format!("bad qubit letter in {text:?}")));
            }
            side |= 1 << q;
        }
        let parsed = Self::new(n, side)?;
        if let Some(second) = text.split('|').nth(1) {
            let mut other = 0u32;
            for c in second.chars() {
                let q = (c.to_ascii_uppercase() as u32).wrapping_sub('A' as u32) as usize;
                if !c.is_ascii_alphabetic() || q >= n {
                    return Err(Error::InvalidBipartition(format!("bad qubit letter in {text:?}")));
                }
                other |= 1 << q;
            }
            if other != ((1u32 << n) - 1) & !side {
                return Err(Error::InvalidBipartition(format!(
                    "{text:?} does not split the qubits"
                )));
            }
        }
        Ok(parsed)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The side that does not contain qubit 0.
    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// The side that contains qubit 0.
    pub fn complement_mask(&self) -> u32 {
        ((1u32 << self.n) - 1) & !self.mask
    }

    pub fn contains(&self, q: usize) -> bool {
        (self.mask >> q) & 1 == 1
    }

    pub fn smaller_side_len(&self) -> usize {
        let k = self.mask.count_ones() as usize;
        k.min(self.n() - k)
    }

    fn order_key(&self) -> (usize, Vec<usize>) {
        let k = self.mask.count_ones() as usize;
        let side = if 2 * k < self.n() {
            self.mask
        } else {
            self.complement_mask()
        };
        (
            self.smaller_side_len(),
            (0..self.n()).filter(|&q| (side >> q) & 1 == 1).collect(),
        )
    }

    /// Every bipartition of `n` qubits, smaller side size first, then lexicographic.
    pub fn all(n: usize) -> Vec<Bipartition> {
        if !(2..=MAX_QUBITS).contains(&n) {
            return Vec::new();
        }
        let mut out: Vec<Bipartition> = (1..1u32 << n)
            .filter(|m| m & 1 == 0)
            .map(|mask| Bipartition { n: n as u8, mask })
            .collect();
        out.sort_by_key(|m| m.order_key());
        out
    }

    /// Relabels qubit `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.n())?;
        let mut side = 0u32;
        for (q, &p) in perm.iter().enumerate() {
            if self.contains(q) {
                side |= 1 << p;
            }
        }
        Self::new(self.n(), side)
    }
}

fn letters(mask: u32, n: usize) -> String {
    (0..n)
        .filter(|&q| (mask >> q) & 1 == 1)
        .map(|q| (b'A' + q as u8) as char)
        .collect()
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (with_a, without_a) = (self.complement_mask(), self.mask);
        let (first, second) = if without_a.count_ones() < with_a.count_ones() {
            (without_a, with_a)
        } else {
            (with_a, without_a)
        };
        write!(f, "{}|{}", letters(first, self.n()), letters(second, self.n()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_shapes() {
        let c4 = Graph::builtin("C4").unwrap();
        assert_eq!(c4.edges(), vec![(0, 1), (1, 2), (2, 3)]);
        let y5 = Graph::builtin("Y5").unwrap();
        assert_eq!(y5.edges(), vec![(0, 1), (1, 2), (2, 3), (2, 4)]);
        let r5 = Graph::builtin("R5").unwrap();
        assert_eq!(r5.edges().len(), 5);
        let ghz = Graph::builtin("GHZ3").unwrap();
        assert_eq!(ghz.edges(), vec![(0, 1), (0, 2)]);
        assert!(Graph::builtin("Q7").is_err());
        assert!(Graph::builtin("C9").is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
    }

    #[test]
    fn c4_one_bp_partitions() {
        let c4 = Graph::builtin("C4").unwrap();
        let names: Vec<String> = c4.one_bp_partitions().iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["A|BCD", "B|ACD", "C|ABD", "D|ABC", "AB|CD"]);
        let ad = Bipartition::parse(4, "AD|BC").unwrap();
        assert_eq!(c4.cut_rank(&ad).unwrap(), 2);
    }

    #[test]
    fn bipartition_parsing_is_side_agnostic() {
        let a = Bipartition::parse(5, "BC|ADE").unwrap();
        let b = Bipartition::parse(5, "ADE|BC").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "BC|ADE");
        assert!(Bipartition::parse(4, "ABCD").is_err());
        assert!(Bipartition::parse(4, "AB|C").is_err());
        assert!(Bipartition::new(4, 0).is_err());
        assert_eq!(Bipartition::all(4).len(), 7);
        assert_eq!(Bipartition::all(5).len(), 15);
    }

    #[test]
    fn local_complement_is_an_involution() {
        let y5 = Graph::builtin("Y5").unwrap();
        for a in 0..5 {
            let back = y5.local_complement(a).unwrap().local_complement(a).unwrap();
            assert_eq!(back, y5);
        }
    }

    #[test]
    fn star_and_complete_graph_share_an_orbit() {
        let star = Graph::star(4).unwrap();
        let orbit = star.lc_orbit().unwrap();
        assert!(orbit.iter().any(|(g, _)| *g == Graph::complete(4).unwrap()));
    }
}
