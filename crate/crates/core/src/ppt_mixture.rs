//! Decides whether a graph-diagonal state is a mixture of states that each
//! have a positive partial transpose across some bipartition.
//!
//! The problem `λ = Σ_M x^(M)`, `x^(M) ≥ 0`, `T^(M) x^(M) ≥ 0` is solved by
//! exact column generation. The master problem keeps one equality row per
//! label and minimises the mass of artificial variables. Columns are
//! normalized extreme rays of the per-coset cones, priced from enumerated
//! 0/1 rays where available and from small exact LPs otherwise. When no
//! column improves a positive objective, the final duals `y` satisfy
//! `y·λ > 0` and `y·x ≤ 0` on every cone, so `-y` is a diagonal witness.

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::classifier::{
    CertificateKind, ComponentCertificate, Decomposition, Term, Verdict,
};
use crate::classifier::canonical::{find_family_map, Family};
use crate::cone::{self, Rays};
use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::label::BasisLabel;
use crate::rational::{self, Rational};
use crate::simplex::{self, LinearProgram, LpOutcome};
use crate::state::GraphDiagonalState;
use crate::transfer::TransferMatrix;
use crate::witness::{self, DiagonalWitness};

/// `λ = Σ_M x^(M)` with each part PPT across its bipartition.
#[derive(Clone, Debug, PartialEq)]
pub struct PptDecomposition {
    pub parts: Vec<(Bipartition, Vec<Rational>)>,
}

/// Duals `y` with `y·λ > 0` and `y·x ≤ 0` for every `x` that is PPT across
/// one of `partitions`.
#[derive(Clone, Debug, PartialEq)]
pub struct FarkasCertificate {
    pub dual: Vec<Rational>,
    pub partitions: Vec<Bipartition>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpCertificate {
    Feasible(PptDecomposition),
    Infeasible(FarkasCertificate),
}

impl LpCertificate {
    pub fn is_feasible(&self) -> bool {
        matches!(self, LpCertificate::Feasible(_))
    }
}

struct Block {
    partition: usize,
    labels: Vec<usize>,
    rays: Option<Rays>,
}

struct Column {
    partition: usize,
    entries: Vec<(usize, Rational)>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Var {
    Artificial(usize),
    Column(usize),
}

struct Master {
    dim: usize,
    basis: Vec<Var>,
    binv: Vec<Vec<Rational>>,
    values: Vec<Rational>,
    columns: Vec<Column>,
}

impl Master {
    fn new(target: &[Rational]) -> Self {
        let dim = target.len();
        let binv = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { rational::one() } else { rational::zero() })
                    .collect()
            })
            .collect();
        Self {
            dim,
            basis: (0..dim).map(Var::Artificial).collect(),
            binv,
            values: target.to_vec(),
            columns: Vec::new(),
        }
    }

    fn objective(&self) -> Rational {
        self.basis
            .iter()
            .zip(&self.values)
            .filter(|(v, _)| matches!(v, Var::Artificial(_)))
            .fold(rational::zero(), |acc, (_, x)| acc + x)
    }

    /// Phase-one duals `y = c_B B^{-1}`.
    fn duals(&self) -> Vec<Rational> {
        let mut y = vec![rational::zero(); self.dim];
        for (i, v) in self.basis.iter().enumerate() {
            if let Var::Artificial(_) = v {
                for (yj, b) in y.iter_mut().zip(&self.binv[i]) {
                    if !b.is_zero() {
                        *yj += b;
                    }
                }
            }
        }
        y
    }

    fn enter(&mut self, column: Column) -> Result<()> {
        let d: Vec<Rational> = (0..self.dim)
            .map(|i| {
                column
                    .entries
                    .iter()
                    .fold(rational::zero(), |acc, (k, a)| {
                        let b = &self.binv[i][*k];
                        if b.is_zero() {
                            acc
                        } else {
                            acc + b * a
                        }
                    })
            })
            .collect();
        let mut best: Option<(usize, Rational)> = None;
        for (i, di) in d.iter().enumerate() {
            if !di.is_positive() {
                continue;
            }
            let ratio = &self.values[i] / di;
            let better = match &best {
                None => true,
                Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
            };
            if better {
                best = Some((i, ratio));
            }
        }
        let (p, _) = best.ok_or_else(|| Error::Lp("unbounded phase-one direction".into()))?;
        let piv = d[p].clone();
        for v in self.binv[p].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        self.values[p] /= &piv;
        let prow = self.binv[p].clone();
        let pval = self.values[p].clone();
        for i in 0..self.dim {
            if i == p || d[i].is_zero() {
                continue;
            }
            for (v, pv) in self.binv[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &d[i] * pv;
                }
            }
            self.values[i] -= &d[i] * &pval;
        }
        self.columns.push(column);
        self.basis[p] = Var::Column(self.columns.len() - 1);
        Ok(())
    }
}

fn indicator_column(partition: usize, labels: &[usize], mask: u32) -> Column {
    let size = rational::int(mask.count_ones() as i64);
    let weight = rational::one() / size;
    Column {
        partition,
        entries: labels
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, &k)| (k, weight.clone()))
            .collect(),
    }
}

fn column_value(column: &Column, y: &[Rational]) -> Rational {
    column
        .entries
        .iter()
        .fold(rational::zero(), |acc, (k, a)| acc + &y[*k] * a)
}

/// Partitions in pricing order: cut rank one first, then canonical order.
fn pricing_order(g: &Graph, partitions: &[Bipartition]) -> Result<Vec<(Bipartition, TransferMatrix)>> {
    let mut out: Vec<(Bipartition, TransferMatrix)> = partitions
        .iter()
        .map(|m| Ok((*m, TransferMatrix::new(g, m)?)))
        .collect::<Result<_>>()?;
    out.sort_by_key(|(_, t)| t.cut_rank() != 1);
    Ok(out)
}

const ITERATION_LIMIT: usize = 200_000;

/// Solves the PPT-mixture problem over `partitions`, or over every
/// bipartition when `None`.
pub fn is_ppt_mixture(
    s: &GraphDiagonalState,
    partitions: Option<&[Bipartition]>,
) -> Result<LpCertificate> {
    let g = s.graph();
    let all = Bipartition::all(g.n());
    let partitions = partitions.unwrap_or(&all);
    if partitions.is_empty() {
        return Err(Error::Precondition("no bipartitions to mix over".into()));
    }
    if let Some(m) = partitions.iter().find(|m| m.n() != g.n()) {
        return Err(Error::SizeMismatch(m.n(), g.n()));
    }
    let ordered = pricing_order(g, partitions)?;
    let mut blocks = Vec::new();
    for (pi, (_, t)) in ordered.iter().enumerate() {
        let rays = cone::zero_one_rays(&t.block_pattern());
        for coset in t.cosets() {
            blocks.push(Block {
                partition: pi,
                labels: coset.clone(),
                rays: rays.clone(),
            });
        }
    }
    let patterns: Vec<Vec<Vec<Rational>>> =
        ordered.iter().map(|(_, t)| t.block_pattern()).collect();

    let mut master = Master::new(s.weights());
    for _ in 0..ITERATION_LIMIT {
        if master.objective().is_zero() {
            return Ok(LpCertificate::Feasible(extract(&master, &ordered, g.dim())));
        }
        let y = master.duals();
        let column = match price_rays(&blocks, &y) {
            Some(c) => Some(c),
            None => match price_float(&blocks, &patterns, &y) {
                Ok(c) => Some(c),
                Err(hints) => price_subproblems(&blocks, &patterns, &y, &hints)?,
            },
        };
        match column {
            Some(c) => master.enter(c)?,
            None => {
                return Ok(LpCertificate::Infeasible(FarkasCertificate {
                    dual: y,
                    partitions: partitions.to_vec(),
                }))
            }
        }
    }
    Err(Error::Lp("column generation iteration limit reached".into()))
}

/// Best enumerated ray by floating-point value, confirmed exactly; falls back
/// to an exact scan of the rays that could still be improving.
fn price_rays(blocks: &[Block], y: &[Rational]) -> Option<Column> {
    let yf: Vec<f64> = y.iter().map(rational::to_f64).collect();
    let scale = yf.iter().fold(1.0f64, |a, v| a.max(v.abs()));
    let mut best: Option<(f64, usize, u32)> = None;
    let mut near: Vec<(usize, u32)> = Vec::new();
    for (bi, block) in blocks.iter().enumerate() {
        let Some(rays) = &block.rays else { continue };
        let local: Vec<f64> = block.labels.iter().map(|&k| yf[k]).collect();
        let top = local.iter().fold(f64::NEG_INFINITY, |a, v| a.max(*v));
        if top < -1e-9 * scale {
            continue;
        }
        for &mask in rays.iter() {
            let mut sum = 0.0;
            let mut bits = mask;
            while bits != 0 {
                sum += local[bits.trailing_zeros() as usize];
                bits &= bits - 1;
            }
            let value = sum / mask.count_ones() as f64;
            if value > -1e-9 * scale {
                near.push((bi, mask));
            }
            if best.is_none_or(|(v, _, _)| value > v) {
                best = Some((value, bi, mask));
            }
        }
    }
    if let Some((v, bi, mask)) = best {
        if v > 1e-9 * scale {
            let c = indicator_column(blocks[bi].partition, &blocks[bi].labels, mask);
            if column_value(&c, y).is_positive() {
                return Some(c);
            }
        }
    }
    near.into_iter().find_map(|(bi, mask)| {
        let c = indicator_column(blocks[bi].partition, &blocks[bi].labels, mask);
        column_value(&c, y).is_positive().then_some(c)
    })
}

/// Largest denominator kept when rounding a floating-point pricing solution.
const ROUNDING_DENOM: i64 = 1 << 24;

/// Improving column for a block without rays, from a floating-point solve of
/// its pricing problem. The rounded solution is pulled towards the uniform
/// vector, which is strictly inside every block cone, until it is exactly
/// feasible. Failing that, returns per-block basis hints for the exact solve.
fn price_float(
    blocks: &[Block],
    patterns: &[Vec<Vec<Rational>>],
    y: &[Rational],
) -> std::result::Result<Column, Vec<Vec<usize>>> {
    use minilp::{ComparisonOp, OptimizationDirection, Problem};
    let mut hints = vec![Vec::new(); blocks.len()];
    for (bi, block) in blocks.iter().enumerate().filter(|(_, b)| b.rays.is_none()) {
        let local: Vec<Rational> = block.labels.iter().map(|&k| y[k].clone()).collect();
        if !local.iter().any(|v| v.is_positive()) {
            continue;
        }
        let pattern = &patterns[block.partition];
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let vars: Vec<_> = local
            .iter()
            .map(|v| lp.add_var(rational::to_f64(v), (0.0, f64::INFINITY)))
            .collect();
        for row in pattern {
            let terms: Vec<_> = vars
                .iter()
                .zip(row)
                .filter(|(_, a)| !a.is_zero())
                .map(|(&v, a)| (v, rational::to_f64(a)))
                .collect();
            lp.add_constraint(&terms[..], ComparisonOp::Ge, 0.0);
        }
        let ones: Vec<_> = vars.iter().map(|&v| (v, 1.0)).collect();
        lp.add_constraint(&ones[..], ComparisonOp::Eq, 1.0);
        let Ok(solution) = lp.solve() else { continue };
        let xf: Vec<f64> = vars.iter().map(|&v| solution[v]).collect();
        hints[bi] = basis_hint(pattern, &xf);
        if solution.objective() <= 0.0 {
            continue;
        }
        let rounded: Vec<Rational> = vars
            .iter()
            .map(|&v| rational::best_rational(solution[v].max(0.0), ROUNDING_DENOM))
            .collect();
        let Some(x) = pull_inside(pattern, rounded) else { continue };
        if rational::dot(&x, &local).is_positive() {
            let entries = block
                .labels
                .iter()
                .zip(x)
                .filter(|(_, v)| !v.is_zero())
                .map(|(&k, v)| (k, v))
                .collect();
            return Ok(Column {
                partition: block.partition,
                entries,
            });
        }
    }
    Err(hints)
}

/// Columns of the exact pricing problem (block weights, then slacks of
/// `B x ≥ 0`) that are clearly positive in a floating-point solution.
fn basis_hint(pattern: &[Vec<Rational>], x: &[f64]) -> Vec<usize> {
    const EPS: f64 = 1e-9;
    let m = x.len();
    let mut hint: Vec<usize> = (0..m).filter(|&i| x[i] > EPS).collect();
    for (j, row) in pattern.iter().enumerate() {
        let slack: f64 = row.iter().zip(x).map(|(a, v)| rational::to_f64(a) * v).sum();
        if slack > EPS {
            hint.push(m + j);
        }
    }
    hint
}

/// Smallest mixture `(1 - t) x + t u` with the uniform `u` satisfying
/// `B z ≥ 0`, normalized to unit sum.
fn pull_inside(pattern: &[Vec<Rational>], x: Vec<Rational>) -> Option<Vec<Rational>> {
    let m = x.len();
    let u = rational::rat(1, m as i64);
    let mut t = rational::zero();
    for row in pattern {
        let cu: Rational = row.iter().map(|a| a * &u).sum();
        if !cu.is_positive() {
            return None;
        }
        let cx = rational::dot(row, &x);
        if cx.is_negative() {
            let need = -&cx / (&cu - &cx);
            if need > t {
                t = need;
            }
        }
    }
    let keep = rational::one() - &t;
    let z: Vec<Rational> = x.iter().map(|v| v * &keep + &t * &u).collect();
    let total = rational::sum(&z);
    if !total.is_positive() {
        return None;
    }
    Some(z.into_iter().map(|v| v / &total).collect())
}

/// Exact `max y·x` over `{x ≥ 0 : B x ≥ 0, Σx = 1}` for blocks without rays.
fn price_subproblems(
    blocks: &[Block],
    patterns: &[Vec<Vec<Rational>>],
    y: &[Rational],
    hints: &[Vec<usize>],
) -> Result<Option<Column>> {
    for (bi, block) in blocks.iter().enumerate().filter(|(_, b)| b.rays.is_none()) {
        let local: Vec<Rational> = block.labels.iter().map(|&k| y[k].clone()).collect();
        if !local.iter().any(|v| v.is_positive()) {
            continue;
        }
        let pattern = &patterns[block.partition];
        let m = local.len();
        let mut a: Vec<Vec<Rational>> = (0..m)
            .map(|j| {
                let mut row = pattern[j].clone();
                row.extend((0..m).map(|i| if i == j { -rational::one() } else { rational::zero() }));
                row
            })
            .collect();
        let mut total = vec![rational::one(); m];
        total.extend((0..m).map(|_| rational::zero()));
        a.push(total);
        let mut b = vec![rational::zero(); m];
        b.push(rational::one());
        let mut c: Vec<Rational> = local.iter().map(|v| -v).collect();
        c.extend((0..m).map(|_| rational::zero()));
        match simplex::solve_with_hint(&LinearProgram { a, b, c }, &hints[bi])? {
            LpOutcome::Optimal { x, value, .. } if value.is_negative() => {
                let entries = block
                    .labels
                    .iter()
                    .zip(&x[..m])
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(&k, v)| (k, v.clone()))
                    .collect();
                return Ok(Some(Column {
                    partition: block.partition,
                    entries,
                }));
            }
            LpOutcome::Optimal { .. } => {}
            other => return Err(Error::Lp(format!("pricing subproblem failed: {other:?}"))),
        }
    }
    Ok(None)
}

fn extract(master: &Master, ordered: &[(Bipartition, TransferMatrix)], dim: usize) -> PptDecomposition {
    let mut parts: Vec<(Bipartition, Vec<Rational>)> = ordered
        .iter()
        .map(|(m, _)| (*m, vec![rational::zero(); dim]))
        .collect();
    for (var, value) in master.basis.iter().zip(&master.values) {
        if let Var::Column(c) = var {
            if value.is_zero() {
                continue;
            }
            let col = &master.columns[*c];
            for (k, a) in &col.entries {
                parts[col.partition].1[*k] += value * a;
            }
        }
    }
    parts.retain(|(_, x)| x.iter().any(|v| !v.is_zero()));
    PptDecomposition { parts }
}

/// Exact re-check of a certificate against the state it was computed for.
pub fn verify_certificate(cert: &LpCertificate, s: &GraphDiagonalState) -> Result<()> {
    let g = s.graph();
    match cert {
        LpCertificate::Feasible(dec) => {
            let mut total = vec![rational::zero(); g.dim()];
            for (m, x) in &dec.parts {
                if x.len() != g.dim() {
                    return Err(Error::SizeMismatch(x.len(), g.dim()));
                }
                if x.iter().any(|v| v.is_negative()) {
                    return Err(Error::Certificate(format!("negative weight in part {m}")));
                }
                if !TransferMatrix::new(g, m)?.is_ppt(x)? {
                    return Err(Error::Certificate(format!("part is not PPT across {m}")));
                }
                for (t, v) in total.iter_mut().zip(x) {
                    *t += v;
                }
            }
            if total != s.weights() {
                return Err(Error::Certificate("parts do not sum to the state".into()));
            }
            Ok(())
        }
        LpCertificate::Infeasible(f) => {
            let w = dual_witness(f, g)?;
            if !w.evaluate(s)?.is_negative() {
                return Err(Error::Certificate("dual does not separate the state".into()));
            }
            let report = witness::validate_witness_on(&w, &f.partitions)?;
            if !report.is_valid() {
                return Err(Error::Certificate(format!(
                    "dual is negative on PPT states across {:?}",
                    report.failures().iter().map(|m| m.to_string()).collect::<Vec<_>>()
                )));
            }
            Ok(())
        }
    }
}

/// The witness `-y`, rescaled so its largest coefficient magnitude is one.
pub fn dual_witness(cert: &FarkasCertificate, g: &Graph) -> Result<DiagonalWitness> {
    if cert.dual.len() != g.dim() {
        return Err(Error::SizeMismatch(cert.dual.len(), g.dim()));
    }
    let max = cert
        .dual
        .iter()
        .map(|v| v.abs())
        .max()
        .filter(|v| !v.is_zero())
        .ok_or_else(|| Error::Certificate("zero dual vector".into()))?;
    let coeffs = cert.dual.iter().map(|v| -v / &max).collect();
    DiagonalWitness::new(g.clone(), coeffs, "LP dual")
}

/// The full (uncompressed) feasibility problem in CPLEX LP format.
/// Weights that are not finite decimals are written to 17 significant digits.
pub fn lp_file(s: &GraphDiagonalState, partitions: &[Bipartition]) -> Result<String> {
    let g = s.graph();
    let d = g.dim();
    let name = |m: &Bipartition, k: usize| format!("x_{}_{}", m.mask(), k);
    let mut out = String::new();
    writeln!(out, "\\ PPT-mixture feasibility, {} qubits, {} bipartitions", g.n(), partitions.len()).ok();
    for (k, w) in s.weights().iter().enumerate() {
        writeln!(out, "\\ lambda {} = {}", BasisLabel::new(g.n(), k as u32)?, w).ok();
    }
    out.push_str("Minimize\n obj: 0\nSubject To\n");
    for (k, w) in s.weights().iter().enumerate() {
        let vars: Vec<String> = partitions.iter().map(|m| name(m, k)).collect();
        writeln!(out, " sum_{k}: {} = {:.17}", vars.join(" + "), rational::to_f64(w)).ok();
    }
    for m in partitions {
        let t = TransferMatrix::new(g, m)?;
        for j in 0..d {
            let terms: Vec<String> = t
                .shifts()
                .iter()
                .map(|(v, f)| format!("{:+} {}", rational::to_f64(f), name(m, j ^ v)))
                .collect();
            writeln!(out, " ppt_{}_{j}: {} >= 0", m.mask(), terms.join(" ")).ok();
        }
    }
    out.push_str("End\n");
    Ok(out)
}

/// Whether some local complementation sequence turns a qubit on the
/// three-qubit side of a 2|3 split of five qubits into a leaf whose only
/// neighbour is on the same side, so that it can be decoupled locally.
/// Returns the shortest such sequence.
pub fn lemma9_applicable(g: &Graph, m: &Bipartition) -> Result<Option<Vec<usize>>> {
    if g.n() != 5 || m.n() != 5 || m.smaller_side_len() != 2 {
        return Err(Error::Precondition(
            "requires a five-qubit graph and a 2|3 bipartition".into(),
        ));
    }
    let big = if m.mask().count_ones() == 3 {
        m.mask()
    } else {
        m.complement_mask()
    };
    for (h, path) in g.lc_orbit()? {
        let hit = (0..5)
            .filter(|q| (big >> q) & 1 == 1)
            .any(|q| h.degree(q) == 1 && h.neighbours(q) & big != 0);
        if hit {
            return Ok(Some(path));
        }
    }
    Ok(None)
}

/// Four-qubit cluster-diagonal state with weight 1/6 on six labels. It is
/// PPT across AD|BC yet entangled across that split, while still biseparable.
pub fn counterexample_state() -> GraphDiagonalState {
    let g = Graph::path(4).expect("valid graph");
    let entries: Vec<(BasisLabel, Rational)> = ["++--", "-++-", "---+", "+-+-", "+---", "+--+"]
        .iter()
        .map(|l| (BasisLabel::parse(l).expect("valid label"), rational::rat(1, 6)))
        .collect();
    GraphDiagonalState::from_labels(g, &entries).expect("normalized")
}

/// Complete decision for graphs equivalent to `Y_N` (five to eight qubits),
/// where PPT mixtures over the cut-rank-one bipartitions are exactly the
/// biseparable states.
pub fn classify_yn(s: &GraphDiagonalState) -> Result<Verdict> {
    let map = find_family_map(s.graph())?
        .filter(|m| matches!(m.family, Family::YGraph(_)))
        .ok_or_else(|| Error::UnsupportedGraph("not equivalent to a Y graph".into()))?;
    let canonical = map.to_canonical(s)?;
    let verdict = classify_yn_canonical(&canonical)?;
    map.verdict_from_canonical(verdict, s)
}

fn classify_yn_canonical(s: &GraphDiagonalState) -> Result<Verdict> {
    let g = s.graph();
    let one_bp = g.one_bp_partitions();
    match is_ppt_mixture(s, Some(&one_bp))? {
        LpCertificate::Feasible(dec) => {
            let terms = dec
                .parts
                .into_iter()
                .map(|(m, x)| {
                    let weight = rational::sum(&x);
                    let component = GraphDiagonalState::unnormalized(g.clone(), x)?.normalized()?;
                    Ok(Term {
                        weight,
                        component,
                        certificate: ComponentCertificate {
                            kind: CertificateKind::Explicit,
                            partition: m,
                        },
                    })
                })
                .collect::<Result<_>>()?;
            Ok(Verdict::Biseparable {
                decomposition: Decomposition { terms },
            })
        }
        LpCertificate::Infeasible(_) => match is_ppt_mixture(s, None)? {
            LpCertificate::Infeasible(f) => {
                let witness = dual_witness(&f, g)?;
                let value = witness.evaluate(s)?;
                Ok(Verdict::Gme { witness, value })
            }
            LpCertificate::Feasible(dec) => Ok(Verdict::Inconclusive {
                reason: "PPT mixture over all bipartitions but not over the cut-rank-one ones"
                    .into(),
                ppt_mixture: Some(dec),
            }),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn maximally_mixed_is_feasible() {
        let c4 = Graph::builtin("C4").unwrap();
        let s = GraphDiagonalState::maximally_mixed(c4);
        let cert = is_ppt_mixture(&s, None).unwrap();
        assert!(cert.is_feasible());
        verify_certificate(&cert, &s).unwrap();
    }

    #[test]
    fn pure_graph_state_is_infeasible() {
        let c4 = Graph::builtin("C4").unwrap();
        let s = GraphDiagonalState::pure(c4, BasisLabel::zero(4)).unwrap();
        let cert = is_ppt_mixture(&s, None).unwrap();
        assert!(!cert.is_feasible());
        verify_certificate(&cert, &s).unwrap();
    }

    #[test]
    fn c4_white_noise_threshold() {
        let c4 = Graph::builtin("C4").unwrap();
        let at = GraphDiagonalState::white_noise(c4.clone(), &rat(5, 13)).unwrap();
        assert!(is_ppt_mixture(&at, None).unwrap().is_feasible());
        let above = GraphDiagonalState::white_noise(c4, &(rat(5, 13) + rat(1, 1_000_000))).unwrap();
        assert!(!is_ppt_mixture(&above, None).unwrap().is_feasible());
    }

    #[test]
    fn lemma9_examples() {
        let y5 = Graph::builtin("Y5").unwrap();
        let bc = Bipartition::parse(5, "BC|ADE").unwrap();
        assert!(lemma9_applicable(&y5, &bc).unwrap().is_some());
        let c5 = Graph::builtin("C5").unwrap();
        let bd = Bipartition::parse(5, "BD|ACE").unwrap();
        assert!(lemma9_applicable(&c5, &bd).unwrap().is_none());
        let a = Bipartition::parse(5, "A|BCDE").unwrap();
        assert!(lemma9_applicable(&y5, &a).is_err());
    }

    #[test]
    fn lp_file_mentions_every_constraint() {
        let c4 = Graph::builtin("C4").unwrap();
        let s = GraphDiagonalState::maximally_mixed(c4);
        let text = lp_file(&s, &Bipartition::all(4)).unwrap();
        assert_eq!(text.matches(" sum_").count(), 16);
        assert_eq!(text.matches(" ppt_").count(), 16 * 7);
    }
}
