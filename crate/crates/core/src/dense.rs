//! Dense complex matrices in the computational basis.
//!
//! This module is deliberately naive: it rebuilds everything from state
//! vectors and Pauli matrices so that it can cross-check the structured
//! algorithms elsewhere in the crate. Qubit 0 is the most significant bit of
//! a computational-basis index.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph, MAX_ORBIT_QUBITS};
use crate::label::BasisLabel;
use crate::pauli::{group_element, PauliString};
use crate::rational::{self, Rational};
use crate::state::GraphDiagonalState;

#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::InvalidOperator("matrix is not square".into()));
            }
            data.extend(row);
        }
        Ok(Self { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of qubits, if the dimension is a power of two.
    pub fn n_qubits(&self) -> Option<usize> {
        self.dim
            .is_power_of_two()
            .then(|| self.dim.trailing_zeros() as usize)
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn add_scaled(&mut self, other: &DenseOperator, factor: f64) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * factor;
        }
    }

    pub fn matmul(&self, other: &DenseOperator) -> DenseOperator {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs_diff(&self, other: &DenseOperator) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| (self.get(r, c) - self.get(c, r).conj()).norm() <= tol)
        })
    }

    fn check_qubits(&self) -> Result<usize> {
        self.n_qubits()
            .ok_or_else(|| Error::InvalidOperator("dimension is not a power of two".into()))
    }
}

/// Computational-basis bit mask for a mask of qubits.
pub fn computational_mask(qubits: u32, n: usize) -> usize {
    (0..n)
        .filter(|q| (qubits >> q) & 1 == 1)
        .fold(0, |acc, q| acc | (1 << (n - 1 - q)))
}

fn check_dense_size(n: usize) -> Result<()> {
    if n > MAX_ORBIT_QUBITS {
        return Err(Error::TooManyQubits {
            n,
            max: MAX_ORBIT_QUBITS,
        });
    }
    Ok(())
}

pub fn pauli_to_dense(p: &PauliString) -> Result<DenseOperator> {
    let n = p.n();
    check_dense_size(n)?;
    let dim = 1usize << n;
    let x = computational_mask(p.x_mask(), n);
    let z = computational_mask(p.z_mask(), n);
    let i_pow = (p.phase() as u32 + (p.x_mask() & p.z_mask()).count_ones()) % 4;
    let base = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ][i_pow as usize];
    let mut m = DenseOperator::zeros(dim);
    for c in 0..dim {
        let sign = if (z & c).count_ones().is_multiple_of(2) { 1.0 } else { -1.0 };
        m.set(c ^ x, c, base * sign);
    }
    Ok(m)
}

/// Amplitudes of `|Γ_k⟩ = Z^k |G⟩`, which are real: `±2^{-n/2}`.
pub fn graph_state_vector(g: &Graph, label: BasisLabel) -> Result<Vec<f64>> {
    check_dense_size(g.n())?;
    if label.n() != g.n() {
        return Err(Error::SizeMismatch(label.n(), g.n()));
    }
    let n = g.n();
    let amp = (g.dim() as f64).sqrt().recip();
    let edges = g.edges();
    Ok((0..g.dim())
        .map(|c| {
            let z: Vec<bool> = (0..n).map(|q| (c >> (n - 1 - q)) & 1 == 1).collect();
            let mut parity = edges.iter().filter(|&&(a, b)| z[a] && z[b]).count();
            parity += (0..n).filter(|&q| z[q] && label.is_minus(q)).count();
            if parity % 2 == 0 {
                amp
            } else {
                -amp
            }
        })
        .collect())
}

/// Columns are the graph-basis vectors, in label order.
pub fn graph_basis(g: &Graph) -> Result<Vec<Vec<f64>>> {
    BasisLabel::all(g.n())
        .map(|k| graph_state_vector(g, k))
        .collect()
}

pub fn state_to_dense(s: &GraphDiagonalState) -> Result<DenseOperator> {
    let basis = graph_basis(s.graph())?;
    let d = s.dim();
    let mut m = DenseOperator::zeros(d);
    for (k, w) in s.weights().iter().enumerate() {
        let w = rational::to_f64(w);
        if w == 0.0 {
            continue;
        }
        let v = &basis[k];
        for r in 0..d {
            for c in 0..d {
                m.data[r * d + c] += Complex64::new(w * v[r] * v[c], 0.0);
            }
        }
    }
    Ok(m)
}

/// Diagonal operator `Σ_k c_k |Γ_k⟩⟨Γ_k|` from floating-point coefficients.
pub fn diagonal_to_dense(g: &Graph, coeffs: &[f64]) -> Result<DenseOperator> {
    let basis = graph_basis(g)?;
    let d = g.dim();
    let mut m = DenseOperator::zeros(d);
    for (k, &w) in coeffs.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let v = &basis[k];
        for r in 0..d {
            for c in 0..d {
                m.data[r * d + c] += Complex64::new(w * v[r] * v[c], 0.0);
            }
        }
    }
    Ok(m)
}

/// Matrix elements `⟨Γ_j| op |Γ_k⟩`.
pub fn in_graph_basis(op: &DenseOperator, g: &Graph) -> Result<DenseOperator> {
    if op.dim() != g.dim() {
        return Err(Error::SizeMismatch(op.dim(), g.dim()));
    }
    let basis = graph_basis(g)?;
    let d = g.dim();
    // op * V, then V^T * (op V); V is real.
    let mut ov = DenseOperator::zeros(d);
    for r in 0..d {
        for k in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in 0..d {
                acc += op.get(r, c) * basis[k][c];
            }
            ov.set(r, k, acc);
        }
    }
    let mut out = DenseOperator::zeros(d);
    for j in 0..d {
        for k in 0..d {
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..d {
                acc += basis[j][r] * ov.get(r, k);
            }
            out.set(j, k, acc);
        }
    }
    Ok(out)
}

/// Transpose on the qubits of the side `m.mask()`.
pub fn partial_transpose(op: &DenseOperator, m: &Bipartition) -> Result<DenseOperator> {
    let n = op.check_qubits()?;
    if n != m.n() {
        return Err(Error::SizeMismatch(n, m.n()));
    }
    let cm = computational_mask(m.mask(), n);
    let d = op.dim();
    let mut out = DenseOperator::zeros(d);
    for r in 0..d {
        for c in 0..d {
            let r2 = (r & !cm) | (c & cm);
            let c2 = (c & !cm) | (r & cm);
            out.set(r2, c2, op.get(r, c));
        }
    }
    Ok(out)
}

/// Reduced operator on the qubits in `keep`, in their original order.
pub fn partial_trace_keep(op: &DenseOperator, keep: u32) -> Result<DenseOperator> {
    let n = op.check_qubits()?;
    let kept: Vec<usize> = (0..n).filter(|q| (keep >> q) & 1 == 1).collect();
    let traced: Vec<usize> = (0..n).filter(|q| (keep >> q) & 1 == 0).collect();
    let place = |bits_kept: usize, bits_traced: usize| -> usize {
        let mut idx = 0;
        for (i, &q) in kept.iter().enumerate() {
            if (bits_kept >> (kept.len() - 1 - i)) & 1 == 1 {
                idx |= 1 << (n - 1 - q);
            }
        }
        for (i, &q) in traced.iter().enumerate() {
            if (bits_traced >> (traced.len() - 1 - i)) & 1 == 1 {
                idx |= 1 << (n - 1 - q);
            }
        }
        idx
    };
    let dk = 1 << kept.len();
    let dt = 1 << traced.len();
    let mut out = DenseOperator::zeros(dk);
    for r in 0..dk {
        for c in 0..dk {
            let mut acc = Complex64::new(0.0, 0.0);
            for t in 0..dt {
                acc += op.get(place(r, t), place(c, t));
            }
            out.set(r, c, acc);
        }
    }
    Ok(out)
}

/// Eigenvalues of a Hermitian operator, ascending.
///
/// Runs cyclic Jacobi on the real symmetric embedding `[[A, -B], [B, A]]` of
/// `A + iB`, whose spectrum is that of the operator with every value doubled.
pub fn eigenvalues_hermitian(op: &DenseOperator) -> Result<Vec<f64>> {
    let scale = op.data.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1.0);
    if !op.is_hermitian(1e-10 * scale) {
        return Err(Error::InvalidOperator("operator is not Hermitian".into()));
    }
    let d = op.dim();
    let m = 2 * d;
    let mut a = vec![0.0; m * m];
    for r in 0..d {
        for c in 0..d {
            let v = op.get(r, c);
            a[r * m + c] = v.re;
            a[(r + d) * m + c + d] = v.re;
            a[(r + d) * m + c] = v.im;
            a[r * m + c + d] = -v.im;
        }
    }
    let mut eig = jacobi_eigenvalues(&mut a, m);
    eig.sort_by(f64::total_cmp);
    Ok(eig.into_iter().step_by(2).collect())
}

fn jacobi_eigenvalues(a: &mut [f64], n: usize) -> Vec<f64> {
    let norm: f64 = a.iter().map(|v| v * v).sum();
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p * n + q] * a[p * n + q];
            }
        }
        if off <= 1e-30 * norm || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = (t * t + 1.0).sqrt().recip();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

pub fn min_eigenvalue(op: &DenseOperator) -> Result<f64> {
    Ok(eigenvalues_hermitian(op)?[0])
}

/// Number of eigenvalues above `tol` in absolute value.
pub fn rank(op: &DenseOperator, tol: f64) -> Result<usize> {
    Ok(eigenvalues_hermitian(op)?
        .iter()
        .filter(|v| v.abs() > tol)
        .count())
}

/// Whether `ρ^{T_M}` has no eigenvalue below `-tol`.
pub fn is_ppt(s: &GraphDiagonalState, m: &Bipartition, tol: f64) -> Result<bool> {
    let pt = partial_transpose(&state_to_dense(s)?, m)?;
    Ok(min_eigenvalue(&pt)? >= -tol)
}

/// Schmidt rank of `|G⟩` across `m`, from the reshaped amplitude matrix.
pub fn schmidt_rank(g: &Graph, m: &Bipartition) -> Result<usize> {
    let n = g.n();
    if m.n() != n {
        return Err(Error::SizeMismatch(m.n(), n));
    }
    let psi = graph_state_vector(g, BasisLabel::zero(n))?;
    let cm = computational_mask(m.mask(), n);
    let rows_bits: Vec<usize> = (0..g.dim()).filter(|c| c & !cm == 0).collect();
    let cols_bits: Vec<usize> = (0..g.dim()).filter(|c| c & cm == 0).collect();
    let mut mat: Vec<Vec<f64>> = rows_bits
        .iter()
        .map(|&r| cols_bits.iter().map(|&c| psi[r | c]).collect())
        .collect();
    Ok(real_rank(&mut mat, 1e-9))
}

fn real_rank(mat: &mut [Vec<f64>], tol: f64) -> usize {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let pivot = (rank..rows).max_by(|&a, &b| mat[a][c].abs().total_cmp(&mat[b][c].abs()));
        let Some(p) = pivot else { break };
        if mat[p][c].abs() <= tol {
            continue;
        }
        mat.swap(rank, p);
        for r in 0..rows {
            if r != rank {
                let f = mat[r][c] / mat[rank][c];
                if f != 0.0 {
                    for k in c..cols {
                        mat[r][k] -= f * mat[rank][k];
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Result of projecting an arbitrary density matrix onto the graph-diagonal states.
#[derive(Clone, Debug)]
pub struct Depolarized {
    /// Fidelities `⟨Γ_k|ρ|Γ_k⟩` in label order.
    pub fidelities: Vec<f64>,
    /// The exact state, when every fidelity is recognisably a small-denominator rational.
    pub exact: Option<GraphDiagonalState>,
}

/// Twirls `rho` over the stabilizer group, computing each weight from the
/// Pauli expectations `λ_k = 2^{-n} Σ_S χ_k(S) Tr(ρ g_S)`.
pub fn depolarize(rho: &DenseOperator, g: &Graph) -> Result<Depolarized> {
    let n = rho.check_qubits()?;
    if n != g.n() {
        return Err(Error::SizeMismatch(n, g.n()));
    }
    check_dense_size(n)?;
    if !rho.is_hermitian(1e-9) {
        return Err(Error::InvalidOperator("density matrix is not Hermitian".into()));
    }
    let tr = rho.trace();
    if (tr - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(Error::InvalidOperator(format!("trace {tr} is not 1")));
    }
    if min_eigenvalue(rho)? < -1e-9 {
        return Err(Error::InvalidOperator("density matrix is not positive".into()));
    }
    let d = g.dim();
    let mut expectations = Vec::with_capacity(d);
    for s in 0..d as u32 {
        let p = pauli_to_dense(&group_element(g, s)?)?;
        expectations.push(rho.matmul(&p).trace().re);
    }
    let fidelities: Vec<f64> = (0..d)
        .map(|k| {
            expectations
                .iter()
                .enumerate()
                .map(|(s, e)| if (k & s).count_ones() % 2 == 0 { *e } else { -*e })
                .sum::<f64>()
                / d as f64
        })
        .collect();
    let candidates: Vec<Rational> = fidelities
        .iter()
        .map(|&f| rational::best_rational(f, 1_000_000))
        .collect();
    let close = candidates
        .iter()
        .zip(&fidelities)
        .all(|(r, f)| (rational::to_f64(r) - f).abs() < 1e-12);
    let exact = if close {
        GraphDiagonalState::new(g.clone(), candidates).ok()
    } else {
        None
    };
    Ok(Depolarized { fidelities, exact })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::stabilizer_generator;
    use crate::rational::rat;

    #[test]
    fn graph_states_are_stabilized() {
        let c4 = Graph::builtin("C4").unwrap();
        for k in BasisLabel::all(4) {
            let v = graph_state_vector(&c4, k).unwrap();
            for q in 0..4 {
                let p = pauli_to_dense(&stabilizer_generator(&c4, q).unwrap()).unwrap();
                let sign = k.sign(q) as f64;
                for r in 0..16 {
                    let pv: Complex64 = (0..16).map(|c| p.get(r, c) * v[c]).sum();
                    assert!((pv.re - sign * v[r]).abs() < 1e-12 && pv.im.abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn y_matrix_convention() {
        let y = pauli_to_dense(&PauliString::parse("Y").unwrap()).unwrap();
        assert_eq!(y.get(0, 1), Complex64::new(0.0, -1.0));
        assert_eq!(y.get(1, 0), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn eigenvalues_of_pauli_sum() {
        let mut m = pauli_to_dense(&PauliString::parse("XY").unwrap()).unwrap();
        m.add_scaled(&pauli_to_dense(&PauliString::parse("Z1").unwrap()).unwrap(), 0.5);
        let e = eigenvalues_hermitian(&m).unwrap();
        let r = (1.25f64).sqrt();
        let expected = [-r, -r, r, r];
        for (a, b) in e.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{e:?}");
        }
    }

    #[test]
    fn bell_state_is_npt() {
        let bell = Graph::builtin("C2").unwrap();
        let s = GraphDiagonalState::pure(bell.clone(), BasisLabel::zero(2)).unwrap();
        let m = Bipartition::new(2, 0b10).unwrap();
        let pt = partial_transpose(&state_to_dense(&s).unwrap(), &m).unwrap();
        assert!((min_eigenvalue(&pt).unwrap() + 0.5).abs() < 1e-12);
        let mixed = GraphDiagonalState::white_noise(bell, &rat(1, 3)).unwrap();
        assert!(is_ppt(&mixed, &m, 1e-12).unwrap());
    }

    #[test]
    fn schmidt_rank_matches_cut_rank() {
        let c4 = Graph::builtin("C4").unwrap();
        for m in Bipartition::all(4) {
            let r = c4.cut_rank(&m).unwrap();
            assert_eq!(schmidt_rank(&c4, &m).unwrap(), 1 << r);
        }
    }

    #[test]
    fn partial_trace_of_graph_state_is_maximally_mixed() {
        let c4 = Graph::builtin("C4").unwrap();
        let s = GraphDiagonalState::pure(c4, BasisLabel::zero(4)).unwrap();
        let rho = state_to_dense(&s).unwrap();
        let reduced = partial_trace_keep(&rho, 0b0001).unwrap();
        assert!(reduced.max_abs_diff(&{
            let mut id = DenseOperator::identity(2);
            id.data.iter_mut().for_each(|v| *v *= 0.5);
            id
        }) < 1e-12);
    }

    #[test]
    fn depolarize_rejects_non_hermitian() {
        let c2 = Graph::builtin("C2").unwrap();
        let mut m = DenseOperator::identity(4);
        m.data.iter_mut().for_each(|v| *v *= 0.25);
        m.set(0, 1, Complex64::new(0.1, 0.0));
        assert!(depolarize(&m, &c2).is_err());
    }
}
