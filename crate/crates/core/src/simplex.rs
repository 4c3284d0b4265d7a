//! Exact two-phase simplex with Bland's rule on a dense rational tableau.
//!
//! Solves `min c·x` subject to `A x = b`, `x ≥ 0`. Meant for the small
//! per-block problems of this crate, where exactness matters more than speed.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    /// Optimal primal vertex, its value, and duals `y` with `c - Aᵀy ≥ 0`.
    Optimal {
        x: Vec<Rational>,
        value: Rational,
        dual: Vec<Rational>,
    },
    /// Farkas vector `y` with `yᵀA ≤ 0` and `yᵀb > 0`.
    Infeasible { farkas: Vec<Rational> },
    /// Feasible direction `d ≥ 0` with `A d = 0` and `c·d < 0`.
    Unbounded { ray: Vec<Rational> },
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    n: usize,
}

impl Tableau {
    fn pivot(&mut self, p: usize, q: usize) {
        let piv = self.rows[p][q].clone();
        for v in self.rows[p].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        self.rhs[p] /= &piv;
        let prow = self.rows[p].clone();
        let prhs = self.rhs[p].clone();
        for i in 0..self.rows.len() {
            if i == p || self.rows[i][q].is_zero() {
                continue;
            }
            let f = self.rows[i][q].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        let f = self.reduced[q].clone();
        if !f.is_zero() {
            for (v, pv) in self.reduced.iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[p] = q;
    }

    fn set_costs(&mut self, costs: &[Rational]) {
        self.reduced = costs.to_vec();
        for (i, &bv) in self.basis.iter().enumerate() {
            let cb = &costs[bv];
            if cb.is_zero() {
                continue;
            }
            for (r, v) in self.reduced.iter_mut().zip(&self.rows[i]) {
                if !v.is_zero() {
                    *r -= cb * v;
                }
            }
        }
    }

    /// Runs Bland's rule over columns `< allowed`. Returns the unbounded column, if any.
    fn optimize(&mut self, allowed: usize) -> Result<Option<usize>> {
        let limit = 50_000;
        for _ in 0..limit {
            let Some(q) = (0..allowed).find(|&j| self.reduced[j].is_negative()) else {
                return Ok(None);
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Ok(Some(q)),
                Some((p, _)) => self.pivot(p, q),
            }
        }
        Err(Error::Lp("simplex iteration limit reached".into()))
    }

    /// Pivots the hinted columns into rows held by artificial variables.
    /// Keeps the result only if the basic solution stays nonnegative.
    fn crash(&mut self, hint: &[usize]) {
        let saved = (self.rows.clone(), self.rhs.clone(), self.basis.clone());
        self.reduced = vec![rational::zero(); self.rows[0].len()];
        for &q in hint {
            if q >= self.n || self.basis.contains(&q) {
                continue;
            }
            let row = (0..self.rows.len())
                .find(|&i| self.basis[i] >= self.n && !self.rows[i][q].is_zero());
            if let Some(p) = row {
                self.pivot(p, q);
            }
        }
        if self.rhs.iter().any(|v| v.is_negative()) {
            (self.rows, self.rhs, self.basis) = saved;
        }
    }

    fn primal(&self) -> Vec<Rational> {
        let mut x = vec![rational::zero(); self.n];
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < self.n {
                x[bv] = self.rhs[i].clone();
            }
        }
        x
    }
}

pub fn solve(lp: &LinearProgram) -> Result<LpOutcome> {
    solve_with_hint(lp, &[])
}

/// As [`solve`], warm-started from a floating-point solve of the same program.
pub fn solve_warm(lp: &LinearProgram) -> Result<LpOutcome> {
    solve_with_hint(lp, &float_support(lp))
}

/// Columns clearly positive in a floating-point optimum, or none if the float solve fails.
fn float_support(lp: &LinearProgram) -> Vec<usize> {
    use minilp::{ComparisonOp, OptimizationDirection, Problem};
    let mut p = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = lp
        .c
        .iter()
        .map(|c| p.add_var(rational::to_f64(c), (0.0, f64::INFINITY)))
        .collect();
    for (row, b) in lp.a.iter().zip(&lp.b) {
        let terms: Vec<_> = vars
            .iter()
            .zip(row)
            .filter(|(_, a)| !a.is_zero())
            .map(|(&v, a)| (v, rational::to_f64(a)))
            .collect();
        p.add_constraint(&terms[..], ComparisonOp::Eq, rational::to_f64(b));
    }
    match p.solve() {
        Ok(solution) => (0..vars.len()).filter(|&j| solution[vars[j]] > 1e-9).collect(),
        Err(_) => Vec::new(),
    }
}

/// As [`solve`], first pivoting `hint` (columns expected in an optimal basis,
/// for instance from a floating-point solve) into the starting basis.
pub fn solve_with_hint(lp: &LinearProgram, hint: &[usize]) -> Result<LpOutcome> {
    let m = lp.b.len();
    let n = lp.c.len();
    if lp.a.len() != m || lp.a.iter().any(|r| r.len() != n) {
        return Err(Error::Lp("constraint matrix has the wrong shape".into()));
    }
    let signs: Vec<bool> = lp.b.iter().map(|v| v.is_negative()).collect();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rational> = if signs[i] {
            lp.a[i].iter().map(|v| -v).collect()
        } else {
            lp.a[i].clone()
        };
        row.extend((0..m).map(|j| if i == j { rational::one() } else { rational::zero() }));
        rows.push(row);
        rhs.push(if signs[i] { -&lp.b[i] } else { lp.b[i].clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
        reduced: Vec::new(),
        n,
    };
    if !hint.is_empty() && m > 0 {
        t.crash(hint);
    }

    let phase1: Vec<Rational> = (0..n + m)
        .map(|j| if j < n { rational::zero() } else { rational::one() })
        .collect();
    t.set_costs(&phase1);
    if t.basis.iter().zip(&t.rhs).any(|(&bv, v)| bv >= n && v.is_positive()) {
        t.optimize(n + m)?;
    }
    let infeasibility: Rational = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bv, _)| bv >= n)
        .fold(rational::zero(), |acc, (_, v)| acc + v);
    if infeasibility.is_positive() {
        let farkas = (0..m)
            .map(|i| {
                let y = rational::one() - &t.reduced[n + i];
                if signs[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        return Ok(LpOutcome::Infeasible { farkas });
    }

    for i in 0..m {
        if t.basis[i] >= n {
            if let Some(q) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, q);
            }
        }
    }

    let mut phase2 = lp.c.clone();
    phase2.extend((0..m).map(|_| rational::zero()));
    t.set_costs(&phase2);
    if let Some(q) = t.optimize(n)? {
        let mut ray = vec![rational::zero(); n];
        ray[q] = rational::one();
        for (i, &bv) in t.basis.iter().enumerate() {
            if bv < n {
                ray[bv] = -&t.rows[i][q];
            }
        }
        return Ok(LpOutcome::Unbounded { ray });
    }
    let x = t.primal();
    let value = rational::dot(&lp.c, &x);
    let dual = (0..m)
        .map(|i| {
            let y = -&t.reduced[n + i];
            if signs[i] {
                -y
            } else {
                y
            }
        })
        .collect();
    Ok(LpOutcome::Optimal { x, value, dual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn solves_a_small_lp() {
        // min -x - y  s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let lp = LinearProgram {
            a: vec![ints(&[1, 2, 1, 0]), ints(&[3, 1, 0, 1])],
            b: ints(&[4, 6]),
            c: ints(&[-1, -1, 0, 0]),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { x, value, dual } => {
                assert_eq!(x[0], rat(8, 5));
                assert_eq!(x[1], rat(6, 5));
                assert_eq!(value, rat(-14, 5));
                assert_eq!(rational::dot(&dual, &lp.b), value);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn detects_infeasibility_with_farkas_vector() {
        // x + y = 1, x + y = 2
        let lp = LinearProgram {
            a: vec![ints(&[1, 1]), ints(&[1, 1])],
            b: ints(&[1, 2]),
            c: ints(&[0, 0]),
        };
        let LpOutcome::Infeasible { farkas } = solve(&lp).unwrap() else {
            panic!("expected infeasible");
        };
        assert!(rational::dot(&farkas, &lp.b).is_positive());
        for j in 0..2 {
            let col: Vec<Rational> = lp.a.iter().map(|r| r[j].clone()).collect();
            assert!(!rational::dot(&farkas, &col).is_positive());
        }
    }

    #[test]
    fn detects_unboundedness() {
        // min -x s.t. x - y = 0
        let lp = LinearProgram {
            a: vec![ints(&[1, -1])],
            b: ints(&[0]),
            c: ints(&[-1, 0]),
        };
        assert!(matches!(solve(&lp).unwrap(), LpOutcome::Unbounded { .. }));
    }

    #[test]
    fn handles_negative_rhs_and_redundant_rows() {
        // -x = -2, -2x = -4
        let lp = LinearProgram {
            a: vec![ints(&[-1]), ints(&[-2])],
            b: ints(&[-2, -4]),
            c: ints(&[1]),
        };
        match solve(&lp).unwrap() {
            LpOutcome::Optimal { x, .. } => assert_eq!(x[0], int(2)),
            other => panic!("{other:?}"),
        }
    }
}
