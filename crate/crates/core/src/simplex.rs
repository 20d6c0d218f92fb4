//! Exact rational simplex over arbitrary-precision rationals.
//!
//! Dense two-phase tableau with Bland's rule, which terminates on every
//! instance. Inputs are in standard form: maximize `c·x` subject to
//! `A x = b`, `x ≥ 0`. Problem sizes here are tiny (a handful of variables
//! per sign-vector candidate), so clarity wins over sparsity.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Rational from a numerator/denominator pair.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: Vec<Rat>, objective: Rat },
    Infeasible,
    Unbounded,
}

struct Tableau {
    /// Coefficient matrix, `width` columns per row.
    a: Vec<Vec<Rat>>,
    b: Vec<Rat>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.a[row][col].clone();
        for x in self.a[row].iter_mut() {
            *x /= &factor;
        }
        self.b[row] /= &factor;
        for r in 0..self.a.len() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let scale = self.a[r][col].clone();
            for c in 0..self.width {
                let delta = &scale * &self.a[row][c];
                self.a[r][c] -= delta;
            }
            let delta = &scale * &self.b[row];
            self.b[r] -= delta;
        }
        self.basis[row] = col;
    }

    /// Maximize `cost·x` over the allowed columns with Bland's rule:
    /// smallest improving column enters, smallest-index basic variable
    /// leaves among the minimum ratios.
    fn optimize(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                let mut reduced = cost[j].clone();
                for (i, &bj) in self.basis.iter().enumerate() {
                    if !cost[bj].is_zero() {
                        reduced -= &cost[bj] * &self.a[i][j];
                    }
                }
                reduced.is_positive()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.b[i] / &self.a[i][col];
                let better = match &leaving {
                    None => true,
                    Some((best_row, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_row])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn point(&self, vars: usize) -> Vec<Rat> {
        let mut point = vec![Rat::zero(); vars];
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj < vars {
                point[bj] = self.b[i].clone();
            }
        }
        point
    }
}

/// Maximize `objective·x` subject to `rows` as equalities and `x ≥ 0`.
pub fn simplex_max(objective: &[Rat], rows: &[(Vec<Rat>, Rat)]) -> LpOutcome {
    let n = objective.len();
    let m = rows.len();
    let width = n + m;
    let mut a = Vec::with_capacity(m);
    let mut b = Vec::with_capacity(m);
    for (i, (coeffs, rhs)) in rows.iter().enumerate() {
        debug_assert_eq!(coeffs.len(), n);
        let negate = rhs.is_negative();
        let mut row: Vec<Rat> = coeffs
            .iter()
            .map(|c| if negate { -c.clone() } else { c.clone() })
            .collect();
        row.resize(width, Rat::zero());
        row[n + i] = Rat::one();
        a.push(row);
        b.push(if negate { -rhs.clone() } else { rhs.clone() });
    }
    let mut tableau = Tableau {
        a,
        b,
        basis: (n..n + m).collect(),
        width,
    };

    // Phase 1: drive the artificial variables to zero.
    let mut phase1 = vec![Rat::zero(); width];
    for c in phase1.iter_mut().skip(n) {
        *c = -Rat::one();
    }
    let bounded = tableau.optimize(&phase1, width);
    debug_assert!(bounded, "phase-1 objective is bounded above by zero");
    let infeasibility: Rat = tableau
        .basis
        .iter()
        .enumerate()
        .filter(|&(_, &bj)| bj >= n)
        .map(|(i, _)| tableau.b[i].clone())
        .sum();
    if !infeasibility.is_zero() {
        return LpOutcome::Infeasible;
    }

    // Remove artificials from the basis; rows without real support are
    // redundant constraints.
    let mut row = 0;
    while row < tableau.a.len() {
        if tableau.basis[row] >= n {
            match (0..n).find(|&j| !tableau.a[row][j].is_zero()) {
                Some(col) => tableau.pivot(row, col),
                None => {
                    tableau.a.remove(row);
                    tableau.b.remove(row);
                    tableau.basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }

    // Phase 2: the real objective, artificial columns barred.
    let mut cost = objective.to_vec();
    cost.resize(width, Rat::zero());
    if !tableau.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let point = tableau.point(n);
    let objective_value = objective
        .iter()
        .zip(&point)
        .map(|(c, x)| c * x)
        .sum();
    LpOutcome::Optimal {
        point,
        objective: objective_value,
    }
}
