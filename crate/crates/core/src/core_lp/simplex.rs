//! Exact feasibility of linear systems over free rational variables.
//!
//! Phase one of the simplex method on a dense rational tableau, with Bland's
//! rule for both pivot choices so the method cannot cycle. Every free
//! variable is split as `x = x+ - x-`, each inequality gets a slack, and every
//! row gets an artificial variable. When the artificial sum cannot be driven
//! to zero, the final reduced costs of the artificial columns give the dual
//! vector, which is returned as a Farkas certificate.

use num_traits::{One, Signed, Zero};

use super::LpError;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `sum_j coeffs[j] * x_j  (<=|>=|=)  rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().zip(x).fold(Rational::zero(), |acc, (a, xi)| acc + a * xi)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearSystem {
    variables: Vec<String>,
    constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(variables: Vec<String>) -> Self {
        LinearSystem { variables, constraints: Vec::new() }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Adds a constraint given as sparse `(variable index, coefficient)`
    /// terms. Repeated indices are summed.
    pub fn add(&mut self, terms: &[(usize, Rational)], relation: Relation, rhs: Rational) -> Result<usize, LpError> {
        let mut coeffs = vec![Rational::zero(); self.variables.len()];
        for (j, a) in terms {
            let slot = coeffs.get_mut(*j).ok_or(LpError::UnknownVariable(*j))?;
            *slot += a;
        }
        self.constraints.push(Constraint { coeffs, relation, rhs });
        Ok(self.constraints.len() - 1)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        x.len() == self.variables.len() && self.constraints.iter().all(|c| c.is_satisfied_by(x))
    }
}

/// Multipliers `y`, one per constraint, with `y >= 0` on `>=` rows, `y <= 0`
/// on `<=` rows, `sum_i y_i a_i = 0` and `sum_i y_i b_i > 0`. Adding up
/// `y_i (a_i x)` against `y_i b_i` then yields `0 >= positive`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: Vec<Rational>,
}

impl FarkasCertificate {
    /// The positive constant the combination bounds `0` from below by.
    pub fn gap(&self, sys: &LinearSystem) -> Rational {
        self.multipliers.iter().zip(&sys.constraints).fold(Rational::zero(), |acc, (y, c)| acc + y * &c.rhs)
    }

    pub fn verify(&self, sys: &LinearSystem) -> bool {
        if self.multipliers.len() != sys.constraints.len() {
            return false;
        }
        let signs_ok = self.multipliers.iter().zip(&sys.constraints).all(|(y, c)| match c.relation {
            Relation::Ge => !y.is_negative(),
            Relation::Le => !y.is_positive(),
            Relation::Eq => true,
        });
        let combination_zero = (0..sys.variables.len()).all(|j| {
            self.multipliers
                .iter()
                .zip(&sys.constraints)
                .fold(Rational::zero(), |acc, (y, c)| acc + y * &c.coeffs[j])
                .is_zero()
        });
        signs_ok && combination_zero && self.gap(sys).is_positive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible(FarkasCertificate),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Decides whether `sys` has a solution, returning a basic solution or a
/// Farkas certificate. Deterministic for identical input.
pub fn lp_feasible(sys: &LinearSystem) -> Feasibility {
    let n = sys.variables.len();
    let m = sys.constraints.len();
    if m == 0 {
        return Feasibility::Feasible(vec![Rational::zero(); n]);
    }

    // Column layout: [x+ (n) | x- (n) | slacks | artificials (m) | rhs].
    let slack_rows: Vec<usize> = (0..m).filter(|&i| sys.constraints[i].relation != Relation::Eq).collect();
    let slack_base = 2 * n;
    let art_base = slack_base + slack_rows.len();
    let cols = art_base + m;

    let mut flipped = vec![false; m];
    let mut tab = vec![vec![Rational::zero(); cols + 1]; m];
    for (i, c) in sys.constraints.iter().enumerate() {
        let row = &mut tab[i];
        for j in 0..n {
            row[j] = c.coeffs[j].clone();
            row[n + j] = -c.coeffs[j].clone();
        }
        if let Some(k) = slack_rows.iter().position(|&r| r == i) {
            row[slack_base + k] = match c.relation {
                Relation::Le => Rational::one(),
                _ => -Rational::one(),
            };
        }
        row[cols] = c.rhs.clone();
        if c.rhs.is_negative() {
            flipped[i] = true;
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[art_base + i] = Rational::one();
    }
    let mut basis: Vec<usize> = (0..m).map(|i| art_base + i).collect();

    // Reduced costs of the phase-one objective (sum of artificials); the
    // last entry tracks minus the objective value.
    let mut cost = vec![Rational::zero(); cols + 1];
    for c in &mut cost[art_base..cols] {
        *c = Rational::one();
    }
    for row in &tab {
        for (cj, a) in cost.iter_mut().zip(row) {
            *cj -= a;
        }
    }

    while let Some(enter) = (0..cols).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if !tab[i][enter].is_positive() {
                continue;
            }
            let ratio = &tab[i][cols] / &tab[i][enter];
            let better = match &leave {
                None => true,
                Some((l, best)) => ratio < *best || (ratio == *best && basis[i] < basis[*l]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // The phase-one objective is bounded below by zero, so some row
        // always limits the entering column.
        let (r, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut tab, &mut cost, r, enter);
        basis[r] = enter;
    }

    let objective = -cost[cols].clone();
    if objective.is_zero() {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] += &tab[i][cols];
            } else if b < 2 * n {
                x[b - n] -= &tab[i][cols];
            }
        }
        Feasibility::Feasible(x)
    } else {
        let multipliers = (0..m)
            .map(|i| {
                let y = Rational::one() - &cost[art_base + i];
                if flipped[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        Feasibility::Infeasible(FarkasCertificate { multipliers })
    }
}

fn pivot(tab: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let inv = Rational::one() / &tab[r][c];
    for v in tab[r].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let factor = row[c].clone();
        for (v, p) in row.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
    }
    if !cost[c].is_zero() {
        let factor = cost[c].clone();
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn vars(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn contradictory_bounds_are_infeasible() {
        let mut sys = LinearSystem::new(vars(1));
        sys.add(&[(0, q(1, 1))], Relation::Ge, q(1, 1)).unwrap();
        sys.add(&[(0, q(1, 1))], Relation::Le, q(0, 1)).unwrap();
        let Feasibility::Infeasible(cert) = lp_feasible(&sys) else { panic!("feasible?") };
        assert!(cert.verify(&sys));
    }

    #[test]
    fn simplex_has_a_vertex() {
        let mut sys = LinearSystem::new(vars(2));
        sys.add(&[(0, q(1, 1)), (1, q(1, 1))], Relation::Eq, q(1, 1)).unwrap();
        sys.add(&[(0, q(1, 1))], Relation::Ge, q(0, 1)).unwrap();
        sys.add(&[(1, q(1, 1))], Relation::Ge, q(0, 1)).unwrap();
        let Feasibility::Feasible(x) = lp_feasible(&sys) else { panic!("infeasible?") };
        assert!(sys.is_satisfied_by(&x));
        assert!(x.iter().any(|v| v.is_zero()), "basic solution should sit on a vertex: {x:?}");
    }

    #[test]
    fn free_variables_may_go_negative() {
        let mut sys = LinearSystem::new(vars(2));
        sys.add(&[(0, q(1, 1)), (1, q(1, 1))], Relation::Eq, q(-3, 1)).unwrap();
        sys.add(&[(0, q(1, 1))], Relation::Ge, q(2, 1)).unwrap();
        let Feasibility::Feasible(x) = lp_feasible(&sys) else { panic!("infeasible?") };
        assert!(sys.is_satisfied_by(&x));
        assert!(x[1] <= q(-5, 1));
    }

    #[test]
    fn equality_chain_infeasible_with_certificate() {
        // x + y = 1, x - y = 0, y >= 2/3.
        let mut sys = LinearSystem::new(vars(2));
        sys.add(&[(0, q(1, 1)), (1, q(1, 1))], Relation::Eq, q(1, 1)).unwrap();
        sys.add(&[(0, q(1, 1)), (1, q(-1, 1))], Relation::Eq, q(0, 1)).unwrap();
        sys.add(&[(1, q(1, 1))], Relation::Ge, q(2, 3)).unwrap();
        let Feasibility::Infeasible(cert) = lp_feasible(&sys) else { panic!("feasible?") };
        assert!(cert.verify(&sys));
        assert!(cert.gap(&sys) > q(0, 1));
    }

    #[test]
    fn empty_system_is_feasible() {
        let sys = LinearSystem::new(vars(3));
        assert_eq!(lp_feasible(&sys), Feasibility::Feasible(vec![q(0, 1); 3]));
    }

    #[test]
    fn rejects_unknown_variable() {
        let mut sys = LinearSystem::new(vars(1));
        assert_eq!(sys.add(&[(4, q(1, 1))], Relation::Le, q(0, 1)), Err(LpError::UnknownVariable(4)));
    }

    #[test]
    fn certificate_check_rejects_tampering() {
        let mut sys = LinearSystem::new(vars(1));
        sys.add(&[(0, q(1, 1))], Relation::Ge, q(1, 1)).unwrap();
        sys.add(&[(0, q(1, 1))], Relation::Le, q(0, 1)).unwrap();
        let bad = FarkasCertificate { multipliers: vec![q(1, 1), q(1, 1)] };
        assert!(!bad.verify(&sys));
        let bad = FarkasCertificate { multipliers: vec![q(1, 1), q(-2, 1)] };
        assert!(!bad.verify(&sys));
    }

    #[test]
    fn degenerate_cycling_example_terminates() {
        // Beale's classic cycling instance, turned into a feasibility
        // question by bounding the objective.
        let mut sys = LinearSystem::new(vars(4));
        sys.add(&[(0, q(1, 4)), (1, q(-8, 1)), (2, q(-1, 1)), (3, q(9, 1))], Relation::Le, q(0, 1)).unwrap();
        sys.add(&[(0, q(1, 2)), (1, q(-12, 1)), (2, q(-1, 2)), (3, q(3, 1))], Relation::Le, q(0, 1)).unwrap();
        sys.add(&[(2, q(1, 1))], Relation::Le, q(1, 1)).unwrap();
        for j in 0..4 {
            sys.add(&[(j, q(1, 1))], Relation::Ge, q(0, 1)).unwrap();
        }
        sys.add(&[(0, q(3, 4)), (1, q(-20, 1)), (2, q(1, 2)), (3, q(-6, 1))], Relation::Ge, q(1, 20)).unwrap();
        let Feasibility::Feasible(x) = lp_feasible(&sys) else { panic!("infeasible?") };
        assert!(sys.is_satisfied_by(&x));
    }
}
