//! Small exact linear programs: dense two-phase simplex over the rationals
//! with Bland's rule. Variables are implicitly nonnegative.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

impl Constraint {
    pub fn new(coeffs: Vec<BigRational>, relation: Relation, rhs: BigRational) -> Self {
        Constraint {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: BigRational,
        x: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &BigRational {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost · x` over columns allowed by `allowed`, starting from
    /// the current feasible basis. Returns false when unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            // reduced costs, entering column by Bland's rule
            let mut entering = None;
            for j in 0..self.width {
                if !allowed(j) || self.basis.contains(&j) {
                    continue;
                }
                let mut d = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() {
                        d -= &cost[b] * &self.rows[i][j];
                    }
                }
                if d.is_negative() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, c);
        }
    }

    fn objective(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .enumerate()
            .map(|(i, &b)| &cost[b] * self.rhs(i))
            .sum()
    }
}

/// Minimizes `objective · x` subject to `constraints` and `x >= 0`.
pub fn minimize(objective: &[BigRational], constraints: &[Constraint]) -> LpOutcome {
    let nvars = objective.len();
    let m = constraints.len();
    let n_slack = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let art0 = nvars + n_slack;
    let width = art0 + m;

    let mut rows = Vec::with_capacity(m);
    let mut slack = nvars;
    for (i, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), nvars, "constraint width");
        let mut row = vec![BigRational::zero(); width + 1];
        row[..nvars].clone_from_slice(&c.coeffs);
        match c.relation {
            Relation::Le => {
                row[slack] = BigRational::one();
                slack += 1;
            }
            Relation::Ge => {
                row[slack] = -BigRational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        row[width] = c.rhs.clone();
        if row[width].is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[art0 + i] = BigRational::one();
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        basis: (art0..art0 + m).collect(),
        width,
    };

    let mut phase1 = vec![BigRational::zero(); width];
    for c in phase1.iter_mut().skip(art0) {
        *c = BigRational::one();
    }
    t.optimize(&phase1, &|_| true);
    if t.objective(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }

    // drive remaining (zero-valued) artificials out of the basis
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= art0 {
            match (0..art0).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => {
                    t.pivot(i, j);
                    i += 1;
                }
                None => {
                    t.rows.remove(i);
                    t.basis.remove(i);
                }
            }
        } else {
            i += 1;
        }
    }

    let mut cost = vec![BigRational::zero(); width];
    cost[..nvars].clone_from_slice(objective);
    if !t.optimize(&cost, &|j| j < art0) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![BigRational::zero(); nvars];
    for (i, &b) in t.basis.iter().enumerate() {
        if b < nvars {
            x[b] = t.rhs(i).clone();
        }
    }
    LpOutcome::Optimal {
        value: t.objective(&cost),
        x,
    }
}

pub fn is_feasible(nvars: usize, constraints: &[Constraint]) -> bool {
    let zero = vec![BigRational::zero(); nvars];
    !matches!(minimize(&zero, constraints), LpOutcome::Infeasible)
}
