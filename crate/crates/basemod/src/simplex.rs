//! Exact two-phase simplex over the rationals, with certified duals.
//!
//! Problems are small (tens of rows, at most a few thousand columns), so a
//! dense tableau with Bland's anti-cycling rule is plenty. Every `Optimal`
//! outcome is re-verified before it is returned: primal feasibility, dual
//! feasibility, the sign conditions on the multipliers, and strong duality,
//! all in exact arithmetic. A verification failure is a bug, reported as an
//! internal error rather than a wrong answer.
//!
//! Dual convention (variables are implicitly ≥ 0):
//! * minimize: duals satisfy Aᵀy ≤ c with y ≥ 0 on ≥-rows, y ≤ 0 on ≤-rows,
//!   free on =-rows, and bᵀy = optimum;
//! * maximize: duals satisfy Aᵀy ≥ c with y ≥ 0 on ≤-rows, y ≤ 0 on ≥-rows,
//!   free on =-rows, and bᵀy = optimum.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::{rint, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub cmp: Cmp,
    pub rhs: Rat,
}

#[derive(Debug, Clone)]
pub struct Lp {
    pub minimize: bool,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
}

#[derive(Debug, Clone)]
pub enum Outcome {
    Optimal { value: Rat, x: Vec<Rat>, duals: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// Hard ceiling on tableau cells; larger problems are refused rather than
/// ground through.
const MAX_CELLS: usize = 2_000_000;
const MAX_PIVOTS: usize = 100_000;

struct Tableau {
    /// rows[r] has `ncols` coefficients then the rhs.
    rows: Vec<Vec<Rat>>,
    /// cost row, same layout; last entry is −(current objective value).
    cost: Vec<Rat>,
    basis: Vec<usize>,
    ncols: usize,
    pivots: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    let sub = &f * p;
                    *v = &*v - sub;
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                let sub = &f * p;
                *v = &*v - sub;
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule simplex on the current cost row. `allowed` limits the
    /// columns that may enter. Returns false on an unbounded ray.
    fn run(&mut self, allowed: usize) -> Result<bool> {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return Ok(true);
            };
            let mut leave: Option<usize> = None;
            for r in 0..self.rows.len() {
                if self.rows[r][c].is_positive() {
                    let better = match leave {
                        None => true,
                        Some(cur) => {
                            let rc = &self.rows[r][self.ncols] / &self.rows[r][c];
                            let cc = &self.rows[cur][self.ncols] / &self.rows[cur][c];
                            rc < cc || (rc == cc && self.basis[r] < self.basis[cur])
                        }
                    };
                    if better {
                        leave = Some(r);
                    }
                }
            }
            let Some(r) = leave else {
                return Ok(false);
            };
            self.pivot(r, c);
            self.pivots += 1;
            if self.pivots > MAX_PIVOTS {
                return Err(Error::Internal("simplex pivot limit reached".into()));
            }
        }
    }
}

pub fn solve(lp: &Lp) -> Result<Outcome> {
    let nvars = lp.objective.len();
    let m = lp.constraints.len();
    for c in &lp.constraints {
        if c.coeffs.len() != nvars {
            return Err(Error::Internal("constraint arity mismatch".into()));
        }
    }
    // column layout: structural | slack/surplus | artificial | rhs
    let nslack = lp
        .constraints
        .iter()
        .filter(|c| c.cmp != Cmp::Eq)
        .count();
    let ncols_guess = nvars + nslack + m;
    if m.saturating_mul(ncols_guess) > MAX_CELLS {
        return Err(Error::Resource(format!(
            "LP too large: {m} rows x {ncols_guess} columns"
        )));
    }

    // internal problem is always a minimization
    let obj: Vec<Rat> = if lp.minimize {
        lp.objective.clone()
    } else {
        lp.objective.iter().map(|v| -v).collect()
    };

    // normalize rows to nonnegative rhs, remembering the flip sign
    let mut stored: Vec<(Vec<Rat>, Cmp, Rat)> = Vec::with_capacity(m);
    let mut flip: Vec<bool> = Vec::with_capacity(m);
    for c in &lp.constraints {
        if c.rhs.is_negative() {
            let coeffs = c.coeffs.iter().map(|v| -v).collect();
            let cmp = match c.cmp {
                Cmp::Le => Cmp::Ge,
                Cmp::Ge => Cmp::Le,
                Cmp::Eq => Cmp::Eq,
            };
            stored.push((coeffs, cmp, -&c.rhs));
            flip.push(true);
        } else {
            stored.push((c.coeffs.clone(), c.cmp, c.rhs.clone()));
            flip.push(false);
        }
    }

    // assign slack/surplus columns, then artificials
    let mut slack_col: Vec<Option<usize>> = vec![None; m];
    let mut next = nvars;
    for (i, (_, cmp, _)) in stored.iter().enumerate() {
        if *cmp != Cmp::Eq {
            slack_col[i] = Some(next);
            next += 1;
        }
    }
    let art_base = next;
    let mut art_col: Vec<Option<usize>> = vec![None; m];
    for (i, (_, cmp, _)) in stored.iter().enumerate() {
        if *cmp != Cmp::Le {
            art_col[i] = Some(next);
            next += 1;
        }
    }
    let ncols = next;

    let mut t = Tableau {
        rows: Vec::with_capacity(m),
        cost: vec![Rat::zero(); ncols + 1],
        basis: Vec::with_capacity(m),
        ncols,
        pivots: 0,
    };
    for (i, (coeffs, cmp, rhs)) in stored.iter().enumerate() {
        let mut row = vec![Rat::zero(); ncols + 1];
        row[..nvars].clone_from_slice(coeffs);
        if let Some(s) = slack_col[i] {
            row[s] = if *cmp == Cmp::Le { rint(1) } else { rint(-1) };
        }
        if let Some(a) = art_col[i] {
            row[a] = rint(1);
        }
        row[ncols] = rhs.clone();
        t.rows.push(row);
        t.basis.push(art_col[i].or(slack_col[i]).expect("row has a basic column"));
    }

    // phase 1: minimize the artificial sum
    if art_base < ncols {
        for j in art_base..ncols {
            t.cost[j] = rint(1);
        }
        for (i, row) in t.rows.iter().enumerate() {
            if art_col[i].is_some() {
                // price out the basic artificial
                for (v, rv) in t.cost.iter_mut().zip(row) {
                    let sub = rv.clone();
                    *v = &*v - sub;
                }
            }
        }
        if !t.run(ncols)? {
            return Err(Error::Internal("phase 1 reported unbounded".into()));
        }
        if t.cost[ncols].is_negative() {
            return Ok(Outcome::Infeasible);
        }
        // drive remaining artificials out of the basis, dropping rows that
        // turn out to be redundant
        let mut row_origin: Vec<usize> = (0..m).collect();
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] >= art_base {
                if let Some(c) = (0..art_base).find(|&j| !t.rows[r][j].is_zero()) {
                    t.pivot(r, c);
                } else {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    row_origin.remove(r);
                    continue;
                }
            }
            r += 1;
        }
        // artificial columns are dead now; truncate them away
        for row in t.rows.iter_mut() {
            let rhs = row.pop().expect("row has rhs");
            row.truncate(art_base);
            row.push(rhs);
        }
        t.ncols = art_base;
        return phase2(lp, &stored, &flip, &slack_col, t, row_origin, &obj, nvars);
    }
    let row_origin: Vec<usize> = (0..m).collect();
    phase2(lp, &stored, &flip, &slack_col, t, row_origin, &obj, nvars)
}

#[allow(clippy::too_many_arguments)]
fn phase2(
    lp: &Lp,
    stored: &[(Vec<Rat>, Cmp, Rat)],
    flip: &[bool],
    slack_col: &[Option<usize>],
    mut t: Tableau,
    row_origin: Vec<usize>,
    obj: &[Rat],
    nvars: usize,
) -> Result<Outcome> {
    let ncols = t.ncols;
    t.cost = vec![Rat::zero(); ncols + 1];
    t.cost[..nvars].clone_from_slice(obj);
    for (r, row) in t.rows.iter().enumerate() {
        let cb = t.cost[t.basis[r]].clone();
        if !cb.is_zero() {
            for (v, rv) in t.cost.iter_mut().zip(row) {
                let sub = &cb * rv;
                *v = &*v - sub;
            }
        }
    }
    if !t.run(ncols)? {
        return Ok(Outcome::Unbounded);
    }

    // primal solution
    let mut x = vec![Rat::zero(); nvars];
    for (r, &b) in t.basis.iter().enumerate() {
        if b < nvars {
            x[b] = t.rows[r][ncols].clone();
        }
    }

    // simplex multipliers for the surviving stored rows: solve Bᵀ ŷ = c_B
    // against the original stored columns
    let k = t.rows.len();
    let mut bt = vec![vec![Rat::zero(); k]; k];
    let mut cb = vec![Rat::zero(); k];
    for (r, &bcol) in t.basis.iter().enumerate() {
        cb[r] = if bcol < nvars { obj[bcol].clone() } else { Rat::zero() };
        for (i, &orig) in row_origin.iter().enumerate() {
            // entry of stored row `orig` in column `bcol`
            let (coeffs, cmp, _) = &stored[orig];
            bt[r][i] = if bcol < nvars {
                coeffs[bcol].clone()
            } else if Some(bcol) == slack_col[orig] {
                if *cmp == Cmp::Le {
                    rint(1)
                } else {
                    rint(-1)
                }
            } else {
                Rat::zero()
            };
        }
    }
    let yhat = crate::linalg::rat_solve(&bt, &cb)
        .ok_or_else(|| Error::Internal("singular basis in dual extraction".into()))?;

    // assemble duals for the original rows: zero on deleted (redundant) rows,
    // sign-corrected elsewhere; maximization negates
    let m = lp.constraints.len();
    let mut duals = vec![Rat::zero(); m];
    for (i, &orig) in row_origin.iter().enumerate() {
        let mut y = yhat[i].clone();
        if flip[orig] {
            y = -y;
        }
        if !lp.minimize {
            y = -y;
        }
        duals[orig] = y;
    }

    let value_min = -t.cost[ncols].clone();
    let value = if lp.minimize { value_min } else { -value_min };

    verify_certificates(lp, &x, &duals, &value)?;
    Ok(Outcome::Optimal { value, x, duals })
}

/// Exact optimality certificate check; failure means a solver bug.
fn verify_certificates(lp: &Lp, x: &[Rat], duals: &[Rat], value: &Rat) -> Result<()> {
    let fail = |msg: &str| Err(Error::Internal(format!("simplex certificate: {msg}")));
    if x.iter().any(|v| v.is_negative()) {
        return fail("negative primal variable");
    }
    for c in &lp.constraints {
        let lhs: Rat = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
        let ok = match c.cmp {
            Cmp::Le => lhs <= c.rhs,
            Cmp::Ge => lhs >= c.rhs,
            Cmp::Eq => lhs == c.rhs,
        };
        if !ok {
            return fail("primal infeasibility");
        }
    }
    let cx: Rat = lp.objective.iter().zip(x).map(|(a, v)| a * v).sum();
    if &cx != value {
        return fail("objective mismatch");
    }
    for (c, y) in lp.constraints.iter().zip(duals) {
        let ok = match (lp.minimize, c.cmp) {
            (_, Cmp::Eq) => true,
            (true, Cmp::Ge) | (false, Cmp::Le) => !y.is_negative(),
            (true, Cmp::Le) | (false, Cmp::Ge) => !y.is_positive(),
        };
        if !ok {
            return fail("dual sign condition");
        }
    }
    for j in 0..lp.objective.len() {
        let aty: Rat = lp
            .constraints
            .iter()
            .zip(duals)
            .map(|(c, y)| &c.coeffs[j] * y)
            .sum();
        let ok = if lp.minimize {
            aty <= lp.objective[j]
        } else {
            aty >= lp.objective[j]
        };
        if !ok {
            return fail("dual infeasibility");
        }
    }
    let by: Rat = lp.constraints.iter().zip(duals).map(|(c, y)| &c.rhs * y).sum();
    if &by != value {
        return fail("strong duality gap");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rint};

    fn c(coeffs: &[i64], cmp: Cmp, rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&v| rint(v)).collect(),
            cmp,
            rhs: rint(rhs),
        }
    }

    #[test]
    fn small_max_problem() {
        // max x + y s.t. x + 2y <= 4, 3x + y <= 6 -> x = 8/5, y = 6/5
        let lp = Lp {
            minimize: false,
            objective: vec![rint(1), rint(1)],
            constraints: vec![c(&[1, 2], Cmp::Le, 4), c(&[3, 1], Cmp::Le, 6)],
        };
        match solve(&lp).unwrap() {
            Outcome::Optimal { value, x, duals } => {
                assert_eq!(value, rat(14, 5));
                assert_eq!(x, vec![rat(8, 5), rat(6, 5)]);
                assert_eq!(duals, vec![rat(2, 5), rat(1, 5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn small_min_problem_with_ge_rows() {
        // min 2x + 3y s.t. x + y >= 4, x >= 1 -> (4, 0), value 8
        let lp = Lp {
            minimize: true,
            objective: vec![rint(2), rint(3)],
            constraints: vec![c(&[1, 1], Cmp::Ge, 4), c(&[1, 0], Cmp::Ge, 1)],
        };
        match solve(&lp).unwrap() {
            Outcome::Optimal { value, x, .. } => {
                assert_eq!(value, rint(8));
                assert_eq!(x, vec![rint(4), rint(0)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equality_rows_and_redundancy() {
        // duplicated equality row exercises the redundant-row path
        let lp = Lp {
            minimize: true,
            objective: vec![rint(1), rint(2)],
            constraints: vec![
                c(&[1, 1], Cmp::Eq, 3),
                c(&[1, 1], Cmp::Eq, 3),
                c(&[0, 1], Cmp::Ge, 1),
            ],
        };
        match solve(&lp).unwrap() {
            Outcome::Optimal { value, x, .. } => {
                assert_eq!(value, rint(4));
                assert_eq!(x, vec![rint(2), rint(1)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_detected() {
        let lp = Lp {
            minimize: true,
            objective: vec![rint(1)],
            constraints: vec![c(&[1], Cmp::Le, 1), c(&[1], Cmp::Ge, 2)],
        };
        assert!(matches!(solve(&lp).unwrap(), Outcome::Infeasible));
    }

    #[test]
    fn unbounded_detected() {
        let lp = Lp {
            minimize: false,
            objective: vec![rint(1), rint(0)],
            constraints: vec![c(&[0, 1], Cmp::Le, 1)],
        };
        assert!(matches!(solve(&lp).unwrap(), Outcome::Unbounded));
    }

    #[test]
    fn negative_rhs_rows_are_flipped() {
        // x - y <= -1 with min x + y  ->  (0, 1)
        let lp = Lp {
            minimize: true,
            objective: vec![rint(1), rint(1)],
            constraints: vec![c(&[1, -1], Cmp::Le, -1)],
        };
        match solve(&lp).unwrap() {
            Outcome::Optimal { value, x, duals } => {
                assert_eq!(value, rint(1));
                assert_eq!(x, vec![rint(0), rint(1)]);
                // dual of the <= row in a min problem must be <= 0
                assert!(!duals[0].is_positive());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn fractional_data() {
        // min x/2 + y/3 s.t. x/4 + y/5 >= 1
        let lp = Lp {
            minimize: true,
            objective: vec![rat(1, 2), rat(1, 3)],
            constraints: vec![Constraint {
                coeffs: vec![rat(1, 4), rat(1, 5)],
                cmp: Cmp::Ge,
                rhs: rint(1),
            }],
        };
        match solve(&lp).unwrap() {
            Outcome::Optimal { value, .. } => {
                // per-unit cost: x gives (1/2)/(1/4) = 2, y gives (1/3)/(1/5) = 5/3
                assert_eq!(value, rat(5, 3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tree_packing_lp_value() {
        // packing LP for the triangle-plus-pendant fixture: max total weight
        // over its 3 bases with per-element load <= 1; optimum is 1, set by
        // the pendant element that lies in every base
        let bases: [u64; 3] = [0b1011, 0b1101, 0b1110];
        let lp = Lp {
            minimize: false,
            objective: vec![rint(1); 3],
            constraints: (0..4)
                .map(|e| Constraint {
                    coeffs: bases
                        .iter()
                        .map(|b| if b & (1 << e) != 0 { rint(1) } else { rint(0) })
                        .collect(),
                    cmp: Cmp::Le,
                    rhs: rint(1),
                })
                .collect(),
        };
        match solve(&lp).unwrap() {
            Outcome::Optimal { value, duals, .. } => {
                assert_eq!(value, rint(1));
                // dual support must cover the bottleneck element d
                let total: Rat = duals.iter().sum();
                assert_eq!(total, rint(1));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
