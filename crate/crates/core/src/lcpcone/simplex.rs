//! Dense phase-I simplex for small feasibility problems
//! `{z >= 0 : E z = e, L z <= l}`, with Bland's anti-cycling rule.

use crate::error::{Error, Result};

/// Phase-I optimum at or below this counts as feasible (rows are scaled to
/// unit max-abs first).
pub const FEASIBILITY_TOL: f64 = 1e-9;
const PIVOT_TOL: f64 = 1e-11;

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    pub nvars: usize,
    pub eq: Vec<(Vec<f64>, f64)>,
    pub le: Vec<(Vec<f64>, f64)>,
}

impl LinearSystem {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            ..Self::default()
        }
    }

    pub fn push_eq(&mut self, row: Vec<f64>, rhs: f64) {
        debug_assert_eq!(row.len(), self.nvars);
        self.eq.push((row, rhs));
    }

    pub fn push_le(&mut self, row: Vec<f64>, rhs: f64) {
        debug_assert_eq!(row.len(), self.nvars);
        self.le.push((row, rhs));
    }

    /// A point with `z >= 0` satisfying every constraint, or `None`.
    pub fn feasible_point(&self) -> Result<Option<Vec<f64>>> {
        phase_one(self)
    }
}

fn scaled(row: &[f64], rhs: f64) -> Option<(Vec<f64>, f64)> {
    let s = row.iter().fold(rhs.abs(), |m, v| m.max(v.abs()));
    if s == 0.0 {
        None
    } else {
        Some((row.iter().map(|v| v / s).collect(), rhs / s))
    }
}

fn phase_one(sys: &LinearSystem) -> Result<Option<Vec<f64>>> {
    let nv = sys.nvars;
    let nle = sys.le.len();
    let ns = nv + nle;

    // Rows over [structural | slack], all right-hand sides made nonnegative.
    let mut rows: Vec<(Vec<f64>, f64)> = Vec::new();
    for (row, rhs) in &sys.eq {
        if let Some((mut r, mut b)) = scaled(row, *rhs) {
            r.resize(ns, 0.0);
            if b < 0.0 {
                r.iter_mut().for_each(|v| *v = -*v);
                b = -b;
            }
            rows.push((r, b));
        }
    }
    for (i, (row, rhs)) in sys.le.iter().enumerate() {
        let s = row.iter().fold(rhs.abs(), |m, v| m.max(v.abs())).max(1.0);
        let mut r: Vec<f64> = row.iter().map(|v| v / s).collect();
        r.resize(ns, 0.0);
        r[nv + i] = 1.0;
        let mut b = rhs / s;
        if b < 0.0 {
            r.iter_mut().for_each(|v| *v = -*v);
            b = -b;
        }
        rows.push((r, b));
    }

    let m = rows.len();
    if m == 0 {
        return Ok(Some(vec![0.0; nv]));
    }
    let width = ns + m + 1;
    let rhs_col = ns + m;
    let mut t = vec![vec![0.0; width]; m];
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    for (i, (r, b)) in rows.into_iter().enumerate() {
        t[i][..ns].copy_from_slice(&r);
        t[i][ns + i] = 1.0;
        t[i][rhs_col] = b;
        basis.push(ns + i);
    }
    // Reduced costs of the objective "minimize the sum of artificials".
    let mut cost = vec![0.0; width];
    for row in &t {
        for j in 0..ns {
            cost[j] -= row[j];
        }
        cost[rhs_col] -= row[rhs_col];
    }

    let cap = 50 * (m + width);
    let mut iterations = 0;
    loop {
        let entering = (0..ns + m).find(|&j| cost[j] < -PIVOT_TOL && !basis.contains(&j));
        let Some(j) = entering else { break };
        let mut leave: Option<(f64, usize, usize)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[j] > PIVOT_TOL {
                let ratio = row[rhs_col] / row[j];
                let better = match leave {
                    None => true,
                    Some((best, _, var)) => ratio < best - 1e-14 || (ratio <= best + 1e-14 && basis[i] < var),
                };
                if better {
                    leave = Some((ratio, i, basis[i]));
                }
            }
        }
        // Phase I is bounded below by zero, so a column with no positive
        // entry cannot lower the objective; mark it as done.
        let Some((_, r, _)) = leave else {
            cost[j] = 0.0;
            continue;
        };
        iterations += 1;
        if iterations > cap {
            return Err(Error::LpIterationLimit { iterations: cap });
        }
        pivot(&mut t, &mut cost, r, j);
        basis[r] = j;
    }

    let objective = -cost[rhs_col];
    if objective > FEASIBILITY_TOL {
        return Ok(None);
    }
    let mut z = vec![0.0; nv];
    for (i, &b) in basis.iter().enumerate() {
        if b < nv {
            z[b] = t[i][rhs_col].max(0.0);
        }
    }
    Ok(Some(z))
}

fn pivot(t: &mut [Vec<f64>], cost: &mut [f64], r: usize, j: usize) {
    let p = t[r][j];
    t[r].iter_mut().for_each(|v| *v /= p);
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i != r {
            let f = row[j];
            if f != 0.0 {
                row.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= f * pv);
            }
        }
    }
    let f = cost[j];
    if f != 0.0 {
        cost.iter_mut().zip(&pivot_row).for_each(|(v, pv)| *v -= f * pv);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_feasible_system() {
        // x + y = 1, x - y <= -0.5
        let mut s = LinearSystem::new(2);
        s.push_eq(vec![1.0, 1.0], 1.0);
        s.push_le(vec![1.0, -1.0], -0.5);
        let z = s.feasible_point().unwrap().unwrap();
        assert!((z[0] + z[1] - 1.0).abs() < 1e-12);
        assert!(z[0] - z[1] <= -0.5 + 1e-12);
        assert!(z.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn infeasible_system() {
        // x + y = 1, x + y <= 0.5
        let mut s = LinearSystem::new(2);
        s.push_eq(vec![1.0, 1.0], 1.0);
        s.push_le(vec![1.0, 1.0], 0.5);
        assert!(s.feasible_point().unwrap().is_none());
        // -x = 1 with x >= 0
        let mut s = LinearSystem::new(1);
        s.push_eq(vec![-1.0], 1.0);
        assert!(s.feasible_point().unwrap().is_none());
    }

    #[test]
    fn redundant_and_zero_rows() {
        let mut s = LinearSystem::new(3);
        s.push_eq(vec![1.0, 0.0, -1.0], 0.0);
        s.push_eq(vec![2.0, 0.0, -2.0], 0.0);
        s.push_eq(vec![0.0, 0.0, 0.0], 0.0);
        s.push_eq(vec![1.0, 1.0, 1.0], 1.0);
        let z = s.feasible_point().unwrap().unwrap();
        assert!((z[0] - z[2]).abs() < 1e-12);
        assert!((z.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_zero_row() {
        let mut s = LinearSystem::new(1);
        s.push_eq(vec![0.0], 1.0);
        assert!(s.feasible_point().unwrap().is_none());
    }

    #[test]
    fn empty_system_is_feasible_at_origin() {
        assert_eq!(LinearSystem::new(2).feasible_point().unwrap(), Some(vec![0.0, 0.0]));
    }
}
