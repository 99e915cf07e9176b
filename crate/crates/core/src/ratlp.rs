//! Exact rational feasibility LP (phase-1 simplex with Bland's rule),
//! used to decide membership in a Newton polyhedron.

use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};

/// Decide whether some convex combination of `points` is dominated
/// componentwise by `target`: exists lambda >= 0 with sum lambda = 1 and
/// sum lambda_i * points[i] <= target. This is exactly membership of
/// `target` in the polyhedron conv(points) + R_+^n.
pub fn convex_dominates(points: &[Vec<i64>], target: &[i64]) -> bool {
    if points.is_empty() {
        return false;
    }
    let n = target.len();
    let m = points.len();
    debug_assert!(points.iter().all(|p| p.len() == n));
    let rat = |v: i64| BigRational::from(BigInt::from(v));

    // variables: lambda_1..lambda_m, slack_1..slack_n, all >= 0
    // rows: sum lambda = 1; sum lambda_i p_i[j] + slack_j = target_j
    let cols = m + n;
    let mut a: Vec<Vec<BigRational>> = Vec::with_capacity(n + 1);
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);

    let mut row0 = vec![BigRational::zero(); cols];
    for c in row0.iter_mut().take(m) {
        *c = BigRational::one();
    }
    a.push(row0);
    b.push(BigRational::one());

    for j in 0..n {
        let mut row = vec![BigRational::zero(); cols];
        for (i, p) in points.iter().enumerate() {
            row[i] = rat(p[j]);
        }
        row[m + j] = BigRational::one();
        a.push(row);
        b.push(rat(target[j]));
    }
    feasible_eq(a, b)
}

/// Phase-1 simplex: does Ax = b admit x >= 0? Bland's rule guarantees
/// termination; all arithmetic is exact.
fn feasible_eq(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> bool {
    let rows = a.len();
    let cols = a[0].len();
    // normalize to b >= 0
    for i in 0..rows {
        if b[i].is_negative() {
            b[i] = -b[i].clone();
            for c in a[i].iter_mut() {
                *c = -c.clone();
            }
        }
    }
    // append artificial identity; basis starts as the artificials
    for (i, row) in a.iter_mut().enumerate() {
        for k in 0..rows {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
    }
    let total = cols + rows;
    let mut basis: Vec<usize> = (cols..total).collect();

    // reduced-cost row for minimizing the artificial sum:
    // cbar_j = c_j - sum_i a_ij  (c_j = 1 on artificials, 0 elsewhere)
    let mut cbar: Vec<BigRational> = (0..total)
        .map(|j| {
            let col_sum: BigRational = a.iter().map(|row| row[j].clone()).sum();
            let c_j = if j >= cols {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            c_j - col_sum
        })
        .collect();
    let mut objective: BigRational = -b.iter().cloned().sum::<BigRational>();

    loop {
        // Bland: entering = smallest index with negative reduced cost
        let Some(enter) = (0..total).find(|&j| cbar[j].is_negative()) else {
            // optimal; feasible iff all artificials are zero
            return objective.is_zero();
        };
        // ratio test, ties broken by smallest basis variable
        let mut leave: Option<usize> = None;
        let mut best: Option<BigRational> = None;
        for i in 0..rows {
            if a[i][enter].is_positive() {
                let ratio = &b[i] / &a[i][enter];
                let better = match &best {
                    None => true,
                    Some(r) => {
                        ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(r) = leave else {
            // unbounded below cannot happen for a phase-1 objective
            unreachable!("phase-1 simplex objective is bounded");
        };
        // pivot on (r, enter)
        let piv = a[r][enter].clone();
        for c in a[r].iter_mut() {
            *c /= &piv;
        }
        b[r] /= &piv;
        for i in 0..rows {
            if i != r && !a[i][enter].is_zero() {
                let f = a[i][enter].clone();
                for j in 0..total {
                    let delta = &f * &a[r][j];
                    a[i][j] -= delta;
                }
                let delta = &f * &b[r];
                b[i] -= delta;
            }
        }
        if !cbar[enter].is_zero() {
            let f = cbar[enter].clone();
            for j in 0..total {
                let delta = &f * &a[r][j];
                cbar[j] -= delta;
            }
            let delta = &f * &b[r];
            objective -= delta;
        }
        basis[r] = enter;
    }
}
