//! Exact feasibility for `{x >= 0 : Ax = b}`.
//!
//! Phase-1 simplex on a dense fraction-free integer tableau with Bland's
//! rule. Infeasible systems come back with a Farkas vector read off the
//! phase-1 duals; both kinds of certificate are re-checked before they leave
//! this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{input_err, internal_err, Result};
use crate::rational::{dot, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FeasibilityResult {
    /// `x >= 0` with `A x = b`.
    Feasible(Vec<Rational>),
    /// `y` with `yᵀA <= 0` componentwise and `yᵀb > 0`.
    Infeasible(Vec<Rational>),
}

impl FeasibilityResult {
    pub fn is_feasible(&self) -> bool {
        matches!(self, FeasibilityResult::Feasible(_))
    }

    pub fn solution(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityResult::Feasible(x) => Some(x),
            FeasibilityResult::Infeasible(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&[Rational]> {
        match self {
            FeasibilityResult::Feasible(_) => None,
            FeasibilityResult::Infeasible(y) => Some(y),
        }
    }
}

/// Check a primal solution: `x >= 0` and `Ax = b`.
pub fn verify_feasible(a: &RationalMatrix, b: &[Rational], x: &[Rational]) -> bool {
    x.len() == a.cols()
        && b.len() == a.rows()
        && x.iter().all(|v| !v.is_negative())
        && a.mul_vec(x) == b
}

/// Check a Farkas certificate: `yᵀA <= 0` and `yᵀb > 0`.
pub fn verify_farkas(a: &RationalMatrix, b: &[Rational], y: &[Rational]) -> bool {
    y.len() == a.rows()
        && b.len() == a.rows()
        && a.vec_mul(y).iter().all(|v| !v.is_positive())
        && dot(y, b).is_positive()
}

/// Decide whether `{x >= 0 : Ax = b}` is nonempty.
pub fn solve_feasibility(a: &RationalMatrix, b: &[Rational]) -> Result<FeasibilityResult> {
    if a.rows() != b.len() {
        return Err(input_err!(
            "matrix has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        ));
    }
    let result = Phase1::new(a, b).run();
    match &result {
        FeasibilityResult::Feasible(x) if !verify_feasible(a, b, x) => {
            Err(internal_err!("primal solution failed re-substitution"))
        }
        FeasibilityResult::Infeasible(y) if !verify_farkas(a, b, y) => {
            Err(internal_err!("Farkas certificate failed verification"))
        }
        _ => Ok(result),
    }
}

/// Fraction-free tableau: the rational tableau is `tab / denom`, and every
/// entry stays an integer minor of the scaled input, so each pivot divides
/// exactly.
struct Phase1 {
    m: usize,
    nvars: usize,
    /// `m` rows of `nvars + m` coefficients followed by the right-hand side.
    tab: Vec<Vec<BigInt>>,
    /// Reduced costs for every column, then `-objective` in the last slot.
    cost: Vec<BigInt>,
    denom: BigInt,
    basis: Vec<usize>,
    /// Signed factor that made row `r` integral with a nonnegative right-hand side.
    row_scale: Vec<BigInt>,
}

impl Phase1 {
    fn new(a: &RationalMatrix, b: &[Rational]) -> Self {
        let m = a.rows();
        let nvars = a.cols();
        let width = nvars + m + 1;
        let mut tab = Vec::with_capacity(m);
        let mut row_scale = Vec::with_capacity(m);
        for r in 0..m {
            let l = a.row(r).iter().chain([&b[r]]).fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            let s = if b[r].is_negative() { -l } else { l };
            let scaled = |v: &Rational| v.numer() * (&s / v.denom());
            let mut row = vec![BigInt::zero(); width];
            for c in 0..nvars {
                row[c] = scaled(&a[(r, c)]);
            }
            row[nvars + r] = BigInt::one();
            row[width - 1] = scaled(&b[r]);
            tab.push(row);
            row_scale.push(s);
        }
        // Artificial costs are 1; subtract every row to price out the initial basis.
        let mut cost = vec![BigInt::zero(); width];
        for c in nvars..nvars + m {
            cost[c] = BigInt::one();
        }
        for row in &tab {
            for (c, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    cost[c] -= v;
                }
            }
        }
        let basis = (nvars..nvars + m).collect();
        Phase1 { m, nvars, tab, cost, denom: BigInt::one(), basis, row_scale }
    }

    fn run(mut self) -> FeasibilityResult {
        let width = self.nvars + self.m + 1;
        let rhs = width - 1;
        loop {
            // Bland: lowest-index column with negative reduced cost.
            let Some(enter) = (0..rhs).find(|&c| self.cost[c].is_negative()) else {
                break;
            };
            // Ratios share the denominator, so compare by cross-multiplying.
            let mut leave: Option<usize> = None;
            for r in 0..self.m {
                let coef = &self.tab[r][enter];
                if !coef.is_positive() {
                    continue;
                }
                let better = match leave {
                    None => true,
                    Some(lr) => {
                        let lhs = &self.tab[r][rhs] * &self.tab[lr][enter];
                        let other = &self.tab[lr][rhs] * coef;
                        lhs < other || (lhs == other && self.basis[r] < self.basis[lr])
                    }
                };
                if better {
                    leave = Some(r);
                }
            }
            // Phase-1 objective is bounded below by zero, so a ratio row exists.
            let row = leave.expect("phase-1 objective is bounded");
            self.pivot(row, enter);
        }

        let as_rational = |v: &BigInt, denom: &BigInt| Rational::new(v.clone(), denom.clone());
        if self.cost[rhs].is_zero() {
            let mut x = vec![Rational::zero(); self.nvars];
            for (r, &var) in self.basis.iter().enumerate() {
                if var < self.nvars {
                    x[var] = as_rational(&self.tab[r][rhs], &self.denom);
                }
            }
            FeasibilityResult::Feasible(x)
        } else {
            // Dual of artificial i is 1 - reduced cost; undo the row scaling.
            let y = (0..self.m)
                .map(|i| {
                    let u = Rational::one() - as_rational(&self.cost[self.nvars + i], &self.denom);
                    u * Rational::from_integer(self.row_scale[i].clone())
                })
                .collect();
            FeasibilityResult::Infeasible(normalize_certificate(y))
        }
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.tab[row][col].clone();
        let pivot_row = std::mem::take(&mut self.tab[row]);
        let denom = &self.denom;
        let update = |target: &mut Vec<BigInt>| {
            let factor = target[col].clone();
            for (v, p) in target.iter_mut().zip(&pivot_row) {
                let mut next = &*v * &piv;
                if !factor.is_zero() && !p.is_zero() {
                    next -= &factor * p;
                }
                *v = if denom.is_one() { next } else { next / denom };
            }
        };
        for r in 0..self.m {
            if r != row {
                update(&mut self.tab[r]);
            }
        }
        update(&mut self.cost);
        self.tab[row] = pivot_row;
        self.denom = piv;
        self.basis[row] = col;
    }
}

/// Scale a certificate to coprime integers; positive scaling preserves validity.
fn normalize_certificate(y: Vec<Rational>) -> Vec<Rational> {
    let denom_lcm = y.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = y.iter().map(|v| (v * Rational::from_integer(denom_lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return y;
    }
    ints.into_iter().map(|v| Rational::from_integer(v / &g)).collect()
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn rank(a: &RationalMatrix) -> usize {
    // Clear denominators row by row; row scaling does not change rank.
    let mut m: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|r| {
            let row = a.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| (v * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let rows = a.rows();
    let cols = a.cols();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_is_feasible() {
        let a = RationalMatrix::from_i64_rows(&[&[1]]);
        let r = solve_feasibility(&a, &ints(&[1])).unwrap();
        assert_eq!(r, FeasibilityResult::Feasible(ints(&[1])));
    }

    #[test]
    fn negative_sum_is_infeasible() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let r = solve_feasibility(&a, &ints(&[-1])).unwrap();
        assert_eq!(r, FeasibilityResult::Infeasible(ints(&[-1])));
    }

    #[test]
    fn dimension_mismatch_is_input_error() {
        let a = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        assert!(solve_feasibility(&a, &ints(&[1, 2])).is_err());
    }

    #[test]
    fn empty_system_is_feasible_at_zero() {
        let a = RationalMatrix::zeros(0, 3);
        let r = solve_feasibility(&a, &[]).unwrap();
        assert_eq!(r, FeasibilityResult::Feasible(ints(&[0, 0, 0])));
    }

    #[test]
    fn degenerate_redundant_rows() {
        // Duplicate rows leave an artificial basic at zero level.
        let a = RationalMatrix::from_i64_rows(&[&[1, 2], &[1, 2], &[2, 4]]);
        let r = solve_feasibility(&a, &ints(&[2, 2, 4])).unwrap();
        assert!(verify_feasible(&a, &ints(&[2, 2, 4]), r.solution().unwrap()));
        let r = solve_feasibility(&a, &ints(&[2, 3, 4])).unwrap();
        assert!(!r.is_feasible());
    }

    #[test]
    fn lifted_three_point_system() {
        // Lifts of 0 and 2 into part 1 and of 1 into part 2 (d = 1, k = 2),
        // flattened row-major, plus the normalization row.
        let h = frac(1, 2);
        let a = RationalMatrix::from_rows(vec![
            vec![int(0), int(2) * &h, -&h],
            vec![int(0), -(int(2) * &h), h.clone()],
            vec![h.clone(), h.clone(), -&h],
            vec![-&h, -&h, h.clone()],
            vec![int(1), int(1), int(1)],
        ])
        .unwrap();
        let b = ints(&[0, 0, 0, 0, 1]);
        let r = solve_feasibility(&a, &b).unwrap();
        assert_eq!(r, FeasibilityResult::Feasible(vec![frac(1, 4), frac(1, 4), frac(1, 2)]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::zeros(2, 4)), 0);
        assert_eq!(rank(&RationalMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
        let m = RationalMatrix::from_rows(vec![
            vec![frac(1, 2), frac(1, 3)],
            vec![frac(3, 2), int(1)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 1);
        assert_eq!(rank(&RationalMatrix::from_i64_rows(&[&[0, 1, 2], &[1, 0, 3], &[0, 0, 0]])), 2);
    }
}
