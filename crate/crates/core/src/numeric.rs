//! Exact arithmetic backbone: arbitrary-precision rationals, multi-argument
//! Bezout identities, rational Gaussian elimination and integer feasibility
//! of linear systems via the Hermite normal form.
//!
//! Everything here is pure and deterministic; all values are canonically
//! reduced so that equality is structural.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used for all function values and coefficients.
///
/// `BigRational` keeps the canonical form the rest of the crate relies on:
/// the fraction is always reduced and the denominator is always positive.
pub type Rat = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericError {
    #[error("empty input")]
    EmptyInput,
    #[error("zero element at index {index}")]
    ZeroElement { index: usize },
    #[error("argument {index} is not positive")]
    NonPositive { index: usize },
    #[error("row {row} has {actual} entries, expected {expected}")]
    ShapeMismatch {
        row: usize,
        expected: usize,
        actual: usize,
    },
    #[error("entry at row {row}, column {col} is not an integer")]
    NonIntegerEntry { row: usize, col: usize },
    #[error("cannot parse {input:?} as a rational")]
    ParseRational { input: String },
}

/// Shorthand for an integer-valued [`Rat`].
pub fn rat_int<T: Into<BigInt>>(n: T) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the rational `p/q`. Panics when `q == 0`.
pub fn rat<T: Into<BigInt>, U: Into<BigInt>>(p: T, q: U) -> Rat {
    Rat::new(p.into(), q.into())
}

/// Renders a rational as `p/q`, or plain `p` when the denominator is one.
///
/// This is the single serialization used wherever rationals cross a file
/// boundary.
pub fn format_rational(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p/q` or a bare integer `p`; the inverse of [`format_rational`].
pub fn parse_rational(text: &str) -> Result<Rat, NumericError> {
    let err = || NumericError::ParseRational {
        input: text.to_string(),
    };
    let mut pieces = text.splitn(2, '/');
    let numer: BigInt = pieces.next().ok_or_else(err)?.trim().parse().map_err(|_| err())?;
    match pieces.next() {
        None => Ok(Rat::from_integer(numer)),
        Some(d) => {
            let denom: BigInt = d.trim().parse().map_err(|_| err())?;
            if denom.is_zero() {
                return Err(err());
            }
            Ok(Rat::new(numer, denom))
        }
    }
}

/// Two-argument extended Euclid: returns `(g, x, y)` with `x*a + y*b = g`
/// and `g = gcd(|a|, |b|) >= 0`.
fn ext_gcd2(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = &old_r / &r;
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.sign() == Sign::Minus {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Multi-argument Bezout identity: returns `(g, d)` with
/// `g = gcd(|m_1|, ..., |m_k|) > 0` and `sum_i d_i * m_i = g`.
pub fn ext_gcd(values: &[BigInt]) -> Result<(BigInt, Vec<BigInt>), NumericError> {
    if values.is_empty() {
        return Err(NumericError::EmptyInput);
    }
    if let Some(index) = values.iter().position(|v| v.is_zero()) {
        return Err(NumericError::ZeroElement { index });
    }
    let mut g = values[0].abs();
    let mut coeffs = vec![if values[0].sign() == Sign::Minus {
        -BigInt::one()
    } else {
        BigInt::one()
    }];
    for m in &values[1..] {
        let (g_next, a, b) = ext_gcd2(&g, m);
        for c in &mut coeffs {
            *c *= &a;
        }
        coeffs.push(b);
        g = g_next;
    }
    Ok((g, coeffs))
}

/// Least common multiple of two positive rationals: the smallest positive `q`
/// with `q/a` and `q/b` both integers, namely `lcm(p1,p2)/gcd(r1,r2)` for
/// `a = p1/r1`, `b = p2/r2`.
pub fn rational_lcm(a: &Rat, b: &Rat) -> Result<Rat, NumericError> {
    if !a.is_positive() {
        return Err(NumericError::NonPositive { index: 0 });
    }
    if !b.is_positive() {
        return Err(NumericError::NonPositive { index: 1 });
    }
    Ok(Rat::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom())))
}

/// A linear system `A x = rhs` with exact rational entries.
///
/// Rows are equations; the column count is the number of unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrixSystem {
    coeffs: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    unknowns: usize,
}

impl RatMatrixSystem {
    pub fn new(coeffs: Vec<Vec<Rat>>, rhs: Vec<Rat>) -> Result<Self, NumericError> {
        let unknowns = coeffs.first().map_or(0, |r| r.len());
        for (row, r) in coeffs.iter().enumerate() {
            if r.len() != unknowns {
                return Err(NumericError::ShapeMismatch {
                    row,
                    expected: unknowns,
                    actual: r.len(),
                });
            }
        }
        if rhs.len() != coeffs.len() {
            return Err(NumericError::ShapeMismatch {
                row: rhs.len(),
                expected: coeffs.len(),
                actual: rhs.len(),
            });
        }
        Ok(Self {
            coeffs,
            rhs,
            unknowns,
        })
    }

    pub fn equations(&self) -> usize {
        self.coeffs.len()
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Substitutes `solution` into every equation and checks it exactly.
    pub fn satisfied_by(&self, solution: &[Rat]) -> bool {
        solution.len() == self.unknowns
            && self.coeffs.iter().zip(&self.rhs).all(|(row, b)| {
                let lhs: Rat = row
                    .iter()
                    .zip(solution)
                    .map(|(a, x)| a * x)
                    .fold(Rat::zero(), |acc, v| acc + v);
                lhs == *b
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Feasible(Vec<Rat>),
    Infeasible,
}

/// Exact Gauss-Jordan elimination. Pivots on the first nonzero entry of each
/// column; free unknowns are set to zero, so the result is deterministic.
pub fn gauss_solve(system: &RatMatrixSystem) -> LinearSolution {
    let rows = system.equations();
    let cols = system.unknowns();
    let mut a = system.coeffs.clone();
    let mut b = system.rhs.clone();

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0usize;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot_row, found);
        b.swap(pivot_row, found);
        let inv = a[pivot_row][col].recip();
        for entry in a[pivot_row].iter_mut().skip(col) {
            *entry *= &inv;
        }
        b[pivot_row] *= &inv;
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut a[r][col], Rat::zero());
            let (target, source) = two_rows(&mut a, r, pivot_row);
            for (dst, src) in target.iter_mut().zip(source.iter()).skip(col + 1) {
                *dst -= &factor * src;
            }
            let delta = &factor * &b[pivot_row];
            b[r] -= delta;
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }

    // Any remaining row reads 0 = b, which must be exactly zero.
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return LinearSolution::Infeasible;
    }

    let mut solution = vec![Rat::zero(); cols];
    for (row, &col) in pivot_cols.iter().enumerate() {
        solution[col] = b[row].clone();
    }
    LinearSolution::Feasible(solution)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntegerSolution {
    Feasible(Vec<BigInt>),
    Infeasible,
}

/// Disjoint mutable/shared access to two distinct rows of a matrix.
fn two_rows<T>(rows: &mut [Vec<T>], target: usize, source: usize) -> (&mut Vec<T>, &Vec<T>) {
    debug_assert_ne!(target, source);
    if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    }
}

/// `rows[target] += q * rows[source]`, exactly.
fn row_axpy(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (dst_row, src_row) = two_rows(rows, target, source);
    for (dst, src) in dst_row.iter_mut().zip(src_row.iter()) {
        *dst += q * src;
    }
}

/// Row-style Hermite normal form computed in place, returning the unimodular
/// transform `U` with `U * original = hnf`.
fn hermite_normal_form(m: &mut [Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut row = vec![BigInt::zero(); rows];
            row[i] = BigInt::one();
            row
        })
        .collect();

    let mut r = 0usize;
    let mut c = 0usize;
    while r < rows && c < cols {
        // Pivot: smallest nonzero magnitude in the column at or below r.
        let pivot = (r..rows)
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()));
        let Some(pivot) = pivot else {
            c += 1;
            continue;
        };
        m.swap(r, pivot);
        u.swap(r, pivot);

        for k in r + 1..rows {
            if !m[k][c].is_zero() {
                let q = -(&m[k][c] / &m[r][c]);
                row_axpy(m, k, r, &q);
                row_axpy(&mut u, k, r, &q);
            }
        }
        // Truncating division may leave remainders; repeat on this column.
        if (r + 1..rows).any(|k| !m[k][c].is_zero()) {
            continue;
        }
        if m[r][c].sign() == Sign::Minus {
            for v in m[r].iter_mut() {
                *v = -std::mem::take(v);
            }
            for v in u[r].iter_mut() {
                *v = -std::mem::take(v);
            }
        }
        for k in 0..r {
            let q = -m[k][c].div_floor(&m[r][c]);
            if !q.is_zero() {
                row_axpy(m, k, r, &q);
                row_axpy(&mut u, k, r, &q);
            }
        }
        r += 1;
        c += 1;
    }
    u
}

/// Decides whether `A x = rhs` has an integer solution and produces one
/// witness when it does.
///
/// The lattice spanned by the rows of `[A^T 0; rhs^T 1]` contains the unit
/// vector `(0,...,0,1)` exactly when `-rhs` is an integer combination of the
/// columns of `A`; the Hermite normal form exposes that row together with the
/// combination that produced it.
pub fn hnf_solve_integer(system: &RatMatrixSystem) -> Result<IntegerSolution, NumericError> {
    let rows = system.equations();
    let cols = system.unknowns();
    let mut int_coeffs = vec![vec![BigInt::zero(); cols]; rows];
    let mut int_rhs = vec![BigInt::zero(); rows];
    for (i, row) in system.coeffs.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.denom().is_one() {
                return Err(NumericError::NonIntegerEntry { row: i, col: j });
            }
            int_coeffs[i][j] = v.numer().clone();
        }
        if !system.rhs[i].denom().is_one() {
            return Err(NumericError::NonIntegerEntry { row: i, col: cols });
        }
        int_rhs[i] = system.rhs[i].numer().clone();
    }

    // Stacked matrix: one row per unknown holding the matching column of A,
    // plus a final row (rhs, 1).
    let mut stacked: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..rows).map(|i| int_coeffs[i][j].clone()).collect();
            row.push(BigInt::zero());
            row
        })
        .collect();
    let mut last: Vec<BigInt> = int_rhs.clone();
    last.push(BigInt::one());
    stacked.push(last);

    let u = hermite_normal_form(&mut stacked);
    let rank = stacked
        .iter()
        .take_while(|row| row.iter().any(|v| !v.is_zero()))
        .count();
    if rank == 0 {
        // A and rhs are both zero; the zero vector solves the system.
        return Ok(IntegerSolution::Feasible(vec![BigInt::zero(); cols]));
    }
    let r = rank - 1;
    let solvable =
        stacked[r][rows].is_one() && stacked[r][..rows].iter().all(|v| v.is_zero());
    if !solvable {
        return Ok(IntegerSolution::Infeasible);
    }
    let witness: Vec<BigInt> = u[r][..cols].iter().map(|v| -v.clone()).collect();
    debug_assert!({
        let as_rat: Vec<Rat> = witness.iter().cloned().map(Rat::from_integer).collect();
        system.satisfied_by(&as_rat)
    });
    Ok(IntegerSolution::Feasible(witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bigs(values: &[i64]) -> Vec<BigInt> {
        values.iter().map(|&v| BigInt::from(v)).collect()
    }

    fn check_bezout(values: &[i64]) {
        let input = bigs(values);
        let (g, d) = ext_gcd(&input).unwrap();
        assert!(g.is_positive());
        let combo: BigInt = d.iter().zip(&input).map(|(a, b)| a * b).sum();
        assert_eq!(combo, g, "identity fails for {values:?}");
        for v in &input {
            assert!((v % &g).is_zero());
        }
    }

    #[test]
    fn ext_gcd_small_identities() {
        let (g, d) = ext_gcd(&bigs(&[2, 3])).unwrap();
        assert_eq!(g, BigInt::from(1));
        assert_eq!(&d[0] * 2 + &d[1] * 3, BigInt::one());

        let (g, d) = ext_gcd(&bigs(&[5])).unwrap();
        assert_eq!(g, BigInt::from(5));
        assert_eq!(d, bigs(&[1]));

        let (g, d) = ext_gcd(&bigs(&[4, 6])).unwrap();
        assert_eq!(g, BigInt::from(2));
        assert_eq!(&d[0] * 4 + &d[1] * 6, BigInt::from(2));
    }

    #[test]
    fn ext_gcd_rejects_bad_input() {
        assert_eq!(ext_gcd(&[]).unwrap_err(), NumericError::EmptyInput);
        assert_eq!(
            ext_gcd(&bigs(&[3, 0, 5])).unwrap_err(),
            NumericError::ZeroElement { index: 1 }
        );
    }

    #[test]
    fn ext_gcd_identity_sweep() {
        for a in [-9i64, -4, -1, 1, 2, 6, 12] {
            for b in [-6i64, -3, 2, 5, 9] {
                for c in [1i64, -8, 10] {
                    check_bezout(&[a, b, c]);
                }
                check_bezout(&[a, b]);
            }
        }
    }

    #[test]
    fn rational_lcm_examples() {
        assert_eq!(rational_lcm(&rat_int(1), &rat_int(2)).unwrap(), rat_int(2));
        assert_eq!(rational_lcm(&rat(1, 2), &rat(1, 3)).unwrap(), rat_int(1));
        assert_eq!(rational_lcm(&rat(3, 4), &rat(1, 2)).unwrap(), rat(3, 2));
        assert_eq!(
            rational_lcm(&rat(-1, 2), &rat_int(1)).unwrap_err(),
            NumericError::NonPositive { index: 0 }
        );
    }

    /// Brute minimality: scan multiples of 1/(r1*r2) below the returned value.
    #[test]
    fn rational_lcm_is_minimal() {
        let cases = [
            (rat(1, 2), rat(1, 3)),
            (rat(3, 4), rat(1, 2)),
            (rat(2, 3), rat(5, 6)),
            (rat_int(4), rat_int(6)),
            (rat(7, 10), rat(3, 4)),
        ];
        for (a, b) in cases {
            let l = rational_lcm(&a, &b).unwrap();
            assert!((&l / &a).denom().is_one(), "{l} not divisible by {a}");
            assert!((&l / &b).denom().is_one(), "{l} not divisible by {b}");
            let step = Rat::new(BigInt::one(), a.denom() * b.denom());
            let mut candidate = step.clone();
            while candidate < l {
                let both = (&candidate / &a).denom().is_one() && (&candidate / &b).denom().is_one();
                assert!(!both, "{candidate} is a smaller common multiple than {l}");
                candidate += &step;
            }
        }
    }

    fn system(coeffs: &[&[i64]], rhs: &[i64]) -> RatMatrixSystem {
        RatMatrixSystem::new(
            coeffs
                .iter()
                .map(|row| row.iter().map(|&v| rat_int(v)).collect())
                .collect(),
            rhs.iter().map(|&v| rat_int(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn gauss_feasible_simple() {
        let sys = system(&[&[1, 1]], &[1]);
        match gauss_solve(&sys) {
            LinearSolution::Feasible(sol) => {
                assert!(sys.satisfied_by(&sol));
                assert_eq!(sol, vec![rat_int(1), rat_int(0)]);
            }
            LinearSolution::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn gauss_detects_inconsistency() {
        // x + y = 1 and x + y = 2 cannot both hold.
        let sys = system(&[&[1, 1], &[1, 1]], &[1, 2]);
        assert_eq!(gauss_solve(&sys), LinearSolution::Infeasible);
    }

    /// The six-unknown system of the four-point instance with three
    /// order-two translations; rationally feasible, integrally not.
    fn klein_system() -> RatMatrixSystem {
        system(
            &[
                &[1, 0, 1, 0, 1, 0],
                &[0, 1, 1, 0, 0, 1],
                &[1, 0, 0, 1, 0, 1],
                &[0, 1, 0, 1, 1, 0],
            ],
            &[0, 1, 1, 1],
        )
    }

    #[test]
    fn gauss_klein_feasible() {
        match gauss_solve(&klein_system()) {
            LinearSolution::Feasible(sol) => assert!(klein_system().satisfied_by(&sol)),
            LinearSolution::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn hnf_klein_infeasible() {
        assert_eq!(
            hnf_solve_integer(&klein_system()).unwrap(),
            IntegerSolution::Infeasible
        );
    }

    /// Unknowns split as (2 per residue mod 2) + (3 per residue mod 3) with
    /// one equation per point of a six-point cycle and f = [1,0,0,0,0,0].
    #[test]
    fn gauss_six_cycle_infeasible() {
        let sys = system(
            &[
                &[1, 0, 1, 0, 0],
                &[0, 1, 0, 1, 0],
                &[1, 0, 0, 0, 1],
                &[0, 1, 1, 0, 0],
                &[1, 0, 0, 1, 0],
                &[0, 1, 0, 0, 1],
            ],
            &[1, 0, 0, 0, 0, 0],
        );
        assert_eq!(gauss_solve(&sys), LinearSolution::Infeasible);
    }

    #[test]
    fn hnf_parity_and_trivial() {
        let sys = system(&[&[2]], &[1]);
        assert_eq!(hnf_solve_integer(&sys).unwrap(), IntegerSolution::Infeasible);

        let sys = system(&[&[1, 1]], &[1]);
        match hnf_solve_integer(&sys).unwrap() {
            IntegerSolution::Feasible(sol) => {
                let as_rat: Vec<Rat> = sol.into_iter().map(Rat::from_integer).collect();
                assert!(sys.satisfied_by(&as_rat));
            }
            IntegerSolution::Infeasible => panic!("expected feasible"),
        }
    }

    #[test]
    fn hnf_rejects_fractional_entries() {
        let sys = RatMatrixSystem::new(vec![vec![rat(1, 2)]], vec![rat_int(1)]).unwrap();
        assert_eq!(
            hnf_solve_integer(&sys).unwrap_err(),
            NumericError::NonIntegerEntry { row: 0, col: 0 }
        );
    }

    #[test]
    fn integer_feasibility_implies_rational() {
        let sys = system(&[&[3, 5], &[1, 2]], &[1, 1]);
        let int = hnf_solve_integer(&sys).unwrap();
        match int {
            IntegerSolution::Feasible(sol) => {
                let as_rat: Vec<Rat> = sol.into_iter().map(Rat::from_integer).collect();
                assert!(sys.satisfied_by(&as_rat));
                assert!(matches!(gauss_solve(&sys), LinearSolution::Feasible(_)));
            }
            IntegerSolution::Infeasible => panic!("expected feasible"),
        }
    }

    /// Known-verdict oracle: start from a diagonal system whose integer
    /// feasibility is a divisibility check, then scramble it with row
    /// operations (solution-set preserving) and unimodular column operations
    /// (bijective change of integer variables).
    #[test]
    fn hnf_agrees_with_scrambled_diagonal_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let n = rng.gen_range(1..=4usize);
            let mut a = vec![vec![BigInt::zero(); n]; n];
            let mut b = vec![BigInt::zero(); n];
            let mut feasible = true;
            for i in 0..n {
                let d = rng.gen_range(0..=4i64);
                let r = rng.gen_range(-6..=6i64);
                a[i][i] = BigInt::from(d);
                b[i] = BigInt::from(r);
                feasible &= if d == 0 { r == 0 } else { r % d == 0 };
            }
            for _ in 0..12 {
                match rng.gen_range(0..4u8) {
                    0 => {
                        // row_i += q * row_j (and rhs alike)
                        let i = rng.gen_range(0..n);
                        let j = rng.gen_range(0..n);
                        if i != j {
                            let q = BigInt::from(rng.gen_range(-2..=2i64));
                            row_axpy(&mut a, i, j, &q);
                            let delta = &q * &b[j];
                            b[i] += delta;
                        }
                    }
                    1 => {
                        let i = rng.gen_range(0..n);
                        let j = rng.gen_range(0..n);
                        a.swap(i, j);
                        b.swap(i, j);
                    }
                    2 => {
                        // col_i += q * col_j: unimodular substitution
                        let i = rng.gen_range(0..n);
                        let j = rng.gen_range(0..n);
                        if i != j {
                            let q = BigInt::from(rng.gen_range(-2..=2i64));
                            for row in a.iter_mut() {
                                let delta = &q * &row[j];
                                row[i] += delta;
                            }
                        }
                    }
                    _ => {
                        let i = rng.gen_range(0..n);
                        for row in a.iter_mut() {
                            row[i] = -std::mem::take(&mut row[i]);
                        }
                    }
                }
            }
            let sys = RatMatrixSystem::new(
                a.iter()
                    .map(|row| row.iter().cloned().map(Rat::from_integer).collect())
                    .collect(),
                b.iter().cloned().map(Rat::from_integer).collect(),
            )
            .unwrap();
            match hnf_solve_integer(&sys).unwrap() {
                IntegerSolution::Feasible(sol) => {
                    assert!(feasible, "oracle says infeasible, hnf found a witness");
                    let as_rat: Vec<Rat> = sol.into_iter().map(Rat::from_integer).collect();
                    assert!(sys.satisfied_by(&as_rat));
                }
                IntegerSolution::Infeasible => assert!(!feasible, "oracle says feasible"),
            }
        }
    }

    /// Small-system agreement with exhaustive search over a coordinate box.
    /// The box is grown from the magnitude of the rational solution; a
    /// brute-force hit forces hnf-feasibility, and every hnf witness must
    /// satisfy the system exactly.
    #[test]
    fn hnf_agrees_with_bounded_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xb0c5);
        for _ in 0..80 {
            let rows = rng.gen_range(1..=3usize);
            let cols = rng.gen_range(1..=3usize);
            let coeffs: Vec<Vec<Rat>> = (0..rows)
                .map(|_| (0..cols).map(|_| rat_int(rng.gen_range(-3..=3i64))).collect())
                .collect();
            let rhs: Vec<Rat> = (0..rows).map(|_| rat_int(rng.gen_range(-3..=3i64))).collect();
            let sys = RatMatrixSystem::new(coeffs, rhs).unwrap();

            let bound: i64 = match gauss_solve(&sys) {
                LinearSolution::Infeasible => 0,
                LinearSolution::Feasible(sol) => {
                    let max_abs = sol
                        .iter()
                        .map(|v| {
                            (v.numer().abs() / v.denom() + BigInt::one())
                                .try_into()
                                .unwrap_or(i64::MAX)
                        })
                        .max()
                        .unwrap_or(0i64);
                    (max_abs + 6).min(8)
                }
            };
            let mut brute: Option<Vec<BigInt>> = None;
            if bound > 0 {
                let width = (2 * bound + 1) as usize;
                'search: for pack in 0..width.pow(cols as u32) {
                    let mut rest = pack;
                    let candidate: Vec<BigInt> = (0..cols)
                        .map(|_| {
                            let c = (rest % width) as i64 - bound;
                            rest /= width;
                            BigInt::from(c)
                        })
                        .collect();
                    let as_rat: Vec<Rat> =
                        candidate.iter().cloned().map(Rat::from_integer).collect();
                    if sys.satisfied_by(&as_rat) {
                        brute = Some(candidate);
                        break 'search;
                    }
                }
            }
            match hnf_solve_integer(&sys).unwrap() {
                IntegerSolution::Feasible(sol) => {
                    let as_rat: Vec<Rat> = sol.into_iter().map(Rat::from_integer).collect();
                    assert!(sys.satisfied_by(&as_rat));
                }
                IntegerSolution::Infeasible => {
                    assert!(brute.is_none(), "brute force found {brute:?}");
                }
            }
        }
    }

    #[test]
    fn rational_serialization_round_trip() {
        for text in ["0", "7", "-3", "1/2", "-11/4"] {
            let value = parse_rational(text).unwrap();
            assert_eq!(format_rational(&value), text);
        }
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert!(parse_rational("1.5").is_err());
    }
}
