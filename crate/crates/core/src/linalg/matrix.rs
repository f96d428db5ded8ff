use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Zero};

use super::{Field, LinalgError, Scalar};

/// Sparse matrix over a fixed field. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, field, entries: BTreeMap::new() }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_dense(field: Field, rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_i64(field: Field, rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect();
        Matrix::from_dense(field, &dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.entries.get(&(row, col)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols, "index ({row}, {col}) out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn add_to(&mut self, row: usize, col: usize, value: &Scalar) {
        let v = &self.get(row, col) + value;
        self.set(row, col, v);
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for (r, c, v) in self.entries() {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn column(&self, col: usize) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.rows];
        for (r, c, v) in self.entries() {
            if c == col {
                out[r] = v.clone();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (r, c, a) in self.entries() {
            out[r] += &(a * &v[c]);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for (r, k, a) in self.entries() {
            for (_, c, b) in other.entries.range((k, 0)..(k + 1, 0)).map(|(&(k, c), b)| (k, c, b)) {
                out.add_to(r, c, &(a * b));
            }
        }
        Ok(out)
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![self.field.zero(); self.cols]; self.rows];
        for (r, c, v) in self.entries() {
            d[r][c] = v.clone();
        }
        d
    }

    /// Appends `v` as an extra column.
    pub fn with_column(&self, v: &[Scalar]) -> Result<Matrix, LinalgError> {
        if v.len() != self.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: v.len() });
        }
        let mut m = Matrix { cols: self.cols + 1, ..self.clone() };
        for (r, x) in v.iter().enumerate() {
            m.set(r, self.cols, x.clone());
        }
        Ok(m)
    }
}

/// Row-reduced echelon form with the pivot columns, in pivot order.
struct Rref {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

/// Gauss-Jordan elimination. Columns are scanned left to right and the pivot
/// row is the smallest unused row index with a nonzero entry in that column.
fn rref(m: &Matrix) -> Rref {
    let mut a = m.to_dense();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..m.cols() {
        let Some(pr) = (next..m.rows()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(next, pr);
        let inv = a[next][col].inverse();
        for x in a[next].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot = a[next].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != next && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *x = &*x - &(&factor * p);
                    }
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == m.rows() {
            break;
        }
    }
    a.truncate(pivots.len());
    Rref { rows: a, pivots }
}

/// Rank over the matrix's field. Over the rationals this runs fraction-free
/// (Bareiss) elimination on an integer matrix obtained by clearing row
/// denominators; over a prime field it is ordinary Gaussian elimination.
pub fn rank(m: &Matrix) -> usize {
    match m.field() {
        Field::Rational => bareiss_rank(m),
        Field::Prime(_) => rref(m).pivots.len(),
    }
}

fn bareiss_rank(m: &Matrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| {
            let pairs: Vec<(BigInt, BigInt)> = row.iter().map(Scalar::to_integer_pair).collect();
            let lcm = pairs.iter().fold(BigInt::one(), |acc, (_, d)| acc.lcm(d));
            pairs.into_iter().map(|(n, d)| n * (&lcm / d)).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut k = 0;
    for col in 0..cols {
        if k == rows {
            break;
        }
        let Some(pr) = (k..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(k, pr);
        for i in (k + 1)..rows {
            for j in (col + 1)..cols {
                let v = &a[k][col] * &a[i][j] - &a[i][col] * &a[k][j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[k][col].clone();
        k += 1;
    }
    k
}

/// Basis of the null space. One vector per non-pivot column, in increasing
/// column order, with a 1 in that column.
pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let field = m.field();
    let r = rref(m);
    let mut pivot_row = vec![None; m.cols()];
    for (i, &c) in r.pivots.iter().enumerate() {
        pivot_row[c] = Some(i);
    }
    (0..m.cols())
        .filter(|&c| pivot_row[c].is_none())
        .map(|free| {
            let mut v = vec![field.zero(); m.cols()];
            v[free] = field.one();
            for (i, &pc) in r.pivots.iter().enumerate() {
                v[pc] = -&r.rows[i][free];
            }
            v
        })
        .collect()
}

/// Outcome of a span-membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Coefficients `x` with `m · x = v`.
    InSpan(Vec<Scalar>),
    NotInSpan,
}

impl Membership {
    pub fn is_in_span(&self) -> bool {
        matches!(self, Membership::InSpan(_))
    }
}

/// Decides whether `v` lies in the column span of `m` and, if so, returns one
/// solution (free variables set to zero).
pub fn solve_membership(m: &Matrix, v: &[Scalar]) -> Result<Membership, LinalgError> {
    let aug = m.with_column(v)?;
    let r = rref(&aug);
    if r.pivots.last() == Some(&m.cols()) {
        return Ok(Membership::NotInSpan);
    }
    let mut x = vec![m.field().zero(); m.cols()];
    for (i, &c) in r.pivots.iter().enumerate() {
        x[c] = r.rows[i][m.cols()].clone();
    }
    Ok(Membership::InSpan(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rational
    }

    #[test]
    fn zero_row_matrix() {
        let m = Matrix::zeros(q(), 1, 6);
        assert_eq!(rank(&m), 0);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 6);
        for (i, v) in k.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(*x, q().from_i64((i == j) as i64));
            }
        }
    }

    #[test]
    fn identity_has_full_rank_and_trivial_kernel() {
        let m = Matrix::identity(q(), 2);
        assert_eq!(rank(&m), 2);
        assert!(kernel_basis(&m).is_empty());
    }

    #[test]
    fn single_arrow_differential_kernel() {
        let m = Matrix::from_i64(q(), &[vec![-1, 1]]);
        assert_eq!(kernel_basis(&m), vec![vec![q().one(), q().one()]]);
    }

    #[test]
    fn membership_against_zero_matrix() {
        let m = Matrix::zeros(q(), 2, 3);
        let v = vec![q().one(), q().zero()];
        assert_eq!(solve_membership(&m, &v).unwrap(), Membership::NotInSpan);
        assert_eq!(
            solve_membership(&m, &[q().one()]),
            Err(LinalgError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn membership_recovers_coefficients() {
        let m = Matrix::from_i64(q(), &[vec![-1], vec![1]]);
        let v = vec![q().from_i64(2), q().from_i64(-2)];
        assert_eq!(solve_membership(&m, &v).unwrap(), Membership::InSpan(vec![q().from_i64(-2)]));
    }

    #[test]
    fn bareiss_handles_rational_entries() {
        let half = q().parse_scalar("1/2").unwrap();
        let m = Matrix::from_dense(
            q(),
            &[vec![half.clone(), q().one()], vec![q().one(), q().from_i64(2)]],
        );
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn prime_field_rank_can_drop() {
        let rows = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank(&Matrix::from_i64(q(), &rows)), 2);
        assert_eq!(rank(&Matrix::from_i64(Field::Prime(2), &rows)), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(rows in small_matrix()) {
            let m = Matrix::from_i64(q(), &rows);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert_eq!(rank(&m), rref(&m).pivots.len());
        }

        #[test]
        fn kernel_vectors_are_annihilated(rows in small_matrix(), p in prop::sample::select(vec![0u64, 3, 5])) {
            let field = if p == 0 { q() } else { Field::Prime(p) };
            let m = Matrix::from_i64(field, &rows);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), m.cols() - rank(&m));
            for w in &k {
                prop_assert!(m.mul_vec(w).unwrap().iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn membership_is_sound_and_complete(rows in small_matrix(), seed in prop::collection::vec(-2i64..=2, 6)) {
            let m = Matrix::from_i64(q(), &rows);
            let v: Vec<Scalar> = (0..m.rows()).map(|i| q().from_i64(seed[i])).collect();
            let aug = m.with_column(&v).unwrap();
            match solve_membership(&m, &v).unwrap() {
                Membership::InSpan(x) => {
                    prop_assert_eq!(m.mul_vec(&x).unwrap(), v);
                    prop_assert_eq!(rank(&aug), rank(&m));
                }
                Membership::NotInSpan => prop_assert_eq!(rank(&aug), rank(&m) + 1),
            }
        }
    }
}
