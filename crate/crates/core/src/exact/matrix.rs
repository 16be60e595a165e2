use std::fmt;

use num_traits::{One, Zero};

use super::rational::{rational_from_integer, rational_to_string, ExactError, Rational};

/// Dense matrix over [`Rational`] with exact elimination algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Full description of the solution set of `A x = b` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    /// No solution.
    Inconsistent,
    /// Exactly one solution.
    Unique(Vec<Rational>),
    /// An affine family: `particular + span(null_basis)`, with one basis
    /// vector per free column, ordered by free column index.
    Parametric {
        particular: Vec<Rational>,
        null_basis: Vec<Vec<Rational>>,
    },
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ExactError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(ExactError::Dimension("ragged rows".to_owned()));
        }
        Ok(Self {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, ExactError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&n| rational_from_integer(n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        assert!(row < self.rows && col < self.cols, "index out of range");
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        assert!(row < self.rows, "row out of range");
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ExactError> {
        if self.cols != other.rows {
            return Err(ExactError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, vec: &[Rational]) -> Result<Vec<Rational>, ExactError> {
        if self.cols != vec.len() {
            return Err(ExactError::Dimension(format!(
                "cannot apply {}x{} to vector of length {}",
                self.rows,
                self.cols,
                vec.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (k, value) in vec.iter().enumerate() {
                    acc += self.get(i, k) * value;
                }
                acc
            })
            .collect())
    }

    /// `x^T A y`; for a symmetric `A` this is the bilinear pairing.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Result<Rational, ExactError> {
        if x.len() != self.rows {
            return Err(ExactError::Dimension(format!(
                "left vector length {} does not match {} rows",
                x.len(),
                self.rows
            )));
        }
        let ay = self.mul_vec(y)?;
        Ok(x.iter().zip(&ay).map(|(a, b)| a * b).sum())
    }

    /// Submatrix picking the given rows and columns, in the given order.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut out = Self::zero(row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Exact determinant by Gaussian elimination with row swaps.
    pub fn determinant(&self) -> Result<Rational, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Dimension(format!(
                "determinant of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !work.get(r, col).is_zero()) {
                Some(r) => r,
                None => return Ok(Rational::zero()),
            };
            if pivot_row != col {
                work.swap_rows(pivot_row, col);
                det = -det;
            }
            let pivot = work.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                let factor = work.get(r, col) / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    let delta = &factor * work.get(col, c);
                    let val = work.get(r, c) - delta;
                    work.set(r, c, val);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; `Err(Singular)` when the determinant vanishes.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if !self.is_square() {
            return Err(ExactError::Dimension(format!(
                "inverse of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !work.get(r, col).is_zero())
                .ok_or(ExactError::Singular)?;
            work.swap_rows(pivot_row, col);
            inv.swap_rows(pivot_row, col);
            let pivot = work.get(col, col).clone();
            work.scale_row(col, &pivot.recip());
            inv.scale_row(col, &pivot.recip());
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                work.sub_scaled_row(r, col, &factor);
                inv.sub_scaled_row(r, col, &factor);
            }
        }
        Ok(inv)
    }

    /// Solves `A x = rhs` exactly and classifies the solution set.
    pub fn solve(&self, rhs: &[Rational]) -> Result<LinearSolution, ExactError> {
        if rhs.len() != self.rows {
            return Err(ExactError::Dimension(format!(
                "right-hand side length {} does not match {} rows",
                rhs.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut work = self.clone();
        let mut b = rhs.to_vec();
        let mut pivot_cols = Vec::new();
        let mut rank = 0usize;
        for col in 0..n {
            let pivot_row = match (rank..self.rows).find(|&r| !work.get(r, col).is_zero()) {
                Some(r) => r,
                None => continue,
            };
            work.swap_rows(pivot_row, rank);
            b.swap(pivot_row, rank);
            let pivot = work.get(rank, col).clone();
            work.scale_row(rank, &pivot.recip());
            b[rank] = &b[rank] / &pivot;
            for r in 0..self.rows {
                if r == rank || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                work.sub_scaled_row(r, rank, &factor);
                let delta = &factor * &b[rank];
                b[r] = &b[r] - delta;
            }
            pivot_cols.push(col);
            rank += 1;
        }
        if b[rank..].iter().any(|v| !v.is_zero()) {
            return Ok(LinearSolution::Inconsistent);
        }
        let mut particular = vec![Rational::zero(); n];
        for (i, &col) in pivot_cols.iter().enumerate() {
            particular[col] = b[i].clone();
        }
        if rank == n {
            return Ok(LinearSolution::Unique(particular));
        }
        let mut null_basis = Vec::new();
        for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (i, &col) in pivot_cols.iter().enumerate() {
                v[col] = -work.get(i, free).clone();
            }
            null_basis.push(v);
        }
        Ok(LinearSolution::Parametric {
            particular,
            null_basis,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn scale_row(&mut self, row: usize, factor: &Rational) {
        for c in 0..self.cols {
            let val = self.get(row, c) * factor;
            self.set(row, c, val);
        }
    }

    /// `row_a -= factor * row_b`.
    fn sub_scaled_row(&mut self, row_a: usize, row_b: usize, factor: &Rational) {
        for c in 0..self.cols {
            let delta = factor * self.get(row_b, c);
            let val = self.get(row_a, c) - delta;
            self.set(row_a, c, val);
        }
    }
}

/// Free-function form of [`RationalMatrix::solve`].
pub fn solve_linear_system(
    coeffs: &RationalMatrix,
    rhs: &[Rational],
) -> Result<LinearSolution, ExactError> {
    coeffs.solve(rhs)
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational_to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rational;

    fn mat(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    fn vec_i64(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&n| rational_from_integer(n)).collect()
    }

    #[test]
    fn determinant_of_intersection_gram() {
        let g = mat(&[vec![5, 9, 11], vec![9, 9, 9], vec![11, 9, -1]]);
        assert_eq!(g.determinant().unwrap(), rational_from_integer(324));
    }

    #[test]
    fn determinant_rules() {
        assert_eq!(
            mat(&[vec![2, 0], vec![0, 3]]).determinant().unwrap(),
            rational_from_integer(6)
        );
        assert_eq!(
            mat(&[vec![1, 2], vec![2, 4]]).determinant().unwrap(),
            rational_from_integer(0)
        );
        // Odd permutation of the identity: sign must flip.
        assert_eq!(
            mat(&[vec![0, 1], vec![1, 0]]).determinant().unwrap(),
            rational_from_integer(-1)
        );
    }

    #[test]
    fn inverse_round_trip() {
        let g = mat(&[vec![5, 9, 11], vec![9, 9, 9], vec![11, 9, -1]]);
        let inv = g.inverse().unwrap();
        assert_eq!(g.mul(&inv).unwrap(), RationalMatrix::identity(3));
        assert_eq!(inv.mul(&g).unwrap(), RationalMatrix::identity(3));
        assert!(matches!(
            mat(&[vec![1, 2], vec![2, 4]]).inverse(),
            Err(ExactError::Singular)
        ));
    }

    #[test]
    fn solve_unique() {
        let a = mat(&[vec![1, 1], vec![1, -1]]);
        let sol = a.solve(&vec_i64(&[3, 1])).unwrap();
        assert_eq!(sol, LinearSolution::Unique(vec_i64(&[2, 1])));
    }

    #[test]
    fn solve_inconsistent() {
        let a = mat(&[vec![1, 1], vec![1, 1]]);
        let sol = a.solve(&vec_i64(&[1, 2])).unwrap();
        assert_eq!(sol, LinearSolution::Inconsistent);
    }

    /// The homogeneous system {3x+y=0, x+y+b=0, -x+y+2b=0} has the solution
    /// line (x, -3x, 2x).
    #[test]
    fn solve_one_parameter_family() {
        let a = mat(&[vec![3, 1, 0], vec![1, 1, 1], vec![-1, 1, 2]]);
        let sol = a.solve(&vec_i64(&[0, 0, 0])).unwrap();
        match sol {
            LinearSolution::Parametric {
                particular,
                null_basis,
            } => {
                assert_eq!(particular, vec_i64(&[0, 0, 0]));
                assert_eq!(null_basis.len(), 1);
                let v = &null_basis[0];
                // Up to scale, the direction is (1, -3, 2).
                let scale = v[0].clone();
                assert!(!scale.is_zero());
                assert_eq!(&v[1] / &scale, rational_from_integer(-3));
                assert_eq!(&v[2] / &scale, rational_from_integer(2));
            }
            other => panic!("expected a one-parameter family, got {other:?}"),
        }
    }

    #[test]
    fn solve_wide_system_with_two_free_columns() {
        let a = mat(&[vec![1, 1, 1, 1]]);
        match a.solve(&vec_i64(&[4])).unwrap() {
            LinearSolution::Parametric {
                particular,
                null_basis,
            } => {
                assert_eq!(particular, vec_i64(&[4, 0, 0, 0]));
                assert_eq!(null_basis.len(), 3);
                for v in &null_basis {
                    let dot: Rational = v.iter().map(std::clone::Clone::clone).sum();
                    assert!(dot.is_zero());
                }
            }
            other => panic!("expected a parametric family, got {other:?}"),
        }
    }

    #[test]
    fn bilinear_pairing() {
        let g = mat(&[vec![5, 9, 11], vec![9, 9, 9], vec![11, 9, -1]]);
        let d1 = [
            parse_rational("1/9").unwrap(),
            parse_rational("-1/9").unwrap(),
            parse_rational("2/9").unwrap(),
        ];
        let d2 = [
            parse_rational("-1/9").unwrap(),
            parse_rational("5/9").unwrap(),
            parse_rational("-2/9").unwrap(),
        ];
        assert_eq!(
            g.bilinear(&d1, &d2).unwrap(),
            parse_rational("8/9").unwrap()
        );
        assert_eq!(g.bilinear(&d1, &d1).unwrap(), Rational::zero());
    }

    #[test]
    fn shape_errors() {
        assert!(RationalMatrix::from_i64_rows(&[vec![1, 2], vec![3]]).is_err());
        let a = mat(&[vec![1, 2], vec![3, 4]]);
        assert!(a.mul_vec(&vec_i64(&[1])).is_err());
        assert!(a.solve(&vec_i64(&[1, 2, 3])).is_err());
        assert!(mat(&[vec![1, 2]]).determinant().is_err());
    }
}
