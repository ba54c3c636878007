use num_traits::{One, Zero};

use super::{rat, RatPoly, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from rows; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Ok(RatMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn mul(&self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Characteristic polynomial det(X·I − M), monic, by the Faddeev-LeVerrier
    /// recurrence in exact rational arithmetic.
    pub fn charpoly(&self) -> Result<RatPoly> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        // coefficients c_n = 1, c_{n-1}, ..., c_0 of X^k
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut m_k = RatMatrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A·M_{k-1} + c_{n-k+1} I
            let mut next = self.mul(&m_k);
            for i in 0..n {
                next[(i, i)] += &c[n - k + 1];
            }
            m_k = next;
            let am = self.mul(&m_k);
            c[n - k] = -am.trace() / rat(k as i64);
        }
        Ok(RatPoly::new(c))
    }

    /// Row echelon form by Gaussian elimination; returns the rank.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(pivot) = (rank..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let p = m[(rank, col)].clone();
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &p;
                for j in col..m.cols {
                    let v = &f * &m[(rank, j)];
                    m[(r, j)] -= v;
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Determinant by exact Gaussian elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return Ok(Rational::zero());
            };
            if pivot != col {
                m.swap_rows(col, pivot);
                det = -det;
            }
            let p = m[(col, col)].clone();
            det *= &p;
            for r in col + 1..n {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &p;
                for j in col..n {
                    let v = &f * &m[(col, j)];
                    m[(r, j)] -= v;
                }
            }
        }
        Ok(det)
    }

    /// Solves `M·x = b` for square nonsingular `M`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_square() {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        assert_eq!(b.len(), n);
        let mut m = self.clone();
        let mut rhs = b.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m[(r, col)].is_zero()).ok_or(Error::Singular)?;
            m.swap_rows(col, pivot);
            rhs.swap(col, pivot);
            let p = m[(col, col)].clone();
            for r in 0..n {
                if r == col || m[(r, col)].is_zero() {
                    continue;
                }
                let f = &m[(r, col)] / &p;
                for j in col..n {
                    let v = &f * &m[(col, j)];
                    m[(r, j)] -= v;
                }
                let v = &f * &rhs[col];
                rhs[r] -= v;
            }
        }
        Ok((0..n).map(|i| &rhs[i] / &m[(i, i)]).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::IntPoly;

    #[test]
    fn identity_charpoly() {
        let cp = RatMatrix::identity(2).charpoly().unwrap();
        assert_eq!(cp, IntPoly::from_i64s(&[1, -2, 1]).to_rat());
    }

    #[test]
    fn companion_of_cube_root_two() {
        // multiplication by θ in Q[θ]/(θ³−2), columns = images of 1, θ, θ²
        let m = RatMatrix::from_i64_rows(&[&[0, 0, 2], &[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(m.charpoly().unwrap(), IntPoly::from_i64s(&[-2, 0, 0, 1]).to_rat());
        // θ − 1
        let m1 = RatMatrix::from_i64_rows(&[&[-1, 0, 2], &[1, -1, 0], &[0, 1, -1]]).unwrap();
        assert_eq!(m1.charpoly().unwrap(), IntPoly::from_i64s(&[-1, 3, 3, 1]).to_rat());
    }

    #[test]
    fn non_square_rejected() {
        let m = RatMatrix::zeros(2, 3);
        assert!(matches!(m.charpoly(), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RatMatrix::zeros(3, 3).rank(), 0);
        assert_eq!(RatMatrix::identity(3).rank(), 3);
        // coordinates of 1, θ², 2θ over the power basis of Q[θ]/(θ³−2)
        let m = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 1], &[0, 2, 0]]).unwrap();
        assert_eq!(m.determinant().unwrap(), rat(-2));
        assert_eq!(m.rank(), 3);
        let dep = RatMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]).unwrap();
        assert_eq!(dep.rank(), 2);
    }

    #[test]
    fn solve_small_system() {
        let m = RatMatrix::from_i64_rows(&[&[2, 1], &[1, 3]]).unwrap();
        let x = m.solve(&[rat(3), rat(5)]).unwrap();
        assert_eq!(x, vec![Rational::new(4.into(), 5.into()), Rational::new(7.into(), 5.into())]);
        let sing = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(matches!(sing.solve(&[rat(1), rat(1)]), Err(Error::Singular)));
    }
}
