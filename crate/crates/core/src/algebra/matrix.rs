use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.entries[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<T>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "construct",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    /// `I_n`
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// `J_n`
    pub fn ones(n: usize) -> Self {
        Self::ones_rect(n, n)
    }

    pub fn ones_rect(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![T::one(); rows * cols],
        }
    }

    /// `K_{m,n} = I_m ⊗ J_n`, the block-diagonal group indicator.
    pub fn group_indicator(m: usize, n: usize) -> Self {
        Self::from_fn(m * n, m * n, |i, j| if i / n == j / n { T::one() } else { T::zero() })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    fn same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a.clone() + b.clone()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a.clone() - b.clone()))
    }

    /// Entrywise (Hadamard) product.
    pub fn try_hadamard(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "hadamard")?;
        Ok(self.zip_with(other, |a, b| a.clone() * b.clone()))
    }

    pub fn try_matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries: T::matmul_kernel(self, other),
        })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| c.clone() * x.clone())
    }

    /// Kronecker product: `kron(A,B)[(i·rB+k),(j·cB+l)] = A[i,j]·B[k,l]`.
    pub fn kron(&self, other: &Self) -> Self {
        let (rb, cb) = other.shape();
        Self::from_fn(self.rows * rb, self.cols * cb, |r, c| {
            let a = &self[(r / rb, c / cb)];
            if a.is_zero() {
                T::zero()
            } else {
                a.clone() * other[(r % rb, c % cb)].clone()
            }
        })
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// The `size × size` block at block coordinates `(bi, bj)`.
    pub fn block(&self, bi: usize, bj: usize, size: usize) -> Self {
        Self::from_fn(size, size, |i, j| self[(bi * size + i, bj * size + j)].clone())
    }

    /// Assembles a square block matrix from a `k × k` grid of equally sized
    /// square blocks given in row-major order.
    pub fn from_blocks(grid: usize, blocks: &[Self]) -> Result<Self> {
        if blocks.len() != grid * grid || blocks.is_empty() {
            return Err(Error::DimensionMismatch {
                op: "from_blocks",
                left: (grid, grid),
                right: (blocks.len(), 1),
            });
        }
        let s = blocks[0].rows;
        if let Some(bad) = blocks.iter().find(|b| b.shape() != (s, s)) {
            return Err(Error::DimensionMismatch {
                op: "from_blocks",
                left: (s, s),
                right: bad.shape(),
            });
        }
        Ok(Self::from_fn(grid * s, grid * s, |r, c| {
            blocks[(r / s) * grid + c / s][(r % s, c % s)].clone()
        }))
    }

    /// Applies a simultaneous row/column relabelling: `out[i,j] = self[perm[i], perm[j]]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        Self::from_fn(perm.len(), perm.len(), |i, j| self[(perm[i], perm[j])].clone())
    }

    /// Independent row and column relabelling: `out[i,j] = self[rows[i], cols[j]]`.
    pub fn permute(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(rows[i], cols[j])].clone())
    }
}

impl<T: Scalar> std::ops::Add for &Matrix<T> {
    type Output = Matrix<T>;

    fn add(self, rhs: Self) -> Matrix<T> {
        self.try_add(rhs).expect("matrix add")
    }
}

impl<T: Scalar> std::ops::Sub for &Matrix<T> {
    type Output = Matrix<T>;

    fn sub(self, rhs: Self) -> Matrix<T> {
        self.try_sub(rhs).expect("matrix sub")
    }
}

impl<T: Scalar> std::ops::Mul for &Matrix<T> {
    type Output = Matrix<T>;

    fn mul(self, rhs: Self) -> Matrix<T> {
        self.try_matmul(rhs).expect("matrix mul")
    }
}

impl Matrix<BigInt> {
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse {
                line: 0,
                msg: "ragged rows".into(),
            });
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_i64(rows.len(), cols, &flat)
    }

    /// True when every entry is 0 or 1.
    pub fn is_binary(&self) -> bool {
        self.entries().iter().all(|x| x.is_zero() || x.is_one())
    }

    /// Entries in {-1, 0, 1}.
    pub fn is_ternary(&self) -> bool {
        self.entries()
            .iter()
            .all(|x| x.is_zero() || x.is_one() || (-x).is_one())
    }

    /// Replaces -1 with 1 (`|W|`).
    pub fn abs(&self) -> Self {
        self.map(|x| if x < &BigInt::zero() { -x } else { x.clone() })
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        (0..self.rows())
            .map(|i| self.row(i).iter().fold(BigInt::zero(), |a, x| a + x))
            .collect()
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    /// "matrix v1" text: `rows cols`, then one space-separated line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntMatrix;

    fn int(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn ones_squared_is_twice_ones() {
        let j = IntMatrix::ones(2);
        assert_eq!(&j * &j, j.scale(&BigInt::from(2)));
    }

    #[test]
    fn group_indicator_squares_to_n_times_itself() {
        let k = IntMatrix::group_indicator(2, 2);
        assert_eq!(&k * &k, k.scale(&BigInt::from(2)));
    }

    #[test]
    fn kron_identity_ones_is_group_indicator() {
        let k = IntMatrix::identity(2).kron(&IntMatrix::ones(3));
        assert_eq!(k, IntMatrix::group_indicator(2, 3));
    }

    #[test]
    fn kron_swap_with_identity_is_block_antidiagonal() {
        let swap = &IntMatrix::ones(2) - &IntMatrix::identity(2);
        let got = swap.kron(&IntMatrix::identity(2));
        let want = int(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert_eq!(got, want);
    }

    #[test]
    fn kron_identity_with_swap_has_unit_row_sums() {
        let swap = &IntMatrix::ones(2) - &IntMatrix::identity(2);
        let got = IntMatrix::identity(3).kron(&swap);
        assert!(got.row_sums().iter().all(|s| s.is_one()));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = IntMatrix::zeros(2, 3);
        let b = IntMatrix::zeros(2, 3);
        assert!(matches!(a.try_matmul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(a.try_add(&IntMatrix::zeros(3, 2)).is_err());
    }

    #[test]
    fn big_entries_fall_back_to_exact_product() {
        let big = BigInt::from(i64::MAX);
        let a = IntMatrix::new(1, 2, vec![big.clone(), big.clone()]).unwrap();
        let b = a.transpose();
        let got = &a * &b;
        assert_eq!(got[(0, 0)], &big * &big * 2);
    }

    #[test]
    fn display_is_matrix_v1() {
        let m = int(&[vec![1, 0], vec![-1, 2]]);
        assert_eq!(m.to_string(), "2 2\n1 0\n-1 2\n");
    }
}
