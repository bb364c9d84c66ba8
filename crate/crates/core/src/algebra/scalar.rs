use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{Matrix, Rational, Surd};

/// Exact ring element usable as a matrix entry.
pub trait Scalar:
    Clone + Debug + PartialEq + Zero + One + std::ops::Sub<Output = Self> + std::ops::Neg<Output = Self> + Send + Sync
{
    /// Row-major product of two conforming matrices. Shapes are checked by the
    /// caller; implementations may specialise the kernel.
    fn matmul_kernel(a: &Matrix<Self>, b: &Matrix<Self>) -> Vec<Self> {
        generic_matmul(a, b)
    }
}

pub(crate) fn generic_matmul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Vec<T> {
    let (n, inner, p) = (a.rows(), a.cols(), b.cols());
    let mut out = vec![T::zero(); n * p];
    out.par_chunks_mut(p.max(1)).enumerate().for_each(|(i, row)| {
        for l in 0..inner {
            let x = &a[(i, l)];
            if x.is_zero() {
                continue;
            }
            for (j, cell) in row.iter_mut().enumerate() {
                let y = &b[(l, j)];
                if !y.is_zero() {
                    *cell = cell.clone() + x.clone() * y.clone();
                }
            }
        }
    });
    out
}

impl Scalar for i64 {}
impl Scalar for Rational {}
impl Scalar for Surd {}

impl Scalar for BigInt {
    /// Runs the product in `i64` when the worst-case accumulated magnitude
    /// provably fits, and falls back to big-integer arithmetic otherwise.
    fn matmul_kernel(a: &Matrix<Self>, b: &Matrix<Self>) -> Vec<Self> {
        let bound = |m: &Matrix<BigInt>| -> Option<i64> {
            m.entries().iter().try_fold(0i64, |acc, x| {
                x.to_i64().and_then(|v| v.checked_abs()).map(|v| acc.max(v))
            })
        };
        let fits = match (bound(a), bound(b)) {
            (Some(x), Some(y)) => x
                .checked_mul(y)
                .and_then(|xy| xy.checked_mul(a.cols().max(1) as i64))
                .is_some(),
            _ => false,
        };
        if !fits {
            return generic_matmul(a, b);
        }
        let small = |m: &Matrix<BigInt>| -> Vec<i64> { m.entries().iter().map(|x| x.to_i64().unwrap_or(0)).collect() };
        let (av, bv) = (small(a), small(b));
        let (n, inner, p) = (a.rows(), a.cols(), b.cols());
        let mut out = vec![0i64; n * p];
        out.par_chunks_mut(p.max(1)).enumerate().for_each(|(i, row)| {
            for l in 0..inner {
                let x = av[i * inner + l];
                if x == 0 {
                    continue;
                }
                let brow = &bv[l * p..(l + 1) * p];
                for (cell, &y) in row.iter_mut().zip(brow) {
                    *cell += x * y;
                }
            }
        });
        out.into_iter().map(BigInt::from).collect()
    }
}
