//! Hadamard, conference and weighing matrices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::{GfContext, IntMatrix};

/// Sylvester Hadamard matrix of order `2^k`.
pub fn sylvester(order: usize) -> Result<IntMatrix> {
    if !order.is_power_of_two() {
        return Err(Error::InvalidParameters(format!(
            "Sylvester order {order} is not a power of two"
        )));
    }
    Ok(IntMatrix::from_fn(order, order, |i, j| {
        BigInt::from(if (i & j).count_ones() % 2 == 0 { 1 } else { -1 })
    }))
}

/// Paley type I Hadamard matrix of order `q + 1` for a prime power `q ≡ 3 (mod 4)`.
pub fn paley_hadamard(q: u64) -> Result<IntMatrix> {
    if q % 4 != 3 {
        return Err(Error::InvalidParameters(format!("Paley I needs q = 3 mod 4, got {q}")));
    }
    let f = GfContext::with_order(q)?;
    let s = f.order() + 1;
    // H = I + S where S is the skew core bordered with ones
    let h = IntMatrix::from_fn(s, s, |i, j| {
        let v = match (i, j) {
            (0, 0) => 1,
            (0, _) => 1,
            (_, 0) => -1,
            _ if i == j => 1,
            _ => f.quadratic_character(f.sub(crate::GfElement(j - 1), crate::GfElement(i - 1))),
        };
        BigInt::from(v)
    });
    Ok(normalize(&h))
}

/// A Hadamard matrix of the given order from the Sylvester or Paley families.
pub fn hadamard(order: usize) -> Result<IntMatrix> {
    if order.is_power_of_two() {
        return sylvester(order);
    }
    if order >= 4 && order.is_multiple_of(4) {
        if let Ok(h) = paley_hadamard(order as u64 - 1) {
            return Ok(h);
        }
    }
    Err(Error::InvalidParameters(format!(
        "no built-in Hadamard matrix of order {order}"
    )))
}

pub fn is_hadamard(h: &IntMatrix) -> bool {
    let n = h.rows();
    h.is_square()
        && h.entries().iter().all(|x| x.is_one() || (-x).is_one())
        && h * &h.transpose() == IntMatrix::identity(n).scale(&BigInt::from(n))
}

/// Negates columns, then rows, so the first row and column are all ones.
pub fn normalize(h: &IntMatrix) -> IntMatrix {
    let col_sign: Vec<BigInt> = h.row(0).to_vec();
    let tmp = IntMatrix::from_fn(h.rows(), h.cols(), |i, j| &h[(i, j)] * &col_sign[j]);
    IntMatrix::from_fn(h.rows(), h.cols(), |i, j| &tmp[(i, j)] * &tmp[(i, 0)])
}

/// First row all ones.
pub fn is_row_normalized(h: &IntMatrix) -> bool {
    h.row(0).iter().all(One::is_one)
}

/// Bush-type with `blocks × blocks` blocks: diagonal blocks all ones,
/// off-diagonal blocks with zero row and column sums.
pub fn is_bush_type(h: &IntMatrix, block: usize) -> bool {
    if block == 0 || !h.is_square() || h.rows() != block * block {
        return false;
    }
    for bi in 0..block {
        for bj in 0..block {
            let b = h.block(bi, bj, block);
            if bi == bj {
                if !b.entries().iter().all(One::is_one) {
                    return false;
                }
            } else {
                let rows_ok = b.row_sums().iter().all(Zero::is_zero);
                let cols_ok = b.transpose().row_sums().iter().all(Zero::is_zero);
                if !rows_ok || !cols_ok {
                    return false;
                }
            }
        }
    }
    true
}

/// `W Wᵀ = wI` with entries in {−1, 0, 1}.
pub fn is_weighing(w: &IntMatrix, weight: u64) -> bool {
    w.is_square() && w.is_ternary() && w * &w.transpose() == IntMatrix::identity(w.rows()).scale(&BigInt::from(weight))
}

/// Zero diagonal and `CCᵀ = (n−1)I`.
pub fn is_conference(c: &IntMatrix) -> bool {
    let n = c.rows();
    n >= 2 && (0..n).all(|i| c[(i, i)].is_zero()) && is_weighing(c, n as u64 - 1)
}

/// Symmetric Paley conference matrix of order `q + 1`, `q ≡ 1 (mod 4)` a prime power.
pub fn paley_conference(q: u64) -> Result<IntMatrix> {
    if q % 4 != 1 {
        return Err(Error::InvalidParameters(format!(
            "symmetric Paley conference needs q = 1 mod 4, got {q}"
        )));
    }
    let f = GfContext::with_order(q)?;
    let s = f.order() + 1;
    Ok(IntMatrix::from_fn(s, s, |i, j| {
        BigInt::from(match (i, j) {
            (0, 0) => 0,
            (0, _) | (_, 0) => 1,
            _ => f.quadratic_character(f.sub(crate::GfElement(j - 1), crate::GfElement(i - 1))),
        })
    }))
}
