use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::designs::{check_k_commutation, verify_gdd, GddParams, IncidenceMatrix, KCommutation};
use crate::error::{precondition, Error, Result};
use crate::hadamard::is_conference;
use crate::IntMatrix;

/// Replaces `1`, `−1`, `0` by `I_2`, `J_2 − I_2`, `O_2`. The result is a
/// certified `(2n, n−1, n, 2, 0, n/2−1)` design with `AK = KA = J − K`.
pub fn conference_to_gdd(c: &IntMatrix) -> Result<(IncidenceMatrix, GddParams)> {
    if !is_conference(c) {
        return precondition("input is not a conference matrix (zero diagonal, C C^T = (n-1)I)");
    }
    let n = c.rows();
    if !n.is_multiple_of(2) {
        return precondition(format!("conference matrix order {n} must be even"));
    }
    let a = IntMatrix::from_fn(2 * n, 2 * n, |x, y| {
        let e = &c[(x / 2, y / 2)];
        let same = x % 2 == y % 2;
        let bit = if e.is_zero() {
            false
        } else if e.is_one() {
            same
        } else {
            !same
        };
        BigInt::from(bit as i64)
    });
    let n64 = n as u64;
    let params = GddParams::new(2 * n64, n64 - 1, n64, 2, 0, n64 / 2 - 1)?;
    let a = IncidenceMatrix::new(a, n, 2)?;
    verify_gdd(&a, &params).into_result()?;
    if check_k_commutation(&a) != KCommutation::MultipleOfJMinusK(BigInt::one()) {
        return Err(Error::Certification("A K = K A = J - K fails".into()));
    }
    Ok((a, params))
}
