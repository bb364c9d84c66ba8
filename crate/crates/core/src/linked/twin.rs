use num_bigint::BigInt;
#[cfg(test)]
use num_traits::Signed;
use num_traits::{One, Zero};

use crate::designs::{check_k_commutation, verify_gdd, GddParams, IncidenceMatrix, KCommutation};
use crate::error::{precondition, Error, Result};
use crate::hadamard::is_weighing;
use crate::resolvable::aux_from_hadamard;
use crate::IntMatrix;

/// Two symmetric GDDs with `A⁺ + A⁻ + K = J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinPair {
    pub plus: IncidenceMatrix,
    pub minus: IncidenceMatrix,
    pub params: GddParams,
}

/// `A⁺ = Σ W_{i,1}⊗C_i + W_{i,2}⊗(J−C_i)`, `A⁻ = Σ W_{i,1}⊗(J−C_i) + W_{i,2}⊗C_i`
/// where `W_i = W_{i,1} − W_{i,2}` and `C_i` are the auxiliary matrices of
/// the normalized Hadamard matrix `h` of order `n`. The weighing matrices
/// have order `ℓ = (n−1)m + 1`, weight `m`, and `Σ|W_i| = J − I`.
///
/// Both designs are certified with parameters
/// `(nℓ, n(n−1)m/2, ℓ, n, n(n−2)m/4, n((n−1)m−1)/4)`.
pub fn build_twin(h: &IntMatrix, ws: &[IntMatrix]) -> Result<TwinPair> {
    let aux = aux_from_hadamard(h)?;
    let n = h.rows();
    if ws.len() != n - 1 {
        return precondition(format!("need n-1 = {} weighing matrices, got {}", n - 1, ws.len()));
    }
    let ell = ws[0].rows();
    if ell < 2 || !(ell - 1).is_multiple_of(n - 1) {
        return precondition(format!("weighing order {ell} is not (n-1)m+1 for n = {n}"));
    }
    let m = (ell - 1) / (n - 1);
    if let Some(i) = ws
        .iter()
        .position(|w| w.shape() != (ell, ell) || !is_weighing(w, m as u64))
    {
        return precondition(format!(
            "W_{} is not a weighing matrix of order {ell} and weight {m}",
            i + 1
        ));
    }
    let support = ws.iter().fold(IntMatrix::zeros(ell, ell), |acc, w| &acc + &w.abs());
    if support != &IntMatrix::ones(ell) - &IntMatrix::identity(ell) {
        return precondition("the supports |W_i| do not sum to J - I");
    }
    let (n64, m64, l64) = (n as u64, m as u64, ell as u64);
    let nums = [
        n64 * (n64 - 1) * m64,
        n64 * (n64 - 2) * m64,
        n64 * ((n64 - 1) * m64 - 1),
    ];
    if nums[0] % 2 != 0 || nums[1] % 4 != 0 || nums[2] % 4 != 0 {
        return Err(Error::InvalidParameters(format!(
            "twin parameters are not integral at n={n}, m={m}"
        )));
    }
    let params = GddParams::new(n64 * l64, nums[0] / 2, l64, n64, nums[1] / 4, nums[2] / 4)?;

    let jn = IntMatrix::ones(n);
    let mut plus = IntMatrix::zeros(n * ell, n * ell);
    let mut minus = IntMatrix::zeros(n * ell, n * ell);
    for (w, c) in ws.iter().zip(aux.matrices()) {
        let w1 = w.map(|e| BigInt::from((e.is_one()) as i64));
        let w2 = w.map(|e| BigInt::from((!e.is_zero() && !e.is_one()) as i64));
        let jc = &jn - c;
        plus = &(&plus + &w1.kron(c)) + &w2.kron(&jc);
        minus = &(&minus + &w1.kron(&jc)) + &w2.kron(c);
    }
    let plus = IncidenceMatrix::new(plus, ell, n)?;
    let minus = IncidenceMatrix::new(minus, ell, n)?;
    verify_gdd(&plus, &params).into_result()?;
    verify_gdd(&minus, &params).into_result()?;
    let k_mat = params.group_indicator();
    if &(plus.matrix() + minus.matrix()) + &k_mat != IntMatrix::ones(n * ell) {
        return Err(Error::Certification("A+ + A- + K = J fails".into()));
    }
    let want = KCommutation::MultipleOfJMinusK(BigInt::from(n / 2));
    for (name, a) in [("A+", &plus), ("A-", &minus)] {
        if check_k_commutation(a) != want {
            return Err(Error::Certification(format!("{name} K = K {name} = (n/2)(J-K) fails")));
        }
    }
    Ok(TwinPair { plus, minus, params })
}

/// `ℓ − 1` weight-1 weighing matrices of order `ℓ` with disjoint supports
/// covering `J − I`: `W_s` has its non-zero in row `r` at column
/// `(r + s) mod ℓ`, negative when that column is left of the diagonal.
pub fn signed_permutation_weighing(ell: usize) -> Vec<IntMatrix> {
    (1..ell)
        .map(|s| {
            IntMatrix::from_fn(ell, ell, |r, c| {
                if c != (r + s) % ell {
                    BigInt::zero()
                } else if c < r {
                    -BigInt::one()
                } else {
                    BigInt::one()
                }
            })
        })
        .collect()
}
