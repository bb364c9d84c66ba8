//! Symmetric group divisible designs: parameters, certification, partial
//! complements and the `K_{m,n}` commutation classes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{precondition, Error, Result};
use crate::report::Certificate;
use crate::{IntMatrix, Rational};

/// Parameters `(v, k, m, n, λ1, λ2)` of a symmetric GDD with `m` groups of
/// size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GddParams {
    pub v: u64,
    pub k: u64,
    pub m: u64,
    pub n: u64,
    pub lambda1: u64,
    pub lambda2: u64,
}

impl GddParams {
    /// Validates `v = mn`, `m, n ≥ 2`, `k² = k + λ1(n−1) + λ2(v−n)` and `λ1 < k`.
    pub fn new(v: u64, k: u64, m: u64, n: u64, lambda1: u64, lambda2: u64) -> Result<Self> {
        if m < 2 || n < 2 {
            return Err(Error::InvalidParameters(format!("need m, n >= 2 (m={m}, n={n})")));
        }
        if v != m * n {
            return Err(Error::InvalidParameters(format!("v={v} != m*n={}", m * n)));
        }
        if k == lambda1 {
            return Err(Error::DegenerateDesign(k));
        }
        if lambda1 > k {
            return Err(Error::InvalidParameters(format!("lambda1={lambda1} exceeds k={k}")));
        }
        let lhs = BigInt::from(k) * k;
        let rhs = BigInt::from(k) + BigInt::from(lambda1) * (n - 1) + BigInt::from(lambda2) * (v - n);
        if lhs != rhs {
            return Err(Error::InvalidParameters(format!(
                "k^2 = {lhs} but k + l1(n-1) + l2(v-n) = {rhs}"
            )));
        }
        Ok(Self {
            v,
            k,
            m,
            n,
            lambda1,
            lambda2,
        })
    }

    pub fn from_groups(k: u64, m: u64, n: u64, lambda1: u64, lambda2: u64) -> Result<Self> {
        Self::new(m * n, k, m, n, lambda1, lambda2)
    }

    /// `kI + λ1(K−I) + λ2(J−K)`, the required value of `AAᵀ` and `AᵀA`.
    pub fn gram_matrix(&self) -> IntMatrix {
        let n = self.n as usize;
        IntMatrix::from_fn(self.v as usize, self.v as usize, |i, j| {
            BigInt::from(if i == j {
                self.k
            } else if i / n == j / n {
                self.lambda1
            } else {
                self.lambda2
            })
        })
    }

    pub fn group_indicator(&self) -> IntMatrix {
        IntMatrix::group_indicator(self.m as usize, self.n as usize)
    }

    /// `k/(m−1)`, the row sum of every off-diagonal block when `A + K` is a design.
    pub fn block_row_sum(&self) -> Rational {
        Rational::new(self.k.into(), (self.m - 1).into())
    }

    /// Parameters of the partial complement `J − K − A`.
    pub fn partial_complement(&self) -> Result<Self> {
        let extra = self.block_row_sum() * Rational::from_integer(2.into());
        if !extra.is_integer() {
            return Err(Error::InvalidParameters(format!(
                "infeasible partial complement: 2k/(m-1) = {extra} is not an integer"
            )));
        }
        let (v, k, n) = (self.v as i128, self.k as i128, self.n as i128);
        let extra: i128 = extra.to_integer().try_into().expect("small");
        let kc = v - k - n;
        let l1c = v - n - 2 * k + self.lambda1 as i128;
        let l2c = v - 2 * n - 2 * k + self.lambda2 as i128 + extra;
        if kc < 0 || l1c < 0 || l2c < 0 {
            return Err(Error::InvalidParameters(format!(
                "infeasible partial complement ({v},{kc},{},{n},{l1c},{l2c})",
                self.m
            )));
        }
        Self::new(self.v, kc as u64, self.m, self.n, l1c as u64, l2c as u64)
    }

    /// Parameters of `A + K_{m,n}`.
    pub fn plus_group(&self) -> Result<Self> {
        let extra = self.block_row_sum() * Rational::from_integer(2.into());
        if !extra.is_integer() {
            return Err(Error::InvalidParameters(format!(
                "2k/(m-1) = {extra} is not an integer"
            )));
        }
        let extra: u64 = extra.to_integer().try_into().expect("small");
        Self::new(
            self.v,
            self.k + self.n,
            self.m,
            self.n,
            self.lambda1 + self.n,
            self.lambda2 + extra,
        )
    }

    pub fn is_symmetric_design(&self) -> bool {
        self.lambda1 == self.lambda2
    }
}

impl fmt::Display for GddParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "v={} k={} m={} n={} l1={} l2={}",
            self.v, self.k, self.m, self.n, self.lambda1, self.lambda2
        )
    }
}

impl FromStr for GddParams {
    type Err = Error;

    /// Accepts the key-value block `v= k= m= n= l1= l2=` or six bare integers
    /// in the order `v k m n l1 l2`.
    fn from_str(s: &str) -> Result<Self> {
        let parse = |t: &str| -> Result<u64> {
            t.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad integer {t:?}"),
            })
        };
        let tokens: Vec<&str> = s.split_whitespace().collect();
        if tokens.len() != 6 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected 6 parameters, got {}", tokens.len()),
            });
        }
        let mut vals = [0u64; 6];
        let keys = ["v", "k", "m", "n", "l1", "l2"];
        for (i, t) in tokens.iter().enumerate() {
            vals[i] = match t.split_once('=') {
                Some((key, val)) if key == keys[i] => parse(val)?,
                Some((key, _)) => {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("expected key {}, got {key}", keys[i]),
                    })
                }
                None => parse(t)?,
            };
        }
        Self::new(vals[0], vals[1], vals[2], vals[3], vals[4], vals[5])
    }
}

/// Square 0/1 matrix on `m·n` points split into `m` consecutive groups of size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    mat: IntMatrix,
    m: usize,
    n: usize,
}

impl IncidenceMatrix {
    pub fn new(mat: IntMatrix, m: usize, n: usize) -> Result<Self> {
        if mat.shape() != (m * n, m * n) {
            return Err(Error::DimensionMismatch {
                op: "incidence matrix",
                left: mat.shape(),
                right: (m * n, m * n),
            });
        }
        if !mat.is_binary() {
            return Err(Error::InvalidParameters(
                "incidence matrix must be a (0,1)-matrix".into(),
            ));
        }
        Ok(Self { mat, m, n })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.mat
    }

    pub fn groups(&self) -> (usize, usize) {
        (self.m, self.n)
    }

    pub fn order(&self) -> usize {
        self.m * self.n
    }

    pub fn transpose(&self) -> Self {
        Self {
            mat: self.mat.transpose(),
            m: self.m,
            n: self.n,
        }
    }

    /// True when every diagonal `n × n` block is zero, i.e. `A + K` is 0/1.
    pub fn diagonal_blocks_zero(&self) -> bool {
        let n = self.n;
        (0..self.order()).all(|i| (0..self.order()).all(|j| i / n != j / n || self.mat[(i, j)].is_zero()))
    }
}

/// Checks `AAᵀ = AᵀA = kI + λ1(K−I) + λ2(J−K)`.
pub fn verify_gdd(a: &IncidenceMatrix, p: &GddParams) -> Certificate {
    let mut cert = Certificate::new(format!("symmetric GDD {p}"));
    let (m, n) = a.groups();
    let dims_ok = m as u64 == p.m && n as u64 == p.n;
    cert.check("dimensions match parameters", dims_ok, || {
        format!("matrix has (m,n)=({m},{n}), parameters need ({},{})", p.m, p.n)
    });
    if !dims_ok {
        return cert;
    }
    let gram = p.gram_matrix();
    let at = a.matrix().transpose();
    cert.check_matrix_eq("A A^T = kI + l1(K-I) + l2(J-K)", &(a.matrix() * &at), &gram);
    cert.check_matrix_eq("A^T A = kI + l1(K-I) + l2(J-K)", &(&at * a.matrix()), &gram);
    cert
}

/// Bose's identity `A K Aᵀ = (n(λ1−λ2) + k − λ1) K + nλ2 J`.
pub fn check_bose(a: &IncidenceMatrix, p: &GddParams) -> Result<bool> {
    if p.lambda1 == p.lambda2 {
        return precondition("Bose identity requires lambda1 != lambda2");
    }
    let k_mat = p.group_indicator();
    let lhs = &(a.matrix() * &k_mat) * &a.matrix().transpose();
    let coeff_k = BigInt::from(p.n) * (BigInt::from(p.lambda1) - p.lambda2) + p.k - p.lambda1;
    let coeff_j = BigInt::from(p.n) * p.lambda2;
    let rhs = &k_mat.scale(&coeff_k) + &IntMatrix::ones(p.v as usize).scale(&coeff_j);
    Ok(lhs == rhs)
}

/// `A' = J − K − A` with re-certified parameters.
pub fn partial_complement(a: &IncidenceMatrix, p: &GddParams) -> Result<(IncidenceMatrix, GddParams)> {
    if !a.diagonal_blocks_zero() {
        return precondition("partial complement needs zero diagonal blocks (A + K must be a (0,1)-matrix)");
    }
    let pc = p.partial_complement()?;
    let (m, n) = a.groups();
    let comp = &(&IntMatrix::ones(m * n) - &IntMatrix::group_indicator(m, n)) - a.matrix();
    let comp = IncidenceMatrix::new(comp, m, n)?;
    verify_gdd(&comp, &pc).into_result()?;
    Ok((comp, pc))
}

/// Shape of `AK` and `KA`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KCommutation {
    Zero,
    MultipleOfJ(BigInt),
    MultipleOfJMinusK(BigInt),
    Other,
}

pub fn check_k_commutation(a: &IncidenceMatrix) -> KCommutation {
    let (m, n) = a.groups();
    let k = IntMatrix::group_indicator(m, n);
    let ak = a.matrix() * &k;
    let ka = &k * a.matrix();
    let classify = |x: &IntMatrix| -> KCommutation {
        if x.is_zero_matrix() {
            return KCommutation::Zero;
        }
        let c = x[(0, 0)].clone();
        if x.entries().iter().all(|e| *e == c) {
            return KCommutation::MultipleOfJ(c);
        }
        // c(J − K): zero on diagonal blocks, constant elsewhere
        let off = x[(0, n % (m * n))].clone();
        let ok = (0..m * n).all(|i| {
            (0..m * n).all(|j| {
                if i / n == j / n {
                    x[(i, j)].is_zero()
                } else {
                    x[(i, j)] == off
                }
            })
        });
        if ok {
            KCommutation::MultipleOfJMinusK(off)
        } else {
            KCommutation::Other
        }
    };
    let (l, r) = (classify(&ak), classify(&ka));
    if l == r {
        l
    } else {
        KCommutation::Other
    }
}

/// `λ1 = k(k−m+1)/((m−1)(n−1))`, `λ2 = k²(m−2)/(n(m−1)²)`: the only values
/// compatible with `A + K` also being a symmetric GDD.
pub fn lambda_formulas(k: u64, m: u64, n: u64) -> Result<(Rational, Rational)> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameters("need m, n >= 2".into()));
    }
    let (k, m, n) = (BigInt::from(k), BigInt::from(m), BigInt::from(n));
    let one = BigInt::one();
    let l1 = Rational::new(&k * (&k - &m + &one), (&m - &one) * (&n - &one));
    let l2 = Rational::new(&k * &k * (&m - 2), &n * (&m - &one) * (&m - &one));
    Ok((l1, l2))
}
