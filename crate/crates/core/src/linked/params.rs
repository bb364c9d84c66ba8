use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::designs::{lambda_formulas, GddParams};
use crate::error::{Error, Result};
use crate::report::Certificate;
use crate::{Rational, Surd};

/// Coefficients of `A_{i,j}A_{j,l} = σA_{i,l} + τ(J − A_{i,l} − K) + ρK`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub sigma: u64,
    pub tau: u64,
    pub rho: u64,
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.sigma, self.tau, self.rho)
    }
}

/// Base design parameters, number of indices `f`, and the product
/// coefficients. Pairs (`f = 2`) carry no triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LinkedParams {
    pub base: GddParams,
    pub f: usize,
    pub triple: Option<Triple>,
}

impl LinkedParams {
    /// Validates the parameter identities every linked system of type II
    /// satisfies; see [`lemma_identities`].
    pub fn new(base: GddParams, f: usize, triple: Option<Triple>) -> Result<Self> {
        if f < 2 {
            return Err(Error::InvalidParameters(format!("need f >= 2, got {f}")));
        }
        let p = Self { base, f, triple };
        match (f, triple) {
            (2, None) => Ok(p),
            (2, Some(_)) => Err(Error::InvalidParameters("a pair (f = 2) has no product triple".into())),
            (_, None) => Err(Error::InvalidParameters(format!("f = {f} requires (sigma,tau,rho)"))),
            (_, Some(t)) => lemma_identities(&base, &t).into_result().map(|_| p),
        }
    }

    pub fn pair(base: GddParams) -> Self {
        Self {
            base,
            f: 2,
            triple: None,
        }
    }
}

impl fmt::Display for LinkedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f={} {}", self.f, self.base)?;
        if let Some(t) = self.triple {
            write!(f, " sigma={} tau={} rho={}", t.sigma, t.tau, t.rho)?;
        }
        Ok(())
    }
}

/// `(σ−τ)² = k−λ1`; `(σ−τ)(ρ−τ) + (σ−τ+k)τ = kλ2`;
/// `(ρ−τ−λ1+λ2)k = (m−1)(σ−τ)(ρ−τ)`; `ρ n(m−1) = k²`.
///
/// `ρ = τ` is not excluded: the partial complement of a system with
/// `λ1 = λ2` and `σ > τ` has `σ < τ = ρ` and still satisfies the definition.
pub fn lemma_identities(base: &GddParams, t: &Triple) -> Certificate {
    let mut cert = Certificate::new(format!("linked parameters {base} (sigma,tau,rho)={t}"));
    let [k, m, n, l1, l2] = [base.k, base.m, base.n, base.lambda1, base.lambda2].map(BigInt::from);
    let [s, ta, r] = [t.sigma, t.tau, t.rho].map(BigInt::from);
    let st = &s - &ta;
    let rt = &r - &ta;
    let lhs = &st * &st;
    let rhs = &k - &l1;
    cert.check("(sigma-tau)^2 = k - lambda1", lhs == rhs, || format!("{lhs} != {rhs}"));
    let lhs = &st * &rt + (&st + &k) * &ta;
    let rhs = &k * &l2;
    cert.check(
        "(sigma-tau)(rho-tau) + (sigma-tau+k)tau = k lambda2",
        lhs == rhs,
        || format!("{lhs} != {rhs}"),
    );
    let lhs = (&rt - &l1 + &l2) * &k;
    let rhs = (&m - 1) * &st * &rt;
    cert.check(
        "(rho-tau-lambda1+lambda2) k/(m-1) = (sigma-tau)(rho-tau)",
        lhs == rhs,
        || format!("{lhs} != {rhs} (both sides times m-1)"),
    );
    let lhs = &r * &n * (&m - 1);
    let rhs = &k * &k;
    cert.check("rho = k^2/(n(m-1))", lhs == rhs, || {
        format!("{r} != {k}^2/({n}({m}-1))")
    });
    cert
}

/// One sign choice of the closed form for `(σ, τ, ρ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub sigma: Surd,
    pub tau: Surd,
    pub rho: Rational,
}

impl Candidate {
    /// The triple when all three values are non-negative integers.
    pub fn as_triple(&self) -> Option<Triple> {
        let int = |x: &Rational| -> Option<u64> {
            (x.is_integer() && !x.is_negative())
                .then(|| x.to_integer().try_into().ok())
                .flatten()
        };
        Some(Triple {
            sigma: int(&self.sigma.to_rational()?)?,
            tau: int(&self.tau.to_rational()?)?,
            rho: int(&self.rho)?,
        })
    }

    pub fn is_integral(&self) -> bool {
        let int = |x: Option<Rational>| x.is_some_and(|x| x.is_integer());
        int(self.sigma.to_rational()) && int(self.tau.to_rational()) && self.rho.is_integer()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.sigma.is_nonnegative() && self.tau.is_nonnegative() && !self.rho.is_negative()
    }
}

impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.sigma, self.tau, self.rho)?;
        if !self.is_integral() {
            write!(f, " [non-integral]")?;
        } else if !self.is_nonnegative() {
            write!(f, " [negative]")?;
        }
        Ok(())
    }
}

/// Both sign choices for `(σ, τ, ρ)` at given `(k, m, n)`, with `λ1, λ2`
/// forced by `A + K` being a design.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleCandidates {
    pub lambda1: Rational,
    pub lambda2: Rational,
    /// `+` in σ, `−` in τ.
    pub plus: Candidate,
    pub minus: Candidate,
    /// When `λ1 = λ2`, the unique admissible triple.
    pub selected: Option<Candidate>,
}

impl TripleCandidates {
    /// Integer triples that are non-negative with `ρ ≠ τ`, the branch the
    /// feasibility tables list.
    pub fn admissible(&self) -> Vec<Triple> {
        let mut out: Vec<Triple> = match &self.selected {
            Some(c) => c.as_triple().into_iter().collect(),
            None => [&self.plus, &self.minus]
                .into_iter()
                .filter_map(Candidate::as_triple)
                .collect(),
        };
        out.retain(|t| t.rho != t.tau);
        out.dedup();
        out
    }
}

/// With `Δ = k(m−1)(n−1)(mn−k−n)` and `D = (m−1)²(n−1)n`:
/// `σ = (k²(m−2)(n−1) ± (mn−k−n)√Δ)/D`, `τ = (k²(m−2)(n−1) ∓ k√Δ)/D`,
/// `ρ = k²/(n(m−1))`.
pub fn sigma_tau_rho(k: u64, m: u64, n: u64) -> Result<TripleCandidates> {
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameters(format!("need m, n >= 2 (m={m}, n={n})")));
    }
    let (lambda1, lambda2) = lambda_formulas(k, m, n)?;
    let kr = Rational::from_integer(k.into());
    if lambda1 >= kr || k >= (m - 1) * n {
        return Err(Error::InvalidParameters(format!(
            "need lambda1 < k < (m-1)n, have lambda1={lambda1}, k={k}, (m-1)n={}",
            (m - 1) * n
        )));
    }
    let [kb, mb, nb] = [k, m, n].map(BigInt::from);
    let rest: BigInt = &mb * &nb - &kb - &nb;
    let delta: BigInt = &kb * (&mb - 1) * (&nb - 1) * &rest;
    if delta.is_negative() {
        return Err(Error::InvalidParameters(format!("discriminant {delta} is negative")));
    }
    let den: BigInt = (&mb - 1) * (&mb - 1) * (&nb - 1) * &nb;
    let base = Rational::new(&kb * &kb * (&mb - 2) * (&nb - 1), den.clone());
    let root = Surd::sqrt(&Rational::from_integer(delta.clone()))?;
    let scale = |c: &BigInt| Surd::rational(Rational::new(c.clone(), den.clone())) * root.clone();
    let b = Surd::rational(base);
    let rho = Rational::new(&kb * &kb, &nb * (&mb - 1));
    let plus = Candidate {
        sigma: b.clone() + scale(&rest),
        tau: b.clone() - scale(&kb),
        rho: rho.clone(),
    };
    let minus = Candidate {
        sigma: b.clone() - scale(&rest),
        tau: b + scale(&kb),
        rho: rho.clone(),
    };
    let selected = (lambda1 == lambda2).then(|| {
        let s: BigInt = &mb + &nb - 2;
        let d2: BigInt = &s * &s;
        let m1: BigInt = &mb - 1;
        Candidate {
            sigma: Surd::rational(Rational::new(&m1 * &nb * (&mb * &mb - 3 * &mb + 1 + &nb), d2.clone())),
            tau: Surd::rational(Rational::new((&mb - 3) * &m1 * &m1 * &nb, d2.clone())),
            rho: Rational::new(&m1 * &m1 * &m1 * &nb, d2),
        }
    });
    Ok(TripleCandidates {
        lambda1,
        lambda2,
        plus,
        minus,
        selected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sixteen_six_four_four() {
        let c = sigma_tau_rho(6, 4, 4).unwrap();
        assert_eq!(
            c.plus.as_triple(),
            Some(Triple {
                sigma: 3,
                tau: 1,
                rho: 3
            })
        );
        assert_eq!(
            c.minus.as_triple(),
            Some(Triple {
                sigma: 1,
                tau: 3,
                rho: 3
            })
        );
        assert_eq!(
            c.selected.as_ref().and_then(Candidate::as_triple),
            Some(Triple {
                sigma: 3,
                tau: 1,
                rho: 3
            })
        );
        assert_eq!(
            c.admissible(),
            vec![Triple {
                sigma: 3,
                tau: 1,
                rho: 3
            }]
        );
        assert_eq!((c.lambda1.clone(), c.lambda2.clone()), (r(2, 1), r(2, 1)));
    }

    #[test]
    fn fifty_two() {
        let c = sigma_tau_rho(24, 13, 4).unwrap();
        let mut t = c.admissible();
        t.sort();
        assert_eq!(
            t,
            vec![
                Triple {
                    sigma: 9,
                    tau: 13,
                    rho: 12
                },
                Triple {
                    sigma: 13,
                    tau: 9,
                    rho: 12
                }
            ]
        );
        assert!(c.selected.is_none());
    }

    #[test]
    fn gcm_shape_rho_not_integral() {
        let c = sigma_tau_rho(5, 6, 4).unwrap();
        assert_eq!(c.plus.rho, r(5, 4));
        assert!(!c.plus.is_integral() && !c.minus.is_integral());
        assert!(c.admissible().is_empty());
        // sigma = lambda ± (g-1)sqrt(g lambda+1)/g at g=4, lambda=1
        assert_eq!(c.plus.sigma, Surd::new(r(1, 1), r(3, 4), 5.into()));
        assert_eq!(c.minus.tau, Surd::new(r(1, 1), r(1, 4), 5.into()));
    }

    #[test]
    fn out_of_range() {
        assert!(sigma_tau_rho(12, 4, 4).is_err());
        assert!(sigma_tau_rho(6, 1, 4).is_err());
    }

    #[test]
    fn params_validation() {
        let base = GddParams::new(16, 6, 4, 4, 2, 2).unwrap();
        assert!(LinkedParams::new(
            base,
            3,
            Some(Triple {
                sigma: 3,
                tau: 1,
                rho: 3
            })
        )
        .is_ok());
        assert!(LinkedParams::new(
            base,
            3,
            Some(Triple {
                sigma: 1,
                tau: 3,
                rho: 3
            })
        )
        .is_ok());
        assert!(LinkedParams::new(
            base,
            3,
            Some(Triple {
                sigma: 3,
                tau: 1,
                rho: 2
            })
        )
        .is_err());
        assert!(LinkedParams::new(base, 3, None).is_err());
        assert!(LinkedParams::new(base, 2, None).is_ok());
        let cert = lemma_identities(
            &base,
            &Triple {
                sigma: 3,
                tau: 1,
                rho: 3,
            },
        );
        assert!(cert.holds(), "{cert}");
    }
}
