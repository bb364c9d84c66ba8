//! Affine resolvable designs through their auxiliary matrices `C_1..C_r`:
//! `ΣC_i = (r−λ)I + λJ`, `C_iC_iᵀ = kC_i`, `C_iC_jᵀ = μJ` for `i ≠ j`.

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{precondition, Error, Result};
use crate::hadamard::{is_hadamard, is_row_normalized};
use crate::report::Certificate;
use crate::{GfContext, GfElement, IntMatrix};

/// Parameters of an affine resolvable 2-design. `blocks_per_class = v/k = k/μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AuxParams {
    pub v: u64,
    pub k: u64,
    pub r: u64,
    pub lambda: u64,
    pub mu: u64,
    pub blocks_per_class: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuxiliarySet {
    matrices: Vec<IntMatrix>,
    params: AuxParams,
}

impl AuxiliarySet {
    /// Wraps externally supplied matrices, deriving `(v,k,r,λ,μ)` from their
    /// shape and the row sum of `C_1`. Axioms are not checked here; use
    /// [`verify_auxiliary`].
    pub fn from_matrices(matrices: Vec<IntMatrix>) -> Result<Self> {
        let first = matrices
            .first()
            .ok_or_else(|| Error::InvalidParameters("empty auxiliary set".into()))?;
        let v = first.rows();
        if let Some(bad) = matrices.iter().find(|c| c.shape() != (v, v) || !c.is_binary()) {
            return Err(Error::InvalidParameters(format!(
                "auxiliary matrices must be {v}x{v} (0,1)-matrices, found shape {:?}",
                bad.shape()
            )));
        }
        let k = first.row(0).iter().filter(|x| x.is_one()).count() as u64;
        let (v, r) = (v as u64, matrices.len() as u64);
        if k == 0 || v < 2 {
            return Err(Error::InvalidParameters("degenerate auxiliary set".into()));
        }
        let mu = k * k / v;
        let lambda = r * (k - 1) / (v - 1);
        let blocks_per_class = v / k;
        Ok(Self {
            matrices,
            params: AuxParams {
                v,
                k,
                r,
                lambda,
                mu,
                blocks_per_class,
            },
        })
    }

    pub fn params(&self) -> AuxParams {
        self.params
    }

    pub fn matrices(&self) -> &[IntMatrix] {
        &self.matrices
    }

    /// `C_i` for `i ∈ 0..=r`, with `C_0 = O_v`.
    pub fn get(&self, i: usize) -> IntMatrix {
        if i == 0 {
            IntMatrix::zeros(self.params.v as usize, self.params.v as usize)
        } else {
            self.matrices[i - 1].clone()
        }
    }
}

/// `C_i = (r_iᵀ r_i + J)/2` from the non-trivial rows of a Hadamard matrix
/// whose first row is all ones.
pub fn aux_from_hadamard(h: &IntMatrix) -> Result<AuxiliarySet> {
    let n = h.rows();
    if n < 4 {
        return precondition(format!("Hadamard auxiliary matrices need order >= 4, got {n}"));
    }
    if !is_hadamard(h) {
        return precondition("input is not a Hadamard matrix");
    }
    if !is_row_normalized(h) {
        return precondition("Hadamard matrix must have an all-ones first row");
    }
    let two = BigInt::from(2);
    let matrices = (1..n)
        .map(|i| {
            let row = h.row(i);
            IntMatrix::from_fn(n, n, |x, y| (&row[x] * &row[y] + 1) / &two)
        })
        .collect();
    let n = n as u64;
    let params = AuxParams {
        v: n,
        k: n / 2,
        r: n - 1,
        lambda: (n - 2) / 2,
        mu: n / 4,
        blocks_per_class: 2,
    };
    Ok(AuxiliarySet { matrices, params })
}

/// Hyperplane parallel classes of AG(d+1, q): `(C_i)_{x,y} = 1` iff
/// `y − x ∈ H_i`.
///
/// Points of `GF(q)^{d+1}` are indexed with the first coordinate most
/// significant. Hyperplanes are kernels of functionals whose first non-zero
/// coordinate is 1, taken in lexicographic order.
pub fn aux_from_affine_geometry(q: u64, d: u32) -> Result<AuxiliarySet> {
    if d == 0 {
        return precondition("affine geometry dimension parameter d must be >= 1");
    }
    let field = GfContext::with_order(q)?;
    let dim = d as usize + 1;
    let qs = field.order();
    let v = qs.pow(dim as u32);
    let coords = |mut idx: usize| -> Vec<GfElement> {
        let mut c = vec![GfElement(0); dim];
        for slot in c.iter_mut().rev() {
            *slot = GfElement(idx % qs);
            idx /= qs;
        }
        c
    };
    let points: Vec<Vec<GfElement>> = (0..v).map(coords).collect();
    let functionals: Vec<Vec<GfElement>> = points
        .iter()
        .filter(|c| c.iter().find(|e| e.0 != 0).is_some_and(|e| *e == field.one()))
        .cloned()
        .collect();
    let eval = |a: &[GfElement], x: &[GfElement]| {
        a.iter()
            .zip(x)
            .fold(field.zero(), |acc, (&ai, &xi)| field.add(acc, field.mul(ai, xi)))
    };
    let matrices: Vec<IntMatrix> = functionals
        .par_iter()
        .map(|a| {
            let values: Vec<GfElement> = points.iter().map(|x| eval(a, x)).collect();
            // y − x ∈ ker(a) iff a(x) = a(y)
            IntMatrix::from_fn(v, v, |x, y| BigInt::from((values[x] == values[y]) as i64))
        })
        .collect();
    let (qq, v64) = (q, v as u64);
    let k = qq.pow(d);
    let r = (v64 - 1) / (qq - 1);
    let params = AuxParams {
        v: v64,
        k,
        r,
        lambda: (k - 1) / (qq - 1),
        mu: qq.pow(d - 1),
        blocks_per_class: qq,
    };
    Ok(AuxiliarySet { matrices, params })
}

/// Checks the three axioms by exact multiplication and the parameter
/// relations `rk = r−λ+λv`, `k² = μv`, `k+λ−r = 0`, `kλ−(r−1)μ = 0`.
pub fn verify_auxiliary(set: &AuxiliarySet) -> Certificate {
    let p = set.params();
    let mut cert = Certificate::new(format!(
        "auxiliary set (v,k,r,lambda,mu,n)=({},{},{},{},{},{})",
        p.v, p.k, p.r, p.lambda, p.mu, p.blocks_per_class
    ));
    let v = p.v as usize;
    let mats = set.matrices();
    cert.check("r matrices supplied", mats.len() as u64 == p.r, || {
        format!("found {}", mats.len())
    });

    let sum = mats.iter().fold(IntMatrix::zeros(v, v), |acc, c| &acc + c);
    let expected = IntMatrix::from_fn(v, v, |i, j| BigInt::from(if i == j { p.r } else { p.lambda }));
    cert.check_matrix_eq("sum C_i = (r-lambda)I + lambda J", &sum, &expected);

    let k = BigInt::from(p.k);
    let squares: Vec<_> = mats
        .par_iter()
        .map(|c| crate::report::first_mismatch(&(c * &c.transpose()), &c.scale(&k)))
        .collect();
    for (i, mismatch) in squares.into_iter().enumerate() {
        let id = format!("C_{0} C_{0}^T = k C_{0}", i + 1);
        match mismatch {
            None => cert.pass(id),
            Some(d) => cert.fail(id, d),
        }
    }

    let mu_j = IntMatrix::ones(v).scale(&BigInt::from(p.mu));
    let pairs: Vec<(usize, usize)> = (0..mats.len())
        .flat_map(|i| (0..mats.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let cross: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| crate::report::first_mismatch(&(&mats[i] * &mats[j].transpose()), &mu_j))
        .collect();
    let bad = pairs.iter().zip(&cross).find(|(_, m)| m.is_some());
    match bad {
        None => cert.pass("C_i C_j^T = mu J for all i != j"),
        Some(((i, j), m)) => cert.fail(
            "C_i C_j^T = mu J for all i != j",
            format!("C_{} C_{}^T: {}", i + 1, j + 1, m.as_deref().unwrap_or_default()),
        ),
    }

    let (v, k, r, l, mu) = (p.v as i128, p.k as i128, p.r as i128, p.lambda as i128, p.mu as i128);
    cert.check("rk = r - lambda + lambda v", r * k == r - l + l * v, || {
        format!("{} != {}", r * k, r - l + l * v)
    });
    cert.check("k^2 = mu v", k * k == mu * v, || format!("{} != {}", k * k, mu * v));
    cert.check("k + lambda - r = 0", k + l - r == 0, || format!("{}", k + l - r));
    cert.check("k lambda - (r-1) mu = 0", k * l - (r - 1) * mu == 0, || {
        format!("{}", k * l - (r - 1) * mu)
    });
    let n = p.blocks_per_class as i128;
    let derived = mu > 0
        && n * mu == k
        && n * n * mu == v
        && n > 1
        && (n * mu - 1) % (n - 1) == 0
        && (n * mu - 1) / (n - 1) == l
        && (n * n * mu - 1) / (n - 1) == r;
    cert.check(
        "v = n^2 mu, k = n mu, lambda = (n mu-1)/(n-1), r = (n^2 mu-1)/(n-1)",
        derived,
        || format!("n={n}, mu={mu}"),
    );
    cert
}

/// The equivalence classes of each `C_i`: `r` partitions of the points into
/// `v/k` blocks of size `k`, sorted within and between blocks.
pub fn aux_to_parallel_classes(set: &AuxiliarySet) -> Result<Vec<Vec<Vec<usize>>>> {
    let p = set.params();
    if p.k < 2 {
        return precondition("parallel classes need block size k >= 2");
    }
    set.matrices()
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            let v = c.rows();
            let mut seen = vec![false; v];
            let mut blocks = Vec::new();
            for x in 0..v {
                if seen[x] {
                    continue;
                }
                let block: Vec<usize> = (0..v).filter(|&y| c[(x, y)].is_one()).collect();
                for &y in &block {
                    let row: Vec<usize> = (0..v).filter(|&z| c[(y, z)].is_one()).collect();
                    if row != block || seen[y] {
                        return Err(Error::Certification(format!(
                            "C_{} is not an equivalence relation at point {y}",
                            idx + 1
                        )));
                    }
                    seen[y] = true;
                }
                if block.len() as u64 != p.k {
                    return Err(Error::Certification(format!(
                        "C_{}: block of size {} (expected k = {})",
                        idx + 1,
                        block.len(),
                        p.k
                    )));
                }
                blocks.push(block);
            }
            Ok(blocks)
        })
        .collect()
}

/// Rebuilds `C_i` from a partition of `0..v`.
pub fn matrix_from_parallel_class(v: usize, blocks: &[Vec<usize>]) -> IntMatrix {
    let mut label = vec![usize::MAX; v];
    for (b, block) in blocks.iter().enumerate() {
        for &x in block {
            label[x] = b;
        }
    }
    IntMatrix::from_fn(v, v, |x, y| BigInt::from((label[x] == label[y]) as i64))
}

/// `Σ C_i C_iᵀ`, the quantity that equals `q^{2d} I + (r−1) q^{d−1} J` for
/// affine geometries.
pub fn sum_of_gram_matrices(set: &AuxiliarySet) -> IntMatrix {
    let v = set.params().v as usize;
    set.matrices()
        .iter()
        .fold(IntMatrix::zeros(v, v), |acc, c| &acc + &(c * &c.transpose()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::sylvester;

    #[test]
    fn hadamard_four_auxiliary_set() {
        let set = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
        assert_eq!(set.matrices().len(), 3);
        let sum = set.matrices().iter().fold(IntMatrix::zeros(4, 4), |a, c| &a + c);
        let want = &IntMatrix::identity(4).scale(&2.into()) + &IntMatrix::ones(4);
        assert_eq!(sum, want);
        for c in set.matrices() {
            assert_eq!(c * &c.transpose(), c.scale(&2.into()));
        }
        let cert = verify_auxiliary(&set);
        assert!(cert.holds(), "{cert}");
        assert_eq!(
            set.params(),
            AuxParams {
                v: 4,
                k: 2,
                r: 3,
                lambda: 1,
                mu: 1,
                blocks_per_class: 2
            }
        );
    }

    #[test]
    fn affine_plane_of_order_three() {
        let set = aux_from_affine_geometry(3, 1).unwrap();
        assert_eq!(set.matrices().len(), 4);
        assert_eq!(
            set.params(),
            AuxParams {
                v: 9,
                k: 3,
                r: 4,
                lambda: 1,
                mu: 1,
                blocks_per_class: 3
            }
        );
        let cert = verify_auxiliary(&set);
        assert!(cert.holds(), "{cert}");
        for c in set.matrices() {
            assert_eq!(c * &c.transpose(), c.scale(&3.into()));
        }
    }

    #[test]
    fn affine_sum_identities() {
        // axiom (i) gives sum C_i = 3I + J at (q,d)=(3,1); the closed form
        // q^{2d} I + (r-1) q^{d-1} J = 9I + 3J is the sum of C_i C_i^T.
        let set = aux_from_affine_geometry(3, 1).unwrap();
        let sum = set.matrices().iter().fold(IntMatrix::zeros(9, 9), |a, c| &a + c);
        let axiom = &IntMatrix::identity(9).scale(&3.into()) + &IntMatrix::ones(9);
        assert_eq!(sum, axiom);
        let closed = &IntMatrix::identity(9).scale(&9.into()) + &IntMatrix::ones(9).scale(&3.into());
        assert_ne!(sum, closed);
        assert_eq!(sum_of_gram_matrices(&set), closed);
    }

    #[test]
    fn ag22_matches_hadamard_four() {
        let a = aux_from_affine_geometry(2, 1).unwrap();
        let h = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
        let mut x: Vec<String> = a.matrices().iter().map(|m| m.to_string()).collect();
        let mut y: Vec<String> = h.matrices().iter().map(|m| m.to_string()).collect();
        x.sort();
        y.sort();
        assert_eq!(x, y);
    }

    #[test]
    fn replacing_a_matrix_by_j_breaks_axiom_two() {
        let set = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
        let mut mats = set.matrices().to_vec();
        mats[0] = IntMatrix::ones(4);
        let bad = AuxiliarySet {
            matrices: mats,
            params: set.params(),
        };
        let cert = verify_auxiliary(&bad);
        assert!(!cert.holds());
        assert!(cert.violations().any(|c| c.identity.starts_with("C_1")));
    }

    #[test]
    fn parallel_classes() {
        let h = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
        let classes = aux_to_parallel_classes(&h).unwrap();
        assert_eq!(classes.len(), 3);
        let mut matchings: Vec<_> = classes.clone();
        matchings.sort();
        matchings.dedup();
        assert_eq!(matchings.len(), 3);
        assert!(classes.iter().all(|c| c.len() == 2 && c.iter().all(|b| b.len() == 2)));

        let ag = aux_from_affine_geometry(3, 1).unwrap();
        let classes = aux_to_parallel_classes(&ag).unwrap();
        let lines: usize = classes.iter().map(Vec::len).sum();
        assert_eq!(lines, 12);
        for (c, blocks) in ag.matrices().iter().zip(&classes) {
            assert_eq!(&matrix_from_parallel_class(9, blocks), c);
        }
    }

    #[test]
    fn rejects_bad_hadamard_inputs() {
        let mut h = sylvester(4).unwrap();
        h[(0, 1)] = BigInt::from(-1);
        assert!(aux_from_hadamard(&h).is_err());
        assert!(aux_from_hadamard(&sylvester(2).unwrap()).is_err());
        assert!(aux_from_affine_geometry(6, 1).is_err());
    }
}
