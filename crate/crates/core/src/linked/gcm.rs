use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::designs::{check_k_commutation, verify_gdd, GddParams, IncidenceMatrix, KCommutation};
use crate::error::{precondition, Error, Result};
use crate::hadamard::is_conference;
use crate::report::Certificate;
use crate::{FiniteGroup, GfContext, GfElement, IntMatrix};

/// Square matrix over `G ∪ {0}`; `None` is the zero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gcm {
    group: FiniteGroup,
    size: usize,
    entries: Vec<Option<usize>>,
}

impl Gcm {
    pub fn new(group: FiniteGroup, size: usize, entries: Vec<Option<usize>>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::InvalidParameters(format!(
                "GCM of size {size} needs {} entries, got {}",
                size * size,
                entries.len()
            )));
        }
        if let Some(x) = entries.iter().flatten().find(|&&x| x >= group.order()) {
            return Err(Error::InvalidParameters(format!(
                "entry {x} outside a group of order {}",
                group.order()
            )));
        }
        Ok(Self { group, size, entries })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> Option<usize> {
        self.entries[i * self.size + j]
    }

    /// `λ = (size − 2)/g` when integral.
    pub fn lambda(&self) -> Option<u64> {
        let g = self.group.order();
        (self.size >= 2 && (self.size - 2).is_multiple_of(g)).then(|| ((self.size - 2) / g) as u64)
    }
}

/// Zero diagonal, `gλ+1` non-zero entries per row, and for distinct rows
/// `i, h` the multiset `{c_ij c_hj⁻¹}` covers `G` exactly `λ` times.
pub fn verify_gcm(c: &Gcm) -> Certificate {
    let g = c.group.order();
    let s = c.size;
    let mut cert = Certificate::new(format!(
        "generalized conference matrix of size {s} over a group of order {g}"
    ));
    let lambda = c.lambda();
    cert.check("size = g lambda + 2", lambda.is_some_and(|l| l >= 1), || {
        format!("(size-2)/g = ({s}-2)/{g}")
    });
    let Some(lambda) = lambda else { return cert };
    let diag = (0..s).all(|i| c.get(i, i).is_none());
    cert.check("zero diagonal", diag, || "nonzero diagonal entry".into());
    let bad_row = (0..s).find(|&i| (0..s).filter(|&j| c.get(i, j).is_some()).count() != s - 1);
    cert.check("g lambda + 1 nonzero entries per row", bad_row.is_none(), || {
        format!("row {}", bad_row.unwrap())
    });
    let mut bad = None;
    'outer: for i in 0..s {
        for h in (0..s).filter(|&h| h != i) {
            let mut counts = vec![0u64; g];
            for j in 0..s {
                if let (Some(a), Some(b)) = (c.get(i, j), c.get(h, j)) {
                    counts[c.group.mul(a, c.group.inv(b))] += 1;
                }
            }
            if counts.iter().any(|&x| x != lambda) {
                bad = Some((i, h, counts));
                break 'outer;
            }
        }
    }
    cert.check(
        format!("quotients c_ij c_hj^-1 cover G {lambda} times"),
        bad.is_none(),
        || {
            let (i, h, counts) = bad.clone().unwrap();
            format!("rows ({i},{h}) give counts {counts:?}")
        },
    );
    cert
}

/// `φ(C)` through the right regular representation; certified as a
/// `(g(gλ+2), gλ+1, gλ+2, g, 0, λ)` design with `AK = KA = J − K`.
pub fn gcm_to_gdd(c: &Gcm) -> Result<(IncidenceMatrix, GddParams)> {
    verify_gcm(c).into_result()?;
    let g = c.group.order();
    let s = c.size;
    let reps: Vec<IntMatrix> = (0..g).map(|x| c.group.regular_representation(x)).collect();
    let zero = IntMatrix::zeros(g, g);
    let blocks: Vec<IntMatrix> = (0..s * s)
        .map(|x| c.get(x / s, x % s).map_or_else(|| zero.clone(), |e| reps[e].clone()))
        .collect();
    let a = IncidenceMatrix::new(IntMatrix::from_blocks(s, &blocks)?, s, g)?;
    let lambda = c.lambda().expect("verified");
    let (g64, s64) = (g as u64, s as u64);
    let params = GddParams::new(g64 * s64, s64 - 1, s64, g64, 0, lambda)?;
    verify_gdd(&a, &params).into_result()?;
    if check_k_commutation(&a) != KCommutation::MultipleOfJMinusK(BigInt::one()) {
        return Err(Error::Certification("phi(C) K = K phi(C) = J - K fails".into()));
    }
    Ok((a, params))
}

/// A conference matrix as a GCM over `C_2`: `1 ↦ e`, `−1 ↦ a`.
pub fn conference_as_gcm(c: &IntMatrix) -> Result<Gcm> {
    if !is_conference(c) {
        return precondition("input is not a conference matrix");
    }
    let entries = c
        .entries()
        .iter()
        .map(|e| {
            if e.is_zero() {
                None
            } else if e.is_one() {
                Some(0)
            } else {
                Some(1)
            }
        })
        .collect();
    Gcm::new(FiniteGroup::cyclic(2), c.rows(), entries)
}

/// BGW`(q+1, q, q−1)` over `C_{q−1}`. Rows and columns are the points of
/// the projective line over `GF(q)`, taken as `(1, x)` for `x` in
/// enumeration order followed by `(0, 1)`; entry `(x, y)` is the discrete
/// logarithm of `x_0 y_1 − x_1 y_0`. Verified before return.
pub fn bgw_generate(q: u64) -> Result<Gcm> {
    if q < 3 {
        return precondition(format!("BGW generation needs q >= 3, got {q}"));
    }
    let field = GfContext::with_order(q)?;
    let logs = field.discrete_logs();
    let mut points: Vec<(GfElement, GfElement)> = field.enumerate().map(|x| (field.one(), x)).collect();
    points.push((field.zero(), field.one()));
    let s = points.len();
    let entries = (0..s * s)
        .map(|idx| {
            let (x, y) = (points[idx / s], points[idx % s]);
            let det = field.sub(field.mul(x.0, y.1), field.mul(x.1, y.0));
            logs[det.0]
        })
        .collect();
    let gcm = Gcm::new(FiniteGroup::cyclic(q as usize - 1), s, entries)?;
    verify_gcm(&gcm).into_result()?;
    Ok(gcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::paley_conference;
    use crate::linked::{conference_to_gdd, sigma_tau_rho};

    #[test]
    fn bgw_small_fields() {
        for (q, lambda) in [(3, 1), (4, 1), (5, 1), (7, 1), (8, 1), (9, 1)] {
            let c = bgw_generate(q).unwrap();
            assert_eq!(c.size(), q as usize + 1);
            assert_eq!(c.group().order(), q as usize - 1);
            assert_eq!(c.lambda(), Some(lambda), "q={q}");
        }
    }

    #[test]
    fn bgw_five_gives_twenty_four() {
        let (a, p) = gcm_to_gdd(&bgw_generate(5).unwrap()).unwrap();
        assert_eq!(p, GddParams::new(24, 5, 6, 4, 0, 1).unwrap());
        assert_eq!(a.groups(), (6, 4));
        let cands = sigma_tau_rho(5, 6, 4).unwrap();
        assert!(!cands.plus.rho.is_integer());
    }

    #[test]
    fn conference_reinterpreted() {
        let c = paley_conference(5).unwrap();
        let (a, p) = gcm_to_gdd(&conference_as_gcm(&c).unwrap()).unwrap();
        let (b, q) = conference_to_gdd(&c).unwrap();
        assert_eq!(p, q);
        assert_eq!(a, b);
    }

    #[test]
    fn broken_gcm_rejected() {
        let c = bgw_generate(5).unwrap();
        let mut entries: Vec<_> = (0..36).map(|x| c.get(x / 6, x % 6)).collect();
        entries[1] = Some((entries[1].unwrap() + 1) % 4);
        let bad = Gcm::new(FiniteGroup::cyclic(4), 6, entries).unwrap();
        assert!(!verify_gcm(&bad).holds());
        assert!(gcm_to_gdd(&bad).is_err());
    }
}
