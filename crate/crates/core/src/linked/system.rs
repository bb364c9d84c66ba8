use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::params::{lemma_identities, LinkedParams};
use crate::designs::{verify_gdd, IncidenceMatrix};
use crate::error::{Error, Result};
use crate::report::{first_mismatch, Certificate};
use crate::IntMatrix;

/// Blocks `A_{i,j}` for ordered pairs of distinct indices in `0..f`. Both
/// `A_{i,j}` and `A_{j,i}` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkedSystemII {
    params: LinkedParams,
    blocks: BTreeMap<(usize, usize), IncidenceMatrix>,
}

impl LinkedSystemII {
    /// Checks only that every ordered pair has a block of the right shape.
    pub fn new(params: LinkedParams, blocks: BTreeMap<(usize, usize), IncidenceMatrix>) -> Result<Self> {
        let f = params.f;
        let want = f * (f - 1);
        let (m, n) = (params.base.m as usize, params.base.n as usize);
        if blocks.len() != want || !blocks.keys().all(|&(i, j)| i < f && j < f && i != j) {
            return Err(Error::InvalidParameters(format!(
                "a system with f = {f} needs {want} blocks indexed by distinct pairs, got {}",
                blocks.len()
            )));
        }
        if let Some(b) = blocks.values().find(|b| b.groups() != (m, n)) {
            return Err(Error::InvalidParameters(format!(
                "block with groups {:?} in a system with (m,n)=({m},{n})",
                b.groups()
            )));
        }
        Ok(Self { params, blocks })
    }

    /// `f = 2` system `A_{1,2} = A`, `A_{2,1} = Aᵀ`.
    pub fn pair(a: IncidenceMatrix, params: LinkedParams) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        blocks.insert((1, 0), a.transpose());
        blocks.insert((0, 1), a);
        Self::new(params, blocks)
    }

    pub fn params(&self) -> &LinkedParams {
        &self.params
    }

    pub fn f(&self) -> usize {
        self.params.f
    }

    /// `A_{i,j}`, 0-based.
    pub fn block(&self, i: usize, j: usize) -> &IncidenceMatrix {
        &self.blocks[&(i, j)]
    }

    pub fn blocks(&self) -> &BTreeMap<(usize, usize), IncidenceMatrix> {
        &self.blocks
    }

    /// Re-labels the indices so that new index `t` is old `perm[t]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let blocks = (0..self.f())
            .flat_map(|i| (0..self.f()).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| ((i, j), self.blocks[&(perm[i], perm[j])].clone()))
            .collect();
        Self::new(self.params, blocks)
    }
}

/// Certifies every block as an SGDD with the base parameters, transpose
/// consistency, that `A + K` is 0/1, `AK = KA = (k/(m−1))(J−K)`, and for
/// `f ≥ 3` the product law over all ordered triples. For `f = 2` it checks
/// that `A + K` is a symmetric GDD instead.
pub fn verify_linked_system(sys: &LinkedSystemII) -> Certificate {
    let p = sys.params();
    let base = p.base;
    let mut cert = Certificate::new(format!("linked system of type II, {p}"));
    let f = p.f;
    let (m, n) = (base.m as usize, base.n as usize);
    let v = m * n;

    let gdd: Vec<((usize, usize), Certificate)> = sys
        .blocks
        .par_iter()
        .map(|(&key, a)| (key, verify_gdd(a, &base)))
        .collect();
    let bad = gdd.iter().find(|(_, c)| !c.holds());
    cert.check(
        format!("every A_ij is a symmetric GDD ({} blocks)", gdd.len()),
        bad.is_none(),
        || {
            let ((i, j), c) = bad.unwrap();
            let first = c.violations().next().map(|x| format!("{x:?}")).unwrap_or_default();
            format!("A_{},{}: {first}", i + 1, j + 1)
        },
    );

    let bad = sys
        .blocks
        .iter()
        .find(|(&(i, j), a)| a.matrix() != &sys.blocks[&(j, i)].matrix().transpose());
    cert.check("A_ji = A_ij^T", bad.is_none(), || {
        let (i, j) = bad.unwrap().0;
        format!("fails for (i,j)=({},{})", i + 1, j + 1)
    });

    let bad = sys.blocks.iter().find(|(_, a)| !a.diagonal_blocks_zero());
    cert.check("A_ij + K is a (0,1)-matrix", bad.is_none(), || {
        let (i, j) = bad.unwrap().0;
        format!("A_{},{} has a nonzero diagonal block", i + 1, j + 1)
    });

    let k_mat = base.group_indicator();
    let ones = IntMatrix::ones(v);
    let j_minus_k = &ones - &k_mat;
    let c = base.block_row_sum();
    if c.is_integer() {
        let want = j_minus_k.scale(&c.to_integer());
        let bad: Vec<_> = sys
            .blocks
            .par_iter()
            .filter_map(|(&key, a)| {
                first_mismatch(&(a.matrix() * &k_mat), &want)
                    .or_else(|| first_mismatch(&(&k_mat * a.matrix()), &want))
                    .map(|d| (key, d))
            })
            .collect();
        cert.check(format!("A K = K A = {c}(J-K)"), bad.is_empty(), || {
            let ((i, j), d) = bad.iter().min_by_key(|x| x.0).unwrap();
            format!("A_{},{}: {d}", i + 1, j + 1)
        });
    } else {
        cert.fail("A K = K A = (k/(m-1))(J-K)", format!("k/(m-1) = {c} is not an integer"));
    }

    match p.triple {
        None => {
            cert.check("f = 2 pair", f == 2, || format!("f = {f} needs (sigma,tau,rho)"));
            match base.plus_group() {
                Ok(plus) => {
                    let a = sys.block(0, 1);
                    let apk = IncidenceMatrix::new(a.matrix() + &k_mat, m, n);
                    match apk {
                        Ok(apk) => {
                            let c = verify_gdd(&apk, &plus);
                            cert.check(format!("A + K is a symmetric GDD {plus}"), c.holds(), || c.to_string());
                        }
                        Err(e) => cert.fail("A + K is a symmetric GDD", e.to_string()),
                    }
                }
                Err(e) => cert.fail("A + K is a symmetric GDD", e.to_string()),
            }
        }
        Some(t) => {
            cert.absorb("parameters: ", lemma_identities(&base, &t));
            let triples: Vec<(usize, usize, usize)> = (0..f)
                .flat_map(|i| (0..f).flat_map(move |j| (0..f).map(move |l| (i, j, l))))
                .filter(|&(i, j, l)| i != j && j != l && i != l)
                .collect();
            let st = BigInt::from(t.sigma) - t.tau;
            let rt = BigInt::from(t.rho) - t.tau;
            // σA + τ(J−A−K) + ρK = (σ−τ)A + τJ + (ρ−τ)K
            let fixed = &ones.scale(&BigInt::from(t.tau)) + &k_mat.scale(&rt);
            let failures: Vec<_> = triples
                .par_iter()
                .filter_map(|&(i, j, l)| {
                    let lhs = sys.block(i, j).matrix() * sys.block(j, l).matrix();
                    let rhs = &sys.block(i, l).matrix().scale(&st) + &fixed;
                    first_mismatch(&lhs, &rhs).map(|d| ((i, j, l), d))
                })
                .collect();
            cert.check(
                format!(
                    "A_ij A_jl = {}A_il + {}(J-A_il-K) + {}K ({} triples)",
                    t.sigma,
                    t.tau,
                    t.rho,
                    triples.len()
                ),
                failures.is_empty(),
                || {
                    let ((i, j, l), d) = failures.iter().min_by_key(|x| x.0).unwrap();
                    format!("(i,j,l)=({},{},{}): {d}", i + 1, j + 1, l + 1)
                },
            );
        }
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::GddParams;
    use crate::hadamard::sylvester;
    use crate::latin::linked_mols_from_gf2n;
    use crate::linked::{build_tilde_l, conference_to_gdd};
    use crate::resolvable::aux_from_hadamard;
    use crate::GfContext;

    fn system16() -> LinkedSystemII {
        let aux = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
        let fam = linked_mols_from_gf2n(&GfContext::with_order(4).unwrap()).unwrap();
        build_tilde_l(&aux, &fam).unwrap()
    }

    #[test]
    fn repeated_block_breaks_triple_law() {
        let sys = system16();
        let mut blocks = sys.blocks().clone();
        let b = blocks[&(0, 2)].clone();
        blocks.insert((0, 1), b.clone());
        blocks.insert((1, 0), b.transpose());
        let bad = LinkedSystemII::new(*sys.params(), blocks).unwrap();
        let cert = verify_linked_system(&bad);
        assert!(!cert.holds());
        assert!(cert.violations().any(|c| c.identity.starts_with("A_ij A_jl")));
    }

    #[test]
    fn conference_pair() {
        let c = crate::hadamard::paley_conference(5).unwrap();
        let (a, p) = conference_to_gdd(&c).unwrap();
        // (12,5,6,2,0,2): A + K is a (12,7,6,2,2,4) design
        assert_eq!(p.plus_group().unwrap(), GddParams::new(12, 7, 6, 2, 2, 4).unwrap());
        let sys = LinkedSystemII::pair(a, LinkedParams::pair(p)).unwrap();
        let cert = verify_linked_system(&sys);
        assert!(cert.holds(), "{cert}");
        assert!(!cert.checks.iter().any(|c| c.identity.starts_with("A_ij A_jl")));
    }

    #[test]
    fn relabel_preserves_certification() {
        let sys = system16().relabel(&[2, 0, 1]).unwrap();
        assert!(verify_linked_system(&sys).holds());
    }
}
