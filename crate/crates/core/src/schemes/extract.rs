use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::scheme::AssociationScheme;
use super::spectra::{compute_spectra, SchemeParams};
use crate::designs::{GddParams, IncidenceMatrix};
use crate::error::{Error, Result};
use crate::linked::{verify_linked_system, LinkedParams, LinkedSystemII, Triple};
use crate::report::Certificate;
use crate::{IntMatrix, Surd};

/// One reading of the scheme: which classes play `A_0..A_5`, the point order
/// putting fibers and groups in place, the linked system read from the
/// blocks of `A_3`, and the certificate covering spectra and system.
#[derive(Clone, Debug)]
pub struct Interpretation {
    /// Input label of the class playing `A_0..A_5`.
    pub labels: [usize; 6],
    /// `permutation[new] = old`.
    pub permutation: Vec<usize>,
    pub params: SchemeParams,
    pub system: LinkedSystemII,
    pub certificate: Certificate,
}

/// Every reading that was attempted. `A_2` and `A_5` play symmetric roles in
/// the intersection numbers, as do `A_3` and `A_4`, so up to four label
/// assignments are tried; failures keep their reason.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub interpretations: Vec<std::result::Result<Interpretation, String>>,
}

impl Extraction {
    /// The first certified reading.
    pub fn primary(&self) -> &Interpretation {
        self.interpretations
            .iter()
            .find_map(|r| r.as_ref().ok())
            .expect("at least one certified reading")
    }

    pub fn certified(&self) -> impl Iterator<Item = &Interpretation> {
        self.interpretations.iter().filter_map(|r| r.as_ref().ok())
    }
}

fn unit(i: usize) -> Vec<Surd> {
    (0..6).map(|l| Surd::from((l == i) as i64)).collect()
}

fn sum(labels: &[usize]) -> Vec<Surd> {
    (0..6).map(|l| Surd::from(labels.contains(&l) as i64)).collect()
}

/// `I + Σ A_l` over `labels` is an equivalence relation iff its square is a
/// multiple of itself.
fn is_equivalence(s: &AssociationScheme, labels: &[usize]) -> bool {
    let e = sum(labels);
    let sq = s.coord_mul(&e, &e);
    let c = Surd::from((labels.iter().map(|&l| s.valency(l)).sum::<u64>()) as i64);
    sq.iter().zip(&e).all(|(a, b)| *a == c.clone() * b.clone())
}

fn unique(cands: Vec<usize>, what: &str) -> Result<usize> {
    match cands.as_slice() {
        [x] => Ok(*x),
        _ => Err(Error::Precondition(format!(
            "cannot identify the {what} class: candidates {cands:?}"
        ))),
    }
}

/// Classes of the equivalence relation `I + Σ A_l`, ordered by least point.
fn classes_of(s: &AssociationScheme, labels: &[usize], points: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for &x in points {
        match out.iter_mut().find(|c| labels.contains(&s.relation(c[0], x))) {
            Some(c) => c.push(x),
            None => out.push(vec![x]),
        }
    }
    out
}

/// Recovers a linked system from a 5-class scheme: `A_1` is the class with
/// `A_0+A_1` an equivalence relation (the groups); `A_2` and `A_5` both
/// complete it to an equivalence relation whose classes are unions of groups,
/// one giving the fibers. Groups in different fibers are aligned through
/// `A_5`. A reading is kept when the closed-form spectra and the linked system
/// both certify.
pub fn extract_linked_system(s: &AssociationScheme) -> Result<Extraction> {
    if s.d() != 5 {
        return Err(Error::Precondition(format!(
            "need a 5-class scheme, got {} classes",
            s.d()
        )));
    }
    let l1 = unique((1..6).filter(|&i| is_equivalence(s, &[0, i])).collect(), "within-group")?;
    let n = 1 + s.valency(l1);
    let group = sum(&[0, l1]);
    let coarse: Vec<usize> = (1..6)
        .filter(|&i| i != l1 && is_equivalence(s, &[0, l1, i]))
        .filter(|&i| {
            s.coord_mul(&unit(i), &group)
                == unit(i)
                    .into_iter()
                    .map(|c| c * Surd::from(n as i64))
                    .collect::<Vec<_>>()
        })
        .collect();
    if coarse.len() != 2 {
        return Err(Error::Precondition(format!(
            "no fiber structure: classes {coarse:?} refine to unions of groups"
        )));
    }
    let rest: Vec<usize> = (1..6).filter(|&i| i != l1 && !coarse.contains(&i)).collect();
    let mut interpretations = Vec::new();
    for (l2, l5) in [(coarse[0], coarse[1]), (coarse[1], coarse[0])] {
        match fiber_order(s, l1, l2, l5) {
            Ok(perm) => {
                for (a3, a4) in [(rest[0], rest[1]), (rest[1], rest[0])] {
                    let labels = [0, l1, l2, a3, a4, l5];
                    interpretations.push(read_system(s, &perm, labels).map_err(|e| format!("labels {labels:?}: {e}")));
                }
            }
            Err(e) => interpretations.push(Err(format!("A_2 = class {l2}, A_5 = class {l5}: {e}"))),
        }
    }
    if interpretations.iter().all(|r| r.is_err()) {
        let why: Vec<String> = interpretations.into_iter().filter_map(|r| r.err()).collect();
        return Err(Error::Certification(why.join("\n")));
    }
    Ok(Extraction { interpretations })
}

/// Orders points fiber by fiber (fibers by least point), groups of the first
/// fiber by least point, groups of later fibers by their `A_5` partner in the
/// first fiber, and points within a group increasingly; then checks that
/// `A_1`, `A_2`, `A_5` take their Kronecker forms in that order.
fn fiber_order(s: &AssociationScheme, l1: usize, l2: usize, l5: usize) -> Result<Vec<usize>> {
    let order = s.order();
    let n = 1 + s.valency(l1) as usize;
    let v = n + s.valency(l2) as usize;
    if !v.is_multiple_of(n) || !order.is_multiple_of(v) || order / v < 2 || v / n < 2 || n < 2 {
        return Err(Error::Precondition(format!("|X| = {order}, fiber {v}, group {n}")));
    }
    let all: Vec<usize> = (0..order).collect();
    let fibers = classes_of(s, &[0, l1, l2], &all);
    let base_groups = classes_of(s, &[0, l1], &fibers[0]);
    let mut permutation: Vec<usize> = base_groups.iter().flatten().copied().collect();
    for fiber in &fibers[1..] {
        let groups = classes_of(s, &[0, l1], fiber);
        for bg in &base_groups {
            let g = groups
                .iter()
                .find(|g| s.relation(g[0], bg[0]) == l5)
                .ok_or_else(|| Error::Precondition("A_5 does not match groups across fibers".into()))?;
            permutation.extend_from_slice(g);
        }
    }
    let mut seen = vec![false; order];
    permutation.iter().for_each(|&x| seen[x] = true);
    if permutation.len() != order || !seen.iter().all(|&b| b) {
        return Err(Error::Precondition(
            "fibers and groups do not tile the point set".into(),
        ));
    }
    let structural = (0..order).all(|x| {
        (0..order).all(|y| {
            let r = s.relation(permutation[x], permutation[y]);
            let (same_fiber, same_group) = (x / v == y / v, (x % v) / n == (y % v) / n);
            match (same_fiber, same_group) {
                _ if x == y => r == 0,
                (true, true) => r == l1,
                (true, false) => r == l2,
                (false, true) => r == l5,
                (false, false) => ![0, l1, l2, l5].contains(&r),
            }
        })
    });
    if !structural {
        return Err(Error::Precondition(
            "A_1, A_2, A_5 do not take their Kronecker forms".into(),
        ));
    }
    Ok(permutation)
}

fn read_system(s: &AssociationScheme, perm: &[usize], labels: [usize; 6]) -> Result<Interpretation> {
    let [_, l1, l2, a3, _, _] = labels;
    let n = 1 + s.valency(l1) as usize;
    let v = n + s.valency(l2) as usize;
    let (m, f) = (v / n, s.order() / v);
    let f1 = (f - 1) as u64;
    let div = |x: u64, what: &str| -> Result<u64> {
        if x.is_multiple_of(f1) {
            Ok(x / f1)
        } else {
            Err(Error::InvalidParameters(format!(
                "{what} = {x} is not divisible by f - 1 = {f1}"
            )))
        }
    };
    let k = div(s.valency(a3), "valency of A_3")?;
    let lambda1 = div(s.p(a3, a3, l1), "p_33^1")?;
    let lambda2 = div(s.p(a3, a3, l2), "p_33^2")?;
    let base = GddParams::from_groups(k, m as u64, n as u64, lambda1, lambda2)?;

    let mut blocks = BTreeMap::new();
    for a in 0..f {
        for b in (0..f).filter(|&b| b != a) {
            let mat = IntMatrix::from_fn(v, v, |x, y| {
                BigInt::from((s.relation(perm[a * v + x], perm[b * v + y]) == a3) as u8)
            });
            blocks.insert((a, b), IncidenceMatrix::new(mat, m, n)?);
        }
    }
    let triple = if f >= 3 {
        Some(read_triple(&blocks, base)?)
    } else {
        None
    };
    let lp = LinkedParams::new(base, f, triple)?;
    let system = LinkedSystemII::new(lp, blocks)?;

    let below = triple.is_some_and(|t| t.sigma < t.tau);
    let params = SchemeParams::new(k, m as u64, n as u64, f as u64)?.with_sigma_below_tau(below);
    let mut certificate = Certificate::new(format!("reading class {a3} as A_3: {base}, f = {f}"));
    let (sp, spec_cert) = compute_spectra(&s.relabel_classes(&labels), params)?;
    certificate.absorb("spectra: ", spec_cert);
    certificate.check("f = m_5 + 1", sp.multiplicities[5] + 1 == f as u64, || {
        format!("m_5 = {}", sp.multiplicities[5])
    });
    certificate.absorb("system: ", verify_linked_system(&system));
    let certificate = certificate.into_result()?;
    Ok(Interpretation {
        labels,
        permutation: perm.to_vec(),
        params,
        system,
        certificate,
    })
}

/// `σ`, `τ`, `ρ` read off `A_{0,1}A_{1,2}` at a point of `A_{0,2}`, a point
/// outside `A_{0,2}+K`, and a point of `K`.
fn read_triple(blocks: &BTreeMap<(usize, usize), IncidenceMatrix>, base: GddParams) -> Result<Triple> {
    let a = blocks[&(0, 2)].matrix();
    let prod = blocks[&(0, 1)].matrix() * blocks[&(1, 2)].matrix();
    let n = base.n as usize;
    let v = a.rows();
    let find = |want: &dyn Fn(usize, usize) -> bool| -> Result<u64> {
        (0..v)
            .flat_map(|x| (0..v).map(move |y| (x, y)))
            .find(|&(x, y)| want(x, y))
            .map(|(x, y)| u64::try_from(&prod[(x, y)]).expect("non-negative count"))
            .ok_or_else(|| Error::Precondition("cannot read (sigma, tau, rho)".into()))
    };
    let one = BigInt::from(1);
    let sigma = find(&|x, y| a[(x, y)] == one)?;
    let tau = find(&|x, y| a[(x, y)] != one && x / n != y / n)?;
    let rho = find(&|x, y| x / n == y / n)?;
    Ok(Triple { sigma, tau, rho })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::paley_conference;
    use crate::linked::conference_to_gdd;
    use crate::schemes::assemble::tests::{system16, system16_f4};
    use crate::schemes::assemble_scheme;

    #[test]
    fn round_trip() {
        for sys in [system16(), system16_f4()] {
            let s = assemble_scheme(&sys).unwrap();
            let ex = extract_linked_system(&s).unwrap();
            let p = ex.primary();
            assert_eq!(p.permutation, (0..s.order()).collect::<Vec<_>>());
            assert_eq!(p.labels, [0, 1, 2, 3, 4, 5]);
            assert_eq!(p.system.blocks(), sys.blocks());
            assert_eq!(p.system.params(), sys.params());
        }
    }

    #[test]
    fn swapped_labels_give_both_readings() {
        let sys = system16();
        let mut classes = assemble_scheme(&sys).unwrap().into_classes();
        classes.swap(3, 4);
        let s = AssociationScheme::new(classes).unwrap();
        let ex = extract_linked_system(&s).unwrap();
        let readings: Vec<_> = ex.certified().collect();
        assert_eq!(readings.len(), 2);
        let second = readings[1];
        assert_eq!(second.labels[3], 4);
        assert_eq!(second.system.blocks(), sys.blocks());
        let first = readings[0];
        assert_eq!(first.labels[3], 3);
        assert_eq!(
            first.system.params().triple,
            Some(Triple {
                sigma: 1,
                tau: 3,
                rho: 3
            })
        );
        let a = sys.block(0, 1).matrix();
        let k = sys.params().base.group_indicator();
        let comp = &(&IntMatrix::ones(16) - &k) - a;
        assert_eq!(first.system.block(0, 1).matrix(), &comp);
    }

    #[test]
    fn shuffled_points() {
        let sys = system16();
        let s = assemble_scheme(&sys).unwrap();
        let perm: Vec<usize> = (0..48).map(|x| (x * 7 + 5) % 48).collect();
        let shuffled =
            AssociationScheme::new(s.classes().iter().map(|a| a.permute_symmetric(&perm)).collect()).unwrap();
        let ex = extract_linked_system(&shuffled).unwrap();
        let c = verify_linked_system(&ex.primary().system);
        assert!(c.holds());
        assert_eq!(ex.primary().system.params(), sys.params());
    }

    #[test]
    fn pair() {
        let (a, p) = conference_to_gdd(&paley_conference(5).unwrap()).unwrap();
        let sys = LinkedSystemII::pair(a, LinkedParams::pair(p)).unwrap();
        let ex = extract_linked_system(&assemble_scheme(&sys).unwrap()).unwrap();
        assert_eq!(ex.primary().system.f(), 2);
        assert_eq!(ex.primary().system.blocks(), sys.blocks());
    }
}
