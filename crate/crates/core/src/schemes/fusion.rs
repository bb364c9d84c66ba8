use num_bigint::BigInt;

use super::scheme::AssociationScheme;
use super::spectra::Spectra;
use crate::report::Certificate;
use crate::{IntMatrix, Surd};

/// `{A_0, A_1+A_2, A_3+A_5, A_4}`.
pub const CANONICAL_FUSION: [&[usize]; 4] = [&[0], &[1, 2], &[3, 5], &[4]];
/// `{E_0, E_1+E_2, E_3+E_4, E_5}`.
pub const CANONICAL_IDEMPOTENT_PARTITION: [&[usize]; 4] = [&[0], &[1, 2], &[3, 4], &[5]];

#[derive(Clone, Debug)]
pub struct FusionReport {
    /// `k = (m−1)n(n−1)/(n+m−2)`.
    pub predicted: bool,
    pub fused: Option<AssociationScheme>,
    /// Idempotents grouped by the eigenvalues of the fused classes.
    pub idempotent_partition: Option<Vec<Vec<usize>>>,
    pub certificate: Certificate,
}

impl FusionReport {
    pub fn fusable(&self) -> bool {
        self.fused.is_some()
    }
}

/// Merges the classes along `parts` (the first part must be `{0}`). Closure
/// under multiplication is checked in the basis `A_0..A_d`; a closed partition
/// is then re-certified as a scheme from its explicit matrices.
pub fn fuse(scheme: &AssociationScheme, parts: &[&[usize]]) -> (Option<AssociationScheme>, Certificate) {
    let s = scheme.d() + 1;
    let label: String = parts.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>().join(" ");
    let mut cert = Certificate::new(format!("fusion {label}"));
    let mut seen = vec![0usize; s];
    parts
        .iter()
        .flat_map(|p| p.iter())
        .filter(|&&i| i < s)
        .for_each(|&i| seen[i] += 1);
    let valid = parts.first().is_some_and(|p| p.len() == 1 && p[0] == 0)
        && seen.iter().all(|&c| c == 1)
        && parts.iter().flat_map(|p| p.iter()).all(|&i| i < s);
    cert.check("partition of the classes with {0} first", valid, || label.clone());
    if !valid {
        return (None, cert);
    }
    let coords = |p: &[usize]| -> Vec<Surd> { (0..s).map(|i| Surd::from(p.contains(&i) as i64)).collect() };
    let mut leak = None;
    'outer: for (a, pa) in parts.iter().enumerate() {
        for (b, pb) in parts.iter().enumerate().skip(a) {
            let prod = scheme.coord_mul(&coords(pa), &coords(pb));
            if let Some(part) = parts.iter().find(|p| p.iter().any(|&i| prod[i] != prod[p[0]])) {
                leak = Some((a, b, part.to_vec()));
                break 'outer;
            }
        }
    }
    cert.check("products of fused classes stay in their span", leak.is_none(), || {
        let (a, b, part) = leak.clone().unwrap();
        format!("B_{a} B_{b} is not constant on classes {part:?}")
    });
    if leak.is_some() {
        return (None, cert);
    }
    let classes: Vec<IntMatrix> = parts
        .iter()
        .map(|p| {
            let n = scheme.order();
            IntMatrix::from_fn(n, n, |x, y| BigInt::from(p.contains(&scheme.relation(x, y)) as u8))
        })
        .collect();
    let (fused, c) = super::scheme::certify_scheme(classes);
    cert.absorb("fused: ", c);
    (fused, cert)
}

/// Tests the canonical 3-class fusion and, when it exists, groups the
/// idempotents by the eigenvalues of the fused classes.
pub fn check_fusion(scheme: &AssociationScheme, sp: &Spectra) -> FusionReport {
    let (k, m, n) = (sp.params.k, sp.params.m, sp.params.n);
    let predicted = k * (n + m - 2) == (m - 1) * n * (n - 1);
    let (fused, mut cert) = fuse(scheme, &CANONICAL_FUSION);
    let mut idempotent_partition = None;
    if fused.is_some() {
        let eig = |j: usize| -> Vec<Surd> {
            CANONICAL_FUSION
                .iter()
                .map(|part| part.iter().fold(Surd::from(0i64), |acc, &i| acc + sp.p[(j, i)].clone()))
                .collect()
        };
        let mut groups: Vec<(Vec<Surd>, Vec<usize>)> = Vec::new();
        for j in 0..6 {
            let e = eig(j);
            match groups.iter_mut().find(|(g, _)| *g == e) {
                Some((_, js)) => js.push(j),
                None => groups.push((e, vec![j])),
            }
        }
        let partition: Vec<Vec<usize>> = groups.into_iter().map(|(_, js)| js).collect();
        let want: Vec<Vec<usize>> = CANONICAL_IDEMPOTENT_PARTITION.iter().map(|p| p.to_vec()).collect();
        cert.check("fused idempotents {E0},{E1+E2},{E3+E4},{E5}", partition == want, || {
            format!("{partition:?}")
        });
        idempotent_partition = Some(partition);
    }
    cert.check(
        format!("fusable iff k = (m-1)n(n-1)/(n+m-2) (predicted {predicted})"),
        fused.is_some() == predicted,
        || format!("fusable = {}", fused.is_some()),
    );
    FusionReport {
        predicted,
        fused,
        idempotent_partition,
        certificate: cert,
    }
}
