use super::scheme::AssociationScheme;
use super::spectra::Spectra;
use crate::report::Certificate;
use crate::{Rational, Surd, SurdMatrix};

/// Krein parameters `q_{i,j}^k` of a 5-class scheme.
#[derive(Clone, Debug, PartialEq)]
pub struct KreinTensor {
    q: Vec<Surd>,
}

impl KreinTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Surd {
        &self.q[(i * 6 + j) * 6 + k]
    }

    /// `B_i*` with `(B_i*)_{j,k} = q_{i,j}^k`.
    pub fn matrix(&self, i: usize) -> SurdMatrix {
        SurdMatrix::from_fn(6, 6, |j, k| self.get(i, j, k).clone())
    }

    /// Triples with a negative Krein parameter.
    pub fn negative(&self) -> Vec<(usize, usize, usize)> {
        (0..216)
            .filter(|&x| self.q[x].is_negative())
            .map(|x| (x / 36, (x / 6) % 6, x % 6))
            .collect()
    }
}

/// `q_{i,j}^k = (1/|X|) Σ_l Q_{l,i} Q_{l,j} P_{k,l}` from the eigenmatrices.
/// Needs no scheme, so it also applies to parameter sets with `f > m`.
pub fn krein_parameters(sp: &Spectra) -> KreinTensor {
    let order = Surd::from(sp.params.order() as i64);
    let mut q = Vec::with_capacity(216);
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                let sum = (0..6).fold(Surd::from(0i64), |acc, l| {
                    acc + sp.q[(l, i)].clone() * sp.q[(l, j)].clone() * sp.p[(k, l)].clone()
                });
                q.push(sum / order.clone());
            }
        }
    }
    KreinTensor { q }
}

/// The displayed `B_2*` pattern in terms of `m` and `f`.
pub fn b2_star_closed_form(m: u64, f: u64) -> SurdMatrix {
    let r = |a: i64, b: i64| Surd::rational(Rational::new(a.into(), b.into()));
    let (m, f) = (m as i64, f as i64);
    let z = || r(0, 1);
    let rows = [
        [z(), z(), r(1, 1), z(), z(), z()],
        [z(), r(m - f, f), z(), z(), r(m, f), z()],
        [r(m - 1, 1), z(), r(m - 2, 1), z(), z(), z()],
        [z(), z(), z(), r(m - 2, 1), z(), r(m - 1, 1)],
        [z(), r((f - 1) * m, f), z(), z(), r((m - 1) * f - m, f), z()],
        [z(), z(), z(), r(1, 1), z(), z()],
    ];
    SurdMatrix::from_fn(6, 6, |j, k| rows[j][k].clone())
}

/// Krein parameters by the eigenmatrix formula, cross-checked against
/// `|X|·trace((E_i∘E_j)E_k)/m_k` computed in the basis `A_0..A_5`, with
/// non-negativity and the `B_2*` pattern.
pub fn compute_krein(scheme: &AssociationScheme, sp: &Spectra) -> (KreinTensor, Certificate) {
    let kt = krein_parameters(sp);
    let mut cert = Certificate::new("Krein parameters");
    let order = Surd::from(sp.params.order() as i64);
    let e: Vec<Vec<Surd>> = (0..6)
        .map(|j| (0..6).map(|l| sp.q[(l, j)].clone() / order.clone()).collect())
        .collect();
    let mut mismatch = None;
    'outer: for i in 0..6 {
        for j in 0..6 {
            let hadamard: Vec<Surd> = e[i].iter().zip(&e[j]).map(|(a, b)| a.clone() * b.clone()).collect();
            for (k, ek) in e.iter().enumerate() {
                let tr = scheme.coord_trace_product(&hadamard, ek);
                let q = order.clone() * tr / Surd::from(sp.multiplicities[k] as i64);
                if &q != kt.get(i, j, k) {
                    mismatch = Some((i, j, k, q));
                    break 'outer;
                }
            }
        }
    }
    cert.check("q_ij^k = |X| trace((E_i o E_j) E_k) / m_k", mismatch.is_none(), || {
        let (i, j, k, q) = mismatch.clone().unwrap();
        format!("q_{i},{j}^{k}: trace gives {q}, eigenmatrices give {}", kt.get(i, j, k))
    });
    let neg = kt.negative();
    cert.check("q_ij^k >= 0 (Krein condition)", neg.is_empty(), || {
        let (i, j, k) = neg[0];
        format!(
            "{} negative parameters, first q_{i},{j}^{k} = {}",
            neg.len(),
            kt.get(i, j, k)
        )
    });
    let (m, f) = (sp.params.m, sp.params.f);
    cert.check(
        format!(
            "q_2,1^1 = m/f - 1 = {}",
            Rational::new(m.into(), f.into()) - Rational::from_integer(1.into())
        ),
        kt.get(2, 1, 1) == &Surd::rational(Rational::new((m as i64 - f as i64).into(), (f as i64).into())),
        || format!("q_2,1^1 = {}", kt.get(2, 1, 1)),
    );
    cert.check_matrix_eq(
        "B_2* matches the closed form",
        &kt.matrix(2),
        &b2_star_closed_form(m, f),
    );
    (kt, cert)
}
