use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::report::Certificate;
use crate::{IntMatrix, Surd};

/// Adjacency matrices `A_0..A_d` of a symmetric association scheme together
/// with the verified intersection numbers `p_{i,j}^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociationScheme {
    order: usize,
    classes: Vec<IntMatrix>,
    relation: Vec<u8>,
    p: Vec<u64>,
}

impl AssociationScheme {
    /// Certifies the axioms; fails with the certificate text otherwise.
    pub fn new(classes: Vec<IntMatrix>) -> Result<Self> {
        let (scheme, cert) = certify_scheme(classes);
        cert.into_result()?;
        Ok(scheme.expect("certified"))
    }

    /// `|X|`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of classes `d`.
    pub fn d(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn classes(&self) -> &[IntMatrix] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &IntMatrix {
        &self.classes[i]
    }

    pub fn into_classes(self) -> Vec<IntMatrix> {
        self.classes
    }

    /// Index of the class containing `(x, y)`.
    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relation[x * self.order + y] as usize
    }

    /// `p_{i,j}^k`.
    pub fn p(&self, i: usize, j: usize, k: usize) -> u64 {
        let s = self.classes.len();
        self.p[(i * s + j) * s + k]
    }

    /// Valency `k_i = p_{i,i}^0`.
    pub fn valency(&self, i: usize) -> u64 {
        self.p(i, i, 0)
    }

    pub fn valencies(&self) -> Vec<u64> {
        (0..self.classes.len()).map(|i| self.valency(i)).collect()
    }

    /// Intersection matrix `B_i` with `(B_i)_{j,k} = p_{i,j}^k`.
    pub fn intersection_matrix(&self, i: usize) -> IntMatrix {
        let s = self.classes.len();
        IntMatrix::from_fn(s, s, |j, k| BigInt::from(self.p(i, j, k)))
    }

    /// Product of two elements of the Bose–Mesner algebra given by their
    /// coordinates in the basis `A_0..A_d`.
    pub fn coord_mul(&self, x: &[Surd], y: &[Surd]) -> Vec<Surd> {
        let s = self.classes.len();
        let mut out = vec![Surd::zero(); s];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xi.clone() * yj.clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let p = self.p(i, j, k);
                    if p != 0 {
                        *o = o.clone() + xy.clone() * Surd::from(p as i64);
                    }
                }
            }
        }
        out
    }

    /// `trace(XY)` for `X`, `Y` in the algebra, from coordinates:
    /// `trace(A_iA_j) = δ_ij |X| k_i`.
    pub fn coord_trace_product(&self, x: &[Surd], y: &[Surd]) -> Surd {
        let order = Surd::from(self.order as i64);
        x.iter().zip(y).enumerate().fold(Surd::zero(), |acc, (i, (a, b))| {
            acc + a.clone() * b.clone() * order.clone() * Surd::from(self.valency(i) as i64)
        })
    }

    /// The same scheme with class `order[t]` renamed `t`; `order[0]` must be 0.
    pub fn relabel_classes(&self, order: &[usize]) -> Self {
        let s = self.classes.len();
        assert!(order.len() == s && order[0] == 0, "class relabelling must fix A_0");
        let mut inverse = vec![0u8; s];
        order.iter().enumerate().for_each(|(t, &old)| inverse[old] = t as u8);
        let mut p = vec![0u64; s * s * s];
        for i in 0..s {
            for j in 0..s {
                for k in 0..s {
                    p[(i * s + j) * s + k] = self.p(order[i], order[j], order[k]);
                }
            }
        }
        Self {
            order: self.order,
            classes: order.iter().map(|&i| self.classes[i].clone()).collect(),
            relation: self.relation.iter().map(|&r| inverse[r as usize]).collect(),
            p,
        }
    }

    /// Coordinates of `Σ_i c_i A_i` as an explicit matrix.
    pub fn coord_matrix(&self, c: &[Surd]) -> Matrix {
        let n = self.order;
        Matrix::from_fn(n, n, |x, y| c[self.relation(x, y)].clone())
    }
}

type Matrix = crate::SurdMatrix;

/// Checks `A_0 = I`, every `A_i` a non-zero symmetric (0,1)-matrix, `Σ A_i = J`,
/// and `A_iA_j = Σ_k p_{i,j}^k A_k` entry by entry: the count of `z` with
/// `(x,z) ∈ R_i`, `(z,y) ∈ R_j` is read at one representative pair per class
/// and compared at every pair `(x, y)`.
pub fn certify_scheme(classes: Vec<IntMatrix>) -> (Option<AssociationScheme>, Certificate) {
    let s = classes.len();
    let mut cert = Certificate::new(format!(
        "symmetric association scheme with {} classes",
        s.saturating_sub(1)
    ));
    if !(2..=255).contains(&s) {
        cert.fail("class count", format!("{s} adjacency matrices"));
        return (None, cert);
    }
    let order = classes[0].rows();
    let shapes = classes.iter().all(|a| a.shape() == (order, order));
    cert.check("square matrices of one order", shapes, || "shape mismatch".into());
    if !shapes {
        return (None, cert);
    }
    cert.check_matrix_eq("A_0 = I", &classes[0], &IntMatrix::identity(order));
    let bad = classes.iter().position(|a| !a.is_binary());
    cert.check("every A_i is a (0,1)-matrix", bad.is_none(), || {
        format!("A_{}", bad.unwrap())
    });
    let bad = classes.iter().position(|a| !a.is_symmetric());
    cert.check("every A_i is symmetric", bad.is_none(), || {
        format!("A_{}", bad.unwrap())
    });
    let bad = classes.iter().position(|a| a.is_zero_matrix());
    cert.check("every A_i is non-zero", bad.is_none(), || format!("A_{}", bad.unwrap()));

    let mut relation = vec![u8::MAX; order * order];
    let mut partition_ok = true;
    for (c, a) in classes.iter().enumerate() {
        for (idx, e) in a.entries().iter().enumerate() {
            if e.is_one() {
                if relation[idx] != u8::MAX {
                    partition_ok = false;
                }
                relation[idx] = c as u8;
            }
        }
    }
    partition_ok &= relation.iter().all(|&r| r != u8::MAX);
    cert.check("sum of A_i = J (each pair in exactly one class)", partition_ok, || {
        "classes do not partition X x X".into()
    });
    if !cert.holds() {
        return (None, cert);
    }

    let counts = |x: usize, y: usize| -> Vec<u64> {
        let mut t = vec![0u64; s * s];
        for z in 0..order {
            t[relation[x * order + z] as usize * s + relation[z * order + y] as usize] += 1;
        }
        t
    };
    let mut p = vec![0u64; s * s * s];
    for k in 0..s {
        let idx = relation.iter().position(|&r| r as usize == k).expect("non-empty class");
        let t = counts(idx / order, idx % order);
        for ij in 0..s * s {
            p[ij * s + k] = t[ij];
        }
    }
    let mismatch = (0..order).into_par_iter().find_map_first(|x| {
        (0..order).find_map(|y| {
            let k = relation[x * order + y] as usize;
            let t = counts(x, y);
            (0..s * s)
                .find(|&ij| t[ij] != p[ij * s + k])
                .map(|ij| (x, y, ij / s, ij % s, t[ij], p[ij * s + k]))
        })
    });
    cert.check(
        "A_i A_j = sum_k p_ij^k A_k (all pairs, all i,j)",
        mismatch.is_none(),
        || {
            let (x, y, i, j, found, want) = mismatch.unwrap();
            format!("(A_{i} A_{j})[{x},{y}] = {found}, class representative gives {want}")
        },
    );
    let asym = (0..s)
        .flat_map(|i| (0..s).map(move |j| (i, j)))
        .find(|&(i, j)| (0..s).any(|k| p[(i * s + j) * s + k] != p[(j * s + i) * s + k]));
    cert.check("p_ij^k = p_ji^k", asym.is_none(), || format!("{:?}", asym.unwrap()));
    if !cert.holds() {
        return (None, cert);
    }
    (
        Some(AssociationScheme {
            order,
            classes,
            relation,
            p,
        }),
        cert,
    )
}
