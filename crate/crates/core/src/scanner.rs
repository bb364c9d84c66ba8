//! Feasible parameter enumeration for linked systems of SGDDs of type II.
//!
//! [`scan_table1`] walks the `λ1 = λ2` locus, where `A + K` is a symmetric
//! design; [`scan_table2`] lists designs with `λ1 ≠ λ2` whose partial
//! complements also have `λ1 ≠ λ2`, one row per admissible sign of `σ, τ`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::algebra::number::{exact_sqrt, prime_power};
use crate::designs::GddParams;
use crate::linked::{lemma_identities, sigma_tau_rho, Triple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowKind {
    SymmetricDesign,
    ProperProper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleRow {
    pub params: GddParams,
    pub triple: Triple,
    pub kind: RowKind,
    /// A construction in this crate realising the row, with the `f` it reaches.
    pub witness: Option<String>,
}

impl FeasibleRow {
    fn sort_key(&self) -> (u64, u64, u64, u64, u64) {
        let p = &self.params;
        (p.v, p.k, p.m, self.triple.sigma, self.triple.tau)
    }
}

/// `λ1 = k(k−m+1)/((m−1)(n−1))`, `λ2 = k²(m−2)/(n(m−1)²)` when both are
/// non-negative integers.
fn lambdas(k: u64, m: u64, n: u64) -> Option<(u64, u64)> {
    let (k, m, n) = (k as u128, m as u128, n as u128);
    if k + 1 < m {
        return None;
    }
    let (a, b) = (k * (k + 1 - m), (m - 1) * (n - 1));
    let (c, d) = (k * k * (m - 2), n * (m - 1) * (m - 1));
    (a % b == 0 && c % d == 0).then(|| ((a / b) as u64, (c / d) as u64))
}

fn accept(params: GddParams, t: Triple) -> bool {
    let c = lemma_identities(&params, &t);
    debug_assert!(c.holds(), "{c}");
    c.holds()
}

/// Rows with `λ1 = λ2`, `v = mn ≤ v_max`, `m ≥ 3`: `k = n(m−1)²/(m+n−2)`,
/// `0 < λ < k`, and the unique triple non-negative integral.
pub fn scan_table1(v_max: u64) -> Vec<FeasibleRow> {
    let mut rows: Vec<FeasibleRow> = (3..=v_max / 2)
        .into_par_iter()
        .flat_map_iter(|m| {
            (2..=v_max / m).filter_map(move |n| {
                let num = n * (m - 1) * (m - 1);
                if num % (m + n - 2) != 0 {
                    return None;
                }
                let k = num / (m + n - 2);
                let (l1, l2) = lambdas(k, m, n)?;
                if l1 != l2 || l1 == 0 || l1 >= k {
                    return None;
                }
                let params = GddParams::from_groups(k, m, n, l1, l2).ok()?;
                let t = sigma_tau_rho(k, m, n).ok()?.admissible().into_iter().next()?;
                accept(params, t).then(|| FeasibleRow {
                    params,
                    triple: t,
                    kind: RowKind::SymmetricDesign,
                    witness: tilde_l_witness(&params, &t),
                })
            })
        })
        .collect();
    rows.sort_by_key(FeasibleRow::sort_key);
    rows
}

/// Rows with `λ1 ≠ λ2`, `v = mn ≤ v_max`, `m ≥ 3`, `λ1 < k < (m−1)n`,
/// `(m−1) | k`, partial complement with integral `λ1' ≠ λ2'`, square
/// discriminant `k(m−1)(n−1)(mn−k−n)`, and each sign giving non-negative
/// integers with `σ, τ ≤ k` and `ρ ≠ τ`.
pub fn scan_table2(v_max: u64) -> Vec<FeasibleRow> {
    let mut rows: Vec<FeasibleRow> = (3..=v_max / 2)
        .into_par_iter()
        .flat_map_iter(|m| {
            (2..=v_max / m).flat_map(move |n| {
                (1..(m - 1) * n)
                    .filter(move |k| k % (m - 1) == 0)
                    .flat_map(move |k| table2_rows(k, m, n))
            })
        })
        .collect();
    rows.sort_by_key(FeasibleRow::sort_key);
    rows
}

fn table2_rows(k: u64, m: u64, n: u64) -> Vec<FeasibleRow> {
    let Some((l1, l2)) = lambdas(k, m, n) else {
        return Vec::new();
    };
    if l1 == l2 || l1 >= k {
        return Vec::new();
    }
    let kc = (m - 1) * n - k;
    match lambdas(kc, m, n) {
        Some((c1, c2)) if c1 != c2 => {}
        _ => return Vec::new(),
    }
    let delta = BigInt::from(k) * (m - 1) * (n - 1) * ((m - 1) * n - k);
    if exact_sqrt(&delta).is_none() {
        return Vec::new();
    }
    let Ok(params) = GddParams::from_groups(k, m, n, l1, l2) else {
        return Vec::new();
    };
    let Ok(cands) = sigma_tau_rho(k, m, n) else {
        return Vec::new();
    };
    cands
        .admissible()
        .into_iter()
        .filter(|t| t.sigma <= k && t.tau <= k && accept(params, *t))
        .map(|t| FeasibleRow {
            params,
            triple: t,
            kind: RowKind::ProperProper,
            witness: None,
        })
        .collect()
}

/// Resolvable auxiliary sets available here, as `(name, v, k, r, λ, μ)`:
/// Sylvester Hadamard matrices and affine geometries.
fn aux_families(n: u64) -> Vec<(String, u64, u64, u64, u64, u64)> {
    let mut out = Vec::new();
    if n >= 4 && n.is_power_of_two() {
        out.push((format!("Hadamard({n})"), n, n / 2, n - 1, n / 2 - 1, n / 4));
    }
    if let Some((p, e)) = prime_power(n) {
        for d in (2..=e).filter(|d| e % d == 0) {
            let q = p.pow(e / d);
            let r = (n - 1) / (q - 1);
            out.push((format!("AG({d},{q})"), n, n / q, r, (n / q - 1) / (q - 1), n / (q * q)));
        }
    }
    out
}

/// A tilde-L system `((r+1)v, kr, r+1, v, kλ, kλ)` with triple
/// `(k+(r−2)μ, (r−2)μ, rμ)` matching the row, built from an auxiliary set and
/// the `f = r+1` linked MOLS over `GF(r+1)`.
fn tilde_l_witness(p: &GddParams, t: &Triple) -> Option<String> {
    prime_power(p.m)?;
    aux_families(p.n).into_iter().find_map(|(name, v, k, r, lambda, mu)| {
        let ok = r + 1 == p.m
            && v == p.n
            && k * r == p.k
            && k * lambda == p.lambda1
            && *t
                == Triple {
                    sigma: k + (r - 2) * mu,
                    tau: (r - 2) * mu,
                    rho: r * mu,
                };
        ok.then(|| format!("tilde-L: {name} + GF({}) linked MOLS, f = {}", p.m, p.m))
    })
}

pub const TABLE1_HEADER: &str = "v,k,lambda,m,n,sigma,tau,rho";
pub const TABLE2_HEADER: &str = "v,k,m,n,lambda1,lambda2,sigma,tau,rho";

fn fields(row: &FeasibleRow) -> Vec<u64> {
    let (p, t) = (&row.params, &row.triple);
    match row.kind {
        RowKind::SymmetricDesign => vec![p.v, p.k, p.lambda1, p.m, p.n, t.sigma, t.tau, t.rho],
        RowKind::ProperProper => vec![p.v, p.k, p.m, p.n, p.lambda1, p.lambda2, t.sigma, t.tau, t.rho],
    }
}

fn header(kind: RowKind) -> &'static str {
    match kind {
        RowKind::SymmetricDesign => TABLE1_HEADER,
        RowKind::ProperProper => TABLE2_HEADER,
    }
}

/// CSV with a header line, columns in table order.
pub fn to_csv(kind: RowKind, rows: &[FeasibleRow]) -> String {
    let mut out = format!("{}\n", header(kind));
    for r in rows {
        let line: Vec<String> = fields(r).iter().map(u64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Right-aligned columns plus a witness column.
pub fn to_text(kind: RowKind, rows: &[FeasibleRow]) -> String {
    let mut names: Vec<&str> = header(kind).split(',').collect();
    names.push("witness");
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut c: Vec<String> = fields(r).iter().map(u64::to_string).collect();
            c.push(r.witness.clone().unwrap_or_default());
            c
        })
        .collect();
    let widths: Vec<usize> = (0..names.len())
        .map(|i| {
            cells
                .iter()
                .map(|c| c[i].len())
                .chain([names[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    let last = names.len() - 1;
    let line = |out: &mut String, c: &[&str]| {
        let parts: Vec<String> = c
            .iter()
            .enumerate()
            .map(|(i, s)| {
                if i == last {
                    s.to_string()
                } else {
                    format!("{s:>w$}", w = widths[i])
                }
            })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut out, &names);
    for c in &cells {
        line(&mut out, &c.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_table1_row() {
        let rows = scan_table1(16);
        assert_eq!(rows.len(), 1);
        let r = &rows[0];
        assert_eq!(fields(r), vec![16, 6, 2, 4, 4, 3, 1, 3]);
        assert_eq!(
            r.witness.as_deref(),
            Some("tilde-L: Hadamard(4) + GF(4) linked MOLS, f = 4")
        );
    }

    #[test]
    fn known_rows() {
        let t1 = scan_table1(300);
        assert!(t1.iter().any(|r| fields(r) == vec![288, 42, 6, 8, 36, 11, 5, 7]));
        let w45 = t1.iter().find(|r| r.params.v == 45).unwrap();
        assert_eq!(
            w45.witness.as_deref(),
            Some("tilde-L: AG(2,3) + GF(5) linked MOLS, f = 5")
        );
        assert!(t1.iter().find(|r| r.params.v == 96).unwrap().witness.is_none());
        let t2 = scan_table2(130);
        let f: Vec<Vec<u64>> = t2.iter().map(fields).collect();
        assert!(f.contains(&vec![52, 24, 13, 4, 8, 11, 9, 13, 12]));
        assert!(f.contains(&vec![52, 24, 13, 4, 8, 11, 13, 9, 12]));
        assert!(f.contains(&vec![125, 40, 5, 25, 15, 12, 9, 14, 16]));
    }

    #[test]
    fn lambda_helper() {
        assert_eq!(lambdas(6, 4, 4), Some((2, 2)));
        assert_eq!(lambdas(2, 4, 4), None);
        assert_eq!(lambdas(24, 13, 4), Some((8, 11)));
    }

    #[test]
    fn formats() {
        let rows = scan_table1(16);
        assert_eq!(
            to_csv(RowKind::SymmetricDesign, &rows),
            "v,k,lambda,m,n,sigma,tau,rho\n16,6,2,4,4,3,1,3\n"
        );
        let text = to_text(RowKind::SymmetricDesign, &rows);
        assert!(text.starts_with(" v  k  lambda  m  n  sigma  tau  rho  witness\n"));
    }
}
