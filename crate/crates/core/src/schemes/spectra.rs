use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::scheme::AssociationScheme;
use crate::algebra::number::square_free_decompose;
use crate::error::{Error, Result};
use crate::report::Certificate;
use crate::{Rational, Surd, SurdMatrix};

/// `E_j² = E_j` is also checked on explicit matrices up to this order. The
/// checks in the basis `A_0..A_5` always run and are exact once the
/// intersection numbers are certified.
pub const EXPLICIT_IDEMPOTENT_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SchemeParams {
    pub k: u64,
    pub m: u64,
    pub n: u64,
    pub f: u64,
    /// The eigenvalue of `A_3` on `E_1` is `(f−1)(σ−τ)`; the closed forms
    /// take `σ > τ`, and this flag flips the sign of every square root.
    pub sigma_below_tau: bool,
}

impl SchemeParams {
    pub fn new(k: u64, m: u64, n: u64, f: u64) -> Result<Self> {
        if m < 2 || n < 2 || f < 2 || k == 0 || k >= (m - 1) * n {
            return Err(Error::InvalidParameters(format!(
                "closed-form spectra need m, n, f >= 2 and 0 < k < (m-1)n, got (k,m,n,f) = ({k},{m},{n},{f})"
            )));
        }
        Ok(Self {
            k,
            m,
            n,
            f,
            sigma_below_tau: false,
        })
    }

    pub fn with_sigma_below_tau(self, flag: bool) -> Self {
        Self {
            sigma_below_tau: flag,
            ..self
        }
    }

    /// `|X| = fmn`.
    pub fn order(&self) -> u64 {
        self.f * self.m * self.n
    }

    /// `k(m−1)(n−1)(mn−k−n)`, whose square-free part is the field radicand.
    pub fn discriminant(&self) -> BigInt {
        let (k, m, n) = (BigInt::from(self.k), BigInt::from(self.m), BigInt::from(self.n));
        let one = BigInt::one();
        &k * (&m - &one) * (&n - &one) * (&m * &n - &k - &n)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Spectra {
    pub params: SchemeParams,
    /// `P_{j,i}`: eigenvalue of `A_i` on the `j`-th eigenspace.
    pub p: SurdMatrix,
    pub q: SurdMatrix,
    pub multiplicities: Vec<u64>,
    /// Square-free part of the discriminant; 1 when every entry is rational.
    pub radicand: BigInt,
}

fn int(x: i64) -> Surd {
    Surd::from(x)
}

fn frac(a: i64, b: i64) -> Surd {
    Surd::rational(Rational::new(a.into(), b.into()))
}

fn sqrt_frac(a: i64, b: i64) -> Surd {
    Surd::sqrt(&Rational::new(a.into(), b.into())).expect("non-negative")
}

/// First eigenmatrix `P` and second eigenmatrix `Q` from their closed forms.
pub fn closed_form_spectra(params: SchemeParams) -> Result<Spectra> {
    let SchemeParams {
        k,
        m,
        n,
        f,
        sigma_below_tau,
    } = params;
    let (k, m, n, f) = (k as i64, m as i64, n as i64, f as i64);
    let c = m * n - k - n;
    let eps = int(if sigma_below_tau { -1 } else { 1 });
    let s = eps.clone() * sqrt_frac(k * c, (m - 1) * (n - 1));
    let t = eps.clone() * int(m) * sqrt_frac((n - 1) * c, k * (m - 1));
    let u = eps * int(m) * sqrt_frac(k * (n - 1), (m - 1) * c);
    let f1 = f - 1;

    let p_rows: Vec<Vec<Surd>> = vec![
        vec![
            int(1),
            int(n - 1),
            int((m - 1) * n),
            int(f1 * k),
            int(f1 * c),
            int(f1 * n),
        ],
        vec![
            int(1),
            int(-1),
            int(0),
            int(f1) * s.clone(),
            -(int(f1) * s.clone()),
            int(0),
        ],
        vec![
            int(1),
            int(n - 1),
            int(-n),
            frac(-f1 * k, m - 1),
            frac(-f1 * c, m - 1),
            int(f1 * n),
        ],
        vec![int(1), int(n - 1), int(-n), frac(k, m - 1), frac(c, m - 1), int(-n)],
        vec![int(1), int(-1), int(0), -s.clone(), s, int(0)],
        vec![int(1), int(n - 1), int((m - 1) * n), int(-k), int(-c), int(-n)],
    ];
    let q_rows: Vec<Vec<Surd>> = vec![
        vec![
            int(1),
            int(m * (n - 1)),
            int(m - 1),
            int(f1 * (m - 1)),
            int(f1 * m * (n - 1)),
            int(f1),
        ],
        vec![int(1), int(-m), int(m - 1), int(f1 * (m - 1)), int(-f1 * m), int(f1)],
        vec![int(1), int(0), int(-1), int(-f1), int(0), int(f1)],
        vec![int(1), t.clone(), int(-1), int(1), -t, int(-1)],
        vec![int(1), -u.clone(), int(-1), int(1), u, int(-1)],
        vec![int(1), int(0), int(m - 1), int(-(m - 1)), int(0), int(-1)],
    ];
    let p = SurdMatrix::from_fn(6, 6, |j, i| p_rows[j][i].clone());
    let q = SurdMatrix::from_fn(6, 6, |i, j| q_rows[i][j].clone());
    let multiplicities = q_rows[0]
        .iter()
        .map(|x| x.to_rational().unwrap().to_integer().try_into().unwrap())
        .collect();
    let radicand = square_free_decompose(&params.discriminant()).1;
    Ok(Spectra {
        params,
        p,
        q,
        multiplicities,
        radicand,
    })
}

/// Coordinates of `E_j = (1/|X|) Σ_i Q_{i,j} A_i`.
fn idempotent_coords(sp: &Spectra, j: usize) -> Vec<Surd> {
    let order = int(sp.params.order() as i64);
    (0..6).map(|i| sp.q[(i, j)].clone() / order.clone()).collect()
}

/// `E_j` as an explicit matrix.
pub fn idempotent(scheme: &AssociationScheme, sp: &Spectra, j: usize) -> SurdMatrix {
    scheme.coord_matrix(&idempotent_coords(sp, j))
}

type Pair = (i128, i128);

/// `L·|X|·E_j` with entries `a + b√D` stored as integer pairs, `L` the least
/// common denominator of column `j` of `Q`. `None` if a value leaves `i128`.
fn scaled_idempotent(sp: &Spectra, j: usize) -> Option<(i128, Vec<Pair>)> {
    let col: Vec<&Surd> = (0..6).map(|i| &sp.q[(i, j)]).collect();
    let l = col
        .iter()
        .flat_map(|x| [x.rational_part().denom(), x.irrational_part().denom()])
        .fold(BigInt::one(), |acc, d| acc.lcm(d));
    let scaled = |r: &Rational| (r * Rational::from_integer(l.clone())).to_integer().to_i128();
    let coeffs = col
        .iter()
        .map(|x| Some((scaled(x.rational_part())?, scaled(x.irrational_part())?)))
        .collect::<Option<Vec<_>>>()?;
    Some((l.to_i128()?, coeffs))
}

/// `M² = c·M` for `M = Σ_i coeffs[i] A_i`, entry by entry.
fn is_scaled_idempotent(scheme: &AssociationScheme, coeffs: &[Pair], c: i128, d: i128) -> Option<bool> {
    let n = scheme.order();
    let entry = |x: usize, y: usize| coeffs[scheme.relation(x, y)];
    let mul = |p: Pair, q: Pair| -> Option<Pair> {
        let a =
            p.0.checked_mul(q.0)?
                .checked_add(p.1.checked_mul(q.1)?.checked_mul(d)?)?;
        let b = p.0.checked_mul(q.1)?.checked_add(p.1.checked_mul(q.0)?)?;
        Some((a, b))
    };
    for x in 0..n {
        for y in x..n {
            let mut acc: Pair = (0, 0);
            for z in 0..n {
                let t = mul(entry(x, z), entry(z, y))?;
                acc = (acc.0.checked_add(t.0)?, acc.1.checked_add(t.1)?);
            }
            let want = entry(x, y);
            if acc != (want.0.checked_mul(c)?, want.1.checked_mul(c)?) {
                return Some(false);
            }
        }
    }
    Some(true)
}

/// Builds `P`, `Q` from the closed forms and certifies them against the scheme.
pub fn compute_spectra(scheme: &AssociationScheme, params: SchemeParams) -> Result<(Spectra, Certificate)> {
    let sp = closed_form_spectra(params)?;
    let mut cert = Certificate::new(format!(
        "closed-form spectra for (k,m,n,f) = ({},{},{},{}) over Q(sqrt({}))",
        params.k, params.m, params.n, params.f, sp.radicand
    ));
    let order = params.order();
    if scheme.d() != 5 || scheme.order() as u64 != order {
        cert.fail(
            "scheme shape",
            format!(
                "need 5 classes on fmn = {order} points, got {} classes on {}",
                scheme.d(),
                scheme.order()
            ),
        );
        return Ok((sp, cert));
    }
    let x = int(order as i64);
    cert.check_matrix_eq("P Q = |X| I", &(&sp.p * &sp.q), &SurdMatrix::identity(6).scale(&x));

    let bad = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).find(|&(i, j)| {
        sp.q[(i, j)].clone() * int(scheme.valency(i) as i64) != int(sp.multiplicities[j] as i64) * sp.p[(j, i)].clone()
    });
    cert.check("k_i Q_ij = m_j P_ji", bad.is_none(), || {
        format!("(i,j) = {:?}", bad.unwrap())
    });

    let val: Vec<Surd> = scheme.valencies().into_iter().map(|v| int(v as i64)).collect();
    let row0: Vec<Surd> = sp.p.row(0).to_vec();
    cert.check("P row 0 = valencies", row0 == val, || {
        format!(
            "P row 0 = {:?}, valencies {:?}",
            row0.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            scheme.valencies()
        )
    });

    let e: Vec<Vec<Surd>> = (0..6).map(|j| idempotent_coords(&sp, j)).collect();
    let unit = |i: usize| -> Vec<Surd> { (0..6).map(|l| if l == i { int(1) } else { int(0) }).collect() };
    let zero = vec![Surd::zero(); 6];

    let bad = (0..6).flat_map(|j| (0..6).map(move |l| (j, l))).find(|&(j, l)| {
        let want = if j == l { &e[j] } else { &zero };
        &scheme.coord_mul(&e[j], &e[l]) != want
    });
    cert.check("E_j E_l = delta_jl E_j", bad.is_none(), || {
        format!("(j,l) = {:?}", bad.unwrap())
    });

    let sum = e.iter().fold(zero.clone(), |acc, ej| {
        acc.iter().zip(ej).map(|(a, b)| a.clone() + b.clone()).collect()
    });
    cert.check("sum E_j = I", sum == unit(0), || {
        "sum of idempotents differs from I".into()
    });

    let bad = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).find(|&(i, j)| {
        let lhs = scheme.coord_mul(&unit(i), &e[j]);
        let rhs: Vec<Surd> = e[j].iter().map(|c| c.clone() * sp.p[(j, i)].clone()).collect();
        lhs != rhs
    });
    cert.check("A_i E_j = P_ji E_j", bad.is_none(), || {
        format!("(i,j) = {:?}", bad.unwrap())
    });

    let bad = (0..6).find(|&j| scheme.coord_trace_product(&unit(0), &e[j]) != int(sp.multiplicities[j] as i64));
    cert.check("trace E_j = m_j", bad.is_none(), || format!("j = {}", bad.unwrap()));

    if scheme.order() <= EXPLICIT_IDEMPOTENT_LIMIT {
        let d = sp.radicand.to_i128().unwrap_or(0);
        let squares: Vec<Option<bool>> = (0..6)
            .map(|j| {
                let (l, coeffs) = scaled_idempotent(&sp, j)?;
                is_scaled_idempotent(scheme, &coeffs, l.checked_mul(order as i128)?, d)
            })
            .collect();
        let bad = squares.iter().position(|r| *r != Some(true));
        cert.check("E_j^2 = E_j (explicit matrices)", bad.is_none(), || {
            let j = bad.unwrap();
            match squares[j] {
                None => format!("j = {j}: entries exceed 128-bit range"),
                _ => format!("j = {j}"),
            }
        });
    }
    Ok((sp, cert))
}
