use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sgdd::designs::{lambda_formulas, GddParams};
use sgdd::io::{read_matrix, write_matrix};
use sgdd::latin::{compose, mols_from_gf};
use sgdd::linked::{lemma_identities, sigma_tau_rho};
use sgdd::scanner::{scan_table1, scan_table2};
use sgdd::schemes::{assemble_scheme, extract_linked_system, AssociationScheme};
use sgdd::{GfContext, IntMatrix, Rational, Surd};

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(-9i64..10, rows * cols).prop_map(move |e| IntMatrix::from_i64(rows, cols, &e).unwrap())
}

fn surd(d: i64) -> impl Strategy<Value = Surd> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(move |(a, b, c, e)| {
        Surd::new(
            Rational::new(a.into(), b.into()),
            Rational::new(c.into(), e.into()),
            d.into(),
        )
    })
}

/// `(k, m, n)` with `λ1 < k < (m−1)n` and both lambdas integral.
fn integral_design() -> impl Strategy<Value = GddParams> {
    (3u64..12, 2u64..12, 1u64..200).prop_filter_map("non-integral lambdas", |(m, n, k)| {
        let k = k % ((m - 1) * n);
        let (l1, l2) = lambda_formulas(k, m, n).ok()?;
        if !l1.is_integer() || !l2.is_integer() || l1.is_negative() {
            return None;
        }
        let (l1, l2) = (l1.to_integer().try_into().ok()?, l2.to_integer().try_into().ok()?);
        GddParams::from_groups(k, m, n, l1, l2).ok()
    })
}

proptest! {
    #[test]
    fn matrix_transpose_of_product(a in int_matrix(3, 4), b in int_matrix(4, 2)) {
        prop_assert_eq!((&a * &b).transpose(), &b.transpose() * &a.transpose());
    }

    #[test]
    fn kronecker_mixed_product(a in int_matrix(2, 2), b in int_matrix(2, 2), c in int_matrix(2, 2), d in int_matrix(2, 2)) {
        prop_assert_eq!(&a.kron(&b) * &c.kron(&d), (&a * &c).kron(&(&b * &d)));
    }

    #[test]
    fn matrix_text_round_trip(a in int_matrix(4, 5)) {
        let s = write_matrix(&a);
        let back = read_matrix(&s).unwrap();
        prop_assert_eq!(write_matrix(&back), s);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn surd_field_laws(x in surd(7), y in surd(7), z in surd(7)) {
        prop_assert_eq!((x.clone() + y.clone()) * z.clone(), x.clone() * z.clone() + y.clone() * z.clone());
        prop_assert_eq!(x.clone() * y.clone(), y.clone() * x.clone());
        if !x.is_zero() {
            prop_assert_eq!(x.clone() / x.clone(), Surd::from(1i64));
        }
        prop_assert_eq!(x.clone().signum() * y.clone().signum(), (x * y).signum());
    }

    #[test]
    fn sqrt_squares_back(p in 0i64..500, q in 1i64..50) {
        let r = Rational::new(p.into(), q.into());
        let s = Surd::sqrt(&r).unwrap();
        prop_assert_eq!(s.clone() * s.clone(), Surd::rational(r));
        prop_assert!(s.is_nonnegative());
    }

    #[test]
    fn gf_field_laws(qi in 0usize..7, a in 0usize..9, b in 0usize..9, c in 0usize..9) {
        let q = [2u64, 3, 4, 5, 7, 8, 9][qi];
        let ctx = GfContext::with_order(q).unwrap();
        let el: Vec<_> = ctx.enumerate().collect();
        let (x, y, z) = (el[a % el.len()], el[b % el.len()], el[c % el.len()]);
        prop_assert_eq!(ctx.mul(ctx.add(x, y), z), ctx.add(ctx.mul(x, z), ctx.mul(y, z)));
        prop_assert_eq!(ctx.mul(x, ctx.mul(y, z)), ctx.mul(ctx.mul(x, y), z));
        prop_assert_eq!(ctx.sub(ctx.add(x, y), y), x);
        if x != ctx.zero() {
            prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), ctx.one());
        }
    }

    #[test]
    fn composition_transposes(qi in 0usize..4, i in 0usize..8, j in 0usize..8) {
        let q = [3u64, 4, 5, 7][qi];
        let sq = mols_from_gf(&GfContext::with_order(q).unwrap());
        let (a, b) = (&sq[i % sq.len()], &sq[j % sq.len()]);
        prop_assume!(i % sq.len() != j % sq.len());
        prop_assert_eq!(compose(b, a).unwrap(), compose(a, b).unwrap().transpose());
    }

    #[test]
    fn counting_identity_and_complement_involution(p in integral_design()) {
        let (k, v, n) = (p.k as i128, p.v as i128, p.n as i128);
        prop_assert_eq!(k * k, k + p.lambda1 as i128 * (n - 1) + p.lambda2 as i128 * (v - n));
        if let Ok(c) = p.partial_complement() {
            prop_assert_eq!(c.partial_complement().unwrap(), p);
            prop_assert_eq!(c.k, p.v - p.n - p.k);
        }
    }

    #[test]
    fn closed_form_triples_satisfy_parameter_identities(p in integral_design()) {
        let cands = sigma_tau_rho(p.k, p.m, p.n).unwrap();
        prop_assert_eq!(cands.lambda1.clone(), Rational::from_integer(p.lambda1.into()));
        for t in cands.admissible() {
            let c = lemma_identities(&p, &t);
            prop_assert!(c.holds(), "{}", c);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn extraction_survives_point_relabelling(seed in 0u64..1000) {
        let scheme = base_scheme();
        let n = scheme.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let shuffled = AssociationScheme::new(scheme.classes().iter().map(|a| a.permute_symmetric(&perm)).collect()).unwrap();
        let ex = extract_linked_system(&shuffled).unwrap();
        prop_assert_eq!(ex.primary().system.params().triple.map(|t| (t.sigma, t.tau, t.rho)), Some((3, 1, 3)));
    }
}

fn base_scheme() -> AssociationScheme {
    use sgdd::hadamard::sylvester;
    use sgdd::latin::linked_mols_from_gf2n;
    use sgdd::linked::build_tilde_l;
    use sgdd::resolvable::aux_from_hadamard;
    let aux = aux_from_hadamard(&sylvester(4).unwrap()).unwrap();
    let fam = linked_mols_from_gf2n(&GfContext::with_order(4).unwrap()).unwrap();
    assemble_scheme(&build_tilde_l(&aux, &fam).unwrap()).unwrap()
}

#[test]
fn scanned_rows_are_valid_parameters() {
    for row in scan_table1(1000).iter().chain(&scan_table2(500)) {
        let c = lemma_identities(&row.params, &row.triple);
        assert!(c.holds(), "{c}");
        assert!(row.params.lambda1 < row.params.k && row.params.k < (row.params.m - 1) * row.params.n);
        assert!(row.params.m >= 3);
    }
}

#[test]
fn table2_closed_under_partial_complement() {
    let rows = scan_table2(500);
    for r in &rows {
        let c = r.params.partial_complement().unwrap();
        assert!(rows.iter().any(|s| s.params == c), "complement of {} missing", r.params);
    }
}

#[test]
fn table1_at_sixteen() {
    assert_eq!(scan_table1(16).len(), 1);
    assert_eq!(scan_table1(15).len(), 0);
}

#[test]
fn intersection_numbers_match_matrix_products() {
    let s = base_scheme();
    for i in 0..6 {
        for j in 0..6 {
            let prod = s.class(i) * s.class(j);
            let want = (0..6).fold(IntMatrix::zeros(48, 48), |acc, k| {
                &acc + &s.class(k).scale(&BigInt::from(s.p(i, j, k)))
            });
            assert_eq!(prod, want, "A_{i} A_{j}");
        }
    }
}
