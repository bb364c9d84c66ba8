//! Acceptance criteria. Each prints one `PASS`/`FAIL` line; the test fails
//! if any criterion does.

use std::process::Command;
use std::time::{Duration, Instant};

use sgdd::designs::{
    check_bose, check_k_commutation, lambda_formulas, partial_complement, verify_gdd, GddParams, IncidenceMatrix,
    KCommutation,
};
use sgdd::hadamard::{hadamard, is_bush_type, is_hadamard, normalize, paley_conference};
use sgdd::latin::{linked_mols_from_gf2n, search_linked_mols, verify_linked, SearchOutcome};
use sgdd::linked::{
    bgw_generate, build_from_mub_bush, build_tilde_l, build_twin, bush_search, conference_to_gdd, gcm_to_gdd,
    lemma_identities, sigma_tau_rho, signed_permutation_weighing, verify_gcm, verify_linked_system, BushOutcome,
    LinkedParams, LinkedSystemII, Triple,
};
use sgdd::resolvable::{aux_from_affine_geometry, aux_from_hadamard, verify_auxiliary};
use sgdd::scanner::{scan_table1, scan_table2, to_csv, RowKind};
use sgdd::schemes::{
    assemble_scheme, certify_scheme, check_fusion, compute_krein, compute_spectra, extract_linked_system,
    AssociationScheme, SchemeParams,
};
use sgdd::{Certificate, GfContext, IntMatrix, Rational, Surd};

const TABLE_LIMIT: Duration = Duration::from_secs(1);
const SYSTEM16_LIMIT: Duration = Duration::from_secs(5);
const SEARCH_LIMIT: Duration = Duration::from_secs(600);
const SEARCH_BUDGET: u64 = 1_000_000_000;

const TABLE1_GOLDEN: &str = include_str!("data/table1.csv");
const TABLE2_GOLDEN: &str = include_str!("data/table2.csv");

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn certified(cert: Certificate) -> Result<(), String> {
    ensure(cert.holds(), || cert.to_string())
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("took {e:?}, limit {limit:?}"))?;
    Ok(e)
}

fn diff(found: &str, expected: &str) -> String {
    let f: Vec<&str> = found.lines().collect();
    let e: Vec<&str> = expected.lines().collect();
    let mut out = format!("{} rows emitted, {} expected", f.len(), e.len());
    for l in f.iter().filter(|l| !e.contains(l)) {
        out.push_str(&format!("\n  + {l}"));
    }
    for l in e.iter().filter(|l| !f.contains(l)) {
        out.push_str(&format!("\n  - {l}"));
    }
    out
}

fn gdd(v: u64, k: u64, m: u64, n: u64, l1: u64, l2: u64) -> GddParams {
    GddParams::new(v, k, m, n, l1, l2).unwrap()
}

fn system16() -> Result<LinkedSystemII, String> {
    let aux = aux_from_hadamard(&normalize(&hadamard(4).map_err(|e| e.to_string())?)).map_err(|e| e.to_string())?;
    certified(verify_auxiliary(&aux))?;
    let fam = linked_mols_from_gf2n(&GfContext::with_order(4).unwrap()).map_err(|e| e.to_string())?;
    ensure(fam.f() == 3 && fam.has_zero_diagonals(), || {
        format!("family has f = {}", fam.f())
    })?;
    certified(verify_linked(&fam))?;
    build_tilde_l(&aux, &fam).map_err(|e| e.to_string())
}

fn system45() -> Result<LinkedSystemII, String> {
    let aux = aux_from_affine_geometry(3, 1).map_err(|e| e.to_string())?;
    certified(verify_auxiliary(&aux))?;
    match search_linked_mols(5, 3, true, SEARCH_BUDGET).map_err(|e| e.to_string())? {
        SearchOutcome::Found(fam) => {
            certified(verify_linked(&fam))?;
            build_tilde_l(&aux, &fam).map_err(|e| e.to_string())
        }
        SearchOutcome::Exhausted { nodes } => Err(format!(
            "no order-5 linked MOLS with zero diagonals; search exhausted after {nodes} nodes"
        )),
    }
}

fn mub_system() -> Result<LinkedSystemII, String> {
    match bush_search(2, 2, SEARCH_BUDGET).map_err(|e| e.to_string())? {
        BushOutcome::Found(hs) => {
            ensure(hs.len() == 2, || format!("{} matrices returned", hs.len()))?;
            for h in &hs {
                ensure(is_hadamard(h) && is_bush_type(h, 4), || {
                    "search returned a non-Bush matrix".into()
                })?;
            }
            build_from_mub_bush(&hs).map_err(|e| e.to_string())
        }
        BushOutcome::Exhausted { nodes } => Err(format!("bush search exhausted after {nodes} nodes")),
    }
}

/// Certifies the scheme of `sys` with spectra and Krein parameters.
fn certify_assembled(
    sys: &LinkedSystemII,
) -> Result<(AssociationScheme, sgdd::schemes::Spectra, sgdd::schemes::KreinTensor), String> {
    let scheme = assemble_scheme(sys).map_err(|e| e.to_string())?;
    let (again, cert) = certify_scheme(scheme.classes().to_vec());
    certified(cert)?;
    ensure(again.is_some(), || "scheme rejected".into())?;
    let b = sys.params().base;
    let t = sys.params().triple.ok_or("pair has no scheme")?;
    let params = SchemeParams::new(b.k, b.m, b.n, sys.f() as u64)
        .map_err(|e| e.to_string())?
        .with_sigma_below_tau(t.sigma < t.tau);
    let (sp, cert) = compute_spectra(&scheme, params).map_err(|e| e.to_string())?;
    certified(cert)?;
    let (krein, cert) = compute_krein(&scheme, &sp);
    certified(cert)?;
    Ok((scheme, sp, krein))
}

fn criterion_table(kind: RowKind) -> Verdict {
    let (golden, vmax) = match kind {
        RowKind::SymmetricDesign => (TABLE1_GOLDEN, 1000),
        RowKind::ProperProper => (TABLE2_GOLDEN, 500),
    };
    let t = Instant::now();
    let rows = match kind {
        RowKind::SymmetricDesign => scan_table1(vmax),
        RowKind::ProperProper => scan_table2(vmax),
    };
    let csv = to_csv(kind, &rows);
    let e = within(t, TABLE_LIMIT)?;
    ensure(csv == golden, || diff(&csv, golden))?;
    let sub = if kind == RowKind::SymmetricDesign {
        "table1"
    } else {
        "table2"
    };
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_sgdd"))
        .args(["scan", sub, "--vmax", &vmax.to_string()])
        .output()
        .map_err(|e| e.to_string())?;
    let cli = within(t, TABLE_LIMIT)?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(text == golden, || format!("CLI output: {}", diff(&text, golden)))?;
    Ok(format!(
        "{} rows byte-identical; library {e:?}, CLI {cli:?}",
        rows.len()
    ))
}

fn criterion3() -> Verdict {
    let t = Instant::now();
    let sys = system16()?;
    let want = LinkedParams::new(
        gdd(16, 6, 4, 4, 2, 2),
        3,
        Some(Triple {
            sigma: 3,
            tau: 1,
            rho: 3,
        }),
    )
    .unwrap();
    ensure(*sys.params() == want, || format!("parameters {}", sys.params()))?;
    certified(verify_linked_system(&sys))?;
    let row = scan_table1(16)
        .into_iter()
        .next()
        .ok_or("table 1 has no row at v = 16")?;
    ensure(row.params == want.base && Some(row.triple) == want.triple, || {
        format!("first row {:?}", row.params)
    })?;
    let (scheme, sp, krein) = certify_assembled(&sys)?;
    ensure(scheme.order() == 48, || format!("{} vertices", scheme.order()))?;
    let row0: Vec<Surd> = (0..6).map(|i| sp.p[(0, i)].clone()).collect();
    let want_row0: Vec<Surd> = [1, 3, 12, 12, 12, 8].map(Surd::from).to_vec();
    ensure(row0 == want_row0, || format!("P row 0 = {row0:?}"))?;
    let pq = &sp.p * &sp.q;
    let scaled = sgdd::Matrix::<Surd>::identity(6).scale(&Surd::from(48i64));
    ensure(pq == scaled, || format!("P Q =\n{pq}"))?;
    ensure(krein.negative().is_empty(), || {
        format!("negative Krein parameters {:?}", krein.negative())
    })?;
    let q211 = krein.get(2, 1, 1).clone();
    let third = Surd::rational(Rational::new(1.into(), 3.into()));
    ensure(q211 == third, || format!("q_2,1^1 = {q211}"))?;
    let fusion = check_fusion(&scheme, &sp);
    ensure(fusion.predicted && fusion.fusable(), || fusion.certificate.to_string())?;
    certified(fusion.certificate.clone())?;
    let e = within(t, SYSTEM16_LIMIT)?;
    Ok(format!(
        "{want}; 48 vertices; P Q = 48 I; Krein >= 0; q_2,1^1 = 1/3; fusion certified; {e:?}"
    ))
}

fn criterion4() -> Verdict {
    let t = Instant::now();
    let sys = system45()?;
    let want = LinkedParams::new(
        gdd(45, 12, 5, 9, 3, 3),
        3,
        Some(Triple {
            sigma: 5,
            tau: 2,
            rho: 4,
        }),
    )
    .unwrap();
    ensure(*sys.params() == want, || format!("parameters {}", sys.params()))?;
    certified(verify_linked_system(&sys))?;
    let row = scan_table1(45)
        .into_iter()
        .nth(1)
        .ok_or("table 1 has no second row at v <= 45")?;
    ensure(row.params == want.base && Some(row.triple) == want.triple, || {
        format!("second row {:?}", row.params)
    })?;
    let (scheme, _, _) = certify_assembled(&sys)?;
    ensure(scheme.order() == 135, || format!("{} vertices", scheme.order()))?;
    let e = within(t, SEARCH_LIMIT)?;
    Ok(format!("{want}; certified 135-vertex scheme; {e:?}"))
}

fn criterion5() -> Verdict {
    let c = paley_conference(5).map_err(|e| e.to_string())?;
    let (a, p) = conference_to_gdd(&c).map_err(|e| e.to_string())?;
    ensure(p == gdd(12, 5, 6, 2, 0, 2), || format!("parameters {p}"))?;
    certified(verify_gdd(&a, &p))?;
    let k = p.group_indicator();
    let target = &IntMatrix::ones(12) - &k;
    ensure(a.matrix() * &k == target && &k * a.matrix() == target, || {
        "AK or KA differs from J - K".into()
    })?;
    ensure(
        check_k_commutation(&a) == KCommutation::MultipleOfJMinusK(1.into()),
        || "K commutation misclassified".into(),
    )?;
    Ok(format!("{p} certified; AK = KA = J - K"))
}

fn criterion6() -> Verdict {
    let c = bgw_generate(5).map_err(|e| e.to_string())?;
    certified(verify_gcm(&c))?;
    let g = c.group().order();
    ensure(c.size() == 6 && g == 4 && c.lambda() == Some(1), || {
        format!("size {}, group order {g}", c.size())
    })?;
    let (a, p) = gcm_to_gdd(&c).map_err(|e| e.to_string())?;
    ensure(p == gdd(24, 5, 6, 4, 0, 1), || format!("parameters {p}"))?;
    certified(verify_gdd(&a, &p))?;
    let t = sigma_tau_rho(p.k, p.m, p.n).map_err(|e| e.to_string())?;
    let five_quarters = Rational::new(5.into(), 4.into());
    ensure(
        t.plus.rho == five_quarters && !t.plus.is_integral() && !t.minus.is_integral(),
        || format!("candidates {} / {}", t.plus, t.minus),
    )?;
    ensure(t.admissible().is_empty(), || "an integral triple was admitted".into())?;
    Ok(format!(
        "BGW(6,5,4) over C4; {p} certified; rho = 5/4 flagged non-integral"
    ))
}

fn twin() -> Result<(sgdd::linked::TwinPair, GddParams), String> {
    let h = normalize(&hadamard(4).map_err(|e| e.to_string())?);
    let tw = build_twin(&h, &signed_permutation_weighing(4)).map_err(|e| e.to_string())?;
    let p = tw.params;
    Ok((tw, p))
}

fn criterion7() -> Verdict {
    let (tw, p) = twin()?;
    ensure(p == gdd(16, 6, 4, 4, 2, 2), || format!("parameters {p}"))?;
    certified(verify_gdd(&tw.plus, &p))?;
    certified(verify_gdd(&tw.minus, &p))?;
    let sum = &(tw.plus.matrix() + tw.minus.matrix()) + &p.group_indicator();
    ensure(sum == IntMatrix::ones(16), || "A+ + A- + K != J".into())?;
    ensure(tw.plus != tw.minus, || "the twins coincide".into())?;
    Ok(format!("twin pair {p} certified; A+ + A- + K = J"))
}

fn criterion8() -> Verdict {
    let sys = system16()?;
    for (&(i, j), a) in sys.blocks() {
        let h = &IntMatrix::ones(16) - &a.matrix().scale(&2.into());
        ensure(is_hadamard(&h) && is_bush_type(&h, 4), || {
            format!("J - 2A_{i},{j} is not Bush-type")
        })?;
    }
    let t = Instant::now();
    let mub = mub_system()?;
    let e = within(t, SEARCH_LIMIT)?;
    certified(verify_linked_system(&mub))?;
    ensure(mub.params() == sys.params(), || {
        format!("MUB system {} vs {}", mub.params(), sys.params())
    })?;
    Ok(format!(
        "{} blocks Bush-type; MUB system {} re-certified; search {e:?}",
        sys.blocks().len(),
        mub.params()
    ))
}

fn lambdas_match(p: &GddParams) -> Result<(), String> {
    let (l1, l2) = lambda_formulas(p.k, p.m, p.n).map_err(|e| e.to_string())?;
    let int = |x: u64| Rational::from_integer(x.into());
    ensure(l1 == int(p.lambda1) && l2 == int(p.lambda2), || {
        format!("formulas give ({l1}, {l2}) for {p}")
    })
}

fn counting(p: &GddParams) -> Result<(), String> {
    let (v, k, n, l1, l2) = (
        p.v as u128,
        p.k as u128,
        p.n as u128,
        p.lambda1 as u128,
        p.lambda2 as u128,
    );
    ensure(k * k == k + l1 * (n - 1) + l2 * (v - n), || {
        format!("k^2 != k + l1(n-1) + l2(v-n) for {p}")
    })
}

fn design_properties(a: &IncidenceMatrix, p: &GddParams) -> Result<(), String> {
    counting(p)?;
    if p.lambda1 != p.lambda2 {
        ensure(check_bose(a, p).map_err(|e| e.to_string())?, || {
            format!("Bose identity fails for {p}")
        })?;
    }
    if a.diagonal_blocks_zero() {
        if let Ok((c, pc)) = partial_complement(a, p) {
            let (back, pb) = partial_complement(&c, &pc).map_err(|e| e.to_string())?;
            ensure(back == *a && pb == *p, || {
                format!("partial complement of {p} is not an involution")
            })?;
        }
    }
    Ok(())
}

fn system_properties(sys: &LinkedSystemII) -> Result<(), String> {
    let p = sys.params();
    let t = p.triple.ok_or("pair")?;
    certified(lemma_identities(&p.base, &t))?;
    lambdas_match(&p.base)?;
    let cands = sigma_tau_rho(p.base.k, p.base.m, p.base.n).map_err(|e| e.to_string())?;
    let formula = [&cands.plus, &cands.minus]
        .into_iter()
        .chain(cands.selected.as_ref())
        .any(|c| c.as_triple() == Some(t));
    ensure(formula, || format!("{t} is not a closed-form candidate"))?;
    for a in sys.blocks().values() {
        design_properties(a, &p.base)?;
    }
    let scheme = assemble_scheme(sys).map_err(|e| e.to_string())?;
    let ex = extract_linked_system(&scheme).map_err(|e| e.to_string())?;
    let back = ex
        .certified()
        .find(|it| it.system.params() == p && it.system.blocks() == sys.blocks())
        .ok_or("extract(assemble(system)) does not recover the system")?;
    ensure(back.permutation.iter().enumerate().all(|(i, &x)| i == x), || {
        "round trip moved points".into()
    })?;
    Ok(())
}

fn criterion9() -> Verdict {
    let mut count = 0;
    for sys in [system16()?, system45()?, mub_system()?] {
        system_properties(&sys).map_err(|e| format!("{}: {e}", sys.params()))?;
        count += 1;
    }
    let (a, p) = conference_to_gdd(&paley_conference(5).unwrap()).map_err(|e| e.to_string())?;
    design_properties(&a, &p)?;
    let (a, p) = gcm_to_gdd(&bgw_generate(5).unwrap()).map_err(|e| e.to_string())?;
    design_properties(&a, &p)?;
    let (tw, p) = twin()?;
    design_properties(&tw.plus, &p)?;
    design_properties(&tw.minus, &p)?;
    count += 4;
    for row in scan_table1(1000).iter().chain(&scan_table2(500)) {
        certified(lemma_identities(&row.params, &row.triple))?;
        counting(&row.params)?;
        lambdas_match(&row.params)?;
        count += 1;
    }
    Ok(format!(
        "{count} certified objects and scanned rows satisfy every invariant"
    ))
}

fn cli_pipeline() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    let run = |args: &[&str]| -> Result<i32, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_sgdd"))
            .current_dir(d)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        Ok(out.status.code().unwrap_or(-1))
    };
    let steps: [(&[&str], i32); 9] = [
        (&["construct", "hadamard-aux", "--order", "4", "-o", "had4.aux"], 0),
        (&["construct", "linked-mols", "--q", "4", "-o", "gf4.fam"], 0),
        (
            &[
                "construct",
                "tilde-l",
                "--aux",
                "had4.aux",
                "--mols",
                "gf4.fam",
                "-o",
                "sys16.lsys",
            ],
            0,
        ),
        (&["verify", "linked-system", "sys16.lsys"], 0),
        (&["scheme", "assemble", "sys16.lsys", "-o", "s48.sch"], 0),
        (&["scheme", "analyze", "s48.sch"], 0),
        (&["construct", "conference-gdd", "--q", "5", "-o", "c.mat"], 0),
        (&["verify", "gdd", "c.mat", "--params", "12 5 6 2 0 2"], 0),
        (&["verify", "gdd", "c.mat", "--params", "12 5 6"], 2),
    ];
    for (args, want) in steps {
        let got = run(args)?;
        ensure(got == want, || {
            format!("`sgdd {}` exited {got}, expected {want}", args.join(" "))
        })?;
    }
    let mat = std::fs::read_to_string(d.join("c.mat")).map_err(|e| e.to_string())?;
    let corrupted = mat.replacen("\n0 ", "\n1 ", 1);
    std::fs::write(d.join("bad.mat"), corrupted).map_err(|e| e.to_string())?;
    let got = run(&["verify", "gdd", "bad.mat", "--params", "12 5 6 2 0 2"])?;
    ensure(got == 1, || format!("corrupted matrix exited {got}"))?;
    Ok("construct -> verify -> assemble -> analyze pipeline; exit codes 0/1/2".into())
}

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("1 table 1 reproduction", || criterion_table(RowKind::SymmetricDesign)),
        ("2 table 2 reproduction", || criterion_table(RowKind::ProperProper)),
        ("3 end-to-end (16,6,2)", criterion3),
        ("4 end-to-end (45,12,3)", criterion4),
        ("5 conference path", criterion5),
        ("6 GCM path", criterion6),
        ("7 twin path", criterion7),
        ("8 Bush-type property", criterion8),
        ("9 property suites", criterion9),
        ("- CLI pipeline", cli_pipeline),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                println!("FAIL criterion {name}: {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
