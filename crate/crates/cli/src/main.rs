use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sgdd::designs::{check_bose, verify_gdd, GddParams, IncidenceMatrix};
use sgdd::hadamard::{hadamard, normalize, paley_conference};
use sgdd::io;
use sgdd::latin::{
    is_orthogonal, linked_from_bases_extended, linked_mols_from_gf2n, mols_from_gf, search_linked_mols, verify_linked,
    SearchOutcome,
};
use sgdd::linked::{
    bgw_generate, build_from_mub_bush, build_tilde_l, build_twin, bush_search, conference_to_gdd, gcm_to_gdd,
    sigma_tau_rho, signed_permutation_weighing, verify_gcm, verify_linked_system, BushOutcome,
};
use sgdd::resolvable::{aux_from_affine_geometry, aux_from_hadamard, verify_auxiliary};
use sgdd::scanner::{scan_table1, scan_table2, to_csv, to_text, RowKind};
use sgdd::schemes::{
    assemble_scheme, certify_scheme, check_fusion, compute_krein, compute_spectra, extract_linked_system,
    AssociationScheme,
};
use sgdd::{Certificate, Error, GfContext, IntMatrix};

macro_rules! note {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stderr(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "sgdd",
    version,
    about = "Symmetric group divisible designs, linked systems and their schemes"
)]
struct Cli {
    /// Worker threads for parallel verification and scans (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Build an object; it is certified before anything is written.
    #[command(subcommand)]
    Construct(Construct),
    /// Certify an object read from a file.
    #[command(subcommand)]
    Verify(Verify),
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// Enumerate feasible parameter sets.
    #[command(subcommand)]
    Scan(Scan),
    /// Bounded exhaustive searches.
    #[command(subcommand)]
    Oracle(Oracle),
}

#[derive(Args)]
struct Out {
    /// Output file (default: standard output).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Auxiliary matrices from the rows of a normalized Hadamard matrix.
    HadamardAux {
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Auxiliary matrices from the hyperplane parallel classes of AG(dim, q).
    AgAux {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
        dim: u32,
        #[command(flatten)]
        out: Out,
    },
    /// The q − 1 MOLS `L_a(x, y) = ax + y` over GF(q).
    Mols {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    /// A linked MOLS family over GF(q).
    LinkedMols {
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value_t = LinkedMethod::Gf2n)]
        method: LinkedMethod,
        #[command(flatten)]
        out: Out,
    },
    /// The linked system `A_{i,j} = L̃_{i,j}`.
    TildeL {
        #[arg(long)]
        aux: PathBuf,
        #[arg(long)]
        mols: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// GDD from a conference matrix (Paley of order q + 1, or read from a file).
    ConferenceGdd {
        #[arg(long, conflicts_with = "conference", required_unless_present = "conference")]
        q: Option<u64>,
        #[arg(long)]
        conference: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// GDD from a generalized conference matrix.
    GcmGdd {
        #[arg(long)]
        gcm: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// BGW(q + 1, q, q − 1) over the cyclic group of order q − 1.
    Bgw {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Twin designs from a Hadamard matrix of order n and weighing matrices.
    Twin {
        #[arg(long)]
        n: usize,
        /// Matrix list of n − 1 weighing matrices (default: signed permutations of order n).
        #[arg(long)]
        weighing: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Linked system from mutually unbiased Bush-type Hadamard matrices.
    MubSystem {
        /// Matrix list of Bush-type Hadamard matrices.
        #[arg(long)]
        bush: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LinkedMethod {
    /// `f = q − 1` from all MOLS over GF(2^n).
    Gf2n,
    /// `f = q` by adjoining an index to the q − 1 MOLS over GF(q).
    Extend,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatinKind {
    Square,
    Squares,
    Family,
}

#[derive(Subcommand)]
enum Verify {
    /// A symmetric GDD incidence matrix against `v k m n lambda1 lambda2`.
    Gdd {
        file: PathBuf,
        #[arg(long)]
        params: String,
    },
    Aux {
        file: PathBuf,
    },
    Latin {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LatinKind::Family)]
        kind: LatinKind,
    },
    LinkedSystem {
        file: PathBuf,
    },
    Scheme {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum SchemeCmd {
    /// The 5-class scheme of a linked system.
    Assemble {
        system: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Eigenmatrices, Krein parameters and the fusion check.
    Analyze {
        scheme: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Recover the linked system a scheme was assembled from.
    Extract {
        scheme: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Merge to `{A0, A1+A2, A3+A5, A4}` and compare with the predicted outcome.
    Fusion {
        scheme: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    vmax: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(flatten)]
    out: Out,
}

#[derive(Subcommand)]
enum Scan {
    /// Symmetric designs with linked systems of type II.
    Table1(ScanArgs),
    /// Proper SGDDs whose `A + K` is also proper.
    Table2(ScanArgs),
}

#[derive(Subcommand)]
enum Oracle {
    /// Search for a linked MOLS family.
    LinkedMols {
        #[arg(long)]
        order: usize,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        zero_diagonal: bool,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Search for mutually unbiased Bush-type Hadamard matrices of order 4n².
    Bush {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        f: usize,
        #[arg(long, default_value_t = 100_000_000)]
        budget: u64,
        #[command(flatten)]
        out: Out,
    },
}

enum Failure {
    Violation(String),
    Usage(String),
}

type Outcome = Result<(), Failure>;

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. }
            | Error::Io(_)
            | Error::InvalidParameters(_)
            | Error::NotPrime(_)
            | Error::NotPrimePower(_) => Failure::Usage(e.to_string()),
            _ => Failure::Violation(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(out: &Out, text: &str) -> Outcome {
    match &out.output {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

/// Writes `text` only if `cert` holds.
fn emit_certified(out: &Out, cert: &Certificate, text: &str) -> Outcome {
    if !cert.holds() {
        return Err(Failure::Violation(cert.to_string()));
    }
    note!("{cert}");
    emit(out, text)
}

fn report(cert: Certificate) -> Outcome {
    if cert.holds() {
        let _ = writeln!(std::io::stdout(), "{cert}");
        Ok(())
    } else {
        Err(Failure::Violation(cert.to_string()))
    }
}

fn field(q: u64) -> Result<GfContext, Failure> {
    GfContext::with_order(q).map_err(|e| Failure::Usage(format!("--q: {e}")))
}

fn parse_params(s: &str) -> Result<GddParams, Failure> {
    let nums: Vec<u64> = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Usage(format!("--params: {e}")))?;
    let [v, k, m, n, l1, l2] = nums[..] else {
        return Err(Failure::Usage(format!(
            "--params: expected \"v k m n lambda1 lambda2\", got {s:?}"
        )));
    };
    GddParams::new(v, k, m, n, l1, l2).map_err(|e| Failure::Usage(format!("--params: {e}")))
}

fn gdd_certificate(a: &IncidenceMatrix, p: &GddParams) -> Certificate {
    let mut cert = verify_gdd(a, p);
    if p.lambda1 != p.lambda2 && cert.holds() {
        match check_bose(a, p) {
            Ok(ok) => cert.check("A K A^T = (n(l1-l2)+k-l1) K + n l2 J", ok, || {
                "Bose identity fails".into()
            }),
            Err(e) => cert.fail("Bose identity", e.to_string()),
        }
    }
    cert
}

fn load_scheme(path: &Path) -> Result<AssociationScheme, Failure> {
    let classes = io::read_scheme(&read(path)?)?;
    let (scheme, cert) = certify_scheme(classes);
    scheme.ok_or_else(|| Failure::Violation(cert.to_string()))
}

fn construct(c: Construct) -> Outcome {
    match c {
        Construct::HadamardAux { order, out } => {
            let aux = aux_from_hadamard(&normalize(&hadamard(order)?))?;
            emit_certified(&out, &verify_auxiliary(&aux), &io::write_aux(&aux))
        }
        Construct::AgAux { q, dim, out } => {
            let aux = aux_from_affine_geometry(q, dim - 1)?;
            emit_certified(&out, &verify_auxiliary(&aux), &io::write_aux(&aux))
        }
        Construct::Mols { q, out } => {
            let squares = mols_from_gf(&field(q)?);
            emit_certified(&out, &mols_certificate(&squares), &io::write_squares(&squares))
        }
        Construct::LinkedMols { q, method, out } => {
            let ctx = field(q)?;
            let fam = match method {
                LinkedMethod::Gf2n => linked_mols_from_gf2n(&ctx)?,
                LinkedMethod::Extend => linked_from_bases_extended(&mols_from_gf(&ctx))?,
            };
            emit_certified(&out, &verify_linked(&fam), &io::write_family(&fam))
        }
        Construct::TildeL { aux, mols, out } => {
            let aux = io::read_aux(&read(&aux)?)?;
            let fam = io::read_family(&read(&mols)?)?;
            let sys = build_tilde_l(&aux, &fam)?;
            note!("{}", sys.params());
            emit_certified(&out, &verify_linked_system(&sys), &io::write_linked_system(&sys))
        }
        Construct::ConferenceGdd { q, conference, out } => {
            let c = match (q, conference) {
                (Some(q), _) => paley_conference(q)?,
                (None, Some(p)) => io::read_matrix(&read(&p)?)?,
                (None, None) => return Err(Failure::Usage("--q or --conference is required".into())),
            };
            let (a, p) = conference_to_gdd(&c)?;
            note!("{p}");
            emit_certified(&out, &gdd_certificate(&a, &p), &io::write_matrix(a.matrix()))
        }
        Construct::GcmGdd { gcm, out } => {
            let c = io::read_gcm(&read(&gcm)?)?;
            let cert = verify_gcm(&c);
            if !cert.holds() {
                return Err(Failure::Violation(cert.to_string()));
            }
            let (a, p) = gcm_to_gdd(&c)?;
            note!("{p}");
            let mut cert = gdd_certificate(&a, &p);
            if let Ok(t) = sigma_tau_rho(p.k, p.m, p.n) {
                note!(
                    "sigma = {} or {}, tau = {} or {}, rho = {}",
                    t.plus.sigma,
                    t.minus.sigma,
                    t.plus.tau,
                    t.minus.tau,
                    t.plus.rho
                );
            }
            cert.subject = format!("GDD {p} from a generalized conference matrix");
            emit_certified(&out, &cert, &io::write_matrix(a.matrix()))
        }
        Construct::Bgw { q, out } => {
            let c = bgw_generate(q)?;
            emit_certified(&out, &verify_gcm(&c), &io::write_gcm(&c))
        }
        Construct::Twin { n, weighing, out } => {
            let h = normalize(&hadamard(n)?);
            let ws = match weighing {
                Some(p) => io::read_matrices(&read(&p)?)?,
                None => signed_permutation_weighing(n),
            };
            let tw = build_twin(&h, &ws)?;
            note!("{}", tw.params);
            let mut cert = Certificate::new(format!("twin pair {}", tw.params));
            cert.absorb("A+: ", gdd_certificate(&tw.plus, &tw.params));
            cert.absorb("A-: ", gdd_certificate(&tw.minus, &tw.params));
            let k = tw.params.group_indicator();
            let sum = &(tw.plus.matrix() + tw.minus.matrix()) + &k;
            let order = tw.plus.order();
            cert.check_matrix_eq("A+ + A- + K = J", &sum, &IntMatrix::ones(order));
            emit_certified(
                &out,
                &cert,
                &io::write_matrices(&[tw.plus.matrix().clone(), tw.minus.matrix().clone()]),
            )
        }
        Construct::MubSystem { bush, out } => {
            let hs = io::read_matrices(&read(&bush)?)?;
            let sys = build_from_mub_bush(&hs)?;
            note!("{}", sys.params());
            emit_certified(&out, &verify_linked_system(&sys), &io::write_linked_system(&sys))
        }
    }
}

fn mols_certificate(squares: &[sgdd::latin::LatinSquare]) -> Certificate {
    let mut cert = Certificate::new(format!(
        "{} MOLS of order {}",
        squares.len(),
        squares.first().map_or(0, |l| l.order())
    ));
    for (i, a) in squares.iter().enumerate() {
        for (j, b) in squares.iter().enumerate().skip(i + 1) {
            let ok = is_orthogonal(a, b);
            cert.check(
                format!("L{i} and L{j} orthogonal"),
                matches!(ok, Ok(true)),
                || match ok {
                    Err(e) => e.to_string(),
                    _ => "some row pair does not superimpose to exactly one fixed symbol".into(),
                },
            );
        }
    }
    cert
}

fn verify(v: Verify) -> Outcome {
    match v {
        Verify::Gdd { file, params } => {
            let p = parse_params(&params)?;
            let mat = io::read_matrix(&read(&file)?)?;
            let a =
                IncidenceMatrix::new(mat, p.m as usize, p.n as usize).map_err(|e| Failure::Violation(e.to_string()))?;
            report(gdd_certificate(&a, &p))
        }
        Verify::Aux { file } => report(verify_auxiliary(&io::read_aux(&read(&file)?)?)),
        Verify::Latin { file, kind } => {
            let text = read(&file)?;
            match kind {
                LatinKind::Square => {
                    let l = io::read_latin(&text)?;
                    let mut cert = Certificate::new(format!("Latin square of order {}", l.order()));
                    cert.pass("every symbol once per row and column");
                    report(cert)
                }
                LatinKind::Squares => report(mols_certificate(&io::read_squares(&text)?)),
                LatinKind::Family => report(verify_linked(&io::read_family(&text)?)),
            }
        }
        Verify::LinkedSystem { file } => {
            let sys = io::read_linked_system(&read(&file)?)?;
            report(verify_linked_system(&sys))
        }
        Verify::Scheme { file } => {
            let (_, cert) = certify_scheme(io::read_scheme(&read(&file)?)?);
            report(cert)
        }
    }
}

fn scheme(s: SchemeCmd) -> Outcome {
    match s {
        SchemeCmd::Assemble { system, out } => {
            let sys = io::read_linked_system(&read(&system)?)?;
            let cert = verify_linked_system(&sys);
            if !cert.holds() {
                return Err(Failure::Violation(cert.to_string()));
            }
            let scheme = assemble_scheme(&sys)?;
            note!("{} vertices, valencies {:?}", scheme.order(), scheme.valencies());
            emit(&out, &io::write_scheme(&scheme))
        }
        SchemeCmd::Extract { scheme, out } => {
            let s = load_scheme(&scheme)?;
            let ex = extract_linked_system(&s)?;
            let it = ex.primary();
            note!("classes {:?} -> A0..A5; {}", it.labels, it.system.params());
            emit(&out, &io::write_linked_system(&it.system))
        }
        SchemeCmd::Analyze { scheme, out } => {
            let (text, cert) = analyze(&load_scheme(&scheme)?)?;
            emit(&out, &text)?;
            if cert.holds() {
                Ok(())
            } else {
                Err(Failure::Violation(cert.to_string()))
            }
        }
        SchemeCmd::Fusion { scheme, out } => {
            let s = load_scheme(&scheme)?;
            let ex = extract_linked_system(&s)?;
            let it = ex.primary();
            let s = s.relabel_classes(&it.labels);
            let (sp, _) = compute_spectra(&s, it.params)?;
            let rep = check_fusion(&s, &sp);
            let mut text = format!("predicted fusable: {}\nfusable: {}\n", rep.predicted, rep.fusable());
            if let Some(part) = &rep.idempotent_partition {
                text.push_str(&format!("idempotent partition: {part:?}\n"));
            }
            if let Some(f) = &rep.fused {
                text.push_str(&format!("fused valencies: {:?}\n", f.valencies()));
            }
            text.push_str(&format!("{}\n", rep.certificate));
            emit(&out, &text)?;
            let agrees = rep.fusable() == rep.predicted && (!rep.fusable() || rep.certificate.holds());
            if agrees {
                Ok(())
            } else {
                Err(Failure::Violation(
                    "fusion outcome contradicts k = (m-1)n(n-1)/(n+m-2) prediction".to_string(),
                ))
            }
        }
    }
}

fn analyze(s: &AssociationScheme) -> Result<(String, Certificate), Failure> {
    let ex = extract_linked_system(s)?;
    let it = ex.primary();
    let s = s.relabel_classes(&it.labels);
    let (sp, mut cert) = compute_spectra(&s, it.params)?;
    let (krein, kcert) = compute_krein(&s, &sp);
    cert.absorb("krein: ", kcert);
    let mut text = format!(
        "{} vertices, classes {:?} -> A0..A5\n{}\n",
        s.order(),
        it.labels,
        it.system.params()
    );
    text.push_str(&format!(
        "valencies: {:?}\nmultiplicities: {:?}\n",
        s.valencies(),
        sp.multiplicities
    ));
    text.push_str(&format!("P =\n{}Q =\n{}", sp.p, sp.q));
    for i in 0..6 {
        text.push_str(&format!("B{i}* =\n{}", krein.matrix(i)));
    }
    text.push_str(&format!("negative Krein parameters: {:?}\n", krein.negative()));
    text.push_str(&format!("{cert}\n"));
    Ok((text, cert))
}

fn scan(s: Scan) -> Outcome {
    let (args, kind, rows) = match s {
        Scan::Table1(a) => {
            let rows = scan_table1(a.vmax);
            (a, RowKind::SymmetricDesign, rows)
        }
        Scan::Table2(a) => {
            let rows = scan_table2(a.vmax);
            (a, RowKind::ProperProper, rows)
        }
    };
    let text = match args.format {
        Format::Csv => to_csv(kind, &rows),
        Format::Text => to_text(kind, &rows),
    };
    emit(&args.out, &text)
}

fn oracle(o: Oracle) -> Outcome {
    match o {
        Oracle::LinkedMols {
            order,
            f,
            zero_diagonal,
            budget,
            out,
        } => match search_linked_mols(order, f, zero_diagonal, budget)? {
            SearchOutcome::Found(fam) => emit_certified(&out, &verify_linked(&fam), &io::write_family(&fam)),
            SearchOutcome::Exhausted { nodes } => Err(Failure::Violation(format!(
                "no linked MOLS of order {order} on {f} indices{}: search space exhausted after {nodes} nodes",
                if zero_diagonal { " with zero diagonals" } else { "" }
            ))),
        },
        Oracle::Bush { n, f, budget, out } => match bush_search(n, f, budget)? {
            BushOutcome::Found(hs) => {
                let sys = build_from_mub_bush(&hs)?;
                emit_certified(&out, &verify_linked_system(&sys), &io::write_matrices(&hs))
            }
            BushOutcome::Exhausted { nodes } => Err(Failure::Violation(format!(
                "no {f} mutually unbiased Bush-type matrices of order {}: search space exhausted after {nodes} nodes",
                4 * n * n
            ))),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            note!("--jobs: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.verb {
        Verb::Construct(c) => construct(c),
        Verb::Verify(v) => verify(v),
        Verb::Scheme(s) => scheme(s),
        Verb::Scan(s) => scan(s),
        Verb::Oracle(o) => oracle(o),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            note!("violation: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            note!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
