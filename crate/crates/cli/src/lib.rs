//! The `erbalg` command line.
//!
//! Exit status: 0 on success, 1 when a check finds a counterexample, 2 on
//! usage, input or truncation errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use erbalg::base::BaseAlgebraSpec;
use erbalg::delannoy::{self, GfKind};
use erbalg::document::{parse_document, serialize_element, serialize_pair, Value};
use erbalg::hopf::{HopfAlgebra, TensorPair};
use erbalg::lincomb::LinComb;
use erbalg::operators::{
    compatibility_check, falling_factorial_op, infer_weight, jackson_pair, laurent_split, verify_erb_identity,
    CompatConstants, Report, RuleOperator, TruncatedAlgebra, Vector,
};
use erbalg::scalar::{parse_rational, Rational, RingContext, ScalarPoly, KAPPA, LAMBDA};
use erbalg::shuffle::{ErbWeight, ShuffleAlgebra, TensorElement};
use erbalg::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use erbalg::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "erbalg",
    version,
    about = "Exact computation in free commutative extended Rota-Baxter algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct WeightArgs {
    /// Substitute a rational value for lambda in the output
    #[arg(long, value_name = "RATIONAL")]
    lambda: Option<String>,
    /// Substitute a rational value for kappa in the output
    #[arg(long, value_name = "RATIONAL")]
    kappa: Option<String>,
}

#[derive(Debug, Args)]
struct BaseArgs {
    /// Comma-separated generators of the base algebra (empty for A = k)
    #[arg(long, value_delimiter = ',', value_name = "NAMES")]
    generators: Vec<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multiply two elements with the quasi-shuffle product
    Product {
        /// Use the closed form for 1^(m+1) and 1^(n+1) over A = k
        #[arg(long, requires_all = ["m", "n"])]
        kk: bool,
        #[arg(short, value_name = "M")]
        m: Option<usize>,
        #[arg(short, value_name = "N")]
        n: Option<usize>,
        /// Elements such as "2*[x|1] + lambda*[y]"
        #[arg(conflicts_with = "kk", num_args = 2, value_names = ["U", "V"])]
        elements: Vec<String>,
        #[command(flatten)]
        base: BaseArgs,
        #[command(flatten)]
        weight: WeightArgs,
        /// Emit a JSON document instead of text
        #[arg(long)]
        json: bool,
    },
    /// Coproduct of an element
    Coproduct {
        /// Use the closed formula for 1^(k+1) over A = k
        #[arg(short, value_name = "K", conflicts_with = "element")]
        k: Option<usize>,
        element: Option<String>,
        #[command(flatten)]
        base: BaseArgs,
        #[command(flatten)]
        weight: WeightArgs,
        /// Also print the counit
        #[arg(long)]
        counit: bool,
        #[arg(long)]
        json: bool,
    },
    /// Antipode of 1^(k+1) over A = k
    Antipode {
        #[arg(short, value_name = "K")]
        k: usize,
        #[command(flatten)]
        weight: WeightArgs,
        #[arg(long)]
        json: bool,
    },
    /// Colored Delannoy counts, tables and paths
    Delannoy(DelannoyArgs),
    /// Run verification suites
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Bound on k for words 1^(k+1) and on m, n for products over A = k
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of random samples in sampled checks
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check concrete operators against the extended Rota-Baxter identity
    Ops(OpsArgs),
    /// Convert between JSON documents and text
    Convert {
        /// Document to render as text, or "-" for stdin
        #[arg(conflicts_with = "from_text")]
        file: Option<String>,
        /// Text element to write as a JSON document
        #[arg(long, value_name = "ELEMENT")]
        from_text: Option<String>,
        /// Read --from-text as a pair "[..] (x) [..]"
        #[arg(long, requires = "from_text")]
        pair: bool,
        #[command(flatten)]
        base: BaseArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SuiteArg {
    Scalar,
    Base,
    Shuffle,
    Hopf,
    Delannoy,
    Operators,
    All,
}

#[derive(Debug, Args)]
struct DelannoyArgs {
    /// Print rows 0..=N of the triangle of E(m, n)
    #[arg(long, value_name = "N", group = "mode")]
    triangle: Option<usize>,
    /// Print the triangle as "index value" lines
    #[arg(long, requires = "triangle")]
    bfile: bool,
    /// Print D(m,n,r), E(m,n,r) for every r and the totals
    #[arg(long, num_args = 2, value_names = ["M", "N"], group = "mode")]
    count: Vec<u32>,
    /// List every colored path to (m, n)
    #[arg(long, num_args = 2, value_names = ["M", "N"], group = "mode")]
    enumerate: Vec<u32>,
    /// Compare product coefficients, counts, paths and series at (m, n)
    #[arg(long, num_args = 2, value_names = ["M", "N"], group = "mode")]
    bridge: Vec<u32>,
    /// Series coefficients up to total order N
    #[arg(long, value_name = "N", group = "mode")]
    gf: Option<usize>,
    /// Use 1/(1-x-y-xy) instead of 1/(1-x-y-2xy)
    #[arg(long, requires = "gf")]
    plain: bool,
    /// Largest m + n for --enumerate
    #[arg(long, default_value_t = delannoy::ENUMERATION_BOUND)]
    bound: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OpsName {
    /// a P+ + b P- from the q-Jackson pair on x^n
    Jackson,
    /// a P+ + b P- from the splitting of Laurent polynomials
    Laurent,
    /// a t_k -> t_(k+1) plus its adjoint on falling factorials
    FallingFactorial,
    /// Compatibility of the Jackson pair and weight inference
    Compat,
    /// Every gallery check
    Gallery,
}

#[derive(Debug, Args)]
struct OpsArgs {
    #[arg(value_enum)]
    name: OpsName,
    /// Coefficient of the first operator, a polynomial in a, b
    #[arg(long, default_value = "a", allow_hyphen_values = true)]
    a: String,
    /// Coefficient of the second operator
    #[arg(long, default_value = "b", allow_hyphen_values = true)]
    b: String,
    /// Weight to check; defaults to the predicted one
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    /// Jackson parameter
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    q: String,
    /// Largest probe degree or index
    #[arg(long, default_value_t = 6)]
    probes: i64,
    /// Truncation size of the model algebra; defaults to one that fits the probes
    #[arg(long)]
    dimension: Option<i64>,
    #[arg(long)]
    json: bool,
}

/// Parse `args` (including the program name), run the command and return
/// the exit status. Normal output goes to `out`, diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(CliError::Compute(e)) => {
            let _ = writeln!(err, "error: {}", describe(&e));
            EXIT_USAGE
        }
    }
}

fn describe(e: &Error) -> String {
    match e {
        Error::Overflow(what) => format!("truncation overflow: {what}"),
        Error::Parse { line, column, message } => format!("malformed input at {line}:{column}: {message}"),
        other => other.to_string(),
    }
}

enum CliError {
    Io(io::Error),
    Compute(Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

type CliResult = Result<i32, CliError>;

fn execute(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Product {
            kk,
            m,
            n,
            elements,
            base,
            weight,
            json,
        } => product(kk, m, n, &elements, &base, &weight, json, out),
        Command::Coproduct {
            k,
            element,
            base,
            weight,
            counit,
            json,
        } => coproduct(k, element, &base, &weight, counit, json, out),
        Command::Antipode { k, weight, json } => antipode(k, &weight, json, out),
        Command::Delannoy(args) => delannoy_cmd(&args, out),
        Command::Verify {
            suite,
            max_degree,
            seed,
            samples,
            json,
        } => verify(
            suite,
            VerifyConfig {
                max_degree,
                seed,
                samples,
            },
            json,
            out,
        ),
        Command::Ops(args) => ops(&args, out),
        Command::Convert {
            file,
            from_text,
            pair,
            base,
        } => convert(file, from_text, pair, &base, out),
    }
}

fn substitution(w: &WeightArgs) -> Result<BTreeMap<String, Rational>, Error> {
    let mut map = BTreeMap::new();
    if let Some(l) = &w.lambda {
        map.insert(LAMBDA.to_string(), parse_rational(l)?);
    }
    if let Some(k) = &w.kappa {
        map.insert(KAPPA.to_string(), parse_rational(k)?);
    }
    Ok(map)
}

fn specialize<K: Ord + Clone>(u: &LinComb<K>, w: &WeightArgs) -> Result<LinComb<K>, Error> {
    let map = substitution(w)?;
    if map.is_empty() {
        Ok(u.clone())
    } else {
        u.substitute(&map)
    }
}

fn base_spec(b: &BaseArgs) -> Result<Arc<BaseAlgebraSpec>, Error> {
    BaseAlgebraSpec::new(b.generators.iter().cloned(), true)
}

#[allow(clippy::too_many_arguments)]
fn product(
    kk: bool,
    m: Option<usize>,
    n: Option<usize>,
    elements: &[String],
    base: &BaseArgs,
    weight: &WeightArgs,
    json: bool,
    out: &mut dyn Write,
) -> CliResult {
    let ctx = RingContext::weight_ring();
    let w = ErbWeight::symbolic(&ctx)?;
    let (alg, result) = if kk {
        let alg = ShuffleAlgebra::new(BaseAlgebraSpec::scalars(), w);
        let r = alg.closed_form_kk(m.unwrap_or(0), n.unwrap_or(0))?;
        (alg, r)
    } else {
        if elements.len() != 2 {
            return Err(Error::InvalidArgument("product needs --kk -m M -n N or two elements".into()).into());
        }
        let alg = ShuffleAlgebra::new(base_spec(base)?, w);
        let u = alg.parse(&elements[0])?;
        let v = alg.parse(&elements[1])?;
        let r = alg.diamond(&u, &v)?;
        (alg, r)
    };
    let result = specialize(&result, weight)?;
    emit_element(&alg, &result, json, out)?;
    Ok(EXIT_OK)
}

fn emit_element(alg: &ShuffleAlgebra, u: &TensorElement, json: bool, out: &mut dyn Write) -> io::Result<()> {
    if json {
        out.write_all(serialize_element(alg.base(), u).as_bytes())
    } else {
        writeln!(out, "{}", alg.render(u))
    }
}

fn emit_pair(h: &HopfAlgebra, t: &TensorPair, json: bool, out: &mut dyn Write) -> io::Result<()> {
    if json {
        out.write_all(serialize_pair(h.algebra().base(), t).as_bytes())
    } else {
        writeln!(out, "{}", h.render_pair(t))
    }
}

fn coproduct(
    k: Option<usize>,
    element: Option<String>,
    base: &BaseArgs,
    weight: &WeightArgs,
    counit: bool,
    json: bool,
    out: &mut dyn Write,
) -> CliResult {
    let (h, u, t) = match (k, element) {
        (Some(k), None) => {
            let h = HopfAlgebra::new(BaseAlgebraSpec::scalars())?;
            let u = h.algebra().ones(k + 1)?;
            let t = h.coproduct_kk(k)?;
            (h, u, t)
        }
        (None, Some(text)) => {
            let h = HopfAlgebra::new(base_spec(base)?)?;
            let u = h.algebra().parse(&text)?;
            let t = h.coproduct(&u)?;
            (h, u, t)
        }
        _ => return Err(Error::InvalidArgument("coproduct needs -k K or one element".into()).into()),
    };
    emit_pair(&h, &specialize(&t, weight)?, json, out)?;
    if counit && !json {
        let e = LinComb::term(0u8, h.counit(&u)?);
        let e = specialize(&e, weight)?;
        writeln!(out, "counit: {}", e.coeff(&0))?;
    }
    Ok(EXIT_OK)
}

fn antipode(k: usize, weight: &WeightArgs, json: bool, out: &mut dyn Write) -> CliResult {
    let h = HopfAlgebra::new(BaseAlgebraSpec::scalars())?;
    let s = specialize(&h.antipode_kk(k)?, weight)?;
    emit_element(h.algebra(), &s, json, out)?;
    Ok(EXIT_OK)
}

fn to_json<T: serde::Serialize>(v: &T, out: &mut dyn Write) -> io::Result<()> {
    let text = serde_json::to_string_pretty(v).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

fn delannoy_cmd(a: &DelannoyArgs, out: &mut dyn Write) -> CliResult {
    if let Some(size) = a.triangle {
        let rows = delannoy::triangle(size);
        if a.json {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect();
            to_json(&rows, out)?;
        } else if a.bfile {
            out.write_all(delannoy::render_bfile(&rows).as_bytes())?;
        } else {
            out.write_all(delannoy::render_triangle(&rows).as_bytes())?;
        }
    } else if let [m, n] = a.count[..] {
        for r in 0..=m.min(n) {
            writeln!(
                out,
                "r={r} D={} E={}",
                delannoy::count_d(m, n, r)?,
                delannoy::count_e(m, n, r)?
            )?;
        }
        writeln!(
            out,
            "D({m},{n})={} E({m},{n})={}",
            delannoy::d_total(m, n),
            delannoy::e_total(m, n)
        )?;
    } else if let [m, n] = a.enumerate[..] {
        let paths = delannoy::enumerate_colored_bounded(m, n, a.bound)?;
        if a.json {
            let list: Vec<String> = paths.iter().map(ToString::to_string).collect();
            to_json(&list, out)?;
        } else {
            for p in &paths {
                writeln!(out, "{p}")?;
            }
            writeln!(out, "{} paths", paths.len())?;
        }
    } else if let [m, n] = a.bridge[..] {
        let report = delannoy::coefficient_bridge(&delannoy::unit_weight_algebra(), m, n)?;
        if a.json {
            to_json(&report, out)?;
        } else {
            writeln!(out, "{report}")?;
        }
        return Ok(if report.agrees() { EXIT_OK } else { EXIT_COUNTEREXAMPLE });
    } else if let Some(order) = a.gf {
        let kind = if a.plain { GfKind::Plain } else { GfKind::Colored };
        let table = delannoy::gf_coefficients(kind, order);
        for (m, row) in table.iter().enumerate() {
            let cells: Vec<String> = row.iter().take(order + 1 - m).map(ToString::to_string).collect();
            writeln!(out, "{}", cells.join(", "))?;
        }
    } else {
        return Err(
            Error::InvalidArgument("choose one of --triangle, --count, --enumerate, --bridge, --gf".into()).into(),
        );
    }
    Ok(EXIT_OK)
}

fn verify(suite: SuiteArg, config: VerifyConfig, json: bool, out: &mut dyn Write) -> CliResult {
    let suites: Vec<Suite> = match suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Scalar => vec![Suite::Scalar],
        SuiteArg::Base => vec![Suite::Base],
        SuiteArg::Shuffle => vec![Suite::Shuffle],
        SuiteArg::Hopf => vec![Suite::Hopf],
        SuiteArg::Delannoy => vec![Suite::Delannoy],
        SuiteArg::Operators => vec![Suite::Operators],
    };
    let reports: Vec<SuiteReport> = suites.iter().map(|&s| run_suite(s, &config)).collect();
    let passed = reports.iter().all(SuiteReport::passed);
    if json {
        #[derive(serde::Serialize)]
        struct Summary<'a> {
            config: VerifyConfig,
            passed: bool,
            suites: &'a [SuiteReport],
        }
        to_json(
            &Summary {
                config,
                passed,
                suites: &reports,
            },
            out,
        )?;
    } else {
        writeln!(
            out,
            "seed {} max-degree {} samples {}",
            config.seed, config.max_degree, config.samples
        )?;
        for r in &reports {
            writeln!(out, "{r}")?;
        }
        let cases: usize = reports.iter().map(SuiteReport::cases).sum();
        let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
        writeln!(
            out,
            "{}: {checks} checks, {cases} cases",
            if passed { "all passed" } else { "FAILED" }
        )?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

fn ops(a: &OpsArgs, out: &mut dyn Write) -> CliResult {
    if let OpsName::Gallery = a.name {
        let checks = erbalg::verify::operator_checks(&VerifyConfig::default());
        let report = SuiteReport {
            suite: Suite::Operators,
            seed: 0,
            checks,
        };
        if a.json {
            to_json(&report, out)?;
        } else {
            writeln!(out, "{report}")?;
        }
        return Ok(if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE });
    }
    let ctx = RingContext::new(["a", "b"], false)?;
    let coef_a = ScalarPoly::parse(&ctx, &a.a)?;
    let coef_b = ScalarPoly::parse(&ctx, &a.b)?;
    let weight_or = |lambda: ScalarPoly, kappa: ScalarPoly| -> Result<ErbWeight, Error> {
        let l = match &a.lambda {
            Some(t) => ScalarPoly::parse(&ctx, t)?,
            None => lambda,
        };
        let k = match &a.kappa {
            Some(t) => ScalarPoly::parse(&ctx, t)?,
            None => kappa,
        };
        ErbWeight::new(l, k)
    };
    let emit = |report: &Report, alg: &TruncatedAlgebra, op: &RuleOperator, out: &mut dyn Write| -> CliResult {
        if a.json {
            to_json(report, out)?;
        } else {
            write!(out, "{}", op.describe(alg))?;
            writeln!(out, "{report}")?;
        }
        Ok(if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
    };
    match a.name {
        OpsName::Jackson => {
            let q = parse_rational(&a.q)?;
            let alg = TruncatedAlgebra::polynomial(a.dimension.unwrap_or(2 * a.probes.max(1)), &ctx)?;
            let (plus, minus) = jackson_pair(&alg, &q)?;
            let op = RuleOperator::combine(&plus, &minus, &coef_a, &coef_b)?;
            let w = weight_or(-(&coef_a + &coef_b), &coef_a * &coef_b)?;
            let probes: Vec<Vector> = (1..=a.probes).map(|i| alg.element(i)).collect();
            emit(&verify_erb_identity(&op, &w, &alg, &probes)?, &alg, &op, out)
        }
        OpsName::Laurent => {
            let alg = TruncatedAlgebra::laurent(a.dimension.unwrap_or(2 * a.probes.max(1)), &ctx)?;
            let (plus, minus) = laurent_split(&alg)?;
            let op = RuleOperator::combine(&plus, &minus, &coef_a, &coef_b)?;
            let w = weight_or(-(&coef_a + &coef_b), &coef_a * &coef_b)?;
            let probes: Vec<Vector> = (-a.probes..=a.probes).map(|i| alg.element(i)).collect();
            emit(&verify_erb_identity(&op, &w, &alg, &probes)?, &alg, &op, out)
        }
        OpsName::FallingFactorial => {
            let alg = TruncatedAlgebra::falling_factorial(a.dimension.unwrap_or(2 * a.probes + 4), &ctx)?;
            let op = falling_factorial_op(&alg, &coef_a, &coef_b)?;
            let w = weight_or(&coef_a + &coef_b, &coef_a * &coef_b)?;
            let probes: Vec<Vector> = (0..=a.probes).map(|i| alg.element(i)).collect();
            emit(&verify_erb_identity(&op, &w, &alg, &probes)?, &alg, &op, out)
        }
        OpsName::Compat => {
            let q = parse_rational(&a.q)?;
            let alg = TruncatedAlgebra::polynomial(a.dimension.unwrap_or(2 * a.probes.max(1)), &ctx)?;
            let (plus, minus) = jackson_pair(&alg, &q)?;
            let w = ErbWeight::new(ScalarPoly::from_int(&ctx, -1), ScalarPoly::zero(&ctx))?;
            let probes: Vec<Vector> = (1..=a.probes).map(|i| alg.element(i)).collect();
            let report = compatibility_check(&plus, &minus, &w, &w, &CompatConstants::adjoint_pair(&w), &alg, &probes)?;
            let inferred = infer_weight(&plus, &alg, &probes)?;
            if a.json {
                to_json(&report, out)?;
            } else {
                writeln!(out, "{report}")?;
                writeln!(out, "P+ has {inferred}")?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        OpsName::Gallery => unreachable!("handled above"),
    }
}

fn convert(
    file: Option<String>,
    from_text: Option<String>,
    pair: bool,
    base: &BaseArgs,
    out: &mut dyn Write,
) -> CliResult {
    if let Some(text) = from_text {
        let spec = base_spec(base)?;
        if pair {
            let h = HopfAlgebra::new(spec)?;
            let t = h.parse_pair(&text)?;
            out.write_all(serialize_pair(h.algebra().base(), &t).as_bytes())?;
        } else {
            let ctx = RingContext::hopf_ring();
            let alg = ShuffleAlgebra::new(spec, ErbWeight::symbolic(&ctx)?);
            let u = alg.parse(&text)?;
            out.write_all(serialize_element(alg.base(), &u).as_bytes())?;
        }
        return Ok(EXIT_OK);
    }
    let text = match file.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(path) => fs::read_to_string(path)?,
    };
    let doc = parse_document(&text)?;
    let weight = ErbWeight::new(ScalarPoly::zero(&doc.ring), ScalarPoly::zero(&doc.ring))?;
    let alg = ShuffleAlgebra::new(doc.base.clone(), weight);
    match &doc.value {
        Value::Element(u) => writeln!(out, "{}", alg.render(u))?,
        Value::Pair(t) => {
            let gens = doc.base.generators();
            writeln!(out, "{}", t.render(gens))?;
        }
    }
    Ok(EXIT_OK)
}
