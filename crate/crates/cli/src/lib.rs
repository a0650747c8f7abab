//! Command-line front end for `weyl-core`: polynomial parsing, commands,
//! JSON output and the corpus runner.

pub mod corpus;
pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weyl_core::annihilator::{self, AnnMethod, AsVariant};
use weyl_core::bfunction::{self, Method};
use weyl_core::groebner::{self, LeftIdeal};
use weyl_core::{charvariety, logarithmic, multiplier};
use weyl_core::{Algebra, Element, MonomialOrder, Signature};

use crate::parse::{parse_element, parse_poly, parse_rational, split_list, ParseError};
use crate::report::Report;

/// Exit status for success, failures and "mathematically unsupported".
pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse { what: String, err: ParseError },
    Engine(weyl_core::Error),
    Io(String),
    Corpus(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Engine(weyl_core::Error::Unsupported(_)) => EXIT_UNSUPPORTED,
            _ => EXIT_ERROR,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Parse { what, err } => write!(f, "{what}: {err}"),
            Failure::Engine(e) => write!(f, "{e}"),
            Failure::Io(m) => write!(f, "io error: {m}"),
            Failure::Corpus(m) => write!(f, "{m}"),
        }
    }
}

impl From<weyl_core::Error> for Failure {
    fn from(e: weyl_core::Error) -> Self {
        Failure::Engine(e)
    }
}

type Res<T> = Result<T, Failure>;

#[derive(Parser, Debug)]
#[command(name = "weyl", version, about = "Exact D-module invariants of a polynomial")]
struct Cli {
    /// Print versioned JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Comma-separated variable names, e.g. x,y,z.
    #[arg(long, value_delimiter = ',', required = true)]
    vars: Vec<String>,
    /// The polynomial f.
    f: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Global Bernstein-Sato polynomial.
    Bpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = BMethod::Minpoly)]
        method: BMethod,
    },
    /// Local Bernstein-Sato polynomial at a rational point.
    Localb {
        #[command(flatten)]
        input: Input,
        /// Comma-separated coordinates, e.g. 1,-1 or 1/2,0.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Annihilator of f^s in D[s].
    Ann {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = AMethod::Bm)]
        method: AMethod,
    },
    /// Log-canonical threshold.
    Lct {
        #[command(flatten)]
        input: Input,
    },
    /// Jumping numbers in (0, 1] found on monomials.
    Jumping {
        #[command(flatten)]
        input: Input,
        /// Largest monomial degree examined; defaults to deg f.
        #[arg(long)]
        degbound: Option<u32>,
    },
    /// Decide a condition on f.
    Check {
        #[arg(value_enum)]
        property: Property,
        #[command(flatten)]
        input: Input,
        /// Annihilator used by `as`.
        #[arg(long, value_enum, default_value_t = Variant::Parametric)]
        variant: Variant,
    },
    /// Generators of Der(-log f), or of Der_0(-log f) with --log0.
    Logder {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        log0: bool,
    },
    /// Characteristic ideal of ann_D(f^s).
    Charideal {
        #[command(flatten)]
        input: Input,
    },
    /// Generalized Bernstein-Sato polynomial b_{f,g}.
    Genb {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        g: String,
    },
    /// Reduced Groebner basis of a left ideal.
    Gb {
        #[arg(long, value_enum)]
        algebra: AlgebraKind,
        /// Comma-separated position variables.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// degrevlex, lex, or weight:w1,...,wN over all letters.
        #[arg(long, default_value = "degrevlex")]
        order: String,
        /// Generators.
        #[arg(required = true)]
        gens: Vec<String>,
    },
    /// Corpus runner.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    /// Compute every entry of a corpus directory and compare with goldens.
    Run {
        dir: std::path::PathBuf,
        /// Overwrite the golden files instead of comparing.
        #[arg(long)]
        regenerate: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum BMethod {
    Minpoly,
    Deformation,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AMethod {
    Oaku,
    Bm,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Property {
    A1,
    As,
    B1,
    Ls,
    Free,
    Koszul,
    Holonomic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Parametric,
    Weyl,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AlgebraKind {
    Commutative,
    Weyl,
    WeylS,
}

/// What `run` produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return failure(e),
    };
    let json = cli.json;
    match pool.install(|| dispatch(cli.command)) {
        Ok(Done::Report(r)) => {
            let code = if r.agreement == Some(false) { EXIT_ERROR } else { EXIT_OK };
            let stderr = if code == EXIT_OK { String::new() } else { "error: the two routes disagree\n".into() };
            Outcome { code, stdout: r.render(json), stderr }
        }
        Ok(Done::Corpus(c)) => Outcome { code: c.code(), stdout: c.render(json), stderr: String::new() },
        Err(e) => failure(e),
    }
}

fn failure(e: Failure) -> Outcome {
    Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
}

/// Rayon pool capped by `WEYL_THREADS` when set.
pub fn thread_pool() -> Res<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("WEYL_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("WEYL_THREADS must be a positive integer, got `{v}`")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Failure::Usage(e.to_string()))
}

enum Done {
    Report(Report),
    Corpus(corpus::Summary),
}

fn parse_input(input: &Input) -> Res<Element> {
    parse_poly(&input.f, &input.vars).map_err(|err| Failure::Parse { what: "f".into(), err })
}

fn input_json(input: &Input, f: &Element) -> Value {
    json!({ "vars": input.vars, "f": f.to_string() })
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_millis() as u64)
}

fn bool_text(b: bool) -> String {
    if b { "true" } else { "false" }.into()
}

fn dispatch(cmd: Command) -> Res<Done> {
    let report = match cmd {
        Command::Bpoly { input, method } => bpoly(&input, method)?,
        Command::Localb { input, point } => localb(&input, &point)?,
        Command::Ann { input, method } => ann(&input, method)?,
        Command::Lct { input } => {
            let f = parse_input(&input)?;
            let mut r = Report::new("lct", input_json(&input, &f));
            let (b, ms) = timed(|| bfunction::bpoly(&f, Method::MinPoly));
            let lct = b?.lct().ok_or_else(|| Failure::Engine(weyl_core::Error::ConstantInput))?;
            r.methods.push(Method::MinPoly.tag().into());
            r.timings_ms.insert(Method::MinPoly.tag().into(), ms);
            r.result = json!({ "value": report::rational(&lct) });
            r.text = lct.to_string();
            r
        }
        Command::Jumping { input, degbound } => {
            let f = parse_input(&input)?;
            let mut r = Report::new("jumping", input_json(&input, &f));
            let (j, ms) = timed(|| multiplier::jumping_numbers(&f, degbound));
            let j = j?;
            r.timings_ms.insert("total".into(), ms);
            let values: Vec<Value> = j.values.iter().map(report::rational).collect();
            r.result = json!({ "values": values, "degbound": j.degbound });
            r.text = j.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ");
            r
        }
        Command::Check { property, input, variant } => check(&input, property, variant)?,
        Command::Logder { input, log0 } => {
            let f = parse_input(&input)?;
            let mut r = Report::new("logder", input_json(&input, &f));
            let (d, ms) = timed(|| if log0 { logarithmic::der_log0(&f) } else { logarithmic::der_log(&f) });
            let d = d?;
            r.timings_ms.insert("total".into(), ms);
            let gens: Vec<Value> = d.generators.iter().map(report::derivation).collect();
            r.result = json!({ "kind": if log0 { "log0" } else { "log" }, "generators": gens });
            r.text = d.generators.iter().map(report::derivation_text).collect::<Vec<_>>().join("\n");
            r
        }
        Command::Charideal { input } => {
            let f = parse_input(&input)?;
            let mut r = Report::new("charideal", input_json(&input, &f));
            let (sym, ms) = timed(|| -> weyl_core::Result<_> {
                let a = annihilator::ann_fs(&f)?;
                let s = charvariety::characteristic_ideal_fs(&a)?;
                let d = s.dim()?;
                Ok((s, d))
            });
            let (sym, dim) = sym?;
            r.timings_ms.insert("total".into(), ms);
            r.result = json!({ "generators": report::elements(sym.generators()), "dim": dim });
            let mut lines: Vec<String> = sym.generators().iter().map(|g| g.to_string()).collect();
            lines.push(format!("dim {dim}"));
            r.text = lines.join("\n");
            r
        }
        Command::Genb { input, g } => {
            let f = parse_input(&input)?;
            let gg = parse_poly(&g, &input.vars).map_err(|err| Failure::Parse { what: "g".into(), err })?;
            let mut input_v = input_json(&input, &f);
            input_v["g"] = json!(gg.to_string());
            let mut r = Report::new("genb", input_v);
            let (b, ms) = timed(|| multiplier::generalized_b(&f, &gg));
            let b = b?;
            r.timings_ms.insert("total".into(), ms);
            let mut res = report::bfunction(&b.b);
            res["threshold"] = b.threshold().map_or(Value::Null, |t| report::rational(&t));
            r.result = res;
            r.text = b.b.factored();
            r
        }
        Command::Gb { algebra, vars, order, gens } => gb(algebra, &vars, &order, &gens)?,
        Command::Corpus { action: CorpusAction::Run { dir, regenerate } } => {
            return Ok(Done::Corpus(corpus::run_dir(&dir, regenerate)?));
        }
    };
    Ok(Done::Report(report))
}

fn bmethods(m: BMethod) -> Vec<Method> {
    match m {
        BMethod::Minpoly => vec![Method::MinPoly],
        BMethod::Deformation => vec![Method::Deformation],
        BMethod::Both => vec![Method::MinPoly, Method::Deformation],
    }
}

fn bpoly(input: &Input, method: BMethod) -> Res<Report> {
    let f = parse_input(input)?;
    let mut r = Report::new("bpoly", input_json(input, &f));
    let methods = bmethods(method);
    let runs: Vec<_> = if methods.len() == 2 {
        let (a, b) = rayon::join(|| timed(|| bfunction::bpoly(&f, methods[0])), || timed(|| bfunction::bpoly(&f, methods[1])));
        vec![a, b]
    } else {
        vec![timed(|| bfunction::bpoly(&f, methods[0]))]
    };
    let mut results = Vec::new();
    for (m, (b, ms)) in methods.iter().zip(runs) {
        r.methods.push(m.tag().into());
        r.timings_ms.insert(m.tag().into(), ms);
        results.push(b?);
    }
    if results.len() == 2 {
        r.agreement = Some(results[0] == results[1]);
    }
    r.result = report::bfunction(&results[0]);
    r.text = results[0].factored();
    Ok(r)
}

fn localb(input: &Input, point: &str) -> Res<Report> {
    let f = parse_input(input)?;
    let p = split_list(point)
        .iter()
        .map(|c| parse_rational(c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|err| Failure::Parse { what: "point".into(), err })?;
    if p.len() != input.vars.len() {
        return Err(Failure::Usage(format!("point has {} coordinates, expected {}", p.len(), input.vars.len())));
    }
    let mut input_v = input_json(input, &f);
    input_v["point"] = Value::Array(p.iter().map(report::rational).collect());
    let mut r = Report::new("localb", input_v);
    let (b, ms) = timed(|| bfunction::bpoly_local(&f, &p));
    let b = b?;
    r.timings_ms.insert("total".into(), ms);
    let mut res = report::bfunction(&b.b);
    res["verified"] = json!(b.verified);
    r.result = res;
    r.text = b.b.factored();
    Ok(r)
}

fn ann(input: &Input, method: AMethod) -> Res<Report> {
    let f = parse_input(input)?;
    let mut r = Report::new("ann", input_json(input, &f));
    let methods: Vec<AnnMethod> = match method {
        AMethod::Oaku => vec![AnnMethod::Oaku],
        AMethod::Bm => vec![AnnMethod::BrianconMaisonobe],
        AMethod::Both => vec![AnnMethod::Oaku, AnnMethod::BrianconMaisonobe],
    };
    let route = |m: AnnMethod| match m {
        AnnMethod::Oaku => annihilator::ann_fs_oaku(&f),
        AnnMethod::BrianconMaisonobe => annihilator::ann_fs_bm(&f),
    };
    let runs: Vec<_> = if methods.len() == 2 {
        let (a, b) = rayon::join(|| timed(|| route(methods[0])), || timed(|| route(methods[1])));
        vec![a, b]
    } else {
        vec![timed(|| route(methods[0]))]
    };
    let mut results = Vec::new();
    for (m, (a, ms)) in methods.iter().zip(runs) {
        r.methods.push(m.tag().into());
        r.timings_ms.insert(m.tag().into(), ms);
        results.push(a?);
    }
    if results.len() == 2 {
        r.agreement = Some(results[0].basis == results[1].basis);
    }
    let a = &results[0];
    r.result = json!({
        "algebra": a.algebra().sig().names(),
        "generators": report::elements(a.generators()),
        "max_order": a.max_order,
    });
    r.text = a.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n");
    Ok(r)
}

fn check(input: &Input, property: Property, variant: Variant) -> Res<Report> {
    let f = parse_input(input)?;
    let name = format!("check {}", property.to_possible_value().expect("named").get_name());
    let mut r = Report::new(&name, input_json(input, &f));
    let (res, ms) = timed(|| -> weyl_core::Result<Value> {
        Ok(match property {
            Property::A1 => json!({ "value": annihilator::is_a1(&f)? }),
            Property::As => {
                let v = match variant {
                    Variant::Parametric => AsVariant::Parametric,
                    Variant::Weyl => AsVariant::Weyl,
                };
                let variant_name = if v == AsVariant::Parametric { "parametric" } else { "weyl" };
                json!({ "value": annihilator::is_as(&f, v)?, "variant": variant_name })
            }
            Property::B1 => json!({ "value": annihilator::is_b1(&f)? }),
            Property::Ls => json!({ "value": charvariety::is_ls(&f)? }),
            Property::Free => {
                let fr = logarithmic::is_free(&f)?;
                let cert = fr.certificate.as_ref().map(|c| {
                    json!({
                        "basis": c.basis.iter().map(report::derivation).collect::<Vec<_>>(),
                        "unit": report::rational(&c.unit),
                    })
                });
                json!({ "value": fr.free, "tjurina_pd": fr.tjurina_pd, "certificate": cert })
            }
            Property::Koszul => json!({ "value": logarithmic::is_koszul_free(&f)? }),
            Property::Holonomic => json!({ "value": holonomic_inverse(&f)?, "module": "D/ann_D(1/f)" }),
        })
    });
    let res = res?;
    r.timings_ms.insert("total".into(), ms);
    r.text = bool_text(res["value"].as_bool().unwrap_or(false));
    r.result = res;
    Ok(r)
}

/// `degrevlex`, `lex` or `weight:w_1,...,w_N` (weights refined by
/// degrevlex).
pub fn parse_order(text: &str, nvars: usize) -> Res<MonomialOrder> {
    match text.trim() {
        "degrevlex" => Ok(MonomialOrder::degrevlex()),
        "lex" => Ok(MonomialOrder::lex()),
        t => {
            let Some(ws) = t.strip_prefix("weight:") else {
                return Err(Failure::Usage(format!("unknown order `{t}`")));
            };
            let w = split_list(ws)
                .iter()
                .map(|x| x.parse::<i32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| Failure::Usage(format!("bad weight vector `{ws}`")))?;
            if w.len() != nvars {
                return Err(Failure::Usage(format!("weight vector has {} entries, the algebra has {nvars} letters", w.len())));
            }
            Ok(MonomialOrder::weighted(&w))
        }
    }
}

fn gb(kind: AlgebraKind, vars: &[String], order: &str, gens: &[String]) -> Res<Report> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let sig = match kind {
        AlgebraKind::Commutative => Signature::commutative(&names),
        AlgebraKind::Weyl => Signature::weyl(&names),
        AlgebraKind::WeylS => Signature::weyl_s(&names),
    }?;
    let alg = Algebra::new(sig);
    let ord = parse_order(order, alg.len())?;
    let elems = gens
        .iter()
        .enumerate()
        .map(|(i, g)| parse_element(g, &alg).map_err(|err| Failure::Parse { what: format!("generator {}", i + 1), err }))
        .collect::<Res<Vec<_>>>()?;
    let algebra_name = kind.to_possible_value().expect("named").get_name().to_string();
    let input = json!({
        "algebra": algebra_name,
        "letters": alg.sig().names(),
        "order": order,
        "gens": report::elements(&elems),
    });
    let mut r = Report::new("gb", input);
    let (basis, ms) = timed(|| -> weyl_core::Result<Vec<Element>> {
        if ord.is_term_order(alg.len()) {
            Ok(groebner::groebner(&alg, &elems, &ord)?.elements().to_vec())
        } else {
            groebner::groebner_homogenized(&alg, &elems, &ord)
        }
    });
    let basis = basis?;
    r.timings_ms.insert("total".into(), ms);
    r.result = json!({ "basis": report::elements(&basis) });
    r.text = basis.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n");
    Ok(r)
}

/// Holonomicity of `D/ann_D(1/f)`.
pub fn holonomic_inverse(f: &Element) -> weyl_core::Result<bool> {
    let ideal: LeftIdeal = annihilator::ann_power(f, -1)?;
    charvariety::is_holonomic(&ideal)
}
