use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ffelim::count::{self, BivariateInstance, Derivation, Route};
use ffelim::eliminate::{self, EliminationPlan, GrowthConfig, Origin, PairStrategy};
use ffelim::instances::{self, SparsePolySpec, TranscriptRow};
use ffelim::oracle;
use ffelim::resultant::{self, Strategy};
use ffelim::{Error, MultiPoly, PrimeModulus, UniPoly};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ffelim",
    version,
    about = "Resultants, elimination and root counting over GF(p)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
#[group(skip)]
struct Common {
    /// Prime modulus.
    #[arg(short = 'p', long = "prime")]
    p: u64,
    /// Write the report here instead of standard output.
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Resultant of two polynomials in one variable.
    Res {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long, default_value_t = 2)]
        arity: usize,
        /// Variable to eliminate (`x1`, `1`, `t` or `x`); defaults to the last.
        #[arg(long)]
        var: Option<String>,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        /// Report the elapsed time.
        #[arg(long)]
        timing: bool,
        alpha: String,
        beta: String,
    },
    /// Rabin basis of a system by pairwise resultants.
    Eliminate {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long)]
        arity: usize,
        /// Comma-separated variables, eliminated in this order.
        #[arg(long)]
        order: Option<String>,
        #[arg(long, default_value = "input-order")]
        pair_strategy: PairStrategy,
        #[arg(long, default_value = "auto")]
        strategy: Strategy,
        #[arg(long)]
        timing: bool,
        #[arg(required = true)]
        polys: Vec<String>,
    },
    /// Count the t with a root x in GF(p), per extension degree.
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dmax: Option<usize>,
        #[arg(long, default_value = "product")]
        route: Route,
        /// Include the gcd derivation.
        #[arg(long)]
        transcript: bool,
        #[arg(long)]
        strict: bool,
        poly: String,
    },
    /// Decide whether a polynomial (or a pair) has no zero over GF(p).
    Decide {
        #[command(flatten)]
        common: Common,
        /// Two univariate polynomials: no common root in GF(p).
        #[arg(long, conflicts_with = "nu")]
        pair: bool,
        /// Univariate polynomial: no root in the subgroup of this order.
        #[arg(long)]
        nu: Option<u64>,
        #[arg(long)]
        transcript: bool,
        #[arg(required = true, num_args = 1..=2)]
        polys: Vec<String>,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Growth or transcript benchmarks as CSV.
    Bench(BenchArgs),
    /// Brute-force enumeration.
    Oracle {
        #[command(subcommand)]
        kind: OracleKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Product of gamma x^r - delta factors with no root in GF(p).
    Nonresidue {
        #[command(flatten)]
        common: Common,
        /// `gamma,delta,r`; repeat for more factors.
        #[arg(long = "factors", required = true)]
        factors: Vec<String>,
    },
    /// Sparse integer polynomial satisfying Eisenstein at `pi`.
    Eisenstein {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        pi: u64,
        /// Comma-separated increasing exponents.
        #[arg(long)]
        exponents: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// h(x^r) with exponents reduced.
    Subst {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'r', long)]
        r: u64,
        h: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchKind {
    Growth,
    Transcript,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "growth")]
    kind: BenchKind,
    /// Prime modulus (growth).
    #[arg(short = 'p', long = "prime", default_value_t = 31)]
    p: u64,
    /// Comma-separated primes (transcript).
    #[arg(long, default_value = "11,31,101")]
    primes: String,
    /// Degree in the eliminated variable, or of the transcript instances.
    #[arg(short = 'd', long, default_value_t = 3)]
    degree: u32,
    /// Terms per coefficient (growth).
    #[arg(short = 'L', long = "terms", default_value_t = 2)]
    l: usize,
    #[arg(short = 'n', long, default_value_t = 2)]
    arity: usize,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    timing: bool,
    #[arg(short = 'o', long = "out")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum OracleKind {
    /// Enumerate t over GF(p^d), x over GF(p).
    Roots {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1)]
        dmax: usize,
        poly: String,
    },
    /// Common zeros in GF(p)^n.
    Zeros {
        #[command(flatten)]
        common: Common,
        #[arg(short = 'n', long)]
        arity: usize,
        polys: Vec<String>,
    },
    /// Smallest-degree common root of two univariate polynomials.
    Common {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        alpha: String,
        beta: String,
    },
}

enum Failure {
    Parse(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Parse(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Error::from(e).into()
            }
        }
    )*};
}

domain_from!(
    ffelim::ff::FieldError,
    ffelim::upoly::UpolyError,
    ffelim::mpoly::MpolyError,
    ffelim::resultant::ResultantError,
    ffelim::eliminate::EliminateError,
    ffelim::count::CountError,
    ffelim::instances::InstanceError,
    ffelim::oracle::OracleError
);

type Outcome = Result<String, Failure>;

fn modulus(p: u64) -> Result<PrimeModulus, Failure> {
    Ok(PrimeModulus::new(p)?)
}

fn parse_var(text: &str, arity: usize) -> Result<usize, Failure> {
    let v = match text {
        "t" => Some(0),
        "x" => Some(1),
        _ => text.strip_prefix('x').unwrap_or(text).parse::<usize>().ok(),
    };
    match v {
        Some(v) if v < arity => Ok(v),
        _ => Err(Failure::Parse(format!(
            "unknown variable `{text}` (arity {arity})"
        ))),
    }
}

fn parse_order(text: &str, arity: usize) -> Result<Vec<usize>, Failure> {
    text.split(',')
        .map(|v| parse_var(v.trim(), arity))
        .collect()
}

fn parse_list(text: &str, what: &str) -> Result<Vec<u64>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Failure::Parse(format!("{what}: `{s}` is not a non-negative integer")))
        })
        .collect()
}

/// A polynomial in one of `t`/`x0` or `x`/`x1`.
fn parse_univariate(text: &str, p: PrimeModulus) -> Result<UniPoly, Failure> {
    let f = MultiPoly::parse(text, 2, p)?;
    if f.involves(0) && f.involves(1) {
        return Err(Failure::Parse(format!(
            "`{text}` must involve a single variable"
        )));
    }
    let var = usize::from(f.involves(1));
    Ok(f.to_univariate(var).expect("single variable"))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn upoly_text(f: &UniPoly) -> String {
    f.render("x0")
}

fn cmd_res(
    common: &Common,
    arity: usize,
    var: Option<&str>,
    strategy: Strategy,
    timing: bool,
    alpha: &str,
    beta: &str,
) -> Outcome {
    let p = modulus(common.p)?;
    let var = match var {
        Some(v) => parse_var(v, arity)?,
        None => arity.saturating_sub(1),
    };
    let a = MultiPoly::parse(alpha, arity, p)?;
    let b = MultiPoly::parse(beta, arity, p)?;
    let m = resultant::sylvester_build(&a, &b, var)?;
    let used = strategy.resolve(m.dim(), m.arity());
    let start = Instant::now();
    let r = resultant::res(&a, &b, var, used)?;
    let micros = start.elapsed().as_micros() as u64;
    if common.format == Some(Format::Text) {
        return Ok(format!("{}\n", r.render()));
    }
    let mut report = json!({
        "schema": "1",
        "p": p.get(),
        "var": format!("x{var}"),
        "dim": m.dim(),
        "strategy": used.as_str(),
        "resultant": r.render(),
        "degrees": r.degrees(),
        "terms": r.term_count(),
    });
    if timing {
        report["micros"] = json!(micros);
    }
    Ok(pretty(&report))
}

fn origin_json(o: &Origin) -> Value {
    match o {
        Origin::Input(i) => json!({ "input": i }),
        Origin::Resultant { parents, var } => json!({
            "resultant": { "parents": [parents.0, parents.1], "var": format!("x{var}") }
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_eliminate(
    common: &Common,
    arity: usize,
    order: Option<&str>,
    pair: PairStrategy,
    strategy: Strategy,
    timing: bool,
    polys: &[String],
) -> Outcome {
    let p = modulus(common.p)?;
    let system = polys
        .iter()
        .map(|t| MultiPoly::parse(t, arity, p))
        .collect::<Result<Vec<_>, _>>()?;
    let plan = match order {
        Some(o) => EliminationPlan::new(parse_order(o, arity)?, pair, arity)?,
        None => EliminationPlan::new(
            EliminationPlan::default_for(arity)
                .variable_order()
                .to_vec(),
            pair,
            arity,
        )?,
    }
    .with_strategy(strategy);
    let basis = eliminate::rabin_basis(&system, &plan, timing)?;
    if common.format == Some(Format::Text) {
        let lines: Vec<String> = basis
            .final_generators()
            .map(|g| g.render() + "\n")
            .collect();
        return Ok(lines.concat());
    }
    if common.format == Some(Format::Csv) {
        return Ok(basis.log.to_csv());
    }
    let generators: Vec<Value> = basis
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| json!({ "id": i, "poly": g.poly.render(), "origin": origin_json(&g.origin) }))
        .collect();
    let shared: Vec<Value> = basis
        .shared_factors
        .iter()
        .map(|s| json!({ "parents": [s.parents.0, s.parents.1], "var": format!("x{}", s.var) }))
        .collect();
    let log: Vec<Value> = basis
        .log
        .rows
        .iter()
        .map(|r| {
            json!({
                "step": r.step,
                "method": r.method.tag(),
                "var": format!("x{}", r.var),
                "terms": r.terms,
                "maxdeg": r.max_deg,
                "micros": r.micros,
            })
        })
        .collect();
    Ok(pretty(&json!({
        "schema": "1",
        "p": p.get(),
        "order": plan.variable_order().iter().map(|v| format!("x{v}")).collect::<Vec<_>>(),
        "pair_strategy": pair.as_str(),
        "final": basis.final_generators().map(MultiPoly::render).collect::<Vec<_>>(),
        "final_ids": basis.final_ids,
        "generators": generators,
        "shared_factors": shared,
        "log": log,
    })))
}

fn cmd_count(
    common: &Common,
    dmax: Option<usize>,
    route: Route,
    transcript: bool,
    strict: bool,
    poly: &str,
) -> Outcome {
    let p = modulus(common.p)?;
    let inst = BivariateInstance::new(MultiPoly::parse(poly, 2, p)?, strict)?;
    let mut report = match dmax {
        Some(d) => count::per_degree_counts(&inst, d, route)?,
        None if inst.m() == 0 => count::count_distinct_t(&inst, route)?,
        None => count::per_degree_counts(&inst, 1, route)?,
    };
    if transcript {
        report.attach_transcript()?;
    }
    Ok(pretty(&report.to_json()))
}

fn derivation_json(d: &Derivation) -> Value {
    serde_json::to_value(d).expect("derivations serialize")
}

fn cmd_decide(
    common: &Common,
    pair: bool,
    nu: Option<u64>,
    transcript: bool,
    polys: &[String],
) -> Outcome {
    let p = modulus(common.p)?;
    let arity_error = |want: usize| {
        Failure::Parse(format!(
            "expected {want} polynomial(s), got {}",
            polys.len()
        ))
    };
    if pair {
        let [f, g] = polys else {
            return Err(arity_error(2));
        };
        let (f, g) = (parse_univariate(f, p)?, parse_univariate(g, p)?);
        let answer = instances::decide_pair_nonvanishing(&f, &g)?;
        return Ok(pretty(&json!({
            "schema": "1",
            "p": p.get(),
            "f": upoly_text(&f),
            "g": upoly_text(&g),
            "no_common_zero": answer,
        })));
    }
    if let Some(nu) = nu {
        let [f] = polys else {
            return Err(arity_error(1));
        };
        let f = parse_univariate(f, p)?;
        let answer = instances::check_nonvanishing(&f, nu)?;
        return Ok(pretty(&json!({
            "schema": "1",
            "p": p.get(),
            "nu": nu,
            "f": upoly_text(&f),
            "nonvanishing": answer,
        })));
    }
    let [f] = polys else {
        return Err(arity_error(1));
    };
    let inst = BivariateInstance::new(MultiPoly::parse(f, 2, p)?, false)?;
    let d = count::decide_no_zero(&inst)?;
    let mut report = json!({
        "schema": "1",
        "p": p.get(),
        "no_zero": d.no_zero,
        "g": upoly_text(&d.g),
        "gcd": d.gcd.as_ref().map(upoly_text),
    });
    if transcript {
        report["transcript"] = d.transcript.as_ref().map_or(Value::Null, derivation_json);
    }
    Ok(pretty(&report))
}

fn emit_poly(common: &Common, f: &UniPoly, extra: Value) -> String {
    match common.format {
        Some(Format::Json) => {
            let mut v = json!({ "schema": "1", "p": f.modulus().get(), "poly": upoly_text(f) });
            if let (Value::Object(dst), Value::Object(src)) = (&mut v, extra) {
                dst.extend(src);
            }
            pretty(&v)
        }
        _ => format!("{}\n", upoly_text(f)),
    }
}

fn nonvanishing(f: &UniPoly) -> Result<bool, Failure> {
    Ok(!instances::has_root_in_base_field(f)?)
}

fn cmd_gen(kind: &GenKind) -> Result<(String, Option<PathBuf>), Failure> {
    match kind {
        GenKind::Nonresidue { common, factors } => {
            let p = modulus(common.p)?;
            let triples = factors
                .iter()
                .map(|t| match parse_list(t, "--factors")?.as_slice() {
                    &[g, d, r] => Ok((g, d, r)),
                    _ => Err(Failure::Parse(format!(
                        "--factors `{t}`: expected gamma,delta,r"
                    ))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let f = instances::gen_nonresidue_product(&SparsePolySpec::new(p, &triples)?)?;
            let extra = json!({ "nonvanishing": nonvanishing(&f)? });
            Ok((emit_poly(common, &f, extra), common.out.clone()))
        }
        GenKind::Eisenstein {
            common,
            pi,
            exponents,
            seed,
        } => {
            let p = modulus(common.p)?;
            let exps = parse_list(exponents, "--exponents")?
                .into_iter()
                .map(|e| {
                    u32::try_from(e).map_err(|_| Failure::Parse(format!("exponent {e} too large")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let inst = instances::gen_eisenstein_sparse(p, *pi, &exps, *seed)?;
            let extra = json!({
                "pi": pi,
                "over_z": inst.over_z.render(),
                "vanishes_mod_p": inst.vanishes_mod_p()?,
            });
            Ok((emit_poly(common, &inst.mod_p, extra), common.out.clone()))
        }
        GenKind::Subst { common, r, h } => {
            let p = modulus(common.p)?;
            let h = parse_univariate(h, p)?;
            let f = instances::gen_substitution(&h, *r)?;
            let extra = json!({ "r": r, "h": upoly_text(&h), "nonvanishing": nonvanishing(&f)? });
            Ok((emit_poly(common, &f, extra), common.out.clone()))
        }
    }
}

fn cmd_bench(args: &BenchArgs) -> Outcome {
    match args.kind {
        BenchKind::Growth => {
            let cfg = GrowthConfig {
                d: args.degree,
                l: args.l,
                arity: args.arity,
                modulus: modulus(args.p)?,
                seed: args.seed,
                trials: args.trials,
                timing: args.timing,
            };
            Ok(eliminate::bench_growth(&cfg)?.to_csv())
        }
        BenchKind::Transcript => {
            let primes = parse_list(&args.primes, "--primes")?;
            let rows =
                instances::transcript_bench(&primes, args.degree as usize, args.trials, args.seed)?;
            let mut out = format!("{}\n", TranscriptRow::CSV_HEADER);
            for r in rows {
                out.push_str(&r.csv_line());
                out.push('\n');
            }
            Ok(out)
        }
    }
}

fn cmd_oracle(kind: &OracleKind) -> Result<(String, Option<PathBuf>), Failure> {
    match kind {
        OracleKind::Roots { common, dmax, poly } => {
            let p = modulus(common.p)?;
            let f = MultiPoly::parse(poly, 2, p)?;
            let b = oracle::brute_bivariate_roots(&f, *dmax)?;
            let key = |m: &std::collections::BTreeMap<usize, u64>| -> Value {
                m.iter().map(|(d, c)| (d.to_string(), json!(c))).collect()
            };
            let witnesses: Vec<Value> = b
                .witnesses
                .iter()
                .map(|w| json!({ "degree": w.degree, "t": w.t.0, "x": w.x }))
                .collect();
            let v = json!({
                "schema": "1",
                "p": p.get(),
                "distinct_t": b.distinct_t,
                "cumulative": key(&b.cumulative),
                "exact": key(&b.exact),
                "witnesses": witnesses,
            });
            Ok((pretty(&v), common.out.clone()))
        }
        OracleKind::Zeros {
            common,
            arity,
            polys,
        } => {
            let p = modulus(common.p)?;
            let system = polys
                .iter()
                .map(|t| MultiPoly::parse(t, *arity, p))
                .collect::<Result<Vec<_>, _>>()?;
            let zeros = oracle::brute_system_zeros(&system, *arity, p)?;
            let v = json!({ "schema": "1", "p": p.get(), "count": zeros.len(), "zeros": zeros });
            Ok((pretty(&v), common.out.clone()))
        }
        OracleKind::Common {
            common,
            kmax,
            alpha,
            beta,
        } => {
            let p = modulus(common.p)?;
            let (a, b) = (parse_univariate(alpha, p)?, parse_univariate(beta, p)?);
            let found = oracle::brute_common_root(&a, &b, *kmax)?;
            let root = found.map(|c| {
                json!({
                    "degree": c.degree,
                    "field_modulus": c.field.modulus_poly().render("y"),
                    "element": c.element.0,
                })
            });
            let v = json!({ "schema": "1", "p": p.get(), "common_root": root });
            Ok((pretty(&v), common.out.clone()))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(String, Option<PathBuf>), Failure> {
    match &cli.command {
        Command::Res {
            common,
            arity,
            var,
            strategy,
            timing,
            alpha,
            beta,
        } => Ok((
            cmd_res(
                common,
                *arity,
                var.as_deref(),
                *strategy,
                *timing,
                alpha,
                beta,
            )?,
            common.out.clone(),
        )),
        Command::Eliminate {
            common,
            arity,
            order,
            pair_strategy,
            strategy,
            timing,
            polys,
        } => Ok((
            cmd_eliminate(
                common,
                *arity,
                order.as_deref(),
                *pair_strategy,
                *strategy,
                *timing,
                polys,
            )?,
            common.out.clone(),
        )),
        Command::Count {
            common,
            dmax,
            route,
            transcript,
            strict,
            poly,
        } => Ok((
            cmd_count(common, *dmax, *route, *transcript, *strict, poly)?,
            common.out.clone(),
        )),
        Command::Decide {
            common,
            pair,
            nu,
            transcript,
            polys,
        } => Ok((
            cmd_decide(common, *pair, *nu, *transcript, polys)?,
            common.out.clone(),
        )),
        Command::Gen { kind } => cmd_gen(kind),
        Command::Bench(args) => Ok((cmd_bench(args)?, args.out.clone())),
        Command::Oracle { kind } => cmd_oracle(kind),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((text, out)) => {
            let written = match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
