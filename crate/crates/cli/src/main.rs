use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use excseq::excseq::{self as seqs, IndependenceReport, Tally};
use excseq::quiver::QuiverSummary;
use excseq::verify::{self, num, ratio, Suite, VerifyOptions};
use excseq::{cycle, forests, formulas, genfun, DynkinType, Error, IndecCatalog, Quiver};

/// Largest rank enumerated without `--force`.
const DESK_MAX_N: usize = 7;
/// Largest cycle handled by the brute-force scan without `--force`.
const DESK_MAX_H: usize = 12;

#[derive(Parser)]
#[command(
    name = "excseq",
    version,
    about = "Exact enumeration of exceptional sequences for Dynkin quivers"
)]
struct Cli {
    /// Lift the desk-scale size limits.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QuiverArg {
    /// Quiver spec such as `A3:<>`, `D4:>><` or `A1:+A2:<`.
    #[arg(long)]
    quiver: String,
}

#[derive(Args)]
struct Jobs {
    /// Worker threads for enumeration; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Jsonl,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enum,
    Recursion,
    Closed,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parsed quiver and its components.
    Quiver(QuiverArg),
    /// List indecomposables with their Hom and Ext rows.
    Indecs(QuiverArg),
    /// Stream every exceptional sequence of a given length.
    Enumerate {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        len: usize,
        /// Include the dimension vectors of the right perpendicular category.
        #[arg(long)]
        emit_perp: bool,
        #[arg(long, value_enum, default_value_t = Format::Jsonl)]
        format: Format,
    },
    /// Aggregate counts by perpendicular type and position.
    Tally {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Exact all-subset independence test for relative projectivity.
    Independence {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        len: usize,
        /// Test relative injectivity instead.
        #[arg(long)]
        injective: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Count signed exceptional sequences.
    Signed {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long)]
        len: usize,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Generating function of relatively projective positions.
    Gf {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, value_enum, default_value_t = Method::Recursion)]
        method: Method,
        /// Sequence length for `--method enum`; complete sequences by default.
        #[arg(long)]
        len: Option<usize>,
        /// Set every variable to a single `z`.
        #[arg(long)]
        collapse: bool,
        /// Evaluate at rationals: one value after `--collapse`, else one per variable.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        eval: Vec<BigRational>,
        /// Split off linear factors one variable at a time.
        #[arg(long)]
        factor: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Rooted labeled forest statistics.
    Forests {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with_all = ["independence", "match_excseq"])]
        gf: bool,
        #[arg(long, conflicts_with = "match_excseq")]
        independence: bool,
        #[arg(long)]
        match_excseq: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(value_parser = ["cycle", "excseq", "prob", "gfrec", "forests", "all"])]
        suite: String,
        #[arg(long, default_value_t = 5)]
        nmax: usize,
        /// Restrict the cycle suite to one cycle length.
        #[arg(long)]
        h: Option<usize>,
        /// Print per-check wall time to stderr.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn guard(what: &'static str, value: usize, limit: usize, force: bool) -> Result<(), Failure> {
    if value <= limit {
        return Ok(());
    }
    let err = Error::TooLarge { what, value, limit };
    if force {
        eprintln!("warning: {err}");
        Ok(())
    } else {
        Err(err.into())
    }
}

fn load(spec: &str, force: bool) -> Result<IndecCatalog, Failure> {
    let q = Quiver::parse(spec)?;
    guard("rank", q.vertex_count(), DESK_MAX_N, force)?;
    Ok(IndecCatalog::new(&q)?)
}

fn print_json(v: &impl serde::Serialize) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn finish(report: Value) -> Outcome {
    let ok = report["ok"].as_bool().unwrap_or(false);
    print_json(&report)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// The connected `A_n` rank, if the quiver is one.
fn type_a(cat: &IndecCatalog) -> Option<usize> {
    match cat.quiver().type_key().as_slice() {
        [DynkinType::A(n)] => Some(*n),
        _ => None,
    }
}

fn run(cli: Cli) -> Outcome {
    let force = cli.force;
    match cli.command {
        Command::Quiver(a) => print_json(&QuiverSummary::from(&Quiver::parse(&a.quiver)?)),
        Command::Indecs(a) => print_json(&load(&a.quiver, force)?.export()),
        Command::Enumerate {
            quiver,
            len,
            emit_perp,
            format,
        } => enumerate(&load(&quiver.quiver, force)?, len, emit_perp, format),
        Command::Tally { quiver, len, jobs } => {
            let cat = load(&quiver.quiver, force)?;
            let t = seqs::tally(&cat, len, jobs.jobs)?;
            finish(tally_json(&cat, &quiver.quiver, &t))
        }
        Command::Independence {
            quiver,
            len,
            injective,
            jobs,
        } => {
            let cat = load(&quiver.quiver, force)?;
            let t = seqs::tally(&cat, len, jobs.jobs)?;
            let (stat, r) = if injective {
                ("relinj", t.injective_independence())
            } else {
                ("relproj", t.independence())
            };
            let mut v = independence_json(&r);
            v["quiver"] = json!(quiver.quiver);
            v["statistic"] = json!(stat);
            v["ok"] = json!(r.independent());
            finish(v)
        }
        Command::Signed { quiver, len, jobs } => {
            let cat = load(&quiver.quiver, force)?;
            let t = seqs::tally(&cat, len, jobs.jobs)?;
            let per_sequence = BigInt::from(t.signed_count());
            let gf_at_2 = t
                .multivariate_gf()
                .collapse()
                .evaluate_int(&BigInt::from(2));
            let formula = type_a(&cat).map(|n| formulas::signed_count_a(n, len));
            let ok = per_sequence == gf_at_2 && formula.as_ref().is_none_or(|f| *f == per_sequence);
            finish(json!({
                "quiver": quiver.quiver,
                "len": len,
                "per_sequence": num(&per_sequence),
                "gf_at_2": num(&gf_at_2),
                "formula": formula.map(num),
                "ok": ok,
            }))
        }
        Command::Gf {
            quiver,
            method,
            len,
            collapse,
            eval,
            factor,
            jobs,
        } => gf(
            &quiver.quiver,
            method,
            len,
            collapse,
            &eval,
            factor,
            jobs.jobs,
            force,
        ),
        Command::Forests {
            n,
            gf,
            independence,
            match_excseq,
            jobs,
        } => {
            guard("forest size n", n, DESK_MAX_N, force)?;
            forests_cmd(n, gf, independence, match_excseq, jobs.jobs)
        }
        Command::Verify {
            suite,
            nmax,
            h,
            timings,
            jobs,
        } => {
            guard("nmax", nmax, DESK_MAX_N, force)?;
            if let Some(h) = h {
                guard("h", h, DESK_MAX_H, force)?;
            }
            let suite: Suite = suite.parse()?;
            let report = verify::run(
                suite,
                &VerifyOptions {
                    nmax,
                    jobs: jobs.jobs,
                    h,
                },
            )?;
            if timings {
                for c in &report.checks {
                    eprintln!("{:>10.3} ms  {}", c.elapsed.as_secs_f64() * 1e3, c.id);
                }
            }
            for c in report.failures() {
                eprintln!(
                    "FAILED {}: expected {} actual {}",
                    c.id, c.expected, c.actual
                );
            }
            println!("{}", report.to_json());
            if report.ok {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
    }
}

fn enumerate(cat: &IndecCatalog, len: usize, emit_perp: bool, format: Format) -> Outcome {
    let mut out = BufWriter::new(io::stdout().lock());
    let dims = |i: usize| cat.dims(i).to_vec();
    match format {
        Format::Csv => writeln!(
            out,
            "terms,relproj,relinj,perp_type{}",
            if emit_perp { ",perp" } else { "" }
        )?,
        Format::Json => write!(out, "[")?,
        Format::Jsonl => {}
    }
    let mut first = true;
    let flags = |b: &[bool]| {
        b.iter()
            .map(|&x| if x { '1' } else { '0' })
            .collect::<String>()
    };
    let dimstr = |d: Vec<usize>| d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("");
    seqs::for_each_record(cat, len, |r| {
        let res = match format {
            Format::Csv => {
                let terms: Vec<String> = r.sequence.0.iter().map(|&i| dimstr(dims(i))).collect();
                let ty: Vec<String> = r.perp_type.iter().map(|p| p.to_string()).collect();
                let mut line = format!(
                    "{},{},{},{}",
                    terms.join(";"),
                    flags(&r.relproj),
                    flags(&r.relinj),
                    ty.join(";")
                );
                if emit_perp {
                    let perp: Vec<String> = r.perp.iter().map(|i| dimstr(dims(i))).collect();
                    line.push(',');
                    line.push_str(&perp.join(";"));
                }
                writeln!(out, "{line}")
            }
            Format::Jsonl | Format::Json => {
                let mut v = json!({
                    "terms": r.sequence.0.iter().map(|&i| dims(i)).collect::<Vec<_>>(),
                    "relproj": r.relproj,
                    "relinj": r.relinj,
                    "perp_type": r.perp_type,
                });
                if emit_perp {
                    v["perp"] = json!(r.perp.iter().map(dims).collect::<Vec<_>>());
                }
                match format {
                    Format::Json => {
                        let sep = if first { "" } else { "," };
                        first = false;
                        write!(out, "{sep}\n  {v}")
                    }
                    _ => writeln!(out, "{v}"),
                }
            }
        };
        res.map_err(|e| Error::Internal(e.to_string()))
    })?;
    if let Format::Json = format {
        writeln!(out, "\n]")?;
    }
    out.flush()?;
    Ok(())
}

fn tally_json(cat: &IndecCatalog, spec: &str, t: &Tally) -> Value {
    let by_type: serde_json::Map<String, Value> = t
        .by_type
        .iter()
        .map(|(l, c)| {
            (
                excseq::orthogonality::PerpType(l.clone()).to_string(),
                json!(c),
            )
        })
        .collect();
    let positions = |count: &dyn Fn(usize) -> u64| -> Vec<Value> {
        (1..=t.len)
            .map(|i| {
                json!({
                    "pos_left": i,
                    "pos_right": t.len + 1 - i,
                    "count": num(count(i)),
                    "probability": ratio(&BigRational::new(count(i).into(), t.total.into())),
                })
            })
            .collect()
    };
    let mut v = json!({
        "quiver": spec,
        "len": t.len,
        "total": num(t.total),
        "by_type": by_type,
        "relproj": positions(&|i| t.relproj_at_left(i)),
        "relinj": positions(&|i| t.relinj_at_left(i)),
    });
    let ok = match type_a(cat) {
        Some(n) => {
            let h = n + 1;
            let k = t.len;
            let expected = formulas::sequence_count_a(n, k);
            let types_ok = t.by_type.iter().all(|(l, c)| {
                let m = cycle::NonnegPartition::new(l.clone()).multiplicities();
                formulas::n_lambda(h, k, &m) == BigInt::from(c.count)
                    && (k == 0 || formulas::np_lambda(h, k, &m) == BigInt::from(c.leftmost_proj))
            });
            v["expected_total"] = num(&expected);
            expected == BigInt::from(t.total) && types_ok
        }
        None => true,
    };
    v["ok"] = json!(ok);
    v
}

fn independence_json(r: &IndependenceReport) -> Value {
    json!({
        "len": r.len,
        "total": num(r.total),
        "marginals": r.marginals.iter().map(num).collect::<Vec<_>>(),
        "subsets_tested": r.subsets_tested,
        "failures": r.failures.iter().map(|f| json!({
            "pos_left": f.pos_left,
            "pos_right": f.pos_right,
            "lhs": num(&f.lhs),
            "rhs": num(&f.rhs),
        })).collect::<Vec<_>>(),
        "independent": r.independent(),
    })
}

fn rational_json(r: &BigRational) -> Value {
    if r.is_integer() {
        num(r.to_integer())
    } else {
        ratio(r)
    }
}

#[allow(clippy::too_many_arguments)]
fn gf(
    spec: &str,
    method: Method,
    len: Option<usize>,
    collapse: bool,
    eval: &[BigRational],
    factor: bool,
    jobs: usize,
    force: bool,
) -> Outcome {
    let q = Quiver::parse(spec)?;
    let f = match method {
        Method::Enum => {
            let cat = load(spec, force)?;
            seqs::tally(&cat, len.unwrap_or(q.vertex_count()), jobs)?.multivariate_gf()
        }
        Method::Recursion => genfun::recursive_f(&q)?,
        Method::Closed => match q.type_key().as_slice() {
            [DynkinType::A(n)] => genfun::closed_form_a(*n),
            [DynkinType::D4] => verify::d4_printed_form(),
            _ => {
                return Err(Failure::Usage(
                    "a closed form exists only for connected A_n and D4".into(),
                ))
            }
        },
    };
    if len.is_some() && !matches!(method, Method::Enum) {
        return Err(Failure::Usage("--len applies only to --method enum".into()));
    }
    let mut v = json!({ "quiver": spec, "gf": f.to_string() });
    if collapse {
        let c = f.collapse();
        v["collapsed"] = json!(c.to_string());
        if !eval.is_empty() {
            if eval.len() != 1 {
                return Err(Error::Arity(1, eval.len()).into());
            }
            v["value"] = rational_json(&c.evaluate(&eval[0]));
        }
    } else if !eval.is_empty() {
        v["value"] = rational_json(&f.evaluate(eval)?);
    }
    if factor {
        let fac = genfun::linear_factor_check(&f)?;
        v["factors"] = json!(fac
            .factors
            .iter()
            .map(|l| l.to_string())
            .collect::<Vec<_>>());
        v["residual"] = json!(fac.residual.to_string());
        v["split_vars"] = json!(fac.split_vars().iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    print_json(&v)
}

fn forests_cmd(n: usize, gf: bool, independence: bool, match_excseq: bool, jobs: usize) -> Outcome {
    let cayley = num_traits::pow(BigInt::from(n + 1), n - 1);
    if gf {
        let enumerated = forests::ascending_gf(n)?;
        let product = forests::ascending_gf_product(n);
        return finish(json!({
            "n": n,
            "ascending_gf": enumerated.to_string(),
            "product": product.to_string(),
            "ok": enumerated == product,
        }));
    }
    if independence {
        let r = forests::descending_independence_report(n)?;
        let mut v = independence_json(&r.independence);
        v["n"] = json!(n);
        v["marginals_probability"] = json!(r.marginals.iter().map(ratio).collect::<Vec<_>>());
        v["expected_probability"] = json!(r.expected.iter().map(ratio).collect::<Vec<_>>());
        v["ok"] = json!(r.ok());
        return finish(v);
    }
    if match_excseq {
        let m = forests::match_excseq_distribution(n, jobs)?;
        return finish(json!({
            "n": n,
            "forests": num(m.forests),
            "sequences": num(m.sequences),
            "injective_clause": m.injective_clause,
            "projective_clause": m.projective_clause,
            "ok": m.ok(),
        }));
    }
    let count = forests::forest_count(n)?;
    finish(json!({
        "n": n,
        "count": num(count),
        "expected": num(&cayley),
        "ok": BigInt::from(count) == cayley,
    }))
}
