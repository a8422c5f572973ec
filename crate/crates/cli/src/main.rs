use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use zpgenera::cpn::{check_eq45, check_eq46, cpn_weights, ResidueTuple};
use zpgenera::cyclotomic::ab_trace;
use zpgenera::fixedpoint::{
    ab_coefficient, cf_residuals, default_order, genus_mod_p, submanifold_genus, thm71_check,
    Route, SubmanifoldData, WeightSet,
};
use zpgenera::rings::Reduce;
use zpgenera::{Error, Genus, GenusKind, GenusSpec, OddPrime, Rational, Residue};

#[derive(Parser)]
#[command(name = "zpgenera", version, about = "Hirzebruch genera of Z/p-manifolds mod p")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Series truncation order (defaults to n + p + 2).
    #[arg(long, global = true)]
    order: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum RouteArg {
    Pseries,
    Ab,
    Trace,
    All,
}

impl RouteArg {
    fn routes(self) -> Vec<Route> {
        match self {
            RouteArg::Pseries => vec![Route::PSeries],
            RouteArg::Ab => vec![Route::Ab],
            RouteArg::Trace => vec![Route::Trace],
            RouteArg::All => Route::ALL.to_vec(),
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Genus mod p from a weight-set file.
    Compute {
        #[arg(long)]
        genus: String,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_enum, default_value_t = RouteArg::Pseries)]
        route: RouteArg,
    },
    /// Conner-Floyd residuals of a weight set.
    CfCheck {
        #[arg(long)]
        genus: String,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Per-point AB coefficient against the cyclotomic trace.
    Ab {
        #[arg(long)]
        genus: String,
        #[arg(long)]
        weights: Option<PathBuf>,
        #[arg(long)]
        p: Option<u64>,
        /// A single weight tuple, comma separated (needs --p).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        residues: Option<Vec<i64>>,
    },
    /// Weight sets of linear actions on CP^n.
    Cpn {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        residues: Option<Vec<i64>>,
        #[arg(long)]
        genus: Option<String>,
        /// Print the weight set as JSON and stop.
        #[arg(long)]
        emit: bool,
    },
    /// Legendre congruences for the elliptic genus.
    Legendre {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        residues: Option<Vec<i64>>,
    },
    /// AB route against p-series plus H-weighted residuals.
    Thm71 {
        #[arg(long)]
        genus: String,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        p: Option<u64>,
        /// Evaluate even when n > p - 2.
        #[arg(long)]
        beyond_guard: bool,
    },
    /// Genus from fixed submanifolds with known genus values.
    Submanifold {
        #[arg(long)]
        genus: String,
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Quick end-to-end checks.
    Selftest,
}

/// Input or evaluation failure, printed with a stable name.
struct Failure {
    name: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { name: e.name().to_string(), message: e.to_string() }
    }
}

fn failure(name: &str, message: impl Into<String>) -> Failure {
    Failure { name: name.to_string(), message: message.into() }
}

struct Outcome {
    report: Map<String, Value>,
    passed: bool,
    /// Always printed as JSON, whatever the requested format.
    json_only: bool,
}

type Run = std::result::Result<Outcome, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let format = if out.json_only { Format::Json } else { cli.format };
            print_report(&out.report, format);
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            let mut report = Map::new();
            report.insert("error".into(), json!({ "name": f.name, "message": f.message }));
            print_report(&report, cli.format);
            eprintln!("error: {}: {}", f.name, f.message);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.verb {
        Verb::Compute { genus, weights, p, route } => {
            let w = load_weights(weights, *p)?;
            compute(genus, &w, *route, cli.order)
        }
        Verb::CfCheck { genus, weights, p } => {
            let w = load_weights(weights, *p)?;
            cf_check(genus, &w, cli.order)
        }
        Verb::Ab { genus, weights, p, residues } => {
            let w = match (weights, residues) {
                (Some(path), None) => load_weights(path, *p)?,
                (None, Some(xs)) => {
                    let p = p.ok_or_else(|| failure("Precondition", "--residues needs --p"))?;
                    WeightSet::new(OddPrime::new(p)?, xs.len(), vec![xs.clone()])?
                }
                _ => return Err(failure("Precondition", "give exactly one of --weights and --residues")),
            };
            ab(genus, &w, cli.order)
        }
        Verb::Cpn { p, n, residues, genus, emit } => {
            let p = OddPrime::new(*p)?;
            let rt = match (n, residues) {
                (Some(n), None) => ResidueTuple::standard(p, *n)?,
                (None, Some(ys)) => ResidueTuple::new(p, ys.clone())?,
                _ => return Err(failure("Precondition", "give exactly one of --n and --residues")),
            };
            let w = cpn_weights(&rt);
            if *emit {
                let report = match serde_json::to_value(&w) {
                    Ok(Value::Object(m)) => m,
                    _ => return Err(failure("Parse", "weight set did not serialize to an object")),
                };
                return Ok(Outcome { report, passed: true, json_only: true });
            }
            let genus = genus.as_deref().ok_or_else(|| failure("Precondition", "cpn needs --genus or --emit"))?;
            cpn(genus, &rt, &w, cli.order)
        }
        Verb::Legendre { p, residues } => {
            let p = OddPrime::new(*p)?;
            match residues {
                Some(ys) => eq45(&ResidueTuple::new(p, ys.clone())?),
                None => eq46(p),
            }
        }
        Verb::Thm71 { genus, weights, p, beyond_guard } => {
            let w = load_weights(weights, *p)?;
            thm71(genus, &w, *beyond_guard, cli.order)
        }
        Verb::Submanifold { genus, weights, p } => submanifold(genus, weights, *p, cli.order),
        Verb::Selftest => selftest(),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> std::result::Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| failure("Io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| failure("Parse", format!("{}: {e}", path.display())))
}

fn check_prime(expected: Option<u64>, actual: OddPrime) -> std::result::Result<(), Failure> {
    match expected {
        Some(p) if p != actual.get() => Err(Error::PrimeMismatch(p, actual.get()).into()),
        _ => Ok(()),
    }
}

fn load_weights(path: &Path, p: Option<u64>) -> std::result::Result<WeightSet, Failure> {
    let w: WeightSet = read_json(path)?;
    check_prime(p, w.p())?;
    Ok(w)
}

fn parse_kind(name: &str) -> std::result::Result<GenusKind, Failure> {
    Ok(name.parse::<GenusKind>()?)
}

fn make_genus(name: &str, n: usize, p: OddPrime, order: Option<usize>) -> std::result::Result<Genus, Failure> {
    let kind = parse_kind(name)?;
    Ok(Genus::new(kind, order.unwrap_or_else(|| default_order(n, p)))?)
}

fn rational_spec(g: Genus) -> std::result::Result<GenusSpec<Rational>, Failure> {
    match g {
        Genus::Rational(s) => Ok(s),
        Genus::Elliptic(e) => Err(Error::UnsupportedKind(e.kind().to_string()).into()),
    }
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.name(), "message": e.to_string() })
}

fn header(verb: &str, genus: Option<&str>, w: &WeightSet) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("verb".into(), json!(verb));
    if let Some(g) = genus {
        m.insert("genus".into(), json!(g));
    }
    m.insert("p".into(), json!(w.p().get()));
    m.insert("n".into(), json!(w.n()));
    m.insert("fixed_points".into(), json!(w.q()));
    m
}

/// Evaluates the requested routes; the flag says whether all successful ones agree.
fn route_results(g: &Genus, w: &WeightSet, routes: &[Route]) -> (Map<String, Value>, Vec<Residue>) {
    let mut results = Map::new();
    let mut values = Vec::new();
    for &route in routes {
        match genus_mod_p(g, w, route) {
            Ok(v) => {
                results.insert(route.name().into(), json!(v.to_string()));
                values.push(v);
            }
            Err(e) => {
                results.insert(route.name().into(), error_value(&e));
            }
        }
    }
    (results, values)
}

fn compute(genus: &str, w: &WeightSet, route: RouteArg, order: Option<usize>) -> Run {
    let g = make_genus(genus, w.n(), w.p(), order)?;
    let routes = route.routes();
    if routes.len() == 1 {
        let v = genus_mod_p(&g, w, routes[0])?;
        let mut report = header("compute", Some(genus), w);
        report.insert("route".into(), json!(routes[0].name()));
        report.insert("result".into(), json!(v.to_string()));
        return Ok(Outcome { report, passed: true, json_only: false });
    }
    let (results, values) = route_results(&g, w, &routes);
    if values.is_empty() {
        return Err(failure("UnsupportedKind", format!("no route can evaluate {genus}")));
    }
    let agree = values.windows(2).all(|v| v[0] == v[1]);
    let mut report = header("compute", Some(genus), w);
    report.insert("route".into(), json!("all"));
    report.insert("results".into(), Value::Object(results));
    report.insert("agree".into(), json!(agree));
    Ok(Outcome { report, passed: agree, json_only: false })
}

fn cf_check(genus: &str, w: &WeightSet, order: Option<usize>) -> Run {
    let g = make_genus(genus, w.n(), w.p(), order)?;
    let res = cf_residuals(&g, w)?;
    let mut residuals = Vec::new();
    let mut vanish = true;
    for (m, r) in res.iter().enumerate() {
        let value = match r {
            Ok(v) => {
                vanish &= v.is_zero();
                json!(v.to_string())
            }
            Err(e) => {
                vanish = false;
                error_value(e)
            }
        };
        residuals.push(json!({ "m": m, "value": value }));
    }
    let mut report = header("cf-check", Some(genus), w);
    report.insert("residuals".into(), Value::Array(residuals));
    report.insert("holds".into(), json!(vanish));
    Ok(Outcome { report, passed: vanish, json_only: false })
}

fn ab(genus: &str, w: &WeightSet, order: Option<usize>) -> Run {
    let kind = parse_kind(genus)?;
    let p = w.p();
    let spec = rational_spec(Genus::new(kind.clone(), order.unwrap_or_else(|| default_order(w.n(), p)))?)?;
    let mut points = Vec::new();
    let mut all = true;
    for pt in w.points() {
        let c = ab_coefficient(&spec, p, pt)?;
        let xs: Vec<i64> = pt.iter().map(|&x| x as i64).collect();
        let t = ab_trace(&kind, p, &xs)?;
        let ok = c.congruent_mod_p(&t, p.get());
        all &= ok;
        points.push(json!({
            "weights": pt,
            "ab_coefficient": c.to_string(),
            "trace": t.to_string(),
            "congruent": ok,
        }));
    }
    let mut report = header("ab", Some(genus), w);
    report.insert("points".into(), Value::Array(points));
    report.insert("holds".into(), json!(all));
    Ok(Outcome { report, passed: all, json_only: false })
}

fn cpn(genus: &str, rt: &ResidueTuple, w: &WeightSet, order: Option<usize>) -> Run {
    let n = rt.n();
    let g = make_genus(genus, n, rt.p(), order)?;
    let expected = match &g {
        Genus::Rational(s) => s.cpn_genus(n)?.to_residue(rt.p())?,
        Genus::Elliptic(s) => s.cpn_genus(n)?.to_residue(rt.p())?,
    };
    let (results, values) = route_results(&g, w, &Route::ALL);
    let holds = !values.is_empty() && values.iter().all(|v| *v == expected);
    let mut report = header("cpn", Some(genus), w);
    report.insert("residues".into(), json!(rt.residues()));
    report.insert("expected".into(), json!(expected.to_string()));
    report.insert("results".into(), Value::Object(results));
    report.insert("holds".into(), json!(holds));
    Ok(Outcome { report, passed: holds, json_only: false })
}

fn eq45(rt: &ResidueTuple) -> Run {
    let rep = check_eq45(rt)?;
    let mut report = Map::new();
    report.insert("verb".into(), json!("legendre"));
    report.insert("form".into(), json!("cpn"));
    report.insert("p".into(), json!(rep.p.get()));
    report.insert("residues".into(), json!(rt.residues()));
    report.insert("m".into(), json!(rep.m));
    report.insert("lhs".into(), json!(rep.lhs.to_string()));
    report.insert("rhs".into(), json!(rep.rhs.to_string()));
    report.insert("cpn_value".into(), json!(rep.cpn_value.to_string()));
    report.insert("exact_identity".into(), json!(rep.exact_identity));
    report.insert("holds".into(), json!(rep.holds));
    Ok(Outcome { report, passed: rep.holds, json_only: false })
}

fn eq46(p: OddPrime) -> Run {
    let rep = check_eq46(p)?;
    let mut report = Map::new();
    report.insert("verb".into(), json!("legendre"));
    report.insert("form".into(), json!("complete"));
    report.insert("p".into(), json!(rep.p.get()));
    report.insert("lhs".into(), json!(rep.lhs.to_string()));
    report.insert("rhs".into(), json!(rep.rhs.to_string()));
    report.insert("holds".into(), json!(rep.holds));
    report.insert("lhs_eps_one".into(), json!(rep.lhs_eps_one.to_string()));
    report.insert("rhs_eps_one".into(), json!(rep.rhs_eps_one.to_string()));
    report.insert("holds_eps_one".into(), json!(rep.holds_eps_one));
    report.insert("up_coefficient".into(), json!(rep.up_coefficient.to_string()));
    report.insert("up_coefficient_matches".into(), json!(rep.up_coefficient_matches));
    let passed = rep.holds && rep.holds_eps_one;
    Ok(Outcome { report, passed, json_only: false })
}

fn thm71(genus: &str, w: &WeightSet, beyond_guard: bool, order: Option<usize>) -> Run {
    let spec = rational_spec(make_genus(genus, w.n(), w.p(), order)?)?;
    let rep = thm71_check(&spec, w, beyond_guard)?;
    let strings = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let residue = |r: zpgenera::Result<zpgenera::ModP>| match r {
        Ok(v) => json!(v.to_string()),
        Err(e) => error_value(&e),
    };
    let mut report = header("thm71", Some(genus), w);
    report.insert("ab_sum".into(), json!(rep.ab_sum.to_string()));
    report.insert("pseries_sum".into(), json!(rep.pseries_sum.to_string()));
    report.insert("cf_sums".into(), json!(strings(&rep.cf_sums)));
    report.insert("h_inverse".into(), json!(strings(&rep.h_inverse)));
    report.insert("rhs".into(), json!(rep.rhs.to_string()));
    report.insert("lhs_mod_p".into(), residue(rep.lhs_residue()));
    report.insert("rhs_mod_p".into(), residue(rep.rhs_residue()));
    report.insert("holds".into(), json!(rep.holds));
    Ok(Outcome { report, passed: rep.holds, json_only: false })
}

fn submanifold(genus: &str, path: &Path, p: Option<u64>, order: Option<usize>) -> Run {
    let data: SubmanifoldData = read_json(path)?;
    check_prime(p, data.p())?;
    let n = data.components().iter().map(|c| c.normal_weights.len()).max().unwrap_or(0);
    let g = make_genus(genus, n, data.p(), order)?;
    let v = submanifold_genus(&g, &data)?;
    let mut report = Map::new();
    report.insert("verb".into(), json!("submanifold"));
    report.insert("genus".into(), json!(genus));
    report.insert("p".into(), json!(data.p().get()));
    report.insert("components".into(), json!(data.components().len()));
    report.insert("result".into(), json!(v.to_string()));
    Ok(Outcome { report, passed: true, json_only: false })
}

fn selftest() -> Run {
    let mut checks = Map::new();
    let mut all = true;
    let mut record = |name: String, ok: zpgenera::Result<bool>| {
        let ok = ok.unwrap_or(false);
        all &= ok;
        checks.insert(name, json!(if ok { "PASS" } else { "FAIL" }));
    };
    for q in [5u64, 7] {
        let p = OddPrime::new(q)?;
        for n in 1..=3usize {
            let w = cpn_weights(&ResidueTuple::standard(p, n)?);
            for (name, want) in [("td", 1), ("euler", n as u64 + 1), ("L", (n % 2 == 0) as u64)] {
                let ok = (|| {
                    let g = Genus::new(name.parse()?, default_order(n, p))?;
                    let mut ok = true;
                    for route in Route::ALL {
                        let v = genus_mod_p(&g, &w, route)?;
                        ok &= v.as_scalar().map(|s| s.value()) == Some(want % q);
                    }
                    Ok(ok)
                })();
                record(format!("{name} CP^{n} p={q}"), ok);
            }
        }
    }
    for q in [3u64, 5, 7] {
        let ok = OddPrime::new(q).and_then(check_eq46).map(|r| r.holds && r.holds_eps_one);
        record(format!("legendre p={q}"), ok);
    }
    let mut report = Map::new();
    report.insert("verb".into(), json!("selftest"));
    report.insert("checks".into(), Value::Object(checks));
    report.insert("holds".into(), json!(all));
    Ok(Outcome { report, passed: all, json_only: false })
}

fn print_report(report: &Map<String, Value>, format: Format) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&Value::Object(report.clone())).expect("serializable"));
        }
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", &Value::Object(report.clone()), &mut lines);
            for line in lines {
                println!("{line}");
            }
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                flatten(&key(k), v, out);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&key(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}
