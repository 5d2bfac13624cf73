use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use condensate::abelian::{subgroup_generated, Subgroup, DEFAULT_SUBGROUP_BOUND};
use condensate::metric::{
    anisotropic_kernel, condense, condense_ribbon, witt_equal, witt_invariant, MetricJson,
    DEFAULT_ISO_BOUND,
};
use condensate::pointed::{
    build_algebra, build_category, classify, nakayama_trace, verify_frobenius,
};
use condensate::qscalars::{
    deligne_admissible_subgroup, deligne_invertible_data, even_braiding_scalar, even_twist_scalar,
    odd_half_power, odd_j_sum, odd_theta_action, taft_braiding_scalar, taft_invertible_data,
    PolyModule, SqrtBranch,
};
use condensate::{Cyclotomic, Error, MetricGroup, RibbonPointedData};

/// Exact computations with metric groups, simple-current condensation and
/// small quantum group scalars. Reports are JSON with sorted keys.
#[derive(Debug, Parser)]
#[command(name = "condensate", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Nondegeneracy, Gauss sum, isotropic and Lagrangian subgroups of a form.
    Analyze(FormArgs),
    /// Condense a form (or ribbon data, if `chi` is given) by a subgroup.
    Condense(SubgroupArgs),
    /// Build the simple-current algebra on a subgroup and verify its Frobenius structure.
    Algebra(SubgroupArgs),
    /// Full classification ladder for the algebra on a subgroup.
    Classify(SubgroupArgs),
    /// Anisotropic kernel and Witt invariant of a nondegenerate form.
    WittClass(FormArgs),
    /// Decide Witt equivalence of two nondegenerate forms.
    WittEqual(PairArgs),
    /// Recompute a closed-form scalar from its defining sum.
    VerifyAppendix(AppendixArgs),
    /// Invertible data and admissible subgroups of a Deligne product.
    Deligne(DeligneArgs),
    /// Invertible data of the Taft-type algebra `D_n`.
    Taft(TaftArgs),
}

#[derive(Debug, Args)]
struct Bounds {
    /// Maximum number of subgroups to enumerate.
    #[arg(long, env = "CONDENSATE_SUBGROUP_BOUND", default_value_t = DEFAULT_SUBGROUP_BOUND)]
    subgroup_bound: usize,
    /// Maximum group order for the isometry search.
    #[arg(long, env = "CONDENSATE_ISO_BOUND", default_value_t = DEFAULT_ISO_BOUND)]
    iso_bound: usize,
}

#[derive(Debug, Args)]
struct FormArgs {
    /// Form as a file path, `-` for stdin, or inline JSON.
    #[arg(default_value = "-")]
    input: String,
    #[command(flatten)]
    bounds: Bounds,
}

#[derive(Debug, Args)]
struct SubgroupArgs {
    /// Form as a file path, `-` for stdin, or inline JSON.
    #[arg(default_value = "-")]
    input: String,
    /// Subgroup generator as comma-separated coordinates; repeatable.
    #[arg(long = "gen", value_name = "COORDS")]
    generators: Vec<String>,
}

#[derive(Debug, Args)]
struct PairArgs {
    first: String,
    second: String,
    #[command(flatten)]
    bounds: Bounds,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Case {
    EvenBraiding,
    EvenTwist,
    OddTheta,
    Taft,
}

#[derive(Debug, Args)]
struct AppendixArgs {
    #[arg(long, value_enum)]
    case: Case,
    #[arg(long)]
    param: u64,
}

#[derive(Debug, Args)]
struct DeligneArgs {
    /// The values of `p`, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    p: Vec<u64>,
}

#[derive(Debug, Args)]
struct TaftArgs {
    #[arg(long)]
    n: u64,
}

enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = Result<Value, Failure>;

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else if input.trim_start().starts_with('{') {
        Ok(input.to_string())
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| Failure::Usage(format!("cannot read {input}: {e}")))
    }
}

fn parse_form(input: &str) -> Result<MetricJson, Failure> {
    let text = read_input(input)?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("invalid form JSON: {e}")))
}

fn parse_subgroup(m: &MetricGroup, generators: &[String]) -> Result<Subgroup, Failure> {
    let rank = m.group().rank();
    let mut gens = Vec::with_capacity(generators.len());
    for g in generators {
        let coords: Vec<u64> = g
            .split(',')
            .map(|c| c.trim().parse::<u64>())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Usage(format!("invalid generator {g:?}: {e}")))?;
        if coords.len() != rank {
            return Err(Failure::Usage(format!(
                "generator {g:?} has {} coordinates, the group has rank {rank}",
                coords.len()
            )));
        }
        gens.push(coords);
    }
    Ok(subgroup_generated(m.group(), &gens)?)
}

fn cyclo(z: &Cyclotomic) -> Value {
    Value::String(z.to_string())
}

fn subgroup_json(s: &Subgroup) -> Value {
    json!({"order": s.order(), "generators": s.generators()})
}

fn form_json(m: &MetricGroup) -> Value {
    serde_json::to_value(MetricJson::from(m)).expect("forms serialize")
}

fn ribbon_json(r: &RibbonPointedData) -> Value {
    serde_json::to_value(MetricJson::from(r)).expect("forms serialize")
}

fn analyze(args: &FormArgs) -> Outcome {
    let form = parse_form(&args.input)?;
    let m = form.metric()?;
    let isotropic = m.isotropic_subgroups(args.bounds.subgroup_bound)?;
    let nondegenerate = m.is_nondegenerate();
    let lagrangian: Vec<Value> = isotropic
        .iter()
        .filter(|h| nondegenerate && h.order() * h.order() == m.order())
        .map(subgroup_json)
        .collect();
    Ok(json!({
        "form": form_json(&m),
        "order": m.order(),
        "nondegenerate": nondegenerate,
        "radical": subgroup_json(&m.radical()),
        "gauss_sum": cyclo(&m.gauss_sum()?),
        "isotropic_subgroups": isotropic.iter().map(subgroup_json).collect::<Vec<_>>(),
        "lagrangian_subgroups": lagrangian,
    }))
}

fn condense_cmd(args: &SubgroupArgs) -> Outcome {
    let form = parse_form(&args.input)?;
    let m = form.metric()?;
    let h = parse_subgroup(&m, &args.generators)?;
    let result = match form.ribbon()? {
        Some(r) => condense_ribbon(&r, &h)?,
        None => condense(&m, &h)?,
    };
    let condensed = match &result.condensed_ribbon {
        Some(r) => ribbon_json(r),
        None => form_json(&result.condensed),
    };
    let coset_map: Vec<Value> = result
        .perp
        .elements()
        .into_iter()
        .map(|g| json!([g, result.coset_map.map(&g)]))
        .collect();
    Ok(json!({
        "subgroup": subgroup_json(&result.subgroup),
        "perp": subgroup_json(&result.perp),
        "condensed": condensed,
        "coset_map": coset_map,
        "input_nondegenerate": result.input_nondegenerate,
        "flags": result.flags,
    }))
}

fn algebra_cmd(args: &SubgroupArgs) -> Outcome {
    let form = parse_form(&args.input)?;
    let m = form.metric()?;
    let h = parse_subgroup(&m, &args.generators)?;
    let cat = build_category(&m)?;
    let alg = build_algebra(&cat, &h)?;
    let report = verify_frobenius(&alg);
    let delta: Vec<Value> = alg
        .delta_terms()?
        .iter()
        .map(|t| {
            json!({
                "source": t.source,
                "left": t.left,
                "right": t.right,
                "coefficient": cyclo(&t.coefficient),
            })
        })
        .collect();
    Ok(json!({
        "subgroup": subgroup_json(&alg.subgroup),
        "psi": alg.psi,
        "delta": delta,
        "frobenius": report,
        "nakayama_trace": cyclo(&nakayama_trace(&alg)),
        "pass": report.all_pass(),
    }))
}

fn classify_cmd(args: &SubgroupArgs) -> Outcome {
    let form = parse_form(&args.input)?;
    let m = form.metric()?;
    let ribbon = form.ribbon()?;
    let h = parse_subgroup(&m, &args.generators)?;
    let cat = build_category(&m)?;
    let c = classify(&cat, ribbon.as_ref(), &h)?;
    Ok(json!({
        "subgroup": subgroup_json(&h),
        "ftc": c.ftc,
        "frobenius": c.frobenius,
        "special": c.special,
        "symmetric": c.symmetric,
        "ribbon_local_modules": c.ribbon_local_modules,
        "mtc": c.mtc,
        "nondegenerate": c.nondegenerate,
        "lagrangian": c.lagrangian,
        "nakayama_trace": cyclo(&c.nakayama_trace),
        "report": c.report,
        "condensed": form_json(&c.condensation.condensed),
    }))
}

fn witt_class(args: &FormArgs) -> Outcome {
    let m = parse_form(&args.input)?.metric()?;
    let kernel = anisotropic_kernel(&m)?;
    let inv = witt_invariant(&m)?;
    Ok(json!({
        "anisotropic_kernel": form_json(&kernel),
        "order": inv.order,
        "sigma": cyclo(&inv.sigma),
    }))
}

fn witt_equal_cmd(args: &PairArgs) -> Outcome {
    let a = parse_form(&args.first)?.metric()?;
    let b = parse_form(&args.second)?.metric()?;
    let equal = witt_equal(&a, &b, args.bounds.iso_bound)?;
    Ok(json!({"witt_equal": equal}))
}

fn verify_appendix(args: &AppendixArgs) -> Outcome {
    let p = args.param;
    let report = |value: Value, expected: Value, extra: Value| {
        let pass = value == expected;
        let mut out = json!({"value": value, "expected": expected, "pass": pass});
        if let (Value::Object(o), Value::Object(e)) = (&mut out, extra) {
            o.extend(e);
        }
        out
    };
    let out = match args.case {
        Case::EvenBraiding => {
            let value = even_braiding_scalar(p)?;
            let expected = Cyclotomic::root_of_unity(4, p as i64)?;
            report(cyclo(&value), cyclo(&expected), json!({}))
        }
        Case::EvenTwist => {
            let value = even_twist_scalar(p)?;
            let expected = -Cyclotomic::root_of_unity(4, p as i64)?;
            report(cyclo(&value), cyclo(&expected), json!({}))
        }
        Case::OddTheta => {
            let relations = PolyModule::new(p)?.check_relations()?;
            let value: Vec<Value> = odd_theta_action(p)?.iter().map(cyclo).collect();
            let expected: Vec<Value> = (0..p).map(|_| Value::String("1".into())).collect();
            let half = odd_half_power(p, SqrtBranch::Principal)?;
            let j_sum = odd_j_sum(p, SqrtBranch::Principal)?;
            let reduced = &Cyclotomic::one(half.order()) + &half.scale(2);
            report(
                Value::Array(value),
                Value::Array(expected),
                json!({
                    "relations": relations,
                    "j_sum": cyclo(&j_sum),
                    "j_sum_reduces": j_sum == reduced,
                }),
            )
        }
        Case::Taft => {
            let mut value = Vec::new();
            let mut expected = Vec::new();
            for s in 0..p {
                value.push(cyclo(&taft_braiding_scalar(p, s)?));
                let si = s as i64;
                expected.push(cyclo(&Cyclotomic::root_of_unity(p, -si * si)?));
            }
            report(Value::Array(value), Value::Array(expected), json!({}))
        }
    };
    Ok(out)
}

fn deligne(args: &DeligneArgs) -> Outcome {
    let data = deligne_invertible_data(&args.p)?;
    let set = deligne_admissible_subgroup(&args.p)?;
    Ok(json!({
        "data": ribbon_json(&data),
        "admissible_set": set.elements,
        "is_subgroup": set.is_subgroup,
        "subgroups": set.subgroups.iter().map(subgroup_json).collect::<Vec<_>>(),
    }))
}

fn taft(args: &TaftArgs) -> Outcome {
    let data = taft_invertible_data(args.n)?;
    let base = data.base();
    let isotropic = base.isotropic_subgroups(DEFAULT_SUBGROUP_BOUND)?;
    Ok(json!({
        "data": ribbon_json(&data),
        "nondegenerate": base.is_nondegenerate(),
        "isotropic_subgroups": isotropic.iter().map(subgroup_json).collect::<Vec<_>>(),
    }))
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Condense(a) => condense_cmd(a),
        Command::Algebra(a) => algebra_cmd(a),
        Command::Classify(a) => classify_cmd(a),
        Command::WittClass(a) => witt_class(a),
        Command::WittEqual(a) => witt_equal_cmd(a),
        Command::VerifyAppendix(a) => verify_appendix(a),
        Command::Deligne(a) => deligne(a),
        Command::Taft(a) => taft(a),
    }
}

fn emit(value: &Value) {
    println!(
        "{}",
        serde_json::to_string(value).expect("values serialize")
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let pass = value.get("pass").and_then(Value::as_bool).unwrap_or(true);
            emit(&value);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Domain(e)) => {
            emit(&json!({"error": {"code": e.code(), "detail": e.to_string()}}));
            ExitCode::from(1)
        }
        Err(Failure::Usage(detail)) => {
            emit(&json!({"error": {"code": "UsageError", "detail": detail}}));
            ExitCode::from(2)
        }
    }
}
