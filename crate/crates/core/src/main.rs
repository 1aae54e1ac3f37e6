use bivariant::catcore::{load_category, validate_category, Category, MorId};
use bivariant::dsl::{parse_statement, DslError, Evaluator, Span, Statement};
use bivariant::fixtures;
use bivariant::suite::{
    check_additivity, check_bivariant_axioms, check_grothendieck, check_orientation_axioms, Basis, Bounds,
    CheckReport,
};
use bivariant::targets::Fiberwise;
use bivariant::theory::Theory;
use bivariant::transform;
use bivariant::universal::Universal;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "bivariant", version, about = "Universal bivariant theories over finite categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a category document for well-formedness.
    Validate(Common),
    /// List canonical generators of the universal group over a context.
    Generators {
        #[command(flatten)]
        common: Common,
        /// Context morphism `X → Y`.
        #[arg(long)]
        context: String,
        #[command(flatten)]
        limits: Limits,
    },
    /// Evaluate DSL statements, one per line.
    Eval {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = TargetName::Universal)]
        target: TargetName,
    },
    /// Apply the universal transformation into a target.
    Gamma {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = TargetName::Fiberwise)]
        target: TargetName,
        /// Transform every generator over this context.
        #[arg(long, conflicts_with = "text")]
        context: Option<String>,
        /// Transform one universal expression.
        #[arg(long)]
        text: Option<String>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Run the axiom suites against a theory.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = TargetName::Universal)]
        target: TargetName,
        #[command(flatten)]
        limits: Limits,
        /// Linearity coefficients range over [-N, N].
        #[arg(long, default_value_t = 2)]
        coeff_range: i64,
        /// Per-axiom instance cap.
        #[arg(long, default_value_t = 10_000, conflicts_with = "exhaustive")]
        cap: usize,
        /// Check every instance.
        #[arg(long)]
        exhaustive: bool,
        /// Sample capped spaces with this seed instead of striding.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Suite::Bivariant, Suite::Orientation, Suite::Grothendieck])]
        suites: Vec<Suite>,
    },
    /// Write a built-in category document.
    Genfixture {
        #[arg(value_enum)]
        which: Fixture,
        /// Output file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    category: PathBuf,
    /// Use the fibered section embedded in the document.
    #[arg(long)]
    fibered: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct Limits {
    /// Largest source object size; `none` lifts the bound.
    #[arg(long, default_value = "2")]
    max_source: String,
    #[arg(long, default_value_t = 1)]
    max_bundles: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// File of statements.
    #[arg(long)]
    expr: Option<PathBuf>,
    /// A single statement.
    #[arg(long)]
    text: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TargetName {
    Universal,
    Fiberwise,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bivariant,
    Orientation,
    Grothendieck,
    Additivity,
}

#[derive(Clone, Copy, ValueEnum)]
enum Fixture {
    Fs4,
    Diamond,
}

/// A message and the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn schema(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn eval(message: impl ToString) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }

    fn dsl(e: &DslError, line: &str) -> Self {
        let code = if matches!(e, DslError::Parse { .. }) { 2 } else { 3 };
        let span = match e {
            DslError::Parse { line, col, .. } => Some((*line, *col, None)),
            DslError::Resolve { span, .. } | DslError::Context { span, .. } | DslError::Eval { span, .. } => {
                Some((span.line, span.col, Some(*span)))
            }
        };
        let mut message = e.to_string();
        if let Some((_, col, span)) = span {
            message.push_str(&format!("\n  {line}\n  {}", caret(line, col, span)));
        }
        Failure { code, message }
    }
}

fn caret(line: &str, col: usize, span: Option<Span>) -> String {
    let width = span
        .and_then(|s| line.get(s.start..s.end))
        .map(|s| s.chars().count())
        .unwrap_or(1)
        .max(1);
    format!("{}{}", " ".repeat(col.saturating_sub(1)), "^".repeat(width))
}

type Outcome = Result<bool, Failure>;

fn load(common: &Common) -> Result<Category, Failure> {
    let text = std::fs::read_to_string(&common.category)
        .map_err(|e| Failure::schema(format!("{}: {e}", common.category.display())))?;
    let cat = load_category(&text).map_err(|e| Failure::schema(format!("{}: {e}", common.category.display())))?;
    Ok(if common.fibered { cat } else { cat.without_fibered() })
}

fn bounds(limits: &Limits) -> Result<Bounds, Failure> {
    let max_source = match limits.max_source.as_str() {
        "none" => None,
        s => Some(
            s.parse()
                .map_err(|_| Failure::schema(format!("--max-source: expected a number or `none`, got `{s}`")))?,
        ),
    };
    Ok(Bounds {
        max_source,
        max_bundles: limits.max_bundles,
        ..Bounds::default()
    })
}

fn print(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn emit(format: Format, text: String) {
    if format == Format::Text {
        print!("{text}");
    }
}

fn mor(cat: &Category, name: &str) -> Result<MorId, Failure> {
    cat.morphism_by_name(name).map_err(Failure::eval)
}

fn validate(common: &Common) -> Outcome {
    let cat = load(common)?;
    let report = validate_category(&cat);
    print(common.format, report.to_string(), json!(report));
    Ok(report.is_valid())
}

fn generators(common: &Common, context: &str, limits: &Limits) -> Outcome {
    let cat = load(common)?;
    let b = bounds(limits)?;
    let u = Universal::new(&cat);
    let ctx = mor(&cat, context)?;
    let gens = u.generators(ctx, b.max_source, b.max_bundles).map_err(Failure::eval)?;
    let rendered: Vec<String> = gens.iter().map(|c| u.render_cycle(c)).collect();
    let mut text = format!("{} generators over {}\n", gens.len(), context);
    for r in &rendered {
        text.push_str(&format!("  {r}\n"));
    }
    print(
        common.format,
        text,
        json!({ "context": context, "count": gens.len(), "generators": rendered }),
    );
    Ok(true)
}

fn statements(input: &Input) -> Result<Vec<(usize, String)>, Failure> {
    let text = match (&input.expr, &input.text) {
        (Some(path), _) => {
            std::fs::read_to_string(path).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))?
        }
        (None, Some(t)) => t.clone(),
        (None, None) => unreachable!("clap requires one input"),
    };
    Ok(text
        .lines()
        .enumerate()
        .filter(|(_, l)| {
            let l = l.trim();
            !l.is_empty() && !l.starts_with('#')
        })
        .map(|(i, l)| (i + 1, l.to_string()))
        .collect())
}

fn eval_with<T: Theory>(t: &T, format: Format, lines: &[(usize, String)]) -> Outcome {
    let ev = Evaluator::new(t);
    let mut ok = true;
    let mut rows = Vec::new();
    for (n, line) in lines {
        let at = |e: DslError| {
            let mut f = Failure::dsl(&e, line);
            f.message = format!("line {n}: {}", f.message);
            f
        };
        let stmt = parse_statement(line).map_err(at)?;
        match &stmt {
            Statement::Expr(e) => {
                let v = ev.eval(e).map_err(at)?;
                let r = ev.render(&v);
                emit(format, format!("{e}\n  = {r}\n"));
                rows.push(json!({ "line": n, "expr": e.to_string(), "value": r }));
            }
            Statement::Equation(a, b) => {
                let (va, vb) = (ev.eval(a).map_err(at)?, ev.eval(b).map_err(at)?);
                let holds = ev.equal(&va, &vb, a).map_err(at)?;
                ok &= holds;
                let (ra, rb) = (ev.render(&va), ev.render(&vb));
                emit(format, format!(
                    "{stmt}\n  {}: {ra} {} {rb}\n",
                    if holds { "holds" } else { "FAILS" },
                    if holds { "==" } else { "!=" }
                ));
                rows.push(json!({ "line": n, "expr": stmt.to_string(), "lhs": ra, "rhs": rb, "holds": holds }));
            }
        }
    }
    if format == Format::Json {
        print(format, String::new(), json!(rows));
    }
    Ok(ok)
}

fn eval(common: &Common, input: &Input, target: TargetName) -> Outcome {
    let lines = statements(input)?;
    let cat = load(common)?;
    match target {
        TargetName::Universal => eval_with(&Universal::new(&cat), common.format, &lines),
        TargetName::Fiberwise => eval_with(&fiberwise(&cat)?, common.format, &lines),
    }
}

fn fiberwise(cat: &Category) -> Result<Fiberwise<'_>, Failure> {
    Fiberwise::new(cat).map_err(Failure::schema)
}

fn gamma_with<T: Theory>(t: &T, common: &Common, context: Option<&str>, text: Option<&str>, limits: &Limits) -> Outcome {
    let cat = t.category();
    match (context, text) {
        (Some(ctx), _) => {
            let b = bounds(limits)?;
            let u = Universal::new(cat);
            let ctx_id = mor(cat, ctx)?;
            let mut out = String::new();
            let mut rows = Vec::new();
            for c in u.generators(ctx_id, b.max_source, b.max_bundles).map_err(Failure::eval)? {
                let v = transform::gamma_cycle(t, ctx_id, &c, transform::Fold::LeftToRight).map_err(Failure::eval)?;
                let (g, r) = (u.render_cycle(&c), t.render(&v));
                out.push_str(&format!("{g} ↦ {r}\n"));
                rows.push(json!({ "generator": g, "value": r }));
            }
            print(common.format, out, json!({ "context": ctx, "target": t.name(), "values": rows }));
            Ok(true)
        }
        (None, Some(text)) => {
            let line = format!("gamma({text})");
            eval_with(t, common.format, &[(1, line)])
        }
        (None, None) => Err(Failure::schema("gamma needs --context or --text")),
    }
}

fn gamma(common: &Common, target: TargetName, context: Option<&str>, text: Option<&str>, limits: &Limits) -> Outcome {
    let cat = load(common)?;
    match target {
        TargetName::Universal => gamma_with(&Universal::new(&cat), common, context, text, limits),
        TargetName::Fiberwise => gamma_with(&fiberwise(&cat)?, common, context, text, limits),
    }
}

fn check_with<T>(t: &T, suites: &[Suite], b: &Bounds) -> Result<CheckReport, Failure>
where
    T: Basis + Sync,
    T::Value: Send + Sync,
{
    let mut report: Option<CheckReport> = None;
    for s in suites {
        let r = match s {
            Suite::Bivariant => check_bivariant_axioms(t, b),
            Suite::Orientation => check_orientation_axioms(t, b),
            Suite::Grothendieck => check_grothendieck(t, b),
            Suite::Additivity => check_additivity(t, b),
        }
        .map_err(Failure::eval)?;
        match &mut report {
            None => report = Some(r),
            Some(acc) => acc.merge(r),
        }
    }
    report.ok_or_else(|| Failure::schema("no suites selected"))
}

fn check(common: &Common, target: TargetName, b: Bounds, suites: &[Suite]) -> Outcome {
    let cat = load(common)?;
    let report = match target {
        TargetName::Universal => check_with(&Universal::new(&cat), suites, &b)?,
        TargetName::Fiberwise => check_with(&fiberwise(&cat)?, suites, &b)?,
    };
    let doc = json!({
        "bounds": {
            "max_source": b.max_source,
            "max_bundles": b.max_bundles,
            "coeff_range": b.coeff_range,
            "instance_cap": b.instance_cap,
            "seed": b.seed,
        },
        "report": report,
    });
    print(common.format, report.to_string(), doc);
    Ok(report.all_pass())
}

fn genfixture(which: Fixture, out: Option<&PathBuf>) -> Outcome {
    let doc = match which {
        Fixture::Fs4 => fixtures::fs4_document(),
        Fixture::Diamond => fixtures::diamond_document(),
    };
    let text = doc.to_json();
    match out {
        Some(path) => std::fs::write(path, text + "\n").map_err(|e| Failure::schema(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Validate(common) => validate(common),
        Command::Generators { common, context, limits } => generators(common, context, limits),
        Command::Eval { common, input, target } => eval(common, input, *target),
        Command::Gamma {
            common,
            target,
            context,
            text,
            limits,
        } => gamma(common, *target, context.as_deref(), text.as_deref(), limits),
        Command::Check {
            common,
            target,
            limits,
            coeff_range,
            cap,
            exhaustive,
            seed,
            suites,
        } => {
            let b = Bounds {
                coeff_range: *coeff_range,
                instance_cap: (!exhaustive).then_some(*cap),
                seed: *seed,
                ..bounds(limits)?
            };
            check(common, *target, b, suites)
        }
        Command::Genfixture { which, out } => genfixture(*which, out.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
