//! Command-line driver: every library operation over the `n q` truth-table
//! text format.
//!
//! Exit codes: 0 on success (and predicate true), 1 when a checked
//! predicate is false, 2 on usage or parse errors. Malformed input never
//! panics.

use clap::{Args, Parser, Subcommand, ValueEnum};
use gbent::alpha::{self, solve_alpha};
use gbent::conditions;
use gbent::construct::{self, LevelSignChoice, PermutationTable};
use gbent::cyclotomic::CyclotomicRing;
use gbent::decompose::{to_components, to_fform};
use gbent::function::MAX_N;
use gbent::gwht::{self, GbentMode, GwhtSpectrum};
use gbent::search::{
    enumerate, enumerate_range, merge, necessity_probe, ordinal_count, shard, CensusConfig,
    CensusReport, PredicateKind, SearchMode, SearchSpace, ShardRange,
};
use gbent::wht::fwht;
use gbent::{BooleanFunction, GeneralizedFunction};
use num_complex::Complex64;
use std::fs;
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "gbent",
    about = "Spectral analysis and construction of generalized bent functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Walsh-Hadamard transform of a Boolean (q = 2) truth table.
    Wht(TableInput),
    /// Generalized Walsh-Hadamard transform of a truth table.
    Gwht(GwhtArgs),
    /// Decide whether a function is generalized bent.
    CheckGbent(CheckGbentArgs),
    /// Print the component decompositions of a function.
    Decompose(TableInput),
    /// Solve the Hadamard system for the expansion coefficients.
    Alpha(AlphaArgs),
    /// Evaluate a gbent condition predicate on a function.
    CheckConditions(CheckConditionsArgs),
    /// Generate a gbent function from one of the construction recipes.
    Construct(ConstructArgs),
    /// Census or necessity probe over a function space.
    Search(SearchArgs),
}

#[derive(Args)]
struct TableInput {
    /// Truth-table file ("n q" header then 2^n values); stdin when absent.
    file: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Route {
    Direct,
    Bucketed,
    Linear,
    Implicit,
}

#[derive(Args)]
struct GwhtArgs {
    #[command(flatten)]
    input: TableInput,
    /// Computation route; all routes agree coefficient by coefficient.
    #[arg(long, value_enum, default_value = "bucketed")]
    route: Route,
    /// Print exact coefficient vectors, floats, or both.
    #[arg(long, value_enum, default_value = "both")]
    mode: OutputMode,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Exact,
    Float,
    Both,
}

#[derive(Args)]
struct CheckGbentArgs {
    #[command(flatten)]
    input: TableInput,
    /// Verdict backend.
    #[arg(long, value_enum, default_value = "exact")]
    mode: VerdictMode,
    /// Tolerance on ||H(u)| - 1| for the float backend.
    #[arg(long, default_value_t = gwht::FLOAT_EPSILON)]
    epsilon: f64,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum VerdictMode {
    Exact,
    Float,
}

#[derive(Args)]
struct AlphaArgs {
    /// Modulus q (even).
    #[arg(long)]
    q: u32,
    /// Basis exponent: the system has 2^p unknowns.
    #[arg(long)]
    p: u32,
}

#[derive(Args)]
struct CheckConditionsArgs {
    #[command(flatten)]
    input: TableInput,
    /// Predicate to evaluate on the canonical representation.
    #[arg(long)]
    predicate: String,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Recipe {
    Trivial,
    Gmmf,
    Select,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    recipe: Recipe,
    /// Modulus q; required for the trivial recipe.
    #[arg(long)]
    q: Option<u32>,
    /// Bent carrier (q = 2 truth table file): `a` for trivial/select.
    #[arg(long)]
    bent: Option<String>,
    /// Level-1 component a_0 (q = 2 truth table file) for select.
    #[arg(long)]
    a0: Option<String>,
    /// Level signs for select, e.g. "-+" (p = len + 1, q = 2^{p+1}).
    #[arg(long, default_value = "")]
    signs: String,
    /// Permutation file for gmmf: 2^n whitespace-separated image values.
    #[arg(long)]
    sigma: Option<String>,
    /// Truth-table file of the inner function g for gmmf.
    #[arg(long)]
    g: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    /// Walk the whole space (subject to the size cap).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Number of seeded random samples.
    #[arg(long)]
    samples: Option<u64>,
    /// Sampling seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Split the walk into this many shards.
    #[arg(long, default_value_t = 1)]
    shards: u64,
    /// Run only this shard (0-based) and report its partial census.
    #[arg(long)]
    shard_index: Option<u64>,
    /// Predicates to census (comma separated); defaults to all applicable.
    #[arg(long, value_delimiter = ',')]
    predicates: Vec<String>,
    /// Run the necessity probe instead of a predicate census.
    #[arg(long)]
    probe: bool,
    /// Write the report as JSON to this path.
    #[arg(long)]
    out: Option<String>,
    /// Merge previously written shard reports instead of searching.
    #[arg(long, num_args = 1.., conflicts_with_all = ["q", "n"])]
    merge: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Wht(input) => cmd_wht(&read_table(&input)?),
        Command::Gwht(args) => cmd_gwht(args),
        Command::CheckGbent(args) => cmd_check_gbent(args),
        Command::Decompose(input) => cmd_decompose(&read_table(&input)?),
        Command::Alpha(args) => cmd_alpha(args),
        Command::CheckConditions(args) => cmd_check_conditions(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Search(args) => cmd_search(args),
    }
}

fn read_input(input: &TableInput) -> Result<String, String> {
    match &input.file {
        Some(path) if path != "-" => {
            fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("cannot read stdin: {e}"))?;
            Ok(text)
        }
    }
}

fn read_table(input: &TableInput) -> Result<GeneralizedFunction, String> {
    GeneralizedFunction::parse(&read_input(input)?).map_err(|e| e.to_string())
}

fn read_boolean(path: &str) -> Result<BooleanFunction, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let f = GeneralizedFunction::parse(&text).map_err(|e| e.to_string())?;
    f.as_boolean()
        .ok_or_else(|| format!("{path}: expected a q = 2 table, got q = {}", f.q()))
}

fn format_complex(z: Complex64) -> String {
    format!("{:+.12e} {:+.12e}i", z.re, z.im)
}

fn cmd_wht(f: &GeneralizedFunction) -> Result<ExitCode, String> {
    let boolean = f
        .as_boolean()
        .ok_or_else(|| format!("wht expects a q = 2 table, got q = {}", f.q()))?;
    let spectrum = fwht(&boolean);
    println!("n {}  normalization 2^-{}/2", boolean.n(), boolean.n());
    for (u, c) in spectrum.coeffs().iter().enumerate() {
        println!("{u} {c}");
    }
    if boolean.n() % 2 == 0 {
        println!("bent: {}", spectrum.is_bent());
    } else {
        println!("semibent: {}", spectrum.is_semibent().map_err(|e| e.to_string())?);
    }
    Ok(ExitCode::SUCCESS)
}

fn compute_route(f: &GeneralizedFunction, route: Route) -> Result<GwhtSpectrum, String> {
    let spectrum = match route {
        Route::Direct => gwht::gwht_direct(f),
        Route::Bucketed => gwht::gwht_bucketed(f),
        Route::Linear => alpha::gwht_linear(&to_fform(f)),
        Route::Implicit => alpha::gwht_implicit_oracle(&to_components(f)),
    };
    spectrum.map_err(|e| e.to_string())
}

fn cmd_gwht(args: GwhtArgs) -> Result<ExitCode, String> {
    let f = read_table(&args.input)?;
    let spectrum = compute_route(&f, args.route)?;
    println!(
        "n {}  q {}  exact coefficients unnormalized, floats scaled by 2^-{}/2",
        f.n(),
        f.q(),
        f.n()
    );
    for u in 0..f.len() {
        let mut line = format!("{u}");
        if matches!(args.mode, OutputMode::Exact | OutputMode::Both) {
            line.push_str(&format!(" exact {:?}", spectrum.exact()[u].coeffs()));
        }
        if matches!(args.mode, OutputMode::Float | OutputMode::Both) {
            line.push_str(&format!(" float {}", format_complex(spectrum.float()[u])));
        }
        println!("{line}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_gbent(args: CheckGbentArgs) -> Result<ExitCode, String> {
    let f = read_table(&args.input)?;
    let report = match args.mode {
        VerdictMode::Exact => gwht::is_gbent(&f, GbentMode::Exact).map_err(|e| e.to_string())?,
        VerdictMode::Float => gwht::is_gbent_float(&f, args.epsilon),
    };
    println!(
        "gbent: {}  worst u: {}  worst ||H|-1|: {:.3e}",
        report.gbent, report.worst_u, report.worst_deviation
    );
    Ok(predicate_code(report.gbent))
}

fn cmd_decompose(f: &GeneralizedFunction) -> Result<ExitCode, String> {
    let d = to_components(f);
    println!("base-2 components (f = sum 2^i a_i):");
    for (i, c) in d.components().iter().enumerate() {
        print!("a_{i}:\n{}", c.lift(2).map_err(|e| e.to_string())?.serialize());
    }
    let rep = to_fform(f);
    println!("half-modulus form (f = (q/2) a + sum 2^i a_i, p = {}):", rep.p());
    print!("a:\n{}", rep.a().lift(2).map_err(|e| e.to_string())?.serialize());
    for (i, c) in rep.low().iter().enumerate() {
        print!("a_{i}:\n{}", c.lift(2).map_err(|e| e.to_string())?.serialize());
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_alpha(args: AlphaArgs) -> Result<ExitCode, String> {
    let alpha = solve_alpha(args.q, args.p).map_err(|e| e.to_string())?;
    let ring = CyclotomicRing::new(args.q).map_err(|e| e.to_string())?;
    println!(
        "q {}  p {}  2^p alpha_i as coefficients of 1, zeta, ..., zeta^{}",
        args.q,
        args.p,
        ring.degree() - 1
    );
    for (i, (scaled, float)) in alpha.scaled().iter().zip(alpha.float()).enumerate() {
        println!(
            "alpha_{i} = {:?} / {}  ~ {}",
            scaled.coeffs(),
            1u64 << args.p,
            format_complex(*float)
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_conditions(args: CheckConditionsArgs) -> Result<ExitCode, String> {
    let f = read_table(&args.input)?;
    let kind = PredicateKind::from_name(&args.predicate).ok_or_else(|| {
        format!(
            "unknown predicate {:?}; expected one of {}",
            args.predicate,
            PredicateKind::ALL.map(|k| k.name()).join(", ")
        )
    })?;
    let report = match kind {
        PredicateKind::Q4 => conditions::check_q4(&to_components(&f)),
        PredicateKind::Q8Star => conditions::check_q8_star(&to_components(&f)),
        PredicateKind::Q8StarStar => conditions::check_q8_starstar(&to_components(&f)),
        PredicateKind::Triangle => conditions::check_triangle(&to_fform(&f)),
        PredicateKind::Square => conditions::check_square(&to_fform(&f)),
        PredicateKind::Recursive => conditions::check_recursive_form(&to_fform(&f)),
        PredicateKind::Product => conditions::check_product_form(&to_fform(&f)),
        PredicateKind::Certify => conditions::certify_sufficient(&to_fform(&f)),
    }
    .map_err(|e| e.to_string())?;
    println!("{}: {}", kind.name(), report.overall);
    if let Some(witness) = &report.failure {
        println!("first failure at u = {}: {}", witness.u, witness.reason);
    } else {
        let rows: Vec<String> = report
            .per_point
            .iter()
            .filter_map(|p| p.matched_row.map(|r| format!("{}{r}", if p.sign < 0 { "-" } else { "+" })))
            .collect();
        if !rows.is_empty() {
            println!("matched rows: {}", rows.join(" "));
        }
    }
    Ok(predicate_code(report.overall))
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode, String> {
    let f = match args.recipe {
        Recipe::Trivial => {
            let q = args.q.ok_or("trivial recipe needs --q")?;
            let a = read_boolean(args.bent.as_deref().ok_or("trivial recipe needs --bent")?)?;
            construct::trivial_gbent(&a, q).map_err(|e| e.to_string())?
        }
        Recipe::Gmmf => {
            let g_path = args.g.as_deref().ok_or("gmmf recipe needs --g")?;
            let g_text =
                fs::read_to_string(g_path).map_err(|e| format!("cannot read {g_path}: {e}"))?;
            let g = GeneralizedFunction::parse(&g_text).map_err(|e| e.to_string())?;
            let sigma_path = args.sigma.as_deref().ok_or("gmmf recipe needs --sigma")?;
            let sigma = read_permutation(sigma_path, g.n())?;
            construct::gmmf(&sigma, &g).map_err(|e| e.to_string())?
        }
        Recipe::Select => {
            let a = read_boolean(args.bent.as_deref().ok_or("select recipe needs --bent")?)?;
            let a0 = read_boolean(args.a0.as_deref().ok_or("select recipe needs --a0")?)?;
            let signs = parse_signs(&args.signs)?;
            let rep =
                construct::select_components(&a, &a0, &signs).map_err(|e| e.to_string())?;
            rep.to_function()
        }
    };
    print!("{}", f.serialize());
    Ok(ExitCode::SUCCESS)
}

fn parse_signs(text: &str) -> Result<Vec<LevelSignChoice>, String> {
    text.chars()
        .map(|c| match c {
            '+' => Ok(LevelSignChoice::Plus),
            '-' => Ok(LevelSignChoice::Minus),
            other => Err(format!("sign characters must be + or -, got {other:?}")),
        })
        .collect()
}

fn read_permutation(path: &str, n: u32) -> Result<PermutationTable, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let image: Vec<u32> = text
        .split_whitespace()
        .map(|tok| tok.parse().map_err(|_| format!("bad permutation entry {tok:?}")))
        .collect::<Result<_, String>>()?;
    PermutationTable::new(n, image).map_err(|e| e.to_string())
}

fn cmd_search(args: SearchArgs) -> Result<ExitCode, String> {
    if !args.merge.is_empty() {
        let reports: Vec<CensusReport> = args
            .merge
            .iter()
            .map(|path| {
                let text =
                    fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
                serde_json::from_str(&text).map_err(|e| format!("{path}: {e}"))
            })
            .collect::<Result<_, String>>()?;
        let merged = merge(&reports).map_err(|e| e.to_string())?;
        emit_census(&merged, args.out.as_deref())?;
        return Ok(ExitCode::SUCCESS);
    }

    let q = args.q.ok_or("search needs --q")?;
    let n = args.n.ok_or("search needs --n")?;
    if n == 0 || n > MAX_N {
        return Err(format!("unsupported n = {n}"));
    }
    let space = SearchSpace { q, n };
    let mode = match (args.exhaustive, args.samples) {
        (true, _) | (false, None) => SearchMode::Exhaustive,
        (false, Some(count)) => SearchMode::Sample { count, seed: args.seed },
    };

    if args.probe {
        let report = necessity_probe(space, mode).map_err(|e| e.to_string())?;
        match report.pass_fraction {
            Some(fraction) => println!(
                "evaluated {}  gbent {}  pass {}  fraction {:.6}",
                report.evaluated, report.gbent_count, report.pass_count, fraction
            ),
            None => println!(
                "evaluated {}  gbent 0  probe vacuous (no gbent functions seen)",
                report.evaluated
            ),
        }
        for table in &report.counterexamples {
            println!("counterexample:\n{table}");
        }
        if let Some(path) = &args.out {
            let json = serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?;
            fs::write(path, json).map_err(|e| format!("cannot write {path}: {e}"))?;
        }
        return Ok(ExitCode::SUCCESS);
    }

    let predicates = if args.predicates.is_empty() {
        PredicateKind::ALL
            .iter()
            .copied()
            .filter(|k| k.applicable(q, n))
            .collect()
    } else {
        args.predicates
            .iter()
            .map(|name| {
                PredicateKind::from_name(name).ok_or_else(|| format!("unknown predicate {name:?}"))
            })
            .collect::<Result<Vec<_>, String>>()?
    };
    let cfg = CensusConfig { space, predicates, mode };
    let report = match args.shard_index {
        Some(index) => {
            let total = ordinal_count(&cfg).map_err(|e| e.to_string())?;
            let ranges = shard(total, args.shards);
            let range: ShardRange = *ranges
                .get(index as usize)
                .ok_or_else(|| format!("shard index {index} outside 0..{}", args.shards))?;
            enumerate_range(&cfg, range).map_err(|e| e.to_string())?
        }
        None => enumerate(&cfg).map_err(|e| e.to_string())?,
    };
    emit_census(&report, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn emit_census(report: &CensusReport, out: Option<&str>) -> Result<(), String> {
    println!(
        "q {}  n {}  evaluated {}  gbent {}  exact/float disagreements {}",
        report.q, report.n, report.evaluated, report.gbent_count,
        report.exact_float_disagreements
    );
    for predicate in &report.predicates {
        println!(
            "{}: true {}  agreements {}/{}  witnesses {}",
            predicate.kind.name(),
            predicate.true_count,
            predicate.agreement.both_true + predicate.agreement.both_false,
            report.evaluated,
            predicate.witnesses.len()
        );
    }
    if let Some(path) = out {
        let json = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
        fs::write(path, json).map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    Ok(())
}

fn predicate_code(value: bool) -> ExitCode {
    if value {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
