//! `sadic`: command-line access to the S-adic toolkit.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use sadic::balance::balance;
use sadic::cf::{
    accelerate, cf_expand, parse_rational, ArnouxRauzyMap, CfExpansion, CfMap, CfScalar,
    JacobiPerronMap, SturmianMap,
};
use sadic::factors::{complexity, complexity_rows, entropy_estimate, factors, recurrence_function};
use sadic::graph::{graph_from_json, lyapunov, pisot_report, LyapunovParams, PathMeasure, SAdicGraph};
use sadic::sadic::{
    balance_criterion_partial_sums, cassaigne_expansion, convergence_profile, directive_from_json,
    directive_to_json, entropy_upper_bound, everywhere_growing_check, finite_length_entropy_bound,
    generalized_eigenvector, limit_word_stream, primitivity_check, DirectiveSequence, LimitOptions,
    Seeds,
};
use sadic::substitution::{builtin, substitution_from_json};
use sadic::{FiniteWord, Substitution, WordStream};

use output::{Format, Report};

#[derive(Parser, Debug)]
#[command(name = "sadic", version, about = "S-adic words: complexity, balance, frequencies, continued fractions and Lyapunov exponents")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a prefix of a fixed point, limit word or word file.
    Generate(GenerateArgs),
    /// Factor complexity p(n) of a prefix.
    Complexity(ComplexityArgs),
    /// Recurrence function R(n) and longest return times R'(n) of a prefix.
    Recurrence(WindowArgs),
    /// Balance and discrepancy of a prefix.
    Balance(BalanceArgs),
    /// Letter frequencies from nested cones, with convergence diagnostics.
    Frequencies(FrequenciesArgs),
    /// Entropy upper bound from the growth of the directive sequence.
    EntropyBound(EntropyArgs),
    /// Weak and strong primitivity witnesses and growth of a directive sequence.
    Primitivity(PrimitivityArgs),
    /// Continued-fraction expansion of a vector.
    CfExpand(CfArgs),
    /// Lyapunov exponents of an S-adic graph under a Markov measure.
    Lyapunov(LyapunovArgs),
    /// S-adic expansion of an arbitrary finite word.
    Cassaigne(CassaigneArgs),
}

/// Where the word comes from. Exactly one of the three sources is used.
#[derive(Args, Debug, Serialize)]
struct Source {
    /// Built-in substitution name or substitution JSON file; the word is its
    /// fixed point.
    #[arg(long, conflicts_with_all = ["directive", "word_file"])]
    substitution: Option<String>,
    /// Starting letter of the fixed point [default: first letter].
    #[arg(long, requires = "substitution")]
    seed_letter: Option<String>,
    /// Directive-sequence JSON file; the word is its limit.
    #[arg(long, conflicts_with = "word_file")]
    directive: Option<PathBuf>,
    /// Text file with one character per letter; whitespace is ignored.
    #[arg(long)]
    word_file: Option<PathBuf>,
}

/// A directive sequence: a directive file or one substitution repeated.
#[derive(Args, Debug, Serialize)]
struct DirectiveSource {
    /// Built-in substitution name or substitution JSON file, repeated forever.
    #[arg(long, conflicts_with = "directive", required_unless_present = "directive")]
    substitution: Option<String>,
    /// Directive-sequence JSON file.
    #[arg(long)]
    directive: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
struct GenerateArgs {
    #[command(flatten)]
    #[serde(flatten)]
    source: Source,
    /// Number of letters.
    #[arg(long, default_value_t = 100, value_parser = positive)]
    length: usize,
}

#[derive(Args, Debug, Serialize)]
struct ComplexityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    window: WindowArgs,
    /// Also compute R(n).
    #[arg(long)]
    recurrence: bool,
}

#[derive(Args, Debug, Serialize)]
struct WindowArgs {
    #[command(flatten)]
    #[serde(flatten)]
    source: Source,
    /// Prefix length analysed [default: 100000, or the whole word file].
    #[arg(long, value_parser = positive)]
    prefix: Option<usize>,
    /// Largest factor length.
    #[arg(long, default_value_t = 50, value_parser = positive)]
    max_n: usize,
}

#[derive(Args, Debug, Serialize)]
struct BalanceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    source: Source,
    /// Prefix length analysed [default: 100000, or the whole word file].
    #[arg(long, value_parser = positive)]
    prefix: Option<usize>,
    /// Largest window length.
    #[arg(long, default_value_t = 1000, value_parser = positive)]
    max_n: usize,
    /// Reference frequencies, comma separated [default: empirical].
    #[arg(long, conflicts_with = "exact_frequencies")]
    frequencies: Option<String>,
    /// Use frequencies from the nested cones of the substitution or
    /// directive sequence.
    #[arg(long)]
    exact_frequencies: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum FrequencyEmit {
    Frequencies,
    Profile,
    Criterion,
}

#[derive(Args, Debug, Serialize)]
struct FrequenciesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    source: DirectiveSource,
    /// Hilbert-diameter tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Maximal depth of the cone iteration.
    #[arg(long, default_value_t = 10_000)]
    n_max: usize,
    /// Table to emit.
    #[arg(long, value_enum, default_value_t = FrequencyEmit::Frequencies)]
    emit: FrequencyEmit,
    /// Depth of the convergence profile or number of criterion terms.
    #[arg(long, default_value_t = 20)]
    depth: usize,
}

#[derive(Args, Debug, Serialize)]
struct EntropyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    source: DirectiveSource,
    /// Depth N of the bound.
    #[arg(long, default_value_t = 20)]
    depth: usize,
    /// Also bound ln p(L)/L at this factor length.
    #[arg(long, value_parser = positive)]
    length: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct PrimitivityArgs {
    #[command(flatten)]
    #[serde(flatten)]
    source: DirectiveSource,
    /// First index scanned.
    #[arg(long, default_value_t = 0)]
    start: usize,
    /// Longest window tried at each index.
    #[arg(long, default_value_t = 10)]
    r_max: usize,
    /// Number of indices scanned.
    #[arg(long, default_value_t = 20, value_parser = positive)]
    scan: usize,
    /// Depth of the growth check.
    #[arg(long, default_value_t = 40)]
    depth: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Algorithm {
    Sturmian,
    ArnouxRauzy,
    JacobiPerron,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CfEmit {
    Symbols,
    Matrices,
    Remainders,
}

#[derive(Args, Debug, Serialize)]
struct CfArgs {
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Comma-separated coordinates: integers, decimals or p/q.
    #[arg(long)]
    vector: String,
    /// Maximal number of steps.
    #[arg(long, default_value_t = 20)]
    steps: usize,
    /// Column added to the symbol table.
    #[arg(long, value_enum, default_value_t = CfEmit::Symbols)]
    emit: CfEmit,
    /// Group runs of equal symbols (multiplicative acceleration).
    #[arg(long)]
    accelerate: bool,
    /// Iterate in floating point instead of exact rationals.
    #[arg(long)]
    float: bool,
}

#[derive(Args, Debug, Serialize)]
struct LyapunovArgs {
    /// Graph JSON file, or a built-in graph: fibonacci, sturmian,
    /// arnoux-rauzy-<d>.
    #[arg(long)]
    graph: String,
    /// Steps per trajectory.
    #[arg(long, default_value_t = 4096, value_parser = positive)]
    steps: usize,
    #[arg(long, default_value_t = 64, value_parser = positive)]
    trajectories: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Steps between re-orthonormalizations.
    #[arg(long, default_value_t = 8, value_parser = positive)]
    renorm_period: usize,
}

#[derive(Args, Debug, Serialize)]
struct CassaigneArgs {
    /// The word, one character per letter.
    #[arg(long, conflicts_with = "word_file", required_unless_present = "word_file")]
    word: Option<String>,
    /// Text file with the word; whitespace is ignored.
    #[arg(long)]
    word_file: Option<PathBuf>,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

enum CliError {
    Lib(sadic::Error),
    Input(String),
}

impl From<sadic::Error> for CliError {
    fn from(e: sadic::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    /// `error: <kind>: <message>` on one line.
    fn line(&self) -> String {
        let (kind, msg) = match self {
            CliError::Lib(e) => (kebab(&format!("{e:?}")), e.to_string()),
            CliError::Input(m) => ("input".to_string(), m.clone()),
        };
        format!("error: {kind}: {}", msg.replace('\n', " "))
    }
}

/// Kebab-case variant name from a `Debug` rendering.
fn kebab(debug: &str) -> String {
    let name = debug.split(['(', ' ', '{']).next().unwrap_or(debug);
    let mut out = String::new();
    for (i, c) in name.chars().enumerate() {
        if c.is_uppercase() {
            if i > 0 {
                out.push('-');
            }
            out.extend(c.to_lowercase());
        } else {
            out.push(c);
        }
    }
    out
}

type Res<T> = Result<T, CliError>;

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_substitution(spec: &str) -> Res<Substitution> {
    let path = Path::new(spec);
    if path.is_file() {
        Ok(substitution_from_json(&read(path)?)?)
    } else {
        Ok(builtin(spec)?)
    }
}

fn read_word(text: &str) -> Res<FiniteWord> {
    let letters: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if letters.is_empty() {
        return Err(CliError::Input("the word is empty".into()));
    }
    Ok(FiniteWord::parse_inferred(&letters)?)
}

fn load_stream(src: &Source) -> Res<WordStream> {
    if let Some(spec) = &src.substitution {
        let s = load_substitution(spec)?;
        let a = match &src.seed_letter {
            Some(l) => s.domain().index(l)?,
            None => 0,
        };
        Ok(s.fixed_point_stream(a)?)
    } else if let Some(path) = &src.directive {
        let ds = directive_from_json(&read(path)?)?;
        Ok(limit_word_stream(&ds, LimitOptions::default())?)
    } else if let Some(path) = &src.word_file {
        Ok(WordStream::finite(read_word(&read(path)?)?))
    } else {
        Err(CliError::Input(
            "give one of --substitution, --directive or --word-file".into(),
        ))
    }
}

fn load_directive(src: &DirectiveSource) -> Res<DirectiveSequence> {
    match (&src.substitution, &src.directive) {
        (Some(spec), _) => Ok(DirectiveSequence::periodic(vec![load_substitution(spec)?], Seeds::None)?),
        (None, Some(path)) => Ok(directive_from_json(&read(path)?)?),
        (None, None) => Err(CliError::Input("give --substitution or --directive".into())),
    }
}

/// The requested prefix length, or by default `default` letters (fewer for
/// a short finite word).
fn window(stream: &WordStream, requested: Option<usize>) -> Res<usize> {
    match requested {
        Some(n) => Ok(n),
        None => Ok(stream.available_prefix(100_000)?.len()),
    }
}

fn generate(a: &GenerateArgs) -> Res<Report> {
    let stream = load_stream(&a.source)?;
    let w = stream.available_prefix(a.length)?;
    let mut r = Report::new("generate", a);
    r.set("length", w.len());
    r.set("alphabet", w.alphabet().letters());
    r.set("word", w.to_string());
    r.text_body = Some(w.to_string());
    Ok(r)
}

fn run_complexity(a: &ComplexityArgs) -> Res<Report> {
    let stream = load_stream(&a.window.source)?;
    let prefix = window(&stream, a.window.prefix)?;
    let t = factors(&stream, prefix, a.window.max_n)?;
    let c = complexity(&t);
    let rec = if a.recurrence {
        Some(recurrence_function(&stream, prefix, a.window.max_n)?)
    } else {
        None
    };
    let mut r = Report::new("complexity", a);
    r.set("prefix_len", prefix);
    r.set("entropy_estimate", entropy_estimate(&c.p)?.estimate);
    let rows = complexity_rows(&c, rec.as_ref())
        .into_iter()
        .map(|row| vec![json!(row.n), json!(row.p), json!(row.dp), json!(row.r)])
        .collect();
    r.table(vec!["n", "p", "dp", "R"], rows);
    Ok(r)
}

fn run_recurrence(a: &WindowArgs) -> Res<Report> {
    let stream = load_stream(&a.source)?;
    let prefix = window(&stream, a.prefix)?;
    let rec = recurrence_function(&stream, prefix, a.max_n)?;
    let mut r = Report::new("recurrence", a);
    r.set("prefix_len", prefix);
    let rows = (0..a.max_n)
        .map(|i| vec![json!(i + 1), json!(rec.r[i]), json!(rec.r_return[i])])
        .collect();
    r.table(vec!["n", "R", "R_return"], rows);
    Ok(r)
}

fn run_balance(a: &BalanceArgs) -> Res<Report> {
    let stream = load_stream(&a.source)?;
    let prefix = window(&stream, a.prefix)?;
    let f: Option<Vec<f64>> = if let Some(list) = &a.frequencies {
        let parsed: Result<Vec<f64>, _> = list.split(',').map(|t| t.trim().parse::<f64>()).collect();
        Some(parsed.map_err(|e| CliError::Input(format!("--frequencies: {e}")))?)
    } else if a.exact_frequencies {
        let ds = load_directive(&DirectiveSource {
            substitution: a.source.substitution.clone(),
            directive: a.source.directive.clone(),
        })?;
        let fr = generalized_eigenvector(&ds, 1e-10, 10_000)?;
        if !fr.converged {
            return Err(CliError::Lib(sadic::Error::NotConverged(format!(
                "cone diameter {:e} after {} steps",
                fr.diameter, fr.depth
            ))));
        }
        Some(fr.f)
    } else {
        None
    };
    let rep = balance(&stream, prefix, a.max_n, f.as_deref())?;
    let mut r = Report::new("balance", a);
    r.set("prefix_len", prefix);
    r.set("balance", rep.balance);
    r.set("discrepancy", rep.discrepancy);
    r.set("frequency_source", rep.frequency_source);
    let alphabet = stream.alphabet();
    let rows = (0..alphabet.len())
        .map(|i| vec![json!(alphabet.name(i as _)), json!(rep.frequencies[i]), json!(rep.imbalance[i])])
        .collect();
    r.table(vec!["letter", "frequency", "imbalance"], rows);
    Ok(r)
}

fn run_frequencies(a: &FrequenciesArgs) -> Res<Report> {
    let ds = load_directive(&a.source)?;
    let fr = generalized_eigenvector(&ds, a.tol, a.n_max)?;
    let alphabet = ds.alphabet(0)?;
    let mut r = Report::new("frequencies", a);
    r.set("frequencies", &fr.f);
    r.set("depth", fr.depth);
    r.set("diameter", fr.diameter);
    r.set("converged", fr.converged);
    r.set("positive_block", fr.positive_block);
    match a.emit {
        FrequencyEmit::Frequencies => {
            let rows = fr
                .f
                .iter()
                .enumerate()
                .map(|(i, x)| vec![json!(alphabet.name(i as _)), json!(x)])
                .collect();
            r.table(vec!["letter", "frequency"], rows);
        }
        FrequencyEmit::Profile => {
            let mut rows = Vec::new();
            for n in 0..=a.depth {
                let p = convergence_profile(&ds, &fr.f, n)?;
                let max = |v: &[f64]| v.iter().cloned().fold(0.0, f64::max);
                rows.push(vec![
                    json!(n),
                    json!(max(&p.weak)),
                    json!(max(&p.strong)),
                    json!(p.diameter),
                    json!(p.delta),
                ]);
            }
            r.table(vec!["n", "weak", "strong", "diameter", "delta"], rows);
        }
        FrequencyEmit::Criterion => {
            let rep = balance_criterion_partial_sums(&ds, &fr, a.depth)?;
            r.set("tail_ratio", rep.tail_ratio);
            r.set("verdict", rep.verdict);
            let rows = (0..rep.terms.len())
                .map(|n| {
                    let ratio = if n == 0 { Value::Null } else { json!(rep.ratios[n - 1]) };
                    vec![json!(n), json!(rep.terms[n]), json!(rep.partial_sums[n]), ratio]
                })
                .collect();
            r.table(vec!["n", "term", "partial_sum", "ratio"], rows);
        }
    }
    Ok(r)
}

fn run_entropy(a: &EntropyArgs) -> Res<Report> {
    let ds = load_directive(&a.source)?;
    let b = entropy_upper_bound(&ds, a.depth)?;
    let mut r = Report::new("entropy-bound", a);
    r.set("bound", b.bound);
    r.set("argmin", b.argmin);
    r.set("depth", b.depth);
    if let Some(len) = a.length {
        let fl = finite_length_entropy_bound(&ds, len, a.depth)?;
        r.set("length_bound", fl.bound);
        r.set("length_argmin", fl.argmin);
    }
    let rows = b.terms.iter().enumerate().map(|(n, t)| vec![json!(n), json!(t)]).collect();
    r.table(vec!["n", "term"], rows);
    Ok(r)
}

fn run_primitivity(a: &PrimitivityArgs) -> Res<Report> {
    let ds = load_directive(&a.source)?;
    let rep = primitivity_check(&ds, a.start, a.r_max, a.scan)?;
    let g = everywhere_growing_check(&ds, a.depth)?;
    let mut r = Report::new("primitivity", a);
    r.set("strong", rep.strong);
    r.set("growing", g.growing);
    r.set("growth_depth", g.depth);
    r.set("beta_minus", g.beta_minus.last().map(|x| x.to_string()));
    r.set("beta_plus", g.beta_plus.last().map(|x| x.to_string()));
    let rows = rep.weak.iter().map(|w| vec![json!(w.n), json!(w.r)]).collect();
    r.table(vec!["n", "r"], rows);
    Ok(r)
}

fn expansion_report<T: CfScalar>(a: &CfArgs, e: CfExpansion<T>) -> Res<Report> {
    let e = if a.accelerate { accelerate(&e)? } else { e };
    let mut r = Report::new("cf-expand", a);
    r.set("map", &e.map);
    r.set("steps", e.len());
    r.set("halt", &e.halt);
    r.set("reconstruction_holds", e.reconstruction_holds());
    let matrices = e.matrices();
    let mut header = vec!["k", "symbol"];
    header.push(match a.emit {
        CfEmit::Symbols => "substitution",
        CfEmit::Matrices => "matrix",
        CfEmit::Remainders => "remainder",
    });
    let rows = (0..e.len())
        .map(|k| {
            let extra = match a.emit {
                CfEmit::Symbols => e.substitutions[k].to_string(),
                CfEmit::Matrices => matrices[k]
                    .to_string_rows()
                    .iter()
                    .map(|row| row.join(" "))
                    .collect::<Vec<_>>()
                    .join("; "),
                CfEmit::Remainders => e.remainders[k]
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            };
            vec![json!(k), json!(e.symbols[k]), json!(extra)]
        })
        .collect();
    r.table(header, rows);
    Ok(r)
}

fn expand<T: CfScalar>(a: &CfArgs, x: Vec<T>) -> Res<Report> {
    let e = match a.algorithm {
        Algorithm::Sturmian => cf_expand(&SturmianMap::new(), &x, a.steps)?,
        Algorithm::ArnouxRauzy => {
            let map = ArnouxRauzyMap::new(x.len())?;
            cf_expand(&map as &dyn CfMap<T>, &x, a.steps)?
        }
        Algorithm::JacobiPerron => cf_expand(&JacobiPerronMap, &x, a.steps)?,
    };
    expansion_report(a, e)
}

fn run_cf(a: &CfArgs) -> Res<Report> {
    let tokens: Vec<&str> = a.vector.split(',').map(str::trim).collect();
    if a.float {
        let x: Result<Vec<f64>, _> = tokens.iter().map(|t| t.parse::<f64>()).collect();
        expand(a, x.map_err(|e| CliError::Input(format!("--vector: {e}")))?)
    } else {
        let x: Option<Vec<_>> = tokens.iter().map(|t| parse_rational(t)).collect();
        let x = x.ok_or_else(|| CliError::Input(format!("--vector: cannot read {:?} as rationals", a.vector)))?;
        expand(a, x)
    }
}

fn load_graph(spec: &str) -> Res<(SAdicGraph, PathMeasure)> {
    let path = Path::new(spec);
    if path.is_file() {
        return Ok(graph_from_json(&read(path)?)?);
    }
    let g = match spec {
        "fibonacci" => SAdicGraph::fibonacci(),
        "sturmian" => SAdicGraph::sturmian(),
        other => match other.strip_prefix("arnoux-rauzy-").map(str::parse::<usize>) {
            Some(Ok(d)) => SAdicGraph::arnoux_rauzy(d)?,
            _ => {
                return Err(CliError::Input(format!(
                    "{spec:?} is neither a file nor a built-in graph (fibonacci, sturmian, arnoux-rauzy-<d>)"
                )))
            }
        },
    };
    let m = PathMeasure::uniform(&g);
    Ok((g, m))
}

fn run_lyapunov(a: &LyapunovArgs) -> Res<Report> {
    let (g, m) = load_graph(&a.graph)?;
    let est = lyapunov(
        &g,
        &m,
        LyapunovParams {
            steps: a.steps,
            trajectories: a.trajectories,
            seed: a.seed,
            renorm_period: a.renorm_period,
        },
    )?;
    let p = pisot_report(&est);
    let mut r = Report::new("lyapunov", a);
    r.set("graph", g.name());
    r.set("strongly_connected", g.is_strongly_connected());
    r.set("theta1", est.theta1);
    r.set("theta2", est.theta2);
    r.set("stderr1", est.stderr1);
    r.set("stderr2", est.stderr2);
    r.set("log_integrability", est.log_integrability);
    r.set("pisot", p.verdict);
    r.set("deviation_exponent", p.deviation_exponent);
    r.set("uniform_approximation_exponent", p.uniform_approximation_exponent);
    let rows = est
        .per_trajectory
        .iter()
        .map(|t| vec![json!(t.index), json!(t.theta1), json!(t.theta2)])
        .collect();
    r.table(vec!["trajectory", "theta1", "theta2"], rows);
    Ok(r)
}

fn run_cassaigne(a: &CassaigneArgs) -> Res<Report> {
    let w = match (&a.word, &a.word_file) {
        (Some(w), _) => read_word(w)?,
        (None, Some(p)) => read_word(&read(p)?)?,
        (None, None) => return Err(CliError::Input("give --word or --word-file".into())),
    };
    let ds = cassaigne_expansion(&w)?;
    let u = limit_word_stream(&ds, LimitOptions::default())?;
    let back = u.available_prefix(w.len())?;
    let len = ds.len().unwrap_or(0);
    let mut r = Report::new("cassaigne", a);
    r.set("length", len);
    r.set("round_trip", back.letters() == w.letters());
    r.set("everywhere_growing", everywhere_growing_check(&ds, len)?.growing);
    r.set("entropy_bound", entropy_upper_bound(&ds, len)?.bound);
    let text = directive_to_json(&ds)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| CliError::Input(e.to_string()))?;
    r.set("directive", v);
    let rows = (0..len)
        .map(|n| Ok(vec![json!(n), json!(ds.substitution(n)?.to_string())]))
        .collect::<Res<Vec<_>>>()?;
    r.table(vec!["n", "substitution"], rows);
    Ok(r)
}

fn run(cli: &Cli) -> Res<Report> {
    match &cli.command {
        Command::Generate(a) => generate(a),
        Command::Complexity(a) => run_complexity(a),
        Command::Recurrence(a) => run_recurrence(a),
        Command::Balance(a) => run_balance(a),
        Command::Frequencies(a) => run_frequencies(a),
        Command::EntropyBound(a) => run_entropy(a),
        Command::Primitivity(a) => run_primitivity(a),
        Command::CfExpand(a) => run_cf(a),
        Command::Lyapunov(a) => run_lyapunov(a),
        Command::Cassaigne(a) => run_cassaigne(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error: usage: {first}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(mut report) => {
            if let Value::Object(m) = &mut report.config {
                m.insert("format".into(), serde_json::to_value(cli.format).unwrap());
            }
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if report.write(cli.format, &mut out).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::from(2)
        }
    }
}
