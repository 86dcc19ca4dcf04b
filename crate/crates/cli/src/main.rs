//! `stringz`: analyse a string algebra given as a `.alg` file or a preset
//! name.
//!
//! Exit codes: 0 success, 1 domain error (the algebra fails a requirement
//! such as domesticity), 2 usage or parse error.

use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use stringz::bands::Domesticity;
use stringz::homoracle::{build_string_module, graph_maps, hom_dim_oracle};
use stringz::presentation::ParseError;
use stringz::report::{build_report, quiver_entry};
use stringz::spectrum::{
    cb_rank, dual_point, enumerate_points, in_basic_nbhd, kg_dimension, parse_point, Analysis, Bounds,
    SpectrumError,
};
use stringz::words::{letters_text, parse_finite, Word};
use stringz::{is_domestic, parse_presentation, presets, StringAlgebra};

#[derive(Parser)]
#[command(name = "stringz", version, about = "Bands, bridges and Ziegler-spectrum ranks of string algebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Enumeration bounds for `points`: word length, band power, prefix length.
    #[arg(long, global = true, value_name = "L,K,P", value_parser = parse_bounds)]
    bounds: Option<Bounds>,
    /// Neighbourhood index for `nbhd` when it is not given positionally.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    nbhd_index: usize,
    #[arg(long, env = "STRINGZ_COLOR", value_enum, default_value_t = Color::Auto, global = true)]
    color: Color,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Color {
    Auto,
    Always,
    Never,
}

#[derive(Subcommand)]
enum Command {
    /// Check the string-algebra axioms.
    Validate { algebra: String },
    /// Bands and domesticity.
    Info { algebra: String },
    /// The bridge quiver as a table, JSON or Graphviz DOT.
    BridgeQuiver {
        algebra: String,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Krull-Gabriel dimension, or "undefined" when not domestic.
    KgDim { algebra: String },
    /// Cantor-Bendixson rank of a point such as `prufer:[a3 b3-]@s`.
    Rank { algebra: String, point: String },
    /// Every point within the bounds, with its rank.
    Points { algebra: String },
    /// Graph maps between two finite string modules, against the oracle.
    Hom { algebra: String, from: String, to: String },
    /// Whether a candidate lies in a basic neighbourhood: `CENTER [N] CANDIDATE`.
    Nbhd {
        algebra: String,
        #[arg(num_args = 2..=3, required = true)]
        args: Vec<String>,
    },
    /// The elementary dual of a point, with the opposite presentation.
    Dual { algebra: String, point: String },
}

fn parse_bounds(s: &str) -> Result<Bounds, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("`{p}`: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [max_len, max_power, max_prefix] if max_power >= 1 => Ok(Bounds { max_len, max_power, max_prefix }),
        [_, _, _] => Err("band power must be at least 1".into()),
        _ => Err("expected three numbers L,K,P".into()),
    }
}

/// A failure with its exit code; the message goes to stderr.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(m: impl ToString) -> Failure {
        Failure { code: 2, message: m.to_string() }
    }

    fn domain(m: impl ToString) -> Failure {
        Failure { code: 1, message: m.to_string() }
    }
}

impl From<SpectrumError> for Failure {
    fn from(e: SpectrumError) -> Failure {
        match e {
            SpectrumError::NonDomestic | SpectrumError::Bridge(_) => Failure::domain(e),
            _ => Failure::usage(e),
        }
    }
}

struct Ctx {
    json: bool,
    color: bool,
}

impl Ctx {
    fn warn(&self, msg: &str) {
        if self.color {
            eprintln!("\x1b[33mwarning\x1b[0m: {msg}");
        } else {
            eprintln!("warning: {msg}");
        }
    }
}

fn render_parse_error(file: &str, e: &ParseError) -> String {
    format!("{file}: {e}")
}

/// Reads an algebra file, falling back to a bundled preset of that name.
/// Axiom violations are reported as warnings; `validate` reports them itself.
fn load(ctx: &Ctx, source: &str, warn: bool) -> Result<StringAlgebra, Failure> {
    let text = match std::fs::read_to_string(source) {
        Ok(t) => t,
        Err(e) if !Path::new(source).exists() => match presets::preset_source(source) {
            Some(s) => s.to_string(),
            None => return Err(Failure::usage(format!("{source}: {e}, and no preset has that name"))),
        },
        Err(e) => return Err(Failure::usage(format!("{source}: {e}"))),
    };
    let p = parse_presentation(&text).map_err(|e| Failure::usage(render_parse_error(source, &e)))?;
    let alg = StringAlgebra::new_unchecked(p);
    if warn {
        for v in alg.violations() {
            ctx.warn(&format!("{}: {v}", alg.name()));
        }
    }
    Ok(alg)
}

fn analysis(alg: StringAlgebra) -> Result<Analysis, Failure> {
    Analysis::new(alg).map_err(Failure::from)
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

fn word_text(alg: &StringAlgebra, w: &Word, from: usize, len: usize) -> String {
    if len == 0 {
        format!("1@{}", alg.vertex_name(w.vertices(alg)[from]))
    } else {
        letters_text(alg, &w.letters()[from..from + len])
    }
}

fn run(cli: Cli, ctx: &Ctx) -> Result<String, Failure> {
    let mut out = String::new();
    match cli.command {
        Command::Validate { algebra } => {
            let alg = load(ctx, &algebra, false)?;
            let violations: Vec<String> = alg.violations().iter().map(ToString::to_string).collect();
            if ctx.json {
                out = json(&serde_json::json!({
                    "algebra": alg.name(),
                    "valid": violations.is_empty(),
                    "violations": violations,
                }));
            } else if violations.is_empty() {
                let _ = writeln!(out, "{}: ok", alg.name());
            } else {
                for v in &violations {
                    let _ = writeln!(out, "{}: {v}", alg.name());
                }
            }
            if !violations.is_empty() {
                print!("{out}");
                return Err(Failure::domain(format!("{} violates the string-algebra axioms", alg.name())));
            }
        }
        Command::Info { algebra } => {
            let alg = load(ctx, &algebra, true)?;
            if ctx.json {
                let report = build_report(&alg, None)?;
                out = json(&report);
            } else {
                let _ = writeln!(out, "algebra {}", alg.name());
                match is_domestic(&alg) {
                    Domesticity::NonDomestic(w) => {
                        let (a, b) = w.display(&alg);
                        let _ = writeln!(out, "domestic: no");
                        let _ = writeln!(out, "witness: {a} | {b}");
                    }
                    Domesticity::Domestic(bands) => {
                        let _ = writeln!(out, "domestic: yes ({}-domestic)", bands.n_domestic());
                        for c in bands.classes() {
                            let _ = writeln!(
                                out,
                                "band {}: {} (inverse {})",
                                c.id,
                                letters_text(&alg, &c.repr),
                                c.inverse
                            );
                        }
                    }
                }
            }
        }
        Command::BridgeQuiver { algebra, dot } => {
            let an = analysis(load(ctx, &algebra, true)?)?;
            if dot {
                out = an.quiver().to_dot(an.alg(), an.bands());
            } else if ctx.json {
                out = json(&quiver_entry(&an));
            } else {
                let q = quiver_entry(&an);
                let _ = writeln!(out, "vertices: {}", q.vertices.join(" | "));
                for e in &q.edges {
                    let flag = serde_json::to_value(e.flag).expect("flag serialises");
                    let _ = writeln!(out, "{} -> {}  via {}  ({})", e.src, e.dst, e.word, flag.as_str().unwrap_or(""));
                }
            }
        }
        Command::KgDim { algebra } => {
            let alg = load(ctx, &algebra, true)?;
            let kg = kg_dimension(&alg)?;
            out = if ctx.json {
                json(&serde_json::json!({ "algebra": alg.name(), "kg_dimension": kg }))
            } else {
                format!("{kg}\n")
            };
        }
        Command::Rank { algebra, point } => {
            let an = analysis(load(ctx, &algebra, true)?)?;
            let r = cb_rank(&an, &parse_point(&an, &point)?)?;
            out = if ctx.json { json(&r) } else { format!("{}\ntrace: {}\n", r.rank, r.trace) };
        }
        Command::Points { algebra } => {
            let an = analysis(load(ctx, &algebra, true)?)?;
            let points = enumerate_points(&an, cli.bounds.unwrap_or_default())?;
            if ctx.json {
                out = json(&points);
            } else {
                for p in &points {
                    let _ = writeln!(out, "{}\t{}\t{}", p.rank, p.expr, p.trace);
                }
            }
        }
        Command::Hom { algebra, from, to } => {
            let alg = load(ctx, &algebra, true)?;
            let u = parse_finite(&alg, &from).map_err(Failure::usage)?;
            let v = parse_finite(&alg, &to).map_err(Failure::usage)?;
            let maps = graph_maps(&alg, &u, &v);
            let oracle = hom_dim_oracle(&alg, &build_string_module(&alg, &u), &build_string_module(&alg, &v));
            let mediators: Vec<String> = maps.iter().map(|m| word_text(&alg, &u, m.factor_at, m.len)).collect();
            if ctx.json {
                out = json(&serde_json::json!({
                    "count": maps.len(),
                    "mediators": mediators,
                    "oracle": oracle,
                }));
            } else {
                let _ = writeln!(out, "count: {}", maps.len());
                for (m, text) in maps.iter().zip(&mediators) {
                    let _ = writeln!(
                        out,
                        "  {text}  (factor at {}, image at {}{})",
                        m.factor_at,
                        m.image_at,
                        if m.inverted { ", inverted" } else { "" }
                    );
                }
                let _ = writeln!(out, "oracle: {oracle}");
            }
            if maps.len() != oracle {
                ctx.warn("graph-map count disagrees with the oracle");
            }
        }
        Command::Nbhd { algebra, args } => {
            let (center, n, candidate) = match &args[..] {
                [c, y] => (c, cli.nbhd_index, y),
                [c, n, y] => (c, n.parse().map_err(|e| Failure::usage(format!("index `{n}`: {e}")))?, y),
                _ => unreachable!("clap enforces two or three arguments"),
            };
            let an = analysis(load(ctx, &algebra, true)?)?;
            let c = parse_point(&an, center)?;
            let y = parse_point(&an, candidate)?;
            let m = in_basic_nbhd(&an, &c, n, &y)?;
            out = if ctx.json { json(&m) } else { format!("{m}\n") };
        }
        Command::Dual { algebra, point } => {
            let an = analysis(load(ctx, &algebra, true)?)?;
            let p = parse_point(&an, &point)?;
            let op = an.opposite()?;
            let d = dual_point(&an, &op, &p)?;
            let expr = d.expr(&op);
            let presentation = op.alg().presentation().to_string();
            out = if ctx.json {
                json(&serde_json::json!({ "dual": expr, "opposite": presentation }))
            } else {
                format!("{expr}\n\n{presentation}")
            };
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let color = match cli.color {
        Color::Always => true,
        Color::Never => false,
        Color::Auto => std::io::stderr().is_terminal(),
    };
    let ctx = Ctx { json: cli.json, color };
    match run(cli, &ctx) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if ctx.color {
                eprintln!("\x1b[31merror\x1b[0m: {}", f.message);
            } else {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
