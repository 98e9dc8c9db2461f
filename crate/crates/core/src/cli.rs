//! Command-line front end. Exit codes: 0 success, 1 domain error, 2 syntax
//! or usage error.

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::expr::{parse_expression, Expr, ExprError, ParseError};
use crate::lattice::{d_invariant_with, wu_mu_bar, MaxChar, SearchOptions};
use crate::plumbing::{gram_matrix, plumbing_graph, PlumbingGraph};
use crate::seifert::{normalize, MarkedSeifert, SeifertData};
use crate::splice::{
    casson_euler, compute_seifert, gluing_report, monotonicity_check, mu_bar_check, splice_report, v0_torus,
    GluingSpec, KnotSpec, Monotonicity, Report, SurgeryCalculus,
};

pub const THREADS_VAR: &str = "SPLICE_D_THREADS";

#[derive(Debug, Parser)]
#[command(name = "splice-d", version, about = "d-invariants of Seifert homology spheres and their splices")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Show the plumbing, the maximizing characteristic vector and search statistics
    #[arg(long, short, global = true)]
    verbose: bool,
    /// Read one expression per line from standard input
    #[arg(long, global = true)]
    stdin: bool,
}

#[derive(Debug, Args)]
struct ExprArg {
    /// Expression, e.g. 'sigma(2,3,5)'
    #[arg(allow_hyphen_values = true)]
    expression: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normalized Seifert invariants (e, b)
    Normalize(ExprArg),
    /// Star-shaped plumbing graph
    Plumbing(ExprArg),
    /// d-invariant of a Seifert homology sphere
    D(ExprArg),
    /// Wu class and mu-bar of the plumbing
    MuBar(ExprArg),
    /// Exact d of a splice along stabilized fibers
    SpliceD(ExprArg),
    /// Bounds on d of a splice or gluing
    Bounds {
        #[command(flatten)]
        expr: ExprArg,
        /// Allow fiber surgeries that reverse orientation
        #[arg(long)]
        extended: bool,
    },
    /// V0 of a torus knot, e.g. 'torus(2,3)' or '-torus(2,3)'
    V0Torus(ExprArg),
    /// d-invariant of a Gram matrix given as JSON
    DLattice(ExprArg),
    /// Consistency checks: d against mu-bar, Casson relation, surgery monotonicity
    Check {
        #[command(flatten)]
        expr: ExprArg,
        /// Casson invariant, to report chi(HF_red) = d/2 + lambda
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i64>,
        /// Require d = -2 mu-bar
        #[arg(long)]
        expect_equality: bool,
    },
}

impl Command {
    fn expression(&self) -> Option<&str> {
        match self {
            Command::Normalize(e)
            | Command::Plumbing(e)
            | Command::D(e)
            | Command::MuBar(e)
            | Command::SpliceD(e)
            | Command::V0Torus(e)
            | Command::DLattice(e)
            | Command::Bounds { expr: e, .. }
            | Command::Check { expr: e, .. } => e.expression.as_deref(),
        }
    }
}

enum Failure {
    Syntax(ParseError),
    Semantic { offset: usize, error: Error },
    Domain(Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Syntax(_) => 2,
            _ => 1,
        }
    }

    fn json(&self) -> String {
        #[derive(Serialize)]
        struct Obj<'a> {
            error: &'a str,
            message: String,
            #[serde(skip_serializing_if = "Option::is_none")]
            offset: Option<usize>,
            #[serde(skip_serializing_if = "Option::is_none")]
            expected: Option<&'a [String]>,
        }
        let obj = match self {
            Failure::Syntax(p) => Obj {
                error: "ParseError",
                message: p.to_string(),
                offset: Some(p.offset),
                expected: Some(&p.expected),
            },
            Failure::Semantic { offset, error } => Obj {
                error: error.kind(),
                message: error.to_string(),
                offset: Some(*offset),
                expected: None,
            },
            Failure::Domain(error) => Obj {
                error: error.kind(),
                message: error.to_string(),
                offset: None,
                expected: None,
            },
        };
        serde_json::to_string(&obj).expect("serializable")
    }

    fn text(&self) -> String {
        match self {
            Failure::Syntax(p) => format!("error: {p}"),
            Failure::Semantic { offset, error } => format!("error: {} at byte {offset}: {error}", error.kind()),
            Failure::Domain(error) => format!("error: {}: {error}", error.kind()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<ExprError> for Failure {
    fn from(e: ExprError) -> Self {
        match e {
            ExprError::Parse(p) => Failure::Syntax(p),
            ExprError::Semantic { offset, error } => Failure::Semantic { offset, error },
        }
    }
}

/// Rendered result: text lines and one JSON document.
struct Output {
    text: String,
    json: String,
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn wrong_kind(text: &str, expected: &str) -> Failure {
    let found = match parse_expression(text) {
        Ok(Expr::Seifert(_)) => "Seifert data",
        Ok(Expr::Knot(KnotSpec::Fiber(_))) => "marked Seifert data",
        Ok(Expr::Knot(_)) => "a knot",
        Ok(Expr::Gluing(_)) => "a gluing",
        Ok(Expr::Lattice(_)) => "a Gram matrix",
        Err(_) => "something else",
    };
    Failure::Syntax(ParseError {
        offset: text.len() - text.trim_start().len(),
        expected: vec![expected.to_string()],
        found: found.to_string(),
    })
}

fn seifert_of(text: &str) -> Result<(SeifertData, Option<MarkedSeifert>), Failure> {
    match parse_expression(text)? {
        Expr::Seifert(d) => Ok((d, None)),
        Expr::Knot(KnotSpec::Fiber(m)) => Ok((m.data.clone(), Some(m))),
        _ => Err(wrong_kind(text, "Seifert expression")),
    }
}

fn gluing_of(text: &str) -> Result<GluingSpec, Failure> {
    match parse_expression(text)? {
        Expr::Gluing(g) => Ok(g),
        _ => Err(wrong_kind(text, "`splice(...)` or `glue(...)`")),
    }
}

fn tuple(v: &[impl ToString]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn graph_lines(g: &PlumbingGraph) -> Vec<String> {
    let mut lines = vec![format!("center {}: {}", g.center, g.framing(g.center).unwrap_or(0))];
    for (i, leg) in g.leg_framings().iter().enumerate() {
        let f: Vec<String> = leg.iter().map(i64::to_string).collect();
        lines.push(format!("leg {}: {}", i + 1, f.join(" ")));
    }
    lines
}

fn search_lines(best: &MaxChar) -> Vec<String> {
    vec![
        format!("characteristic vector: {}", tuple(&best.vector.0)),
        format!("norm: {}", best.norm),
        format!(
            "nodes: {}, unit summands: {}, block ranks: {}",
            best.stats.nodes,
            best.stats.unit_summands,
            tuple(&best.stats.block_ranks)
        ),
    ]
}

#[derive(Serialize)]
struct DJson<'a> {
    d: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    graph: Option<&'a PlumbingGraph>,
    #[serde(skip_serializing_if = "Option::is_none")]
    search: Option<&'a MaxChar>,
}

fn evaluate(cmd: &Command, text: &str, verbose: bool) -> Result<Output, Failure> {
    match cmd {
        Command::Normalize(_) => {
            let (data, _) = seifert_of(text)?;
            let n = normalize(&data)?;
            Ok(Output {
                text: format!("e = {}, b = {}", n.e, tuple(&n.b)),
                json: to_json(&n),
            })
        }
        Command::Plumbing(_) => {
            let (data, _) = seifert_of(text)?;
            let g = plumbing_graph(&data)?;
            let lattice = gram_matrix(&g)?;
            let mut lines = graph_lines(&g);
            if verbose {
                lines.push(format!("gram: {lattice}"));
            }
            Ok(Output {
                text: lines.join("\n"),
                json: to_json(&g),
            })
        }
        Command::D(_) => {
            let (data, _) = seifert_of(text)?;
            if data.is_sphere() {
                // no lattice needed, and long legs would make it large
                let mut text = "0".to_string();
                if verbose {
                    text.push_str("\nfewer than three singular fibers: S3");
                }
                return Ok(Output {
                    text,
                    json: to_json(&DJson {
                        d: 0,
                        rank: None,
                        graph: None,
                        search: None,
                    }),
                });
            }
            let c = compute_seifert(&data, &SearchOptions::default())?;
            let mut lines = vec![c.d.to_string()];
            if verbose {
                lines.push(format!("rank: {}", c.lattice.rank()));
                lines.extend(graph_lines(&c.graph));
                lines.extend(search_lines(&c.best));
            }
            let json = DJson {
                d: c.d.get(),
                rank: verbose.then_some(c.lattice.rank()),
                graph: verbose.then_some(&c.graph),
                search: verbose.then_some(&c.best),
            };
            Ok(Output {
                text: lines.join("\n"),
                json: to_json(&json),
            })
        }
        Command::MuBar(_) => {
            let (data, _) = seifert_of(text)?;
            let w = wu_mu_bar(&gram_matrix(&plumbing_graph(&data)?)?)?;
            let mut lines = vec![w.mu_bar.to_string()];
            if verbose {
                lines.push(format!("wu class: {}", tuple(&w.coordinates)));
            }
            Ok(Output {
                text: lines.join("\n"),
                json: to_json(&w),
            })
        }
        Command::SpliceD(_) => report_output(&splice_report(&gluing_of(text)?)?, verbose),
        Command::Bounds { extended, .. } => {
            let calculus = if *extended {
                SurgeryCalculus::Extended
            } else {
                SurgeryCalculus::Strict
            };
            report_output(&gluing_report(&gluing_of(text)?, calculus)?, verbose)
        }
        Command::V0Torus(_) => {
            let Expr::Knot(KnotSpec::Torus { p, q, mirrored }) = parse_expression(text)? else {
                return Err(wrong_kind(text, "`torus(p,q)` or `-torus(p,q)`"));
            };
            let v = v0_torus(p, q, mirrored)?;
            #[derive(Serialize)]
            struct V0 {
                v0: i64,
            }
            Ok(Output {
                text: v.to_string(),
                json: to_json(&V0 { v0: v }),
            })
        }
        Command::DLattice(_) => {
            let Expr::Lattice(l) = parse_expression(text)? else {
                return Err(wrong_kind(text, "JSON array of integer arrays"));
            };
            let (d, best) = d_invariant_with(&l, &SearchOptions::default())?;
            let mut lines = vec![d.to_string()];
            if verbose {
                lines.extend(search_lines(&best));
            }
            let json = DJson {
                d: d.get(),
                rank: verbose.then_some(l.rank()),
                graph: None,
                search: verbose.then_some(&best),
            };
            Ok(Output {
                text: lines.join("\n"),
                json: to_json(&json),
            })
        }
        Command::Check {
            lambda,
            expect_equality,
            ..
        } => check(text, *lambda, *expect_equality),
    }
}

fn report_output(r: &Report, verbose: bool) -> Result<Output, Failure> {
    let mut text = match r.d {
        Some(d) => d.to_string(),
        None => format!("[{}, {}]", r.lower, r.upper),
    };
    if verbose {
        let method = serde_json::to_value(r.method).expect("serializable");
        text.push_str(&format!("\nmethod: {}", method.as_str().unwrap_or_default()));
    }
    Ok(Output { text, json: to_json(r) })
}

#[derive(Serialize)]
struct Casson {
    lambda: i64,
    chi_hf_red: i64,
    dim_hf_red: i64,
}

#[derive(Serialize)]
struct CheckJson {
    d: i64,
    mu_bar: i64,
    bound: i64,
    equality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    casson: Option<Casson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    monotonicity: Vec<Monotonicity>,
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(text: &str, lambda: Option<i64>, expect_equality: bool) -> Result<Output, Failure> {
    let (data, marked) = seifert_of(text)?;
    let m = mu_bar_check(&data, expect_equality)?;
    let mut lines = vec![
        format!("d = {}", m.d),
        format!("-2 mu_bar = {}", m.bound),
        "d >= -2 mu_bar: yes".to_string(),
        format!("d = -2 mu_bar: {}", yes(m.equality)),
    ];
    let casson = match lambda {
        Some(lambda) => {
            let chi = casson_euler(m.d, lambda)?;
            lines.push(format!("chi(HF_red) = {chi}"));
            lines.push(format!("dim HF_red = {}", -chi));
            Some(Casson {
                lambda,
                chi_hf_red: chi,
                dim_hf_red: -chi,
            })
        }
        None => None,
    };
    let mut monotonicity = Vec::new();
    if let Some(k) = marked {
        for eps in [-1, 1] {
            match monotonicity_check(&k, eps) {
                Ok(r) => {
                    lines.push(format!(
                        "{:+}-surgery on fiber {}: d {} -> {}, monotone: {}",
                        eps,
                        k.order(),
                        r.before,
                        r.after,
                        yes(r.holds)
                    ));
                    monotonicity.push(r);
                }
                Err(Error::NotStabilized { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }
    let json = CheckJson {
        d: m.d,
        mu_bar: m.mu_bar,
        bound: m.bound,
        equality: m.equality,
        casson,
        monotonicity,
    };
    Ok(Output {
        text: lines.join("\n"),
        json: to_json(&json),
    })
}

/// Build the global thread pool from `SPLICE_D_THREADS` if it is set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = match value.trim().parse() {
        Ok(n) if n > 0 => n,
        _ => return Err(format!("{THREADS_VAR} must be a positive integer, got `{value}`")),
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// Parse arguments, evaluate and print. Returns the exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            let code = e.exit_code();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };

    let expressions: Vec<String> = if cli.stdin {
        if cli.command.expression().is_some() {
            let _ = writeln!(err, "error: give an expression or --stdin, not both");
            return 2;
        }
        let mut lines = Vec::new();
        for line in input.lines() {
            match line {
                Ok(l) if l.trim().is_empty() => {}
                Ok(l) => lines.push(l),
                Err(e) => {
                    let _ = writeln!(err, "error: reading standard input: {e}");
                    return 2;
                }
            }
        }
        lines
    } else {
        match cli.command.expression() {
            Some(e) => vec![e.to_string()],
            None => {
                let _ = writeln!(err, "error: missing expression (or use --stdin)");
                return 2;
            }
        }
    };

    let mut code = 0;
    for text in &expressions {
        match evaluate(&cli.command, text, cli.verbose) {
            Ok(o) => {
                let _ = writeln!(out, "{}", if cli.json { &o.json } else { &o.text });
            }
            Err(f) => {
                code = code.max(f.code());
                let _ = if cli.json {
                    writeln!(out, "{}", f.json())
                } else {
                    writeln!(err, "{}", f.text())
                };
            }
        }
    }
    code
}
