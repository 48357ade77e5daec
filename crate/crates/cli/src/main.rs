//! `graphcalc`: generating series of colored bipartite graphs from the
//! command line. Exit status 0 on success, 1 when a verification fails and
//! 2 on a usage or input error.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graph_enum::{dump, enumerate_graphs, graph_series, Bounds, EnumSpec, VertexFilter, VertexRule};
use oracle_verify::{props, CheckReport, QuadratureProblem, Suite, Weights};
use pde_solve::{init, solve, Kind, PdeProblem};
use series_core::json::poly_to_json;
use series_core::rational::{int, parse_rational};
use series_core::{Poly, Rational, Series, TruncationSpec};
use serde_json::json;
use stable_poly::{counting_comb, counting_stable, solve_p_comb, StableTower};

const MAX_CLASSES_VAR: &str = "GRAPHCALC_MAX_CLASSES";
const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug)]
#[command(name = "graphcalc", version, about = "Generating series of colored bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve the heat system, or Burgers with --connected.
    Psi(PsiArgs),
    /// One genus layer Ψ_g from its dedicated formula.
    Genus(GenusArgs),
    /// A stable graph polynomial P_g.
    StablePoly(StablePolyArgs),
    /// Closed-form one-color counting functions.
    Counting(CountingArgs),
    /// Enumerate graph classes.
    Enumerate(EnumerateArgs),
    /// Run verification suites.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// Number of colors.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Truncation box such as Dx=4,Ds=3,G=2.
    #[arg(long, value_parser = parse_trunc)]
    trunc: TruncationSpec,
    /// builtin:comb, builtin:stable, builtin:symbolic, inline JSON terms, or @file.
    #[arg(long, default_value = "builtin:symbolic")]
    init: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct PsiArgs {
    #[command(flatten)]
    common: Common,
    /// Connected graphs only: the Burgers solution.
    #[arg(long)]
    connected: bool,
}

#[derive(Args, Debug)]
struct GenusArgs {
    #[arg(long)]
    g: u32,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct StablePolyArgs {
    #[arg(long)]
    g: u32,
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// The one-color combinatorial specialization.
    #[arg(long, conflicts_with = "r")]
    comb: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CountingKind {
    Comb,
    Stable,
}

#[derive(Args, Debug)]
struct CountingArgs {
    #[arg(long)]
    g: u32,
    #[arg(long, value_enum)]
    kind: CountingKind,
    #[arg(long, value_parser = parse_trunc)]
    trunc: TruncationSpec,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rule {
    Any,
    Stable,
    Comb,
    CombStable,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, value_parser = parse_trunc)]
    trunc: TruncationSpec,
    #[arg(long, value_enum, default_value_t = Rule::Any)]
    rule: Rule,
    #[arg(long)]
    connected: bool,
    /// One line per class instead of the generating series.
    #[arg(long)]
    dump: bool,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Tree identities, chains, cycles and layer consistency.
    GenusIdentities {
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_parser = parse_trunc)]
        trunc: TruncationSpec,
    },
    /// Numeric asymptotics of a Gaussian integral as TSV.
    Asymptotic {
        /// U = -ξ⁴/4! ħ^{-1}.
        #[arg(long, required = true)]
        quartic: bool,
        #[arg(long = "G", default_value_t = 3)]
        top: u32,
        #[arg(long, value_parser = parse_rat, default_value = "1")]
        s: Rational,
        #[arg(long, default_value_t = 256)]
        precision: usize,
        /// Comma-separated ladder of ħ values.
        #[arg(long, value_delimiter = ',', value_parser = parse_rat)]
        hbar: Vec<Rational>,
    },
    /// Every suite at one truncation.
    All {
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, value_parser = parse_trunc)]
        trunc: TruncationSpec,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
}

fn parse_trunc(s: &str) -> Result<TruncationSpec, String> {
    TruncationSpec::parse(s).map_err(|e| e.to_string())
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn max_classes() -> Result<usize, Failure> {
    match std::env::var(MAX_CLASSES_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{MAX_CLASSES_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(graph_enum::enumerate::DEFAULT_MAX_CLASSES),
    }
}

/// The initial condition named by `spec` over `r` colors in box `t`.
fn initial(spec: &str, r: usize, t: TruncationSpec) -> Result<Poly, Failure> {
    let val = t.dx + 2 * t.ds;
    let one_color = |p: Poly| if r == 1 { Ok(p) } else { Err(usage(format!("{spec} is defined for one color"))) };
    match spec {
        "builtin:comb" => one_color(init::builtin_comb(val)),
        "builtin:stable" => one_color(init::builtin_stable(val)),
        "builtin:symbolic" => Ok(init::symbolic(r, t.g.unwrap_or(2) as u16, val, &init::vacuum_labels(r))),
        _ => {
            let text = match spec.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
                None => spec.to_string(),
            };
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(format!("initial condition JSON: {e}")))?;
            Ok(series_core::json::poly_from_json(&v)?)
        }
    }
}

fn emit_series(s: &Series, format: Format) -> String {
    match format {
        Format::Json => json!({ "trunc": s.trunc().to_string(), "terms": s.to_json() }).to_string(),
        Format::Text => s.poly().to_string(),
    }
}

fn report(reports: &[CheckReport]) -> Result<String, Failure> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!("{r}\n"));
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    out.push_str(&format!("{} checks, {failed} failed\n", reports.len()));
    print!("{out}");
    if failed > 0 {
        Err(Failure::Verification)
    } else {
        Ok(String::new())
    }
}

fn genus_identities(suite: &Suite, r: usize, t: TruncationSpec) -> Result<Vec<CheckReport>, Failure> {
    let mut out = Vec::new();
    for w in [Weights::Symbolic, Weights::Combinatorial] {
        out.extend(suite.identity_suite(r, t.dx, t.ds, w)?);
    }
    out.extend(suite.layer_consistency(r, t.with_g(Some(t.g.unwrap_or(2))))?);
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    let suite = Suite { max_classes: max_classes()? };
    match cli.command {
        Command::Psi(a) => {
            let c = &a.common;
            let u = initial(&c.init, c.r, c.trunc)?;
            let kind = if a.connected { Kind::Burgers } else { Kind::Heat };
            let psi = solve(&PdeProblem { r: c.r, u, trunc: c.trunc, kind })?;
            Ok(emit_series(&psi, c.format))
        }
        Command::Genus(a) => {
            let c = &a.common;
            let lb = genus_expansion::layer_box(c.trunc.dx, c.trunc.ds);
            let u = initial(&c.init, c.r, c.trunc.with_g(Some(c.trunc.g.unwrap_or(1).max(a.g))))?;
            let layers = genus_expansion::genus_layers(&u, a.g.max(1) as u16);
            let f = genus_expansion::gradient(&layers[0], c.r);
            let h = genus_expansion::hessian(&layers[0], c.r);
            let phi = genus_expansion::tree_solve(&f, lb)?;
            let psi0 = genus_expansion::psi0_integrate(&layers[0], &phi, lb)?;
            let layer = match a.g {
                0 => psi0,
                1 => genus_expansion::psi1(&layers[1], &h, &phi, &psi0, lb)?,
                g => {
                    let mut tower = StableTower::new(c.r);
                    tower.extend_to(g)?;
                    genus_expansion::psi_g_substitute(&tower.p(g)?.poly, &layers, &h, &phi, lb)?
                }
            };
            Ok(emit_series(&layer, c.format))
        }
        Command::StablePoly(a) => {
            if a.g < 2 {
                return Err(usage("stable polynomials start at genus 2"));
            }
            if a.comb {
                let p = solve_p_comb(a.g)?;
                let text = p[a.g as usize].to_string();
                return Ok(match a.format {
                    Format::Text => text,
                    Format::Json => {
                        let coeffs: Vec<String> = (0..=3 * a.g as usize - 3)
                            .map(|k| series_core::rational::to_fraction_string(&p[a.g as usize].coeff(k)))
                            .collect();
                        json!({ "g": a.g, "coeffs": coeffs }).to_string()
                    }
                });
            }
            let mut tower = StableTower::new(a.r);
            tower.extend_to(a.g)?;
            let p = tower.p(a.g)?.poly;
            Ok(match a.format {
                Format::Text => p.to_string(),
                Format::Json => json!({ "g": a.g, "r": a.r, "terms": poly_to_json(&p) }).to_string(),
            })
        }
        Command::Counting(a) => {
            if a.g < 2 {
                return Err(usage("counting functions start at genus 2"));
            }
            let p = solve_p_comb(a.g)?;
            let lb = genus_expansion::layer_box(a.trunc.dx, a.trunc.ds);
            let s = match a.kind {
                CountingKind::Comb => counting_comb(a.g, &p[a.g as usize], lb)?,
                CountingKind::Stable => counting_stable(a.g, &p[a.g as usize], lb)?,
            };
            Ok(emit_series(&s, a.format))
        }
        Command::Enumerate(a) => {
            let top = a.trunc.g.ok_or_else(|| usage("enumeration needs a finite G"))?;
            let rule = match a.rule {
                Rule::Any => VertexRule::Any,
                Rule::Stable => VertexRule::Stable,
                Rule::Comb => VertexRule::Combinatorial,
                Rule::CombStable => VertexRule::CombStable,
            };
            let mut filter = VertexFilter::with_rule(top as u16, rule);
            filter.max_valence = Some(a.trunc.dx + 2 * a.trunc.ds);
            let bounds = Bounds { max_s: a.trunc.ds, max_tails: a.trunc.dx, max_genus: Some(top as i64), connected_only: a.connected };
            let mut spec = EnumSpec::new(a.r, bounds, filter);
            spec.max_classes = suite.max_classes;
            let set = enumerate_graphs(&spec)?;
            if a.dump {
                Ok(dump(&set).trim_end().to_string())
            } else {
                Ok(emit_series(&graph_series(&set, a.trunc)?, Format::Json))
            }
        }
        Command::Verify { what } => match what {
            VerifyCommand::GenusIdentities { r, trunc } => report(&genus_identities(&suite, r, trunc)?),
            VerifyCommand::Asymptotic { quartic: _, top, s, precision, hbar } => {
                let mut p = QuadratureProblem::quartic(s);
                p.precision = precision;
                if !hbar.is_empty() {
                    p.hbar_values = hbar;
                }
                let mut tower = StableTower::new(1);
                let rep = oracle_verify::asymptotic_order_check(&p, &mut tower, top)?;
                print!("{}", rep.tsv());
                if rep.passed {
                    Ok(String::new())
                } else {
                    Err(Failure::Verification)
                }
            }
            VerifyCommand::All { r, trunc, seed, instances } => {
                let top = trunc.g.unwrap_or(2);
                let t = trunc.with_g(Some(top));
                let mut out = suite.golden_tables()?;
                out.extend(suite.dual_path(6, 3)?);
                out.extend(suite.pde_graph_equivalence(r, t)?);
                out.extend(genus_identities(&suite, r, t)?);
                out.extend(suite.cayley(8)?);
                out.extend(suite.counting(t.dx, t.ds, top.max(2))?);
                out.extend(props::all(seed, instances)?);
                let p = QuadratureProblem::quartic(int(1));
                let mut tower = StableTower::new(1);
                for g in 1..=3 {
                    let rep = oracle_verify::asymptotic_order_check(&p, &mut tower, g)?;
                    let name = format!("quartic asymptotics G={g}");
                    out.push(if rep.passed {
                        CheckReport::pass(&name)
                    } else {
                        CheckReport::fail(&name, format!("orders {:?}", rep.orders()))
                    });
                }
                report(&out)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
