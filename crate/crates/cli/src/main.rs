use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use eqkh::annular::{annular_homology, annular_quotient, build_annular_complex};
use eqkh::chromatic::{
    act_on_graph_state, build_graph_complex, chromatic_euler_check, compare_graph_fixed_points, graph_quotient,
    parse_graph, Graph, GraphState,
};
use eqkh::diagram::parse_file;
use eqkh::equivariant::{check_equivariance, compare_with_fixed_points, transfer_and_projection};
use eqkh::khovanov::{build_complex, skein_exactness_check, EnhancedState, Flavor, KhOptions, StateSpace};
use eqkh::oracles::{bracket_statesum, burnside_orbit_count, dense_homology, jones_from_bracket, DENSE_CAP};
use eqkh::{homology, CyclicAction, Error, HomologyTable, LinkDiagram};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "eqkh",
    version,
    about = "Equivariant Khovanov, annular and chromatic homology over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Grading convention for link homology.
    #[arg(long, value_enum, global = true, default_value_t = FlavorArg::Oriented)]
    flavor: FlavorArg,

    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    /// Largest crossing (or edge) count accepted.
    #[arg(long, global = true, env = "EQKH_CAP", default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    cap: u32,

    /// Compute even-order quotients even though the invariance results need odd order.
    #[arg(long, global = true)]
    allow_even_p: bool,

    /// Worker threads (0 uses all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Khovanov homology and its Euler characteristic.
    Kh { input: PathBuf },
    /// Equivariant homology of a diagram with a SYM action, compared with fixed points.
    Kheq { input: PathBuf },
    /// Triply graded annular homology; equivariant as well when SYM is given.
    Annular { input: PathBuf },
    /// Chromatic graph homology with the chromatic polynomial check.
    Graph { input: PathBuf },
    /// Equivariant chromatic homology under the AUT automorphism.
    Grapheq { input: PathBuf },
    /// Runs every consistency check available for the input.
    Verify { input: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FlavorArg {
    Oriented,
    Framed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Lib(Error),
    Usage(String),
    Checks(Vec<String>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::ResourceCap { .. }) => 2,
            Failure::Lib(Error::EvenOrder { .. }) => 4,
            Failure::Checks(_) => 3,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(p, e) => format!("cannot read {}: {e}", p.display()),
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::Checks(failed) => format!("failed checks: {}", failed.join(", ")),
        }
    }
}

type Run = Result<(), Failure>;

struct Ctx {
    flavor: Flavor,
    format: Format,
    opts: KhOptions,
    cap: usize,
    allow_even: bool,
}

/// One section of output: a named table, polynomials and status lines.
#[derive(Default)]
struct Section {
    name: String,
    table: Option<HomologyTable>,
    polynomials: Vec<(String, String)>,
    checks: Vec<(String, bool)>,
}

impl Section {
    fn new(name: &str) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    fn table(mut self, t: HomologyTable) -> Self {
        self.table = Some(t);
        self
    }

    fn poly(mut self, name: &str, p: impl ToString) -> Self {
        self.polynomials.push((name.into(), p.to_string()));
        self
    }

    fn check(mut self, name: &str, ok: bool) -> Self {
        self.checks.push((name.into(), ok));
        self
    }
}

fn emit(ctx: &Ctx, command: &str, sections: &[Section]) {
    match ctx.format {
        Format::Json => {
            let body: Vec<Value> = sections
                .iter()
                .map(|s| {
                    let mut v = json!({ "name": s.name });
                    if let Some(t) = &s.table {
                        v["table"] = serde_json::to_value(t).expect("table serializes");
                    }
                    for (k, p) in &s.polynomials {
                        v["polynomials"][k] = json!(p);
                    }
                    for (k, ok) in &s.checks {
                        v["checks"][k] = json!(ok);
                    }
                    v
                })
                .collect();
            let out = json!({ "command": command, "sections": body });
            println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        Format::Table => {
            let mut out = String::new();
            for s in sections {
                if let Some(t) = &s.table {
                    let _ = writeln!(out, "{}: {}", s.name, t.to_table_string());
                }
                for (k, p) in &s.polynomials {
                    let _ = writeln!(out, "{k}: {p}");
                }
                for (k, ok) in &s.checks {
                    let _ = writeln!(out, "{k}: {}", if *ok { "PASS" } else { "FAIL" });
                }
            }
            print!("{out}");
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.into(), e))
}

fn load_diagram(path: &Path) -> Result<(LinkDiagram, Option<CyclicAction>), Failure> {
    Ok(parse_file(&read(path)?)?.build()?)
}

fn require_action(a: Option<CyclicAction>) -> Result<CyclicAction, Failure> {
    a.ok_or_else(|| Failure::Usage("input has no SYM line; equivariant commands need an action".into()))
}

fn cmd_kh(ctx: &Ctx, path: &Path) -> Run {
    let (d, _) = load_diagram(path)?;
    let h = homology(&build_complex(&d, ctx.flavor, &ctx.opts)?);
    let poly = h.euler_polynomial();
    emit(ctx, "kh", &[Section::new("homology").table(h).poly("polynomial", poly)]);
    Ok(())
}

fn cmd_kheq(ctx: &Ctx, path: &Path) -> Run {
    let (d, a) = load_diagram(path)?;
    let a = require_action(a)?;
    let (e, r) = compare_with_fixed_points(&d, &a, ctx.flavor, &ctx.opts, ctx.allow_even)?;
    let hg = e.homology();
    emit(
        ctx,
        "kheq",
        &[
            Section::new("equivariant")
                .poly("equivariant polynomial", hg.euler_polynomial())
                .table(hg),
            Section::new("homology")
                .poly("polynomial", r.homology.euler_polynomial())
                .table(r.homology.clone()),
            Section::new("fixed")
                .table(r.fixed.clone())
                .check("Theorem 1", r.passed()),
        ],
    );
    Ok(())
}

fn cmd_annular(ctx: &Ctx, path: &Path) -> Run {
    let (d, a) = load_diagram(path)?;
    let c = build_annular_complex(&d, &ctx.opts)?;
    let mut sections = vec![Section::new("annular").table(annular_homology(&c))];
    if let Some(a) = a {
        let e = annular_quotient(&d, &a, &ctx.opts, ctx.allow_even)?;
        sections.push(Section::new("equivariant annular").table(e.homology()));
    }
    emit(ctx, "annular", &sections);
    Ok(())
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn cmd_graph(ctx: &Ctx, path: &Path) -> Run {
    let g = load_graph(path)?;
    let h = homology(&build_graph_complex(&g, ctx.cap)?);
    let r = chromatic_euler_check(&g, ctx.cap)?;
    emit(
        ctx,
        "graph",
        &[Section::new("homology")
            .table(h)
            .poly("euler", &r.euler_q)
            .poly("chromatic", r.chromatic.format_with("λ"))
            .check("chromatic euler", r.passed())],
    );
    Ok(())
}

fn cmd_grapheq(ctx: &Ctx, path: &Path) -> Run {
    let g = load_graph(path)?;
    if g.automorphism().is_none() {
        return Err(Failure::Usage("input has no AUT line".into()));
    }
    let (e, r) = compare_graph_fixed_points(&g, ctx.cap, ctx.allow_even)?;
    let euler = chromatic_euler_check(&g, ctx.cap)?;
    let hg = e.homology();
    emit(
        ctx,
        "grapheq",
        &[
            Section::new("equivariant")
                .poly("equivariant euler", hg.euler_polynomial())
                .table(hg),
            Section::new("homology")
                .table(r.homology.clone())
                .poly("chromatic", euler.chromatic.format_with("λ"))
                .check("chromatic euler", euler.passed()),
            Section::new("fixed")
                .table(r.fixed.clone())
                .check("Theorem 1", r.passed()),
        ],
    );
    Ok(())
}

fn is_graph_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("V"))
}

fn dual_path<S: Sync>(c: &eqkh::GradedComplex<S>) -> Option<bool> {
    dense_homology(c, DENSE_CAP).ok().map(|h| h == homology(c))
}

fn verify_diagram(ctx: &Ctx, text: &str) -> Result<Section, Failure> {
    let (d, a) = parse_file(text)?.build()?;
    let mut s = Section::new("verify");
    let space = StateSpace::new(&d, &ctx.opts)?;
    let flavor = if d.is_oriented() { ctx.flavor } else { Flavor::Framed };
    let c = space.complex(flavor)?;
    s = s.check("d^2 = 0", c.d_squared_violations().is_empty());
    if let Some(ok) = dual_path(&c) {
        s = s.check("dense = sparse", ok);
    }
    if d.is_oriented() {
        let oriented = space.complex(Flavor::Oriented)?;
        let b = bracket_statesum(&d, ctx.cap)?;
        let jones = jones_from_bracket(&b, d.writhe()?);
        s = s.check("euler = bracket", homology(&oriented).euler_polynomial() == jones);
    }
    let exact = (0..d.crossing_count())
        .map(|v| skein_exactness_check(&d, v, &ctx.opts).map(|r| r.is_exact()))
        .collect::<Result<Vec<bool>, _>>()?;
    s = s.check("skein exactness", exact.iter().all(|&x| x));
    if d.is_annular() {
        let ac = build_annular_complex(&d, &ctx.opts)?;
        s = s.check("annular d^2 = 0", ac.complex.d_squared_violations().is_empty());
    }
    if let Some(a) = a {
        let act = |x: &EnhancedState| space.act(&a, x);
        s = s.check("equivariance", check_equivariance(&c, &act)?.commutes());
        let (e, r) = compare_with_fixed_points(&d, &a, flavor, &ctx.opts, ctx.allow_even)?;
        s = s.check("transfer", transfer_and_projection(&e, ctx.allow_even)?.passed());
        let counts = burnside_orbit_count(c.blocks(), a.order(), act)?;
        s = s.check("burnside", counts == e.quotient.chain_dims());
        s = s.check("Theorem 1", r.passed());
    }
    Ok(s)
}

fn verify_graph(ctx: &Ctx, text: &str) -> Result<Section, Failure> {
    let g = parse_graph(text)?;
    let c = build_graph_complex(&g, ctx.cap)?;
    let mut s = Section::new("verify")
        .check("d^2 = 0", c.d_squared_violations().is_empty())
        .check("chromatic euler", chromatic_euler_check(&g, ctx.cap)?.passed());
    if let Some(ok) = dual_path(&c) {
        s = s.check("dense = sparse", ok);
    }
    if let Some(aut) = g.automorphism() {
        let e = graph_quotient(&g, ctx.cap, ctx.allow_even)?;
        let act = |x: &GraphState| act_on_graph_state(&g, x).expect("automorphism present");
        s = s.check("equivariance", check_equivariance(&c, &act)?.commutes());
        s = s.check("transfer", transfer_and_projection(&e, ctx.allow_even)?.passed());
        let counts = burnside_orbit_count(c.blocks(), aut.p, act)?;
        s = s.check("burnside", counts == e.quotient.chain_dims());
        let (_, r) = compare_graph_fixed_points(&g, ctx.cap, ctx.allow_even)?;
        s = s.check("Theorem 1", r.passed());
    }
    Ok(s)
}

fn cmd_verify(ctx: &Ctx, path: &Path) -> Run {
    let text = read(path)?;
    let s = if is_graph_file(&text) {
        verify_graph(ctx, &text)?
    } else {
        verify_diagram(ctx, &text)?
    };
    let failed: Vec<String> = s.checks.iter().filter(|(_, ok)| !ok).map(|(k, _)| k.clone()).collect();
    emit(ctx, "verify", &[s]);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Checks(failed))
    }
}

fn run(cli: &Cli) -> Run {
    let ctx = Ctx {
        flavor: match cli.flavor {
            FlavorArg::Oriented => Flavor::Oriented,
            FlavorArg::Framed => Flavor::Framed,
        },
        format: cli.format,
        opts: KhOptions { cap: cli.cap as usize },
        cap: cli.cap as usize,
        allow_even: cli.allow_even_p,
    };
    match &cli.command {
        Command::Kh { input } => cmd_kh(&ctx, input),
        Command::Kheq { input } => cmd_kheq(&ctx, input),
        Command::Annular { input } => cmd_annular(&ctx, input),
        Command::Graph { input } => cmd_graph(&ctx, input),
        Command::Grapheq { input } => cmd_grapheq(&ctx, input),
        Command::Verify { input } => cmd_verify(&ctx, input),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if cli.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
            log::warn!("could not size the worker pool: {e}");
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("eqkh: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
