//! Command-line front end. [`run`] parses an argument vector, executes one
//! verb and writes the report; the return value is the process exit code.

pub mod load;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{AlgebraFile, FiniteAlgebra};
use crate::congruence::{con_lattice, delta_epsilon_folded, malcev_chain, ChainOutcome, Congruence};
use crate::corpus::{self, BUILTIN_NAMES};
use crate::error::{Error, Result};
use crate::factor::{
    check_bfc, decompose, decomposition_systems, factor_congruences, strict_refinement, GammaTable,
};
use crate::formula::{
    build_phi1, build_phi2, build_pi, build_psi, check_factor_preservation, check_kernel_characterization,
    check_star_conditions, eval_formula, gamma_vs_pi,
};
use crate::limits::Limits;
use crate::malcev::{verify_scheme_identities, x_vector_names, x_vector_terms, CompiledScheme, SubstitutionMap};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SIZE_GUARD: i32 = 3;

/// Environment variable capping the worker pool; `0` or unset means one
/// thread per core.
pub const THREADS_ENV: &str = "BFC_LAB_THREADS";

#[derive(Parser, Debug)]
#[command(name = "bfc-lab", version, about = "Finite algebra workbench for factor congruences and property (*)")]
pub struct Cli {
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest table or product universe any step may build.
    #[arg(long, global = true, value_name = "N")]
    max_cells: Option<u128>,
    /// Largest number of assignments an exhaustive check may visit.
    #[arg(long, global = true, value_name = "N")]
    max_assignments: Option<u128>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Inspect and build algebras.
    #[command(subcommand)]
    Alg(AlgCmd),
    /// Congruences, generation and Mal'cev chains.
    #[command(subcommand)]
    Con(ConCmd),
    /// Factor congruences.
    #[command(subcommand)]
    Fc(FcCmd),
    /// Witness schemes.
    #[command(subcommand)]
    Scheme(SchemeCmd),
    /// First-order formulas.
    #[command(subcommand)]
    Formula(FormulaCmd),
    /// Bundled objects.
    #[command(subcommand)]
    Corpus(CorpusCmd),
}

#[derive(Subcommand, Debug)]
enum AlgCmd {
    /// Print operation tables.
    Show {
        #[arg(long)]
        alg: String,
    },
    /// Direct product of the given algebras, first factor most significant.
    Product {
        #[arg(long = "alg", required = true)]
        algs: Vec<String>,
        #[arg(long)]
        name: Option<String>,
    },
    /// Quotient by a congruence (`delta`, `nabla`, `cg:a,b;..` or labels).
    Quotient {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        by: String,
    },
}

#[derive(Subcommand, Debug)]
enum ConCmd {
    /// The congruence lattice.
    List {
        #[arg(long)]
        alg: String,
    },
    /// Least congruence containing the pairs `a,b;c,d;..`.
    Cg {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        pairs: String,
    },
    /// Element-level witness for a pair in `Cg(gens)`.
    Chain {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        gens: String,
        #[arg(long)]
        pair: String,
        #[arg(long, default_value_t = 8)]
        max_depth: usize,
    },
    /// The δ/ε relation recursion for four congruences.
    Delta {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        theta_star: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        phi_star: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Alternating composition length replacing each `∘`.
        #[arg(long, default_value_t = 1)]
        fold: usize,
    },
}

#[derive(Subcommand, Debug)]
enum FcCmd {
    /// Factor congruences with their complements.
    List {
        #[arg(long)]
        alg: String,
    },
    /// Is FC(A) a distributive sublattice of Con(A)?
    Bfc {
        #[arg(long)]
        alg: String,
    },
    /// `A ≅ A/θ × A/θ*` for a complementary pair.
    Decompose {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        theta: String,
        #[arg(long)]
        theta_star: String,
    },
    /// Γ(a,b,c,d) for one tuple, or the Γ kernel of every pair.
    Gamma {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        tuple: Option<String>,
    },
    /// Strict refinement for every pair of decomposition systems.
    Refine {
        #[arg(long)]
        alg: String,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
}

#[derive(Subcommand, Debug)]
enum SchemeCmd {
    /// Check every scheme identity on an algebra.
    Verify {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        alg: String,
    },
    /// Apply σ, σ*, ρ or ρ*: symbolically, or to `--values` in `--alg`.
    Sigma {
        #[arg(long)]
        scheme: String,
        #[arg(long, default_value = "sigma")]
        map: String,
        #[arg(long, requires = "values")]
        alg: Option<String>,
        #[arg(long, requires = "alg")]
        values: Option<String>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Part {
    Pi,
    Phi1,
    Phi2,
    Psi,
}

#[derive(Subcommand, Debug)]
enum FormulaCmd {
    /// Evaluate under `--assign x=a,y=b,..`.
    Eval {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        formula: String,
        #[arg(long, default_value = "")]
        assign: String,
    },
    /// Build π, Φ1, Φ2 or Ψ_m from a scheme.
    Build {
        #[arg(long)]
        scheme: String,
        #[arg(long, value_enum, default_value = "pi")]
        part: Part,
        #[arg(long, required_if_eq("part", "psi"))]
        m: Option<usize>,
    },
    /// The three property (*) conditions.
    Star {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        formula: String,
    },
    /// Preservation by `A × B` and its factors; pass `--alg` twice.
    Preserve {
        #[arg(long = "alg", num_args = 1, required = true)]
        algs: Vec<String>,
        #[arg(long)]
        formula: String,
    },
    /// Kernel characterization on `A0 × A1`; pass `--alg` twice.
    Kernel {
        #[arg(long = "alg", num_args = 1, required = true)]
        algs: Vec<String>,
        #[arg(long)]
        formula: String,
    },
    /// Compare a formula with Γ over all tuples.
    GammaVsPi {
        #[arg(long)]
        alg: String,
        #[arg(long)]
        formula: String,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusCmd {
    /// Builtin names, kinds and descriptions.
    List,
    /// A builtin in its file format.
    Export { name: String },
    /// Recompute the band0.algebraA counterexample.
    Counterexample,
}

struct Report {
    json: Value,
    text: String,
    passed: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report { json, text, passed: true }
    }

    fn check(passed: bool, json: Value, text: String) -> Report {
        Report { json, text, passed }
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    if let Err(e) = init_threads() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    let mut limits = Limits::default();
    if let Some(c) = cli.max_cells {
        limits.max_cells = c;
    }
    if let Some(a) = cli.max_assignments {
        limits.max_assignments = a;
    }
    match dispatch(&cli.command, &limits) {
        Ok(report) => {
            let written = if cli.json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report.json).expect("report serializes"))
            } else {
                write!(out, "{}", report.text)
            };
            if written.is_err() {
                return EXIT_USAGE;
            }
            if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeGuard { .. } => EXIT_SIZE_GUARD,
        _ => EXIT_USAGE,
    }
}

fn init_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{THREADS_ENV} must be a non-negative integer, got `{raw}`")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(cmd: &Command, limits: &Limits) -> Result<Report> {
    match cmd {
        Command::Alg(c) => alg_cmd(c, limits),
        Command::Con(c) => con_cmd(c, limits),
        Command::Fc(c) => fc_cmd(c, limits),
        Command::Scheme(c) => scheme_cmd(c, limits),
        Command::Formula(c) => formula_cmd(c, limits),
        Command::Corpus(c) => corpus_cmd(c),
    }
}

fn algebra_json(a: &FiniteAlgebra) -> Value {
    serde_json::to_value(AlgebraFile::from(a)).expect("algebra serializes")
}

fn render_algebra(a: &FiniteAlgebra) -> String {
    let n = a.size();
    let names: Vec<String> = (0..n).map(|e| a.element_name(e)).collect();
    let mut s = format!("{} ({} elements: {})\n", a.name(), n, names.join(" "));
    let width = names.iter().map(|x| x.chars().count()).max().unwrap_or(1);
    for (i, (sym, arity)) in a.signature().ops().iter().enumerate() {
        let t = a.table(i);
        match arity {
            0 => writeln!(s, "{sym} = {}", names[t[0]]),
            1 => writeln!(s, "{sym}: {}", (0..n).map(|x| format!("{}→{}", names[x], names[t[x]])).collect::<Vec<_>>().join(" ")),
            2 => {
                let _ = writeln!(s, "{sym:>width$} | {}", names.iter().map(|x| format!("{x:>width$}")).collect::<Vec<_>>().join(" "));
                for x in 0..n {
                    let row: Vec<String> = (0..n).map(|y| format!("{:>width$}", names[t[x * n + y]])).collect();
                    let _ = writeln!(s, "{:>width$} | {}", names[x], row.join(" "));
                }
                Ok(())
            }
            _ => {
                let mut args = vec![0; *arity];
                for (idx, &v) in t.iter().enumerate() {
                    crate::algebra::decode_tuple(idx, n, &mut args);
                    let shown: Vec<&str> = args.iter().map(|&e| names[e].as_str()).collect();
                    let _ = writeln!(s, "{sym}({}) = {}", shown.join(","), names[v]);
                }
                Ok(())
            }
        }
        .expect("write to string");
    }
    s
}

fn blocks_text(alg: &FiniteAlgebra, c: &Congruence) -> String {
    c.partition()
        .blocks()
        .iter()
        .map(|b| format!("{{{}}}", b.iter().map(|&e| alg.element_name(e)).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join("")
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn pass(b: bool) -> &'static str {
    if b {
        "PASS"
    } else {
        "FAIL"
    }
}

fn alg_cmd(cmd: &AlgCmd, limits: &Limits) -> Result<Report> {
    match cmd {
        AlgCmd::Show { alg } => {
            let a = load::algebra(alg)?;
            Ok(Report::ok(algebra_json(&a), render_algebra(&a)))
        }
        AlgCmd::Product { algs, name } => {
            let factors = algs.iter().map(|s| load::algebra(s)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&FiniteAlgebra> = factors.iter().collect();
            let mut p = FiniteAlgebra::direct_product_with(&refs, limits)?;
            if let Some(n) = name {
                p = p.renamed(n.clone());
            }
            Ok(Report::ok(algebra_json(&p), render_algebra(&p)))
        }
        AlgCmd::Quotient { alg, by } => {
            let a = load::algebra(alg)?;
            let theta = load::congruence(&a, by)?;
            let (q, block_of) = a.quotient(&theta)?;
            let text = format!("{}block of each element: {:?}\n", render_algebra(&q), block_of);
            Ok(Report::ok(json!({ "algebra": algebra_json(&q), "block_of": block_of }), text))
        }
    }
}

fn con_cmd(cmd: &ConCmd, limits: &Limits) -> Result<Report> {
    match cmd {
        ConCmd::List { alg } => {
            let a = load::algebra(alg)?;
            let lat = con_lattice(&a, limits)?;
            let mut text = format!("Con({}) has {} congruences\n", a.name(), lat.len());
            for (i, c) in lat.iter().enumerate() {
                let _ = writeln!(text, "{i:>4}  {}", blocks_text(&a, c));
            }
            let labels: Vec<&[usize]> = lat.iter().map(|c| c.labels()).collect();
            Ok(Report::ok(json!({ "algebra": a.name(), "congruences": labels }), text))
        }
        ConCmd::Cg { alg, pairs } => {
            let a = load::algebra(alg)?;
            let gens = load::pairs(&a, pairs)?;
            let c = crate::congruence::cg(&a, &gens)?;
            Ok(Report::ok(
                json!({ "algebra": a.name(), "pairs": gens, "congruence": c.labels() }),
                format!("{}\n", blocks_text(&a, &c)),
            ))
        }
        ConCmd::Chain { alg, gens, pair, max_depth } => {
            let a = load::algebra(alg)?;
            let gens = load::pairs(&a, gens)?;
            let (x, y) = match load::pairs(&a, pair)?.as_slice() {
                &[p] => p,
                _ => return Err(Error::Parse("--pair takes exactly one pair".into())),
            };
            let outcome = malcev_chain(&a, &gens, x, y, *max_depth)?;
            let replays = outcome.replays(&a, &gens, x, y);
            let mut text = String::new();
            let found = match &outcome {
                ChainOutcome::Chain(steps) => {
                    let _ = writeln!(text, "chain of length {} from {} to {}", steps.len(), a.element_name(x), a.element_name(y));
                    for s in steps {
                        let (u, v) = gens[s.generator];
                        let (u, v) = if s.flipped { (v, u) } else { (u, v) };
                        let _ = writeln!(
                            text,
                            "  {} -> {}  via p(t) = {} on ({}, {})",
                            a.element_name(s.from),
                            a.element_name(s.to),
                            s.polynomial.describe(&a, "t"),
                            a.element_name(u),
                            a.element_name(v)
                        );
                    }
                    let _ = writeln!(text, "replays: {}", yes(replays));
                    replays
                }
                ChainOutcome::NotInCongruence => {
                    text.push_str("the pair is not in the generated congruence\n");
                    false
                }
                ChainOutcome::WitnessDepthExceeded => {
                    text.push_str("the pair is in the congruence but no chain within the depth bound\n");
                    false
                }
            };
            Ok(Report::check(
                found,
                json!({ "algebra": a.name(), "gens": gens, "pair": [x, y], "result": outcome, "replays": replays }),
                text,
            ))
        }
        ConCmd::Delta { alg, theta, theta_star, phi, phi_star, n, fold } => {
            let a = load::algebra(alg)?;
            let cs = [theta, theta_star, phi, phi_star]
                .iter()
                .map(|s| load::congruence(&a, s))
                .collect::<Result<Vec<_>>>()?;
            let de = delta_epsilon_folded(&a, &cs[0], &cs[1], &cs[2], &cs[3], *n, *fold)?;
            let pairs = de.to_pairs(*n, *fold);
            let show = |ps: &[(usize, usize)]| {
                ps.iter()
                    .filter(|(x, y)| x != y)
                    .map(|&(x, y)| format!("({},{})", a.element_name(x), a.element_name(y)))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            let text = format!(
                "δ_{n} ∖ Δ: {}\nε_{n} ∖ Δ: {}\nδ_{n} = Δ: {}\n",
                show(&pairs.delta),
                show(&pairs.epsilon),
                yes(de.delta == crate::congruence::BinaryRelation::identity(a.size()))
            );
            Ok(Report::ok(serde_json::to_value(&pairs).expect("pairs serialize"), text))
        }
    }
}

fn fc_cmd(cmd: &FcCmd, limits: &Limits) -> Result<Report> {
    match cmd {
        FcCmd::List { alg } => {
            let a = load::algebra(alg)?;
            let fc = factor_congruences(&a, limits)?;
            let mut text = format!("FC({}) has {} members\n", a.name(), fc.len());
            let mut rows = Vec::new();
            for e in &fc {
                let comps: Vec<String> = e.complements.iter().map(|c| blocks_text(&a, c)).collect();
                let _ = writeln!(text, "  {}  complements: {}", blocks_text(&a, &e.congruence), comps.join(" "));
                rows.push(json!({
                    "congruence": e.congruence.labels(),
                    "complements": e.complements.iter().map(|c| c.labels()).collect::<Vec<_>>(),
                }));
            }
            Ok(Report::ok(json!({ "algebra": a.name(), "factor_congruences": rows }), text))
        }
        FcCmd::Bfc { alg } => {
            let a = load::algebra(alg)?;
            let r = check_bfc(&a, limits)?;
            let mut text = format!(
                "{}: |FC| = {}, sublattice: {}, distributive: {}\n",
                a.name(),
                r.fc.len(),
                yes(r.is_sublattice),
                yes(r.is_distributive)
            );
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "witness: {}", serde_json::to_string(w).expect("witness serializes"));
            }
            Ok(Report::check(r.passed(), serde_json::to_value(&r).expect("report serializes"), text))
        }
        FcCmd::Decompose { alg, theta, theta_star } => {
            let a = load::algebra(alg)?;
            let t = load::congruence(&a, theta)?;
            let ts = load::congruence(&a, theta_star)?;
            let d = decompose(&a, &t, &ts)?;
            let mut text = format!("{} ≅ A/θ × A/θ*\n\nA/θ:\n{}\nA/θ*:\n{}\n", a.name(), render_algebra(&d.left), render_algebra(&d.right));
            for (e, (x, y)) in d.map.iter().enumerate() {
                let _ = writeln!(text, "  {} ↦ ({}, {})", a.element_name(e), x, y);
            }
            Ok(Report::ok(
                json!({ "left": algebra_json(&d.left), "right": algebra_json(&d.right), "map": d.map }),
                text,
            ))
        }
        FcCmd::Gamma { alg, tuple } => {
            let a = load::algebra(alg)?;
            let g = GammaTable::new(&a, limits)?;
            match tuple {
                Some(t) => {
                    let es = load::elements(&a, t)?;
                    let &[x, y, z, w] = es.as_slice() else {
                        return Err(Error::LengthMismatch { expected: 4, found: es.len() });
                    };
                    let holds = g.holds(x, y, z, w)?;
                    Ok(Report::ok(
                        json!({ "tuple": [x, y, z, w], "gamma": holds }),
                        format!("Γ({}) = {}\n", t, holds),
                    ))
                }
                None => {
                    let n = a.size();
                    let mut text = String::new();
                    let mut rows = Vec::new();
                    for c in 0..n {
                        for d in 0..n {
                            let k = g.kernel(c, d);
                            let _ = writeln!(text, "Γ(·,·,{},{}): {}", a.element_name(c), a.element_name(d), blocks_text(&a, k));
                            rows.push(json!({ "c": c, "d": d, "kernel": k.labels() }));
                        }
                    }
                    Ok(Report::ok(json!({ "algebra": a.name(), "kernels": rows }), text))
                }
            }
        }
        FcCmd::Refine { alg, max_len } => {
            let a = load::algebra(alg)?;
            let fc: Vec<Congruence> = factor_congruences(&a, limits)?.into_iter().map(|e| e.congruence).collect();
            let systems = decomposition_systems(&a, &fc, *max_len)?;
            let mut failures = Vec::new();
            let mut checked = 0usize;
            for (i, d) in systems.iter().enumerate() {
                for (j, e) in systems.iter().enumerate() {
                    checked += 1;
                    let r = strict_refinement(&a, d, e)?;
                    if !r.ok {
                        failures.push(json!({ "first": i, "second": j, "report": r }));
                    }
                }
            }
            let sys_json: Vec<Vec<&[usize]>> =
                systems.iter().map(|s| s.congruences().iter().map(|c| c.labels()).collect()).collect();
            let mut text = format!("{} decomposition systems, {} pairs checked\n", systems.len(), checked);
            for (i, s) in systems.iter().enumerate() {
                let parts: Vec<String> = s.congruences().iter().map(|c| blocks_text(&a, c)).collect();
                let _ = writeln!(text, "  [{i}] {}", parts.join("  "));
            }
            let _ = writeln!(text, "strict refinement: {}", pass(failures.is_empty()));
            Ok(Report::check(
                failures.is_empty(),
                json!({ "algebra": a.name(), "systems": sys_json, "pairs_checked": checked, "failures": failures }),
                text,
            ))
        }
    }
}

fn scheme_cmd(cmd: &SchemeCmd, limits: &Limits) -> Result<Report> {
    match cmd {
        SchemeCmd::Verify { scheme, alg } => {
            let s = load::scheme(scheme)?;
            let a = load::algebra(alg)?;
            let r = verify_scheme_identities(&s, &a, limits)?;
            let mut text = format!("{}: {}\n", r.algebra, if r.consistent { "all identities hold" } else { "identities fail" });
            for g in &r.groups {
                let _ = writeln!(text, "  {:<20} {:>3} identities  {}", g.name, g.identities.len(), pass(g.passed));
                if let Some(f) = &g.first_failure {
                    let _ = writeln!(text, "    {}  at {:?}", f.label, f.counterexample.as_ref().expect("failure has a counterexample"));
                }
            }
            Ok(Report::check(r.consistent, serde_json::to_value(&r).expect("report serializes"), text))
        }
        SchemeCmd::Sigma { scheme, map, alg, values } => {
            let s = load::scheme(scheme)?;
            let m = SubstitutionMap::parse(map)?;
            let names = x_vector_names(s.n());
            match (alg, values) {
                (Some(alg), Some(values)) => {
                    let a = load::algebra(alg)?;
                    let xs = load::elements(&a, values)?;
                    let compiled = CompiledScheme::new(&s, &a)?;
                    let out = m.apply_concrete(&compiled, &a, &xs)?;
                    let shown: Vec<String> = out.iter().map(|&e| a.element_name(e)).collect();
                    Ok(Report::ok(
                        json!({ "map": m.symbol(), "input": xs, "output": out }),
                        format!("{}({}) = ({})\n", m.symbol(), values, shown.join(", ")),
                    ))
                }
                _ => {
                    let out = m.apply_symbolic(&s, &x_vector_terms(s.n()))?;
                    let rendered: Vec<String> = out.iter().map(|t| t.to_string()).collect();
                    let mut text = String::new();
                    for (v, t) in names.iter().zip(&rendered) {
                        let _ = writeln!(text, "{v} ↦ {t}");
                    }
                    Ok(Report::ok(json!({ "map": m.symbol(), "variables": names, "output": rendered }), text))
                }
            }
        }
    }
}

fn assignment(a: &FiniteAlgebra, arg: &str) -> Result<crate::algebra::Assignment> {
    arg.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("expected `var=element`, got `{kv}`")))?;
            Ok((k.trim().to_string(), a.parse_element(v.trim())?))
        })
        .collect()
}

fn two_algebras(algs: &[String]) -> Result<(FiniteAlgebra, FiniteAlgebra)> {
    match algs {
        [x, y] => Ok((load::algebra(x)?, load::algebra(y)?)),
        _ => Err(Error::Parse(format!("pass --alg exactly twice, got {}", algs.len()))),
    }
}

fn formula_cmd(cmd: &FormulaCmd, limits: &Limits) -> Result<Report> {
    match cmd {
        FormulaCmd::Eval { alg, formula, assign } => {
            let a = load::algebra(alg)?;
            let f = load::formula(formula)?;
            let env = assignment(&a, assign)?;
            let v = eval_formula(&a, &f, &env)?;
            Ok(Report::ok(json!({ "value": v }), format!("{v}\n")))
        }
        FormulaCmd::Build { scheme, part, m } => {
            let s = load::scheme(scheme)?;
            let f = match part {
                Part::Pi => build_pi(&s),
                Part::Phi1 => build_phi1(&s),
                Part::Phi2 => build_phi2(&s),
                Part::Psi => build_psi(&s, m.expect("clap requires --m for psi")),
            };
            Ok(Report::ok(json!({ "formula": f.to_string() }), format!("{f}\n")))
        }
        FormulaCmd::Star { alg, formula } => {
            let a = load::algebra(alg)?;
            let f = load::formula(formula)?;
            let r = check_star_conditions(&a, &f, limits)?;
            let mut text = String::new();
            for (label, c) in [("π(a,b,a,b)", &r.cond_a), ("π(a,a,c,d)", &r.cond_b), ("π(a,b,c,c) → a = b", &r.cond_c)] {
                let _ = write!(text, "{label:<20} {}", pass(c.holds));
                if let Some(w) = c.witness {
                    let _ = write!(text, "  at {:?}", w.map(|e| a.element_name(e)));
                }
                text.push('\n');
            }
            Ok(Report::check(r.passed(), serde_json::to_value(&r).expect("report serializes"), text))
        }
        FormulaCmd::Preserve { algs, formula } => {
            let (x, y) = two_algebras(algs)?;
            let f = load::formula(formula)?;
            let r = check_factor_preservation(&x, &y, &f, limits)?;
            let mut text = format!("{} × {}: {} tuples, {}\n", x.name(), y.name(), r.tuples_checked, pass(r.passed));
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "witness: {}", serde_json::to_string(w).expect("witness serializes"));
            }
            Ok(Report::check(r.passed, serde_json::to_value(&r).expect("report serializes"), text))
        }
        FormulaCmd::Kernel { algs, formula } => {
            let (x, y) = two_algebras(algs)?;
            let f = load::formula(formula)?;
            let r = check_kernel_characterization(&x, &y, &f, limits)?;
            let mut text = format!("{} × {}: {} tuples, {}\n", x.name(), y.name(), r.tuples_checked, pass(r.passed));
            if let Some(w) = &r.witness {
                let _ = writeln!(text, "witness: {}", serde_json::to_string(w).expect("witness serializes"));
            }
            Ok(Report::check(r.passed, serde_json::to_value(&r).expect("report serializes"), text))
        }
        FormulaCmd::GammaVsPi { alg, formula } => {
            let a = load::algebra(alg)?;
            let f = load::formula(formula)?;
            let r = gamma_vs_pi(&a, &f, limits)?;
            let text = format!(
                "{} tuples; π ⇒ Γ: {} ({} failures); Γ without π: {}\n",
                r.tuples_checked,
                pass(r.implication_holds),
                r.implication_failures.len(),
                r.converse_failures.len()
            );
            Ok(Report::check(r.implication_holds, serde_json::to_value(&r).expect("report serializes"), text))
        }
    }
}

fn corpus_cmd(cmd: &CorpusCmd) -> Result<Report> {
    match cmd {
        CorpusCmd::List => {
            let mut rows = Vec::new();
            let mut text = String::new();
            for name in BUILTIN_NAMES {
                let e = corpus::load_builtin(name)?;
                let _ = writeln!(text, "{:<24} {:<8} {}", e.name, e.payload.kind(), e.provenance);
                rows.push(json!({ "name": e.name, "kind": e.payload.kind(), "description": e.provenance }));
            }
            Ok(Report::ok(Value::Array(rows), text))
        }
        CorpusCmd::Export { name } => {
            let e = corpus::load_builtin(name)?;
            let body = e.payload.export();
            let json = match &e.payload {
                corpus::Payload::Formula(_) => json!({ "name": e.name, "kind": "formula", "formula": body }),
                _ => serde_json::from_str(&body)?,
            };
            Ok(Report::ok(json, format!("{body}\n")))
        }
        CorpusCmd::Counterexample => {
            let r = corpus::reproduce_counterexample()?;
            let mut text = format!("{}\n", r.algebra);
            for c in &r.clauses {
                let _ = writeln!(text, "  ({:>3}) {}: {}", c.label, c.statement, if c.holds { "holds" } else { "FAILS" });
            }
            if let Some(u) = &r.separating_u {
                let _ = writeln!(text, "  separating u = {u}: a·u = b·u but (a·c)·u ≠ (b·c)·u");
            }
            let _ = writeln!(text, "  no congruence family describes π here: {}", yes(r.matches));
            Ok(Report::check(r.matches, serde_json::to_value(&r).expect("report serializes"), text))
        }
    }
}
