//! Command-line arguments and command dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use qhecke_core::hecke::{self, HeckeElt};
use qhecke_core::nilhecke::{is_idempotent, NilHecke};
use qhecke_core::oracle::check_relations;
use qhecke_core::projiso::{self, ProjObject, SearchOptions};
use qhecke_core::uplus::{self, pair_closed, pair_recursive};
use qhecke_core::{tl, Graph, KlrAlgebra, LedgerOptions, RationalGraded, Seq, Weight};
use serde_json::{json, Value};
use thiserror::Error;

use crate::expr::{format_klr, format_word, parse_hecke, parse_klr, parse_word, ParseError};
use crate::graph_file::{format_weight, load_graph, odd_cycle_warning, parse_weight, GraphFileError, WeightError};
use crate::json;
use crate::suite::{self, SuiteConfig, SuiteError};

/// Exact computations in quiver Hecke algebras, U+, nilHecke, Hecke and
/// Temperley-Lieb algebras.
#[derive(Debug, Parser)]
#[command(name = "qhecke", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Graph file, or one of A1, A2, A3, edgeless2.
    #[arg(long, global = true, default_value = "A2")]
    pub graph: String,
    /// Weight such as `2i+j`.
    #[arg(long, global = true)]
    pub nu: Option<String>,
    /// Highest polynomial degree used by checks.
    #[arg(long, global = true)]
    pub max_degree: Option<u32>,
    /// Seed for all random choices.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses one per core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Sign of the `i j i` braid correction for adjacent labels.
    #[arg(long, global = true, default_value_t = 1, allow_negative_numbers = true)]
    pub r7_sign: i64,
    /// Machine-readable JSON output (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Quiver Hecke algebras.
    #[command(subcommand)]
    Klr(KlrCmd),
    /// NilHecke algebras.
    #[command(subcommand)]
    Nilhecke(NilHeckeCmd),
    /// The quantum group U+ through its bilinear form.
    #[command(subcommand)]
    Uplus(UplusCmd),
    /// Hecke and Temperley-Lieb algebras.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// The acceptance suite.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Debug, Subcommand)]
pub enum KlrCmd {
    /// Multiplies elements, the first on top: `"s1 * 1(i,i)" "x1 * 1(i,i)"`.
    Mul {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Graded dimension of `1_top R 1_bottom`.
    Gdim {
        #[arg(long)]
        bottom: String,
        #[arg(long)]
        top: String,
    },
    /// Checks the defining relations against the polynomial representation.
    VerifyRelations,
    /// Searches for inverse isomorphisms between sums of projectives given
    /// as `seq[:shift]` lists, e.g. `--left "iji:1,iji:-1" --right "iij,jii"`.
    Iso {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum NilHeckeCmd {
    /// Column idempotent, column endomorphisms, matrix units and copies.
    Check {
        #[arg(long, short)]
        m: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum UplusCmd {
    /// The bilinear form on two words `E(i)*E(j)`.
    Pair {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Dimension of the weight space of `--nu`.
    Dim,
    /// Quantum Serre relation for two vertices.
    Serre {
        #[arg(long)]
        i: String,
        #[arg(long)]
        j: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeckeCmd {
    /// Multiplies elements such as `"T[1]*T[2] + (q-1)*T[1]"` or `"b[1]*b[2]"`.
    Mul {
        #[arg(long, short)]
        n: usize,
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Checks the T- and b-relations, the rank and the Temperley-Lieb quotient.
    Verify {
        #[arg(long, short)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SuiteCmd {
    /// Runs the acceptance suite; a missing or empty config uses defaults.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Graph(#[from] GraphFileError),
    #[error("{0}")]
    Weight(#[from] WeightError),
    #[error("cannot parse `{text}`: {source}")]
    Parse { text: String, source: ParseError },
    #[error("{0}")]
    Suite(#[from] SuiteError),
    #[error("{0}")]
    Usage(String),
}

/// What a command produced: a JSON value, a human rendering and whether
/// every check passed.
#[derive(Debug)]
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub ok: bool,
    pub warnings: Vec<String>,
}

impl Outcome {
    fn new(json: Value, text: String, ok: bool) -> Self {
        Outcome { json, text, ok, warnings: Vec::new() }
    }

    /// Process exit code: 0 if all checks passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            self.text.clone()
        } else {
            serde_json::to_string(&self.json).expect("serializable")
        }
    }
}

fn usage(m: impl Into<String>) -> CliError {
    CliError::Usage(m.into())
}

struct Ctx {
    graph: Graph,
    global: Global,
}

impl Ctx {
    fn ledger(&self) -> Result<LedgerOptions, CliError> {
        match self.global.r7_sign {
            1 | -1 => Ok(LedgerOptions { r7_sign: self.global.r7_sign }),
            s => Err(usage(format!("--r7-sign must be 1 or -1, got {s}"))),
        }
    }

    fn nu(&self) -> Result<Option<Weight>, CliError> {
        self.global.nu.as_deref().map(|t| parse_weight(&self.graph, t)).transpose().map_err(Into::into)
    }

    fn nu_required(&self) -> Result<Weight, CliError> {
        self.nu()?.ok_or_else(|| usage("this command needs --nu"))
    }

    fn vertex(&self, name: &str) -> Result<usize, CliError> {
        self.graph.vertex(name).ok_or_else(|| usage(format!("unknown vertex `{name}`")))
    }

    /// `E(i)*E(j)`, `i,j`, `i j`, or `ij` when all names are single letters.
    fn seq(&self, text: &str) -> Result<Seq, CliError> {
        if text.contains('(') {
            return parse_word(text, &self.graph).map_err(|source| CliError::Parse { text: text.into(), source });
        }
        let parts: Vec<&str> = text.split([',', ' ']).filter(|s| !s.is_empty()).collect();
        let names: Vec<String> = if parts.len() == 1 && self.graph.vertex(parts[0]).is_none() {
            parts[0].chars().map(String::from).collect()
        } else {
            parts.into_iter().map(String::from).collect()
        };
        names.iter().map(|n| self.vertex(n)).collect::<Result<Vec<_>, _>>().map(Seq)
    }

    fn seq_json(&self, s: &Seq) -> Value {
        json::seq(&self.graph, s)
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    if let Command::Suite(SuiteCmd::Run { config }) = &cli.command {
        return run_suite(config.as_deref(), &cli.global);
    }
    let graph = load_graph(&cli.global.graph)?;
    let warning = odd_cycle_warning(&graph);
    let ctx = Ctx { graph, global: cli.global };
    let mut out = match cli.command {
        Command::Klr(cmd) => klr(&ctx, cmd),
        Command::Nilhecke(NilHeckeCmd::Check { m }) => nilhecke(&ctx, m),
        Command::Uplus(cmd) => uplus_cmd(&ctx, cmd),
        Command::Hecke(cmd) => hecke_cmd(&ctx, cmd),
        Command::Suite(_) => unreachable!("handled above"),
    }?;
    out.warnings.extend(warning.map(String::from));
    Ok(out)
}

fn klr(ctx: &Ctx, cmd: KlrCmd) -> Result<Outcome, CliError> {
    let g = &ctx.graph;
    let ledger = ctx.ledger()?;
    match cmd {
        KlrCmd::Mul { exprs } => {
            let nu = ctx.nu()?;
            let mut acc: Option<(KlrAlgebra, qhecke_core::Element)> = None;
            for text in &exprs {
                let weight = nu.clone().or_else(|| acc.as_ref().map(|(a, _)| a.weight().clone()));
                let (alg, e) = parse_klr(text, g, weight.as_ref(), ledger).map_err(|source| CliError::Parse { text: text.clone(), source })?;
                acc = Some(match acc {
                    None => (alg, e),
                    Some((alg, prev)) => {
                        let p = alg.mul(&prev, &e).map_err(|e| usage(e.to_string()))?;
                        (alg, p)
                    }
                });
            }
            let (alg, e) = acc.expect("at least one expression");
            let text = format_klr(g, &e);
            let degree = e.homogeneous_degree(g);
            let json = json!({
                "weight": format_weight(g, alg.weight()),
                "text": text,
                "element": json::element(g, &e),
                "degree": degree.map_or(Value::String("inhomogeneous".into()), |d| d.map_or(Value::Null, Value::from)),
                "integral": e.is_integral(),
            });
            Ok(Outcome::new(json, text, true))
        }
        KlrCmd::Gdim { bottom, top } => {
            let (b, t) = (ctx.seq(&bottom)?, ctx.seq(&top)?);
            let n = g.num_vertices();
            if b.weight(n) != t.weight(n) {
                let json = json!({ "gdim": json::rational_graded(&RationalGraded::zero()), "series": [] });
                return Ok(Outcome::new(json, "0".into(), true));
            }
            let alg = KlrAlgebra::for_seq(g.clone(), &b);
            let rg = alg.gdim_hom_closed(&b, &t).map_err(|e| usage(e.to_string()))?;
            let cutoff = i64::from(ctx.global.max_degree.unwrap_or(10));
            let series = rg.expand(cutoff);
            let json = json!({
                "bottom": ctx.seq_json(&b),
                "top": ctx.seq_json(&t),
                "gdim": json::rational_graded(&rg),
                "series": json::laurent(&series),
                "cutoff": cutoff,
            });
            Ok(Outcome::new(json, format!("{rg}\n= {series} + O(q^{})", cutoff + 1), true))
        }
        KlrCmd::VerifyRelations => {
            let nu = ctx.nu_required()?;
            let max_degree = ctx.global.max_degree.unwrap_or(10);
            let mut failures = Vec::new();
            let all = qhecke_core::cartan::seqs(&nu);
            for s in &all {
                for f in check_relations(g, s, max_degree, ledger) {
                    failures.push(format!("{f:?}"));
                }
            }
            let ok = failures.is_empty();
            let json = json!({
                "weight": format_weight(g, &nu),
                "sequences": all.len(),
                "max_degree": max_degree,
                "r7_sign": ledger.r7_sign,
                "passed": ok,
                "failures": failures,
            });
            let text = if ok {
                format!("all relations hold on {} sequences up to degree {max_degree}", all.len())
            } else {
                format!("{} relation failures:\n{}", failures.len(), failures.join("\n"))
            };
            Ok(Outcome::new(json, text, ok))
        }
        KlrCmd::Iso { left, right } => {
            let a = objects(ctx, &left)?;
            let b = objects(ctx, &right)?;
            let alg = KlrAlgebra::with_ledger(g.clone(), a[0].seq.weight(g.num_vertices()), ledger).map_err(|e| usage(e.to_string()))?;
            let opts = SearchOptions { seed: ctx.global.seed.unwrap_or(SearchOptions::default().seed), ..SearchOptions::default() };
            let shadow = projiso::k0_shadow(&alg, &a, &b).map_err(|e| usage(e.to_string()))?;
            let obj_json = |o: &ProjObject| json!({ "seq": ctx.seq_json(&o.seq), "shift": o.shift });
            let mat_json = |m: &projiso::MorMatrix| -> Value {
                m.entries.iter().map(|row| row.iter().map(|e| json::element(g, e)).collect::<Vec<_>>()).collect()
            };
            let mut json = json!({
                "left": a.iter().map(obj_json).collect::<Vec<_>>(),
                "right": b.iter().map(obj_json).collect::<Vec<_>>(),
                "k0_shadow": shadow,
                "seed": opts.seed,
            });
            let (ok, text) = match projiso::find_inverse_pair_with(&alg, &a, &b, opts) {
                Ok((u, v)) => {
                    let verified = projiso::verify_inverse_pair(&alg, &u, &v).map_err(|e| usage(e.to_string()))?;
                    json["found"] = true.into();
                    json["verified"] = verified.into();
                    json["u"] = mat_json(&u);
                    json["v"] = mat_json(&v);
                    let show = |m: &projiso::MorMatrix| {
                        m.entries.iter().map(|row| row.iter().map(|e| format_klr(g, e)).collect::<Vec<_>>().join("  |  ")).collect::<Vec<_>>().join("\n  ")
                    };
                    (verified && shadow, format!("isomorphic (verified: {verified}, K0 shadow: {shadow})\nU:\n  {}\nV:\n  {}", show(&u), show(&v)))
                }
                Err(e) => {
                    json["found"] = false.into();
                    json["reason"] = e.to_string().into();
                    (false, format!("no isomorphism: {e} (K0 shadow: {shadow})"))
                }
            };
            json["passed"] = ok.into();
            Ok(Outcome::new(json, text, ok))
        }
    }
}

/// `iji:1,iji:-1` -> projectives with shifts.
fn objects(ctx: &Ctx, text: &str) -> Result<Vec<ProjObject>, CliError> {
    let out: Vec<ProjObject> = text
        .split(',')
        .map(|part| {
            let (s, shift) = match part.split_once(':') {
                Some((s, k)) => (s, k.trim().parse::<i64>().map_err(|_| usage(format!("bad shift in `{part}`")))?),
                None => (part, 0),
            };
            Ok(ProjObject::new(ctx.seq(s.trim())?, shift))
        })
        .collect::<Result<_, CliError>>()?;
    if out.is_empty() {
        return Err(usage("no projectives given"));
    }
    Ok(out)
}

fn nilhecke(ctx: &Ctx, m: usize) -> Result<Outcome, CliError> {
    let nh = NilHecke::new(m).map_err(|e| usage(e.to_string()))?;
    let idem = is_idempotent(nh.algebra(), &nh.column_idempotent());
    let mut ok = idem;
    let mut json = json!({ "m": m, "idempotent": idem });
    let mut text = vec![format!("e_{m}^2 = e_{m}: {idem}")];
    if m <= 3 {
        let expected = RationalGraded::symmetric_polys(m as u32);
        match nh.gdim_column_end() {
            Ok(end) => {
                let matches = end.rg_equal(&expected);
                ok &= matches;
                json["column_end"] = json::rational_graded(&end);
                json["column_end_matches_symmetric_polys"] = matches.into();
                text.push(format!("gdim e R e = {end} (matches 1/prod(1-q^2k): {matches})"));
            }
            Err(e) => {
                ok = false;
                json["column_end_error"] = e.to_string().into();
                text.push(format!("gdim e R e: {e}"));
            }
        }
        let units = nh.matrix_units().map(|u| nh.check_matrix_units(&u)).unwrap_or(false);
        let copies = nh.check_copies().unwrap_or(false);
        let decomposition = nh.check_column_decomposition().unwrap_or(false);
        ok &= units && copies && decomposition;
        json["matrix_units"] = units.into();
        json["copies"] = copies.into();
        json["column_decomposition"] = decomposition.into();
        text.push(format!("matrix units: {units}\n([m]!)^2 copies: {copies}\ncolumn module decomposition: {decomposition}"));
    } else {
        text.push("graded dimension checks run for m <= 3 only".into());
    }
    let _ = ctx;
    json["passed"] = ok.into();
    Ok(Outcome::new(json, text.join("\n"), ok))
}

fn uplus_cmd(ctx: &Ctx, cmd: UplusCmd) -> Result<Outcome, CliError> {
    let g = &ctx.graph;
    match cmd {
        UplusCmd::Pair { u, v } => {
            let (u, v) = (ctx.seq(&u)?, ctx.seq(&v)?);
            let rec = pair_recursive(g, &u, &v);
            let closed = pair_closed(g, &u, &v);
            let n = g.num_vertices();
            let hom = if u.weight(n) == v.weight(n) {
                KlrAlgebra::for_seq(g.clone(), &u).gdim_hom_closed(&u, &v).map_err(|e| usage(e.to_string()))?
            } else {
                RationalGraded::zero()
            };
            let agree = rec == closed && rec == hom;
            let json = json!({
                "u": format_word(g, &u),
                "v": format_word(g, &v),
                "pairing": json::rational_graded(&rec),
                "closed": json::rational_graded(&closed),
                "hom_gdim": json::rational_graded(&hom),
                "agree": agree,
            });
            Ok(Outcome::new(json, format!("({}, {}) = {rec}\nagrees with closed form and hom space: {agree}", format_word(g, &u), format_word(g, &v)), agree))
        }
        UplusCmd::Dim => {
            let nu = ctx.nu_required()?;
            let dim = uplus::weight_dim(g, &nu);
            let mut json = json!({ "weight": format_weight(g, &nu), "dim": dim });
            let mut text = format!("dim U+({}) = {dim}", format_weight(g, &nu));
            let mut ok = true;
            if suite::is_finite_type(g) {
                let roots = suite::positive_roots(g, nu.total() as u32);
                let k = suite::kostant_count(&roots, &nu);
                ok = k == dim as u64;
                json["kostant"] = k.into();
                text.push_str(&format!(" (Kostant partition count {k})"));
            }
            json["passed"] = ok.into();
            Ok(Outcome::new(json, text, ok))
        }
        UplusCmd::Serre { i, j } => {
            let (vi, vj) = (ctx.vertex(&i)?, ctx.vertex(&j)?);
            let ok = uplus::serre_check(g, vi, vj).map_err(|e| usage(e.to_string()))?;
            let json = json!({ "i": i, "j": j, "inner": g.inner(vi, vj), "holds": ok });
            Ok(Outcome::new(json, format!("Serre relation for ({i}, {j}): {ok}"), ok))
        }
    }
}

fn hecke_cmd(ctx: &Ctx, cmd: HeckeCmd) -> Result<Outcome, CliError> {
    let _ = ctx;
    match cmd {
        HeckeCmd::Mul { n, exprs } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let mut acc = HeckeElt::identity(n);
            for text in &exprs {
                let e = parse_hecke(text, n).map_err(|source| CliError::Parse { text: text.clone(), source })?;
                acc = &acc * &e;
            }
            let text = acc.to_string();
            let img = tl::hecke_to_tl(&acc);
            let json = json!({ "n": n, "text": text, "terms": json::hecke(&acc), "tl_image_is_zero": img.is_zero() });
            Ok(Outcome::new(json, text, true))
        }
        HeckeCmd::Verify { n } => {
            if n == 0 {
                return Err(usage("--n must be at least 1"));
            }
            let tf = hecke::check_t_relations(n);
            let bf = hecke::check_b_relations(n);
            let rank = hecke::t_basis_closure(n);
            let fact: usize = (1..=n).product();
            let tl_dim = tl::basis(n).len() as u64;
            let catalan = tl::catalan(n);
            let quotient = tl::check_quotient(n);
            let ok = tf.is_empty() && bf.is_empty() && rank == fact && tl_dim == catalan && quotient;
            let json = json!({
                "n": n,
                "t_relation_failures": tf.iter().map(|f| format!("{f:?}")).collect::<Vec<_>>(),
                "b_relation_failures": bf.iter().map(|f| format!("{f:?}")).collect::<Vec<_>>(),
                "rank": rank,
                "tl_dim": tl_dim,
                "catalan": catalan,
                "tl_quotient": quotient,
                "passed": ok,
            });
            let text = format!(
                "T-relations: {}\nb-relations: {}\nrank {rank} (n! = {fact})\nTL_{n}: {tl_dim} matchings (Catalan {catalan})\nquotient map: {quotient}",
                if tf.is_empty() { "ok" } else { "FAIL" },
                if bf.is_empty() { "ok" } else { "FAIL" },
            );
            Ok(Outcome::new(json, text, ok))
        }
    }
}

fn run_suite(config: Option<&std::path::Path>, global: &Global) -> Result<Outcome, CliError> {
    let mut cfg = match config {
        Some(p) => SuiteConfig::load(p)?,
        None => SuiteConfig::default(),
    };
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    if let Some(d) = global.max_degree {
        cfg.max_degree = d;
    }
    if global.r7_sign != 1 {
        cfg.ledger.r7_sign = global.r7_sign;
    }
    let report = suite::run_suite(&cfg, global.jobs)?;
    let mut lines: Vec<String> = report
        .criteria
        .iter()
        .map(|c| {
            let mut s = format!(
                "criterion {} [{}] {} ({} checks, {:.1} s)",
                c.id,
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.checks,
                c.millis as f64 / 1000.0
            );
            for f in &c.failures {
                s.push_str(&format!("\n    {f}"));
            }
            if c.failure_count as usize > c.failures.len() {
                s.push_str(&format!("\n    ... {} failures in total", c.failure_count));
            }
            s
        })
        .collect();
    lines.push(format!(
        "seed {}, {} threads, {:.1} s: {}",
        report.seed,
        report.jobs,
        report.millis as f64 / 1000.0,
        if report.passed { "all criteria pass" } else { "FAILURES" }
    ));
    let ok = report.passed;
    let mut out = Outcome::new(serde_json::to_value(&report).expect("serializable"), lines.join("\n"), ok);
    out.warnings = report.warnings;
    Ok(out)
}
