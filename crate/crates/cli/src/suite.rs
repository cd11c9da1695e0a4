//! The acceptance suite: nine groups of exact checks, a TOML config and a
//! JSON report.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use qhecke_core::cartan::seqs;
use qhecke_core::hecke::{self, HeckeElt};
use qhecke_core::nilhecke::{is_idempotent, NilHecke};
use qhecke_core::oracle::{act_element, act_word, check_relations, PolyVector};
use qhecke_core::poly::monomials_up_to;
use qhecke_core::error::ProjError;
use qhecke_core::projiso::{self, ProjObject};
use qhecke_core::tl::{self, TLElt};
use qhecke_core::uplus::{self, k0_ind, k0_res, pair_closed, pair_recursive};
use qhecke_core::{
    BasisDiagram, Element, Generator, GeneratorWord, Graph, KlrAlgebra, LaurentPoly, LedgerOptions, Permutation,
    Rational, RationalGraded, Seq, Weight,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph_file::{format_weight, load_graph, GraphFileError};

pub const CRITERIA: [(u32, &str); 9] = [
    (1, "relations hold under the polynomial representation"),
    (2, "three pairings agree with graded dimensions of hom spaces"),
    (3, "quantum Serre relations"),
    (4, "isomorphisms of graded projectives"),
    (5, "nilHecke column idempotents, matrix units and copies"),
    (6, "divided powers match the column endomorphism ring"),
    (7, "weight space dimensions match Kostant partition counts"),
    (8, "Hecke and Temperley-Lieb relations"),
    (9, "structural properties"),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LedgerConfig {
    /// Sign in the `i j i` braid relation for adjacent `i, j`.
    pub r7_sign: i64,
}

impl Default for LedgerConfig {
    fn default() -> Self {
        LedgerConfig { r7_sign: LedgerOptions::default().r7_sign }
    }
}

/// Suite parameters. Every field has a default, so an empty file is valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Built-in names (`A1`, `A2`, `A3`, `edgeless2`) or graph file paths.
    pub graphs: Vec<String>,
    /// Longest sequences for the relation check and the column idempotents.
    pub max_strands: usize,
    /// Highest polynomial degree fed to the representation.
    pub max_degree: u32,
    /// Largest `|nu|` for pairings, coproducts and weight dimensions.
    pub max_weight: usize,
    /// Largest nilHecke rank for graded dimension checks.
    pub nilhecke_max_rank: usize,
    pub hecke_max_rank: usize,
    pub tl_max_rank: usize,
    /// Random homogeneous triples for associativity, over all graphs.
    pub triples: usize,
    /// Random generator words per graph for the sampled checks.
    pub samples: usize,
    pub seed: u64,
    pub criteria: Vec<u32>,
    pub ledger: LedgerConfig,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            graphs: vec!["A2".into(), "A3".into(), "edgeless2".into()],
            max_strands: 4,
            max_degree: 10,
            max_weight: 4,
            nilhecke_max_rank: 3,
            hecke_max_rank: 5,
            tl_max_rank: 6,
            triples: 210,
            samples: 40,
            seed: 0x5eed,
            criteria: (1..=9).collect(),
            ledger: LedgerConfig::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad config: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("bad config: {0}")]
    Invalid(String),
    #[error("graph `{name}`: {source}")]
    Graph { name: String, source: GraphFileError },
    #[error("cannot start worker threads: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl SuiteConfig {
    pub fn parse(text: &str) -> Result<Self, SuiteError> {
        let cfg: SuiteConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, SuiteError> {
        let text = std::fs::read_to_string(path).map_err(|source| SuiteError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), SuiteError> {
        let bad = |m: &str| Err(SuiteError::Invalid(m.into()));
        if self.ledger.r7_sign.abs() != 1 {
            return bad("ledger.r7_sign must be 1 or -1");
        }
        if let Some(c) = self.criteria.iter().find(|c| !(1..=9).contains(*c)) {
            return Err(SuiteError::Invalid(format!("unknown criterion {c}")));
        }
        if self.graphs.is_empty() {
            return bad("at least one graph is needed");
        }
        if self.max_strands == 0 || self.max_strands > 6 {
            return bad("max_strands must be between 1 and 6");
        }
        if self.nilhecke_max_rank > 4 || self.hecke_max_rank > 7 || self.tl_max_rank > 9 || self.max_weight > 6 {
            return bad("rank bounds are too large to finish");
        }
        Ok(())
    }

    pub fn ledger_options(&self) -> LedgerOptions {
        LedgerOptions { r7_sign: self.ledger.r7_sign }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub checks: u64,
    /// The first few failures, and the total number of them.
    pub failures: Vec<String>,
    pub failure_count: u64,
    pub notes: Vec<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub passed: bool,
    pub seed: u64,
    pub jobs: usize,
    pub config: SuiteConfig,
    pub warnings: Vec<String>,
    pub criteria: Vec<CriterionReport>,
    pub millis: u128,
}

const MAX_LISTED_FAILURES: usize = 12;

/// Counts checks and keeps the first failures.
#[derive(Clone, Debug, Default)]
pub struct Tally {
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(what);
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        for f in other.failures {
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
        self
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.checks > 0
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items.par_iter().map(f).reduce(Tally::default, Tally::merge)
}

/// A graph together with the name it was given in the config.
#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
}

pub fn load_graphs(cfg: &SuiteConfig) -> Result<Vec<NamedGraph>, SuiteError> {
    cfg.graphs
        .iter()
        .map(|name| {
            load_graph(name)
                .map(|graph| NamedGraph { name: name.clone(), graph })
                .map_err(|source| SuiteError::Graph { name: name.clone(), source })
        })
        .collect()
}

/// Runs the selected criteria on a pool of `jobs` threads (0: one per core).
pub fn run_suite(cfg: &SuiteConfig, jobs: usize) -> Result<SuiteReport, SuiteError> {
    cfg.validate()?;
    let graphs = load_graphs(cfg)?;
    let warnings = graphs
        .iter()
        .filter_map(|g| crate::graph_file::odd_cycle_warning(&g.graph).map(|w| format!("{}: {w}", g.name)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let start = Instant::now();
    let criteria: Vec<CriterionReport> =
        pool.install(|| cfg.criteria.par_iter().map(|&id| run_criterion(id, cfg, &graphs)).collect());
    Ok(SuiteReport {
        passed: criteria.iter().all(|c| c.passed),
        seed: cfg.seed,
        jobs: pool.current_num_threads(),
        config: cfg.clone(),
        warnings,
        criteria,
        millis: start.elapsed().as_millis(),
    })
}

pub fn run_criterion(id: u32, cfg: &SuiteConfig, graphs: &[NamedGraph]) -> CriterionReport {
    let start = Instant::now();
    let tally = match id {
        1 => relations(cfg, graphs),
        2 => pairings(cfg, graphs),
        3 => serre(graphs),
        4 => isomorphisms(graphs),
        5 => nilhecke(cfg),
        6 => divided_powers(cfg, graphs),
        7 => weight_dims(cfg, graphs),
        8 => hecke_tl(cfg),
        9 => structural(cfg, graphs),
        _ => {
            let mut t = Tally::default();
            t.fail(format!("unknown criterion {id}"));
            t
        }
    };
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, n)| n);
    CriterionReport {
        id,
        name,
        passed: tally.passed(),
        checks: tally.checks,
        failures: tally.failures,
        failure_count: tally.failure_count,
        notes: tally.notes,
        millis: start.elapsed().as_millis(),
    }
}

/// All words of length `m` over `n` letters, in lexicographic order.
pub fn all_words(n: usize, m: usize) -> Vec<Seq> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out.into_iter().flat_map(|w: Vec<usize>| (0..n).map(move |i| [w.as_slice(), &[i]].concat())).collect();
    }
    out.into_iter().map(Seq).collect()
}

/// All weights on `n` vertices with total `m`.
pub fn weights_of_total(n: usize, m: usize) -> Vec<Weight> {
    fn go(n: usize, m: usize, acc: &mut Vec<u32>, out: &mut Vec<Weight>) {
        if acc.len() + 1 == n {
            acc.push(m as u32);
            out.push(Weight(acc.clone()));
            acc.pop();
            return;
        }
        for k in 0..=m {
            acc.push(k as u32);
            go(n, m - k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, m, &mut Vec::new(), &mut out);
    }
    out
}

fn rng_for(cfg: &SuiteConfig, criterion: u64, item: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ (criterion << 56) ^ item.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn random_seq(rng: &mut ChaCha8Rng, g: &Graph, m: usize) -> Seq {
    Seq((0..m).map(|_| rng.random_range(0..g.num_vertices())).collect())
}

fn random_word(rng: &mut ChaCha8Rng, bottom: Seq, len: usize) -> GeneratorWord {
    let m = bottom.len();
    let mut w = GeneratorWord::new(bottom);
    for _ in 0..len {
        if m > 1 && rng.random_bool(0.6) {
            w = w.cross(rng.random_range(0..m - 1));
        } else {
            w = w.dot(rng.random_range(0..m));
        }
    }
    w
}

fn random_diagram(rng: &mut ChaCha8Rng, bottom: Seq) -> BasisDiagram {
    let m = bottom.len();
    let perms = Permutation::all(m);
    let w = perms[rng.random_range(0..perms.len())].clone();
    let mut dots = vec![0; m];
    for _ in 0..rng.random_range(0..=2) {
        dots[rng.random_range(0..m)] += 1;
    }
    BasisDiagram::new(bottom, w, dots)
}

fn nonzero_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let c = rng.random_range(1..=3);
    Rational::from_integer(if rng.random_bool(0.5) { c } else { -c }.into())
}

/// A random nonzero homogeneous element of `1_top R 1_bottom`: up to three
/// diagrams of one degree with small integer coefficients. Returns `top` too.
fn random_homogeneous(rng: &mut ChaCha8Rng, alg: &KlrAlgebra, bottom: Seq) -> (Element, Seq) {
    let d = random_diagram(rng, bottom.clone());
    let top = d.top();
    let same = alg.basis_of_degree(&bottom, &top, alg.degree(&d)).expect("sequence of the algebra's weight");
    let single = alg.basis_element(d).scale(&nonzero_coeff(rng));
    let mut e = single.clone();
    for _ in 0..rng.random_range(0..=2) {
        let extra = same[rng.random_range(0..same.len())].clone();
        e.add_scaled(&nonzero_coeff(rng), &alg.basis_element(extra));
    }
    (if e.is_zero() { single } else { e }, top)
}

/// The word `x^dots psi_{canonical word} 1_bottom`, listed bottom to top.
pub fn normal_form_word(d: &BasisDiagram) -> GeneratorWord {
    let mut w = GeneratorWord::new(d.bottom.clone());
    for k in d.perm.canonical_word().into_iter().rev() {
        w = w.cross(k);
    }
    for (k, &a) in d.dots.iter().enumerate() {
        for _ in 0..a {
            w = w.dot(k);
        }
    }
    w
}

fn seq_name(g: &Graph, s: &Seq) -> String {
    g.format_seq(s)
}

// 1 -----------------------------------------------------------------------

fn relations(cfg: &SuiteConfig, graphs: &[NamedGraph]) -> Tally {
    let ledger = cfg.ledger_options();
    let items: Vec<(&NamedGraph, Seq)> = graphs
        .iter()
        .flat_map(|g| (1..=cfg.max_strands).flat_map(move |m| all_words(g.graph.num_vertices(), m).into_iter().map(move |s| (g, s))))
        .collect();
    let mut tally = par_tally(&items, |(g, s)| {
        let mut t = Tally::default();
        let failures = check_relations(&g.graph, s, cfg.max_degree, ledger);
        t.checks += 1;
        for f in failures {
            t.fail(format!("{}: {f:?}", g.name));
        }
        t
    });
    // Products computed by rewriting agree with the operators of their words.
    let sampled = par_tally(graphs, |g| {
        let mut t = Tally::default();
        let mut rng = rng_for(cfg, 1, g.name.len() as u64 + g.graph.num_vertices() as u64);
        for _ in 0..cfg.samples {
            let m = rng.random_range(2..=cfg.max_strands.max(2));
            let bottom = random_seq(&mut rng, &g.graph, m);
            let len = rng.random_range(1..=5);
            let word = random_word(&mut rng, bottom.clone(), len);
            let alg = KlrAlgebra::with_ledger(g.graph.clone(), bottom.weight(g.graph.num_vertices()), ledger).expect("weight of a word");
            let e = alg.normalize(&word).expect("valid word");
            let ok = monomials_up_to(m, cfg.max_degree.min(6)).into_iter().all(|a| {
                let v = PolyVector::monomial(bottom.clone(), a);
                act_element(&g.graph, &e, &v) == act_word(&g.graph, &word, &v)
            });
            t.check(ok, || format!("{}: product {} disagrees with its operator", g.name, describe_word(&g.graph, &word)));
        }
        t
    });
    tally.notes.push(format!("{} sequences, relation families R1-R7, monomials of degree <= {}", tally.checks, cfg.max_degree));
    tally.merge(sampled)
}

// 2 -----------------------------------------------------------------------

fn pairings(cfg: &SuiteConfig, graphs: &[NamedGraph]) -> Tally {
    let items: Vec<(&NamedGraph, Weight)> = graphs
        .iter()
        .flat_map(|g| (1..=cfg.max_weight).flat_map(move |m| weights_of_total(g.graph.num_vertices(), m).into_iter().map(move |w| (g, w))))
        .collect();
    par_tally(&items, |(g, nu)| {
        let mut t = Tally::default();
        let alg = KlrAlgebra::new(g.graph.clone(), nu.clone()).expect("weight on the graph");
        let words = seqs(nu);
        for u in &words {
            for v in &words {
                let rec = pair_recursive(&g.graph, u, v);
                let closed = pair_closed(&g.graph, u, v);
                let gdim = alg.gdim_hom_closed(u, v).expect("same weight");
                t.check(rec == closed && rec == gdim, || {
                    format!(
                        "{}: ({}, {}): recursive {rec}, closed {closed}, hom {gdim}",
                        g.name,
                        seq_name(&g.graph, u),
                        seq_name(&g.graph, v)
                    )
                });
            }
        }
        t
    })
}

// 3 -----------------------------------------------------------------------

fn serre(graphs: &[NamedGraph]) -> Tally {
    let mut t = Tally::default();
    let a2 = Graph::a2();
    let mut cases: Vec<(String, Graph, usize, usize)> = vec![
        ("A2".into(), a2.clone(), 0, 1),
        ("A2".into(), a2.clone(), 1, 0),
        ("edgeless2".into(), Graph::edgeless2(), 0, 1),
    ];
    for g in graphs {
        let n = g.graph.num_vertices();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                cases.push((g.name.clone(), g.graph.clone(), i, j));
            }
        }
    }
    for (name, g, i, j) in &cases {
        let ok = uplus::serre_check(g, *i, *j).unwrap_or(false);
        t.check(ok, || format!("{name}: Serre relation fails for ({}, {})", g.name(*i), g.name(*j)));
    }
    // Negative control: the coefficient q + 2q^-1 must be rejected.
    let perturbed = LaurentPoly::from_terms([(1, 1), (-1, 2)]);
    let control = uplus::serre_check_with(&a2, 0, 1, &perturbed).unwrap_or(true);
    t.check(!control, || "negative control: perturbed Serre coefficient was accepted".into());
    t
}

// 4 -----------------------------------------------------------------------

enum IsoCase {
    /// `P_{ij} = P_{ji}` for `i . j = 0`.
    Commute(usize, usize),
    /// `P_{iji}{1} + P_{iji}{-1} = P_{iij} + P_{jii}` for `i . j = -1`.
    Split(usize, usize),
    /// `P_{ij}` and `P_{ji}` are not isomorphic for `i . j = -1`.
    NotIso(usize, usize),
    /// The refined decomposition through the divided power `i^(2)`.
    Refined(usize, usize),
}

fn isomorphisms(graphs: &[NamedGraph]) -> Tally {
    let mut cases: Vec<(String, Graph, IsoCase)> = vec![
        ("edgeless2".into(), Graph::edgeless2(), IsoCase::Commute(0, 1)),
        ("A2".into(), Graph::a2(), IsoCase::Split(0, 1)),
        ("A2".into(), Graph::a2(), IsoCase::NotIso(0, 1)),
        ("A2".into(), Graph::a2(), IsoCase::Refined(0, 1)),
    ];
    for g in graphs {
        let n = g.graph.num_vertices();
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                match g.graph.inner(i, j) {
                    0 => cases.push((g.name.clone(), g.graph.clone(), IsoCase::Commute(i, j))),
                    -1 => {
                        cases.push((g.name.clone(), g.graph.clone(), IsoCase::Split(i, j)));
                        cases.push((g.name.clone(), g.graph.clone(), IsoCase::Refined(i, j)));
                    }
                    _ => {}
                }
            }
        }
    }
    par_tally(&cases, |(name, g, case)| {
        let mut t = Tally::default();
        let obj = |v: &[usize], s: i64| ProjObject::new(Seq(v.to_vec()), s);
        let label = |v: &[usize]| g.format_seq(v);
        match *case {
            IsoCase::Commute(i, j) | IsoCase::Split(i, j) => {
                let (a, b) = match *case {
                    IsoCase::Commute(..) => (vec![obj(&[i, j], 0)], vec![obj(&[j, i], 0)]),
                    _ => (vec![obj(&[i, j, i], 1), obj(&[i, j, i], -1)], vec![obj(&[i, i, j], 0), obj(&[j, i, i], 0)]),
                };
                let what = || format!("{name}: {} vs {}", a.iter().map(|o| label(&o.seq)).collect::<Vec<_>>().join("+"), b.iter().map(|o| label(&o.seq)).collect::<Vec<_>>().join("+"));
                let alg = KlrAlgebra::for_seq(g.clone(), &a[0].seq);
                match projiso::find_inverse_pair(&alg, &a, &b) {
                    Ok((u, v)) => {
                        let ok = projiso::verify_inverse_pair(&alg, &u, &v).unwrap_or(false);
                        t.check(ok, || format!("{}: composites are not identities", what()));
                    }
                    Err(e) => t.check(false, || format!("{}: {e}", what())),
                }
                let shadow = projiso::k0_shadow(&alg, &a, &b).unwrap_or(false);
                t.check(shadow, || format!("{}: graded dimension identity fails", what()));
            }
            IsoCase::NotIso(i, j) => {
                let (a, b) = ([obj(&[i, j], 0)], [obj(&[j, i], 0)]);
                let alg = KlrAlgebra::for_seq(g.clone(), &a[0].seq);
                let found = !matches!(projiso::find_inverse_pair(&alg, &a, &b), Err(ProjError::NoIsomorphism));
                t.check(!found, || format!("{name}: negative control: P_{} and P_{} reported isomorphic", label(&[i, j]), label(&[j, i])));
            }
            IsoCase::Refined(i, j) => {
                let ok = projiso::refined_decomposition_check(g, i, j).unwrap_or(false);
                t.check(ok, || format!("{name}: refined decomposition fails for {}", label(&[i, j, i])));
            }
        }
        t
    })
}

// 5 -----------------------------------------------------------------------

fn nilhecke(cfg: &SuiteConfig) -> Tally {
    let ranks: Vec<usize> = (1..=cfg.max_strands.max(cfg.nilhecke_max_rank)).collect();
    let mut t = par_tally(&ranks, |&m| {
        let mut t = Tally::default();
        let nh = NilHecke::new(m).expect("positive rank");
        if m <= cfg.max_strands {
            t.check(is_idempotent(nh.algebra(), &nh.column_idempotent()), || format!("e_{m} is not idempotent"));
        }
        if m <= cfg.nilhecke_max_rank {
            let expected = RationalGraded::new(LaurentPoly::one(), (1..=m as u32).map(|k| 2 * k).collect());
            match nh.gdim_column_end() {
                Ok(got) => t.check(got.rg_equal(&expected), || format!("m = {m}: column end {got}, expected {expected}")),
                Err(e) => t.check(false, || format!("m = {m}: {e}")),
            }
            let series = nh.column_end_series(20);
            t.check(series == expected.expand(20), || format!("m = {m}: series to q^20 disagrees"));
            t.check(nh.check_copies().unwrap_or(false), || format!("m = {m}: ([m]!)^2 copies identity fails"));
            t.check(nh.check_column_decomposition().unwrap_or(false), || format!("m = {m}: column module decomposition fails"));
        }
        t
    });
    let nh = NilHecke::new(2).expect("positive rank");
    let ok = nh.matrix_units().map(|u| nh.check_matrix_units(&u)).unwrap_or(false);
    t.check(ok, || "matrix units for m = 2 fail".into());
    t
}

// 6 -----------------------------------------------------------------------

fn divided_powers(cfg: &SuiteConfig, graphs: &[NamedGraph]) -> Tally {
    let ends: Vec<(usize, Result<RationalGraded, String>)> = (1..=cfg.nilhecke_max_rank)
        .into_par_iter()
        .map(|n| (n, NilHecke::new(n).map_err(|e| e.to_string()).and_then(|nh| nh.gdim_column_end().map_err(|e| e.to_string()))))
        .collect();
    let mut t = Tally::default();
    for g in graphs {
        for i in 0..g.graph.num_vertices() {
            for (n, end) in &ends {
                let pair = uplus::divided_power_pair(&g.graph, i, *n);
                match end {
                    Ok(end) => t.check(pair.rg_equal(end), || format!("{}: ({}^({n}), {}^({n})) = {pair}, column end {end}", g.name, g.graph.name(i), g.graph.name(i))),
                    Err(e) => t.check(false, || format!("n = {n}: {e}")),
                }
            }
        }
    }
    t
}

// 7 -----------------------------------------------------------------------

/// Whether the symmetric form of `graph` is positive definite (finite type),
/// by exact Gaussian elimination.
pub fn is_finite_type(graph: &Graph) -> bool {
    let n = graph.num_vertices();
    let mut a: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| Rational::from_integer(graph.inner(i, j).into())).collect()).collect();
    for k in 0..n {
        if a[k][k] <= Rational::from_integer(0.into()) {
            return false;
        }
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let d = &f * &a[k][j];
                a[i][j] -= d;
            }
        }
    }
    true
}

/// Positive roots of height at most `max_height`, by reflecting simple roots.
/// Complete in finite type, where every root is reached through roots of
/// smaller height.
pub fn positive_roots(graph: &Graph, max_height: u32) -> Vec<Weight> {
    let n = graph.num_vertices();
    let simple: Vec<Weight> = (0..n).map(|i| Weight((0..n).map(|j| u32::from(i == j)).collect())).collect();
    let mut found: Vec<Weight> = simple.clone();
    let mut frontier = simple;
    while let Some(beta) = frontier.pop() {
        for i in 0..n {
            // s_i(beta) = beta - (beta . alpha_i) alpha_i
            let pairing: i64 = (0..n).map(|j| i64::from(beta.0[j]) * graph.inner(i, j)).sum();
            let new_i = i64::from(beta.0[i]) - pairing;
            if new_i <= i64::from(beta.0[i]) || new_i < 0 {
                continue;
            }
            let mut gamma = beta.clone();
            gamma.0[i] = new_i as u32;
            if gamma.0.iter().sum::<u32>() <= max_height && !found.contains(&gamma) {
                found.push(gamma.clone());
                frontier.push(gamma);
            }
        }
    }
    found.sort();
    found
}

/// The number of ways to write `nu` as a multiset of the given roots.
pub fn kostant_count(roots: &[Weight], nu: &Weight) -> u64 {
    fn go(roots: &[Weight], rest: &mut Vec<u32>, start: usize, memo: &mut BTreeMap<(Vec<u32>, usize), u64>) -> u64 {
        if rest.iter().all(|&c| c == 0) {
            return 1;
        }
        if let Some(&c) = memo.get(&(rest.clone(), start)) {
            return c;
        }
        let mut total = 0;
        for (k, r) in roots.iter().enumerate().skip(start) {
            if r.0.iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                for (x, a) in rest.iter_mut().zip(&r.0) {
                    *x -= a;
                }
                total += go(roots, rest, k, memo);
                for (x, a) in rest.iter_mut().zip(&r.0) {
                    *x += a;
                }
            }
        }
        memo.insert((rest.clone(), start), total);
        total
    }
    go(roots, &mut nu.0.clone(), 0, &mut BTreeMap::new())
}

fn weight_dims(cfg: &SuiteConfig, graphs: &[NamedGraph]) -> Tally {
    let mut t = Tally::default();
    let a2 = Graph::a2();
    for (nu, want) in [(vec![1, 1], 2), (vec![2, 1], 2), (vec![2, 2], 3)] {
        let got = uplus::weight_dim(&a2, &Weight(nu.clone()));
        t.check(got == want, || format!("A2: dim U+({}) = {got}, expected {want}", format_weight(&a2, &Weight(nu.clone()))));
    }
    let mut items = Vec::new();
    for g in graphs {
        if !is_finite_type(&g.graph) {
            t.notes.push(format!("{}: not of finite type, Kostant comparison skipped", g.name));
            continue;
        }
        let roots = positive_roots(&g.graph, cfg.max_weight as u32);
        for m in 1..=cfg.max_weight {
            for nu in weights_of_total(g.graph.num_vertices(), m) {
                items.push((g, roots.clone(), nu));
            }
        }
    }
    t.merge(par_tally(&items, |(g, roots, nu)| {
        let mut t = Tally::default();
        let got = uplus::weight_dim(&g.graph, nu);
        let want = kostant_count(roots, nu);
        t.check(got as u64 == want, || format!("{}: dim U+({}) = {got}, Kostant count {want}", g.name, format_weight(&g.graph, nu)));
        t
    }))
}

// 8 -----------------------------------------------------------------------

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn hecke_tl(cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    for n in 1..=cfg.hecke_max_rank {
        let tf = hecke::check_t_relations(n);
        t.check(tf.is_empty(), || format!("H_{n}: T-relations fail: {tf:?}"));
        let bf = hecke::check_b_relations(n);
        t.check(bf.is_empty(), || format!("H_{n}: b-relations fail: {bf:?}"));
        let fact: usize = (1..=n).product();
        let rank = hecke::t_basis_closure(n);
        t.check(rank == fact, || format!("H_{n}: T-basis closure has {rank} elements, expected {fact}"));
    }
    for n in 1..=cfg.tl_max_rank {
        let dim = tl::basis(n).len() as u64;
        let want = binomial(2 * n as u64, n as u64) / (n as u64 + 1);
        t.check(dim == want, || format!("TL_{n}: {dim} matchings, expected Catalan {want}"));
    }
    for n in 3..=cfg.hecke_max_rank.clamp(3, 4) {
        let b = |i| HeckeElt::b_gen(i, n).expect("in range");
        for i in 1..n {
            for j in [i.wrapping_sub(1), i + 1].into_iter().filter(|j| (1..n).contains(j)) {
                let rel = &(&(&b(i) * &b(j)) * &b(i)) - &b(i);
                let img = tl::hecke_to_tl(&rel);
                t.check(img.is_zero(), || format!("TL_{n}: image of b_{i} b_{j} b_{i} - b_{i} is {img:?}"));
            }
        }
    }
    for n in 2..=cfg.hecke_max_rank {
        t.check(tl::check_quotient(n), || format!("TL_{n}: images of the b_i violate a relation"));
    }
    let e = |i| TLElt::e(i, 3).expect("in range");
    let lhs = &(&(&e(1) * &e(2)) * &e(1)) + &e(2);
    let rhs = &(&(&e(2) * &e(1)) * &e(2)) + &e(1);
    t.check(lhs == rhs && lhs == &e(1) + &e(2), || "TL_3: e1 e2 e1 + e2 = e2 e1 e2 + e1 fails".into());
    t
}

// 9 -----------------------------------------------------------------------

fn structural(cfg: &SuiteConfig, graphs: &[NamedGraph]) -> Tally {
    let ledger = cfg.ledger_options();
    let per_graph = cfg.triples.div_ceil(graphs.len());
    let mut t = par_tally(graphs, |g| {
        let mut t = Tally::default();
        let nv = g.graph.num_vertices();
        let alg_for = |s: &Seq| KlrAlgebra::with_ledger(g.graph.clone(), s.weight(nv), ledger).expect("weight of a word");
        let mut rng = rng_for(cfg, 9, nv as u64 * 31 + g.name.len() as u64);
        let top_m = cfg.max_strands.max(2);
        for _ in 0..per_graph {
            let m = rng.random_range(2..=top_m);
            let s = random_seq(&mut rng, &g.graph, m);
            let alg = alg_for(&s);
            let (c, ctop) = random_homogeneous(&mut rng, &alg, s.clone());
            let (b, btop) = random_homogeneous(&mut rng, &alg, ctop);
            let (a, _) = random_homogeneous(&mut rng, &alg, btop);
            let left = alg.mul(&alg.mul(&a, &b).expect("same algebra"), &c).expect("same algebra");
            let right = alg.mul(&a, &alg.mul(&b, &c).expect("same algebra")).expect("same algebra");
            t.check(left == right, || format!("{}: (ab)c != a(bc) with c starting at {}", g.name, g.graph.format_seq(&s)));
            let deg = |e: &Element| e.homogeneous_degree(&g.graph).flatten();
            if let (Some(da), Some(db), Some(dc)) = (deg(&a), deg(&b), deg(&c)) {
                let dp = left.homogeneous_degree(&g.graph);
                t.check(dp == Some(None) || dp == Some(Some(da + db + dc)), || format!("{}: product of degrees {da}, {db}, {dc} has degree {dp:?}", g.name));
            }
        }
        for _ in 0..cfg.samples {
            let m = rng.random_range(1..=top_m);
            let s = random_seq(&mut rng, &g.graph, m);
            let len = rng.random_range(1..=6);
            let word = random_word(&mut rng, s.clone(), len);
            let alg = alg_for(&s);
            let e = alg.normalize(&word).expect("valid word");
            let hd = e.homogeneous_degree(&g.graph);
            let wd = word.degree(&g.graph);
            t.check(hd == Some(None) || hd == Some(Some(wd)), || format!("{}: {} of degree {wd} normalizes to degree {hd:?}", g.name, describe_word(&g.graph, &word)));
            t.check(e.is_integral(), || format!("{}: {} has non-integral coefficients", g.name, describe_word(&g.graph, &word)));
            let d = random_diagram(&mut rng, s);
            let back = alg.normalize(&normal_form_word(&d)).expect("valid word");
            t.check(back == alg.basis_element(d.clone()), || format!("{}: normal form word of {d:?} is not fixed", g.name));
        }
        // Idempotents: orthogonal, summing to the unit.
        for m in 1..=top_m.min(3) {
            for nu in weights_of_total(nv, m) {
                let alg = KlrAlgebra::with_ledger(g.graph.clone(), nu.clone(), ledger).expect("weight on the graph");
                let all = alg.seqs();
                let mut sum = alg.zero();
                for a in &all {
                    let ea = alg.idempotent(a).expect("sequence of weight");
                    sum += &ea;
                    for b in &all {
                        let eb = alg.idempotent(b).expect("sequence of weight");
                        let p = alg.mul(&ea, &eb).expect("same algebra");
                        let want = if a == b { ea.clone() } else { alg.zero() };
                        t.check(p == want, || format!("{}: 1_{} 1_{} is wrong", g.name, g.graph.format_seq(a), g.graph.format_seq(b)));
                    }
                }
                t.check(sum == alg.unit(), || format!("{}: idempotents of {} do not sum to 1", g.name, format_weight(&g.graph, &nu)));
            }
        }
        // Pairing symmetry and the twisted bialgebra property.
        for m in 1..=cfg.max_weight {
            let words = all_words(nv, m);
            for u in &words {
                for v in &words {
                    let (uv, vu) = (pair_recursive(&g.graph, u, v), pair_recursive(&g.graph, v, u));
                    t.check(uv == vu, || format!("{}: pairing not symmetric on ({}, {})", g.name, g.graph.format_seq(u), g.graph.format_seq(v)));
                }
            }
        }
        for m in 2..=cfg.max_weight {
            for split in 1..m {
                for u in all_words(nv, split) {
                    for v in all_words(nv, m - split) {
                        let uv = k0_ind(&u, &v);
                        let (wu, wv) = (u.weight(nv), v.weight(nv));
                        for w in seqs(&uv.weight(nv)) {
                            let lhs = pair_recursive(&g.graph, &uv, &w);
                            let mut rhs = RationalGraded::zero();
                            for term in k0_res(&g.graph, &w, (&wu, &wv)).expect("weights add up") {
                                let prod = &pair_recursive(&g.graph, &u, &term.left) * &pair_recursive(&g.graph, &v, &term.right);
                                rhs = &rhs + &prod.scale(&term.twist);
                            }
                            t.check(lhs.rg_equal(&rhs), || {
                                format!("{}: (uv, w) != (u (x) v, r(w)) for u = {}, v = {}, w = {}", g.name, g.graph.format_seq(&u), g.graph.format_seq(&v), g.graph.format_seq(&w))
                            });
                        }
                    }
                }
            }
        }
        t
    });
    t.notes.push(format!("{} associativity triples", per_graph * graphs.len()));
    t
}

/// `word` in the text grammar, top factor first.
pub fn describe_word(g: &Graph, w: &GeneratorWord) -> String {
    let mut parts: Vec<String> = w
        .factors
        .iter()
        .rev()
        .map(|f| match f {
            Generator::Dot(k) => format!("x{}", k + 1),
            Generator::Cross(k) => format!("s{}", k + 1),
        })
        .collect();
    parts.push(format!("1({})", w.bottom.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(",")));
    parts.join(" * ")
}
