//! Named verification suites. Each suite sweeps every instance up to a size bound
//! (sampling with a seeded generator where a sweep is infeasible) and returns a report
//! sorted by instance encoding, so reports are byte-stable for a given `(n, seed)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, UniPolynomial};
use crate::combinat::{int_partitions, set_partitions, IntPartition};
use crate::decomp::{
    breakdown_by_deletion, cover_at_zero, linear_breakdown, n_count, n_mu, omega_u_bag, path_cycle_x0,
    stable_counts_via_breakdown, u_bag_closed_form, u_from_path_counts, generalized_triple_deletion,
    Breakdown,
};
use crate::error::{Error, Result};
use crate::invariants::{
    chromatic_broken_cycle, chromatic_poly, chromatic_sym, deletion_contraction_w, deletion_contraction_y,
    diff_ncsym, diff_poly, diff_sym, inc_fundamental_expansion, permutation_census_in, redei_berge,
    redei_berge_p_expansion, redei_berge_poly, redei_berge_qsym, w_redei, y_chromatic,
};
use crate::ncsym::check_induction_theorem;
use crate::par::Exec;
use crate::structures::{
    all_nuio, enumerate_posets_iso, loopless_digraphs, simple_graphs, tournaments, Digraph, Graph, Poset,
};
use crate::symfn::{SymBasis, SymElement};

/// The suite registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    OmegaBridge,
    NcsymBridge,
    DelConW,
    DelConY,
    PExpansion,
    BrokenCycle,
    ParityRedei,
    PolynomialAntipode,
    Breakdown,
    BagCorollaries,
    PositivityUio,
    InductionTheorem,
    TripleDeletion,
    Equinumerosity,
    Statistics,
}

impl Suite {
    pub const ALL: [Suite; 15] = [
        Suite::OmegaBridge,
        Suite::NcsymBridge,
        Suite::DelConW,
        Suite::DelConY,
        Suite::PExpansion,
        Suite::BrokenCycle,
        Suite::ParityRedei,
        Suite::PolynomialAntipode,
        Suite::Breakdown,
        Suite::BagCorollaries,
        Suite::PositivityUio,
        Suite::InductionTheorem,
        Suite::TripleDeletion,
        Suite::Equinumerosity,
        Suite::Statistics,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OmegaBridge => "omega-bridge",
            Suite::NcsymBridge => "ncsym-bridge",
            Suite::DelConW => "del-con-W",
            Suite::DelConY => "del-con-Y",
            Suite::PExpansion => "p-expansion",
            Suite::BrokenCycle => "broken-cycle",
            Suite::ParityRedei => "parity-redei",
            Suite::PolynomialAntipode => "polynomial-antipode",
            Suite::Breakdown => "breakdown",
            Suite::BagCorollaries => "bag-corollaries",
            Suite::PositivityUio => "positivity-uio",
            Suite::InductionTheorem => "induction-theorem",
            Suite::TripleDeletion => "triple-deletion",
            Suite::Equinumerosity => "equinumerosity",
            Suite::Statistics => "statistics",
        }
    }

    /// Bound used when none is given; each default completes in minutes on one core.
    pub fn default_n(self) -> usize {
        match self {
            Suite::OmegaBridge | Suite::ParityRedei | Suite::BagCorollaries | Suite::PositivityUio => 6,
            Suite::BrokenCycle
            | Suite::PolynomialAntipode
            | Suite::Breakdown
            | Suite::Equinumerosity
            | Suite::Statistics => 5,
            Suite::NcsymBridge
            | Suite::DelConW
            | Suite::DelConY
            | Suite::PExpansion
            | Suite::InductionTheorem
            | Suite::TripleDeletion => 4,
        }
    }

    /// Largest bound accepted without `unsafe_bounds`.
    pub fn max_n(self) -> usize {
        match self {
            Suite::DelConW | Suite::PExpansion => 4,
            Suite::Breakdown | Suite::NcsymBridge | Suite::InductionTheorem | Suite::TripleDeletion => 5,
            Suite::DelConY
            | Suite::BrokenCycle
            | Suite::PolynomialAntipode
            | Suite::Equinumerosity
            | Suite::Statistics => 6,
            Suite::OmegaBridge | Suite::ParityRedei | Suite::PositivityUio => 7,
            Suite::BagCorollaries => 8,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::parse("suite", s, format!("expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub n: usize,
    pub seed: u64,
    pub exec: Exec,
    pub unsafe_bounds: bool,
}

impl Config {
    pub fn new(n: usize) -> Self {
        Config {
            n,
            seed: 0,
            exec: Exec::default(),
            unsafe_bounds: false,
        }
    }
}

/// One checked instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub instance: String,
    pub ok: bool,
    pub detail: String,
}

impl Outcome {
    fn check(instance: impl Into<String>, failures: Vec<String>) -> Self {
        Outcome {
            instance: instance.into(),
            ok: failures.is_empty(),
            detail: failures.join("; "),
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        let note = note.into();
        if self.detail.is_empty() {
            self.detail = note;
        } else {
            self.detail = format!("{}; {note}", self.detail);
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub outcomes: Vec<Outcome>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &Outcome> {
        self.outcomes.iter().filter(|o| !o.ok)
    }

    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.ok)
    }

    /// Closing line with the instance and failure counts.
    pub fn summary(&self) -> String {
        format!(
            "{} n={} seed={}: {} instances, {} failures",
            self.suite,
            self.n,
            self.seed,
            self.outcomes.len(),
            self.failures().count()
        )
    }

    /// Every instance line followed by the summary; with `failures_only` passes are omitted.
    pub fn render(&self, failures_only: bool) -> String {
        let mut out = String::new();
        for o in &self.outcomes {
            if o.ok && failures_only {
                continue;
            }
            out.push_str(if o.ok { "PASS " } else { "FAIL " });
            out.push_str(&o.instance);
            if !o.detail.is_empty() {
                out.push_str(" -- ");
                out.push_str(&o.detail);
            }
            out.push('\n');
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Runs `suite` up to `cfg.n`.
pub fn run(suite: Suite, cfg: &Config) -> Result<Report> {
    if cfg.n == 0 {
        return Err(Error::pre("size bound must be at least 1"));
    }
    if cfg.n > suite.max_n() && !cfg.unsafe_bounds {
        return Err(Error::pre(format!(
            "{suite} bound {} exceeds the limit {}; pass --unsafe-bounds to lift it",
            cfg.n,
            suite.max_n()
        )));
    }
    let mut outcomes = match suite {
        Suite::OmegaBridge => omega_bridge(cfg)?,
        Suite::NcsymBridge => ncsym_bridge(cfg)?,
        Suite::DelConW => del_con_w(cfg)?,
        Suite::DelConY => del_con_y(cfg)?,
        Suite::PExpansion => p_expansion(cfg)?,
        Suite::BrokenCycle => broken_cycle(cfg)?,
        Suite::ParityRedei => parity_redei(cfg)?,
        Suite::PolynomialAntipode => polynomial_antipode(cfg)?,
        Suite::Breakdown => breakdown(cfg)?,
        Suite::BagCorollaries => bag_corollaries(cfg)?,
        Suite::PositivityUio => positivity_uio(cfg)?,
        Suite::InductionTheorem => induction_theorem(cfg),
        Suite::TripleDeletion => triple_deletion(cfg)?,
        Suite::Equinumerosity => equinumerosity(cfg)?,
        Suite::Statistics => statistics(cfg)?,
    };
    outcomes.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(Report {
        suite,
        n: cfg.n,
        seed: cfg.seed,
        outcomes,
    })
}

// ---- shared helpers -------------------------------------------------------------------

fn posets_upto(n: usize, exec: Exec) -> Result<Vec<Poset>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_posets_iso(k, exec)?);
    }
    Ok(out)
}

/// Every digraph on `n` vertices, loops included (`2^{n²}` of them).
pub fn all_digraphs(n: usize) -> Result<impl Iterator<Item = Digraph>> {
    if n > 4 {
        return Err(Error::pre(format!("all digraphs on {n} vertices is beyond the sweep bound 4")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (0..n).map(move |v| (u, v))).collect();
    Ok((0..1u64 << pairs.len()).map(move |mask| {
        let arcs: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &a)| a)
            .collect();
        Digraph::new(n, &arcs).expect("valid arcs")
    }))
}

fn random_digraph(n: usize, rng: &mut impl Rng) -> Digraph {
    let arcs: Vec<_> = (0..n)
        .flat_map(|u| (0..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(0.5))
        .collect::<Vec<_>>();
    Digraph::new(n, &arcs).expect("valid arcs")
}

fn sym_eq(label: &str, a: &SymElement, b: &SymElement, fails: &mut Vec<String>) {
    if let Some(m) = diff_sym(a, b) {
        fails.push(format!("{label}: {m}"));
    }
}

fn poly_eq(label: &str, a: &UniPolynomial, b: &UniPolynomial, fails: &mut Vec<String>) {
    if let Some(m) = diff_poly(a, b) {
        fails.push(format!("{label}: {m}"));
    }
}

/// `(-1)^n p(-m)`.
fn antipode(p: &UniPolynomial, n: usize) -> UniPolynomial {
    let q = p.negate_var();
    if n.is_multiple_of(2) {
        q
    } else {
        q.scale(&rat(-1))
    }
}

fn err_outcome(instance: String, e: Error) -> Outcome {
    Outcome::check(instance, vec![format!("error: {e}")])
}

// ---- suites ---------------------------------------------------------------------------

fn omega_bridge(cfg: &Config) -> Result<Vec<Outcome>> {
    let posets = posets_upto(cfg.n, cfg.exec)?;
    Ok(cfg.exec.map(&posets, |p| {
        let d = p.digraph();
        let mut fails = Vec::new();
        sym_eq("X_inc(P) vs ω(U_P)", &chromatic_sym(&p.inc()), &redei_berge(&d).omega(), &mut fails);
        if inc_fundamental_expansion(p) != redei_berge_qsym(&d).omega() {
            fails.push("Σ F_{A_P(σ)} differs from ω(U_P) in QSym".into());
        }
        Outcome::check(p.to_string(), fails)
    }))
}

fn ncsym_bridge(cfg: &Config) -> Result<Vec<Outcome>> {
    let posets = posets_upto(cfg.n, cfg.exec)?;
    Ok(cfg.exec.map(&posets, |p| {
        let (d, g) = (p.digraph(), p.inc());
        let (w, y) = (w_redei(&d), y_chromatic(&g));
        let mut fails = Vec::new();
        if let Some(m) = diff_ncsym(&y, &w.omega()) {
            fails.push(format!("Y_inc(P) vs ω(W_P): {m}"));
        }
        sym_eq("ρ(W)", &w.rho(), &redei_berge(&d), &mut fails);
        sym_eq("ρ(Y)", &y.rho(), &chromatic_sym(&g), &mut fails);
        Outcome::check(p.to_string(), fails)
    }))
}

fn del_con_w(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut xs = Vec::new();
    for k in 2..=cfg.n {
        xs.extend(loopless_digraphs(k)?);
    }
    Ok(cfg.exec.map(&xs, |x| {
        let mut fails = Vec::new();
        for (a, b) in x.arcs() {
            match deletion_contraction_w(x, a, b) {
                Ok(Ok(())) => {}
                Ok(Err(m)) => fails.push(format!("arc ({},{}): {m}", a + 1, b + 1)),
                Err(e) => fails.push(format!("arc ({},{}): {e}", a + 1, b + 1)),
            }
        }
        Outcome::check(x.to_string(), fails)
    }))
}

fn del_con_y(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut gs = Vec::new();
    for k in 2..=cfg.n {
        gs.extend(simple_graphs(k)?);
    }
    Ok(cfg.exec.map(&gs, |g| {
        let mut fails = Vec::new();
        for (a, b) in g.edges() {
            for (u, v) in [(a, b), (b, a)] {
                match deletion_contraction_y(g, u, v) {
                    Ok(Ok(())) => {}
                    Ok(Err(m)) => fails.push(format!("edge ({},{}): {m}", u + 1, v + 1)),
                    Err(e) => fails.push(format!("edge ({},{}): {e}", u + 1, v + 1)),
                }
            }
        }
        Outcome::check(g.to_string(), fails)
    }))
}

/// Number of seeded digraphs checked one size above the exhaustive bound.
pub const P_EXPANSION_SAMPLES: usize = 200;

fn p_expansion(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut xs: Vec<(String, Digraph)> = loopless_digraphs(cfg.n)?.map(|x| (x.to_string(), x)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for i in 0..P_EXPANSION_SAMPLES {
        let x = random_digraph(cfg.n + 1, &mut rng);
        xs.push((format!("sample {i:03} {x}"), x));
    }
    Ok(cfg.exec.map(&xs, |(name, x)| {
        let mut fails = Vec::new();
        sym_eq("cycle census vs listings", &redei_berge_p_expansion(x), &redei_berge(x), &mut fails);
        Outcome::check(name.clone(), fails)
    }))
}

fn broken_cycle(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut gs = Vec::new();
    for k in 1..=cfg.n {
        gs.extend(simple_graphs(k)?);
    }
    // Labelings are drawn up front so the report does not depend on scheduling.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let jobs: Vec<(Graph, Vec<Vec<usize>>)> = gs
        .into_iter()
        .map(|g| {
            let e = g.num_edges();
            let lex: Vec<usize> = (1..=e).collect();
            let rev: Vec<usize> = (1..=e).rev().collect();
            let mut shuffled = lex.clone();
            shuffled.shuffle(&mut rng);
            (g, vec![lex, rev, shuffled])
        })
        .collect();
    Ok(cfg.exec.map(&jobs, |(g, labelings)| {
        let want = chromatic_sym(g);
        let mut fails = Vec::new();
        for labels in labelings {
            match chromatic_broken_cycle(g, Some(labels)) {
                Ok(x) => sym_eq(&format!("labels {labels:?}"), &x, &want, &mut fails),
                Err(e) => fails.push(e.to_string()),
            }
        }
        Outcome::check(g.to_string(), fails)
    }))
}

/// Tournament sizes swept by `parity-redei` (labeled, `2^{C(n,2)}` each).
pub const PARITY_TOURNAMENT_MAX: usize = 6;

fn parity_redei(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for k in 1..=cfg.n.min(PARITY_TOURNAMENT_MAX) {
        let ts = tournaments(k)?;
        out.extend(cfg.exec.map(&ts, |t| {
            let h = t.hamiltonian_paths();
            let fails = if h % 2 == 1 {
                vec![]
            } else {
                vec![format!("{h} Hamiltonian paths")]
            };
            Outcome::check(t.to_string(), fails)
        }));
    }
    let posets = posets_upto(cfg.n, cfg.exec)?;
    out.extend(cfg.exec.map(&posets, |p| {
        let q = p.count_quasi_linear_extensions();
        let is_chain = p.chain_number() == p.n();
        let mut fails = Vec::new();
        if is_chain && q != 1 {
            fails.push(format!("chain with {q} quasi-linear extensions"));
        }
        if !is_chain && q % 2 == 1 {
            fails.push(format!("non-chain with odd count {q}"));
        }
        let u1 = redei_berge_poly(&p.digraph()).eval_int(1);
        if u1 != rat(q as i64) {
            fails.push(format!("u_P(1) = {u1} but {q} quasi-linear extensions"));
        }
        Outcome::check(p.to_string(), fails).note(format!("{q} quasi-linear extensions"))
    }));
    Ok(out)
}

/// Largest size for the all-digraphs (loops included) part of `polynomial-antipode`.
pub const ANTIPODE_DIGRAPH_MAX: usize = 4;

fn polynomial_antipode(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut xs = Vec::new();
    for k in 1..=cfg.n.min(ANTIPODE_DIGRAPH_MAX) {
        xs.extend(all_digraphs(k)?);
    }
    let mut out = cfg.exec.map(&xs, |x| {
        let mut fails = Vec::new();
        let lhs = redei_berge_poly(x);
        poly_eq("u_X vs (-1)^n u_X̄(-m)", &lhs, &antipode(&redei_berge_poly(&x.complement()), x.n()), &mut fails);
        Outcome::check(x.to_string(), fails)
    });
    let posets = posets_upto(cfg.n, cfg.exec)?;
    out.extend(cfg.exec.map(&posets, |p| {
        let mut fails = Vec::new();
        let chi = chromatic_poly(&p.inc());
        poly_eq("χ_inc(P) vs (-1)^n u_P(-m)", &chi, &antipode(&redei_berge_poly(&p.digraph()), p.n()), &mut fails);
        Outcome::check(p.to_string(), fails)
    }));
    Ok(out)
}

/// Arc cap for the exhaustive `breakdown` sweep.
pub const BREAKDOWN_ARC_LIMIT: usize = 6;

/// The four-vertex stars with 0..=3 arcs out of vertex 1.
pub fn star_digraph(k: usize) -> Digraph {
    let arcs: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    Digraph::new(4, &arcs).expect("valid arcs")
}

fn reassemble_with(b: &Breakdown, bags: &HashMap<IntPartition, SymElement>) -> SymElement {
    b.grouped()
        .into_iter()
        .fold(SymElement::zero(b.n, SymBasis::Monomial), |acc, (lambda, c)| {
            acc.add(&bags[&lambda].scale(&rat(c))).expect("same degree")
        })
}

fn breakdown(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut bags = HashMap::new();
    for k in 1..=cfg.n.max(4) {
        for lambda in int_partitions(k) {
            let u = redei_berge(&Digraph::bag_of_sticks(&lambda));
            bags.insert(lambda, u);
        }
    }
    let mut xs = Vec::new();
    for k in 2..=cfg.n {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|u| (0..k).map(move |v| (u, v))).collect();
        let limit = BREAKDOWN_ARC_LIMIT.min(pairs.len());
        for size in 0..=limit {
            for combo in itertools::Itertools::combinations(pairs.iter().copied(), size) {
                let x = Digraph::new(k, &combo).expect("valid arcs");
                if !x.is_bag_of_sticks() {
                    xs.push(x);
                }
            }
        }
    }
    let mut out = cfg.exec.map(&xs, |x| {
        let mut fails = Vec::new();
        match (linear_breakdown(x), breakdown_by_deletion(x, None)) {
            (Ok(b), Ok(oracle)) => {
                sym_eq("reassembled vs U_X", &reassemble_with(&b, &bags), &redei_berge(x), &mut fails);
                if b != oracle {
                    fails.push("ξ coefficients differ from repeated subset deletion".into());
                }
            }
            (Err(e), _) | (_, Err(e)) => fails.push(e.to_string()),
        }
        Outcome::check(x.to_string(), fails)
    });
    let d0 = IntPartition::ones(4);
    let d1: IntPartition = IntPartition::new(vec![2, 1, 1])?;
    for (k, want) in [(2, [(d1.clone(), 2), (d0.clone(), -1)]), (3, [(d1.clone(), 3), (d0.clone(), -2)])] {
        let x = star_digraph(k);
        let got = linear_breakdown(&x)?.grouped();
        let want: BTreeMap<_, _> = want.into_iter().collect();
        let fails = if got == want {
            vec![]
        } else {
            vec![format!("expected {want:?}, got {got:?}")]
        };
        out.push(Outcome::check(format!("example D_{k}"), fails));
    }
    Ok(out)
}

/// Largest loopless digraph size for the path-cover part of `bag-corollaries`.
pub const COVER_DIGRAPH_MAX: usize = 4;
/// Largest poset size for the stable-partition count corollary.
pub const STABLE_COUNT_POSET_MAX: usize = 5;

fn bag_corollaries(cfg: &Config) -> Result<Vec<Outcome>> {
    let lambdas: Vec<IntPartition> = (1..=cfg.n).flat_map(int_partitions).collect();
    let mut out = cfg.exec.map(&lambdas, |lambda| {
        let bag = Digraph::bag_of_sticks(lambda);
        let u = redei_berge(&bag);
        let mut fails = Vec::new();
        sym_eq("Σ N(λ,μ) m_μ vs ω(U)", &omega_u_bag(lambda), &u.omega(), &mut fails);
        poly_eq("closed form vs ps¹(U)", &u_bag_closed_form(lambda), &u.principal_specialization(), &mut fails);
        match n_mu(&bag) {
            Ok(counts) => {
                for mu in int_partitions(lambda.weight()) {
                    let n = counts.get(&mu).copied().unwrap_or(0);
                    let lhs = rat(n as i64) * crate::arith::Rational::from_integer(mu.multiplicity_factorial());
                    let rhs = rat(n_count(lambda, &mu).expect("same weight") as i64);
                    if lhs != rhs {
                        fails.push(format!("n_{mu}·r! = {lhs} but N = {rhs}"));
                    }
                }
            }
            Err(e) => fails.push(e.to_string()),
        }
        Outcome::check(format!("bag {lambda}"), fails)
    });
    let mut xs = Vec::new();
    for k in 1..=cfg.n.min(COVER_DIGRAPH_MAX) {
        xs.extend(loopless_digraphs(k)?);
    }
    out.extend(cfg.exec.map(&xs, |x| {
        let mut fails = Vec::new();
        let u = redei_berge(x);
        let up = u.principal_specialization();
        match (path_cycle_x0(x), cover_at_zero(x), u_from_path_counts(x)) {
            (Ok(xi), Ok(c0), Ok(uc)) => {
                sym_eq("Ξ_X(x,0) vs ω(U_X)", &xi, &u.omega(), &mut fails);
                poly_eq("C_X(m,0) vs (-1)^n u_X(-m)", &c0, &antipode(&up, x.n()), &mut fails);
                poly_eq("path-count u_X vs ps¹(U_X)", &uc, &up, &mut fails);
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => fails.push(e.to_string()),
        }
        Outcome::check(x.to_string(), fails)
    }));
    let posets = posets_upto(cfg.n.min(STABLE_COUNT_POSET_MAX), cfg.exec)?;
    out.extend(cfg.exec.map(&posets, |p| {
        let want: BTreeMap<IntPartition, _> = p
            .inc()
            .stable_partition_counts()
            .into_iter()
            .map(|(k, c)| (k, rat(c as i64)))
            .collect();
        let fails = match stable_counts_via_breakdown(p) {
            Ok(got) if got == want => vec![],
            Ok(got) => vec![format!("stable counts {got:?} vs {want:?}")],
            Err(e) => vec![e.to_string()],
        };
        Outcome::check(format!("stable counts {p}"), fails)
    }));
    Ok(out)
}

fn positivity_uio(cfg: &Config) -> Result<Vec<Outcome>> {
    let mut posets = Vec::new();
    for k in 1..=cfg.n {
        posets.extend(all_nuio(k)?);
    }
    Ok(cfg.exec.map(&posets, |p| {
        let g = p.inc();
        let u = redei_berge(&p.digraph());
        let x = chromatic_sym(&g);
        let mut fails = Vec::new();
        for (label, verdict) in [
            ("U_P h", u.positivity(SymBasis::Complete)),
            ("X_inc(P) e", x.positivity(SymBasis::Elementary)),
            ("U_P s", u.positivity(SymBasis::Schur)),
        ] {
            if !verdict.is_positive() {
                fails.push(format!("{label}-positivity fails: {verdict}"));
            }
        }
        let (chi, om) = (g.chromatic_number(), g.clique_number());
        if chi != om {
            fails.push(format!("χ = {chi} but ω = {om}"));
        }
        if p.incomparability_number() * p.chain_number() < p.n() {
            fails.push("i(P)·c(P) < |P|".into());
        }
        Outcome::check(p.to_string(), fails)
    }))
}

fn induction_theorem(cfg: &Config) -> Vec<Outcome> {
    let pis: Vec<_> = (1..=cfg.n).flat_map(set_partitions).collect();
    cfg.exec.map(&pis, |pi| {
        let fails = match check_induction_theorem(pi) {
            Ok(()) => vec![],
            Err(v) => vec![v.to_string()],
        };
        Outcome::check(format!("{}:{pi}", pi.n()), fails)
    })
}

fn triple_deletion(cfg: &Config) -> Result<Vec<Outcome>> {
    let posets = posets_upto(cfg.n, cfg.exec)?;
    let mut jobs = Vec::new();
    for p in posets {
        for v in 0..p.n() {
            for upward in [false, true] {
                let covered: Vec<usize> = (0..p.n())
                    .filter(|&u| if upward { p.is_covering(v, u) } else { p.is_covering(u, v) })
                    .collect();
                for mask in 1u64..1 << covered.len() {
                    if mask.count_ones() >= 2 {
                        let us: Vec<usize> = (0..covered.len())
                            .filter(|i| mask >> i & 1 == 1)
                            .map(|i| covered[i])
                            .collect();
                        jobs.push((p.clone(), v, us));
                    }
                }
            }
        }
    }
    Ok(cfg.exec.map(&jobs, |(p, v, us)| {
        let us1: Vec<usize> = us.iter().map(|u| u + 1).collect();
        let name = format!("{p} v={} u={us1:?}", v + 1);
        match generalized_triple_deletion(p, *v, us) {
            Ok(r) => {
                let mut fails = Vec::new();
                if !r.holds_ncsym {
                    fails.push("NCSym identity fails".to_string());
                }
                if !r.holds_sym {
                    fails.push("Sym identity fails".to_string());
                }
                if r.classical == Some(false) {
                    fails.push("classical triple deletion fails".to_string());
                }
                Outcome::check(name, fails).note(format!("S=∅ variant balances: {}", r.empty_term_balances))
            }
            Err(e) => err_outcome(name, e),
        }
    }))
}

fn equinumerosity(cfg: &Config) -> Result<Vec<Outcome>> {
    let posets = posets_upto(cfg.n, cfg.exec)?;
    Ok(cfg.exec.map(&posets, |p| {
        let faces = match p.inc().broken_cycle_complex(None) {
            Ok(f) => f,
            Err(e) => return err_outcome(p.to_string(), e),
        };
        let mut lhs: BTreeMap<IntPartition, u64> = BTreeMap::new();
        for f in faces {
            *lhs.entry(f.lambda).or_insert(0) += 1;
        }
        let rhs = permutation_census_in(&p.digraph().complement());
        let fails = if lhs == rhs {
            vec![]
        } else {
            vec![format!("broken-cycle faces {lhs:?} vs permutations {rhs:?}")]
        };
        Outcome::check(p.to_string(), fails)
    }))
}

/// Mutually incomparable unordered triples.
pub fn incomparable_triples(p: &Poset) -> usize {
    let n = p.n();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !p.comparable(a, b) && !p.comparable(a, c) && !p.comparable(b, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

fn statistics(cfg: &Config) -> Result<Vec<Outcome>> {
    let posets = posets_upto(cfg.n, cfg.exec)?;
    let mut out = cfg.exec.map(&posets, |p| {
        let g = p.inc();
        let d = p.digraph();
        let u = redei_berge(&d);
        let x = chromatic_sym(&g);
        let mut fails = Vec::new();
        let (i, c) = (p.incomparability_number(), p.chain_number());
        if i != g.clique_number() {
            fails.push(format!("i(P) = {i} but ω(inc) = {}", g.clique_number()));
        }
        if c != g.independence_number() {
            fails.push(format!("c(P) = {c} but α(inc) = {}", g.independence_number()));
        }
        let poly = u.principal_specialization();
        let first = (1..=p.n() as i64).find(|&m| !poly.eval_int(-m).is_zero());
        if first != Some(i as i64) {
            fails.push(format!("min m with u_P(-m) ≠ 0 is {first:?}, i(P) = {i}"));
        }
        if g.is_connected() != p.is_irreducible() {
            fails.push("connectivity of inc(P) disagrees with irreducibility".into());
        }
        if (d.complement().hamiltonian_cycles() > 0) != p.is_irreducible() {
            fails.push("Hamiltonian cycle in complement(D_P) disagrees with irreducibility".into());
        }
        let (xe, uh) = (x.to_basis(SymBasis::Elementary), u.to_basis(SymBasis::Complete));
        for lambda in int_partitions(p.n()) {
            if xe.coeff(&lambda) != uh.coeff(&lambda) {
                fails.push(format!("[e_{lambda}]X ≠ [h_{lambda}]U"));
            }
        }
        if p.is_free_3_1() && !u.positivity(SymBasis::Schur).is_positive() {
            fails.push("(3+1)-free but U_P not s-positive".into());
        }
        if !d.is_acyclic() || d.opposite() != p.dual().digraph() {
            fails.push("D_P is cyclic or (D_P)^op ≠ D_{P*}".into());
        }
        Outcome::check(p.to_string(), fails)
    });
    // Posets sharing U_P must share the incomparable-triple count.
    let mut groups: BTreeMap<String, Vec<&Poset>> = BTreeMap::new();
    for p in &posets {
        groups.entry(format!("{}|{}", p.n(), redei_berge(&p.digraph()))).or_default().push(p);
    }
    let mut fails = Vec::new();
    for members in groups.values().filter(|m| m.len() > 1) {
        let t: Vec<usize> = members.iter().map(|p| incomparable_triples(p)).collect();
        if t.iter().any(|&v| v != t[0]) {
            fails.push(format!("{} share U_P but triples {t:?}", members.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")));
        }
    }
    out.push(Outcome::check("equal-U triple counts", fails));
    let cm = search(SearchTarget::EqualXComplete, cfg.n, cfg.exec)?;
    out.push(Outcome::check(
        "complete multipartite distinguished by X",
        cm.iter().map(|f| f.to_string()).collect(),
    ));
    Ok(out)
}

// ---- searches -------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchTarget {
    ENegativeUio,
    HNegativeUio,
    EqualUPosets,
    EqualXComplete,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 4] = [
        SearchTarget::ENegativeUio,
        SearchTarget::HNegativeUio,
        SearchTarget::EqualUPosets,
        SearchTarget::EqualXComplete,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SearchTarget::ENegativeUio => "e-negative-uio",
            SearchTarget::HNegativeUio => "h-negative-uio",
            SearchTarget::EqualUPosets => "equal-U-nonisomorphic-posets",
            SearchTarget::EqualXComplete => "equal-X-nonisomorphic-complete-multipartite",
        }
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SearchTarget::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                let names: Vec<_> = SearchTarget::ALL.iter().map(|t| t.name()).collect();
                Error::parse("search target", s, format!("expected one of {}", names.join(", ")))
            })
    }
}

/// A certificate: the structures involved and what was observed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub structures: Vec<String>,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -- {}", self.structures.join(" & "), self.detail)
    }
}

/// Scans structures of size `n`; an empty result means nothing was found.
pub fn search(target: SearchTarget, n: usize, exec: Exec) -> Result<Vec<Finding>> {
    match target {
        SearchTarget::ENegativeUio | SearchTarget::HNegativeUio => {
            let posets = all_nuio(n)?;
            let found = exec.map(&posets, |p| {
                let verdict = if target == SearchTarget::ENegativeUio {
                    chromatic_sym(&p.inc()).positivity(SymBasis::Elementary)
                } else {
                    redei_berge(&p.digraph()).positivity(SymBasis::Complete)
                };
                (!verdict.is_positive()).then(|| Finding {
                    structures: vec![p.to_string()],
                    detail: verdict.to_string(),
                })
            });
            Ok(found.into_iter().flatten().collect())
        }
        SearchTarget::EqualUPosets => {
            let posets = enumerate_posets_iso(n, exec)?;
            let us = exec.map(&posets, |p| redei_berge(&p.digraph()));
            Ok(collisions(&posets, &us))
        }
        SearchTarget::EqualXComplete => {
            let mut out = Vec::new();
            for k in 1..=n {
                let lambdas = int_partitions(k);
                let gs: Vec<Graph> = lambdas.iter().map(Graph::complete_multipartite).collect();
                let xs = exec.map(&gs, chromatic_sym);
                out.extend(collisions(&lambdas, &xs));
            }
            Ok(out)
        }
    }
}

/// Pairs with equal expansions, re-verified by exact comparison.
fn collisions<T: fmt::Display>(items: &[T], values: &[SymElement]) -> Vec<Finding> {
    let mut by_key: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, v) in values.iter().enumerate() {
        by_key.entry(v.to_m().to_string()).or_default().push(i);
    }
    let mut out = Vec::new();
    for idx in by_key.values() {
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                if diff_sym(&values[i], &values[j]).is_none() {
                    out.push(Finding {
                        structures: vec![items[i].to_string(), items[j].to_string()],
                        detail: format!("common expansion {}", values[i].to_m()),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite, n: usize) -> Report {
        let cfg = Config {
            n,
            seed: 7,
            exec: Exec::Sequential,
            unsafe_bounds: false,
        };
        run(suite, &cfg).unwrap()
    }

    #[test]
    fn every_suite_passes_small() {
        for suite in Suite::ALL {
            let n = match suite {
                Suite::PExpansion | Suite::DelConW => 3,
                Suite::Breakdown => 4,
                _ => 3,
            };
            let r = quick(suite, n);
            assert!(r.passed(), "{}", r.render(true));
            assert!(!r.outcomes.is_empty(), "{suite}");
        }
    }

    #[test]
    fn reports_are_deterministic_across_modes() {
        let seq = quick(Suite::BrokenCycle, 4);
        let par = run(
            Suite::BrokenCycle,
            &Config {
                n: 4,
                seed: 7,
                exec: Exec::Parallel,
                unsafe_bounds: false,
            },
        )
        .unwrap();
        assert_eq!(seq.to_string(), par.to_string());
    }

    #[test]
    fn names_round_trip_and_bounds_enforced() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
            assert!(s.default_n() <= s.max_n());
        }
        assert!("nope".parse::<Suite>().unwrap_err().is_input_error());
        let err = run(Suite::DelConW, &Config::new(9)).unwrap_err();
        assert!(!err.is_input_error());
    }

    #[test]
    fn searches() {
        assert!(search(SearchTarget::ENegativeUio, 5, Exec::Sequential).unwrap().is_empty());
        assert!(search(SearchTarget::EqualXComplete, 6, Exec::Sequential).unwrap().is_empty());
        for f in search(SearchTarget::EqualUPosets, 4, Exec::Sequential).unwrap() {
            assert_eq!(f.structures.len(), 2);
        }
    }
}
