//! Executable theorem checks over finite instances.
//!
//! Each [`TheoremCheck`] names the instance-level hypotheses it needs, the
//! domain it quantifies over, and a per-tuple evaluator. The runner walks
//! the domain in a fixed order and stops at the first failing tuple, which
//! becomes the reported witness; [`replay`] re-evaluates such a tuple from a
//! freshly built context.

mod registry;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{Classification, Classifier, Flag};
use crate::format::Instance;
use crate::lattice::{LElem, LElementFlags, MultiplicativeLattice};
use crate::module::{LatticeModule, MElem};

pub use registry::{registry, FIG1_GROUP};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Instance-level preconditions of a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    PgLattice,
    FaithfulModule,
    MultiplicationModule,
    PgModule,
    /// `I_M` compact; automatic for finite carriers.
    TopCompact,
    /// Compactly generated module; automatic for finite carriers.
    CompactlyGenerated,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 6] = [
        Hypothesis::PgLattice,
        Hypothesis::FaithfulModule,
        Hypothesis::MultiplicationModule,
        Hypothesis::PgModule,
        Hypothesis::TopCompact,
        Hypothesis::CompactlyGenerated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::PgLattice => "pg-lattice",
            Hypothesis::FaithfulModule => "faithful-module",
            Hypothesis::MultiplicationModule => "multiplication-module",
            Hypothesis::PgModule => "pg-module",
            Hypothesis::TopCompact => "top-compact",
            Hypothesis::CompactlyGenerated => "compactly-generated",
        }
    }

    /// Holds for every finite instance, so never causes a skip.
    pub fn is_automatic(self) -> bool {
        matches!(
            self,
            Hypothesis::TopCompact | Hypothesis::CompactlyGenerated
        )
    }

    fn evaluate(self, m: &LatticeModule) -> bool {
        match self {
            Hypothesis::PgLattice => m.lattice().is_pg(),
            Hypothesis::FaithfulModule => m.is_faithful(),
            Hypothesis::MultiplicationModule => m.is_multiplication_module(),
            Hypothesis::PgModule => m.is_pg(),
            Hypothesis::TopCompact | Hypothesis::CompactlyGenerated => true,
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What a check quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    /// Every proper `N`.
    ProperElements,
    /// Ordered pairs `(N, K)` of proper elements.
    ProperPairs,
    /// Pairs `(N, p)` with `N` proper and `p` in `L`.
    ProperWithScalar,
    /// Every `q` in `L`.
    LatticeElements,
    /// Unordered pairs `(a, b)` in `L`.
    LatticePairs,
    /// Chains of proper elements carrying the flag: all 2- and 3-element
    /// chains plus sampled maximal ones.
    Chains(Flag),
}

/// One quantified variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "sort", content = "id", rename_all = "lowercase")]
pub enum Ref {
    L(LElem),
    M(MElem),
}

impl Ref {
    pub fn l(self) -> LElem {
        match self {
            Ref::L(a) => a,
            Ref::M(_) => panic!("expected a lattice element"),
        }
    }

    pub fn m(self) -> MElem {
        match self {
            Ref::M(x) => x,
            Ref::L(_) => panic!("expected a module element"),
        }
    }
}

/// Result of evaluating a statement at one tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    /// The antecedent is false, so nothing was asserted.
    Vacuous,
    Fails(String),
}

/// A registry entry.
pub struct TheoremCheck {
    pub id: &'static str,
    pub description: &'static str,
    pub hypotheses: &'static [Hypothesis],
    pub domain: Domain,
    /// Drawn dashed in the implication diagram; only diagram arrows set this.
    pub dashed: bool,
    pub eval: fn(&Context, &[Ref]) -> Outcome,
}

impl fmt::Debug for TheoremCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TheoremCheck")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

/// Looks up a check by id.
pub fn find_check(id: &str) -> Option<&'static TheoremCheck> {
    registry().iter().find(|c| c.id == id)
}

/// Expands a selection: `all`, the diagram group, or individual ids.
pub fn resolve_checks<S: AsRef<str>>(
    ids: &[S],
) -> Result<Vec<&'static TheoremCheck>, HarnessError> {
    let mut out: Vec<&'static TheoremCheck> = Vec::new();
    let mut push = |c: &'static TheoremCheck| {
        if !out.iter().any(|o| o.id == c.id) {
            out.push(c);
        }
    };
    for id in ids {
        let id = id.as_ref();
        if id == "all" {
            registry().iter().for_each(&mut push);
        } else if id == FIG1_GROUP {
            registry()
                .iter()
                .filter(|c| c.id.starts_with("fig1-"))
                .for_each(&mut push);
        } else {
            push(find_check(id).ok_or_else(|| HarnessError::UnknownCheck(id.to_string()))?);
        }
    }
    Ok(out)
}

/// Everything a check may look at on one instance.
pub struct Context {
    module: LatticeModule,
    classes: Vec<Option<Classification>>,
    l_flags: Vec<LElementFlags>,
    hypotheses: Vec<(Hypothesis, bool)>,
}

impl Context {
    pub fn new(instance: &Instance, classifier: &Classifier) -> Self {
        Context::for_module(instance.module_or_self(), classifier)
    }

    pub fn for_module(module: LatticeModule, classifier: &Classifier) -> Self {
        let classes = classifier.classify_all(&module);
        let l = module.lattice().clone();
        let l_flags = l.elements().map(|a| l.flags(a)).collect();
        let hypotheses = Hypothesis::ALL
            .iter()
            .map(|&h| (h, h.evaluate(&module)))
            .collect();
        Context {
            module,
            classes,
            l_flags,
            hypotheses,
        }
    }

    pub fn module(&self) -> &LatticeModule {
        &self.module
    }

    pub fn lattice(&self) -> &Arc<MultiplicativeLattice> {
        self.module.lattice()
    }

    pub fn hypothesis(&self, h: Hypothesis) -> bool {
        self.hypotheses
            .iter()
            .find(|(k, _)| *k == h)
            .is_some_and(|(_, v)| *v)
    }

    pub fn hypotheses(&self) -> &[(Hypothesis, bool)] {
        &self.hypotheses
    }

    pub fn class(&self, n: MElem) -> Option<&Classification> {
        self.classes.get(n.0).and_then(Option::as_ref)
    }

    /// A classifier flag; false for `I_M`, which is never classified.
    pub fn flag(&self, n: MElem, flag: Flag) -> bool {
        self.class(n).is_some_and(|c| c.flags.get(flag))
    }

    pub fn l_prime(&self, a: LElem) -> bool {
        self.l_flags[a.0].prime
    }

    pub fn l_primary(&self, a: LElem) -> bool {
        self.l_flags[a.0].primary
    }

    pub fn rad(&self, n: MElem) -> MElem {
        self.module.rad(n).expect("rad of a proper element")
    }

    pub fn ml(&self, x: MElem) -> String {
        self.module.label(x)
    }

    pub fn ll(&self, a: LElem) -> String {
        self.lattice().label(a)
    }

    fn label(&self, r: Ref) -> String {
        match r {
            Ref::L(a) => self.ll(a),
            Ref::M(x) => self.ml(x),
        }
    }

    fn domain(&self, domain: Domain, seed: u64, chain_samples: usize) -> Vec<Vec<Ref>> {
        let m = &self.module;
        let l = self.lattice();
        match domain {
            Domain::ProperElements => m.proper_elements().map(|n| vec![Ref::M(n)]).collect(),
            Domain::ProperPairs => m
                .proper_elements()
                .flat_map(|n| m.proper_elements().map(move |k| vec![Ref::M(n), Ref::M(k)]))
                .collect(),
            Domain::ProperWithScalar => m
                .proper_elements()
                .flat_map(|n| l.elements().map(move |p| vec![Ref::M(n), Ref::L(p)]))
                .collect(),
            Domain::LatticeElements => l.elements().map(|a| vec![Ref::L(a)]).collect(),
            Domain::LatticePairs => l
                .elements()
                .flat_map(|a| {
                    l.elements()
                        .filter(move |b| a <= *b)
                        .map(move |b| vec![Ref::L(a), Ref::L(b)])
                })
                .collect(),
            Domain::Chains(flag) => {
                let members: Vec<MElem> = m
                    .proper_elements()
                    .filter(|&n| self.flag(n, flag))
                    .collect();
                chains(m, &members, seed, chain_samples)
                    .into_iter()
                    .map(|c| c.into_iter().map(Ref::M).collect())
                    .collect()
            }
        }
    }
}

/// All 2- and 3-element chains in `members`, then up to `samples` random
/// maximal chains of length at least 4.
fn chains(m: &LatticeModule, members: &[MElem], seed: u64, samples: usize) -> Vec<Vec<MElem>> {
    let mut out = Vec::new();
    for &a in members {
        for &b in members.iter().filter(|&&b| m.lt(a, b)) {
            out.push(vec![a, b]);
            for &c in members.iter().filter(|&&c| m.lt(b, c)) {
                out.push(vec![a, b, c]);
            }
        }
    }
    if members.is_empty() {
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    for _ in 0..samples {
        let start = *members.choose(&mut rng).expect("non-empty");
        let mut chain = vec![start];
        loop {
            let top = *chain.last().expect("non-empty");
            let above: Vec<MElem> = members.iter().copied().filter(|&x| m.lt(top, x)).collect();
            let covers: Vec<MElem> = above
                .iter()
                .copied()
                .filter(|&x| !above.iter().any(|&y| m.lt(y, x)))
                .collect();
            match covers.choose(&mut rng) {
                Some(&next) => chain.push(next),
                None => break,
            }
        }
        loop {
            let bottom = chain[0];
            let below: Vec<MElem> = members
                .iter()
                .copied()
                .filter(|&x| m.lt(x, bottom))
                .collect();
            let covered: Vec<MElem> = below
                .iter()
                .copied()
                .filter(|&x| !below.iter().any(|&y| m.lt(x, y)))
                .collect();
            match covered.choose(&mut rng) {
                Some(&next) => chain.insert(0, next),
                None => break,
            }
        }
        if chain.len() >= 4 && seen.insert(chain.clone()) {
            out.push(chain);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Some hypothesis is false on the instance.
    Skipped {
        unmet: Vec<Hypothesis>,
    },
    /// Hypotheses hold but no tuple satisfied the antecedent.
    Vacuous,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped { .. } => "skipped",
            Status::Vacuous => "vacuous",
        }
    }
}

/// A failing tuple with labels for display.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailWitness {
    pub tuple: Vec<Ref>,
    pub labels: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub instance: String,
    pub check: &'static str,
    #[serde(flatten)]
    pub status: Status,
    pub dashed: bool,
    /// Tuples where the statement was asserted and held.
    pub asserted: usize,
    pub tuples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FailWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceSummary {
    pub name: String,
    pub fingerprint: String,
    pub lattice_elements: usize,
    pub module_elements: usize,
    pub hypotheses: Vec<(Hypothesis, bool)>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub vacuous: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub seed: u64,
    pub instances: Vec<InstanceSummary>,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub chain_samples: usize,
    pub classifier: Classifier,
    /// Record wall-clock time per result; off by default so reports are
    /// byte-for-byte reproducible.
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            chain_samples: 100,
            classifier: Classifier::new(),
            timings: false,
        }
    }
}

/// A named instance, as it appears in reports.
#[derive(Clone, Debug)]
pub struct NamedInstance {
    pub name: String,
    pub instance: Instance,
}

impl NamedInstance {
    pub fn new(name: impl Into<String>, instance: Instance) -> Self {
        NamedInstance {
            name: name.into(),
            instance,
        }
    }
}

/// Evaluates one check on one context.
pub fn evaluate(
    ctx: &Context,
    instance: &str,
    check: &TheoremCheck,
    config: &SuiteConfig,
) -> CheckResult {
    let start = Instant::now();
    let unmet: Vec<Hypothesis> = check
        .hypotheses
        .iter()
        .copied()
        .filter(|&h| !ctx.hypothesis(h))
        .collect();
    let mut result = CheckResult {
        instance: instance.to_string(),
        check: check.id,
        status: Status::Vacuous,
        dashed: check.dashed,
        asserted: 0,
        tuples: 0,
        witness: None,
        elapsed_ms: None,
    };
    if !unmet.is_empty() {
        result.status = Status::Skipped { unmet };
    } else {
        for tuple in ctx.domain(check.domain, config.seed, config.chain_samples) {
            result.tuples += 1;
            match (check.eval)(ctx, &tuple) {
                Outcome::Holds => result.asserted += 1,
                Outcome::Vacuous => {}
                Outcome::Fails(detail) => {
                    let labels = tuple.iter().map(|&r| ctx.label(r)).collect();
                    result.status = Status::Fail;
                    result.witness = Some(FailWitness {
                        tuple,
                        labels,
                        detail,
                    });
                    break;
                }
            }
        }
        if result.status != Status::Fail && result.asserted > 0 {
            result.status = Status::Pass;
        }
    }
    if config.timings {
        result.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    result
}

/// Runs `checks` on every instance, in parallel, and merges the results
/// in (instance, registry) order.
pub fn run_suite(
    instances: &[NamedInstance],
    checks: &[&TheoremCheck],
    config: &SuiteConfig,
) -> SuiteReport {
    let contexts: Vec<Context> = instances
        .par_iter()
        .map(|i| Context::new(&i.instance, &config.classifier))
        .collect();
    let jobs: Vec<(usize, &TheoremCheck)> = (0..instances.len())
        .flat_map(|i| checks.iter().map(move |&c| (i, c)))
        .collect();
    let results: Vec<CheckResult> = jobs
        .par_iter()
        .map(|&(i, c)| evaluate(&contexts[i], &instances[i].name, c, config))
        .collect();

    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail => summary.fail += 1,
            Status::Skipped { .. } => summary.skipped += 1,
            Status::Vacuous => summary.vacuous += 1,
        }
    }
    let instances = instances
        .iter()
        .zip(&contexts)
        .map(|(i, ctx)| InstanceSummary {
            name: i.name.clone(),
            fingerprint: i.instance.fingerprint(),
            lattice_elements: ctx.lattice().len(),
            module_elements: ctx.module().len(),
            hypotheses: ctx.hypotheses().to_vec(),
        })
        .collect();
    SuiteReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        seed: config.seed,
        instances,
        results,
        summary,
    }
}

/// The implication-diagram arrows on one instance.
pub fn check_implication_figure(instance: &NamedInstance, config: &SuiteConfig) -> SuiteReport {
    let checks = resolve_checks(&[FIG1_GROUP]).expect("diagram group exists");
    run_suite(std::slice::from_ref(instance), &checks, config)
}

/// Re-evaluates a check at one tuple in a fresh context.
pub fn replay(
    instance: &Instance,
    classifier: &Classifier,
    check: &TheoremCheck,
    tuple: &[Ref],
) -> Outcome {
    let ctx = Context::new(instance, classifier);
    (check.eval)(&ctx, tuple)
}

/// One registry entry for listings.
#[derive(Clone, Debug, Serialize)]
pub struct CheckInfo {
    pub id: &'static str,
    pub description: &'static str,
    pub hypotheses: &'static [Hypothesis],
    pub domain: Domain,
    pub dashed: bool,
}

pub fn list_checks() -> Vec<CheckInfo> {
    registry()
        .iter()
        .map(|c| CheckInfo {
            id: c.id,
            description: c.description,
            hypotheses: c.hypotheses,
            domain: c.domain,
            dashed: c.dashed,
        })
        .collect()
}
