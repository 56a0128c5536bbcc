//! Exhaustive suites over bounded word sets.
//!
//! Every suite returns a [`SuiteResult`]; zero verdicts are backed by a
//! replayed derivation trace and nonzero verdicts by an exhausted class in
//! which no member contains an annihilation factor.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::engine::{ClassReport, Engine, EngineError, EngineOptions};
use crate::invariants::{check_a_subsequence, classify_shape};
use crate::presentation::{standard_presentation, Presentation};
use crate::squarefree::{all_ternary, count_squarefree, squarefree_up_to, SquarefreeError, TernaryWord};
use crate::trace::{replay, DerivationTrace};
use crate::word::{a_subsequence, find_factor, format_word, Letter, Word};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Squarefree(#[from] SquarefreeError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseFailure {
    pub inputs: Vec<Word>,
    pub expected: String,
    pub got: String,
    pub trace: Option<DerivationTrace>,
}

#[derive(Debug, Clone)]
pub struct SuiteResult {
    pub suite: String,
    pub cases_run: usize,
    pub failures: Vec<CaseFailure>,
    /// Measurements that are reported but not asserted.
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// `<suite> <pass|fail> cases=<n> failures=<m> elapsed_ms=<t>`
    pub fn summary_line(&self) -> String {
        format!(
            "{} {} cases={} failures={} elapsed_ms={}",
            self.suite,
            if self.passed() { "pass" } else { "fail" },
            self.cases_run,
            self.failures.len(),
            self.elapsed.as_millis()
        )
    }

    /// Same results ignoring elapsed time.
    pub fn same_outcome(&self, other: &SuiteResult) -> bool {
        self.suite == other.suite
            && self.cases_run == other.cases_run
            && self.failures == other.failures
            && self.notes == other.notes
    }
}

/// Failure blocks printed per suite by [`format_report`].
pub const REPORT_FAILURE_LIMIT: usize = 5;

/// Summary lines for every suite, then one block per failure (with its trace
/// file embedded, indented) and the notes. At most [`REPORT_FAILURE_LIMIT`]
/// failures are shown per suite; see [`format_report_full`].
pub fn format_report(results: &[SuiteResult]) -> String {
    report_with_limit(results, REPORT_FAILURE_LIMIT)
}

/// Like [`format_report`], with every failure.
pub fn format_report_full(results: &[SuiteResult]) -> String {
    report_with_limit(results, usize::MAX)
}

fn report_with_limit(results: &[SuiteResult], limit: usize) -> String {
    let mut out = String::new();
    for r in results {
        out.push_str(&r.summary_line());
        out.push('\n');
    }
    for r in results {
        for f in r.failures.iter().take(limit) {
            let inputs: Vec<String> = f.inputs.iter().map(format_word).collect();
            out.push_str(&format!(
                "failure {}: input=[{}] expected={} got={}\n",
                r.suite,
                inputs.join(" | "),
                f.expected,
                f.got
            ));
            if let Some(t) = &f.trace {
                for line in t.to_text().lines() {
                    out.push_str("  ");
                    out.push_str(line);
                    out.push('\n');
                }
            }
        }
        if r.failures.len() > limit {
            out.push_str(&format!("failure {}: {} more not shown\n", r.suite, r.failures.len() - limit));
        }
        for n in &r.notes {
            out.push_str(&format!("note {}: {}\n", r.suite, n));
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SuiteId {
    Prop1,
    Prop2,
    Prop3To6,
    Prop7,
    Prop9,
    Injectivity,
    Growth,
}

impl SuiteId {
    pub const ALL: [SuiteId; 7] = [
        SuiteId::Prop1,
        SuiteId::Prop2,
        SuiteId::Prop3To6,
        SuiteId::Prop7,
        SuiteId::Prop9,
        SuiteId::Injectivity,
        SuiteId::Growth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Prop1 => "prop1",
            SuiteId::Prop2 => "prop2",
            SuiteId::Prop3To6 => "prop3_6",
            SuiteId::Prop7 => "prop7",
            SuiteId::Prop9 => "prop9",
            SuiteId::Injectivity => "injectivity",
            SuiteId::Growth => "growth",
        }
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> Result<SuiteId, String> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "1" | "prop1" => SuiteId::Prop1,
            "2" | "prop2" => SuiteId::Prop2,
            "3" | "4" | "5" | "6" | "3-6" | "3_6" | "prop3_6" => SuiteId::Prop3To6,
            "7" | "prop7" => SuiteId::Prop7,
            "8" | "9" | "prop9" => SuiteId::Prop9,
            "injectivity" | "inj" => SuiteId::Injectivity,
            "growth" => SuiteId::Growth,
            other => return Err(format!("unknown suite `{other}`")),
        })
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-suite bounds. Defaults finish in seconds in release builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub prop1_max_len: usize,
    pub prop2_max_len: usize,
    pub prop3_6_max_len: usize,
    pub prop7_max_total: usize,
    pub prop9_max_len: usize,
    pub injectivity_max_len: usize,
    pub growth_max_len: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            prop1_max_len: 3,
            prop2_max_len: 5,
            prop3_6_max_len: 2,
            prop7_max_total: 7,
            prop9_max_len: 8,
            injectivity_max_len: 6,
            growth_max_len: 6,
        }
    }
}

impl VerifyConfig {
    pub fn bound(&self, suite: SuiteId) -> usize {
        match suite {
            SuiteId::Prop1 => self.prop1_max_len,
            SuiteId::Prop2 => self.prop2_max_len,
            SuiteId::Prop3To6 => self.prop3_6_max_len,
            SuiteId::Prop7 => self.prop7_max_total,
            SuiteId::Prop9 => self.prop9_max_len,
            SuiteId::Injectivity => self.injectivity_max_len,
            SuiteId::Growth => self.growth_max_len,
        }
    }

    pub fn set_bound(&mut self, suite: SuiteId, value: usize) {
        let slot = match suite {
            SuiteId::Prop1 => &mut self.prop1_max_len,
            SuiteId::Prop2 => &mut self.prop2_max_len,
            SuiteId::Prop3To6 => &mut self.prop3_6_max_len,
            SuiteId::Prop7 => &mut self.prop7_max_total,
            SuiteId::Prop9 => &mut self.prop9_max_len,
            SuiteId::Injectivity => &mut self.injectivity_max_len,
            SuiteId::Growth => &mut self.growth_max_len,
        };
        *slot = value;
    }

    fn minimum(suite: SuiteId) -> usize {
        match suite {
            SuiteId::Prop2 | SuiteId::Injectivity => 2,
            SuiteId::Prop7 => 4,
            _ => 1,
        }
    }

    pub fn check(&self, suites: &[SuiteId]) -> Result<(), VerifyError> {
        for &s in suites {
            let min = Self::minimum(s);
            if self.bound(s) < min {
                return Err(VerifyError::Precondition(format!(
                    "{s} bound must be at least {min}, got {}",
                    self.bound(s)
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub nonzero_classes: usize,
    pub squarefree: usize,
}

/// An engine with a short label used in suite names.
#[derive(Debug, Clone)]
pub struct Target {
    pub label: String,
    pub engine: Engine,
}

/// Suites run against the primary target; the nonzero suite also runs against
/// every alternate target.
#[derive(Debug, Clone)]
pub struct Verifier {
    primary: Target,
    alternates: Vec<Target>,
    /// Run every suite, not just the nonzero suite, on the alternates too.
    pub all_suites_on_alternates: bool,
}

fn aux_label(include_taq_zero: bool) -> &'static str {
    if include_taq_zero {
        "aux"
    } else {
        "plain"
    }
}

impl Verifier {
    pub fn new(label: impl Into<String>, engine: Engine) -> Verifier {
        Verifier {
            primary: Target { label: label.into(), engine },
            alternates: Vec::new(),
            all_suites_on_alternates: false,
        }
    }

    /// The standard presentation with the given primary setting, plus the
    /// other setting of the `t_i a_j Q = 0` rules as an alternate.
    pub fn standard(include_taq_zero: bool, options: EngineOptions) -> Verifier {
        let mk = |aux: bool| Target {
            label: aux_label(aux).to_string(),
            engine: Engine::with_options(standard_presentation(aux), options),
        };
        Verifier {
            primary: mk(include_taq_zero),
            alternates: vec![mk(!include_taq_zero)],
            all_suites_on_alternates: false,
        }
    }

    pub fn primary(&self) -> &Engine {
        &self.primary.engine
    }

    fn targets_for(&self, suite: SuiteId) -> Vec<&Target> {
        let mut v = vec![&self.primary];
        if suite == SuiteId::Prop9 || self.all_suites_on_alternates {
            v.extend(self.alternates.iter());
        }
        v
    }

    pub fn run(&self, suites: &[SuiteId], config: &VerifyConfig) -> Result<Vec<SuiteResult>, VerifyError> {
        config.check(suites)?;
        let mut out = Vec::new();
        for &s in suites {
            for t in self.targets_for(s) {
                let b = config.bound(s);
                let mut r = match s {
                    SuiteId::Prop1 => verify_prop1(&t.engine, b)?,
                    SuiteId::Prop2 => verify_prop2(&t.engine, b)?,
                    SuiteId::Prop3To6 => verify_prop3_to_6(&t.engine, b)?,
                    SuiteId::Prop7 => verify_prop7(&t.engine, b)?,
                    SuiteId::Prop9 => verify_prop9(&t.engine, b)?,
                    SuiteId::Injectivity => verify_injectivity(&t.engine, b)?,
                    SuiteId::Growth => growth(&t.engine, b)?.0,
                };
                r.suite = format!("{}[{}]", r.suite, t.label);
                out.push(r);
            }
        }
        Ok(out)
    }

    pub fn run_all(&self, config: &VerifyConfig) -> Result<Vec<SuiteResult>, VerifyError> {
        self.run(&SuiteId::ALL, config)
    }
}

/// Runs every suite against the standard presentation (plain primary, aux
/// alternate for the nonzero suite).
pub fn run_all(config: &VerifyConfig) -> Result<Vec<SuiteResult>, VerifyError> {
    Verifier::standard(false, EngineOptions::default()).run_all(config)
}

// ---------------------------------------------------------------------------
// case helpers

fn ternary_concat(parts: &[&[Letter]]) -> Vec<Letter> {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

fn word(parts: &[&[Letter]]) -> Word {
    Word::Letters(ternary_concat(parts))
}

fn ternary_up_to(max: usize, include_empty: bool) -> Vec<TernaryWord> {
    let start = if include_empty { 0 } else { 1 };
    (start..=max).flat_map(all_ternary).collect()
}

fn failure(inputs: Vec<Word>, expected: &str, got: impl Into<String>, trace: Option<DerivationTrace>) -> CaseFailure {
    CaseFailure { inputs, expected: expected.to_string(), got: got.into(), trace }
}

fn engine_failure(inputs: Vec<Word>, expected: &str, err: EngineError) -> CaseFailure {
    failure(inputs, expected, format!("error: {err}"), None)
}

/// `w` must be zero with a trace that replays.
fn expect_zero(engine: &Engine, w: &Word) -> Option<CaseFailure> {
    match engine.zero_trace(w) {
        Err(e) => Some(engine_failure(vec![w.clone()], "zero", e)),
        Ok(None) => Some(failure(vec![w.clone()], "zero", "nonzero", None)),
        Ok(Some(t)) => match replay(engine.presentation(), &t) {
            Ok(()) => None,
            Err(e) => Some(failure(vec![w.clone()], "zero", format!("trace rejected: {e}"), Some(t))),
        },
    }
}

/// A nonzero verdict must come from an exhausted class none of whose members
/// contains an annihilation left-hand side. The factor scan here is separate
/// from the engine's own zero detection.
fn nonzero_certificate_problem(p: &Presentation, report: &ClassReport) -> Option<String> {
    if !report.exhausted {
        return Some("class not exhausted".into());
    }
    for m in &report.members {
        for r in p.rules().iter().filter(|r| r.is_annihilation()) {
            if !find_factor(m, r.lhs()).is_empty() {
                return Some(format!("member `{m}` contains `{}`", format_word(&Word::Letters(r.lhs().to_vec()))));
            }
        }
    }
    None
}

fn collect(suite: &str, started: Instant, cases_run: usize, failures: Vec<CaseFailure>, notes: Vec<String>) -> SuiteResult {
    SuiteResult { suite: suite.to_string(), cases_run, failures, notes, elapsed: started.elapsed() }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), VerifyError> {
    if cond {
        Ok(())
    } else {
        Err(VerifyError::Precondition(msg()))
    }
}

// ---------------------------------------------------------------------------
// suites

/// `L·U` for every `U` over the full alphabet with `1 <= |U| <= max_len`.
fn l_words(max_len: usize) -> Vec<Vec<Letter>> {
    let mut words: Vec<Vec<Letter>> = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![vec![Letter::L]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                Letter::ALL.iter().map(move |&x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
        words.extend(layer.iter().cloned());
    }
    words
}

/// Every word a suite feeds to the engine at the given bound, both sides of
/// each identity included. Duplicates are removed; order is unspecified.
pub fn suite_inputs(suite: SuiteId, bound: usize) -> Vec<Word> {
    let mut out: Vec<Word> = match suite {
        SuiteId::Prop1 => l_words(bound).into_iter().map(Word::Letters).collect(),
        SuiteId::Prop2 => {
            let mut v = Vec::new();
            for xy in (2..=bound).flat_map(all_ternary) {
                v.push(xy.prefixed_by_l());
                for split in 1..xy.len() {
                    let (x, y) = xy.letters().split_at(split);
                    v.push(word(&[&[Letter::M, Letter::P], x, &[Letter::R, Letter::S1, Letter::Q], y]));
                }
            }
            v
        }
        SuiteId::Prop3To6 => {
            let (ids, probes) = identities(bound);
            ids.into_iter()
                .flat_map(|id| [id.lhs, id.rhs])
                .chain(probes.into_iter().map(|(l, _)| l))
                .collect()
        }
        SuiteId::Prop7 => [(false, false), (true, false), (false, true), (true, true)]
            .into_iter()
            .flat_map(|(x, z)| yy_words(bound, x, z))
            .map(Word::Letters)
            .collect(),
        SuiteId::Prop9 | SuiteId::Injectivity => squarefree_up_to(bound)
            .map(|ws| ws.iter().map(TernaryWord::prefixed_by_l).collect())
            .unwrap_or_default(),
        SuiteId::Growth => (1..=bound).flat_map(all_ternary).map(|a| a.prefixed_by_l()).collect(),
    };
    out.sort_by(|a, b| a.letters().cmp(b.letters()));
    out.dedup();
    out
}

/// `L·U` for every `U` over the whole alphabet with `|U| <= max_len`: zero if
/// `U` has a non-a letter, otherwise canonical form `L·U` or zero.
pub fn verify_prop1(engine: &Engine, max_len: usize) -> Result<SuiteResult, VerifyError> {
    require(max_len >= 1, || "prop1 max_len must be at least 1".into())?;
    let started = Instant::now();
    let words = l_words(max_len);
    let failures: Vec<CaseFailure> = words
        .par_iter()
        .filter_map(|v| {
            let w = Word::Letters(v.clone());
            if v[1..].iter().any(|l| !l.is_a()) {
                return expect_zero(engine, &w);
            }
            match engine.class_enumerate(&w) {
                Err(e) => Some(engine_failure(vec![w], "L-form or zero", e)),
                Ok(report) => match &report.zero_witness {
                    Some(t) => replay(engine.presentation(), t)
                        .err()
                        .map(|e| failure(vec![w.clone()], "zero", format!("trace rejected: {e}"), Some(t.clone()))),
                    None => {
                        let heads = report.l_initial_members();
                        if heads.len() == 1 && *heads[0] == w {
                            None
                        } else {
                            let got: Vec<String> = heads.iter().map(|h| h.to_string()).collect();
                            Some(failure(vec![w.clone()], &format!("canonical {w}"), got.join(", "), None))
                        }
                    }
                },
            }
        })
        .collect();
    Ok(collect("prop1", started, words.len(), failures, vec![]))
}

/// `L X Y ≡ M P X R s1 Q Y` for nonempty ternary `X`, `Y`, `|X|+|Y| <= max_len`.
pub fn verify_prop2(engine: &Engine, max_len: usize) -> Result<SuiteResult, VerifyError> {
    require(max_len >= 2, || "prop2 max_len must be at least 2".into())?;
    let started = Instant::now();
    let seeds: Vec<TernaryWord> = (2..=max_len).flat_map(all_ternary).collect();
    let per_seed: Vec<(usize, Vec<CaseFailure>)> = seeds
        .par_iter()
        .map(|xy| {
            let lxy = xy.prefixed_by_l();
            let n = xy.len();
            let report = match engine.class_enumerate(&lxy) {
                Ok(r) => r,
                Err(e) => return (n - 1, vec![engine_failure(vec![lxy], "class", e)]),
            };
            let members: HashSet<&Word> = report.members.iter().collect();
            let mut fails = Vec::new();
            for split in 1..n {
                let (x, y) = xy.letters().split_at(split);
                let target = word(&[&[Letter::M, Letter::P], x, &[Letter::R, Letter::S1, Letter::Q], y]);
                if !members.contains(&target) {
                    let got = if report.is_zero() && engine.is_zero(&target).unwrap_or(false) {
                        continue;
                    } else {
                        "not equivalent"
                    };
                    fails.push(failure(vec![lxy.clone(), target], "equivalent", got, None));
                }
            }
            (n - 1, fails)
        })
        .collect();
    let cases = per_seed.iter().map(|(c, _)| c).sum();
    let failures = per_seed.into_iter().flat_map(|(_, f)| f).collect();
    Ok(collect("prop2", started, cases, failures, vec![]))
}

struct Identity {
    lhs: Word,
    rhs: Word,
    /// Both sides must additionally be zero.
    zero: bool,
}

fn identities(max_len: usize) -> (Vec<Identity>, Vec<(Word, Word)>) {
    use Letter::*;
    let any = ternary_up_to(max_len, true);
    let nonempty = ternary_up_to(max_len, false);
    let mut out = Vec::new();
    let mut zero_probes = Vec::new();
    for i in 0..3 {
        let (ai, ti) = (Letter::A[i], Letter::T[i]);
        for u in &any {
            let u = u.letters();
            // P a_i U R t_i ≡ a_i P U R s1
            out.push(Identity { lhs: word(&[&[P, ai], u, &[R, ti]]), rhs: word(&[&[ai, P], u, &[R, S1]]), zero: false });
            // P a_j U R t_i ≡ a_j P U s2 R, i != j
            for j in (0..3).filter(|&j| j != i) {
                let aj = Letter::A[j];
                out.push(Identity { lhs: word(&[&[P, aj], u, &[R, ti]]), rhs: word(&[&[aj, P], u, &[S2, R]]), zero: false });
            }
            // s1 V Q a_i ≡ t_i V a_i Q
            out.push(Identity { lhs: word(&[&[S1], u, &[Q, ai]]), rhs: word(&[&[ti], u, &[ai, Q]]), zero: false });
            // s2 R V Q a_i ≡ t_i V R a_i Q
            out.push(Identity { lhs: word(&[&[S2, R], u, &[Q, ai]]), rhs: word(&[&[ti], u, &[R, ai, Q]]), zero: false });
        }
    }
    for x in &nonempty {
        let x = x.letters();
        for v in &any {
            let v = v.letters();
            for z in &any {
                let z = z.letters();
                // P X V R Z s1 Q X ≡ X P V R s1 Z X Q
                out.push(Identity {
                    lhs: word(&[&[P], x, v, &[R], z, &[S1, Q], x]),
                    rhs: word(&[x, &[P], v, &[R, S1], z, x, &[Q]]),
                    zero: v.is_empty(),
                });
            }
            // P X s2 V R Q X ≡ X P V R s1 X Q (≡ 0 when V is empty)
            let lhs = word(&[&[P], x, &[S2], v, &[R, Q], x]);
            let rhs = word(&[x, &[P], v, &[R, S1], x, &[Q]]);
            if !v.is_empty() {
                zero_probes.push((lhs.clone(), rhs.clone()));
            }
            out.push(Identity { lhs, rhs, zero: v.is_empty() });
        }
    }
    for i in 0..3 {
        for j in (0..3).filter(|&j| j != i) {
            for k in 0..3 {
                let (ai, aj, ak) = (Letter::A[i], Letter::A[j], Letter::A[k]);
                // P g a_i a_j a_k = a_i P g a_j a_k
                out.push(Identity { lhs: word(&[&[P, G, ai, aj, ak]]), rhs: word(&[&[ai, P, G, aj, ak]]), zero: false });
            }
        }
    }
    (out, zero_probes)
}

/// The derived identities, over every index choice and every ternary context
/// word up to `max_len`.
pub fn verify_prop3_to_6(engine: &Engine, max_len: usize) -> Result<SuiteResult, VerifyError> {
    require(max_len >= 1, || "prop3_6 max_len must be at least 1".into())?;
    let started = Instant::now();
    let (ids, zero_probes) = identities(max_len);
    let failures: Vec<CaseFailure> = ids
        .par_iter()
        .flat_map_iter(|id| {
            let mut fails = Vec::new();
            match engine.equivalent(&id.lhs, &id.rhs) {
                Ok(true) => {}
                Ok(false) => fails.push(failure(vec![id.lhs.clone(), id.rhs.clone()], "equivalent", "not equivalent", None)),
                Err(e) => fails.push(engine_failure(vec![id.lhs.clone(), id.rhs.clone()], "equivalent", e)),
            }
            if id.zero {
                fails.extend(expect_zero(engine, &id.lhs));
                fails.extend(expect_zero(engine, &id.rhs));
            }
            fails
        })
        .collect();
    let probe: Vec<(bool, &Word)> = zero_probes
        .par_iter()
        .map(|(l, _)| (engine.is_zero(l).unwrap_or(false), l))
        .collect();
    let zero_count = probe.iter().filter(|(z, _)| *z).count();
    let mut notes = vec![format!(
        "P X s2 V R Q X with nonempty V: {zero_count} of {} zero (not asserted)",
        probe.len()
    )];
    if let Some((_, w)) = probe.iter().find(|(z, _)| !*z) {
        notes.push(format!("nonzero example: {w}"));
    }
    Ok(collect("prop3_6", started, ids.len(), failures, notes))
}

/// `L·X·Y·Y·Z` over ternary parts with `|X| + 2|Y| + |Z| <= max_total`, `Y`
/// nonempty, and `X` (resp. `Z`) empty exactly when requested.
fn yy_words(max_total: usize, x_empty: bool, z_empty: bool) -> Vec<Vec<Letter>> {
    let lens = |empty: bool, max: usize| -> Vec<usize> {
        if empty {
            vec![0]
        } else {
            (1..=max).collect()
        }
    };
    let mut out = Vec::new();
    for ylen in 1..=max_total / 2 {
        for xlen in lens(x_empty, max_total - 2 * ylen) {
            if xlen + 2 * ylen > max_total {
                continue;
            }
            for zlen in lens(z_empty, max_total - 2 * ylen - xlen) {
                if xlen + 2 * ylen + zlen > max_total {
                    continue;
                }
                for x in all_ternary(xlen) {
                    for y in all_ternary(ylen) {
                        for z in all_ternary(zlen) {
                            let (x, y, z) = (x.letters(), y.letters(), z.letters());
                            out.push(ternary_concat(&[&[Letter::L], x, y, y, z]));
                        }
                    }
                }
            }
        }
    }
    out
}

/// `L X Y Y Z` is zero for nonempty ternary `X`, `Y`, `Z` with
/// `|X| + 2|Y| + |Z| <= max_total`, each with a replayed zero trace. Empty
/// `X` and/or `Z` are probed and reported without being asserted.
pub fn verify_prop7(engine: &Engine, max_total: usize) -> Result<SuiteResult, VerifyError> {
    require(max_total >= 4, || "prop7 max_total must be at least 4".into())?;
    let started = Instant::now();
    let cases = yy_words(max_total, false, false);
    let failures: Vec<CaseFailure> = cases
        .par_iter()
        .filter_map(|v| expect_zero(engine, &Word::Letters(v.clone())))
        .collect();

    let mut notes = Vec::new();
    for (label, x_empty, z_empty) in [("X empty", true, false), ("Z empty", false, true), ("X and Z empty", true, true)] {
        let probes: Vec<Vec<Letter>> = yy_words(max_total, x_empty, z_empty)
            .into_iter()
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let verdicts: Vec<bool> = probes
            .par_iter()
            .map(|v| engine.is_zero(&Word::Letters(v.clone())).unwrap_or(false))
            .collect();
        let zero = verdicts.iter().filter(|z| **z).count();
        let mut line = format!("L X Y Y Z with {label}: {zero} of {} zero (not asserted)", probes.len());
        if let Some(i) = verdicts.iter().position(|z| !*z) {
            line.push_str(&format!("; nonzero example: {}", Word::Letters(probes[i].clone())));
        }
        notes.push(line);
    }
    Ok(collect("prop7", started, cases.len(), failures, notes))
}

/// `L U` is nonzero for every square-free ternary `U` with `|U| <= max_len`.
/// Each class must be exhausted, free of annihilation factors, contain `L U`
/// as its only `L`-initial member, and every member must have one of the
/// three shapes.
pub fn verify_prop9(engine: &Engine, max_len: usize) -> Result<SuiteResult, VerifyError> {
    require(max_len >= 1, || "prop9 max_len must be at least 1".into())?;
    let started = Instant::now();
    let words = squarefree_up_to(max_len)?;
    let p = engine.presentation();
    let failures: Vec<CaseFailure> = words
        .par_iter()
        .filter_map(|u| {
            let lu = u.prefixed_by_l();
            let report = match engine.class_enumerate(&lu) {
                Ok(r) => r,
                Err(e) => return Some(engine_failure(vec![lu], "nonzero", e)),
            };
            if let Some(t) = report.zero_witness.clone() {
                let got = match replay(p, &t) {
                    Ok(()) => "zero".to_string(),
                    Err(e) => format!("zero (trace rejected: {e})"),
                };
                return Some(failure(vec![lu], "nonzero", got, Some(t)));
            }
            if let Some(problem) = nonzero_certificate_problem(p, &report) {
                return Some(failure(vec![lu], "nonzero certificate", problem, None));
            }
            let heads = report.l_initial_members();
            if heads.len() != 1 || *heads[0] != lu {
                let got: Vec<String> = heads.iter().map(|h| h.to_string()).collect();
                return Some(failure(vec![lu], "unique L-initial member", got.join(", "), None));
            }
            for m in &report.members {
                match classify_shape(m) {
                    Ok(s) if s.is_classified() => {}
                    Ok(_) => return Some(failure(vec![lu, m.clone()], "shape i, ii or iii", "unclassified", None)),
                    Err(e) => return Some(failure(vec![lu, m.clone()], "shape i, ii or iii", e.to_string(), None)),
                }
            }
            None
        })
        .collect();
    Ok(collect("prop9", started, words.len(), failures, vec![]))
}

/// Distinct square-free `A`, `B` with lengths `<= max_len` give inequivalent
/// `L A`, `L B`.
pub fn verify_injectivity(engine: &Engine, max_len: usize) -> Result<SuiteResult, VerifyError> {
    require(max_len >= 2, || "injectivity max_len must be at least 2".into())?;
    let started = Instant::now();
    let words = squarefree_up_to(max_len)?;
    let reports: Vec<Result<ClassReport, EngineError>> =
        words.par_iter().map(|w| engine.class_enumerate(&w.prefixed_by_l())).collect();
    let mut failures = Vec::new();
    let mut nonzero = vec![false; words.len()];
    for (i, r) in reports.iter().enumerate() {
        let lw = words[i].prefixed_by_l();
        match r {
            Err(e) => failures.push(engine_failure(vec![lw], "nonzero class", e.clone())),
            Ok(r) if r.is_zero() => failures.push(failure(vec![lw], "nonzero class", "zero", r.zero_witness.clone())),
            Ok(r) => {
                nonzero[i] = true;
                if !r.contains(&lw) {
                    failures.push(failure(vec![lw], "reflexive", "seed missing from class", None));
                }
            }
        }
    }
    // a-subsequences are conserved only if every equality rule conserves them
    let fast_path = check_a_subsequence(engine.presentation()).is_empty();
    let mut cases = words.len();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            cases += 1;
            if !(nonzero[i] && nonzero[j]) {
                continue;
            }
            let (a, b) = (words[i].letters(), words[j].letters());
            if fast_path && a_subsequence(a) != a_subsequence(b) {
                continue;
            }
            let lb = words[j].prefixed_by_l();
            if reports[i].as_ref().map(|r| r.contains(&lb)).unwrap_or(false) {
                failures.push(failure(vec![words[i].prefixed_by_l(), lb], "not equivalent", "equivalent", None));
            }
        }
    }
    Ok(collect("injectivity", started, cases, failures, vec![]))
}

/// For each `n <= max_len`, the number of distinct nonzero classes among
/// `L·A` with `A` ternary of length `n`, against the number of square-free
/// words of length `n`.
pub fn growth(engine: &Engine, max_len: usize) -> Result<(SuiteResult, Vec<GrowthRow>), VerifyError> {
    require(max_len >= 1, || "growth max_len must be at least 1".into())?;
    let started = Instant::now();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut cases = 0;
    for n in 1..=max_len {
        let words = all_ternary(n);
        cases += words.len();
        let forms: Vec<(Word, Result<Word, EngineError>)> = words
            .par_iter()
            .map(|a| {
                let la = a.prefixed_by_l();
                let c = engine.canonical_form(&la);
                (la, c)
            })
            .collect();
        let mut classes: HashSet<Word> = HashSet::new();
        for (la, c) in forms {
            match c {
                Ok(Word::Zero) => {}
                Ok(w) => {
                    classes.insert(w);
                }
                Err(e) => failures.push(engine_failure(vec![la], "canonical form", e)),
            }
        }
        let squarefree = count_squarefree(n)?;
        if classes.len() != squarefree {
            failures.push(failure(
                vec![],
                &format!("{squarefree} nonzero classes at length {n}"),
                classes.len().to_string(),
                None,
            ));
        }
        rows.push(GrowthRow { n, nonzero_classes: classes.len(), squarefree });
    }
    let notes = rows
        .iter()
        .map(|r| format!("n={} nonzero_classes={} squarefree={}", r.n, r.nonzero_classes, r.squarefree))
        .collect();
    Ok((collect("growth", started, cases, failures, notes), rows))
}
