//! Congruence-class enumeration.
//!
//! A class is explored breadth first from a seed word, applying every
//! equality rule in both directions at every position. Words longer than the
//! seed's potential are never admitted; for potential-conserving
//! presentations that bound is never reached, so the exploration is the full
//! class. Annihilation rules are not edges: each newly admitted word is tested
//! for an annihilation factor, and the first hit (in breadth-first order, so
//! at minimal depth) becomes the zero witness.

use std::collections::HashMap;

use thiserror::Error;

use crate::invariants::potential_of;
use crate::presentation::{Direction, Presentation};
use crate::trace::{DerivationStep, DerivationTrace};
use crate::word::{format_letters, format_word, Letter, Word};

pub const DEFAULT_NODE_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("the zero word has no congruence class to enumerate")]
    ZeroInput,
    #[error("node budget of {budget} words exceeded")]
    BudgetExceeded { budget: usize },
    #[error("`{0}` has no L-initial class member and is not zero")]
    NotCanonicalizable(String),
    #[error("class has {} L-initial members: {}", .0.len(), .0.join(", "))]
    NonUniqueCanonical(Vec<String>),
    #[error("no derivation from `{from}` to `{to}`")]
    NoDerivation { from: String, to: String },
}

/// Order in which rewrite sites are scanned. The member set of a class does
/// not depend on it; only discovery order and which shortest trace is found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ScanOrder {
    #[default]
    Forward,
    Reverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineOptions {
    pub node_budget: usize,
    pub scan_order: ScanOrder,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions { node_budget: DEFAULT_NODE_BUDGET, scan_order: ScanOrder::Forward }
    }
}

#[derive(Debug, Clone)]
struct Pattern {
    rule: usize,
    direction: Direction,
    from: Box<[Letter]>,
    to: Box<[Letter]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub seed: Word,
    /// Members in discovery order; the seed is first.
    pub members: Vec<Word>,
    /// Shortest derivation from the seed to zero, if the class is zero.
    pub zero_witness: Option<DerivationTrace>,
    pub exhausted: bool,
}

impl ClassReport {
    pub fn is_zero(&self) -> bool {
        self.zero_witness.is_some()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }

    /// Members sorted by (length, lexicographic).
    pub fn sorted_members(&self) -> Vec<Word> {
        let mut out = self.members.clone();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    pub fn l_initial_members(&self) -> Vec<&Word> {
        self.members.iter().filter(|w| w.first() == Some(Letter::L)).collect()
    }
}

enum Stop<'a> {
    Never,
    FirstZero,
    Target(&'a [Letter]),
}

struct Exploration {
    words: Vec<Box<[Letter]>>,
    parent: Vec<Option<(u32, DerivationStep)>>,
    zero: Option<(u32, DerivationStep)>,
    found: Option<u32>,
    complete: bool,
}

impl Exploration {
    fn path_to(&self, mut id: u32) -> Vec<DerivationStep> {
        let mut steps = Vec::new();
        while let Some((p, step)) = self.parent[id as usize] {
            steps.push(step);
            id = p;
        }
        steps.reverse();
        steps
    }

    fn zero_trace(&self) -> Option<DerivationTrace> {
        let (id, last) = self.zero?;
        let mut steps = self.path_to(id);
        steps.push(last);
        Some(DerivationTrace { start: Word::Letters(self.words[0].to_vec()), steps, end: Word::Zero })
    }
}

/// Decision procedures over one presentation. Cheap to share between threads.
#[derive(Debug, Clone)]
pub struct Engine {
    presentation: Presentation,
    options: EngineOptions,
    patterns: Vec<Pattern>,
    rewrites: Vec<Vec<usize>>,
    annihilators: Vec<Vec<usize>>,
}

impl Engine {
    pub fn new(presentation: Presentation) -> Engine {
        Engine::with_options(presentation, EngineOptions::default())
    }

    pub fn with_options(presentation: Presentation, options: EngineOptions) -> Engine {
        let mut patterns = Vec::new();
        let mut rewrites = vec![Vec::new(); Letter::COUNT];
        let mut annihilators = vec![Vec::new(); Letter::COUNT];
        for (i, r) in presentation.rules().iter().enumerate() {
            match r.rhs() {
                None => annihilators[r.lhs()[0].index()].push(i),
                Some(rhs) => {
                    for (direction, from, to) in
                        [(Direction::Forward, r.lhs(), rhs), (Direction::Backward, rhs, r.lhs())]
                    {
                        rewrites[from[0].index()].push(patterns.len());
                        patterns.push(Pattern { rule: i, direction, from: from.into(), to: to.into() });
                    }
                }
            }
        }
        if options.scan_order == ScanOrder::Reverse {
            rewrites.iter_mut().for_each(|v| v.reverse());
        }
        Engine { presentation, options, patterns, rewrites, annihilators }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn options(&self) -> EngineOptions {
        self.options
    }

    fn annihilation_at(&self, w: &[Letter]) -> Option<DerivationStep> {
        for pos in 0..w.len() {
            for &ri in &self.annihilators[w[pos].index()] {
                let rule = &self.presentation.rules()[ri];
                if w[pos..].starts_with(rule.lhs()) {
                    return Some(DerivationStep {
                        tag: rule.tag(),
                        rule_index: Some(ri),
                        position: pos,
                        direction: Direction::Forward,
                    });
                }
            }
        }
        None
    }

    fn explore(&self, seed: &[Letter], stop: Stop<'_>) -> Result<Exploration, EngineError> {
        let bound = potential_of(seed);
        let mut index: HashMap<Box<[Letter]>, u32> = HashMap::new();
        let mut ex = Exploration {
            words: vec![seed.into()],
            parent: vec![None],
            zero: None,
            found: None,
            complete: false,
        };
        index.insert(seed.into(), 0);
        if let Some(step) = self.annihilation_at(seed) {
            ex.zero = Some((0, step));
            if matches!(stop, Stop::FirstZero) {
                return Ok(ex);
            }
        }
        if let Stop::Target(t) = stop {
            if t == seed {
                ex.found = Some(0);
                return Ok(ex);
            }
        }

        let reverse = self.options.scan_order == ScanOrder::Reverse;
        let mut head = 0usize;
        let mut buf: Vec<Letter> = Vec::with_capacity(bound);
        while head < ex.words.len() {
            let current = ex.words[head].clone();
            let n = current.len();
            for k in 0..n {
                let pos = if reverse { n - 1 - k } else { k };
                for &pi in &self.rewrites[current[pos].index()] {
                    let pat = &self.patterns[pi];
                    if !current[pos..].starts_with(&pat.from) {
                        continue;
                    }
                    let new_len = n - pat.from.len() + pat.to.len();
                    if new_len > bound {
                        continue;
                    }
                    buf.clear();
                    buf.extend_from_slice(&current[..pos]);
                    buf.extend_from_slice(&pat.to);
                    buf.extend_from_slice(&current[pos + pat.from.len()..]);
                    if index.contains_key(buf.as_slice()) {
                        continue;
                    }
                    let id = ex.words.len();
                    if id >= self.options.node_budget {
                        return Err(EngineError::BudgetExceeded { budget: self.options.node_budget });
                    }
                    let id = id as u32;
                    let word: Box<[Letter]> = buf.as_slice().into();
                    index.insert(word.clone(), id);
                    ex.parent.push(Some((
                        head as u32,
                        DerivationStep {
                            tag: self.presentation.rules()[pat.rule].tag(),
                            rule_index: Some(pat.rule),
                            position: pos,
                            direction: pat.direction,
                        },
                    )));
                    if ex.zero.is_none() {
                        if let Some(step) = self.annihilation_at(&word) {
                            ex.zero = Some((id, step));
                            if matches!(stop, Stop::FirstZero) {
                                ex.words.push(word);
                                return Ok(ex);
                            }
                        }
                    }
                    if let Stop::Target(t) = stop {
                        if *t == *word {
                            ex.found = Some(id);
                            ex.words.push(word);
                            return Ok(ex);
                        }
                    }
                    ex.words.push(word);
                }
            }
            head += 1;
        }
        ex.complete = true;
        Ok(ex)
    }

    /// Enumerates the full equality class of `w`.
    pub fn class_enumerate(&self, w: &Word) -> Result<ClassReport, EngineError> {
        let Word::Letters(seed) = w else {
            return Err(EngineError::ZeroInput);
        };
        let ex = self.explore(seed, Stop::Never)?;
        Ok(ClassReport {
            seed: w.clone(),
            zero_witness: ex.zero_trace(),
            exhausted: ex.complete,
            members: ex.words.into_iter().map(|b| Word::Letters(b.into_vec())).collect(),
        })
    }

    /// Whether `w` equals zero. Stops at the first zero witness.
    pub fn is_zero(&self, w: &Word) -> Result<bool, EngineError> {
        match w {
            Word::Zero => Ok(true),
            Word::Letters(seed) => Ok(self.explore(seed, Stop::FirstZero)?.zero.is_some()),
        }
    }

    /// Shortest derivation from `w` to zero, or `None` if `w` is nonzero.
    pub fn zero_trace(&self, w: &Word) -> Result<Option<DerivationTrace>, EngineError> {
        match w {
            Word::Zero => Ok(Some(DerivationTrace { start: Word::Zero, steps: vec![], end: Word::Zero })),
            Word::Letters(seed) => Ok(self.explore(seed, Stop::FirstZero)?.zero_trace()),
        }
    }

    /// `u ≡ v`: same equality class, or both zero.
    pub fn equivalent(&self, u: &Word, v: &Word) -> Result<bool, EngineError> {
        match (u, v) {
            (Word::Zero, Word::Zero) => Ok(true),
            (Word::Zero, other) | (other, Word::Zero) => self.is_zero(other),
            (Word::Letters(a), Word::Letters(b)) => {
                let ex = self.explore(a, Stop::Target(b))?;
                if ex.found.is_some() {
                    Ok(true)
                } else if ex.zero.is_some() {
                    self.is_zero(v)
                } else {
                    Ok(false)
                }
            }
        }
    }

    /// The unique `L`-initial member of the class, or zero.
    pub fn canonical_form(&self, w: &Word) -> Result<Word, EngineError> {
        let Word::Letters(seed) = w else {
            return Ok(Word::Zero);
        };
        let ex = self.explore(seed, Stop::FirstZero)?;
        if ex.zero.is_some() {
            return Ok(Word::Zero);
        }
        let heads: Vec<&Box<[Letter]>> = ex.words.iter().filter(|m| m.first() == Some(&Letter::L)).collect();
        match heads.as_slice() {
            [one] => Ok(Word::Letters(one.to_vec())),
            [] => Err(EngineError::NotCanonicalizable(format_word(w))),
            many => Err(EngineError::NonUniqueCanonical(many.iter().map(|m| format_letters(m)).collect())),
        }
    }

    /// A shortest derivation from `u` to `v`, where `v` may be zero.
    ///
    /// Two zero words in different equality classes are equivalent but have no
    /// derivation here, since a trace cannot leave zero.
    pub fn derive(&self, u: &Word, v: &Word) -> Result<DerivationTrace, EngineError> {
        let no = || EngineError::NoDerivation { from: format_word(u), to: format_word(v) };
        match (u, v) {
            (Word::Zero, Word::Zero) => Ok(DerivationTrace { start: Word::Zero, steps: vec![], end: Word::Zero }),
            (Word::Zero, _) => Err(no()),
            (Word::Letters(seed), Word::Zero) => self.explore(seed, Stop::FirstZero)?.zero_trace().ok_or_else(no),
            (Word::Letters(a), Word::Letters(b)) => {
                let ex = self.explore(a, Stop::Target(b))?;
                let id = ex.found.ok_or_else(no)?;
                Ok(DerivationTrace { start: u.clone(), steps: ex.path_to(id), end: v.clone() })
            }
        }
    }
}
