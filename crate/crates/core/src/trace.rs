//! Derivation traces and their independent checker.
//!
//! Text format:
//!
//! ```text
//! start: L a1 a1
//! end: 0
//! step 1: rel 2.28 forward @ 0
//! step 2: rel 3.29 forward @ 3
//! ...
//! ```
//!
//! Each step names the rule family, optionally followed by `.` and the rule
//! index in the presentation, the direction, and the position of the
//! rewritten factor in the word before the step.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::presentation::{Direction, Presentation, Rule, RuleTag};
use crate::word::{format_word, parse_word, Letter, Word, WordError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DerivationStep {
    pub tag: RuleTag,
    /// Index into the presentation's rule list. Hand-written traces may omit
    /// it, in which case the checker requires the family to match uniquely.
    pub rule_index: Option<usize>,
    pub position: usize,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub start: Word,
    pub steps: Vec<DerivationStep>,
    pub end: Word,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    BadWord {
        line: usize,
        #[source]
        source: WordError,
    },
    #[error("missing `{0}:` header")]
    MissingHeader(&'static str),
}

impl DerivationTrace {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<DerivationTrace, TraceParseError> {
        let mut start = None;
        let mut end = None;
        let mut steps = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let body = raw.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if let Some(rest) = body.strip_prefix("start:") {
                start = Some(parse_word(rest).map_err(|source| TraceParseError::BadWord { line, source })?);
            } else if let Some(rest) = body.strip_prefix("end:") {
                end = Some(parse_word(rest).map_err(|source| TraceParseError::BadWord { line, source })?);
            } else if body.starts_with("step") {
                let step = parse_step(body).map_err(|message| TraceParseError::Malformed { line, message })?;
                if step.0 != steps.len() + 1 {
                    return Err(TraceParseError::Malformed {
                        line,
                        message: format!("expected step {}, found step {}", steps.len() + 1, step.0),
                    });
                }
                steps.push(step.1);
            } else {
                return Err(TraceParseError::Malformed {
                    line,
                    message: format!("unrecognised line `{body}`"),
                });
            }
        }
        Ok(DerivationTrace {
            start: start.ok_or(TraceParseError::MissingHeader("start"))?,
            steps,
            end: end.ok_or(TraceParseError::MissingHeader("end"))?,
        })
    }
}

impl FromStr for DerivationTrace {
    type Err = TraceParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DerivationTrace::parse(s)
    }
}

impl fmt::Display for DerivationStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rel {}", self.tag)?;
        if let Some(i) = self.rule_index {
            write!(f, ".{i}")?;
        }
        write!(f, " {} @ {}", self.direction, self.position)
    }
}

impl fmt::Display for DerivationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "start: {}", format_word(&self.start))?;
        writeln!(f, "end: {}", format_word(&self.end))?;
        for (k, s) in self.steps.iter().enumerate() {
            writeln!(f, "step {}: {}", k + 1, s)?;
        }
        Ok(())
    }
}

// step <k>: rel <tag>[.<index>] <forward|backward> @ <position>
fn parse_step(line: &str) -> Result<(usize, DerivationStep), String> {
    let rest = line.strip_prefix("step").ok_or("expected `step`")?.trim_start();
    let (k, rest) = rest.split_once(':').ok_or("expected `:` after step number")?;
    let k: usize = k.trim().parse().map_err(|_| format!("bad step number `{}`", k.trim()))?;
    let toks: Vec<&str> = rest.split_whitespace().collect();
    match toks.as_slice() {
        ["rel", id, dir, "@", pos] => {
            let (tag_text, index) = match id.split_once('.') {
                Some((t, i)) => (t, Some(i.parse::<usize>().map_err(|_| format!("bad rule index `{i}`"))?)),
                None => (*id, None),
            };
            let tag = tag_text
                .parse::<RuleTag>()
                .map_err(|_| format!("bad rule tag `{tag_text}`"))?;
            let direction = match *dir {
                "forward" => Direction::Forward,
                "backward" => Direction::Backward,
                other => return Err(format!("bad direction `{other}`")),
            };
            let position = pos.parse().map_err(|_| format!("bad position `{pos}`"))?;
            Ok((k, DerivationStep { tag, rule_index: index, position, direction }))
        }
        _ => Err("expected `rel <id> <forward|backward> @ <position>`".into()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {step}: {reason}")]
    Step { step: usize, reason: String },
    #[error("replay ended at `{got}`, trace claims `{claimed}`")]
    EndMismatch { got: String, claimed: String },
}

impl ReplayError {
    /// Zero-based index of the failing step; `None` when every step applied
    /// but the final word differs.
    pub fn failure_index(&self) -> Option<usize> {
        match self {
            ReplayError::Step { step, .. } => Some(*step),
            ReplayError::EndMismatch { .. } => None,
        }
    }
}

/// Rewrites `word` at `position` with `rule` in `direction`. Annihilation
/// rules yield zero and only apply forward.
fn apply(rule: &Rule, direction: Direction, word: &[Letter], position: usize) -> Result<Word, String> {
    let (from, to): (&[Letter], Option<&[Letter]>) = match (direction, rule.rhs()) {
        (Direction::Forward, rhs) => (rule.lhs(), rhs),
        (Direction::Backward, Some(rhs)) => (rhs, Some(rule.lhs())),
        (Direction::Backward, None) => return Err("annihilation rule applied backward".into()),
    };
    let end = position + from.len();
    if end > word.len() || &word[position..end] != from {
        return Err(format!("rule `{rule}` does not match {direction} at position {position}"));
    }
    Ok(match to {
        None => Word::Zero,
        Some(to) => {
            let mut out = Vec::with_capacity(word.len() - from.len() + to.len());
            out.extend_from_slice(&word[..position]);
            out.extend_from_slice(to);
            out.extend_from_slice(&word[end..]);
            Word::Letters(out)
        }
    })
}

/// Checks a trace step by step against `p`.
pub fn replay(p: &Presentation, trace: &DerivationTrace) -> Result<(), ReplayError> {
    let mut current = trace.start.clone();
    for (k, step) in trace.steps.iter().enumerate() {
        let fail = |reason: String| ReplayError::Step { step: k, reason };
        let letters = match &current {
            Word::Zero => return Err(fail("step applied after the word became zero".into())),
            Word::Letters(v) => v.clone(),
        };
        current = match step.rule_index {
            Some(i) => {
                let rule = p.rule(i).ok_or_else(|| fail(format!("no rule with index {i}")))?;
                if rule.tag() != step.tag {
                    return Err(fail(format!("rule {i} belongs to rel {}, not rel {}", rule.tag(), step.tag)));
                }
                apply(rule, step.direction, &letters, step.position).map_err(fail)?
            }
            None => {
                let results: Vec<Word> = p
                    .rules()
                    .iter()
                    .filter(|r| r.tag() == step.tag)
                    .filter_map(|r| apply(r, step.direction, &letters, step.position).ok())
                    .collect();
                match results.as_slice() {
                    [one] => one.clone(),
                    [] => return Err(fail(format!("no rule of rel {} applies", step.tag))),
                    _ => return Err(fail(format!("rel {} is ambiguous without a rule index", step.tag))),
                }
            }
        };
    }
    if current != trace.end {
        return Err(ReplayError::EndMismatch {
            got: format_word(&current),
            claimed: format_word(&trace.end),
        });
    }
    Ok(())
}
