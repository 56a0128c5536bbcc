//! The defining relations, expanded into a flat rule list, plus the rule
//! file format.
//!
//! Rule file syntax, one rule per line:
//!
//! ```text
//! L -> M P g        # rel 2
//! P R s1 -> 0       # rel 12
//! t1 a2 Q -> 0      # aux
//! ```
//!
//! `#` starts a comment; a trailing `rel N` or `aux` comment tags the rule.
//! Blank lines are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use thiserror::Error;

use crate::invariants::potential_of;
use crate::word::{format_letters, parse_word, Letter, Word, WordError};

/// Which defining relation a rule was expanded from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleTag {
    Rel(u8),
    Aux,
    Untagged,
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleTag::Rel(n) => write!(f, "{n}"),
            RuleTag::Aux => f.write_str("aux"),
            RuleTag::Untagged => f.write_str("none"),
        }
    }
}

impl FromStr for RuleTag {
    type Err = ();

    fn from_str(s: &str) -> Result<RuleTag, ()> {
        match s {
            "aux" | "AUX" => Ok(RuleTag::Aux),
            "none" => Ok(RuleTag::Untagged),
            _ => s.parse::<u8>().map(RuleTag::Rel).map_err(|_| ()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Equality,
    Annihilation,
}

/// An oriented relation `lhs = rhs`. An annihilation rule has `rhs` zero,
/// which is stored as `None`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    lhs: Vec<Letter>,
    rhs: Option<Vec<Letter>>,
    tag: RuleTag,
}

impl Rule {
    pub fn equality(lhs: &[Letter], rhs: &[Letter], tag: RuleTag) -> Rule {
        assert!(!lhs.is_empty() && !rhs.is_empty(), "rule sides must be nonempty");
        Rule {
            lhs: lhs.to_vec(),
            rhs: Some(rhs.to_vec()),
            tag,
        }
    }

    pub fn annihilation(lhs: &[Letter], tag: RuleTag) -> Rule {
        assert!(!lhs.is_empty(), "rule lhs must be nonempty");
        Rule {
            lhs: lhs.to_vec(),
            rhs: None,
            tag,
        }
    }

    pub fn lhs(&self) -> &[Letter] {
        &self.lhs
    }

    /// `None` for annihilation rules.
    pub fn rhs(&self) -> Option<&[Letter]> {
        self.rhs.as_deref()
    }

    pub fn rhs_word(&self) -> Word {
        match &self.rhs {
            Some(v) => Word::Letters(v.clone()),
            None => Word::Zero,
        }
    }

    pub fn tag(&self) -> RuleTag {
        self.tag
    }

    pub fn kind(&self) -> RuleKind {
        if self.rhs.is_some() {
            RuleKind::Equality
        } else {
            RuleKind::Annihilation
        }
    }

    pub fn is_annihilation(&self) -> bool {
        self.rhs.is_none()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rhs = match &self.rhs {
            Some(v) => format_letters(v),
            None => "0".to_string(),
        };
        write!(f, "{} -> {}", format_letters(&self.lhs), rhs)?;
        match self.tag {
            RuleTag::Rel(n) => write!(f, " # rel {n}"),
            RuleTag::Aux => write!(f, " # aux"),
            RuleTag::Untagged => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PresentationOptions {
    pub include_taq_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    rules: Vec<Rule>,
    options: PresentationOptions,
}

/// Expected number of rules per relation family in the standard presentation.
pub const FAMILY_COUNTS: [(RuleTag, usize); 15] = [
    (RuleTag::Rel(1), 28),
    (RuleTag::Rel(2), 1),
    (RuleTag::Rel(3), 3),
    (RuleTag::Rel(4), 11),
    (RuleTag::Rel(5), 9),
    (RuleTag::Rel(6), 12),
    (RuleTag::Rel(7), 3),
    (RuleTag::Rel(8), 6),
    (RuleTag::Rel(9), 6),
    (RuleTag::Rel(10), 1),
    (RuleTag::Rel(11), 3),
    (RuleTag::Rel(12), 1),
    (RuleTag::Rel(13), 3),
    (RuleTag::Rel(14), 3),
    (RuleTag::Aux, 6),
];

/// The fully expanded defining relations. With `include_taq_zero`, the six
/// rules `t_i a_j Q = 0` (i != j) are appended after relation 14, so rule
/// indices 0..90 coincide in both configurations.
pub fn standard_presentation(include_taq_zero: bool) -> Presentation {
    use Letter::*;
    let mut rules = Vec::with_capacity(96);
    let rel = RuleTag::Rel;

    // (1) xL = xM = 0
    for &x in &Letter::ALL {
        rules.push(Rule::annihilation(&[x, L], rel(1)));
        rules.push(Rule::annihilation(&[x, M], rel(1)));
    }
    // (2) L = MPg
    rules.push(Rule::equality(&[L], &[M, P, G], rel(2)));
    // (3) g a_i = a_i g
    for &a in &Letter::A {
        rules.push(Rule::equality(&[G, a], &[a, G], rel(3)));
    }
    // (4) gx = 0 for x not an a-letter
    for &x in Letter::ALL.iter().filter(|l| !l.is_a()) {
        rules.push(Rule::annihilation(&[G, x], rel(4)));
    }
    // (5) a_i g a_j = a_i R s1 Q a_j
    for &ai in &Letter::A {
        for &aj in &Letter::A {
            rules.push(Rule::equality(&[ai, G, aj], &[ai, R, S1, Q, aj], rel(5)));
        }
    }
    // (6) t_i x = x t_i, x in {R, a1, a2, a3}
    for &t in &Letter::T {
        for &x in &[R, A1, A2, A3] {
            rules.push(Rule::equality(&[t, x], &[x, t], rel(6)));
        }
    }
    // (7) P a_i t_i = a_i P s1
    for i in 0..3 {
        let (a, t) = (Letter::A[i], Letter::T[i]);
        rules.push(Rule::equality(&[P, a, t], &[a, P, S1], rel(7)));
    }
    // (8) P a_j t_i = a_j P s2, i != j
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let (a, t) = (Letter::A[j], Letter::T[i]);
                rules.push(Rule::equality(&[P, a, t], &[a, P, S2], rel(8)));
            }
        }
    }
    // (9) s_j a_i = a_i s_j
    for &s in &Letter::S {
        for &a in &Letter::A {
            rules.push(Rule::equality(&[s, a], &[a, s], rel(9)));
        }
    }
    // (10) s1 R = R s1
    rules.push(Rule::equality(&[S1, R], &[R, S1], rel(10)));
    // (11) s1 Q a_i = t_i a_i Q
    for i in 0..3 {
        let (a, t) = (Letter::A[i], Letter::T[i]);
        rules.push(Rule::equality(&[S1, Q, a], &[t, a, Q], rel(11)));
    }
    // (12) P R s1 = 0
    rules.push(Rule::annihilation(&[P, R, S1], rel(12)));
    // (13) s2 R a_i = a_i s2 R
    for &a in &Letter::A {
        rules.push(Rule::equality(&[S2, R, a], &[a, S2, R], rel(13)));
    }
    // (14) s2 R Q a_i = R t_i a_i Q
    for i in 0..3 {
        let (a, t) = (Letter::A[i], Letter::T[i]);
        rules.push(Rule::equality(&[S2, R, Q, a], &[R, t, a, Q], rel(14)));
    }
    if include_taq_zero {
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    rules.push(Rule::annihilation(
                        &[Letter::T[i], Letter::A[j], Q],
                        RuleTag::Aux,
                    ));
                }
            }
        }
    }
    Presentation {
        rules,
        options: PresentationOptions { include_taq_zero },
    }
}

#[derive(Debug, Error)]
pub enum RuleFileError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: {source}")]
    BadWord {
        line: usize,
        #[source]
        source: WordError,
    },
    #[error("line {line}: left-hand side must be a nonempty word without `0`")]
    InvalidLhs { line: usize },
    #[error("rule file contains no rules")]
    NoRules,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Presentation {
    pub fn new(rules: Vec<Rule>) -> Presentation {
        let include_taq_zero = rules.iter().any(|r| r.tag == RuleTag::Aux);
        Presentation {
            rules,
            options: PresentationOptions { include_taq_zero },
        }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> Option<&Rule> {
        self.rules.get(index)
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn options(&self) -> PresentationOptions {
        self.options
    }

    /// A copy without the rules of one family; used to build sabotaged
    /// presentations for negative tests.
    pub fn without_family(&self, tag: RuleTag) -> Presentation {
        Presentation::new(self.rules.iter().filter(|r| r.tag != tag).cloned().collect())
    }

    pub fn family_counts(&self) -> BTreeMap<RuleTag, usize> {
        let mut out = BTreeMap::new();
        for r in &self.rules {
            *out.entry(r.tag).or_insert(0) += 1;
        }
        out
    }

    pub fn equality_rules(&self) -> impl Iterator<Item = (usize, &Rule)> {
        self.rules.iter().enumerate().filter(|(_, r)| !r.is_annihilation())
    }

    pub fn to_rule_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rules {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn parse_rules(text: &str) -> Result<Presentation, RuleFileError> {
        let mut rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let (body, comment) = match raw.find('#') {
                Some(p) => (&raw[..p], Some(raw[p + 1..].trim())),
                None => (raw, None),
            };
            if body.trim().is_empty() {
                continue;
            }
            let (lhs_text, rhs_text) = body.split_once("->").ok_or_else(|| RuleFileError::Malformed {
                line,
                message: "expected `LHS -> RHS`".into(),
            })?;
            let lhs = match parse_word(lhs_text) {
                Ok(Word::Letters(v)) => v,
                Ok(Word::Zero) | Err(WordError::MisplacedZero { .. }) | Err(WordError::Empty) => {
                    return Err(RuleFileError::InvalidLhs { line })
                }
                Err(source) => return Err(RuleFileError::BadWord { line, source }),
            };
            let rhs = parse_word(rhs_text).map_err(|source| RuleFileError::BadWord { line, source })?;
            let tag = match comment {
                None => RuleTag::Untagged,
                Some(c) => parse_tag_comment(c).ok_or_else(|| RuleFileError::Malformed {
                    line,
                    message: format!("unrecognised rule tag comment `{c}`"),
                })?,
            };
            rules.push(match rhs {
                Word::Zero => Rule::annihilation(&lhs, tag),
                Word::Letters(v) => Rule::equality(&lhs, &v, tag),
            });
        }
        if rules.is_empty() {
            return Err(RuleFileError::NoRules);
        }
        Ok(Presentation::new(rules))
    }

    pub fn load_rules(path: impl AsRef<Path>) -> Result<Presentation, RuleFileError> {
        Presentation::parse_rules(&fs::read_to_string(path)?)
    }

    pub fn save_rules(&self, path: impl AsRef<Path>) -> Result<(), RuleFileError> {
        fs::write(path, self.to_rule_text())?;
        Ok(())
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }
}

/// Accepts `rel N`, `aux`, or an empty/free comment that does not start with
/// either keyword (treated as untagged).
fn parse_tag_comment(comment: &str) -> Option<RuleTag> {
    let mut parts = comment.split_whitespace();
    match parts.next() {
        None => Some(RuleTag::Untagged),
        Some("rel") => parts.next()?.parse::<u8>().ok().map(RuleTag::Rel),
        Some("aux") | Some("AUX") => Some(RuleTag::Aux),
        Some(_) => Some(RuleTag::Untagged),
    }
}

/// Direction in which an equality rule is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Invariant failures. Empty means the presentation is well formed.
    pub failures: Vec<String>,
    /// Equality rules whose two sides have different potential.
    pub non_conserving: Vec<usize>,
    /// Per letter, the (family, direction) pairs whose application increases
    /// that letter's count.
    pub creators: BTreeMap<Letter, BTreeSet<(RuleTag, Direction)>>,
    /// Per letter, the (family, direction) pairs that decrease its count.
    pub destroyers: BTreeMap<Letter, BTreeSet<(RuleTag, Direction)>>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn conserves_potential(&self) -> bool {
        self.non_conserving.is_empty()
    }

    pub fn creators_of(&self, letter: Letter) -> Vec<(RuleTag, Direction)> {
        self.creators
            .get(&letter)
            .map(|s| s.iter().copied().collect())
            .unwrap_or_default()
    }

    /// e.g. `g created by forward rel 2, backward rel 5`.
    pub fn describe_creators(&self, letter: Letter) -> String {
        let c = self.creators_of(letter);
        if c.is_empty() {
            return format!("{letter} never created");
        }
        let parts: Vec<String> = c.iter().map(|(t, d)| format!("{d} rel {t}")).collect();
        let only = if parts.len() == 1 { "only " } else { "" };
        format!("{letter} created {only}by {}", parts.join(", "))
    }

    pub fn summary(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.is_valid() {
            out.push("valid".to_string());
        } else {
            out.extend(self.failures.iter().cloned());
        }
        if !self.conserves_potential() {
            out.push(format!(
                "unbounded growth: no conserved potential (rules {:?})",
                self.non_conserving
            ));
        }
        for &l in &Letter::ALL {
            out.push(self.describe_creators(l));
        }
        out
    }
}

pub fn validate(p: &Presentation) -> ValidationReport {
    let mut failures = Vec::new();
    let mut non_conserving = Vec::new();
    let mut creators: BTreeMap<Letter, BTreeSet<(RuleTag, Direction)>> = BTreeMap::new();
    let mut destroyers: BTreeMap<Letter, BTreeSet<(RuleTag, Direction)>> = BTreeMap::new();

    if p.is_empty() {
        failures.push("no rules".to_string());
    }
    for (i, r) in p.rules().iter().enumerate() {
        if r.lhs().is_empty() {
            failures.push(format!("rule {i}: empty lhs"));
        }
        let Some(rhs) = r.rhs() else { continue };
        if rhs.is_empty() {
            failures.push(format!("rule {i}: empty rhs"));
        }
        if rhs.contains(&Letter::L) {
            failures.push(format!("rule {i} ({r}): L on the right-hand side"));
        }
        if potential_of(r.lhs()) != potential_of(rhs) {
            non_conserving.push(i);
        }
        for &l in &Letter::ALL {
            let before = r.lhs().iter().filter(|&&x| x == l).count();
            let after = rhs.iter().filter(|&&x| x == l).count();
            if after > before {
                creators.entry(l).or_default().insert((r.tag(), Direction::Forward));
                destroyers.entry(l).or_default().insert((r.tag(), Direction::Backward));
            } else if before > after {
                creators.entry(l).or_default().insert((r.tag(), Direction::Backward));
                destroyers.entry(l).or_default().insert((r.tag(), Direction::Forward));
            }
        }
    }
    ValidationReport {
        failures,
        non_conserving,
        creators,
        destroyers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    #[test]
    fn family_counts_match_table() {
        // Recount every family from its index ranges, independently of the
        // expansion code above.
        let a = 3;
        let t = 3;
        let s = 2;
        let letters = 14;
        let expected: Vec<(RuleTag, usize)> = vec![
            (RuleTag::Rel(1), letters * 2),
            (RuleTag::Rel(2), 1),
            (RuleTag::Rel(3), a),
            (RuleTag::Rel(4), letters - a),
            (RuleTag::Rel(5), a * a),
            (RuleTag::Rel(6), t * (1 + a)),
            (RuleTag::Rel(7), a),
            (RuleTag::Rel(8), a * (a - 1)),
            (RuleTag::Rel(9), s * a),
            (RuleTag::Rel(10), 1),
            (RuleTag::Rel(11), a),
            (RuleTag::Rel(12), 1),
            (RuleTag::Rel(13), a),
            (RuleTag::Rel(14), a),
            (RuleTag::Aux, t * a - a),
        ];
        assert_eq!(expected, FAMILY_COUNTS.to_vec());
        let total: usize = expected.iter().filter(|(t, _)| *t != RuleTag::Aux).map(|(_, c)| c).sum();
        assert_eq!(total, 90);

        let p = standard_presentation(true);
        let counts = p.family_counts();
        for (tag, n) in expected {
            assert_eq!(counts.get(&tag).copied().unwrap_or(0), n, "family {tag}");
        }
        assert_eq!(standard_presentation(false).len(), 90);
        assert_eq!(p.len(), 96);
    }

    #[test]
    fn specific_rules() {
        let p = standard_presentation(false);
        let rel2: Vec<_> = p.rules().iter().filter(|r| r.tag() == RuleTag::Rel(2)).collect();
        assert_eq!(rel2.len(), 1);
        assert_eq!(rel2[0].lhs(), &[L]);
        assert_eq!(rel2[0].rhs(), Some(&[M, P, G][..]));
        let rel5: Vec<_> = p.rules().iter().filter(|r| r.tag() == RuleTag::Rel(5)).collect();
        assert_eq!(rel5.len(), 9);
        for r in rel5 {
            let l = r.lhs();
            assert_eq!(r.rhs(), Some(&[l[0], R, S1, Q, l[2]][..]));
        }
    }

    #[test]
    fn annihilation_shapes() {
        let p = standard_presentation(true);
        for r in p.rules().iter().filter(|r| r.is_annihilation()) {
            let l = r.lhs();
            let ok = (l.len() == 2 && (l[1] == L || l[1] == M))
                || (l.len() == 2 && l[0] == G && !l[1].is_a())
                || l == [P, R, S1]
                || (l.len() == 3
                    && l[0].is_t()
                    && l[1].is_a()
                    && l[2] == Q
                    && Letter::T.iter().position(|&x| x == l[0])
                        != Letter::A.iter().position(|&x| x == l[1]));
            assert!(ok, "unexpected annihilation rule {r}");
        }
    }

    #[test]
    fn aux_rules_are_appended() {
        let a = standard_presentation(false);
        let b = standard_presentation(true);
        assert_eq!(&b.rules()[..90], a.rules());
        assert!(b.rules()[90..].iter().all(|r| r.tag() == RuleTag::Aux));
        assert!(b.options().include_taq_zero);
        assert!(!a.options().include_taq_zero);
    }

    #[test]
    fn rule_lines() {
        let p = Presentation::parse_rules("P R s1 -> 0 # rel 12\nL -> M P g # rel 2\n").unwrap();
        assert_eq!(p.rules()[0], Rule::annihilation(&[P, R, S1], RuleTag::Rel(12)));
        assert_eq!(p.rules()[0].kind(), RuleKind::Annihilation);
        assert_eq!(p.rules()[1], Rule::equality(&[L], &[M, P, G], RuleTag::Rel(2)));
        assert_eq!(p.rules()[1].kind(), RuleKind::Equality);

        let p = Presentation::parse_rules("# header\n\n t1 a2 Q -> 0 # aux\n a1 -> a2\n").unwrap();
        assert_eq!(p.rules()[0].tag(), RuleTag::Aux);
        assert_eq!(p.rules()[1].tag(), RuleTag::Untagged);
    }

    #[test]
    fn rule_file_errors() {
        assert!(matches!(Presentation::parse_rules(""), Err(RuleFileError::NoRules)));
        assert!(matches!(
            Presentation::parse_rules("# only a comment\n"),
            Err(RuleFileError::NoRules)
        ));
        assert!(matches!(
            Presentation::parse_rules("L -> M P g\nL M P g\n"),
            Err(RuleFileError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Presentation::parse_rules("0 -> L"),
            Err(RuleFileError::InvalidLhs { line: 1 })
        ));
        assert!(matches!(
            Presentation::parse_rules("a1 0 -> L"),
            Err(RuleFileError::InvalidLhs { line: 1 })
        ));
        assert!(matches!(
            Presentation::parse_rules(" -> L"),
            Err(RuleFileError::InvalidLhs { line: 1 })
        ));
        assert!(matches!(
            Presentation::parse_rules("L -> x y"),
            Err(RuleFileError::BadWord { line: 1, .. })
        ));
        assert!(matches!(
            Presentation::parse_rules("L -> M # rel x"),
            Err(RuleFileError::Malformed { line: 1, .. })
        ));
    }

    #[test]
    fn save_load_preserves_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rules.txt");
        for aux in [false, true] {
            let p = standard_presentation(aux);
            p.save_rules(&path).unwrap();
            let q = Presentation::load_rules(&path).unwrap();
            assert_eq!(p.rules(), q.rules());
            assert_eq!(p.options(), q.options());
        }
    }

    #[test]
    fn standard_is_valid() {
        let report = standard_presentation(true).validate();
        assert!(report.is_valid(), "{:?}", report.failures);
        assert!(report.conserves_potential());
        assert_eq!(report.creators_of(L), vec![(RuleTag::Rel(2), Direction::Backward)]);
        assert_eq!(report.describe_creators(L), "L created only by backward rel 2");
        assert_eq!(
            report.creators_of(G),
            vec![
                (RuleTag::Rel(2), Direction::Forward),
                (RuleTag::Rel(5), Direction::Backward)
            ]
        );
    }

    #[test]
    fn growth_rule_flagged() {
        let p = Presentation::parse_rules("a1 -> a1 a1").unwrap();
        let report = p.validate();
        assert!(!report.conserves_potential());
        assert!(report
            .summary()
            .iter()
            .any(|l| l.starts_with("unbounded growth: no conserved potential")));
    }

    #[test]
    fn l_on_rhs_flagged() {
        let p = Presentation::parse_rules("M P g -> L").unwrap();
        assert!(!p.validate().is_valid());
    }
}
