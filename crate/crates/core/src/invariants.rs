//! Conserved letter counts, the shape classifier for words equivalent to
//! `L·A`, and the potential that bounds word length inside a class.

use std::fmt;

use thiserror::Error;

use crate::presentation::Presentation;
use crate::word::{a_subsequence, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("invariant undefined on the zero word")]
    ZeroWord,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// The five letter-count sums
///
/// * `i0 = #L + #M`
/// * `i1 = #L + #P`
/// * `i2 = #L + #g + #R`
/// * `i3 = #L + #g + #Q`
/// * `i4 = #L + #g + #t1 + #t2 + #t3 + #s1 + #s2`
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct InvariantVector {
    pub i0: usize,
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
    pub i4: usize,
}

impl InvariantVector {
    pub const UNIT: InvariantVector = InvariantVector { i0: 1, i1: 1, i2: 1, i3: 1, i4: 1 };

    pub fn of(letters: &[Letter]) -> InvariantVector {
        let mut v = InvariantVector::default();
        for &l in letters {
            match l {
                Letter::L => {
                    v.i0 += 1;
                    v.i1 += 1;
                    v.i2 += 1;
                    v.i3 += 1;
                    v.i4 += 1;
                }
                Letter::M => v.i0 += 1,
                Letter::P => v.i1 += 1,
                Letter::G => {
                    v.i2 += 1;
                    v.i3 += 1;
                    v.i4 += 1;
                }
                Letter::R => v.i2 += 1,
                Letter::Q => v.i3 += 1,
                Letter::T1 | Letter::T2 | Letter::T3 | Letter::S1 | Letter::S2 => v.i4 += 1,
                Letter::A1 | Letter::A2 | Letter::A3 => {}
            }
        }
        v
    }

    pub fn as_array(&self) -> [usize; 5] {
        [self.i0, self.i1, self.i2, self.i3, self.i4]
    }

    /// Names of the components that differ (`"i0"`..`"i4"`).
    pub fn differing(&self, other: &InvariantVector) -> Vec<&'static str> {
        const NAMES: [&str; 5] = ["i0", "i1", "i2", "i3", "i4"];
        self.as_array()
            .iter()
            .zip(other.as_array())
            .zip(NAMES)
            .filter(|((a, b), _)| **a != *b)
            .map(|(_, n)| n)
            .collect()
    }
}

impl fmt::Display for InvariantVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},{})", self.i0, self.i1, self.i2, self.i3, self.i4)
    }
}

pub fn ivector(w: &Word) -> Result<InvariantVector, InvariantError> {
    match w {
        Word::Zero => Err(InvariantError::ZeroWord),
        Word::Letters(v) => Ok(InvariantVector::of(v)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantViolation {
    pub rule_index: usize,
    pub lhs: InvariantVector,
    pub rhs: InvariantVector,
    pub components: Vec<&'static str>,
}

/// Compares the invariant vector of both sides of every equality rule.
pub fn check_rule_invariance(p: &Presentation) -> Vec<InvariantViolation> {
    p.equality_rules()
        .filter_map(|(i, r)| {
            let lhs = InvariantVector::of(r.lhs());
            let rhs = InvariantVector::of(r.rhs().expect("equality rule"));
            (lhs != rhs).then(|| InvariantViolation {
                rule_index: i,
                components: lhs.differing(&rhs),
                lhs,
                rhs,
            })
        })
        .collect()
}

/// The marker letter of a shape (iii) word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Marker {
    T1,
    T2,
    T3,
    S1,
    S2,
}

impl Marker {
    fn from_letter(l: Letter) -> Option<Marker> {
        Some(match l {
            Letter::T1 => Marker::T1,
            Letter::T2 => Marker::T2,
            Letter::T3 => Marker::T3,
            Letter::S1 => Marker::S1,
            Letter::S2 => Marker::S2,
            _ => return None,
        })
    }

    pub fn letter(self) -> Letter {
        match self {
            Marker::T1 => Letter::T1,
            Marker::T2 => Letter::T2,
            Marker::T3 => Letter::T3,
            Marker::S1 => Letter::S1,
            Marker::S2 => Letter::S2,
        }
    }
}

/// The three forms a nonzero word equivalent to `L·A` can take.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    /// `L A`, with `a_tail` over the a-letters (possibly empty).
    ShapeI { a_tail: Vec<Letter> },
    /// `M A1 P A2 g A3`.
    ShapeII {
        a1_part: Vec<Letter>,
        a2_part: Vec<Letter>,
        a3_part: Vec<Letter>,
    },
    /// Starts with `M`, no `L` or `g`, one each of `P`, `R`, `Q` in that
    /// order, one marker, everything else an a-letter.
    ShapeIII { marker: Marker },
    Unclassified,
}

impl Shape {
    pub fn is_classified(&self) -> bool {
        !matches!(self, Shape::Unclassified)
    }
}

pub fn classify_shape(w: &Word) -> Result<Shape, InvariantError> {
    let v = ivector(w)?;
    if v != InvariantVector::UNIT {
        return Err(InvariantError::Precondition(format!(
            "invariant vector {v} is not (1,1,1,1,1)"
        )));
    }
    Ok(classify_letters(w.letters()))
}

fn classify_letters(letters: &[Letter]) -> Shape {
    let Some((&first, rest)) = letters.split_first() else {
        return Shape::Unclassified;
    };
    if first == Letter::L {
        return if rest.iter().all(|l| l.is_a()) {
            Shape::ShapeI { a_tail: rest.to_vec() }
        } else {
            Shape::Unclassified
        };
    }
    if first != Letter::M {
        return Shape::Unclassified;
    }
    if rest.contains(&Letter::G) {
        // M A1 P A2 g A3
        let mut parts: [Vec<Letter>; 3] = Default::default();
        let mut stage = 0;
        for &l in rest {
            match (stage, l) {
                (_, l) if l.is_a() => parts[stage].push(l),
                (0, Letter::P) => stage = 1,
                (1, Letter::G) => stage = 2,
                _ => return Shape::Unclassified,
            }
        }
        if stage != 2 {
            return Shape::Unclassified;
        }
        let [a1_part, a2_part, a3_part] = parts;
        return Shape::ShapeII { a1_part, a2_part, a3_part };
    }
    let mut order = Vec::with_capacity(3);
    let mut marker = None;
    for &l in rest {
        match l {
            Letter::P | Letter::R | Letter::Q => order.push(l),
            l if l.is_a() => {}
            l => match Marker::from_letter(l) {
                Some(m) if marker.is_none() => marker = Some(m),
                _ => return Shape::Unclassified,
            },
        }
    }
    match (order.as_slice(), marker) {
        ([Letter::P, Letter::R, Letter::Q], Some(marker)) => Shape::ShapeIII { marker },
        _ => Shape::Unclassified,
    }
}

/// `d(P, Q) + #s1 + #s2`, where `d(P, Q)` counts the a-letters strictly
/// between `P` and `Q`.
pub fn pq_s_invariant(w: &Word) -> Result<usize, InvariantError> {
    pq_s_invariant_of(w.letters()).ok_or_else(|| {
        InvariantError::Precondition(
            "word must contain exactly one P and one Q, P before Q, and no g".into(),
        )
    })
}

pub(crate) fn pq_s_invariant_of(letters: &[Letter]) -> Option<usize> {
    if letters.is_empty() || letters.contains(&Letter::G) {
        return None;
    }
    let ps: Vec<usize> = positions(letters, Letter::P);
    let qs: Vec<usize> = positions(letters, Letter::Q);
    match (ps.as_slice(), qs.as_slice()) {
        ([p], [q]) if p < q => {
            let d = letters[p + 1..*q].iter().filter(|l| l.is_a()).count();
            let s = letters.iter().filter(|l| l.is_s()).count();
            Some(d + s)
        }
        _ => None,
    }
}

fn positions(letters: &[Letter], target: Letter) -> Vec<usize> {
    letters
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == target)
        .map(|(i, _)| i)
        .collect()
}

/// `len + 4·#L + 2·#g`: every equality rule of the standard presentation
/// preserves it, so it bounds the length of every member of a class.
pub fn potential_of(letters: &[Letter]) -> usize {
    letters
        .iter()
        .map(|&l| match l {
            Letter::L => 5,
            Letter::G => 3,
            _ => 1,
        })
        .sum()
}

pub fn potential(w: &Word) -> Result<usize, InvariantError> {
    match w {
        Word::Zero => Err(InvariantError::ZeroWord),
        Word::Letters(v) => Ok(potential_of(v)),
    }
}

/// Equality rules whose sides carry different a-subsequences.
pub fn check_a_subsequence(p: &Presentation) -> Vec<usize> {
    p.equality_rules()
        .filter(|(_, r)| a_subsequence(r.lhs()) != a_subsequence(r.rhs().expect("equality rule")))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{standard_presentation, Rule, RuleTag};
    use crate::word::parse_word;
    use Letter::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn ivector_examples() {
        assert_eq!(ivector(&w("L a1 a2")).unwrap(), InvariantVector::UNIT);
        assert_eq!(ivector(&w("M P g")).unwrap(), InvariantVector::UNIT);
        assert_eq!(ivector(&w("a1 a2")).unwrap(), InvariantVector::default());
        assert_eq!(ivector(&Word::Zero), Err(InvariantError::ZeroWord));
    }

    #[test]
    fn rule_invariance() {
        for aux in [false, true] {
            assert!(check_rule_invariance(&standard_presentation(aux)).is_empty());
            assert!(check_a_subsequence(&standard_presentation(aux)).is_empty());
        }
        let mut rules = standard_presentation(false).rules().to_vec();
        rules.push(Rule::equality(&[P], &[Q], RuleTag::Untagged));
        let bad = check_rule_invariance(&Presentation::new(rules));
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].rule_index, 90);
        assert_eq!(bad[0].components, vec!["i1", "i3"]);
    }

    #[test]
    fn shapes() {
        assert_eq!(classify_shape(&w("L a1")).unwrap(), Shape::ShapeI { a_tail: vec![A1] });
        assert_eq!(
            classify_shape(&w("M P a1 g a2")).unwrap(),
            Shape::ShapeII { a1_part: vec![], a2_part: vec![A1], a3_part: vec![A2] }
        );
        assert_eq!(
            classify_shape(&w("M P a1 R s1 Q a2")).unwrap(),
            Shape::ShapeIII { marker: Marker::S1 }
        );
        assert_eq!(
            classify_shape(&w("M a2 P a1 R a3 t2 a1 Q")).unwrap(),
            Shape::ShapeIII { marker: Marker::T2 }
        );
        // wrong order
        assert_eq!(classify_shape(&w("M P Q s1 R")).unwrap(), Shape::Unclassified);
        // M not first
        assert_eq!(classify_shape(&w("a1 M P g")).unwrap(), Shape::Unclassified);
        // g before P
        assert_eq!(classify_shape(&w("M g P")).unwrap(), Shape::Unclassified);
        assert!(matches!(classify_shape(&w("a1 a2")), Err(InvariantError::Precondition(_))));
        assert_eq!(classify_shape(&Word::Zero), Err(InvariantError::ZeroWord));
    }

    #[test]
    fn pq_s_examples() {
        assert_eq!(pq_s_invariant(&w("M P a1 R s1 Q a2")).unwrap(), 2);
        assert_eq!(pq_s_invariant(&w("M P R s1 Q")).unwrap(), 1);
        assert_eq!(pq_s_invariant(&w("M P a1 R t1 a1 Q a2")).unwrap(), 2);
        assert!(pq_s_invariant(&w("M Q P")).is_err());
        assert!(pq_s_invariant(&w("M P g Q")).is_err());
        assert!(pq_s_invariant(&w("P P Q")).is_err());
    }

    #[test]
    fn potential_examples() {
        assert_eq!(potential(&w("L")).unwrap(), 5);
        assert_eq!(potential(&w("M P g")).unwrap(), 5);
        assert_eq!(potential(&w("M P a1 R s1 Q a2")).unwrap(), 7);
        assert_eq!(potential(&w("L a1 a2")).unwrap(), 7);
        assert_eq!(potential(&Word::Zero), Err(InvariantError::ZeroWord));
    }
}
