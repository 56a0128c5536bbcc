//! Letters, words and the whitespace-separated word text format.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the fourteen generators. The zero element is not a letter; it is
/// represented by [`Word::Zero`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    L = 0,
    M,
    P,
    Q,
    R,
    G,
    S1,
    S2,
    T1,
    T2,
    T3,
    A1,
    A2,
    A3,
}

impl Letter {
    pub const COUNT: usize = 14;

    pub const ALL: [Letter; 14] = [
        Letter::L,
        Letter::M,
        Letter::P,
        Letter::Q,
        Letter::R,
        Letter::G,
        Letter::S1,
        Letter::S2,
        Letter::T1,
        Letter::T2,
        Letter::T3,
        Letter::A1,
        Letter::A2,
        Letter::A3,
    ];

    pub const A: [Letter; 3] = [Letter::A1, Letter::A2, Letter::A3];
    pub const T: [Letter; 3] = [Letter::T1, Letter::T2, Letter::T3];
    pub const S: [Letter; 2] = [Letter::S1, Letter::S2];

    pub fn token(self) -> &'static str {
        match self {
            Letter::L => "L",
            Letter::M => "M",
            Letter::P => "P",
            Letter::Q => "Q",
            Letter::R => "R",
            Letter::G => "g",
            Letter::S1 => "s1",
            Letter::S2 => "s2",
            Letter::T1 => "t1",
            Letter::T2 => "t2",
            Letter::T3 => "t3",
            Letter::A1 => "a1",
            Letter::A2 => "a2",
            Letter::A3 => "a3",
        }
    }

    pub fn from_token(token: &str) -> Option<Letter> {
        Letter::ALL.iter().copied().find(|l| l.token() == token)
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    #[inline]
    pub fn is_a(self) -> bool {
        matches!(self, Letter::A1 | Letter::A2 | Letter::A3)
    }

    #[inline]
    pub fn is_s(self) -> bool {
        matches!(self, Letter::S1 | Letter::S2)
    }

    #[inline]
    pub fn is_t(self) -> bool {
        matches!(self, Letter::T1 | Letter::T2 | Letter::T3)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("unknown token `{token}` at position {position}")]
    UnknownToken { token: String, position: usize },
    #[error("`0` must appear alone (found at position {position})")]
    MisplacedZero { position: usize },
}

/// An element of the free semigroup with zero adjoined: either the absorbing
/// zero or a nonempty sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Word {
    Zero,
    Letters(Vec<Letter>),
}

impl Word {
    pub fn from_letters(letters: Vec<Letter>) -> Result<Word, WordError> {
        if letters.is_empty() {
            Err(WordError::Empty)
        } else {
            Ok(Word::Letters(letters))
        }
    }

    pub fn from_slice(letters: &[Letter]) -> Result<Word, WordError> {
        Word::from_letters(letters.to_vec())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Word::Zero)
    }

    /// The letter sequence; empty for zero.
    pub fn letters(&self) -> &[Letter] {
        match self {
            Word::Zero => &[],
            Word::Letters(v) => v,
        }
    }

    pub fn len(&self) -> usize {
        self.letters().len()
    }

    /// Zero has no letters but is not an empty word; this is false for every
    /// constructible value.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Semigroup product. Zero absorbs.
    pub fn concat(&self, other: &Word) -> Word {
        match (self, other) {
            (Word::Letters(a), Word::Letters(b)) => {
                let mut v = Vec::with_capacity(a.len() + b.len());
                v.extend_from_slice(a);
                v.extend_from_slice(b);
                Word::Letters(v)
            }
            _ => Word::Zero,
        }
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.letters().iter().filter(|&&l| l == letter).count()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters().first().copied()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self))
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Word, WordError> {
        parse_word(s)
    }
}

pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() {
        return Err(WordError::Empty);
    }
    if tokens.len() == 1 && tokens[0] == "0" {
        return Ok(Word::Zero);
    }
    let mut letters = Vec::with_capacity(tokens.len());
    for (position, token) in tokens.iter().enumerate() {
        if *token == "0" {
            return Err(WordError::MisplacedZero { position });
        }
        match Letter::from_token(token) {
            Some(l) => letters.push(l),
            None => {
                return Err(WordError::UnknownToken {
                    token: token.to_string(),
                    position,
                })
            }
        }
    }
    Ok(Word::Letters(letters))
}

pub fn format_letters(letters: &[Letter]) -> String {
    let mut out = String::with_capacity(letters.len() * 3);
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(l.token());
    }
    out
}

pub fn format_word(w: &Word) -> String {
    match w {
        Word::Zero => "0".to_string(),
        Word::Letters(v) => format_letters(v),
    }
}

/// All start indices where `factor` occurs contiguously in `w`, overlaps
/// included. Zero contains no factors.
pub fn find_factor(w: &Word, factor: &[Letter]) -> Vec<usize> {
    let hay = w.letters();
    if factor.is_empty() || factor.len() > hay.len() {
        return Vec::new();
    }
    hay.windows(factor.len())
        .enumerate()
        .filter(|(_, win)| *win == factor)
        .map(|(i, _)| i)
        .collect()
}

/// Every `(position, half_length)` such that `letters[p..p+k] == letters[p+k..p+2k]`.
///
/// For each half-length `k` the scan keeps the length of the current run of
/// positions with `letters[i] == letters[i + k]`; a run of length `k` ending
/// at `i` is exactly a square starting at `i + 1 - k`.
pub fn find_squares_in(letters: &[Letter]) -> Vec<(usize, usize)> {
    let n = letters.len();
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        let mut run = 0usize;
        for i in 0..n - k {
            if letters[i] == letters[i + k] {
                run += 1;
                if run >= k {
                    out.push((i + 1 - k, k));
                }
            } else {
                run = 0;
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn find_squares(w: &Word) -> Vec<(usize, usize)> {
    find_squares_in(w.letters())
}

pub fn is_square_free(letters: &[Letter]) -> bool {
    let n = letters.len();
    for k in 1..=n / 2 {
        let mut run = 0usize;
        for i in 0..n - k {
            if letters[i] == letters[i + k] {
                run += 1;
                if run >= k {
                    return false;
                }
            } else {
                run = 0;
            }
        }
    }
    true
}

/// The subsequence of `a1`/`a2`/`a3` letters.
pub fn a_subsequence(letters: &[Letter]) -> Vec<Letter> {
    letters.iter().copied().filter(|l| l.is_a()).collect()
}
