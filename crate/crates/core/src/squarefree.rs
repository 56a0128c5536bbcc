//! Square-free words over `{a1, a2, a3}`.

use thiserror::Error;

use crate::word::{find_squares_in, format_letters, Letter, Word};

pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SquarefreeError {
    #[error("length must be at least 1")]
    ZeroLength,
    #[error("length {len} exceeds the enumeration cap {cap}")]
    OverCap { len: usize, cap: usize },
    #[error("generated word contains a square at position {position} (half-length {half})")]
    SquareFound { position: usize, half: usize },
}

/// A word over the three a-letters. May be empty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TernaryWord(Vec<Letter>);

impl TernaryWord {
    pub fn new(letters: Vec<Letter>) -> Option<TernaryWord> {
        letters.iter().all(|l| l.is_a()).then_some(TernaryWord(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The embedding into words; `None` for the empty ternary word.
    pub fn to_word(&self) -> Option<Word> {
        Word::from_slice(&self.0).ok()
    }

    /// `L` followed by this word.
    pub fn prefixed_by_l(&self) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(Letter::L);
        v.extend_from_slice(&self.0);
        Word::Letters(v)
    }
}

impl std::fmt::Display for TernaryWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_letters(&self.0))
    }
}

fn substitute(l: Letter) -> &'static [Letter] {
    use Letter::*;
    match l {
        A1 => &[A1, A2, A3],
        A2 => &[A1, A3],
        A3 => &[A2],
        _ => unreachable!("non-ternary letter in substitution"),
    }
}

/// Length-`n` prefix of the fixed point of `a1 -> a1 a2 a3, a2 -> a1 a3,
/// a3 -> a2`, checked for squares before it is returned.
pub fn gen_morphism(n: usize) -> Result<TernaryWord, SquarefreeError> {
    if n == 0 {
        return Err(SquarefreeError::ZeroLength);
    }
    let mut w = vec![Letter::A1];
    while w.len() < n {
        w = w.iter().flat_map(|&l| substitute(l).iter().copied()).collect();
    }
    w.truncate(n);
    if let Some(&(position, half)) = find_squares_in(&w).first() {
        return Err(SquarefreeError::SquareFound { position, half });
    }
    Ok(TernaryWord(w))
}

/// Whether appending the last letter created a square: only squares ending at
/// the final position need checking.
fn has_suffix_square(w: &[Letter]) -> bool {
    let n = w.len();
    (1..=n / 2).any(|k| w[n - k..] == w[n - 2 * k..n - k])
}

fn extend(prefix: &mut Vec<Letter>, n: usize, out: &mut Vec<TernaryWord>) {
    if prefix.len() == n {
        out.push(TernaryWord(prefix.clone()));
        return;
    }
    for &a in &Letter::A {
        prefix.push(a);
        if !has_suffix_square(prefix) {
            extend(prefix, n, out);
        }
        prefix.pop();
    }
}

/// All square-free ternary words of length exactly `n`, in lexicographic
/// order, with the default cap.
pub fn enumerate_squarefree(n: usize) -> Result<Vec<TernaryWord>, SquarefreeError> {
    enumerate_squarefree_capped(n, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_squarefree_capped(n: usize, cap: usize) -> Result<Vec<TernaryWord>, SquarefreeError> {
    if n == 0 {
        return Err(SquarefreeError::ZeroLength);
    }
    if n > cap {
        return Err(SquarefreeError::OverCap { len: n, cap });
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), n, &mut out);
    Ok(out)
}

pub fn count_squarefree(n: usize) -> Result<usize, SquarefreeError> {
    enumerate_squarefree(n).map(|v| v.len())
}

/// Square-free words of every length `1..=max_len`, shortest first.
pub fn squarefree_up_to(max_len: usize) -> Result<Vec<TernaryWord>, SquarefreeError> {
    let mut out = Vec::new();
    for n in 1..=max_len {
        out.extend(enumerate_squarefree(n)?);
    }
    Ok(out)
}

/// Every ternary word of length exactly `n` (including the empty word for
/// `n = 0`), in lexicographic order.
pub fn all_ternary(n: usize) -> Vec<TernaryWord> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                Letter::A.iter().map(move |&a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(TernaryWord).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{find_squares, parse_word, is_square_free};
    use Letter::*;

    #[test]
    fn morphism_prefixes() {
        assert_eq!(gen_morphism(1).unwrap().letters(), &[A1]);
        assert_eq!(gen_morphism(3).unwrap().letters(), &[A1, A2, A3]);
        assert_eq!(gen_morphism(6).unwrap().letters(), &[A1, A2, A3, A1, A3, A2]);
        assert_eq!(gen_morphism(0), Err(SquarefreeError::ZeroLength));
    }

    #[test]
    fn morphism_100_square_free() {
        let w = gen_morphism(100).unwrap();
        assert!(find_squares(&w.to_word().unwrap()).is_empty());
        // quadratic brute-force cross-check
        let v = w.letters();
        for p in 0..v.len() {
            for k in 1..=(v.len() - p) / 2 {
                assert_ne!(v[p..p + k], v[p + k..p + 2 * k]);
            }
        }
    }

    #[test]
    fn small_enumerations() {
        let one = enumerate_squarefree(1).unwrap();
        assert_eq!(one.iter().map(|w| w.to_string()).collect::<Vec<_>>(), ["a1", "a2", "a3"]);
        let two = enumerate_squarefree(2).unwrap();
        assert_eq!(two.len(), 6);
        assert!(two.iter().all(|w| w.letters()[0] != w.letters()[1]));
        assert_eq!(count_squarefree(3).unwrap(), 12);
        assert_eq!(count_squarefree(4).unwrap(), 18);
        assert_eq!(count_squarefree(6).unwrap(), 42);
        assert_eq!(enumerate_squarefree(13), Err(SquarefreeError::OverCap { len: 13, cap: 12 }));
        assert_eq!(enumerate_squarefree(0), Err(SquarefreeError::ZeroLength));
    }

    #[test]
    fn enumeration_properties() {
        for n in 1..=10 {
            let words = enumerate_squarefree(n).unwrap();
            assert!(words.len() >= 3);
            assert!(words.windows(2).all(|p| p[0] < p[1]), "lexicographic order");
            assert!(words.iter().all(|w| is_square_free(w.letters())));
            assert!(words.contains(&gen_morphism(n).unwrap()));
            if n > 1 {
                let shorter = enumerate_squarefree(n - 1).unwrap();
                for w in &words {
                    let prefix = TernaryWord(w.letters()[..n - 1].to_vec());
                    assert!(shorter.binary_search(&prefix).is_ok());
                }
            }
        }
    }

    #[test]
    fn embedding() {
        let t = TernaryWord::new(vec![A1, A2]).unwrap();
        assert_eq!(t.to_word().unwrap(), parse_word("a1 a2").unwrap());
        assert_eq!(t.prefixed_by_l(), parse_word("L a1 a2").unwrap());
        assert!(TernaryWord::new(vec![A1, G]).is_none());
        assert_eq!(TernaryWord::default().to_word(), None);
        assert_eq!(all_ternary(2).len(), 9);
        assert_eq!(all_ternary(0), vec![TernaryWord::default()]);
    }
}
