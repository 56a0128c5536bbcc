//! Test-only oracles, written without reference to the engine's search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nilideal::{Letter, Presentation, Word};

/// Fixed-point saturation: start from `{seed}` and keep adding every word
/// reachable in one equality step (either direction, any position, no longer
/// than `max_len`) until a pass adds nothing. Returns the set and whether any
/// member contains an annihilation left-hand side.
pub fn naive_closure(p: &Presentation, seed: &[Letter], max_len: usize) -> (BTreeSet<Vec<Letter>>, bool) {
    let mut sides: Vec<(Vec<Letter>, Vec<Letter>)> = Vec::new();
    let mut killers: Vec<Vec<Letter>> = Vec::new();
    for r in p.rules() {
        match r.rhs() {
            Some(rhs) => {
                sides.push((r.lhs().to_vec(), rhs.to_vec()));
                sides.push((rhs.to_vec(), r.lhs().to_vec()));
            }
            None => killers.push(r.lhs().to_vec()),
        }
    }
    let mut set: BTreeSet<Vec<Letter>> = BTreeSet::new();
    set.insert(seed.to_vec());
    loop {
        let mut added = Vec::new();
        for w in &set {
            for (from, to) in &sides {
                if from.len() > w.len() {
                    continue;
                }
                for pos in 0..=w.len() - from.len() {
                    if w[pos..pos + from.len()] == from[..] {
                        let mut v = w[..pos].to_vec();
                        v.extend_from_slice(to);
                        v.extend_from_slice(&w[pos + from.len()..]);
                        if v.len() <= max_len && !set.contains(&v) {
                            added.push(v);
                        }
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        set.extend(added);
    }
    let zero = set
        .iter()
        .any(|w| killers.iter().any(|k| k.len() <= w.len() && w.windows(k.len()).any(|win| win == &k[..])));
    (set, zero)
}

/// Brute-force square test: every position, every half-length.
pub fn naive_has_square(v: &[Letter]) -> bool {
    (0..v.len()).any(|p| (1..=(v.len() - p) / 2).any(|k| v[p..p + k] == v[p + k..p + 2 * k]))
}

/// All words over `{a1, a2, a3}` of length `n`.
pub fn ternary_words(n: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for w in &out {
            for a in [Letter::A1, Letter::A2, Letter::A3] {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Square-free ternary words of length `n`, by filtering all `3^n` words with
/// the brute-force test.
pub fn naive_squarefree(n: usize) -> Vec<Vec<Letter>> {
    ternary_words(n).into_iter().filter(|w| !naive_has_square(w)).collect()
}

pub fn with_l(a: &[Letter]) -> Word {
    let mut v = vec![Letter::L];
    v.extend_from_slice(a);
    Word::Letters(v)
}

/// Same weights as the engine's bound: `len + 4·#L + 2·#g`.
pub fn weight(v: &[Letter]) -> usize {
    v.len() + 4 * v.iter().filter(|&&l| l == Letter::L).count() + 2 * v.iter().filter(|&&l| l == Letter::G).count()
}
