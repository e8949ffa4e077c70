//! Points of the Johnson graph as words over `{1, 2}`.
//!
//! Position `i` of a word carries the letter `1` exactly when element `i`
//! belongs to the subset. All orderings compare letters with `1 < 2`.

use std::fmt;
use std::str::FromStr;

use crate::dims::{binomial, ProblemDims};
use crate::error::{input, Error, Result};

/// A letter of the alphabet `{1, 2}`. Tableaux reuse it as a row index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    One = 1,
    Two = 2,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '1' => Some(Letter::One),
            '2' => Some(Letter::Two),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::One => '1',
            Letter::Two => '2',
        }
    }
}

pub(crate) fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    s.chars()
        .map(|c| Letter::from_char(c).ok_or_else(|| Error::Input(format!("invalid letter {c:?} in {s:?}"))))
        .collect()
}

pub(crate) fn write_letters(letters: &[Letter], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for l in letters {
        write!(f, "{}", l.as_char())?;
    }
    Ok(())
}

/// A word over `{1, 2}`. Full-length words are points; shorter ones are tails.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
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

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::One).count()
    }

    /// Word with `c` prepended.
    pub fn prepend(&self, c: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(c);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    /// Word without its first letter.
    pub fn drop_first(&self) -> Option<Word> {
        self.0.split_first().map(|(_, rest)| Word(rest.to_vec()))
    }

    /// The last `len` letters.
    pub fn suffix(&self, len: usize) -> Word {
        Word(self.0[self.0.len() - len..].to_vec())
    }

    /// Word with letters at 0-based positions `a` and `b` exchanged.
    pub fn swapped(&self, a: usize, b: usize) -> Word {
        let mut v = self.0.clone();
        v.swap(a, b);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(&self.0, f)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_letters(s).map(Word)
    }
}

/// Encodes a strictly increasing set of 1-based elements as a point of `J(n, k)`.
pub fn word_of_subset(subset: &[usize], dims: ProblemDims) -> Result<Word> {
    if subset.len() != dims.k() {
        return input(format!("subset has {} elements, expected k = {}", subset.len(), dims.k()));
    }
    let mut letters = vec![Letter::Two; dims.n()];
    let mut prev = 0;
    for &e in subset {
        if e == 0 || e > dims.n() {
            return input(format!("element {e} outside 1..={}", dims.n()));
        }
        if e == prev {
            return input(format!("duplicate element {e}"));
        }
        if e < prev {
            return input(format!("elements must be strictly increasing, {e} follows {prev}"));
        }
        letters[e - 1] = Letter::One;
        prev = e;
    }
    Ok(Word(letters))
}

/// Inverse of [`word_of_subset`].
pub fn subset_of_word(word: &Word) -> Vec<usize> {
    word.0
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == Letter::One)
        .map(|(i, _)| i + 1)
        .collect()
}

/// Parses the dash-joined subset encoding (`"2-3-6-8"`; empty string for the empty set).
pub fn parse_subset(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split('-')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::Input(format!("invalid subset element {part:?} in {s:?}")))
        })
        .collect()
}

pub fn format_subset(subset: &[usize]) -> String {
    subset.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("-")
}

/// Graph distance in `J(n, k)`: `k - |x ∩ y|`.
pub fn johnson_distance(x: &Word, y: &Word) -> Result<usize> {
    if x.len() != y.len() {
        return input(format!("words of different lengths {} and {}", x.len(), y.len()));
    }
    let k = x.ones();
    if y.ones() != k {
        return input(format!("words carry {} and {} ones", k, y.ones()));
    }
    let common = x.0.iter().zip(&y.0).filter(|(&a, &b)| a == Letter::One && b == Letter::One).count();
    Ok(k - common)
}

/// Lexicographic rank of `word` among all words of its length with the same number of ones.
pub fn word_rank(word: &Word) -> usize {
    let mut remaining_ones = word.ones();
    let len = word.len();
    let mut rank = 0u64;
    for (pos, &l) in word.0.iter().enumerate() {
        if remaining_ones == 0 {
            break;
        }
        match l {
            Letter::One => remaining_ones -= 1,
            // every word with a 1 here precedes this one
            Letter::Two => rank += binomial(len - pos - 1, remaining_ones - 1),
        }
    }
    rank as usize
}

/// Inverse of [`word_rank`].
pub fn word_unrank(len: usize, ones: usize, mut rank: usize) -> Result<Word> {
    let total = binomial(len, ones) as usize;
    if rank >= total {
        return input(format!("rank {rank} out of range for {total} words"));
    }
    let mut remaining = ones;
    let mut letters = Vec::with_capacity(len);
    for pos in 0..len {
        if remaining == 0 {
            letters.push(Letter::Two);
            continue;
        }
        let with_one = binomial(len - pos - 1, remaining - 1) as usize;
        if rank < with_one {
            letters.push(Letter::One);
            remaining -= 1;
        } else {
            rank -= with_one;
            letters.push(Letter::Two);
        }
    }
    Ok(Word(letters))
}

/// All words of length `len` with exactly `ones` ones, in lexicographic order.
pub fn words_with_ones(len: usize, ones: usize) -> Vec<Word> {
    fn rec(len: usize, ones: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        let left = len - cur.len();
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        let placed = cur.iter().filter(|&&l| l == Letter::One).count();
        let need = ones - placed;
        if need > 0 {
            cur.push(Letter::One);
            rec(len, ones, cur, out);
            cur.pop();
        }
        if left > need {
            cur.push(Letter::Two);
            rec(len, ones, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(len, ones) as usize);
    if ones <= len {
        rec(len, ones, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// The canonical coordinate order of every function vector.
pub fn enumerate_points(dims: ProblemDims) -> Vec<Word> {
    words_with_ones(dims.n(), dims.k())
}

/// The tail set `X_i`: words of length `n - i` with at most `k` ones whose
/// remaining `k - ones` fits in the first `i` positions, in lexicographic order.
pub fn enumerate_tails(dims: ProblemDims, i: usize) -> Result<Vec<Word>> {
    if i > dims.n() {
        return input(format!("level {i} exceeds n = {}", dims.n()));
    }
    let len = dims.n() - i;
    let min_ones = dims.k().saturating_sub(i);
    let max_ones = dims.k().min(len);
    fn rec(len: usize, min_ones: usize, max_ones: usize, ones: usize, cur: &mut Vec<Letter>, out: &mut Vec<Word>) {
        let left = len - cur.len();
        if left == 0 {
            out.push(Word(cur.clone()));
            return;
        }
        if ones < max_ones {
            cur.push(Letter::One);
            rec(len, min_ones, max_ones, ones + 1, cur, out);
            cur.pop();
        }
        if ones + left > min_ones {
            cur.push(Letter::Two);
            rec(len, min_ones, max_ones, ones, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if min_ones <= max_ones {
        rec(len, min_ones, max_ones, 0, &mut Vec::with_capacity(len), &mut out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn dims(n: usize, k: usize) -> ProblemDims {
        ProblemDims::new(n, k).unwrap()
    }

    #[test]
    fn subset_encoding() {
        assert_eq!(word_of_subset(&[2, 3, 6, 8], dims(9, 4)).unwrap().to_string(), "211221212");
        assert_eq!(word_of_subset(&[1, 2, 3], dims(7, 3)).unwrap().to_string(), "1112222");
        let x = word_of_subset(&[1, 2], dims(4, 2)).unwrap();
        assert_eq!(x.to_string(), "1122");
        assert_eq!(subset_of_word(&x), vec![1, 2]);
    }

    #[test]
    fn subset_errors() {
        assert!(word_of_subset(&[0, 2], dims(4, 2)).is_err());
        assert!(word_of_subset(&[1, 5], dims(4, 2)).is_err());
        assert!(word_of_subset(&[2, 2], dims(4, 2)).is_err());
        assert!(word_of_subset(&[3, 2], dims(4, 2)).is_err());
        assert!(word_of_subset(&[1], dims(4, 2)).is_err());
    }

    #[test]
    fn subset_round_trip_exhaustive() {
        for n in 1..=10 {
            for k in 0..=n {
                let d = dims(n, k);
                for x in enumerate_points(d) {
                    assert_eq!(word_of_subset(&subset_of_word(&x), d).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn subset_text() {
        assert_eq!(parse_subset("2-3-6-8").unwrap(), vec![2, 3, 6, 8]);
        assert_eq!(parse_subset("").unwrap(), Vec::<usize>::new());
        assert!(parse_subset("2-x").is_err());
        assert_eq!(format_subset(&[2, 3]), "2-3");
    }

    #[test]
    fn distance_examples() {
        assert_eq!(johnson_distance(&w("1212"), &w("1212")).unwrap(), 0);
        assert_eq!(johnson_distance(&w("1122"), &w("1212")).unwrap(), 1);
        assert_eq!(johnson_distance(&w("1122"), &w("2211")).unwrap(), 2);
        assert!(johnson_distance(&w("1122"), &w("1112")).is_err());
    }

    #[test]
    fn distance_is_a_metric() {
        for n in 1..=8 {
            for k in 0..=n {
                let pts = enumerate_points(dims(n, k));
                for x in &pts {
                    for y in &pts {
                        let dxy = johnson_distance(x, y).unwrap();
                        assert_eq!(dxy, johnson_distance(y, x).unwrap());
                        assert_eq!(dxy == 0, x == y);
                        for z in &pts {
                            assert!(johnson_distance(x, z).unwrap() <= dxy + johnson_distance(y, z).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn point_enumeration() {
        let names = |d| enumerate_points(d).iter().map(|x| x.to_string()).collect::<Vec<_>>();
        assert_eq!(names(dims(2, 1)), ["12", "21"]);
        assert_eq!(names(dims(4, 2)), ["1122", "1212", "1221", "2112", "2121", "2211"]);
        assert_eq!(names(dims(5, 5)), ["11111"]);
        assert_eq!(names(dims(3, 0)), ["222"]);
    }

    #[test]
    fn tail_enumeration() {
        let names = |i| {
            enumerate_tails(dims(4, 2), i).unwrap().iter().map(|x| x.to_string()).collect::<Vec<_>>()
        };
        assert_eq!(names(4), [""]);
        assert_eq!(names(2), ["11", "12", "21", "22"]);
        assert_eq!(names(1), ["112", "121", "122", "211", "212", "221"]);
        assert_eq!(names(0), ["1122", "1212", "1221", "2112", "2121", "2211"]);
        assert!(enumerate_tails(dims(4, 2), 5).is_err());
    }

    #[test]
    fn tails_match_brute_force() {
        for n in 1..=9 {
            for k in 0..=n {
                let d = dims(n, k);
                for i in 0..=n {
                    let len = n - i;
                    let brute: Vec<Word> = (0..1u32 << len)
                        .map(|bits| {
                            Word((0..len)
                                .map(|p| if bits >> (len - 1 - p) & 1 == 0 { Letter::One } else { Letter::Two })
                                .collect())
                        })
                        .filter(|t| t.ones() <= k && k - t.ones() <= i)
                        .collect();
                    assert_eq!(enumerate_tails(d, i).unwrap(), brute, "n={n} k={k} i={i}");
                }
            }
        }
    }

    #[test]
    fn rank_matches_enumeration() {
        for len in 0..=10 {
            for ones in 0..=len {
                for (idx, x) in words_with_ones(len, ones).iter().enumerate() {
                    assert_eq!(word_rank(x), idx);
                    assert_eq!(&word_unrank(len, ones, idx).unwrap(), x);
                }
                assert!(word_unrank(len, ones, binomial(len, ones) as usize).is_err());
            }
        }
    }
}
