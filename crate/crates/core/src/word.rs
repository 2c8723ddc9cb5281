//! Words over the binary alphabet `{a, b}` and the primitive relations on
//! them: factors, occurrences, borders, periods, covers and superposition.
//!
//! Positions exposed through [`PositionSet`] are 1-based. Everything in here
//! is deliberately naive; these scans are the ground truth the faster paths
//! elsewhere in the crate are checked against.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::wordset::WordSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(u8)]
pub enum Letter {
    A = b'a',
    B = b'b',
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        self as u8 as char
    }
}

/// A finite word over `{a, b}`.
///
/// Stored as ASCII bytes so that the rest of the crate can slice and compare
/// without conversions. Ordering is by length first, then lexicographic with
/// `a < b`; every set output in the crate uses this order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn parse(s: &str) -> Result<Word> {
        for (i, c) in s.chars().enumerate() {
            if Letter::from_char(c).is_none() {
                return Err(Error::InvalidLetter {
                    letter: c,
                    position: i + 1,
                });
            }
        }
        Ok(Word(s.as_bytes().to_vec()))
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        Word(letters.into_iter().map(|l| l as u8).collect())
    }

    /// Caller guarantees `bytes` only holds `b'a'` and `b'b'`.
    pub(crate) fn from_bytes_unchecked(bytes: Vec<u8>) -> Word {
        debug_assert!(bytes.iter().all(|&b| b == b'a' || b == b'b'));
        Word(bytes)
    }

    pub(crate) fn from_slice(bytes: &[u8]) -> Word {
        Word::from_bytes_unchecked(bytes.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        // only ASCII 'a'/'b' are ever stored
        std::str::from_utf8(&self.0).expect("word bytes are ASCII")
    }

    /// Letter at 1-based position `i`.
    pub fn letter(&self, i: usize) -> Option<Letter> {
        if i == 0 {
            return None;
        }
        self.0
            .get(i - 1)
            .map(|&b| if b == b'a' { Letter::A } else { Letter::B })
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.0
            .iter()
            .map(|&b| if b == b'a' { Letter::A } else { Letter::B })
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word::from_slice(&self.0[..len.min(self.len())])
    }

    pub fn suffix(&self, len: usize) -> Word {
        let len = len.min(self.len());
        Word::from_slice(&self.0[self.len() - len..])
    }

    /// The factor `y[start..start+len-1]` with a 1-based `start`.
    pub fn factor(&self, start: usize, len: usize) -> Option<Word> {
        let from = start.checked_sub(1)?;
        self.0.get(from..from + len).map(Word::from_slice)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn is_prefix_of(&self, y: &Word) -> bool {
        y.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, y: &Word) -> bool {
        y.0.ends_with(&self.0)
    }

    pub(crate) fn push_slice(&mut self, bytes: &[u8]) {
        self.0.extend_from_slice(bytes);
    }

    pub(crate) fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.as_str())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Strictly increasing 1-based start positions.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PositionSet(Vec<usize>);

impl PositionSet {
    /// Panics if `starts` is not strictly increasing or contains 0.
    pub fn from_sorted(starts: Vec<usize>) -> PositionSet {
        assert!(starts.first().is_none_or(|&p| p >= 1));
        assert!(starts.windows(2).all(|w| w[0] < w[1]));
        PositionSet(starts)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }
}

impl From<PositionSet> for Vec<usize> {
    fn from(p: PositionSet) -> Vec<usize> {
        p.0
    }
}

/// 0-based starts of `pat` in `text`, by direct comparison at every offset.
pub(crate) fn scan(pat: &[u8], text: &[u8]) -> Vec<usize> {
    if pat.is_empty() || pat.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pat.len())
        .filter(|&i| &text[i..i + pat.len()] == pat)
        .collect()
}

pub fn is_factor(u: &Word, y: &Word) -> bool {
    u.is_empty() || !scan(u.as_bytes(), y.as_bytes()).is_empty()
}

pub fn occurrences(u: &Word, y: &Word) -> Result<PositionSet> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let starts = scan(u.as_bytes(), y.as_bytes())
        .into_iter()
        .map(|p| p + 1)
        .collect();
    Ok(PositionSet(starts))
}

/// Lengths of all nonempty proper borders, ascending.
pub(crate) fn border_lengths(y: &[u8]) -> Vec<usize> {
    (1..y.len())
        .filter(|&k| y[..k] == y[y.len() - k..])
        .collect()
}

/// All nonempty proper borders of `y`.
pub fn borders(y: &Word) -> Result<WordSet> {
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(border_lengths(y.as_bytes())
        .into_iter()
        .map(|k| y.prefix(k))
        .collect())
}

pub fn longest_border_len(y: &Word) -> Result<usize> {
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(border_lengths(y.as_bytes()).last().copied().unwrap_or(0))
}

/// Length of the shortest period, as `|y|` minus the longest border.
pub fn period_of(y: &Word) -> Result<usize> {
    Ok(y.len() - longest_border_len(y)?)
}

/// Smallest `p` such that `y` is a prefix of `(y[1..p])^k`, found by testing
/// `y[i] = y[i - p]` directly.
pub fn period_by_repetition(y: &Word) -> Result<usize> {
    if y.is_empty() {
        return Err(Error::EmptyInput);
    }
    let b = y.as_bytes();
    Ok((1..=b.len())
        .find(|&p| (p..b.len()).all(|i| b[i] == b[i - p]))
        .expect("p = |y| always qualifies"))
}

/// Occurrence set of `u` when it covers every position of `y`, else `None`.
///
/// A word covers itself.
pub fn cover_witness(u: &Word, y: &Word) -> Result<Option<PositionSet>> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(cover_witness_raw(u.as_bytes(), y.as_bytes())
        .map(|starts| PositionSet(starts.into_iter().map(|p| p + 1).collect())))
}

pub fn is_cover(u: &Word, y: &Word) -> Result<bool> {
    Ok(cover_witness(u, y)?.is_some())
}

pub(crate) fn cover_witness_raw(u: &[u8], y: &[u8]) -> Option<Vec<usize>> {
    let starts = scan(u, y);
    if starts.is_empty() {
        return None;
    }
    let mut covered = vec![false; y.len()];
    for &p in &starts {
        covered[p..p + u.len()].iter_mut().for_each(|c| *c = true);
    }
    covered.iter().all(|&c| c).then_some(starts)
}

/// Largest `L` such that `u` covers `y[1..L]`; 0 when `u` is not a prefix.
pub fn covered_prefix_extent(u: &Word, y: &Word) -> Result<usize> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(prefix_extent_raw(u.as_bytes(), y.as_bytes()))
}

pub(crate) fn prefix_extent_raw(u: &[u8], y: &[u8]) -> usize {
    if !y.starts_with(u) {
        return 0;
    }
    let m = u.len();
    let mut last = 0;
    for p in scan(u, y).into_iter().skip(1) {
        if p - last > m {
            break;
        }
        last = p;
    }
    last + m
}

/// Largest `L` such that `u` covers `y[n-L+1..n]`; 0 when `u` is not a suffix.
pub fn covered_suffix_extent(u: &Word, y: &Word) -> Result<usize> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(suffix_extent_raw(u.as_bytes(), y.as_bytes()))
}

pub(crate) fn suffix_extent_raw(u: &[u8], y: &[u8]) -> usize {
    if !y.ends_with(u) {
        return 0;
    }
    let m = u.len();
    let mut first = y.len() - m;
    for p in scan(u, y).into_iter().rev().skip(1) {
        if first - p > m {
            break;
        }
        first = p;
    }
    y.len() - first
}

/// `u[1..|u|-overlap] · v`, after checking the shared part agrees.
pub fn superpose(u: &Word, v: &Word, overlap: usize) -> Result<Word> {
    let max = u.len().min(v.len());
    if overlap == 0 || overlap > max {
        return Err(Error::OverlapRange { overlap, max });
    }
    if u.as_bytes()[u.len() - overlap..] != v.as_bytes()[..overlap] {
        return Err(Error::OverlapMismatch { overlap });
    }
    let mut out = Word::from_slice(&u.as_bytes()[..u.len() - overlap]);
    out.push_slice(v.as_bytes());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn set(words: &[&str]) -> WordSet {
        words.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn parse_rejects_other_letters() {
        assert_eq!(
            Word::parse("abcab"),
            Err(Error::InvalidLetter {
                letter: 'c',
                position: 3
            })
        );
        assert!(Word::parse("").unwrap().is_empty());
    }

    #[test]
    fn canonical_order_is_length_then_lex() {
        let mut v = [w("b"), w("aa"), w("a"), w("ab"), w("")];
        v.sort();
        let got: Vec<_> = v.iter().map(Word::as_str).collect();
        assert_eq!(got, ["", "a", "b", "aa", "ab"]);
    }

    #[test]
    fn factor_examples() {
        assert!(is_factor(&w("aba"), &w("abaab")));
        assert!(!is_factor(&w("bb"), &w("abaab")));
        assert!(is_factor(&w(""), &w("ab")));
    }

    #[test]
    fn occurrence_examples() {
        assert_eq!(
            occurrences(&w("ab"), &w("abaababa")).unwrap().as_slice(),
            &[1, 4, 6]
        );
        assert_eq!(
            occurrences(&w("aba"), &w("abaababaabaab"))
                .unwrap()
                .as_slice(),
            &[1, 4, 6, 9]
        );
        assert_eq!(
            occurrences(&w("abaab"), &w("abaab")).unwrap().as_slice(),
            &[1]
        );
        assert_eq!(occurrences(&w(""), &w("ab")), Err(Error::EmptyPattern));
    }

    #[test]
    fn border_examples() {
        assert_eq!(borders(&w("abaababa")).unwrap(), set(&["a", "aba"]));
        assert!(borders(&w("a")).unwrap().is_empty());
        assert_eq!(borders(&w("aabaa")).unwrap(), set(&["a", "aa"]));
        assert_eq!(borders(&w("")), Err(Error::EmptyInput));
    }

    #[test]
    fn period_examples() {
        assert_eq!(period_of(&w("abaababa")).unwrap(), 5);
        assert_eq!(period_of(&w("aaa")).unwrap(), 1);
        assert_eq!(period_of(&w("ab")).unwrap(), 2);
        assert_eq!(period_of(&w("")), Err(Error::EmptyInput));
    }

    #[test]
    fn cover_examples() {
        let f6 = w("abaababaabaab");
        let witness = cover_witness(&w("abaab"), &f6).unwrap().unwrap();
        assert_eq!(witness.as_slice(), &[1, 6, 9]);
        assert!(!is_cover(&w("aba"), &f6).unwrap());
        assert!(is_cover(&f6, &f6).unwrap());
        assert!(!is_cover(&w("abaababaabaaba"), &f6).unwrap());
        assert_eq!(is_cover(&w(""), &f6), Err(Error::EmptyPattern));
    }

    #[test]
    fn extent_examples() {
        let f6 = w("abaababaabaab");
        assert_eq!(covered_prefix_extent(&w("aba"), &f6).unwrap(), 11);
        assert_eq!(covered_prefix_extent(&w("b"), &w("abaab")).unwrap(), 0);
        assert_eq!(covered_prefix_extent(&w("abaab"), &f6).unwrap(), 13);
        assert_eq!(covered_suffix_extent(&w("abaab"), &f6).unwrap(), 13);
        assert_eq!(covered_suffix_extent(&w("ab"), &w("aba")).unwrap(), 0);
        assert_eq!(covered_suffix_extent(&w("aab"), &w("abaab")).unwrap(), 3);
    }

    #[test]
    fn superpose_examples() {
        assert_eq!(superpose(&w("aba"), &w("aab"), 1).unwrap(), w("abaab"));
        assert_eq!(superpose(&w("ab"), &w("ba"), 1).unwrap(), w("aba"));
        assert_eq!(superpose(&w("aba"), &w("bab"), 2).unwrap(), w("abab"));
        assert_eq!(
            superpose(&w("aba"), &w("bab"), 1),
            Err(Error::OverlapMismatch { overlap: 1 })
        );
        assert_eq!(
            superpose(&w("ab"), &w("bab"), 3),
            Err(Error::OverlapRange { overlap: 3, max: 2 })
        );
        assert!(matches!(
            superpose(&w("ab"), &w("b"), 0),
            Err(Error::OverlapRange { .. })
        ));
    }

    #[test]
    fn factor_and_letter_accessors_are_one_based() {
        let y = w("abaab");
        assert_eq!(y.letter(1), Some(Letter::A));
        assert_eq!(y.letter(2), Some(Letter::B));
        assert_eq!(y.letter(0), None);
        assert_eq!(y.factor(2, 3), Some(w("baa")));
        assert_eq!(y.factor(4, 3), None);
    }

    fn binary_word() -> impl Strategy<Value = Word> {
        "[ab]{1,24}".prop_map(|s| Word::parse(&s).unwrap())
    }

    proptest! {
        #[test]
        fn borders_are_proper_prefix_suffixes(y in binary_word()) {
            for u in borders(&y).unwrap().iter() {
                prop_assert!(u.is_prefix_of(&y) && u.is_suffix_of(&y));
                prop_assert!(u.len() < y.len());
            }
        }

        #[test]
        fn period_characterizations_agree(y in binary_word()) {
            let p = period_of(&y).unwrap();
            prop_assert_eq!(p, period_by_repetition(&y).unwrap());
            prop_assert_eq!(p + longest_border_len(&y).unwrap(), y.len());
        }

        #[test]
        fn covers_are_borders_or_whole(y in binary_word(), i in 0usize..24, len in 1usize..24) {
            let i = i % y.len();
            let len = len.min(y.len() - i);
            let u = y.factor(i + 1, len).unwrap();
            let covers = is_cover(&u, &y).unwrap();
            if covers {
                prop_assert!(u == y || borders(&y).unwrap().contains(&u));
            }
            prop_assert_eq!(covered_prefix_extent(&u, &y).unwrap() == y.len(), covers);
        }

        #[test]
        fn suffix_extent_mirrors_prefix_extent(y in binary_word(), u in "[ab]{1,6}") {
            let u = Word::parse(&u).unwrap();
            prop_assert_eq!(
                covered_suffix_extent(&u, &y).unwrap(),
                covered_prefix_extent(&u.reversed(), &y.reversed()).unwrap()
            );
        }

        #[test]
        fn superposition_keeps_both_ends(u in binary_word(), cut in 1usize..24, extra in "[ab]{0,6}") {
            let overlap = cut.min(u.len());
            let v = u.suffix(overlap).concat(&Word::parse(&extra).unwrap());
            let s = superpose(&u, &v, overlap).unwrap();
            prop_assert!(u.is_prefix_of(&s));
            prop_assert!(v.is_suffix_of(&s));
            prop_assert_eq!(s.len(), u.len() + v.len() - overlap);
        }

        #[test]
        fn json_round_trip(y in binary_word()) {
            let json = serde_json::to_string(&y).unwrap();
            prop_assert_eq!(serde_json::from_str::<Word>(&json).unwrap(), y);
        }
    }
}
