//! Covers, left/right seeds, seeds and circular covers of arbitrary words.
//!
//! Each family has a direct decision procedure and, where one exists, a
//! second independently written route that the tests hold it against:
//!
//! * covers: filter the borders, or follow the chain of longest covers;
//! * left/right seeds: covered prefix/suffix of length at least the period,
//!   or try every right/left extension of the candidate;
//! * seeds: exhaustive search over extensions (`is_seed`), or the
//!   occurrence-gap criterion (`is_seed_fast`).

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{
    border_lengths, cover_witness_raw, period_of, prefix_extent_raw, scan, suffix_extent_raw,
    PositionSet, Word,
};
use crate::wordset::WordSet;

/// Above this length the factor-enumerating routines refuse to run unless
/// forced.
pub const SIZE_LIMIT: usize = 2_000;

/// Up to this length `seeds_of` validates the fast criterion against the
/// exhaustive oracle on every candidate.
pub const SEED_CROSS_CHECK_LEN: usize = 60;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineOptions {
    /// Lift the [`SIZE_LIMIT`] refusal.
    pub force: bool,
}

impl EngineOptions {
    pub fn forced() -> EngineOptions {
        EngineOptions { force: true }
    }

    fn admit(&self, y: &Word) -> Result<()> {
        if y.is_empty() {
            return Err(Error::EmptyInput);
        }
        if !self.force && y.len() > SIZE_LIMIT {
            return Err(Error::SizeRefused {
                len: y.len(),
                limit: SIZE_LIMIT,
            });
        }
        Ok(())
    }
}

fn nonempty(y: &Word) -> Result<()> {
    if y.is_empty() {
        Err(Error::EmptyInput)
    } else {
        Ok(())
    }
}

/// All covers of `y`, including `y` itself, by testing every border.
pub fn covers_of(y: &Word) -> Result<WordSet> {
    nonempty(y)?;
    let b = y.as_bytes();
    let mut out: WordSet = border_lengths(b)
        .into_iter()
        .filter(|&k| cover_witness_raw(&b[..k], b).is_some())
        .map(|k| y.prefix(k))
        .collect();
    out.insert(y.clone());
    Ok(out)
}

/// Longest cover of `y` shorter than `y`.
pub fn longest_proper_cover(y: &Word) -> Result<Option<Word>> {
    nonempty(y)?;
    let b = y.as_bytes();
    Ok(border_lengths(b)
        .into_iter()
        .rev()
        .find(|&k| cover_witness_raw(&b[..k], b).is_some())
        .map(|k| y.prefix(k)))
}

/// All covers of `y` via the cover chain: a word no longer than the longest
/// proper cover `u` covers `y` exactly when it covers `u`, so the covers are
/// `y` followed by the covers of `u`, recursively.
pub fn covers_by_chain(y: &Word) -> Result<WordSet> {
    nonempty(y)?;
    let mut out = WordSet::new();
    let mut cur = y.clone();
    loop {
        out.insert(cur.clone());
        match longest_proper_cover(&cur)? {
            Some(next) => cur = next,
            None => return Ok(out),
        }
    }
}

/// `z` is a left seed of `y`: a prefix whose covered prefix reaches the period.
pub fn is_left_seed(z: &Word, y: &Word) -> Result<bool> {
    if z.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let p = period_of(y)?;
    Ok(z.len() <= y.len() && prefix_extent_raw(z.as_bytes(), y.as_bytes()) >= p)
}

pub fn is_right_seed(z: &Word, y: &Word) -> Result<bool> {
    if z.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let p = period_of(y)?;
    Ok(z.len() <= y.len() && suffix_extent_raw(z.as_bytes(), y.as_bytes()) >= p)
}

pub fn left_seeds_of(y: &Word) -> Result<WordSet> {
    let p = period_of(y)?;
    let b = y.as_bytes();
    Ok((1..=b.len())
        .filter(|&k| prefix_extent_raw(&b[..k], b) >= p)
        .map(|k| y.prefix(k))
        .collect())
}

pub fn right_seeds_of(y: &Word) -> Result<WordSet> {
    let p = period_of(y)?;
    let b = y.as_bytes();
    Ok((1..=b.len())
        .filter(|&k| suffix_extent_raw(&b[b.len() - k..], b) >= p)
        .map(|k| y.suffix(k))
        .collect())
}

/// Left seeds by definition: prefixes `z` covering `y·v` for some `v`
/// shorter than `z`. Since `y·v` must end with `z`, `v` is a proper suffix
/// of `z`.
pub fn left_seeds_by_extension(y: &Word) -> Result<WordSet> {
    nonempty(y)?;
    let b = y.as_bytes();
    let mut out = WordSet::new();
    for k in 1..=b.len() {
        let z = &b[..k];
        let hit = (0..k).any(|r| {
            let v = &z[k - r..];
            let mut ext = b.to_vec();
            ext.extend_from_slice(v);
            ext.ends_with(z) && cover_witness_raw(z, &ext).is_some()
        });
        if hit {
            out.insert(y.prefix(k));
        }
    }
    Ok(out)
}

/// Mirror of [`left_seeds_by_extension`]: suffixes `z` covering `v·y` with
/// `v` a proper prefix of `z`.
pub fn right_seeds_by_extension(y: &Word) -> Result<WordSet> {
    nonempty(y)?;
    let b = y.as_bytes();
    let n = b.len();
    let mut out = WordSet::new();
    for k in 1..=n {
        let z = &b[n - k..];
        let hit = (0..k).any(|l| {
            let mut ext = z[..l].to_vec();
            ext.extend_from_slice(b);
            ext.starts_with(z) && cover_witness_raw(z, &ext).is_some()
        });
        if hit {
            out.insert(y.suffix(k));
        }
    }
    Ok(out)
}

/// How a seed covers a superstring `left_ext · y · right_ext`.
///
/// `left_ext` is a proper prefix of the seed and `right_ext` a proper
/// suffix; `positions` are 1-based starts within the extended word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedWitness {
    #[serde(rename = "left")]
    pub left_ext: Word,
    #[serde(rename = "right")]
    pub right_ext: Word,
    pub positions: PositionSet,
}

impl SeedWitness {
    pub fn extended(&self, y: &Word) -> Word {
        self.left_ext.concat(y).concat(&self.right_ext)
    }
}

fn seed_preconditions(u: &Word, y: &Word) -> Result<()> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if scan(u.as_bytes(), y.as_bytes()).is_empty() {
        return Err(Error::NotAFactor(u.to_string()));
    }
    Ok(())
}

/// Exhaustive seed test: tries every proper prefix `l` and proper suffix `r`
/// of `u`, shortest `|l| + |r|` first and shorter `l` first on ties, and
/// returns the first extension `l·y·r` that `u` covers.
///
/// Extensions whose result could not start (or end) with `u` are skipped,
/// since the first (or last) letter would then be uncovered.
pub fn is_seed(u: &Word, y: &Word) -> Result<Option<SeedWitness>> {
    seed_preconditions(u, y)?;
    let (ub, yb) = (u.as_bytes(), y.as_bytes());
    let m = ub.len();

    let lefts: BTreeSet<usize> = (0..m)
        .filter(|&l| yb.starts_with(&ub[l..]) || ub[l..].starts_with(yb))
        .collect();
    let rights: BTreeSet<usize> = (0..m)
        .filter(|&r| yb.ends_with(&ub[..m - r]) || ub[..m - r].ends_with(yb))
        .collect();

    for total in 0..=2 * (m - 1) {
        for l in total.saturating_sub(m - 1)..=total.min(m - 1) {
            let r = total - l;
            if !lefts.contains(&l) || !rights.contains(&r) {
                continue;
            }
            let mut ext = Vec::with_capacity(l + yb.len() + r);
            ext.extend_from_slice(&ub[..l]);
            ext.extend_from_slice(yb);
            ext.extend_from_slice(&ub[m - r..]);
            if let Some(starts) = cover_witness_raw(ub, &ext) {
                return Ok(Some(SeedWitness {
                    left_ext: Word::from_slice(&ub[..l]),
                    right_ext: Word::from_slice(&ub[m - r..]),
                    positions: PositionSet::from_sorted(
                        starts.into_iter().map(|p| p + 1).collect(),
                    ),
                }));
            }
        }
    }
    Ok(None)
}

/// Seed test from the occurrences of `u` in `y`: consecutive starts at most
/// `|u|` apart, the head before the first occurrence reachable by an
/// occurrence hanging off the left end, and likewise for the tail.
pub fn is_seed_fast(u: &Word, y: &Word) -> Result<bool> {
    seed_preconditions(u, y)?;
    Ok(seed_fast_raw(u.as_bytes(), y.as_bytes()))
}

fn seed_fast_raw(u: &[u8], y: &[u8]) -> bool {
    let m = u.len();
    let starts = scan(u, y);
    let (Some(&first), Some(&last)) = (starts.first(), starts.last()) else {
        return false;
    };
    if starts.windows(2).any(|w| w[1] - w[0] > m) {
        return false;
    }
    // y[..e] must be a suffix of u for some first <= e < m (0-based first)
    let head = first == 0 || (first..m.min(y.len() + 1)).any(|e| u.ends_with(&y[..e]));
    // the last tail letters; mirrored condition with prefixes of u
    let tail_len = y.len() - (last + m);
    let tail =
        tail_len == 0 || (tail_len..m.min(y.len() + 1)).any(|e| u.starts_with(&y[y.len() - e..]));
    head && tail
}

/// Distinct nonempty factors of `y`.
pub fn distinct_factors(y: &Word) -> WordSet {
    let b = y.as_bytes();
    let mut out = WordSet::new();
    for len in 1..=b.len() {
        let uniq: BTreeSet<&[u8]> = b.windows(len).collect();
        out.extend(uniq.into_iter().map(Word::from_slice));
    }
    out
}

/// All seeds of `y` that are factors of `y`, decided by [`is_seed_fast`].
///
/// For `|y| <= SEED_CROSS_CHECK_LEN` every candidate is also decided by the
/// exhaustive [`is_seed`] and a disagreement is reported as an error.
pub fn seeds_of(y: &Word, opts: EngineOptions) -> Result<WordSet> {
    opts.admit(y)?;
    let candidates: Vec<Word> = distinct_factors(y).into_iter().collect();
    let check = y.len() <= SEED_CROSS_CHECK_LEN;
    let verdicts: Vec<Result<bool>> = candidates
        .par_iter()
        .map(|u| {
            let fast = seed_fast_raw(u.as_bytes(), y.as_bytes());
            if check && is_seed(u, y)?.is_some() != fast {
                return Err(Error::Internal(format!(
                    "seed criteria disagree on {u} in {y}"
                )));
            }
            Ok(fast)
        })
        .collect();
    let mut out = WordSet::new();
    for (u, v) in candidates.into_iter().zip(verdicts) {
        if v? {
            out.insert(u);
        }
    }
    Ok(out)
}

/// All seeds of `y` decided by the exhaustive [`is_seed`] alone.
pub fn seeds_by_search(y: &Word, opts: EngineOptions) -> Result<WordSet> {
    opts.admit(y)?;
    let candidates: Vec<Word> = distinct_factors(y).into_iter().collect();
    let verdicts: Vec<Result<bool>> = candidates
        .par_iter()
        .map(|u| Ok(is_seed(u, y)?.is_some()))
        .collect();
    let mut out = WordSet::new();
    for (u, v) in candidates.into_iter().zip(verdicts) {
        if v? {
            out.insert(u);
        }
    }
    Ok(out)
}

/// Which words are candidates for covers of the cyclic word.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum CircularUniverse {
    /// Factors of the linear word only.
    #[default]
    Linear,
    /// Every factor of the cyclic word: factors of `y·y` of length `<= |y|`.
    Cyclic,
}

/// `u` covers the cyclic word `y`: the occurrences of `u` in `y·y` starting
/// at positions `1..=|y|` hit every residue class modulo `|y|`.
pub fn is_circular_cover(u: &Word, y: &Word) -> Result<bool> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    nonempty(y)?;
    Ok(circular_cover_raw(
        u.as_bytes(),
        &y.concat(y).into_bytes(),
        y.len(),
    ))
}

fn circular_cover_raw(u: &[u8], yy: &[u8], n: usize) -> bool {
    if u.len() > n {
        return false;
    }
    let mut covered = vec![false; n];
    for p in 0..n {
        if &yy[p..p + u.len()] == u {
            for k in p..p + u.len() {
                covered[k % n] = true;
            }
        }
    }
    covered.into_iter().all(|c| c)
}

pub fn circular_covers_of(
    y: &Word,
    universe: CircularUniverse,
    opts: EngineOptions,
) -> Result<WordSet> {
    opts.admit(y)?;
    let n = y.len();
    let yy = y.concat(y).into_bytes();
    let candidates: Vec<Word> = match universe {
        CircularUniverse::Linear => distinct_factors(y).into_iter().collect(),
        CircularUniverse::Cyclic => {
            let mut set = WordSet::new();
            for len in 1..=n {
                let uniq: BTreeSet<&[u8]> = (0..n).map(|p| &yy[p..p + len]).collect();
                set.extend(uniq.into_iter().map(Word::from_slice));
            }
            set.into_iter().collect()
        }
    };
    let keep: Vec<bool> = candidates
        .par_iter()
        .map(|u| circular_cover_raw(u.as_bytes(), &yy, n))
        .collect();
    Ok(candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(u, k)| k.then_some(u))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fib::fw;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn set(words: &[&str]) -> WordSet {
        words.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn cover_examples() {
        assert_eq!(
            covers_of(&w("abaababaabaab")).unwrap(),
            set(&["abaab", "abaababaabaab"])
        );
        assert_eq!(covers_of(&w("aaa")).unwrap(), set(&["a", "aa", "aaa"]));
        assert_eq!(
            covers_of(&w("abaababa")).unwrap(),
            set(&["aba", "abaababa"])
        );
        assert_eq!(covers_of(&w("")), Err(Error::EmptyInput));
    }

    #[test]
    fn chain_route_agrees_on_fibonacci_words() {
        for n in 0..=14 {
            let y = fw(n);
            assert_eq!(
                covers_of(&y).unwrap(),
                covers_by_chain(&y).unwrap(),
                "n = {n}"
            );
        }
    }

    #[test]
    fn left_seed_examples() {
        let f6 = w("abaababaabaab");
        let expect = set(&[
            "aba",
            "abaab",
            "abaaba",
            "abaababa",
            "abaababaa",
            "abaababaab",
            "abaababaaba",
            "abaababaabaa",
            "abaababaabaab",
        ]);
        assert_eq!(left_seeds_of(&f6).unwrap(), expect);
        assert_eq!(left_seeds_of(&w("aa")).unwrap(), set(&["a", "aa"]));
        assert_eq!(left_seeds_of(&w("aba")).unwrap(), set(&["ab", "aba"]));
    }

    #[test]
    fn right_seed_examples() {
        assert_eq!(
            right_seeds_of(&w("abaababa")).unwrap(),
            set(&["aba", "ababa", "aababa", "baababa", "abaababa"])
        );
        assert_eq!(right_seeds_of(&w("aba")).unwrap(), set(&["ba", "aba"]));
        assert_eq!(right_seeds_of(&w("bb")).unwrap(), set(&["b", "bb"]));
    }

    #[test]
    fn seed_examples() {
        let witness = is_seed(&w("baa"), &w("abaab")).unwrap().unwrap();
        assert_eq!(witness.left_ext, w("ba"));
        assert_eq!(witness.right_ext, w("aa"));
        assert_eq!(witness.extended(&w("abaab")), w("baabaabaa"));
        assert_eq!(witness.positions.as_slice(), &[1, 4, 7]);

        assert!(is_seed(&w("ab"), &w("abaab")).unwrap().is_none());

        let y = w("abaababa");
        let trivial = is_seed(&y, &y).unwrap().unwrap();
        assert!(trivial.left_ext.is_empty() && trivial.right_ext.is_empty());

        assert_eq!(
            is_seed(&w("bb"), &w("abaab")),
            Err(Error::NotAFactor("bb".into()))
        );
        assert_eq!(is_seed(&w(""), &w("abaab")), Err(Error::EmptyPattern));
    }

    #[test]
    fn witness_serialization() {
        let witness = is_seed(&w("baa"), &w("abaab")).unwrap().unwrap();
        assert_eq!(
            serde_json::to_string(&witness).unwrap(),
            r#"{"left":"ba","right":"aa","positions":[1,4,7]}"#
        );
    }

    #[test]
    fn fast_seed_examples() {
        assert!(is_seed_fast(&w("aabab"), &w("abaababa")).unwrap());
        assert!(is_seed_fast(&w("aba"), &w("abaababaabaab")).unwrap());
        assert!(!is_seed_fast(&w("ab"), &w("abaab")).unwrap());
        assert!(matches!(
            is_seed_fast(&w("bb"), &w("abaab")),
            Err(Error::NotAFactor(_))
        ));
    }

    #[test]
    fn seed_set_examples() {
        let f4 = w("abaab");
        let mut expect = left_seeds_of(&f4)
            .unwrap()
            .union(&right_seeds_of(&f4).unwrap());
        expect.insert(w("baa"));
        assert_eq!(seeds_of(&f4, EngineOptions::default()).unwrap(), expect);
        assert_eq!(
            seeds_of(&w("aba"), EngineOptions::default()).unwrap(),
            set(&["ab", "ba", "aba"])
        );
        assert_eq!(
            seeds_of(&w("aa"), EngineOptions::default()).unwrap(),
            set(&["a", "aa"])
        );
    }

    #[test]
    fn baaba_is_a_seed_of_f5() {
        let f5 = w("abaababa");
        let witness = is_seed(&w("baaba"), &f5).unwrap().unwrap();
        let ext = witness.extended(&f5);
        assert!(crate::word::is_cover(&w("baaba"), &ext).unwrap());
    }

    #[test]
    fn size_refusal() {
        let long = Word::parse(&"ab".repeat(1001)).unwrap();
        assert!(matches!(
            seeds_of(&long, EngineOptions::default()),
            Err(Error::SizeRefused {
                len: 2002,
                limit: 2000
            })
        ));
        assert!(matches!(
            circular_covers_of(&long, CircularUniverse::Linear, EngineOptions::default()),
            Err(Error::SizeRefused { .. })
        ));
    }

    #[test]
    fn circular_examples() {
        let lin = CircularUniverse::Linear;
        let o = EngineOptions::default();
        assert_eq!(
            circular_covers_of(&w("abaab"), lin, o).unwrap(),
            set(&["aba", "abaab"])
        );
        assert_eq!(
            circular_covers_of(&w("aaaa"), lin, o).unwrap(),
            set(&["a", "aa", "aaa", "aaaa"])
        );
        // baaba covers C(F_5): starts 2 and 7 wrap around to cover every position
        assert_eq!(
            circular_covers_of(&w("abaababa"), lin, o).unwrap(),
            set(&["aba", "abaab", "baaba", "abaaba", "abaababa"])
        );
    }

    #[test]
    fn cyclic_universe_adds_wrapping_factors() {
        let o = EngineOptions::default();
        let linear = circular_covers_of(&w("abaab"), CircularUniverse::Linear, o).unwrap();
        let cyclic = circular_covers_of(&w("abaab"), CircularUniverse::Cyclic, o).unwrap();
        assert!(linear.is_subset(&cyclic));
        // every rotation of y covers the cycle
        for r in ["baaba", "aabab", "ababa", "babaa"] {
            assert!(cyclic.contains(&w(r)), "{r}");
        }
        // a single occurrence of aab leaves two positions bare
        assert!(!cyclic.contains(&w("aab")));
    }

    #[test]
    fn seed_criteria_agree_on_fibonacci_factors() {
        for n in 0..=8 {
            let y = fw(n);
            for u in distinct_factors(&y).iter() {
                assert_eq!(
                    is_seed(u, &y).unwrap().is_some(),
                    is_seed_fast(u, &y).unwrap(),
                    "{u} in F_{n}"
                );
            }
        }
    }

    fn binary_word(max: usize) -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop_oneof![Just(b'a'), Just(b'b')], 1..=max)
            .prop_map(Word::from_bytes_unchecked)
    }

    proptest! {
        #[test]
        fn seed_criteria_agree(y in binary_word(16)) {
            for u in distinct_factors(&y).iter() {
                prop_assert_eq!(is_seed(u, &y).unwrap().is_some(), is_seed_fast(u, &y).unwrap());
            }
        }

        #[test]
        fn left_seed_routes_agree(y in binary_word(24)) {
            prop_assert_eq!(left_seeds_of(&y).unwrap(), left_seeds_by_extension(&y).unwrap());
            prop_assert_eq!(right_seeds_of(&y).unwrap(), right_seeds_by_extension(&y).unwrap());
        }

        #[test]
        fn right_seeds_mirror_left_seeds(y in binary_word(40)) {
            prop_assert_eq!(right_seeds_of(&y).unwrap(), left_seeds_of(&y.reversed()).unwrap().reversed());
        }

        #[test]
        fn cover_routes_agree(y in binary_word(30)) {
            prop_assert_eq!(covers_of(&y).unwrap(), covers_by_chain(&y).unwrap());
        }

        #[test]
        fn quasiperiod_inclusions(y in binary_word(20)) {
            let covers = covers_of(&y).unwrap();
            let left = left_seeds_of(&y).unwrap();
            let right = right_seeds_of(&y).unwrap();
            let seeds = seeds_of(&y, EngineOptions::default()).unwrap();
            prop_assert!(covers.is_subset(&left.intersection(&right)));
            prop_assert!(left.union(&right).is_subset(&seeds));
            for z in left.iter() { prop_assert!(z.is_prefix_of(&y)); }
            for z in right.iter() { prop_assert!(z.is_suffix_of(&y)); }
        }

        #[test]
        fn seed_witness_is_valid(y in binary_word(16)) {
            for u in distinct_factors(&y).iter() {
                if let Some(wit) = is_seed(u, &y).unwrap() {
                    prop_assert!(wit.left_ext.len() < u.len() && wit.right_ext.len() < u.len());
                    prop_assert!(wit.left_ext.is_prefix_of(u) && wit.right_ext.is_suffix_of(u));
                    let ext = wit.extended(&y);
                    let cw = crate::word::cover_witness(u, &ext).unwrap();
                    prop_assert_eq!(cw, Some(wit.positions.clone()));
                }
            }
        }
    }
}
