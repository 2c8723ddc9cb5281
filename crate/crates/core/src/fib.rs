//! Fibonacci strings `F_0 = b`, `F_1 = a`, `F_n = F_{n-1} F_{n-2}`, their
//! `P_k δ_k` decomposition, the `F_m, F_{m-1}` expansion and the placement
//! of `F_m` inside `F_n` read off that expansion.

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{scan, PositionSet, Word};

/// Largest index whose length fits in a `u64`.
pub const MAX_LENGTH_INDEX: u32 = 90;

pub const DEFAULT_N_MAX: u32 = 30;

/// Environment variable overriding [`Limits::n_max`].
pub const NMAX_ENV: &str = "FIBQUASI_NMAX";

/// Materialization guard: `F_n` is only built for `n <= n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub n_max: u32,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            n_max: DEFAULT_N_MAX,
        }
    }
}

impl Limits {
    /// Default limits, with `n_max` taken from `FIBQUASI_NMAX` when set.
    pub fn from_env() -> Result<Limits> {
        match std::env::var(NMAX_ENV) {
            Ok(v) => {
                let n_max = v.trim().parse::<u32>().map_err(|_| {
                    Error::Config(format!("{NMAX_ENV}={v:?} is not a nonnegative integer"))
                })?;
                if n_max > MAX_LENGTH_INDEX {
                    return Err(Error::Config(format!(
                        "{NMAX_ENV}={n_max} exceeds {MAX_LENGTH_INDEX}"
                    )));
                }
                Ok(Limits { n_max })
            }
            Err(_) => Ok(Limits::default()),
        }
    }

    pub fn check(&self, n: u32) -> Result<()> {
        if n > self.n_max {
            Err(Error::MaterializationGuard {
                n,
                limit: self.n_max,
            })
        } else {
            Ok(())
        }
    }
}

/// `|F_n|`, without materializing the word.
pub fn fib_len(n: u32) -> Result<u64> {
    if n > MAX_LENGTH_INDEX {
        return Err(Error::LengthOverflow(n));
    }
    let (mut prev, mut cur) = (1u64, 1u64);
    for _ in 1..n {
        (prev, cur) = (cur, prev + cur);
    }
    Ok(cur)
}

/// Infallible length for indices already checked against the guard.
pub(crate) fn len_of(n: u32) -> usize {
    fib_len(n).expect("index below the length limit") as usize
}

/// `F_n` together with its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibWord {
    index: u32,
    word: Word,
}

impl FibWord {
    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }
}

pub fn fib_word(n: u32, limits: &Limits) -> Result<FibWord> {
    limits.check(n)?;
    Ok(FibWord {
        index: n,
        word: Word::from_bytes_unchecked(unfold(n)),
    })
}

/// Iterative unfolding of the recurrence; caller has checked the guard.
pub(crate) fn unfold(n: u32) -> Vec<u8> {
    if n == 0 {
        return b"b".to_vec();
    }
    let mut prev = b"b".to_vec();
    let mut cur = b"a".to_vec();
    for _ in 1..n {
        let mut next = Vec::with_capacity(cur.len() + prev.len());
        next.extend_from_slice(&cur);
        next.extend_from_slice(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Unchecked `F_n` for small internal indices.
pub(crate) fn fw(n: u32) -> Word {
    Word::from_bytes_unchecked(unfold(n))
}

/// `F_k = P_k · δ_k` with `P_k = F_{k-2} F_{k-3} ... F_1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    #[serde(rename = "p")]
    pub p_part: Word,
    pub delta: Word,
}

pub fn decompose(k: u32, limits: &Limits) -> Result<Decomposition> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "decomposition needs k >= 2, got {k}"
        )));
    }
    limits.check(k)?;
    // P_2 is the empty product
    let mut p_part = Word::empty();
    for i in (1..=k - 2).rev() {
        p_part.push_slice(&unfold(i));
    }
    let delta = Word::parse(if k.is_multiple_of(2) { "ab" } else { "ba" })?;
    if p_part.concat(&delta).as_bytes() != unfold(k).as_slice() {
        return Err(Error::Internal(format!("P_{k} · δ_{k} differs from F_{k}")));
    }
    Ok(Decomposition { p_part, delta })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ItemKind {
    /// An `F_m` factor.
    Big,
    /// An `F_{m-1}` factor.
    Small,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionItem {
    pub kind: ItemKind,
    /// 1-based start in `F_n`.
    pub start: usize,
}

impl Serialize for ExpansionItem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: &'static str,
            start: usize,
        }
        let kind = match self.kind {
            ItemKind::Big => "F_m",
            ItemKind::Small => "F_{m-1}",
        };
        Repr {
            kind,
            start: self.start,
        }
        .serialize(s)
    }
}

/// The tiling of `F_n` by `F_m` and `F_{m-1}` obtained by unfolding the
/// recurrence down to index `m + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub n: u32,
    pub m: u32,
    pub items: Vec<ExpansionItem>,
}

impl Serialize for Expansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.items.len()))?;
        for item in &self.items {
            seq.serialize_element(item)?;
        }
        seq.end()
    }
}

impl Expansion {
    pub fn starts(&self) -> Vec<usize> {
        self.items.iter().map(|i| i.start).collect()
    }

    /// Concatenation of the denoted factors.
    pub fn materialize(&self) -> Word {
        let big = unfold(self.m);
        let small = unfold(self.m - 1);
        let mut out = Word::empty();
        for item in &self.items {
            match item.kind {
                ItemKind::Big => out.push_slice(&big),
                ItemKind::Small => out.push_slice(&small),
            }
        }
        out
    }

    /// Tiling without gaps, no two adjacent `F_{m-1}`, and the factors spell `F_n`.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let (big, small) = (len_of(self.m), len_of(self.m - 1));
        let mut next = 1;
        for (i, item) in self.items.iter().enumerate() {
            if item.start != next {
                return Err(format!(
                    "item {i} starts at {} instead of {next}",
                    item.start
                ));
            }
            next += match item.kind {
                ItemKind::Big => big,
                ItemKind::Small => small,
            };
        }
        if next != len_of(self.n) + 1 {
            return Err(format!(
                "items end at {} instead of {}",
                next - 1,
                len_of(self.n)
            ));
        }
        if self
            .items
            .windows(2)
            .any(|w| w[0].kind == ItemKind::Small && w[1].kind == ItemKind::Small)
        {
            return Err("two consecutive F_{m-1} items".into());
        }
        if self.materialize().as_bytes() != unfold(self.n).as_slice() {
            return Err("factors do not spell F_n".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RewriteOrder {
    LeftmostFirst,
    RightmostFirst,
}

pub fn expansion(n: u32, m: u32, limits: &Limits) -> Result<Expansion> {
    expansion_with_order(n, m, RewriteOrder::LeftmostFirst, limits)
}

/// Rewrites `F_k -> F_{k-1} F_{k-2}` for every `k > m`, picking either the
/// leftmost or the rightmost rewritable factor at each step.
pub fn expansion_with_order(
    n: u32,
    m: u32,
    order: RewriteOrder,
    limits: &Limits,
) -> Result<Expansion> {
    if n < 2 || m < 1 || m >= n {
        return Err(Error::Domain(format!(
            "expansion needs n >= 2 and 1 <= m <= n-1, got n = {n}, m = {m}"
        )));
    }
    limits.check(n)?;

    let mut indices = Vec::new();
    match order {
        RewriteOrder::LeftmostFirst => {
            // pending holds the unresolved suffix, rightmost factor at the bottom
            let mut pending = vec![n];
            while let Some(k) = pending.pop() {
                if k > m {
                    pending.push(k - 2);
                    pending.push(k - 1);
                } else {
                    indices.push(k);
                }
            }
        }
        RewriteOrder::RightmostFirst => {
            let mut pending = vec![n];
            while let Some(k) = pending.pop() {
                if k > m {
                    pending.push(k - 1);
                    pending.push(k - 2);
                } else {
                    indices.push(k);
                }
            }
            indices.reverse();
        }
    }

    let (big, small) = (len_of(m), len_of(m - 1));
    let mut start = 1;
    let items = indices
        .into_iter()
        .map(|k| {
            let kind = if k == m {
                ItemKind::Big
            } else {
                ItemKind::Small
            };
            let item = ExpansionItem { kind, start };
            start += if k == m { big } else { small };
            item
        })
        .collect();
    Ok(Expansion { n, m, items })
}

/// Border test for Fibonacci strings by index parity: `F_k` is a nonempty
/// proper border of `F_n` iff `1 <= k <= n-2` and `n - k` is even.
pub fn is_fib_border(n: u32, k: u32) -> bool {
    n >= 3 && k >= 1 && k + 2 <= n && (n - k).is_multiple_of(2)
}

/// What happened to a trailing `F_{m-1}` item when reading occurrences off
/// an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrailingSmall {
    /// The expansion ends with `F_m`.
    Absent,
    /// The expansion ends with `F_{m-1}`, which is a border of `F_n`; dropped.
    DroppedBorder,
    /// The expansion ends with `F_{m-1}`, which is not a border of `F_n`; kept.
    KeptNonBorder,
}

/// The expansion-start rule without a domain restriction on `m`: starts of
/// all items of the `F_m, F_{m-1}` expansion, minus a trailing `F_{m-1}` if it
/// is a border of `F_n`. Only proven to give the occurrences for `m >= 3`.
pub fn expansion_start_rule(
    n: u32,
    m: u32,
    limits: &Limits,
) -> Result<(PositionSet, TrailingSmall)> {
    let exp = expansion(n, m, limits)?;
    let mut starts = exp.starts();
    let trailing = match exp.items.last().map(|i| i.kind) {
        Some(ItemKind::Small) if is_fib_border(n, m - 1) => {
            starts.pop();
            TrailingSmall::DroppedBorder
        }
        Some(ItemKind::Small) => TrailingSmall::KeptNonBorder,
        _ => TrailingSmall::Absent,
    };
    Ok((PositionSet::from_sorted(starts), trailing))
}

/// Occurrences of `F_m` in `F_n` computed from the expansion, without
/// scanning. Requires `3 <= m <= n-2`.
pub fn fib_occurrences(n: u32, m: u32, limits: &Limits) -> Result<PositionSet> {
    fib_occurrences_detail(n, m, limits).map(|(p, _)| p)
}

pub fn fib_occurrences_detail(
    n: u32,
    m: u32,
    limits: &Limits,
) -> Result<(PositionSet, TrailingSmall)> {
    if m < 3 || m + 2 > n {
        return Err(Error::Domain(format!(
            "fast occurrence placement needs 3 <= m <= n-2, got n = {n}, m = {m}"
        )));
    }
    expansion_start_rule(n, m, limits)
}

/// Occurrences of `F_m` in `F_n`: the expansion rule when its domain allows,
/// a naive scan otherwise.
pub fn fib_occurrences_any(n: u32, m: u32, limits: &Limits) -> Result<PositionSet> {
    if m >= 3 && m + 2 <= n {
        return fib_occurrences(n, m, limits);
    }
    limits.check(n)?;
    limits.check(m)?;
    let starts = scan(&unfold(m), &unfold(n))
        .into_iter()
        .map(|p| p + 1)
        .collect();
    Ok(PositionSet::from_sorted(starts))
}
