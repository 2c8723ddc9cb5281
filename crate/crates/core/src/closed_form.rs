//! Closed-form descriptions of the borders, covers, left seeds, right seeds,
//! seeds and circular covers of `F_n`.
//!
//! Every set is a union of [`Clause`]s. A clause fixes a word shape
//! ([`FormKind`]) and an index `m`, and constrains the lengths of the left
//! extension `x` and the right extension `y` through a list of [`Bound`]s.
//! Enumeration keeps both the symbolic forms and the words they spell, so a
//! disagreement with the oracles can be traced to the clause responsible.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fib::{len_of, unfold, Limits};
use crate::word::Word;
use crate::wordset::WordSet;

/// Refuse to materialize more letters than this in one enumeration.
pub const LETTER_BUDGET: u128 = 1 << 28;

/// Up to this index every materialized word is checked to be a factor of `F_n`.
pub const FACTOR_CHECK_MAX_N: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Borders,
    Covers,
    LeftSeeds,
    RightSeeds,
    Seeds,
    CircularCovers,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::Borders,
        Category::Covers,
        Category::LeftSeeds,
        Category::RightSeeds,
        Category::Seeds,
        Category::CircularCovers,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Borders => "borders",
            Category::Covers => "covers",
            Category::LeftSeeds => "left_seeds",
            Category::RightSeeds => "right_seeds",
            Category::Seeds => "seeds",
            Category::CircularCovers => "circular_covers",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Category> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Ok(match norm.as_str() {
            "borders" => Category::Borders,
            "covers" => Category::Covers,
            "left_seeds" | "left" => Category::LeftSeeds,
            "right_seeds" | "right" => Category::RightSeeds,
            "seeds" => Category::Seeds,
            "circular_covers" | "circular" => Category::CircularCovers,
            _ => return Err(Error::Config(format!("unknown category {s:?}"))),
        })
    }
}

/// Word shapes, with `x` a suffix of length `left_len` and `y` a prefix of
/// length `right_len` of the named source word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormKind {
    /// `F_m`
    PlainFib,
    /// `F_m · y`, `y` a prefix of `F_{m-1}`
    FibPlusPrefix,
    /// `x · F_{m-1} · F_m`, `x` a suffix of `F_m`
    SuffixPlusFib,
    /// `x · F_m · y`, `x` a suffix of `F_m`, `y` a prefix of `F_{m-1}`
    SuffixFibPrefix,
    /// `x · F_m · y`, `x` a suffix of `F_m`, `y` a prefix of `F_{m-3} F_{m-2}`
    SuffixFibSwappedPrefix,
    /// `x · F_{m-1} · F_m · y`, `x` a suffix of `F_m`, `y` a prefix of `F_{m-1}`
    SuffixFibFibPrefix,
    /// `F_m[left_len + 1 .. left_len + right_len]`, an isolated factor
    Exceptional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactorForm {
    pub kind: FormKind,
    #[serde(rename = "m")]
    pub base: u32,
    pub left_len: usize,
    pub right_len: usize,
}

impl FactorForm {
    fn min_base(kind: FormKind) -> u32 {
        match kind {
            FormKind::PlainFib | FormKind::Exceptional => 0,
            FormKind::FibPlusPrefix
            | FormKind::SuffixPlusFib
            | FormKind::SuffixFibPrefix
            | FormKind::SuffixFibFibPrefix => 1,
            FormKind::SuffixFibSwappedPrefix => 3,
        }
    }

    /// Largest left/right lengths the source words allow.
    fn natural_limits(kind: FormKind, m: u32) -> (usize, usize) {
        match kind {
            FormKind::PlainFib => (0, 0),
            FormKind::FibPlusPrefix => (0, len_of(m - 1)),
            FormKind::SuffixPlusFib => (len_of(m), 0),
            FormKind::SuffixFibPrefix
            | FormKind::SuffixFibSwappedPrefix
            | FormKind::SuffixFibFibPrefix => (len_of(m), len_of(m - 1)),
            FormKind::Exceptional => (len_of(m), len_of(m)),
        }
    }

    pub fn is_well_formed(&self) -> bool {
        if self.base < Self::min_base(self.kind) || self.base > crate::fib::MAX_LENGTH_INDEX {
            return false;
        }
        let (lmax, rmax) = Self::natural_limits(self.kind, self.base);
        let fits = self.left_len <= lmax && self.right_len <= rmax;
        match self.kind {
            FormKind::Exceptional => fits && self.left_len + self.right_len <= lmax,
            _ => fits,
        }
    }

    pub fn len(&self) -> usize {
        let m = self.base;
        let (l, r) = (self.left_len, self.right_len);
        match self.kind {
            FormKind::PlainFib => len_of(m),
            FormKind::FibPlusPrefix => len_of(m) + r,
            FormKind::SuffixPlusFib => l + len_of(m - 1) + len_of(m),
            FormKind::SuffixFibPrefix | FormKind::SuffixFibSwappedPrefix => l + len_of(m) + r,
            FormKind::SuffixFibFibPrefix => l + len_of(m - 1) + len_of(m) + r,
            FormKind::Exceptional => r,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The word this form spells. Panics if the form is not well formed.
    pub fn materialize(&self) -> Word {
        self.materialize_with(&mut FibCache::default())
    }

    fn materialize_with(&self, cache: &mut FibCache) -> Word {
        assert!(self.is_well_formed(), "malformed form {self:?}");
        let m = self.base;
        let (l, r) = (self.left_len, self.right_len);
        let mut out = Vec::with_capacity(self.len());
        let fm = cache.get(m).to_vec();
        let suffix_of_fm = &fm[fm.len() - l..];
        match self.kind {
            FormKind::PlainFib => out.extend_from_slice(&fm),
            FormKind::FibPlusPrefix => {
                out.extend_from_slice(&fm);
                out.extend_from_slice(&cache.get(m - 1)[..r]);
            }
            FormKind::SuffixPlusFib => {
                out.extend_from_slice(suffix_of_fm);
                out.extend_from_slice(cache.get(m - 1));
                out.extend_from_slice(&fm);
            }
            FormKind::SuffixFibPrefix => {
                out.extend_from_slice(suffix_of_fm);
                out.extend_from_slice(&fm);
                out.extend_from_slice(&cache.get(m - 1)[..r]);
            }
            FormKind::SuffixFibSwappedPrefix => {
                let mut swapped = cache.get(m - 3).to_vec();
                swapped.extend_from_slice(cache.get(m - 2));
                out.extend_from_slice(suffix_of_fm);
                out.extend_from_slice(&fm);
                out.extend_from_slice(&swapped[..r]);
            }
            FormKind::SuffixFibFibPrefix => {
                out.extend_from_slice(suffix_of_fm);
                out.extend_from_slice(cache.get(m - 1));
                out.extend_from_slice(&fm);
                out.extend_from_slice(&cache.get(m - 1)[..r]);
            }
            FormKind::Exceptional => out.extend_from_slice(&fm[l..l + r]),
        }
        Word::from_bytes_unchecked(out)
    }
}

impl fmt::Display for FactorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.base;
        let (l, r) = (self.left_len, self.right_len);
        match self.kind {
            FormKind::PlainFib => write!(f, "F_{m}"),
            FormKind::FibPlusPrefix => write!(f, "F_{m}·pre(F_{},{r})", m - 1),
            FormKind::SuffixPlusFib => write!(f, "suf(F_{m},{l})·F_{}·F_{m}", m - 1),
            FormKind::SuffixFibPrefix => write!(f, "suf(F_{m},{l})·F_{m}·pre(F_{},{r})", m - 1),
            FormKind::SuffixFibSwappedPrefix => write!(
                f,
                "suf(F_{m},{l})·F_{m}·pre(F_{}F_{},{r})",
                m.saturating_sub(3),
                m.saturating_sub(2)
            ),
            FormKind::SuffixFibFibPrefix => {
                write!(f, "suf(F_{m},{l})·F_{}·F_{m}·pre(F_{},{r})", m - 1, m - 1)
            }
            FormKind::Exceptional => write!(f, "F_{m}[{}..{}]", l + 1, l + r),
        }
    }
}

#[derive(Default)]
struct FibCache(Vec<Vec<u8>>);

impl FibCache {
    fn get(&mut self, k: u32) -> &[u8] {
        let k = k as usize;
        while self.0.len() <= k {
            let i = self.0.len() as u32;
            self.0.push(unfold(i));
        }
        &self.0[k]
    }
}

/// A length constraint on a clause's extensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    LeftMin(usize),
    LeftMax(usize),
    RightMin(usize),
    RightMax(usize),
    SumMin(usize),
}

impl Bound {
    pub fn holds(&self, left: usize, right: usize) -> bool {
        match *self {
            Bound::LeftMin(v) => left >= v,
            Bound::LeftMax(v) => left <= v,
            Bound::RightMin(v) => right >= v,
            Bound::RightMax(v) => right <= v,
            Bound::SumMin(v) => left + right >= v,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Bound::LeftMin(v) => write!(f, "|x| >= {v}"),
            Bound::LeftMax(v) => write!(f, "|x| <= {v}"),
            Bound::RightMin(v) => write!(f, "|y| >= {v}"),
            Bound::RightMax(v) => write!(f, "|y| <= {v}"),
            Bound::SumMin(v) => write!(f, "|x|+|y| >= {v}"),
        }
    }
}

/// One family of a closed-form union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    /// Stable name, e.g. `seeds.inner`.
    pub label: &'static str,
    pub kind: FormKind,
    pub m: u32,
    pub bounds: Vec<Bound>,
}

impl Clause {
    fn new(label: &'static str, kind: FormKind, m: u32, bounds: Vec<Bound>) -> Clause {
        Clause {
            label,
            kind,
            m,
            bounds,
        }
    }

    fn candidates(&self) -> impl Iterator<Item = FactorForm> + '_ {
        let (lmax, rmax) = FactorForm::natural_limits(self.kind, self.m);
        (0..=lmax).flat_map(move |l| {
            (0..=rmax).filter_map(move |r| {
                let form = FactorForm {
                    kind: self.kind,
                    base: self.m,
                    left_len: l,
                    right_len: r,
                };
                form.is_well_formed().then_some(form)
            })
        })
    }

    /// Right lengths admitted together with left length `l`, if any.
    fn right_range(&self, l: usize) -> Option<(usize, usize)> {
        let (lmax, rmax) = FactorForm::natural_limits(self.kind, self.m);
        let (mut lo, mut hi) = (0, rmax);
        if self.kind == FormKind::Exceptional {
            hi = hi.min(lmax.checked_sub(l)?);
        }
        for b in &self.bounds {
            match *b {
                Bound::LeftMin(v) if l < v => return None,
                Bound::LeftMax(v) if l > v => return None,
                Bound::RightMin(v) => lo = lo.max(v),
                Bound::RightMax(v) => hi = hi.min(v),
                Bound::SumMin(v) => lo = lo.max(v.saturating_sub(l)),
                _ => {}
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    fn admitted(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        let lmax = FactorForm::natural_limits(self.kind, self.m).0;
        (0..=lmax).filter_map(move |l| self.right_range(l).map(|(lo, hi)| (l, lo, hi)))
    }

    /// Number of admitted forms and the total length of the words they spell.
    pub fn size(&self) -> (u128, u128) {
        let probe = FactorForm {
            kind: self.kind,
            base: self.m,
            left_len: 0,
            right_len: 0,
        };
        let fixed = probe.len() as u128;
        let (mut count, mut letters) = (0u128, 0u128);
        for (l, lo, hi) in self.admitted() {
            let k = (hi - lo + 1) as u128;
            let r_sum = (lo + hi) as u128 * k / 2;
            count += k;
            letters += match self.kind {
                FormKind::Exceptional => r_sum,
                _ => k * (fixed + l as u128) + r_sum,
            };
        }
        (count, letters)
    }

    /// Every form admitted by the bounds.
    pub fn forms(&self) -> Vec<FactorForm> {
        self.admitted()
            .flat_map(|(l, lo, hi)| {
                (lo..=hi).map(move |r| FactorForm {
                    kind: self.kind,
                    base: self.m,
                    left_len: l,
                    right_len: r,
                })
            })
            .collect()
    }

    /// Forms of this clause's shape that spell `word`, with the bounds each
    /// one violates (empty when the clause generates `word`).
    pub fn matches(&self, word: &Word) -> Vec<(FactorForm, Vec<Bound>)> {
        let mut cache = FibCache::default();
        self.candidates()
            .filter(|f| f.len() == word.len())
            .filter(|f| &f.materialize_with(&mut cache) == word)
            .map(|f| {
                let violated = self
                    .bounds
                    .iter()
                    .copied()
                    .filter(|b| !b.holds(f.left_len, f.right_len))
                    .collect();
                (f, violated)
            })
            .collect()
    }
}

/// Indices `k >= floor` with `k ≡ n (mod 2)`, from `n - start_gap` down.
fn parity_chain(n: u32, start_gap: u32, floor: u32) -> impl Iterator<Item = u32> {
    let top = n.checked_sub(start_gap);
    let mut cur = top.filter(|&t| t >= floor);
    std::iter::from_fn(move || {
        let k = cur?;
        cur = k.checked_sub(2).filter(|&v| v >= floor);
        Some(k)
    })
}

fn plain(label: &'static str, m: u32) -> Clause {
    Clause::new(label, FormKind::PlainFib, m, Vec::new())
}

fn left_seed_clauses(n: u32) -> Vec<Clause> {
    match n {
        0..=2 => vec![plain("left.whole", n)],
        3 => vec![plain("left.n3", 2), plain("left.n3", 3)],
        _ => {
            let mut v = vec![Clause::new(
                "left.period_extension",
                FormKind::FibPlusPrefix,
                n - 1,
                Vec::new(),
            )];
            v.extend((3..=n - 2).map(|m| {
                Clause::new(
                    "left.short_extension",
                    FormKind::FibPlusPrefix,
                    m,
                    vec![Bound::RightMax(len_of(m - 1) - 2)],
                )
            }));
            v
        }
    }
}

fn right_seed_clauses(n: u32) -> Vec<Clause> {
    if n <= 2 {
        return vec![plain("right.whole", n)];
    }
    let mut v: Vec<Clause> = parity_chain(n, 0, 3)
        .map(|k| plain("right.cover_chain", k))
        .collect();
    v.push(Clause::new(
        "right.period_extension",
        FormKind::SuffixPlusFib,
        n - 2,
        Vec::new(),
    ));
    v
}

fn inner_bounds(m: u32) -> Vec<Bound> {
    vec![
        Bound::LeftMin(1),
        Bound::LeftMax(len_of(m) - 1),
        Bound::RightMin(1),
        Bound::RightMax(len_of(m - 1).saturating_sub(2)),
        Bound::SumMin(len_of(m - 1)),
    ]
}

/// The clauses whose union is the closed form for `category` at index `n`.
pub fn clauses(category: Category, n: u32) -> Vec<Clause> {
    match category {
        Category::Borders => parity_chain(n, 2, 1)
            .map(|k| plain("borders.chain", k))
            .collect(),
        Category::Covers => {
            let mut v = vec![plain("covers.whole", n)];
            if n >= 5 {
                v.extend(parity_chain(n, 2, 3).map(|k| plain("covers.chain", k)));
            }
            v
        }
        Category::LeftSeeds => left_seed_clauses(n),
        Category::RightSeeds => right_seed_clauses(n),
        Category::Seeds => {
            let mut v = left_seed_clauses(n);
            v.extend(right_seed_clauses(n));
            if n == 4 {
                v.push(Clause::new(
                    "seeds.baa",
                    FormKind::Exceptional,
                    4,
                    vec![
                        Bound::LeftMin(1),
                        Bound::LeftMax(1),
                        Bound::RightMin(3),
                        Bound::RightMax(3),
                    ],
                ));
            }
            if n >= 5 {
                for m in 3..=n - 3 {
                    v.push(Clause::new(
                        "seeds.inner",
                        FormKind::SuffixFibPrefix,
                        m,
                        inner_bounds(m),
                    ));
                }
                for m in 3..=n - 3 {
                    v.push(Clause::new(
                        "seeds.double",
                        FormKind::SuffixFibFibPrefix,
                        m,
                        vec![Bound::SumMin(len_of(m))],
                    ));
                }
                let m = n - 2;
                v.push(Clause::new(
                    "seeds.middle",
                    FormKind::SuffixFibSwappedPrefix,
                    m,
                    vec![
                        Bound::LeftMin(1),
                        Bound::LeftMax(len_of(m) - 1),
                        Bound::RightMin(1),
                        Bound::RightMax(len_of(n - 3)),
                        Bound::SumMin(len_of(n - 3)),
                    ],
                ));
            }
            v
        }
        Category::CircularCovers => match n {
            0..=3 => vec![plain("circular.whole", n)],
            4 => vec![plain("circular.whole", 4), plain("circular.n4", 3)],
            _ => {
                let mut v = vec![plain("circular.whole", n)];
                v.extend((3..=n - 1).map(|m| {
                    Clause::new(
                        "circular.left",
                        FormKind::FibPlusPrefix,
                        m,
                        vec![Bound::RightMax(len_of(m - 1) - 2)],
                    )
                }));
                v.extend((3..=n - 2).map(|m| {
                    Clause::new(
                        "circular.inner",
                        FormKind::SuffixFibPrefix,
                        m,
                        inner_bounds(m),
                    )
                }));
                v.extend((3..=n - 3).map(|m| {
                    Clause::new(
                        "circular.double",
                        FormKind::SuffixFibFibPrefix,
                        m,
                        vec![Bound::SumMin(len_of(m))],
                    )
                }));
                v
            }
        },
    }
}

/// A closed-form set: the generating forms and the words they spell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumResult {
    pub n: u32,
    pub category: Category,
    pub forms: Vec<FactorForm>,
    #[serde(rename = "words")]
    pub materialized: WordSet,
}

pub fn enumerate(category: Category, n: u32, limits: &Limits) -> Result<EnumResult> {
    limits.check(n)?;
    let clause_list = clauses(category, n);
    let letters: u128 = clause_list.iter().map(|c| c.size().1).sum();
    if letters > LETTER_BUDGET {
        return Err(Error::Budget {
            letters,
            budget: LETTER_BUDGET,
        });
    }

    let per_clause: Vec<Vec<FactorForm>> = clause_list.iter().map(Clause::forms).collect();
    let mut cache = FibCache::default();
    let fib_n = unfold(n);
    let haystack = std::str::from_utf8(&fib_n).expect("ascii");
    let mut materialized = WordSet::new();
    for (clause, forms) in clause_list.iter().zip(&per_clause) {
        let mut seen = HashSet::with_capacity(forms.len());
        for form in forms {
            let word = form.materialize_with(&mut cache);
            if n <= FACTOR_CHECK_MAX_N && !haystack.contains(word.as_str()) {
                return Err(Error::Internal(format!(
                    "{} ({form}) spells {word}, which is not a factor of F_{n}",
                    clause.label
                )));
            }
            if !seen.insert(word.clone()) {
                return Err(Error::Internal(format!(
                    "{} at m = {} repeats {word}",
                    clause.label, clause.m
                )));
            }
            materialized.insert(word);
        }
    }

    Ok(EnumResult {
        n,
        category,
        forms: per_clause.into_iter().flatten().collect(),
        materialized,
    })
}

pub fn enum_borders(n: u32, limits: &Limits) -> Result<EnumResult> {
    enumerate(Category::Borders, n, limits)
}

pub fn enum_covers(n: u32, limits: &Limits) -> Result<EnumResult> {
    enumerate(Category::Covers, n, limits)
}

pub fn enum_left_seeds(n: u32, limits: &Limits) -> Result<EnumResult> {
    enumerate(Category::LeftSeeds, n, limits)
}

pub fn enum_right_seeds(n: u32, limits: &Limits) -> Result<EnumResult> {
    enumerate(Category::RightSeeds, n, limits)
}

pub fn enum_seeds(n: u32, limits: &Limits) -> Result<EnumResult> {
    enumerate(Category::Seeds, n, limits)
}

pub fn enum_circular_covers(n: u32, limits: &Limits) -> Result<EnumResult> {
    enumerate(Category::CircularCovers, n, limits)
}

/// A clause whose shape spells a given word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseMatch {
    pub clause: &'static str,
    pub form: FactorForm,
    pub rendered: String,
    /// Bounds the form violates; empty when the clause generates the word.
    pub violated: Vec<String>,
}

impl ClauseMatch {
    pub fn generates(&self) -> bool {
        self.violated.is_empty()
    }
}

/// Every clause of the closed form whose shape spells `word`, whether or
/// not its bounds admit it.
pub fn attribute(category: Category, n: u32, word: &Word) -> Vec<ClauseMatch> {
    clauses(category, n)
        .iter()
        .flat_map(|c| {
            c.matches(word)
                .into_iter()
                .map(|(form, violated)| ClauseMatch {
                    clause: c.label,
                    form,
                    rendered: form.to_string(),
                    violated: violated.iter().map(Bound::to_string).collect(),
                })
        })
        .collect()
}
