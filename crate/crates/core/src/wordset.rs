use std::collections::btree_set;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::word::Word;

/// Deduplicated words in canonical (length, lexicographic) order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WordSet(BTreeSet<Word>);

impl WordSet {
    pub fn new() -> WordSet {
        WordSet::default()
    }

    pub fn insert(&mut self, w: Word) -> bool {
        self.0.insert(w)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.0.contains(w)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> btree_set::Iter<'_, Word> {
        self.0.iter()
    }

    pub fn first(&self) -> Option<&Word> {
        self.0.first()
    }

    pub fn last(&self) -> Option<&Word> {
        self.0.last()
    }

    pub fn is_subset(&self, other: &WordSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &WordSet) -> WordSet {
        WordSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &WordSet) -> WordSet {
        WordSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn intersection(&self, other: &WordSet) -> WordSet {
        WordSet(self.0.intersection(&other.0).cloned().collect())
    }

    pub fn extend<I: IntoIterator<Item = Word>>(&mut self, iter: I) {
        self.0.extend(iter)
    }

    /// Every member reversed.
    pub fn reversed(&self) -> WordSet {
        self.0.iter().map(Word::reversed).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|w| w.as_str().to_owned()).collect()
    }
}

impl FromIterator<Word> for WordSet {
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> WordSet {
        WordSet(iter.into_iter().collect())
    }
}

impl IntoIterator for WordSet {
    type Item = Word;
    type IntoIter = btree_set::IntoIter<Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a WordSet {
    type Item = &'a Word;
    type IntoIter = btree_set::Iter<'a, Word>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
