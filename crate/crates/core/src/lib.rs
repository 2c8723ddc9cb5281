//! Quasiperiodicity of binary words and of the Fibonacci strings.
//!
//! `F_0 = b`, `F_1 = a`, `F_n = F_{n-1} F_{n-2}`. The [`quasi`] engine
//! computes borders, periods, covers, left/right seeds, seeds and circular
//! covers of arbitrary words over `{a, b}`; [`closed_form`] enumerates the
//! same sets for `F_n` directly; [`verify`] compares the two.

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod fib;
pub mod quasi;
pub mod verify;
pub mod word;
pub mod wordset;

pub use closed_form::{Category, EnumResult, FactorForm, FormKind};
pub use error::{Error, Result};
pub use fib::{fib_len, fib_word, FibWord, Limits};
pub use word::{Letter, PositionSet, Word};
pub use wordset::WordSet;
