//! Abstract numeration systems and the sets of tuples they recognize.
//!
//! The crate provides finite automata over padded tuple alphabets, abstract
//! numeration systems (`rep`/`val` by path counting), the algebra of
//! synchronous relations, normal forms of 1-recognizable subsets of ℕ^d, and
//! a compiler producing, for any numeration system, an automaton accepting
//! the padded representations of such a set.

pub mod alphabet;
pub mod ans;
pub mod automaton;
pub mod compile;
pub mod counting;
pub mod error;
pub mod format;
pub mod frobenius;
pub mod normal_form;
pub mod padded;
pub mod yset;

pub use alphabet::{Alphabet, Letter, OrderedAlphabet, Symbol, Word, PAD};
pub use ans::{finite_dfa, word_dfa, Ans, ModClassTable};
pub use automaton::{BoolOp, Dfa, Nfa};
pub use compile::{compile, compile_yset, verify, CompiledSet, Compiler, Direction, VerifyReport};
pub use counting::{CountTable, RadixWords};
pub use error::{Error, Result};
pub use frobenius::{frobenius_bound, residue_set};
pub use normal_form::{decompose_unary, Axes, Level, NfUnion, NormalForm};
pub use padded::PaddedRelation;
pub use yset::{y_decompose, YDecomposition, YSet};
