//! Experiments around trace positivity of words in real PD matrices:
//! palindromic structure of words, random trace search, and the
//! `A^{-1} B A^2 B A^{-1} = I` obstruction.

mod classify;
mod demo;
mod trace;

pub use classify::{classify_word, letters, ClassTag, Split, WordClass};
pub use demo::{counterexample_demo, counterexample_residual, CounterexampleReport};
pub use trace::{trace_search, witness_trace, TraceSearchReport, TraceWitness};
