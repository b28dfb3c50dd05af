//! Classification of locally checkable labeling problems on paths, cycles and
//! rooted trees, with synthesized LOCAL algorithms and brute-force oracles.

pub mod automaton;
pub mod bits;
pub mod catalog;
pub mod model;
pub mod properties;
pub mod classifier;
pub mod instance;
pub mod oracle;
pub mod verifier;
pub mod runtime;
pub mod normalizer;
pub mod cli;
