//! Privacy amplification from nested binary linear codes.
//!
//! A pair of codes `C2 ⊂ C1` does reconciliation and key compression in one
//! structure: `C1` corrects the errors between the two parties' raw strings and
//! the coset of the agreed `C1` codeword modulo `C2` is the final key. The
//! crate provides the GF(2) algebra, coset-leader decoding, the nested-pair key
//! extraction with exhaustive checks, the entropy bounds for a binary symmetric
//! channel, and a seeded simulator for the full key-agreement exchange.

pub mod channel;
pub mod cli;
pub mod code;
pub mod composite;
pub mod error;
pub mod gf2;
pub mod protocol;

pub use code::{make_code, CodeFamily, Decoded, LinearCode};
pub use composite::{CheckReport, CompositeCode, DisjointnessReport, KeyBits};
pub use error::{Error, Result};
pub use gf2::{hamming_distance, BitMatrix, BitVector};
