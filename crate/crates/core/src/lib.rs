//! Lossless coding of long i.i.d. symbol sequences by type vector and
//! shrinking-support run lengths.
//!
//! The crate is organized bottom-up:
//!
//! - [`bitio`]: MSB-first bit buffers and cursors
//! - [`codes`]: unary, truncated binary, Golomb and Elias omega codes
//! - [`codec`]: the type + run-length container (`encode` / `decode`)
//! - [`baselines`]: Huffman, symbol-wise Golomb and symbol-wise Elias omega
//! - [`analysis`]: entropy and closed-form code length bounds
//! - [`harness`]: samplers, the Monte Carlo benchmark runner and CSV output
//! - [`file_format`]: the on-disk wrapper used by the command line tool
//! - [`cli`]: the `typerun` command line front end

pub mod analysis;
pub mod baselines;
pub mod bitio;
pub mod cli;
pub mod codec;
pub mod codes;
pub mod error;
pub mod file_format;
pub mod harness;

pub use bitio::{BitBuffer, BitCursor};
pub use codec::{decode, encode, Symbol, SymbolSequence};
pub use codes::GolombParam;
pub use error::{Error, Result};
