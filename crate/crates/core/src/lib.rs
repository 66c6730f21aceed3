//! Divergence-from-randomness (DFR) ranking with collection-adaptive randomness models.
//!
//! The crate covers the whole experimental loop:
//!
//! - [`index`]: tokenization, inverted index construction and a versioned binary format.
//! - [`termclass`]: term-weighting features and a linear max-margin classifier separating
//!   informative from non-informative terms.
//! - [`distfit`]: discrete candidate distributions, their likelihoods and maximum-likelihood fits.
//! - [`select`]: AIC and Vuong closeness test model selection.
//! - [`ranking`]: PL2, InL2, LLL2, SPLL2, the Yule–Simon adapted YSL2 model and Dirichlet LM.
//! - [`eval`]: TREC qrels/runs, P@10, Bpref, ERR@20, nDCG, cross-validated tuning.
//!
//! Data-parallel loops (candidate scoring, per-query batches, vocabulary features) run on rayon
//! when the `parallel` feature is enabled; every parallel path has a sequential twin selected
//! with [`Exec`] and both produce identical results.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distfit;
mod error;
pub mod eval;
pub mod index;
mod par;
pub mod ranking;
pub mod sample;
pub mod select;
pub mod special;
pub mod synth;
pub mod termclass;
pub mod text;

pub use error::{Error, Result};
pub use par::Exec;
