//! Batch experiment runner over `carlab-core`.
//!
//! Each subcommand builds a [`report::Report`] that is rendered as JSON or CSV.
//! Trials run in parallel with per-trial seeds from
//! [`carlab_core::random::trial_seed`] and are collected in trial order, so
//! output bytes depend only on the configuration.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod report;
pub mod seqfile;

pub use error::{LabError, LabResult};
