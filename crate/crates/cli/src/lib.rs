//! Front end for `qhecke-core`: graph files, expression grammars, JSON
//! output, the command line and the acceptance suite.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod expr;
pub mod graph_file;
pub mod json;
pub mod suite;
