//! Support code for the `bihyp` command-line tool.

pub mod suite;
