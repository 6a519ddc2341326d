//! Generalized row insertion on plactic biwords via bumpless pipe dreams.
//!
//! The central objects are square grids of six pipe tiles (blank, horizontal,
//! vertical, crossing, two elbows) plus a "bump" tile holding two osculating
//! elbows. Pipes enter at the south edge, leave at the east edge, and each
//! grid determines a permutation. The library provides:
//!
//! * [`perm`] — permutations as canonical one-line words, with the strictly
//!   decreasing factorization used by the local growth rule;
//! * [`bpd`] — the tile grid: parsing, rendering, validation, pipe traces,
//!   component surgery, and the shared droop/undroop edit tables;
//! * [`insertion`] — right insertion of a biletter by minimal droops, with
//!   the full path transcript (drooped pipes, bump swaps, terminal crossing);
//! * [`jdt`] — jeu de taquin on the first blank row, rectification, and the
//!   reversed slide that undoes it;
//! * [`biword`] — plactic biwords, the insertion chain, windowed Knuth moves
//!   and Knuth classes, and bounded enumeration of all plactic biwords;
//! * [`growth`] — Fomin growth diagrams filled either by replaying insertions
//!   or by a purely local rule, plus extraction of the compatible sequence
//!   and its reduced pipe dream;
//! * [`verify`] — the randomized/exhaustive cross-check suites behind the
//!   CLI's `verify` subcommand.

pub mod biword;
pub mod bpd;
pub mod error;
pub mod growth;
pub mod insertion;
pub mod jdt;
pub mod perm;
pub mod verify;

pub use biword::{enumerate_plactic, knuth_connected, Biword, KnuthMove};
pub use bpd::{Cell, Component, Grid, Surgery, Tile};
pub use error::{Error, Result};
pub use growth::{
    growth_by_insertion, growth_by_rules, local_rule, CompatibleSequence, GrowthDiagram,
    PipeDream,
};
pub use insertion::{cross_bump_swap, insert, min_droop, InsertionOutcome, InsertionPath, MaxDroop};
pub use jdt::{jdt_step, rect, reversed_jdt, JdtOutcome, RectOutcome, ReversedJdtOutcome};
pub use perm::Permutation;
pub use verify::{run_case, run_suite, Failure, VerifyOptions, VerifyReport, SUITES};
