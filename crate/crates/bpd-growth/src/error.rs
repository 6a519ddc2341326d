//! Error types shared across the library.
//!
//! Errors split into two classes: *input errors* (bad arguments, violated
//! preconditions, out-of-range requests) and *invariant breaches* (states the
//! algorithms are proven never to reach on valid input). The CLI maps the
//! former to exit code 1 and the latter to exit code 2; a breach on input
//! that parsed cleanly is a bug, not a usage mistake.

use thiserror::Error;

/// Unified error type for every fallible operation in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text input could not be parsed (grids, biwords, permutations, words).
    #[error("parse error: {0}")]
    Parse(String),

    /// A biword violates the plactic-input contract (unsorted biletters,
    /// non-positive letters, k-run not weakly decreasing within equal a's).
    #[error("invalid biword: {0}")]
    InvalidBiword(String),

    /// A grid of the requested ambient size cannot hold the object.
    #[error("grid size {got} too small, need at least {needed}")]
    SizeTooSmall { needed: usize, got: usize },

    /// A documented precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// Minimal droop is undefined at the requested cell (the scan down the
    /// east column hit a forbidden tile, or an edit target cannot accept the
    /// edit).
    #[error("droop blocked at ({row},{col}): {reason}")]
    DroopBlocked {
        row: usize,
        col: usize,
        reason: String,
    },

    /// `cross_bump_swap` was called on a bump whose two pipes do not
    /// currently cross.
    #[error("pipes {a} and {b} do not cross; cannot swap bump with a crossing")]
    NotCrossed { a: usize, b: usize },

    /// Jeu de taquin was asked to run on a grid with no blank tile.
    #[error("grid has no blank tile; jeu de taquin is undefined")]
    NoBlank,

    /// `decompose_decreasing` was given a permutation that is not a product
    /// of simple transpositions with strictly decreasing indices.
    #[error("permutation is not a strictly decreasing product of simple transpositions")]
    NotDecreasing,

    /// Reversed jeu de taquin slid a block off the west edge of the grid.
    #[error("reversed jeu de taquin failed: {0}")]
    Failed(String),

    /// An enumeration or search exceeded its configured bound.
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    /// Breach: a grid reached a state that violates the tile/flow rules.
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    /// Breach: a growth-diagram square does not fit any local-rule case.
    #[error("malformed square: {0}")]
    MalformedSquare(String),

    /// Breach: a rectification step did not start in the expected row.
    #[error("rectification step started in row {got}, expected row {expected}")]
    AssertStartRow { expected: usize, got: usize },

    /// Breach: a wiring diagram or grid that must be reduced is not.
    #[error("not reduced: {0}")]
    NotReduced(String),

    /// Breach: any other internally-checked invariant failed.
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

impl Error {
    /// True for errors that indicate an internal invariant violation rather
    /// than bad input. The CLI uses this to pick the exit code.
    pub fn is_breach(&self) -> bool {
        matches!(
            self,
            Error::InvalidGrid(_)
                | Error::MalformedSquare(_)
                | Error::AssertStartRow { .. }
                | Error::NotReduced(_)
                | Error::InvariantBreach(_)
        )
    }

    /// Process exit code the CLI should use for this error.
    pub fn exit_code(&self) -> i32 {
        if self.is_breach() {
            2
        } else {
            1
        }
    }
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn breach_classification() {
        assert!(!Error::Parse("x".into()).is_breach());
        assert!(!Error::NoBlank.is_breach());
        assert!(!Error::NotDecreasing.is_breach());
        assert!(!Error::Failed("off edge".into()).is_breach());
        assert!(Error::InvalidGrid("x".into()).is_breach());
        assert!(Error::MalformedSquare("x".into()).is_breach());
        assert!(Error::AssertStartRow { expected: 1, got: 2 }.is_breach());
        assert_eq!(Error::NoBlank.exit_code(), 1);
        assert_eq!(Error::InvariantBreach("x".into()).exit_code(), 2);
    }

    #[test]
    fn display_messages_are_specific() {
        let e = Error::DroopBlocked {
            row: 3,
            col: 4,
            reason: "scan hit a crossing".into(),
        };
        assert_eq!(
            e.to_string(),
            "droop blocked at (3,4): scan hit a crossing"
        );
        let e = Error::SizeTooSmall { needed: 6, got: 4 };
        assert_eq!(e.to_string(), "grid size 4 too small, need at least 6");
    }
}
