//! Growth diagrams for plactic biwords, filled two independent ways.
//!
//! For a biword with `ℓ` biletters and largest row letter `a`, the
//! diagram is an `(a+1)×(ℓ+1)` matrix of permutations: the entry at
//! threshold `i` and column `j` is the permutation of the image of the
//! first `j` biletters whose row letter exceeds `i`. Threshold `a` (the
//! top) and column `0` are identity. `growth_by_insertion` computes the
//! entries directly; `growth_by_rules` fills them square by square with
//! the local rule, using only the permutations and the marker positions.
//!
//! The rightmost column is a saturated chain from which a compatible
//! sequence and a reduced pipe dream of the bottom-right permutation
//! are read off.

use std::collections::BTreeSet;

use serde_json::json;

use crate::biword::Biword;
use crate::bpd::{Cell, Grid};
use crate::error::{Error, Result};
use crate::insertion::insert;
use crate::perm::Permutation;

/// Growth matrix with marker data. `cells[i][j]` is the permutation at
/// threshold `i` (0 = bottom, `a` = top) after `j` biletters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthDiagram {
    a: usize,
    ell: usize,
    cells: Vec<Vec<Permutation>>,
    col_sub: Vec<usize>,
    x_rows: Vec<usize>,
}

/// The word `(a_j)` with its weakly increasing row word `(r_j)` read off
/// a growth diagram's rightmost column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleSequence {
    pub a_seq: Vec<usize>,
    pub r_seq: Vec<usize>,
}

/// A pipe dream: crossing positions inside the staircase of size `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipeDream {
    pub m: usize,
    pub crosses: BTreeSet<Cell>,
}

fn as_transposition(p: &Permutation) -> Option<(usize, usize)> {
    let moved: Vec<usize> = (1..=p.degree()).filter(|&i| p.apply(i) != i).collect();
    match moved[..] {
        [x, y] if p.apply(x) == y && p.apply(y) == x => Some((x, y)),
        _ => None,
    }
}

/// Completes a unit square: given its top-left `π`, bottom-left `μ`, and
/// top-right `σ` corners, the column subscript `k`, and whether the
/// square carries a marker, returns the bottom-right corner.
pub fn local_rule(
    pi: &Permutation,
    mu: &Permutation,
    sigma: &Permutation,
    k: usize,
    has_x: bool,
) -> Result<Permutation> {
    let horizon = pi
        .degree()
        .max(mu.degree())
        .max(sigma.degree())
        .max(k + 1)
        + 2;
    let complement = |i_set: &BTreeSet<usize>| -> Vec<usize> {
        (1..=horizon).filter(|v| !i_set.contains(v)).collect()
    };
    let decompose = |p: &Permutation| -> Result<BTreeSet<usize>> {
        Ok(p.decompose_decreasing()
            .map_err(|_| {
                Error::MalformedSquare(
                    "left edge is not a decreasing reflection word step".into(),
                )
            })?
            .into_iter()
            .collect())
    };
    let candidates: Vec<usize> = if has_x {
        if pi != sigma {
            return Err(Error::MalformedSquare(
                "marked square must have equal top corners".into(),
            ));
        }
        let i_set = decompose(&mu.compose(&pi.inverse()))?;
        complement(&i_set)
    } else {
        if pi == sigma {
            return Ok(mu.clone());
        }
        if pi == mu {
            return Ok(sigma.clone());
        }
        let t = sigma.compose(&pi.inverse());
        let (alpha, beta) = as_transposition(&t).ok_or_else(|| {
            Error::MalformedSquare("top edge is not a single transposition step".into())
        })?;
        if !(pi.inverse_apply(alpha) <= k && k < pi.inverse_apply(beta)) {
            return Err(Error::MalformedSquare(format!(
                "transposition ({alpha},{beta}) is not admissible at subscript {k}"
            )));
        }
        let i_set = decompose(&mu.compose(&pi.inverse()))?;
        let comp = complement(&i_set);
        let x = comp.iter().copied().find(|&v| alpha <= v && v < beta);
        let mut cand: Vec<usize> = comp.into_iter().filter(|&v| v >= beta).collect();
        if let Some(x) = x {
            cand.insert(0, x);
        }
        cand
    };
    for w in candidates.windows(2) {
        if mu.inverse_apply(w[0]) <= k && k < mu.inverse_apply(w[1]) {
            return Ok(mu.left_mul_t(w[0], w[1]));
        }
    }
    Err(Error::MalformedSquare(format!(
        "no admissible candidate pair at subscript {k}"
    )))
}

/// Fills the diagram by replaying the insertion chain of every
/// restricted subword.
pub fn growth_by_insertion(q: &Biword) -> Result<GrowthDiagram> {
    let a = q.max_a();
    let ell = q.len();
    let n = (q.max_k() + ell + 1).max(1);
    let mut cells = vec![vec![Permutation::identity(); ell + 1]; a + 1];
    for (i, row) in cells.iter_mut().enumerate() {
        let mut g = Grid::rothe(&Permutation::identity(), n)?;
        for (j, (aj, kj)) in q.letters().enumerate() {
            if aj > i {
                g = insert(&g, aj, kj)?.grid;
            }
            row[j + 1] = g.permutation()?;
        }
    }
    Ok(GrowthDiagram {
        a,
        ell,
        cells,
        col_sub: q.subs().to_vec(),
        x_rows: q.rows().to_vec(),
    })
}

/// Fills the diagram square by square with the local rule, top to
/// bottom, left to right.
pub fn growth_by_rules(q: &Biword) -> Result<GrowthDiagram> {
    let a = q.max_a();
    let ell = q.len();
    let mut cells = vec![vec![Permutation::identity(); ell + 1]; a + 1];
    for i in (1..=a).rev() {
        for j in 1..=ell {
            let rho = local_rule(
                &cells[i][j - 1],
                &cells[i - 1][j - 1],
                &cells[i][j],
                q.subs()[j - 1],
                q.rows()[j - 1] == i,
            )?;
            cells[i - 1][j] = rho;
        }
    }
    Ok(GrowthDiagram {
        a,
        ell,
        cells,
        col_sub: q.subs().to_vec(),
        x_rows: q.rows().to_vec(),
    })
}

impl GrowthDiagram {
    pub fn a(&self) -> usize {
        self.a
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Entry at threshold `i` (0 = bottom) and column `j`.
    pub fn cell(&self, i: usize, j: usize) -> &Permutation {
        &self.cells[i][j]
    }

    pub fn subs(&self) -> &[usize] {
        &self.col_sub
    }

    pub fn x_rows(&self) -> &[usize] {
        &self.x_rows
    }

    /// Re-derives every interior entry from the local rule and checks the
    /// boundary rows are identity.
    pub fn audit(&self) -> Result<()> {
        for i in 0..=self.a {
            if !self.cells[i][0].is_identity() {
                return Err(Error::InvariantBreach(format!(
                    "left edge at threshold {i} is not the identity"
                )));
            }
        }
        for j in 0..=self.ell {
            if !self.cells[self.a][j].is_identity() {
                return Err(Error::InvariantBreach(format!(
                    "top edge at column {j} is not the identity"
                )));
            }
        }
        for i in 1..=self.a {
            for j in 1..=self.ell {
                let rho = local_rule(
                    &self.cells[i][j - 1],
                    &self.cells[i - 1][j - 1],
                    &self.cells[i][j],
                    self.col_sub[j - 1],
                    self.x_rows[j - 1] == i,
                )?;
                if rho != self.cells[i - 1][j] {
                    return Err(Error::InvariantBreach(format!(
                        "square at threshold {i}, column {j} disagrees with the local rule"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The rightmost column from the identity at the top down to the full
    /// permutation at the bottom.
    pub fn rightmost_chain(&self) -> Vec<Permutation> {
        (0..=self.a)
            .rev()
            .map(|i| self.cells[i][self.ell].clone())
            .collect()
    }

    /// Reads the compatible sequence off the rightmost column and checks
    /// the four compatibility conditions.
    pub fn compatible_sequence(&self) -> Result<CompatibleSequence> {
        let mut a_seq = Vec::new();
        let mut r_seq = Vec::new();
        for i in 1..=self.a {
            let upper = &self.cells[i][self.ell];
            let lower = &self.cells[i - 1][self.ell];
            let block = lower.compose(&upper.inverse()).decompose_decreasing()?;
            for v in block {
                a_seq.push(v);
                r_seq.push(i);
            }
        }
        let bottom = &self.cells[0][self.ell];
        let prod = Permutation::product_of_simples(&a_seq);
        if prod != *bottom || a_seq.len() != bottom.length() {
            return Err(Error::InvariantBreach(
                "compatible word is not a reduced word for the bottom permutation".into(),
            ));
        }
        if r_seq.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvariantBreach(
                "compatible row word is not weakly increasing".into(),
            ));
        }
        if a_seq.iter().zip(&r_seq).any(|(&aj, &rj)| rj > aj) {
            return Err(Error::InvariantBreach(
                "compatible row word exceeds its letter".into(),
            ));
        }
        for j in 0..a_seq.len().saturating_sub(1) {
            if a_seq[j] < a_seq[j + 1] && r_seq[j] >= r_seq[j + 1] {
                return Err(Error::InvariantBreach(
                    "compatible row word fails to rise at an ascent".into(),
                ));
            }
        }
        Ok(CompatibleSequence { a_seq, r_seq })
    }

    /// Plain-text matrix: permutation rows top (identity) to bottom, with
    /// `x{k}` markers between the rows their biletters connect.
    pub fn render_ascii(&self) -> String {
        let n_pad = self
            .cells
            .iter()
            .flatten()
            .map(|p| p.degree())
            .max()
            .unwrap_or(1)
            .max(1);
        let show = |p: &Permutation| {
            let word = p.one_line_padded(n_pad);
            if n_pad <= 9 {
                word.iter().map(|v| v.to_string()).collect::<String>()
            } else {
                word.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        let w = show(&Permutation::identity()).len();
        let mut lines = Vec::new();
        for i in (0..=self.a).rev() {
            lines.push(
                self.cells[i]
                    .iter()
                    .map(|p| show(p))
                    .collect::<Vec<_>>()
                    .join("  "),
            );
            if i > 0 {
                let mut marker = String::new();
                for (j0, (&bj, &kj)) in self.x_rows.iter().zip(&self.col_sub).enumerate() {
                    if bj == i {
                        let offset = (j0 + 1) * (w + 2) - 2;
                        while marker.len() < offset {
                            marker.push(' ');
                        }
                        marker.push('x');
                        marker.push_str(&kj.to_string());
                    }
                }
                lines.push(marker);
            }
        }
        lines.join("\n")
    }

    /// Full JSON report: matrix (top to bottom), markers, chain,
    /// compatible sequence, and pipe dream.
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let cs = self.compatible_sequence()?;
        let pd = PipeDream::from_compatible(&cs);
        let pd_perm = pd.permutation()?;
        if pd_perm != self.cells[0][self.ell] {
            return Err(Error::InvariantBreach(
                "pipe dream wires do not realize the bottom permutation".into(),
            ));
        }
        let rows: Vec<Vec<String>> = (0..=self.a)
            .rev()
            .map(|i| self.cells[i].iter().map(|p| p.to_string()).collect())
            .collect();
        let chain: Vec<String> = self
            .rightmost_chain()
            .iter()
            .map(|p| p.to_string())
            .collect();
        Ok(json!({
            "a": self.a,
            "ell": self.ell,
            "cells": rows,
            "subs": self.col_sub,
            "xrows": self.x_rows,
            "chain": chain,
            "compatible": { "a": cs.a_seq, "r": cs.r_seq },
            "pipe_dream": pd.crosses.iter().map(|&(r, c)| vec![r, c]).collect::<Vec<_>>(),
        }))
    }
}

impl PipeDream {
    /// Crossing tiles `(r_j, a_j - r_j + 1)` of a compatible sequence.
    pub fn from_compatible(cs: &CompatibleSequence) -> PipeDream {
        let m = cs.a_seq.iter().copied().max().unwrap_or(0) + 1;
        let crosses = cs
            .a_seq
            .iter()
            .zip(&cs.r_seq)
            .map(|(&aj, &rj)| (rj, aj - rj + 1))
            .collect();
        PipeDream { m, crosses }
    }

    /// Traces the wires: wire `i` enters from the west in row `i` heading
    /// east, goes straight through crossings, turns at every other tile,
    /// and exits through the north edge in the column `π(i)`. Errors with
    /// `NotReduced` when the crossing count differs from the length of
    /// the traced permutation.
    pub fn permutation(&self) -> Result<Permutation> {
        let mut word = vec![0usize; self.m];
        for i in 1..=self.m {
            let (mut r, mut c) = (i, 0usize);
            let mut east = true;
            loop {
                if east {
                    c += 1;
                } else {
                    r -= 1;
                }
                if r == 0 {
                    break;
                }
                if c > 2 * self.m {
                    return Err(Error::InvariantBreach(format!(
                        "wire {i} escaped east of the staircase"
                    )));
                }
                if !self.crosses.contains(&(r, c)) {
                    east = !east;
                }
            }
            word[i - 1] = c;
        }
        let perm = Permutation::from_one_line(&word)
            .map_err(|_| Error::InvariantBreach("wires do not exit distinctly".into()))?;
        if perm.length() != self.crosses.len() {
            return Err(Error::NotReduced(format!(
                "{} crossings for a permutation of length {}",
                self.crosses.len(),
                perm.length()
            )));
        }
        Ok(perm)
    }
}
