//! Right insertion of a biletter into a bumpless pipe dream.
//!
//! `insert(d, b, k)` starts at the rightmost lower elbow of row `b` and
//! repeatedly min-droops, stepping left past freshly created upper elbows,
//! swapping a bump with the existing crossing of its two pipes when they
//! have already crossed, and re-drooping at a bump whose resident pipe
//! exits at row ≤ `k`. The terminal move replaces the final bump by a
//! crossing, raising the permutation's length by exactly one: the result
//! encodes `t_{αβ}·π` where `α < β` are the two pipes of that bump and
//! `π⁻¹(α) ≤ k < π⁻¹(β)`.
//!
//! The recorded [`InsertionPath`] follows the max-droop granularity: a
//! *max-droop* is a maximal run of same-column min-droops (each blank
//! landing inside the run steps left to the drooped pipe's fresh elbow in
//! the starting column), and the path lists the start cell followed by
//! each max-droop landing, swap return cell, and the terminal cell last.

use std::collections::BTreeSet;

use crate::bpd::{Cell, Component, Grid, Surgery, Tile};
use crate::error::{Error, Result};

/// One maximal same-column run of min-droops: the whole run droops a single
/// pipe, whose corner migrates from `start` to `landing`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxDroop {
    pub start: Cell,
    pub landing: Cell,
    /// The pipe whose corner the run moves.
    pub pipe: usize,
}

/// The recorded trajectory of one insertion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsertionPath {
    /// Start cell, then each max-droop landing / swap return, terminal last.
    pub cells: Vec<Cell>,
    /// Pipes moved by some max-droop.
    pub pipes_through: BTreeSet<usize>,
    /// The two pipes of the terminal bump, sorted; the result's permutation
    /// is `t_{crossed_pair}` times the input's.
    pub crossed_pair: (usize, usize),
    /// Where the terminal bump→crossing replacement happened.
    pub terminal_cell: Cell,
    /// Transcript of every max-droop in order.
    pub max_droops: Vec<MaxDroop>,
}

impl InsertionPath {
    /// All pipes the path goes through: max-drooped pipes plus the two
    /// pipes involved in the terminal move.
    pub fn goes_through(&self) -> BTreeSet<usize> {
        let mut s = self.pipes_through.clone();
        s.insert(self.crossed_pair.0);
        s.insert(self.crossed_pair.1);
        s
    }
}

#[derive(Debug, Clone)]
pub struct InsertionOutcome {
    pub grid: Grid,
    pub path: InsertionPath,
}

/// The minimal droop at `cell`, whose tile must hold a lower elbow: the
/// pipe's corner moves into the next column, landing on the first tile
/// below the corner's row that can receive it (a blank or a lower elbow),
/// passing over horizontal tiles on the way.
pub fn min_droop(d: &Grid, cell: Cell) -> Result<(Grid, Cell)> {
    let (i, j) = cell;
    if !d.in_bounds(cell) {
        return Err(Error::PreconditionViolated(format!(
            "droop cell ({i},{j}) out of bounds"
        )));
    }
    if !d.get(cell).has_component(Component::SE) {
        return Err(Error::PreconditionViolated(format!(
            "tile at ({i},{j}) has no lower elbow to droop"
        )));
    }
    if j + 1 > d.size() {
        return Err(Error::DroopBlocked {
            row: i,
            col: j,
            reason: "next column lies outside the grid".into(),
        });
    }
    let mut target = None;
    for r in i + 1..=d.size() {
        match d.get((r, j + 1)) {
            Tile::Horizontal => continue,
            Tile::Blank | Tile::LowerElbow => {
                target = Some(r);
                break;
            }
            other => {
                return Err(Error::DroopBlocked {
                    row: i,
                    col: j,
                    reason: format!("column {} blocked by {other:?} at row {r}", j + 1),
                })
            }
        }
    }
    let Some(i2) = target else {
        return Err(Error::DroopBlocked {
            row: i,
            col: j,
            reason: format!("no landing tile in column {} below row {i}", j + 1),
        });
    };
    match d.get((i2, j)) {
        Tile::Cross | Tile::Bump => {
            return Err(Error::DroopBlocked {
                row: i,
                col: j,
                reason: format!("turning cell ({i2},{j}) already carries two pipes"),
            })
        }
        _ => {}
    }
    let s = d.droop_surgery(i, j, i2)?;
    let g = d.with_surgery(&s)?;
    Ok((g, (i2, j + 1)))
}

/// Exchanges a bump with the unique crossing of its two pipes; returns the
/// new grid and the cell where the crossing used to be (now the bump).
pub fn cross_bump_swap(d: &Grid, cell: Cell) -> Result<(Grid, Cell)> {
    if !d.in_bounds(cell) || d.get(cell) != Tile::Bump {
        return Err(Error::PreconditionViolated(format!(
            "no bump at ({},{})",
            cell.0, cell.1
        )));
    }
    let occ = d.occupancy()?;
    let p = *occ.get(&(cell, Component::SE)).ok_or_else(|| {
        Error::InvalidGrid(format!("bump at ({},{}) not traced", cell.0, cell.1))
    })?;
    let q = *occ.get(&(cell, Component::WN)).ok_or_else(|| {
        Error::InvalidGrid(format!("bump at ({},{}) not traced", cell.0, cell.1))
    })?;
    let cx = d
        .crossing_cell(p, q)?
        .ok_or(Error::NotCrossed { a: p.min(q), b: p.max(q) })?;
    let mut s = Surgery::new();
    s.delete(cell, Component::SE);
    s.delete(cell, Component::WN);
    s.insert(cell, Component::WE);
    s.insert(cell, Component::NS);
    s.delete(cx, Component::WE);
    s.delete(cx, Component::NS);
    s.insert(cx, Component::SE);
    s.insert(cx, Component::WN);
    let g = d.with_surgery(&s)?;
    Ok((g, cx))
}

fn se_pipe(g: &Grid, cell: Cell) -> Result<usize> {
    g.occupancy()?
        .get(&(cell, Component::SE))
        .copied()
        .ok_or_else(|| {
            Error::InvariantBreach(format!(
                "no pipe enters ({},{}) from the south",
                cell.0, cell.1
            ))
        })
}

/// Inserts the biletter `(b, k)` into `d`. Requires `1 ≤ b ≤ k` and, when
/// the permutation has a descent, `k` at most the first descent. The grid
/// is enlarged as needed; results at different ambient sizes agree up to
/// trailing identity pipes.
pub fn insert(d: &Grid, b: usize, k: usize) -> Result<InsertionOutcome> {
    if b == 0 || b > k {
        return Err(Error::PreconditionViolated(format!(
            "biletter ({b},{k}) needs 1 ≤ {b} ≤ {k}"
        )));
    }
    d.validate_strict()?;
    let pi = d.permutation()?;
    if let Some(fd) = pi.first_descent() {
        if k > fd {
            return Err(Error::PreconditionViolated(format!(
                "subscript {k} exceeds the first descent {fd}"
            )));
        }
    }
    let needed = d.size().max(pi.degree() + 2).max(k + 2);
    let mut g = if d.size() < needed { d.embed(needed) } else { d.clone() };

    let start_col = (1..=g.size())
        .rev()
        .find(|&c| g.get((b, c)) == Tile::LowerElbow)
        .ok_or_else(|| Error::InvariantBreach(format!("row {b} holds no lower elbow")))?;
    let start = (b, start_col);

    let mut path = vec![start];
    let mut max_droops: Vec<MaxDroop> = Vec::new();
    let mut pipes_through: BTreeSet<usize> = BTreeSet::new();
    let mut cur = start;
    let (crossed_pair, terminal_cell) = 'outer: loop {
        let run_start = cur;
        let run_col = cur.1;
        let pipe = se_pipe(&g, cur)?;
        // One max-droop: min-droops in the same column until a bump landing
        // or a column break.
        let (landing, column_break) = loop {
            let (g2, land) = min_droop(&g, cur)?;
            g = g2;
            if g.get(land) == Tile::UpperElbow {
                // Blank landing: step left to the rightmost lower elbow.
                let tgt_col = (1..land.1)
                    .rev()
                    .find(|&c| g.get((land.0, c)) == Tile::LowerElbow)
                    .ok_or_else(|| {
                        Error::InvariantBreach(format!(
                            "no lower elbow left of ({},{})",
                            land.0, land.1
                        ))
                    })?;
                let tgt = (land.0, tgt_col);
                if tgt_col == run_col {
                    cur = tgt;
                    continue;
                }
                break (land, Some(tgt));
            }
            break (land, None);
        };
        max_droops.push(MaxDroop { start: run_start, landing, pipe });
        pipes_through.insert(pipe);
        path.push(landing);
        if let Some(tgt) = column_break {
            path.push(tgt);
            cur = tgt;
            continue 'outer;
        }
        // `landing` is a bump.
        let occ = g.occupancy()?;
        let bp = *occ.get(&(landing, Component::SE)).unwrap();
        let bq = *occ.get(&(landing, Component::WN)).unwrap();
        if g.pipes_cross(bp, bq)? {
            let (g2, cx) = cross_bump_swap(&g, landing)?;
            g = g2;
            path.push(cx);
            cur = cx;
            continue 'outer;
        }
        if g.trace_pipe(bp)?.exit_row <= k {
            cur = landing;
            continue 'outer;
        }
        // Terminal move: the bump becomes a crossing.
        let mut s = Surgery::new();
        s.delete(landing, Component::SE);
        s.delete(landing, Component::WN);
        s.insert(landing, Component::WE);
        s.insert(landing, Component::NS);
        g.apply_surgery(&s)?;
        break (( bp.min(bq), bp.max(bq) ), landing);
    };

    g.validate_strict()?;
    let sigma = g.permutation()?;
    let (alpha, beta) = crossed_pair;
    if sigma != pi.left_mul_t(alpha, beta) || sigma.length() != pi.length() + 1 {
        return Err(Error::InvariantBreach(format!(
            "insertion produced {sigma}, expected t_{{{alpha},{beta}}}·{pi} one longer"
        )));
    }
    if !(pi.inverse_apply(alpha) <= k && k < pi.inverse_apply(beta)) {
        return Err(Error::InvariantBreach(format!(
            "crossed pair ({alpha},{beta}) violates the subscript window at k={k}"
        )));
    }
    Ok(InsertionOutcome {
        grid: g,
        path: InsertionPath {
            cells: path,
            pipes_through,
            crossed_pair,
            terminal_cell,
            max_droops,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn id_grid(n: usize) -> Grid {
        Grid::rothe(&Permutation::identity(), n).unwrap()
    }

    #[test]
    fn min_droop_on_identity_corner() {
        let g = id_grid(5);
        let (d, land) = min_droop(&g, (1, 1)).unwrap();
        assert_eq!(land, (2, 2));
        assert_eq!(d.get((1, 1)), Tile::Blank);
        assert_eq!(d.get((2, 1)), Tile::LowerElbow);
        assert_eq!(d.get((2, 2)), Tile::Bump);
        assert_eq!(d.get((1, 2)), Tile::LowerElbow);
    }

    #[test]
    fn min_droop_passes_horizontals_and_lands_deep() {
        // Drooping at (3,4) scans column 5 past the horizontal at (4,5)
        // and lands on the lower elbow at (5,5), producing a bump there.
        let g = Grid::rothe(&perm("12435"), 5).unwrap();
        assert_eq!(
            g,
            Grid::from_rows(&["r----", "|r---", "||.r-", "||r+-", "||||r"]).unwrap()
        );
        let (d, land) = min_droop(&g, (3, 4)).unwrap();
        assert_eq!(land, (5, 5));
        assert_eq!(
            d,
            Grid::from_rows(&["r----", "|r---", "||..r", "||r-+", "|||rb"]).unwrap()
        );
    }

    #[test]
    fn min_droop_error_classes() {
        let g = id_grid(3);
        assert!(matches!(
            min_droop(&g, (2, 1)),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            min_droop(&g, (3, 3)),
            Err(Error::DroopBlocked { .. })
        ));
        // Next column outside the grid.
        let g21 = Grid::rothe(&perm("21"), 2).unwrap();
        assert!(matches!(
            min_droop(&g21, (1, 2)),
            Err(Error::DroopBlocked { .. })
        ));
        // Column blocked by a vertical below the corner.
        let g5 = Grid::rothe(&perm("12435"), 5).unwrap();
        assert!(matches!(
            min_droop(&g5, (4, 3)),
            Err(Error::DroopBlocked { .. })
        ));
    }

    #[test]
    fn swap_exchanges_bump_and_crossing() {
        let g = Grid::from_rows(&[".r---", ".|r--", "r+jr-", "||r+-", "||||r"]).unwrap();
        let (d, land) = min_droop(&g, (1, 2)).unwrap();
        assert_eq!(land, (2, 3));
        assert_eq!(
            d,
            Grid::from_rows(&["..r--", ".rb--", "r+jr-", "||r+-", "||||r"]).unwrap()
        );
        // The bump carries pipes 1 and 2, which already cross at (3,2).
        let (s, cx) = cross_bump_swap(&d, (2, 3)).unwrap();
        assert_eq!(cx, (3, 2));
        assert_eq!(
            s,
            Grid::from_rows(&["..r--", ".r+--", "rbjr-", "||r+-", "||||r"]).unwrap()
        );
        // Swapping back restores the grid exactly.
        let (s2, cx2) = cross_bump_swap(&s, (3, 2)).unwrap();
        assert_eq!(cx2, (2, 3));
        assert_eq!(s2, d);
    }

    #[test]
    fn swap_requires_crossed_pipes() {
        let g = id_grid(4);
        let (d, land) = min_droop(&g, (1, 1)).unwrap();
        assert_eq!(
            cross_bump_swap(&d, land),
            Err(Error::NotCrossed { a: 1, b: 2 })
        );
        assert!(matches!(
            cross_bump_swap(&g, (1, 1)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn insert_simple_reflections_into_identity() {
        for k in 1..=4usize {
            for b in 1..=k {
                let out = insert(&id_grid(6), b, k).unwrap();
                assert_eq!(
                    out.grid.permutation().unwrap(),
                    Permutation::simple(k),
                    "insert ({b},{k})"
                );
                assert_eq!(out.path.crossed_pair, (k, k + 1));
            }
        }
    }

    #[test]
    fn insert_first_worked_chain_step() {
        let out = insert(&id_grid(5), 1, 3).unwrap();
        assert_eq!(out.grid.permutation().unwrap(), perm("12435"));
        assert_eq!(out.path.cells, vec![(1, 1), (2, 2), (3, 3), (4, 4)]);
        assert_eq!(out.path.terminal_cell, (4, 4));
        assert_eq!(out.path.crossed_pair, (3, 4));
        let pipes: Vec<usize> = out.path.pipes_through.iter().copied().collect();
        assert_eq!(pipes, vec![1, 2, 3]);
        assert_eq!(out.path.max_droops.len(), 3);
        assert_eq!(out.path.max_droops[0].start, (1, 1));
        assert_eq!(out.path.max_droops[0].landing, (2, 2));
        assert_eq!(out.path.max_droops[2].pipe, 3);
        let gt: Vec<usize> = out.path.goes_through().into_iter().collect();
        assert_eq!(gt, vec![1, 2, 3, 4]);
    }

    #[test]
    fn insert_with_swap_branch() {
        // A length-2 grid of 21435 holding both elbow kinds; inserting
        // (1,1) swaps the first bump with the existing crossing of pipes
        // 1 and 2 before re-drooping.
        let d = Grid::from_rows(&[".r---", ".|r--", "r+jr-", "||r+-", "||||r"]).unwrap();
        let out = insert(&d, 1, 1).unwrap();
        assert_eq!(out.grid.permutation().unwrap(), perm("31425"));
        assert_eq!(out.path.cells, vec![(1, 2), (2, 3), (3, 2), (4, 3)]);
        assert_eq!(out.path.crossed_pair, (2, 3));
        let pipes: Vec<usize> = out.path.pipes_through.iter().copied().collect();
        assert_eq!(pipes, vec![2]);
        assert_eq!(out.path.max_droops.len(), 2);
        assert!(out
            .grid
            .canonical_eq(&Grid::from_rows(&["..r--", ".r+--", "rj|r-", "|r++-", "||||r"]).unwrap()));
    }

    #[test]
    fn insert_worked_example_chain() {
        // The five-letter worked chain: permutations after each insert.
        let letters = [(1usize, 3usize), (3, 3), (1, 2), (2, 2), (1, 1)];
        let expect = ["12435", "12534", "13524", "15324", "25314"];
        let mut g = id_grid(9);
        for (step, ((b, k), want)) in letters.iter().zip(expect.iter()).enumerate() {
            let out = insert(&g, *b, *k).unwrap();
            g = out.grid;
            assert_eq!(g.permutation().unwrap(), perm(want), "step {step}");
        }
        assert!(g.canonical_eq(
            &Grid::from_rows(&[
                "...r--",
                ".r-jr-",
                ".|r-+-",
                "r++-+-",
                "|||r+-",
                "|||||r"
            ])
            .unwrap()
        ));
    }

    #[test]
    fn insert_is_ambient_stable() {
        let letters = [(1usize, 3usize), (3, 3), (1, 2), (2, 2), (1, 1)];
        let mut small = id_grid(6);
        let mut large = id_grid(11);
        for (b, k) in letters {
            small = insert(&small, b, k).unwrap().grid;
            large = insert(&large, b, k).unwrap().grid;
        }
        assert!(small.canonical_eq(&large));
    }

    #[test]
    fn insert_preconditions() {
        let g = id_grid(5);
        assert!(matches!(
            insert(&g, 2, 1),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            insert(&g, 0, 1),
            Err(Error::PreconditionViolated(_))
        ));
        // First descent of 12435 is 3: k = 4 is rejected.
        let d = insert(&g, 1, 3).unwrap().grid;
        assert!(matches!(
            insert(&d, 1, 4),
            Err(Error::PreconditionViolated(_))
        ));
        // k = first descent is allowed.
        insert(&d, 1, 3).unwrap();
    }

    #[test]
    fn insert_grows_the_ambient_grid() {
        let out = insert(&id_grid(2), 1, 4).unwrap();
        assert!(out.grid.size() >= 6);
        assert_eq!(out.grid.permutation().unwrap(), Permutation::simple(4));
    }
}
