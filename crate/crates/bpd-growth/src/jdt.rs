//! Jeu de taquin on bumpless pipe dreams, its inverse, and rectification.
//!
//! A forward step (`jdt_step`) marks the rightmost blank of the topmost
//! row containing blanks and repeatedly slides it east past blanks, then
//! either un-droops the pipe just right of the mark (when that pipe is
//! not the one labelled by the next column) or un-crosses the two pipes
//! labelled by the mark's column and its successor — the terminating
//! move. The step removes exactly one blank and turns the permutation
//! `π` into `s_a·π` of length one less, where the step *pops* the pair
//! `(a, r)`: `a` the terminal column, `r` the starting row.
//!
//! `rect` applies forward steps until the first blank row is cleared,
//! checking every pop starts on that row; `reversed_jdt` is the exact
//! inverse of a forward step, parameterised by the popped pair.

use crate::bpd::{Cell, Component, Grid, Surgery, Tile};
use crate::error::{Error, Result};

/// Result of one forward slide: grid, popped biletter `(a, r)`, and the
/// cells the mark visited in order.
#[derive(Debug, Clone)]
pub struct JdtOutcome {
    pub grid: Grid,
    pub pop: (usize, usize),
    pub path: Vec<Cell>,
}

/// Result of rectification: the slid grid, the decreasing reflection
/// word carrying the input permutation to the output one, and each
/// step's pop in order.
#[derive(Debug, Clone)]
pub struct RectOutcome {
    pub grid: Grid,
    pub i_set: Vec<usize>,
    pub pops: Vec<(usize, usize)>,
}

/// Result of one reversed slide: grid and the mark's cells in order.
#[derive(Debug, Clone)]
pub struct ReversedJdtOutcome {
    pub grid: Grid,
    pub path: Vec<Cell>,
}

/// Row of the upward turn (west–north elbow) of `pipe` in `col`.
fn wn_row(g: &Grid, pipe: usize, col: usize) -> Result<usize> {
    g.trace_pipe(pipe)?
        .cells
        .iter()
        .find(|(cell, comp)| *comp == Component::WN && cell.1 == col)
        .map(|(cell, _)| cell.0)
        .ok_or_else(|| {
            Error::InvariantBreach(format!(
                "pipe {pipe} makes no upward turn in column {col}"
            ))
        })
}

/// Row of the unique eastward turn (south–east elbow) of `pipe` in `col`,
/// optionally restricted to rows strictly above `below`.
fn se_row(g: &Grid, pipe: usize, col: usize, below: Option<usize>) -> Result<usize> {
    let rows: Vec<usize> = g
        .trace_pipe(pipe)?
        .cells
        .iter()
        .filter(|(cell, comp)| {
            *comp == Component::SE && cell.1 == col && below.map_or(true, |b| cell.0 < b)
        })
        .map(|(cell, _)| cell.0)
        .collect();
    if rows.len() != 1 {
        return Err(Error::InvariantBreach(format!(
            "pipe {pipe} should turn east exactly once in column {col}, found {}",
            rows.len()
        )));
    }
    Ok(rows[0])
}

/// Surgeries relocating every elbow pipe obstructing an un-droop: each
/// lower elbow at `(z, col)` for `z` in `lo..hi` is drooped so its detour
/// moves from column `col` into column `col+1`.
fn clearing_droops(g: &Grid, lo: usize, hi: usize, col: usize) -> Result<Surgery> {
    let mut s = Surgery::new();
    for z in lo..hi {
        if g.get((z, col)) == Tile::LowerElbow {
            let q = g.pipe_through((z, col))?;
            let zq = wn_row(g, q, col)?;
            if zq <= z {
                return Err(Error::InvariantBreach(format!(
                    "pipe {q} turns upward at row {zq}, not below its corner row {z}"
                )));
            }
            s.extend(g.droop_surgery(z, col, zq)?);
        }
    }
    Ok(s)
}

/// Surgeries relocating every elbow pipe obstructing a droop: each lower
/// elbow at `(z, col)` for `z` in `lo..hi` is un-drooped so its detour
/// moves from column `col` into column `col-1`.
fn clearing_undroops(g: &Grid, lo: usize, hi: usize, col: usize) -> Result<Surgery> {
    let mut s = Surgery::new();
    for z in lo..hi {
        if g.get((z, col)) == Tile::LowerElbow {
            let q = g.pipe_through((z, col))?;
            let zq = wn_row(g, q, col)?;
            if zq <= z {
                return Err(Error::InvariantBreach(format!(
                    "pipe {q} turns upward at row {zq}, not below its corner row {z}"
                )));
            }
            s.extend(g.undroop_surgery(z, col - 1, zq)?);
        }
    }
    Ok(s)
}

/// One forward jeu-de-taquin step.
pub fn jdt_step(d: &Grid) -> Result<JdtOutcome> {
    d.validate_strict()?;
    let pi = d.permutation()?;
    let r0 = d.first_blank_row().ok_or(Error::NoBlank)?;
    let mut g = d.clone();
    let mut x = r0;
    let mut y = *g
        .blanks_in_row(r0)
        .first()
        .ok_or_else(|| Error::InvariantBreach("blank row without blanks".into()))?;
    let mut path = vec![(x, y)];
    let pop_col = loop {
        while y < g.size() && g.get((x, y + 1)) == Tile::Blank {
            y += 1;
            path.push((x, y));
        }
        if y == g.size() {
            return Err(Error::InvariantBreach(
                "mark slid into the east column".into(),
            ));
        }
        let p = g.pipe_through((x, y + 1))?;
        if p == y + 1 {
            // Terminating move: un-cross pipes y and y+1.
            let cx = g
                .crossing_cell(y, y + 1)?
                .ok_or(Error::NotCrossed { a: y, b: y + 1 })?;
            if cx.1 != y + 1 || cx.0 <= x {
                return Err(Error::InvariantBreach(format!(
                    "crossing of pipes {y} and {} at ({},{}) is not below-right of the mark",
                    y + 1,
                    cx.0,
                    cx.1
                )));
            }
            let mut s1 = Surgery::new();
            s1.delete(cx, Component::WE);
            s1.delete(cx, Component::NS);
            s1.insert(cx, Component::SE);
            s1.insert(cx, Component::WN);
            g.apply_surgery(&s1)?;
            let mut s2 = clearing_droops(&g, x + 1, cx.0, y)?;
            s2.extend(g.undroop_surgery(x, y, cx.0)?);
            g.apply_surgery(&s2)?;
            break y;
        }
        // Un-droop p: its upward turn in column y+1 rises to the mark.
        let xp = wn_row(&g, p, y + 1)?;
        if xp <= x {
            return Err(Error::InvariantBreach(format!(
                "pipe {p} turns upward at row {xp}, not below the mark row {x}"
            )));
        }
        let mut s = clearing_droops(&g, x + 1, xp, y)?;
        s.extend(g.undroop_surgery(x, y, xp)?);
        g.apply_surgery(&s)?;
        x = xp;
        y += 1;
        path.push((x, y));
    };
    g.validate_strict()?;
    let sigma = g.permutation()?;
    if sigma != pi.left_mul_simple(pop_col)
        || sigma.length() + 1 != pi.length()
        || g.count(Tile::Blank) + 1 != d.count(Tile::Blank)
    {
        return Err(Error::InvariantBreach(format!(
            "slide produced {sigma} from {pi}, expected s_{pop_col} times it, one shorter"
        )));
    }
    Ok(JdtOutcome {
        grid: g,
        pop: (pop_col, r0),
        path,
    })
}

/// Slides until the topmost blank row is cleared; every pop must start
/// on that row. The returned word `i_set` is the decreasing reflection
/// word with `input = s_{i_1}·…·s_{i_c}·output`.
pub fn rect(d: &Grid) -> Result<RectOutcome> {
    d.validate_strict()?;
    let Some(b) = d.first_blank_row() else {
        return Ok(RectOutcome {
            grid: d.clone(),
            i_set: vec![],
            pops: vec![],
        });
    };
    let mu = d.permutation()?;
    let c = d.blanks_in_row(b).len();
    let mut g = d.clone();
    let mut pops = Vec::with_capacity(c);
    for _ in 0..c {
        let out = jdt_step(&g)?;
        if out.pop.1 != b {
            return Err(Error::AssertStartRow {
                expected: b,
                got: out.pop.1,
            });
        }
        pops.push(out.pop);
        g = out.grid;
    }
    let pi_out = g.permutation()?;
    let i_set = mu.compose(&pi_out.inverse()).decompose_decreasing()?;
    Ok(RectOutcome {
        grid: g,
        i_set,
        pops,
    })
}

/// One reversed jeu-de-taquin step for the popped pair `(a, r)`: the
/// exact inverse of the forward step that pops `(a, r)`.
pub fn reversed_jdt(d: &Grid, r: usize, a: usize) -> Result<ReversedJdtOutcome> {
    d.validate_strict()?;
    let pi = d.permutation()?;
    if a == 0 || a + 1 > d.size() {
        return Err(Error::PreconditionViolated(format!(
            "column pair ({a},{}) does not fit the grid",
            a + 1
        )));
    }
    if pi.has_left_descent(a) {
        return Err(Error::PreconditionViolated(format!(
            "s_{a} already shortens {pi} on the left"
        )));
    }
    let mut g = d.clone();
    // Cross pipes a and a+1 at the corner of pipe a+1.
    let x0 = se_row(&g, a, a, None)?;
    let xp = se_row(&g, a + 1, a + 1, None)?;
    if xp <= x0 {
        return Err(Error::InvariantBreach(format!(
            "corner of pipe {} at row {xp} is not below the corner of pipe {a} at row {x0}",
            a + 1
        )));
    }
    let mut s = clearing_undroops(&g, x0 + 1, xp, a + 1)?;
    s.extend(g.droop_surgery(x0, a, xp)?);
    g.apply_surgery(&s)?;
    let bump = (xp, a + 1);
    if g.get(bump) != Tile::Bump {
        return Err(Error::InvariantBreach(format!(
            "expected a bump at ({xp},{})",
            a + 1
        )));
    }
    let mut s2 = Surgery::new();
    s2.delete(bump, Component::SE);
    s2.delete(bump, Component::WN);
    s2.insert(bump, Component::WE);
    s2.insert(bump, Component::NS);
    g.apply_surgery(&s2)?;

    let (mut x, mut y) = (x0, a);
    let mut path = vec![(x, y)];
    loop {
        if x <= r {
            break;
        }
        while y > 1 && g.get((x, y - 1)) == Tile::Blank {
            y -= 1;
            path.push((x, y));
        }
        if y == 1 {
            return Err(Error::Failed(
                "mark reached column 1 before rising to the target row".into(),
            ));
        }
        // Droop the pipe just left of the mark down onto the mark.
        let p = g.pipe_through((x, y - 1))?;
        let xq = se_row(&g, p, y - 1, Some(x))?;
        let mut s = clearing_undroops(&g, xq + 1, x, y)?;
        s.extend(g.droop_surgery(xq, y - 1, x)?);
        g.apply_surgery(&s)?;
        x = xq;
        y -= 1;
        path.push((x, y));
    }
    g.validate_strict()?;
    let sigma = g.permutation()?;
    if sigma != pi.left_mul_simple(a)
        || sigma.length() != pi.length() + 1
        || g.count(Tile::Blank) != d.count(Tile::Blank) + 1
    {
        return Err(Error::InvariantBreach(format!(
            "reversed slide produced {sigma} from {pi}, expected s_{a} times it, one longer"
        )));
    }
    Ok(ReversedJdtOutcome { grid: g, path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn worked_grid() -> Grid {
        Grid::from_rows(&[
            "...r--",
            ".r-jr-",
            ".|r-+-",
            "r++-+-",
            "|||r+-",
            "|||||r",
        ])
        .unwrap()
    }

    fn worked_grid_slid_once() -> Grid {
        Grid::from_rows(&[
            "..r---",
            ".rjr--",
            ".|r+--",
            "r+++--",
            "||||r-",
            "|||||r",
        ])
        .unwrap()
    }

    #[test]
    fn slide_worked_example() {
        let d = worked_grid();
        assert_eq!(d.permutation().unwrap(), perm("25314"));
        let out = jdt_step(&d).unwrap();
        assert_eq!(out.grid, worked_grid_slid_once());
        assert_eq!(out.grid.permutation().unwrap(), perm("24315"));
        assert_eq!(out.pop, (4, 1));
        assert_eq!(out.path, vec![(1, 3), (2, 4)]);
    }

    #[test]
    fn slide_chain_to_rectification() {
        let s1 = jdt_step(&worked_grid()).unwrap();
        let s2 = jdt_step(&s1.grid).unwrap();
        assert_eq!(s2.pop, (3, 1));
        assert_eq!(
            s2.grid,
            Grid::from_rows(&[
                ".r----",
                ".|r---",
                ".||r--",
                "r+++--",
                "||||r-",
                "|||||r",
            ])
            .unwrap()
        );
        assert_eq!(s2.grid.permutation().unwrap(), perm("23415"));
        let s3 = jdt_step(&s2.grid).unwrap();
        assert_eq!(s3.pop, (1, 1));
        assert_eq!(s3.path, vec![(1, 1)]);
        assert_eq!(
            s3.grid,
            Grid::from_rows(&[
                "r-----",
                "|.r---",
                "|.|r--",
                "|r++--",
                "||||r-",
                "|||||r",
            ])
            .unwrap()
        );
        assert_eq!(s3.grid.permutation().unwrap(), perm("13425"));
    }

    #[test]
    fn rect_worked_example() {
        let out = rect(&worked_grid()).unwrap();
        assert_eq!(out.pops, vec![(4, 1), (3, 1), (1, 1)]);
        assert_eq!(out.i_set, vec![4, 3, 1]);
        assert_eq!(
            out.grid,
            Grid::from_rows(&[
                "r-----",
                "|.r---",
                "|.|r--",
                "|r++--",
                "||||r-",
                "|||||r",
            ])
            .unwrap()
        );
    }

    #[test]
    fn rect_without_blanks_is_identity_on_the_grid() {
        let g = Grid::rothe(&Permutation::identity(), 4).unwrap();
        let out = rect(&g).unwrap();
        assert_eq!(out.grid, g);
        assert!(out.i_set.is_empty());
        assert!(out.pops.is_empty());
    }

    #[test]
    fn slide_requires_a_blank() {
        let g = Grid::rothe(&Permutation::identity(), 3).unwrap();
        assert!(matches!(jdt_step(&g), Err(Error::NoBlank)));
    }

    #[test]
    fn slide_two_by_two() {
        let g = Grid::rothe(&perm("21"), 2).unwrap();
        let out = jdt_step(&g).unwrap();
        assert_eq!(out.grid, Grid::rothe(&Permutation::identity(), 2).unwrap());
        assert_eq!(out.pop, (1, 1));
        assert_eq!(out.path, vec![(1, 1)]);
    }

    #[test]
    fn reversed_slide_two_by_two() {
        let g = Grid::rothe(&Permutation::identity(), 2).unwrap();
        let out = reversed_jdt(&g, 1, 1).unwrap();
        assert_eq!(out.grid, Grid::rothe(&perm("21"), 2).unwrap());
        assert_eq!(out.path, vec![(1, 1)]);
    }

    #[test]
    fn reversed_slide_worked_example() {
        let out = reversed_jdt(&worked_grid_slid_once(), 1, 4).unwrap();
        assert_eq!(out.grid, worked_grid());
        assert_eq!(out.path, vec![(2, 4), (1, 3)]);
    }

    #[test]
    fn reversed_slide_preconditions() {
        let g = Grid::rothe(&perm("21"), 2).unwrap();
        assert!(matches!(
            reversed_jdt(&g, 1, 1),
            Err(Error::PreconditionViolated(_))
        ));
        let id5 = Grid::rothe(&Permutation::identity(), 5).unwrap();
        assert!(matches!(
            reversed_jdt(&id5, 1, 5),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            reversed_jdt(&id5, 1, 0),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn reversed_slide_inverts_every_forward_slide() {
        let mut g = worked_grid();
        while g.first_blank_row().is_some() {
            let fwd = jdt_step(&g).unwrap();
            let back = reversed_jdt(&fwd.grid, fwd.pop.1, fwd.pop.0).unwrap();
            assert_eq!(back.grid, g);
            let mut rev = fwd.path.clone();
            rev.reverse();
            assert_eq!(back.path, rev);
            g = fwd.grid;
        }
        // Each slide removes one blank and one unit of length.
        assert!(g.permutation().unwrap().is_identity());
    }
}
