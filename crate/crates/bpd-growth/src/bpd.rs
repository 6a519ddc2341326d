//! Bumpless pipe dream grids.
//!
//! An `n×n` [`Grid`] of [`Tile`]s in which `n` pipes enter at the south edge
//! (one per column), flow monotonically up/right, and exit at the east edge
//! (one per row). The pipe entering at column `c` is *labeled* `c`; the grid
//! encodes the permutation `π` with `π(exit row) = entry column`.
//!
//! Each tile is a set of *connection components*, each joining two sides of
//! the cell. The seven legal tiles are Blank `{}`, Horizontal `{W–E}`,
//! Vertical `{N–S}`, Cross `{W–E, N–S}`, the lower elbow `{S–E}`, the upper
//! elbow `{W–N}`, and the transient Bump `{S–E, W–N}` that appears
//! mid-insertion and mid-slide.
//!
//! All structural edits go through [`Surgery`]: a transactional batch of
//! component deletions and insertions applied deletes-first, so composite
//! moves (slides that reroute several pipes at once) can pass through
//! intermediate states that are not legal tiles cell-by-cell. The two edit
//! tables [`Grid::droop_surgery`] and [`Grid::undroop_surgery`] — moving a
//! pipe's corner down-right, resp. back up-left — are shared by insertion,
//! jeu de taquin, and the reversed slide.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// A cell address `(row, column)`, both 1-based; row 1 is the top row.
pub type Cell = (usize, usize);

/// One side of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    North,
    South,
    East,
    West,
}

/// A connection component inside a tile, joining two sides. Components are
/// oriented by the global flow (south/west in, north/east out).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Component {
    /// Vertical segment `N–S`: enters south, leaves north.
    NS,
    /// Horizontal segment `W–E`: enters west, leaves east.
    WE,
    /// Lower elbow `S–E` (rendered `r`): enters south, leaves east.
    SE,
    /// Upper elbow `W–N` (rendered `j`): enters west, leaves north.
    WN,
}

impl Component {
    /// The side through which a pipe enters this component.
    pub fn entry(self) -> Side {
        match self {
            Component::NS | Component::SE => Side::South,
            Component::WE | Component::WN => Side::West,
        }
    }

    /// The side through which a pipe leaves this component.
    pub fn exit(self) -> Side {
        match self {
            Component::NS | Component::WN => Side::North,
            Component::WE | Component::SE => Side::East,
        }
    }

    pub fn uses(self, side: Side) -> bool {
        self.entry() == side || self.exit() == side
    }
}

/// One of the seven legal tiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tile {
    Blank,
    Horizontal,
    Vertical,
    Cross,
    /// Lower elbow `{S–E}`, ASCII `r`.
    LowerElbow,
    /// Upper elbow `{W–N}`, ASCII `j`.
    UpperElbow,
    /// Two osculating elbows `{S–E, W–N}`, ASCII `b`; transient only.
    Bump,
}

impl Tile {
    pub const ALL: [Tile; 7] = [
        Tile::Blank,
        Tile::Horizontal,
        Tile::Vertical,
        Tile::Cross,
        Tile::LowerElbow,
        Tile::UpperElbow,
        Tile::Bump,
    ];

    /// The connection components this tile holds.
    pub fn components(self) -> &'static [Component] {
        match self {
            Tile::Blank => &[],
            Tile::Horizontal => &[Component::WE],
            Tile::Vertical => &[Component::NS],
            Tile::Cross => &[Component::WE, Component::NS],
            Tile::LowerElbow => &[Component::SE],
            Tile::UpperElbow => &[Component::WN],
            Tile::Bump => &[Component::SE, Component::WN],
        }
    }

    /// Reassembles a tile from a component set; errors on the nine illegal
    /// combinations (any set in which one side is used twice).
    pub fn from_components(set: &BTreeSet<Component>) -> Result<Tile> {
        for t in Tile::ALL {
            let cs: BTreeSet<Component> = t.components().iter().copied().collect();
            if cs == *set {
                return Ok(t);
            }
        }
        Err(Error::InvalidGrid(format!(
            "component set {set:?} is not a legal tile"
        )))
    }

    pub fn has_component(self, c: Component) -> bool {
        self.components().contains(&c)
    }

    pub fn has_side(self, s: Side) -> bool {
        self.components().iter().any(|c| c.uses(s))
    }

    /// The component of this tile entered through `side`, if any.
    pub fn component_entered_from(self, side: Side) -> Option<Component> {
        self.components().iter().copied().find(|c| c.entry() == side)
    }

    pub fn to_char(self) -> char {
        match self {
            Tile::Blank => '.',
            Tile::Horizontal => '-',
            Tile::Vertical => '|',
            Tile::Cross => '+',
            Tile::LowerElbow => 'r',
            Tile::UpperElbow => 'j',
            Tile::Bump => 'b',
        }
    }

    pub fn from_char(ch: char) -> Result<Tile> {
        Ok(match ch {
            '.' => Tile::Blank,
            '-' => Tile::Horizontal,
            '|' => Tile::Vertical,
            '+' => Tile::Cross,
            'r' => Tile::LowerElbow,
            'j' => Tile::UpperElbow,
            'b' => Tile::Bump,
            other => return Err(Error::Parse(format!("unknown tile character {other:?}"))),
        })
    }
}

/// A transactional batch of component edits: all deletes are applied before
/// all inserts, and every touched cell must end as a legal tile. Failing
/// surgeries leave the grid untouched.
#[derive(Debug, Clone, Default)]
pub struct Surgery {
    pub deletes: Vec<(Cell, Component)>,
    pub inserts: Vec<(Cell, Component)>,
}

impl Surgery {
    pub fn new() -> Self {
        Surgery::default()
    }

    pub fn delete(&mut self, cell: Cell, c: Component) {
        self.deletes.push((cell, c));
    }

    pub fn insert(&mut self, cell: Cell, c: Component) {
        self.inserts.push((cell, c));
    }

    /// Concatenates another surgery into this one (same transaction).
    pub fn extend(&mut self, other: Surgery) {
        self.deletes.extend(other.deletes);
        self.inserts.extend(other.inserts);
    }
}

/// One pipe's walk from its south entry to its east exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipeTrace {
    /// Entry column; also the pipe's label.
    pub entry_col: usize,
    /// Row of the east-edge exit.
    pub exit_row: usize,
    /// Every `(cell, component)` the pipe occupies, in flow order.
    pub cells: Vec<(Cell, Component)>,
}

/// A square grid of tiles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    n: usize,
    tiles: Vec<Tile>,
}

impl Grid {
    /// An all-blank grid; useful only as a builder substrate.
    fn blank(n: usize) -> Grid {
        assert!(n >= 1, "grids have side length at least 1");
        Grid {
            n,
            tiles: vec![Tile::Blank; n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn idx(&self, cell: Cell) -> usize {
        let (r, c) = cell;
        assert!(
            (1..=self.n).contains(&r) && (1..=self.n).contains(&c),
            "cell ({r},{c}) out of bounds for grid of size {}",
            self.n
        );
        (r - 1) * self.n + (c - 1)
    }

    pub fn get(&self, cell: Cell) -> Tile {
        self.tiles[self.idx(cell)]
    }

    pub fn set(&mut self, cell: Cell, t: Tile) {
        let i = self.idx(cell);
        self.tiles[i] = t;
    }

    pub fn in_bounds(&self, cell: Cell) -> bool {
        (1..=self.n).contains(&cell.0) && (1..=self.n).contains(&cell.1)
    }

    /// The grid of a permutation in which every pipe takes its highest
    /// possible route: pipe `c` runs straight up column `c` to the row `r`
    /// it exits from (`π(r) = c`), turns east once, and runs to the east
    /// edge; co-occupations are crossings and untouched cells stay blank.
    pub fn rothe(p: &Permutation, n: usize) -> Result<Grid> {
        if n < p.degree() || n == 0 {
            return Err(Error::SizeTooSmall {
                needed: p.degree().max(1),
                got: n,
            });
        }
        let mut g = Grid::blank(n);
        for i in 1..=n {
            for j in 1..=n {
                let t = if j == p.apply(i) {
                    Tile::LowerElbow
                } else {
                    match (j > p.apply(i), i > p.inverse_apply(j)) {
                        (true, true) => Tile::Cross,
                        (true, false) => Tile::Horizontal,
                        (false, true) => Tile::Vertical,
                        (false, false) => Tile::Blank,
                    }
                };
                g.set((i, j), t);
            }
        }
        Ok(g)
    }

    /// Parses an ASCII rendering: one row per line, one character per tile
    /// (whitespace inside lines is ignored). Checks boundary/matching
    /// validity, reporting problems as parse errors.
    pub fn parse(s: &str) -> Result<Grid> {
        let rows: Vec<Vec<char>> = s
            .lines()
            .map(|l| l.chars().filter(|c| !c.is_whitespace()).collect())
            .filter(|l: &Vec<char>| !l.is_empty())
            .collect();
        if rows.is_empty() {
            return Err(Error::Parse("empty grid".into()));
        }
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse(format!(
                "grid must be square; expected {n} tiles per row"
            )));
        }
        let mut g = Grid::blank(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &ch) in row.iter().enumerate() {
                g.set((i + 1, j + 1), Tile::from_char(ch)?);
            }
        }
        g.validate_matching()
            .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(g)
    }

    /// Convenience constructor from row strings (used heavily in tests).
    pub fn from_rows(rows: &[&str]) -> Result<Grid> {
        Grid::parse(&rows.join("\n"))
    }

    /// ASCII rendering, one row per line.
    pub fn render(&self) -> String {
        let mut out = String::with_capacity(self.n * (self.n + 1));
        for r in 1..=self.n {
            for c in 1..=self.n {
                out.push(self.get((r, c)).to_char());
            }
            if r < self.n {
                out.push('\n');
            }
        }
        out
    }

    /// Boundary and matching validity (both strict and transient grids):
    /// every S/E arm on the south/east edge is fine, no N arm in row 1, no
    /// W arm in column 1, every bottom tile has an S arm, every east-column
    /// tile has an E arm, and adjacent tiles agree across every inner edge.
    pub fn validate_matching(&self) -> Result<()> {
        let n = self.n;
        for r in 1..=n {
            for c in 1..=n {
                let t = self.get((r, c));
                if r == 1 && t.has_side(Side::North) {
                    return Err(Error::InvalidGrid(format!(
                        "tile at ({r},{c}) opens through the north edge"
                    )));
                }
                if c == 1 && t.has_side(Side::West) {
                    return Err(Error::InvalidGrid(format!(
                        "tile at ({r},{c}) opens through the west edge"
                    )));
                }
                if r == n && !t.has_side(Side::South) {
                    return Err(Error::InvalidGrid(format!(
                        "bottom tile at ({r},{c}) has no south entry"
                    )));
                }
                if c == n && !t.has_side(Side::East) {
                    return Err(Error::InvalidGrid(format!(
                        "east tile at ({r},{c}) has no east exit"
                    )));
                }
                if r < n {
                    let below = self.get((r + 1, c));
                    if t.has_side(Side::South) != below.has_side(Side::North) {
                        return Err(Error::InvalidGrid(format!(
                            "mismatched edge between ({r},{c}) and ({},{c})",
                            r + 1
                        )));
                    }
                }
                if c < n {
                    let east = self.get((r, c + 1));
                    if t.has_side(Side::East) != east.has_side(Side::West) {
                        return Err(Error::InvalidGrid(format!(
                            "mismatched edge between ({r},{c}) and ({r},{})",
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Full validity for a finished grid: matching, no bump tiles, the
    /// permutation well-defined, `#Cross = #Blank = ℓ(π)`, and no pair of
    /// pipes crossing twice.
    pub fn validate_strict(&self) -> Result<()> {
        self.validate_matching()?;
        if self.count(Tile::Bump) > 0 {
            return Err(Error::InvalidGrid(
                "finished grid contains a bump tile".into(),
            ));
        }
        let p = self.permutation()?;
        let len = p.length();
        let crosses = self.count(Tile::Cross);
        let blanks = self.count(Tile::Blank);
        if crosses != len || blanks != len {
            return Err(Error::InvalidGrid(format!(
                "counts disagree: {crosses} crossings, {blanks} blanks, length {len}"
            )));
        }
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (pair, _) in self.crossings()? {
            if !seen.insert(pair) {
                return Err(Error::NotReduced(format!(
                    "pipes {} and {} cross more than once",
                    pair.0, pair.1
                )));
            }
        }
        Ok(())
    }

    pub fn count(&self, t: Tile) -> usize {
        self.tiles.iter().filter(|&&x| x == t).count()
    }

    /// Walks the pipe entering at the south edge of column `p`.
    pub fn trace_pipe(&self, p: usize) -> Result<PipeTrace> {
        if p == 0 || p > self.n {
            return Err(Error::PreconditionViolated(format!(
                "pipe {p} out of range 1..={}",
                self.n
            )));
        }
        let mut cells = Vec::new();
        let mut r = self.n;
        let mut c = p;
        let mut from = Side::South;
        loop {
            if r == 0 {
                return Err(Error::InvalidGrid(format!(
                    "pipe {p} escaped through the north edge at column {c}"
                )));
            }
            let tile = self.get((r, c));
            let comp = tile.component_entered_from(from).ok_or_else(|| {
                Error::InvalidGrid(format!(
                    "pipe {p} hit ({r},{c}) from {from:?} but the tile has no matching arm"
                ))
            })?;
            cells.push(((r, c), comp));
            match comp.exit() {
                Side::North => {
                    r -= 1;
                    from = Side::South;
                }
                Side::East => {
                    if c == self.n {
                        return Ok(PipeTrace {
                            entry_col: p,
                            exit_row: r,
                            cells,
                        });
                    }
                    c += 1;
                    from = Side::West;
                }
                _ => unreachable!("components exit north or east"),
            }
        }
    }

    pub fn traces(&self) -> Result<Vec<PipeTrace>> {
        (1..=self.n).map(|p| self.trace_pipe(p)).collect()
    }

    /// The permutation encoded by the grid: `π(exit row) = entry column`.
    pub fn permutation(&self) -> Result<Permutation> {
        let mut word = vec![0usize; self.n];
        for t in self.traces()? {
            if word[t.exit_row - 1] != 0 {
                return Err(Error::InvalidGrid(format!(
                    "two pipes exit at row {}",
                    t.exit_row
                )));
            }
            word[t.exit_row - 1] = t.entry_col;
        }
        Permutation::from_one_line(&word)
            .map_err(|e| Error::InvalidGrid(format!("exit map is not a bijection: {e}")))
    }

    /// Map from `(cell, component)` to the label of the pipe occupying it.
    pub fn occupancy(&self) -> Result<BTreeMap<(Cell, Component), usize>> {
        let mut map = BTreeMap::new();
        for t in self.traces()? {
            for &(cell, comp) in &t.cells {
                map.insert((cell, comp), t.entry_col);
            }
        }
        Ok(map)
    }

    /// The unique pipe passing through a one-pipe cell; errors on blanks and
    /// on two-pipe tiles (crossings and bumps).
    pub fn pipe_through(&self, cell: Cell) -> Result<usize> {
        let tile = self.get(cell);
        let comps = tile.components();
        if comps.len() != 1 {
            return Err(Error::InvalidGrid(format!(
                "expected exactly one pipe at ({},{}), found tile {:?}",
                cell.0, cell.1, tile
            )));
        }
        let occ = self.occupancy()?;
        occ.get(&(cell, comps[0])).copied().ok_or_else(|| {
            Error::InvalidGrid(format!("no pipe traced through ({},{})", cell.0, cell.1))
        })
    }

    /// All crossing incidences: for each Cross tile, the sorted pair of pipe
    /// labels meeting there.
    pub fn crossings(&self) -> Result<Vec<((usize, usize), Cell)>> {
        let occ = self.occupancy()?;
        let mut out = Vec::new();
        for r in 1..=self.n {
            for c in 1..=self.n {
                if self.get((r, c)) == Tile::Cross {
                    let v = occ.get(&(((r, c)), Component::NS)).copied();
                    let h = occ.get(&(((r, c)), Component::WE)).copied();
                    match (v, h) {
                        (Some(a), Some(b)) => {
                            out.push(((a.min(b), a.max(b)), (r, c)));
                        }
                        _ => {
                            return Err(Error::InvalidGrid(format!(
                                "crossing at ({r},{c}) not covered by pipe traces"
                            )))
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether pipes `p` and `q` share a Cross tile.
    pub fn pipes_cross(&self, p: usize, q: usize) -> Result<bool> {
        Ok(!self.crossing_cells(p, q)?.is_empty())
    }

    /// All cells where pipes `p` and `q` cross (at most one on a reduced grid).
    pub fn crossing_cells(&self, p: usize, q: usize) -> Result<Vec<Cell>> {
        let key = (p.min(q), p.max(q));
        Ok(self
            .crossings()?
            .into_iter()
            .filter(|(pair, _)| *pair == key)
            .map(|(_, cell)| cell)
            .collect())
    }

    /// The unique crossing cell of `p` and `q`, if they cross exactly once.
    pub fn crossing_cell(&self, p: usize, q: usize) -> Result<Option<Cell>> {
        let cells = self.crossing_cells(p, q)?;
        match cells.len() {
            0 => Ok(None),
            1 => Ok(Some(cells[0])),
            _ => Err(Error::NotReduced(format!(
                "pipes {p} and {q} cross {} times",
                cells.len()
            ))),
        }
    }

    /// Smallest row index containing a blank, if any.
    pub fn first_blank_row(&self) -> Option<usize> {
        (1..=self.n).find(|&r| (1..=self.n).any(|c| self.get((r, c)) == Tile::Blank))
    }

    /// Columns of the blanks in row `r`, listed right-to-left.
    pub fn blanks_in_row(&self, r: usize) -> Vec<usize> {
        (1..=self.n)
            .rev()
            .filter(|&c| self.get((r, c)) == Tile::Blank)
            .collect()
    }

    /// Applies a surgery transactionally; on error the grid is unchanged.
    pub fn apply_surgery(&mut self, s: &Surgery) -> Result<()> {
        let mut touched: BTreeMap<Cell, BTreeSet<Component>> = BTreeMap::new();
        let load = |g: &Grid, cell: Cell| -> BTreeSet<Component> {
            g.get(cell).components().iter().copied().collect()
        };
        for &(cell, comp) in &s.deletes {
            if !self.in_bounds(cell) {
                return Err(Error::InvalidGrid(format!(
                    "surgery delete out of bounds at ({},{})",
                    cell.0, cell.1
                )));
            }
            let set = touched.entry(cell).or_insert_with(|| load(self, cell));
            if !set.remove(&comp) {
                return Err(Error::InvalidGrid(format!(
                    "surgery deletes absent component {comp:?} at ({},{})",
                    cell.0, cell.1
                )));
            }
        }
        for &(cell, comp) in &s.inserts {
            if !self.in_bounds(cell) {
                return Err(Error::InvalidGrid(format!(
                    "surgery insert out of bounds at ({},{})",
                    cell.0, cell.1
                )));
            }
            let set = touched.entry(cell).or_insert_with(|| load(self, cell));
            if !set.insert(comp) {
                return Err(Error::InvalidGrid(format!(
                    "surgery inserts duplicate component {comp:?} at ({},{})",
                    cell.0, cell.1
                )));
            }
        }
        let mut new_tiles = Vec::with_capacity(touched.len());
        for (cell, set) in &touched {
            new_tiles.push((*cell, Tile::from_components(set)?));
        }
        for (cell, t) in new_tiles {
            self.set(cell, t);
        }
        Ok(())
    }

    /// Returns a copy with the surgery applied.
    pub fn with_surgery(&self, s: &Surgery) -> Result<Grid> {
        let mut g = self.clone();
        g.apply_surgery(s)?;
        Ok(g)
    }

    /// Connection edits moving a pipe's corner from `(i,j)` down to
    /// `(i2,j+1)`: the pipe keeps its column-`j` run only below row `i2`,
    /// jogs east at row `i2`, runs up column `j+1`, and rejoins its old
    /// route at `(i,j+1)`. Component choices at the two rerouting cells are
    /// read from the current tiles; the caller owns legality of the rest.
    pub fn droop_surgery(&self, i: usize, j: usize, i2: usize) -> Result<Surgery> {
        assert!(i < i2, "droop target row must lie below the corner");
        let mut s = Surgery::new();
        s.delete((i, j), Component::SE);
        for r in i + 1..i2 {
            s.delete((r, j), Component::NS);
        }
        // Turn the pipe's north arm at (i2,j) into an east arm.
        let t = self.get((i2, j));
        if t.has_component(Component::NS) {
            s.delete((i2, j), Component::NS);
            s.insert((i2, j), Component::SE);
        } else if t.has_component(Component::WN) {
            s.delete((i2, j), Component::WN);
            s.insert((i2, j), Component::WE);
        } else {
            return Err(Error::InvalidGrid(format!(
                "no north arm to redirect at ({i2},{j})"
            )));
        }
        s.insert((i2, j + 1), Component::WN);
        for r in i + 1..i2 {
            s.insert((r, j + 1), Component::NS);
        }
        // Turn the pipe's west arm at (i,j+1) into a south arm.
        let t = self.get((i, j + 1));
        if t.has_component(Component::WE) {
            s.delete((i, j + 1), Component::WE);
            s.insert((i, j + 1), Component::SE);
        } else if t.has_component(Component::WN) {
            s.delete((i, j + 1), Component::WN);
            s.insert((i, j + 1), Component::NS);
        } else {
            return Err(Error::InvalidGrid(format!(
                "no west arm to redirect at ({i},{})",
                j + 1
            )));
        }
        Ok(s)
    }

    /// Exact inverse of [`Grid::droop_surgery`]: moves a corner from
    /// `(i2,j+1)` back up to `(i,j)`.
    pub fn undroop_surgery(&self, i: usize, j: usize, i2: usize) -> Result<Surgery> {
        assert!(i < i2, "undroop source row must lie below the corner");
        let mut s = Surgery::new();
        s.insert((i, j), Component::SE);
        for r in i + 1..i2 {
            s.insert((r, j), Component::NS);
        }
        // Turn the pipe's east arm at (i2,j) back into a north arm.
        let t = self.get((i2, j));
        if t.has_component(Component::SE) {
            s.delete((i2, j), Component::SE);
            s.insert((i2, j), Component::NS);
        } else if t.has_component(Component::WE) {
            s.delete((i2, j), Component::WE);
            s.insert((i2, j), Component::WN);
        } else {
            return Err(Error::InvalidGrid(format!(
                "no east arm to redirect at ({i2},{j})"
            )));
        }
        s.delete((i2, j + 1), Component::WN);
        for r in i + 1..i2 {
            s.delete((r, j + 1), Component::NS);
        }
        // Turn the pipe's south arm at (i,j+1) back into a west arm.
        let t = self.get((i, j + 1));
        if t.has_component(Component::SE) {
            s.delete((i, j + 1), Component::SE);
            s.insert((i, j + 1), Component::WE);
        } else if t.has_component(Component::NS) {
            s.delete((i, j + 1), Component::NS);
            s.insert((i, j + 1), Component::WN);
        } else {
            return Err(Error::InvalidGrid(format!(
                "no south arm to redirect at ({i},{})",
                j + 1
            )));
        }
        Ok(s)
    }

    /// Embeds into a larger ambient size by appending identity pipes: new
    /// cells hold the diagonal elbow pattern (elbow on the diagonal,
    /// horizontals east of old rows, verticals south of old columns).
    pub fn embed(&self, m: usize) -> Grid {
        assert!(m >= self.n, "embed target must not shrink the grid");
        let mut g = Grid::blank(m);
        for r in 1..=m {
            for c in 1..=m {
                let t = if r <= self.n && c <= self.n {
                    self.get((r, c))
                } else if r == c {
                    Tile::LowerElbow
                } else if r > c {
                    Tile::Vertical
                } else {
                    Tile::Horizontal
                };
                g.set((r, c), t);
            }
        }
        g
    }

    /// Strips trailing identity pipes: while the last row/column form the
    /// identity pattern (elbow at the corner, verticals across the bottom,
    /// horizontals down the east column), shrink by one. Grids that differ
    /// only by ambient size have equal canonical forms.
    pub fn canonical(&self) -> Grid {
        let mut n = self.n;
        while n > 1 {
            let corner_ok = self.get((n, n)) == Tile::LowerElbow;
            let row_ok = (1..n).all(|c| self.get((n, c)) == Tile::Vertical);
            let col_ok = (1..n).all(|r| self.get((r, n)) == Tile::Horizontal);
            if corner_ok && row_ok && col_ok {
                n -= 1;
            } else {
                break;
            }
        }
        if n == self.n {
            return self.clone();
        }
        let mut g = Grid::blank(n);
        for r in 1..=n {
            for c in 1..=n {
                g.set((r, c), self.get((r, c)));
            }
        }
        g
    }

    /// Equality up to ambient size.
    pub fn canonical_eq(&self, other: &Grid) -> bool {
        self.canonical() == other.canonical()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Serialize, Deserialize)]
struct GridRepr {
    n: usize,
    rows: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    perm: Option<String>,
}

impl Serialize for Grid {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = GridRepr {
            n: self.n,
            rows: self.render().lines().map(str::to_owned).collect(),
            perm: self.permutation().ok().map(|p| p.to_string()),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Grid, D::Error> {
        let repr = GridRepr::deserialize(deserializer)?;
        let g = Grid::parse(&repr.rows.join("\n")).map_err(D::Error::custom)?;
        if g.size() != repr.n {
            return Err(D::Error::custom(format!(
                "declared size {} does not match {} rows",
                repr.n,
                g.size()
            )));
        }
        Ok(g)
    }
}
