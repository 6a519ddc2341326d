//! Plactic biwords, their bumpless-pipe-dream images, and Knuth moves.
//!
//! A plactic biword is a two-row array of biletters `(a_i, k_i)` with
//! `1 ≤ a_i ≤ k_i` and the subscripts `k_i` weakly decreasing. Its image
//! `φ` is the grid obtained by right-inserting the biletters in order
//! into an identity grid. Generalized Knuth moves connect biwords with
//! the same image; `knuth_class` explores that graph breadth-first.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bpd::Grid;
use crate::error::{Error, Result};
use crate::insertion::insert;
use crate::perm::Permutation;

/// A plactic biword. The two rows are kept in insertion order; the
/// invariants (`1 ≤ a_i ≤ k_i`, `k` weakly decreasing) hold at all times.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "BiwordRepr", into = "BiwordRepr")]
pub struct Biword {
    a: Vec<usize>,
    k: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct BiwordRepr {
    a: Vec<usize>,
    k: Vec<usize>,
}

impl TryFrom<BiwordRepr> for Biword {
    type Error = Error;
    fn try_from(r: BiwordRepr) -> Result<Self> {
        Biword::new(r.a, r.k)
    }
}

impl From<Biword> for BiwordRepr {
    fn from(b: Biword) -> Self {
        BiwordRepr { a: b.a, k: b.k }
    }
}

/// One generalized Knuth move, tagged by its rule number and the
/// 0-based index of the leftmost biletter of its window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum KnuthMove {
    /// Swap the last two row letters of three biletters sharing a subscript.
    Rule1(usize),
    /// Swap the first two row letters of three biletters sharing a subscript.
    Rule2(usize),
    /// Shift the first subscript of a weakly increasing pair.
    Rule3(usize),
    /// Shift the second subscript of a strictly decreasing pair.
    Rule4(usize),
}

impl fmt::Display for KnuthMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnuthMove::Rule1(i) => write!(f, "rule 1 at {}", i + 1),
            KnuthMove::Rule2(i) => write!(f, "rule 2 at {}", i + 1),
            KnuthMove::Rule3(i) => write!(f, "rule 3 at {}", i + 1),
            KnuthMove::Rule4(i) => write!(f, "rule 4 at {}", i + 1),
        }
    }
}

impl Biword {
    pub fn new(a: Vec<usize>, k: Vec<usize>) -> Result<Self> {
        if a.len() != k.len() {
            return Err(Error::InvalidBiword(format!(
                "row lengths differ: {} vs {}",
                a.len(),
                k.len()
            )));
        }
        for (i, (&ai, &ki)) in a.iter().zip(&k).enumerate() {
            if ai == 0 || ai > ki {
                return Err(Error::InvalidBiword(format!(
                    "biletter {} is ({ai},{ki}); need 1 ≤ {ai} ≤ {ki}",
                    i + 1
                )));
            }
        }
        if k.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidBiword(
                "subscripts must be weakly decreasing".into(),
            ));
        }
        Ok(Biword { a, k })
    }

    pub fn empty() -> Self {
        Biword {
            a: vec![],
            k: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Row letters `a_1, …, a_ℓ`.
    pub fn rows(&self) -> &[usize] {
        &self.a
    }

    /// Subscripts `k_1, …, k_ℓ`.
    pub fn subs(&self) -> &[usize] {
        &self.k
    }

    pub fn letters(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.a.iter().copied().zip(self.k.iter().copied())
    }

    /// Largest subscript (the first one), 0 when empty.
    pub fn max_k(&self) -> usize {
        self.k.first().copied().unwrap_or(0)
    }

    /// Largest row letter, 0 when empty.
    pub fn max_a(&self) -> usize {
        self.a.iter().copied().max().unwrap_or(0)
    }

    /// The sub-biword of biletters with row letter exceeding `i`.
    pub fn restrict_gt(&self, i: usize) -> Biword {
        let mut a = Vec::new();
        let mut k = Vec::new();
        for (ai, ki) in self.letters() {
            if ai > i {
                a.push(ai);
                k.push(ki);
            }
        }
        Biword { a, k }
    }

    /// `"a1,…,aℓ/k1,…,kℓ"`; the empty biword is `"/"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (top, bot) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("biword {s:?} lacks a '/'")))?;
        let parse_row = |row: &str| -> Result<Vec<usize>> {
            let row = row.trim();
            if row.is_empty() {
                return Ok(vec![]);
            }
            row.split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad biword letter {t:?}")))
                })
                .collect()
        };
        Biword::new(parse_row(top)?, parse_row(bot)?)
    }

    /// Image of the biword: right-insert every biletter in order into an
    /// identity grid large enough for the whole word.
    pub fn phi(&self) -> Result<Grid> {
        let n = (self.max_k() + self.len() + 1).max(1);
        let mut g = Grid::rothe(&Permutation::identity(), n)?;
        for (a, k) in self.letters() {
            g = insert(&g, a, k)?.grid;
        }
        Ok(g)
    }

    /// Every biword one generalized Knuth move away, with the move.
    pub fn knuth_neighbors(&self) -> Vec<(Biword, KnuthMove)> {
        let mut out = Vec::new();
        let n = self.len();
        // Rules 1 and 2 rearrange three consecutive row letters whose
        // biletters share a subscript.
        for i in 0..n.saturating_sub(2) {
            if !(self.k[i] == self.k[i + 1] && self.k[i + 1] == self.k[i + 2]) {
                continue;
            }
            let (w0, w1, w2) = (self.a[i], self.a[i + 1], self.a[i + 2]);
            if (w1 < w0 && w0 <= w2) || (w2 < w0 && w0 <= w1) {
                let mut a = self.a.clone();
                a.swap(i + 1, i + 2);
                if let Ok(b) = Biword::new(a, self.k.clone()) {
                    out.push((b, KnuthMove::Rule1(i)));
                }
            }
            if (w0 <= w2 && w2 < w1) || (w1 <= w2 && w2 < w0) {
                let mut a = self.a.clone();
                a.swap(i, i + 1);
                if let Ok(b) = Biword::new(a, self.k.clone()) {
                    out.push((b, KnuthMove::Rule2(i)));
                }
            }
        }
        // Rules 3 and 4 shift one subscript of a consecutive pair.
        for i in 0..n.saturating_sub(1) {
            let (a0, a1) = (self.a[i], self.a[i + 1]);
            let (k0, k1) = (self.k[i], self.k[i + 1]);
            if a0 <= a1 {
                if k0 == k1 {
                    let mut k = self.k.clone();
                    k[i] = k1 + 1;
                    if let Ok(b) = Biword::new(self.a.clone(), k) {
                        out.push((b, KnuthMove::Rule3(i)));
                    }
                }
                if k0 == k1 + 1 {
                    let mut k = self.k.clone();
                    k[i] = k1;
                    if let Ok(b) = Biword::new(self.a.clone(), k) {
                        out.push((b, KnuthMove::Rule3(i)));
                    }
                }
            } else {
                if k0 == k1 {
                    let mut k = self.k.clone();
                    k[i + 1] = k1 - 1;
                    if let Ok(b) = Biword::new(self.a.clone(), k) {
                        out.push((b, KnuthMove::Rule4(i)));
                    }
                }
                if k0 == k1 + 1 {
                    let mut k = self.k.clone();
                    k[i + 1] = k0;
                    if let Ok(b) = Biword::new(self.a.clone(), k) {
                        out.push((b, KnuthMove::Rule4(i)));
                    }
                }
            }
        }
        out
    }

    /// Breadth-first closure under Knuth moves, discarding words whose
    /// largest subscript exceeds `k_cap`. Errors once more than
    /// `max_states` words have been collected.
    pub fn knuth_class(&self, k_cap: usize, max_states: usize) -> Result<BTreeSet<Biword>> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        if self.max_k() <= k_cap {
            seen.insert(self.clone());
            queue.push_back(self.clone());
        }
        while let Some(q) = queue.pop_front() {
            for (nb, _) in q.knuth_neighbors() {
                if nb.max_k() > k_cap || seen.contains(&nb) {
                    continue;
                }
                if seen.len() >= max_states {
                    return Err(Error::BoundExceeded(format!(
                        "Knuth class grew past {max_states} words"
                    )));
                }
                seen.insert(nb.clone());
                queue.push_back(nb);
            }
        }
        Ok(seen)
    }
}

impl fmt::Display for Biword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{}/{}", join(&self.a), join(&self.k))
    }
}

/// Whether two biwords are connected by generalized Knuth moves. The
/// search allows subscripts up to one past the larger endpoint subscript.
pub fn knuth_connected(q1: &Biword, q2: &Biword, max_states: usize) -> Result<bool> {
    if q1.len() != q2.len() {
        return Ok(false);
    }
    let sorted = |q: &Biword| {
        let mut v = q.rows().to_vec();
        v.sort_unstable();
        v
    };
    if sorted(q1) != sorted(q2) {
        return Ok(false);
    }
    if q1 == q2 {
        return Ok(true);
    }
    let cap = q1.max_k().max(q2.max_k()) + 1;
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(q1.clone());
    queue.push_back(q1.clone());
    while let Some(q) = queue.pop_front() {
        for (nb, _) in q.knuth_neighbors() {
            if nb.max_k() > cap || seen.contains(&nb) {
                continue;
            }
            if nb == *q2 {
                return Ok(true);
            }
            if seen.len() >= max_states {
                return Err(Error::BoundExceeded(format!(
                    "connectivity search grew past {max_states} words"
                )));
            }
            seen.insert(nb.clone());
            queue.push_back(nb);
        }
    }
    Ok(false)
}

/// All nonempty plactic biwords with at most `max_len` biletters and
/// subscripts at most `max_k`, in a fixed deterministic order.
pub fn enumerate_plactic(max_k: usize, max_len: usize) -> Vec<Biword> {
    fn go(
        a: &mut Vec<usize>,
        k: &mut Vec<usize>,
        max_k: usize,
        max_len: usize,
        out: &mut Vec<Biword>,
    ) {
        if !a.is_empty() {
            out.push(Biword {
                a: a.clone(),
                k: k.clone(),
            });
        }
        if a.len() == max_len {
            return;
        }
        let cap = k.last().copied().unwrap_or(max_k);
        for kk in 1..=cap {
            for aa in 1..=kk {
                a.push(aa);
                k.push(kk);
                go(a, k, max_k, max_len, out);
                a.pop();
                k.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![], &mut vec![], max_k, max_len, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bw(s: &str) -> Biword {
        Biword::parse(s).unwrap()
    }

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["1,3,1,2,1/3,3,2,2,1", "1/1", "/", "3,2/3,2"] {
            let b = bw(s);
            assert_eq!(b.to_string(), s);
            assert_eq!(Biword::parse(&b.to_string()).unwrap(), b);
        }
        assert!(Biword::parse("1,2/1").is_err());
        assert!(Biword::parse("2/1").is_err());
        assert!(Biword::parse("1,1/1,2").is_err());
        assert!(Biword::parse("0/1").is_err());
        assert!(Biword::parse("11").is_err());
    }

    #[test]
    fn restriction_drops_small_row_letters() {
        let g = bw("1,3,1,2,1/3,3,2,2,1");
        assert_eq!(g.restrict_gt(1), bw("3,2/3,2"));
        assert_eq!(g.restrict_gt(0), g);
        assert_eq!(g.restrict_gt(g.max_a()), Biword::empty());
    }

    #[test]
    fn image_of_the_worked_biword() {
        let g = bw("1,3,1,2,1/3,3,2,2,1").phi().unwrap();
        assert_eq!(g.permutation().unwrap(), Permutation::parse("25314").unwrap());
        assert!(g.canonical_eq(
            &Grid::from_rows(&[
                "...r--",
                ".r-jr-",
                ".|r-+-",
                "r++-+-",
                "|||r+-",
                "|||||r",
            ])
            .unwrap()
        ));
    }

    #[test]
    fn image_of_the_empty_biword() {
        let g = Biword::empty().phi().unwrap();
        assert!(g.permutation().unwrap().is_identity());
    }

    #[test]
    fn knuth_moves_are_involutive() {
        for q in enumerate_plactic(3, 4) {
            for (nb, _) in q.knuth_neighbors() {
                assert!(
                    nb.knuth_neighbors().iter().any(|(b, _)| *b == q),
                    "move from {q} to {nb} has no inverse"
                );
            }
        }
    }

    #[test]
    fn rule_one_example() {
        let q = bw("2,1,2/3,3,3");
        let moved: Vec<Biword> = q
            .knuth_neighbors()
            .into_iter()
            .filter(|(_, m)| matches!(m, KnuthMove::Rule1(_)))
            .map(|(b, _)| b)
            .collect();
        assert!(moved.contains(&bw("2,2,1/3,3,3")));
    }

    #[test]
    fn rule_four_example() {
        let q = bw("1,3,2/3,3,3");
        let moved: Vec<Biword> = q
            .knuth_neighbors()
            .into_iter()
            .filter(|(_, m)| matches!(m, KnuthMove::Rule4(_)))
            .map(|(b, _)| b)
            .collect();
        assert!(moved.contains(&bw("1,3,2/3,3,2")));
    }

    #[test]
    fn connectivity_examples() {
        assert!(knuth_connected(&bw("1,3,2/3,3,3"), &bw("1,3,2/3,3,2"), 100_000).unwrap());
        assert!(!knuth_connected(&bw("1,2/3,3"), &bw("1,2/3,2"), 100_000).unwrap());
        assert!(knuth_connected(&bw("1/1"), &bw("1/1"), 10).unwrap());
        // Different row multisets are rejected without a search.
        assert!(!knuth_connected(&bw("1/1"), &bw("2/2"), 10).unwrap());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_plactic(1, 1).len(), 1);
        assert_eq!(enumerate_plactic(2, 2).len(), 10);
        assert_eq!(enumerate_plactic(3, 4).len(), 422);
        assert_eq!(enumerate_plactic(4, 6).len(), 44_001);
    }

    #[test]
    fn enumeration_is_deterministic_and_valid() {
        let a = enumerate_plactic(3, 3);
        let b = enumerate_plactic(3, 3);
        assert_eq!(a, b);
        let set: BTreeSet<_> = a.iter().cloned().collect();
        assert_eq!(set.len(), a.len());
        for q in &a {
            assert!(!q.is_empty());
            assert!(q.max_k() <= 3 && q.len() <= 3);
            // Re-validation succeeds: invariants hold.
            Biword::new(q.rows().to_vec(), q.subs().to_vec()).unwrap();
        }
    }

    #[test]
    fn class_bound_is_enforced() {
        let q = bw("1,3,2/3,3,3");
        assert!(matches!(
            q.knuth_class(4, 2),
            Err(Error::BoundExceeded(_))
        ));
        let class = q.knuth_class(4, 100_000).unwrap();
        assert!(class.contains(&q));
        assert!(class.contains(&bw("1,3,2/3,3,2")));
    }
}
