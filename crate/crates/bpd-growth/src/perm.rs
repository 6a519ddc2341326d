//! Permutations of the positive integers with finite support.
//!
//! A [`Permutation`] is stored as a canonical one-line word: the images of
//! `1..=degree`, where `degree` is the largest non-fixed point (0 for the
//! identity). All operations treat the permutation as acting on every
//! positive integer, fixing everything beyond its degree, so values from
//! grids of different ambient sizes compare equal when they should.
//!
//! Products are function composition: `(a * b)(x) = a(b(x))`, so in a word
//! `s_{j_1} s_{j_2} ⋯ s_{j_ℓ}` the rightmost factor acts first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `{1, 2, 3, …}` fixing all but finitely many points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    /// Canonical one-line word: `word[i]` is the image of `i+1`, and the
    /// last entry is never a fixed point.
    word: Vec<usize>,
}

impl Permutation {
    /// The identity permutation.
    pub fn identity() -> Self {
        Permutation { word: Vec::new() }
    }

    /// Builds a permutation from a one-line word (images of `1..=n`).
    /// Trailing fixed points are stripped.
    pub fn from_one_line(word: &[usize]) -> Result<Self> {
        let n = word.len();
        let mut seen = vec![false; n];
        for &v in word {
            if v == 0 || v > n {
                return Err(Error::Parse(format!(
                    "one-line word of length {n} contains out-of-range value {v}"
                )));
            }
            if seen[v - 1] {
                return Err(Error::Parse(format!(
                    "one-line word repeats the value {v}"
                )));
            }
            seen[v - 1] = true;
        }
        let mut word = word.to_vec();
        while let Some(&last) = word.last() {
            if last == word.len() {
                word.pop();
            } else {
                break;
            }
        }
        Ok(Permutation { word })
    }

    /// The simple transposition `s_a` swapping `a` and `a+1` (requires `a ≥ 1`).
    pub fn simple(a: usize) -> Self {
        assert!(a >= 1, "simple transposition index must be at least 1");
        let mut word: Vec<usize> = (1..=a + 1).collect();
        word.swap(a - 1, a);
        Permutation { word }
    }

    /// The transposition `t_{αβ}` swapping the values `α` and `β`.
    pub fn transposition(alpha: usize, beta: usize) -> Self {
        assert!(alpha >= 1 && beta >= 1 && alpha != beta);
        let n = alpha.max(beta);
        let mut word: Vec<usize> = (1..=n).collect();
        word.swap(alpha - 1, beta - 1);
        Permutation { word }
    }

    /// Largest non-fixed point (0 for the identity).
    pub fn degree(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    /// Image of `i` (valid for every `i ≥ 1`).
    pub fn apply(&self, i: usize) -> usize {
        assert!(i >= 1, "permutations act on positive integers");
        if i <= self.word.len() {
            self.word[i - 1]
        } else {
            i
        }
    }

    /// Preimage of `v`: the `i` with `π(i) = v`.
    pub fn inverse_apply(&self, v: usize) -> usize {
        assert!(v >= 1, "permutations act on positive integers");
        for (idx, &w) in self.word.iter().enumerate() {
            if w == v {
                return idx + 1;
            }
        }
        v
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Self {
        let n = self.word.len();
        let mut word = vec![0usize; n];
        for (idx, &v) in self.word.iter().enumerate() {
            word[v - 1] = idx + 1;
        }
        Permutation { word }
    }

    /// Function composition: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        let n = self.degree().max(other.degree());
        let word: Vec<usize> = (1..=n).map(|i| self.apply(other.apply(i))).collect();
        Permutation::from_one_line(&word).expect("composition of bijections is a bijection")
    }

    /// Left multiplication by the value transposition: `t_{αβ} · self`.
    pub fn left_mul_t(&self, alpha: usize, beta: usize) -> Self {
        Permutation::transposition(alpha, beta).compose(self)
    }

    /// Left multiplication by a simple transposition: `s_a · self`.
    pub fn left_mul_simple(&self, a: usize) -> Self {
        self.left_mul_t(a, a + 1)
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.word.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.word[i] > self.word[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Smallest `a` with `π(a) > π(a+1)`, if any.
    pub fn first_descent(&self) -> Option<usize> {
        (1..self.word.len()).find(|&a| self.word[a - 1] > self.word[a])
    }

    /// True when `ℓ(s_a · π) < ℓ(π)`, i.e. `π⁻¹(a) > π⁻¹(a+1)`.
    pub fn has_left_descent(&self, a: usize) -> bool {
        self.inverse_apply(a) > self.inverse_apply(a + 1)
    }

    /// Product of simple transpositions, rightmost factor applied first.
    pub fn product_of_simples(indices: &[usize]) -> Self {
        let mut acc = Permutation::identity();
        for &j in indices {
            acc = acc.compose(&Permutation::simple(j));
        }
        acc
    }

    /// Writes `self = s_{j_1} s_{j_2} ⋯ s_{j_ℓ}` with `j_1 > j_2 > ⋯ > j_ℓ`
    /// strictly decreasing, returning `[j_1, …, j_ℓ]`. Such a factorization
    /// exists iff the one-line word splits into disjoint blocks
    /// `[a, b+1]` on which `π(a) = b+1` and `π(x) = x−1` otherwise; the
    /// factorization is then unique and reduced (`ℓ` factors).
    pub fn decompose_decreasing(&self) -> Result<Vec<usize>> {
        let mut blocks: Vec<(usize, usize)> = Vec::new(); // (a, b): factors s_b .. s_a
        let mut i = 1;
        while i <= self.degree() {
            let t = self.apply(i);
            if t == i {
                i += 1;
                continue;
            }
            if t < i {
                return Err(Error::NotDecreasing);
            }
            for x in i + 1..=t {
                if self.apply(x) != x - 1 {
                    return Err(Error::NotDecreasing);
                }
            }
            blocks.push((i, t - 1));
            i = t + 1;
        }
        let mut out = Vec::new();
        for &(a, b) in blocks.iter().rev() {
            for j in (a..=b).rev() {
                out.push(j);
            }
        }
        Ok(out)
    }

    /// The canonical one-line word (images of `1..=degree`).
    pub fn one_line(&self) -> &[usize] {
        &self.word
    }

    /// One-line word padded with fixed points out to length `max(n, degree)`.
    pub fn one_line_padded(&self, n: usize) -> Vec<usize> {
        let n = n.max(self.degree());
        (1..=n).map(|i| self.apply(i)).collect()
    }

    /// Parses `"25314"`, `"2,5,3,1,4"`, or `"2 5 3 1 4"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let parts: Vec<&str> = if s.contains(',') {
            s.split(',').map(str::trim).collect()
        } else if s.contains(char::is_whitespace) {
            s.split_whitespace().collect()
        } else if s.chars().all(|c| c.is_ascii_digit()) {
            // Compact digit form: one value per character.
            return Permutation::from_one_line(
                &s.chars()
                    .map(|c| c.to_digit(10).unwrap() as usize)
                    .collect::<Vec<_>>(),
            );
        } else {
            return Err(Error::Parse(format!("cannot parse permutation {s:?}")));
        };
        let word = parts
            .iter()
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad one-line entry {p:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        Permutation::from_one_line(&word)
    }
}

impl fmt::Display for Permutation {
    /// Compact digits when every value is a single digit, else comma-separated.
    /// The identity renders as `"1"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = self.one_line_padded(1);
        if word.iter().all(|&v| v <= 9) {
            for v in word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(word: Vec<usize>) -> Result<Self> {
        Permutation::from_one_line(&word)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.word
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn canonicalization_strips_trailing_fixed_points() {
        assert_eq!(p("12345"), Permutation::identity());
        assert_eq!(p("21345").degree(), 2);
        assert_eq!(p("1"), Permutation::identity());
        assert!(Permutation::identity().is_identity());
    }

    #[test]
    fn from_one_line_rejects_non_bijections() {
        assert!(Permutation::from_one_line(&[1, 1]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::from_one_line(&[1, 3]).is_err());
    }

    #[test]
    fn apply_and_inverse() {
        let q = p("25314");
        assert_eq!(q.apply(1), 2);
        assert_eq!(q.apply(5), 4);
        assert_eq!(q.apply(7), 7);
        assert_eq!(q.inverse_apply(2), 1);
        assert_eq!(q.inverse_apply(7), 7);
        assert_eq!(q.inverse().compose(&q), Permutation::identity());
    }

    #[test]
    fn composition_is_rightmost_first() {
        // s_1 s_2 maps 1↦2 (s_2 fixes 1, then s_1 sends 1 to 2)… check 231 vs 312.
        let s1s2 = Permutation::simple(1).compose(&Permutation::simple(2));
        assert_eq!(s1s2, p("231"));
        let s2s1 = Permutation::simple(2).compose(&Permutation::simple(1));
        assert_eq!(s2s1, p("312"));
        assert_eq!(Permutation::product_of_simples(&[4, 3, 1]), p("21534"));
    }

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity().length(), 0);
        assert_eq!(p("12435").length(), 1);
        assert_eq!(p("12534").length(), 2);
        assert_eq!(p("13524").length(), 3);
        assert_eq!(p("15324").length(), 4);
        assert_eq!(p("25314").length(), 5);
    }

    #[test]
    fn left_multiplication_by_value_transpositions() {
        assert_eq!(p("13524").left_mul_t(3, 5), p("15324"));
        assert_eq!(p("15324").left_mul_t(1, 2), p("25314"));
        // t_{αβ} is an involution under left multiplication.
        assert_eq!(p("12435").left_mul_t(2, 5).left_mul_t(2, 5), p("12435"));
        assert_eq!(
            Permutation::identity().left_mul_t(3, 5),
            Permutation::from_one_line(&[1, 2, 5, 4, 3]).unwrap()
        );
    }

    #[test]
    fn descents() {
        assert_eq!(p("12435").first_descent(), Some(3));
        assert_eq!(p("25314").first_descent(), Some(2));
        assert_eq!(Permutation::identity().first_descent(), None);
        // 25314: 1 sits at position 4, 2 at position 1 ⇒ s_1 is a left descent.
        assert!(p("25314").has_left_descent(1));
        assert!(!p("12435").has_left_descent(1));
        // s_3 · 12435 = 12345 shorter ⇒ left descent at 3.
        assert!(p("12435").has_left_descent(3));
    }

    #[test]
    fn decompose_decreasing_examples() {
        assert_eq!(p("21534").decompose_decreasing().unwrap(), vec![4, 3, 1]);
        assert_eq!(p("312").decompose_decreasing().unwrap(), vec![2, 1]);
        assert_eq!(p("132").decompose_decreasing().unwrap(), vec![2]);
        assert_eq!(
            Permutation::identity().decompose_decreasing().unwrap(),
            Vec::<usize>::new()
        );
        assert_eq!(p("321").decompose_decreasing(), Err(Error::NotDecreasing));
        assert_eq!(p("231").decompose_decreasing(), Err(Error::NotDecreasing));
    }

    #[test]
    fn decompose_decreasing_roundtrip_exhaustive() {
        // Every strictly decreasing subset of {1,…,6} must round-trip, with
        // length equal to the number of factors.
        for mask in 0u32..64 {
            let factors: Vec<usize> = (1..=6).rev().filter(|j| mask & (1 << (j - 1)) != 0).collect();
            let perm = Permutation::product_of_simples(&factors);
            assert_eq!(perm.length(), factors.len(), "mask {mask}");
            assert_eq!(perm.decompose_decreasing().unwrap(), factors, "mask {mask}");
        }
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p("25314").to_string(), "25314");
        assert_eq!(Permutation::identity().to_string(), "1");
        assert_eq!(p("2,5,3,1,4"), p("25314"));
        assert_eq!(p("2 5 3 1 4"), p("25314"));
        let big = Permutation::transposition(1, 12);
        assert_eq!(big.to_string(), "12,2,3,4,5,6,7,8,9,10,11,1");
        assert_eq!(Permutation::parse(&big.to_string()).unwrap(), big);
        assert_eq!(p("13524").one_line_padded(7), vec![1, 3, 5, 2, 4, 6, 7]);
    }

    #[test]
    fn serde_roundtrip() {
        let q = p("25314");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, "[2,5,3,1,4]");
        let back: Permutation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }

    proptest! {
        #[test]
        fn random_permutation_algebra(seed in 0u64..500) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut w: Vec<usize> = (1..=7).collect();
            w.shuffle(&mut rng);
            let q = Permutation::from_one_line(&w).unwrap();
            prop_assert_eq!(q.inverse().compose(&q), Permutation::identity());
            prop_assert_eq!(q.compose(&q.inverse()), Permutation::identity());
            prop_assert_eq!(q.inverse().length(), q.length());
            prop_assert_eq!(Permutation::parse(&q.to_string()).unwrap(), q.clone());
            // Left-multiplying by a non-descent simple transposition adds one inversion.
            for a in 1..7 {
                let longer = q.left_mul_simple(a);
                if q.has_left_descent(a) {
                    prop_assert_eq!(longer.length() + 1, q.length());
                } else {
                    prop_assert_eq!(longer.length(), q.length() + 1);
                }
            }
        }
    }
}
