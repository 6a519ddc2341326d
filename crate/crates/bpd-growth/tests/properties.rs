//! Randomized structural properties over generated permutations and
//! biwords.

use proptest::prelude::*;

use bpd_growth::{jdt_step, reversed_jdt, Biword, Grid, Permutation};

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    prop::collection::vec(any::<u64>(), 0..=max_n).prop_map(|keys| {
        let mut word: Vec<usize> = (1..=keys.len()).collect();
        word.sort_by_key(|&i| (keys[i - 1], i));
        Permutation::from_one_line(&word).expect("shuffled word is a permutation")
    })
}

fn biword_strategy(max_k: usize, max_len: usize) -> impl Strategy<Value = Biword> {
    prop::collection::vec((1..=max_k, any::<u64>()), 0..=max_len).prop_map(|mut raw| {
        raw.sort_by(|x, y| y.0.cmp(&x.0));
        let subs: Vec<usize> = raw.iter().map(|&(k, _)| k).collect();
        let rows: Vec<usize> = raw
            .iter()
            .map(|&(k, seed)| 1 + (seed as usize) % k)
            .collect();
        Biword::new(rows, subs).expect("sorted columns satisfy the biword conditions")
    })
}

proptest! {
    #[test]
    fn rothe_realizes_the_permutation(p in perm_strategy(7)) {
        let n = p.degree().max(1) + 1;
        let g = Grid::rothe(&p, n).unwrap();
        prop_assert_eq!(g.permutation().unwrap(), p);
        g.validate_strict().unwrap();
        prop_assert!(g.embed(n + 3).canonical_eq(&g));
    }

    #[test]
    fn biword_text_roundtrip(q in biword_strategy(5, 6)) {
        prop_assert_eq!(Biword::parse(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn insertion_chain_stays_valid(q in biword_strategy(3, 4)) {
        let g = q.phi().unwrap();
        g.validate_strict().unwrap();
        prop_assert_eq!(g.permutation().unwrap().length(), q.len());
    }

    #[test]
    fn slides_roundtrip(q in biword_strategy(3, 4)) {
        let g = q.phi().unwrap();
        if g.first_blank_row().is_some() {
            let fwd = jdt_step(&g).unwrap();
            let back = reversed_jdt(&fwd.grid, fwd.pop.1, fwd.pop.0).unwrap();
            prop_assert_eq!(back.grid.render(), g.render());
        }
    }

    #[test]
    fn neighbor_moves_are_involutive(q in biword_strategy(3, 4)) {
        for (nb, _) in q.knuth_neighbors() {
            let back: Vec<Biword> = nb.knuth_neighbors().into_iter().map(|(w, _)| w).collect();
            prop_assert!(back.contains(&q));
        }
    }
}
