//! Property checks of neighbors, extensions and covering radii on small
//! random self-dual codes, against brute force where feasible.

use std::collections::BTreeSet;

use proptest::prelude::*;

use sdcode::codefile::{read_code, write_code};
use sdcode::covering::{coset_min_weight, covering_radius_exact, delsarte_bound};
use sdcode::extend::tsai_extend;
use sdcode::known;
use sdcode::neighbors::neighbor;
use sdcode::{BitVector, LinearCode};

/// A self-dual code of length `2m` reached from `m` copies of the
/// repetition code by a walk through neighbors.
fn walk(m: usize, steps: &[Vec<bool>]) -> LinearCode {
    let mut c = known::i2_sum(m);
    for bits in steps {
        let mut x = BitVector::from_bools(&bits[..2 * m]);
        if x.weight() % 2 == 1 {
            x.flip(0);
        }
        if !c.contains(&x) {
            c = neighbor(&c, &x).unwrap();
        }
    }
    c
}

fn walk_strategy(max_m: usize) -> impl Strategy<Value = LinearCode> {
    (2..=max_m).prop_flat_map(|m| {
        proptest::collection::vec(proptest::collection::vec(any::<bool>(), 2 * m), 0..4)
            .prop_map(move |steps| walk(m, &steps))
    })
}

fn vector(n: usize, bits: &[bool]) -> BitVector {
    BitVector::from_bools(&bits[..n])
}

/// Covering radius by checking every vector of the space.
fn brute_covering_radius(code: &LinearCode) -> usize {
    let n = code.n();
    let words: Vec<BitVector> = {
        let mut w = Vec::new();
        code.for_each_codeword(|c| w.push(c.clone()));
        w
    };
    (0u64..1 << n)
        .map(|bits| {
            let v = BitVector::from_bools(&(0..n).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
            words.iter().map(|c| c.xor(&v).weight()).min().unwrap()
        })
        .max()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn neighbors_are_self_dual_and_depend_only_on_the_coset(
        c in walk_strategy(8),
        bits in proptest::collection::vec(any::<bool>(), 16),
        pick in any::<u64>(),
    ) {
        let n = c.n();
        let mut x = vector(n, &bits);
        if x.weight() % 2 == 1 {
            x.flip(n - 1);
        }
        prop_assume!(!c.contains(&x));
        let nb = neighbor(&c, &x).unwrap();
        prop_assert!(nb.is_self_dual());
        prop_assert!(nb.contains(&x));
        prop_assert_eq!(nb.intersection_dim(&c).unwrap(), c.k() - 1);
        // shifting x by a codeword keeps the neighbor when the codeword is
        // orthogonal to x and gives the other one otherwise
        let row = &c.rows()[pick as usize % c.k()];
        let shifted = x.xor(row);
        let other = neighbor(&c, &shifted).unwrap();
        if row.dot(&x) {
            prop_assert!(other != nb);
            prop_assert_eq!(other.intersection(&nb).unwrap(), c.orthogonal_subcode(&x).unwrap());
        } else {
            prop_assert_eq!(other, nb);
        }
    }

    #[test]
    fn exactly_three_self_dual_codes_contain_the_orthogonal_subcode(
        c in walk_strategy(6),
        bits in proptest::collection::vec(any::<bool>(), 12),
    ) {
        let n = c.n();
        let mut x = vector(n, &bits);
        if x.weight() % 2 == 1 {
            x.flip(0);
        }
        prop_assume!(!c.contains(&x));
        let d = c.orthogonal_subcode(&x).unwrap();
        let dual = d.dual().unwrap();
        let mut found = BTreeSet::new();
        dual.for_each_codeword(|v| {
            if !d.contains(v) {
                let e = d.extended_by(v).unwrap();
                if e.is_self_dual() {
                    found.insert(write_code(&e));
                }
            }
        });
        prop_assert_eq!(found.len(), 3);
        prop_assert!(found.contains(&write_code(&c)));
        prop_assert!(found.contains(&write_code(&neighbor(&c, &x).unwrap())));
    }

    #[test]
    fn extensions_are_self_dual_and_shorten_to_the_orthogonal_subcode(
        c in walk_strategy(8),
        bits in proptest::collection::vec(any::<bool>(), 16),
    ) {
        let n = c.n();
        let mut x = vector(n, &bits);
        if x.weight() % 2 == 0 {
            x.flip(0);
        }
        let e = tsai_extend(&c, &x).unwrap();
        prop_assert_eq!((e.n(), e.k()), (n + 2, c.k() + 1));
        prop_assert!(e.is_self_dual());
        // the words that vanish on the two new coordinates form C ∩ x⊥
        let tail = LinearCode::from_rows(
            n + 2,
            (2..n + 2).map(|i| BitVector::from_support(n + 2, &[i]).unwrap()).collect(),
        )
        .unwrap();
        let shortened: Vec<BitVector> =
            e.intersection(&tail).unwrap().rows().iter().map(|r| r.slice(2, n)).collect();
        prop_assert_eq!(LinearCode::from_rows(n, shortened).unwrap(), c.orthogonal_subcode(&x).unwrap());
    }

    #[test]
    fn covering_radius_matches_brute_force_and_delsarte(
        n in 3usize..=11,
        rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 11), 1..6),
        bits in proptest::collection::vec(any::<bool>(), 11),
    ) {
        // the zero code is rejected
        let c = LinearCode::from_rows(n, rows.iter().map(|r| vector(n, r)).collect());
        prop_assume!(c.is_ok());
        let c = c.unwrap();
        let cr = covering_radius_exact(&c, 1 << 20).unwrap();
        prop_assert_eq!(cr, brute_covering_radius(&c));
        prop_assert!(cr <= delsarte_bound(&c).unwrap());
        let v = vector(n, &bits);
        let w = coset_min_weight(&c, &v).unwrap();
        prop_assert!(w <= cr);
        prop_assert_eq!(coset_min_weight(&c, &v.xor(&c.rows()[0])).unwrap(), w);
        prop_assert!(w <= c.reduce(&v).weight());
    }

    #[test]
    fn code_files_round_trip(c in walk_strategy(10)) {
        let text = write_code(&c);
        let back = read_code(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(write_code(&back), text);
    }
}
