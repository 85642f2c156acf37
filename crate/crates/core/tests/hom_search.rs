use std::collections::BTreeSet;

use tap_core::catalog::lookup;
use tap_core::finite::{dedupe, enumerate_homs, symmetric_group, HomAssignment, HomSearchOptions, Permutation};
use tap_core::group::Presentation;
use tap_core::Budget;

fn opts(meridional: bool, dedupe: bool) -> HomSearchOptions {
    HomSearchOptions { meridional, dedupe, budget: Budget::unlimited() }
}

/// Every assignment of the generators to S_n, filtered by the relators.
fn brute_force(p: &Presentation, n: usize) -> Vec<HomAssignment> {
    let g = symmetric_group(n);
    let k = p.num_generators();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        let h = HomAssignment::new(n, idx.iter().map(|&i| g[i].clone()).collect());
        if h.satisfies(p) {
            out.push(h);
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return out;
            }
            idx[pos] += 1;
            if idx[pos] < g.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

fn images(h: &HomAssignment) -> Vec<Vec<usize>> {
    h.images().iter().map(|p| p.images().to_vec()).collect()
}

/// Orbit label: the smallest image tuple over all conjugates.
fn orbit_key(h: &HomAssignment, g: &[Permutation]) -> Vec<Vec<usize>> {
    g.iter().map(|c| images(&h.conjugate_by(c))).min().unwrap()
}

fn orbit_count(hs: &[HomAssignment], n: usize) -> usize {
    let g = symmetric_group(n);
    hs.iter().map(|h| orbit_key(h, &g)).collect::<BTreeSet<_>>().len()
}

#[test]
fn trefoil_degree_three_matches_exhaustive_filtering() {
    let p = lookup("3_1").unwrap().presentation();
    let brute = brute_force(&p, 3);
    let found = enumerate_homs(&p, 3, &opts(false, false)).unwrap();
    // x = y = g for each of the six elements, plus six onto S3
    assert_eq!(brute.len(), 6 + 6);
    let a: BTreeSet<_> = brute.iter().map(images).collect();
    let b: BTreeSet<_> = found.iter().map(images).collect();
    assert_eq!(a, b);
}

#[test]
fn search_matches_brute_force_on_small_cases() {
    for name in ["3_1", "4_1", "5_2", "hopf"] {
        let p = lookup(name).unwrap().presentation();
        for n in 2..=3 {
            let brute = brute_force(&p, n);
            let found = enumerate_homs(&p, n, &opts(false, false)).unwrap();
            assert_eq!(found.len(), brute.len(), "{name} n={n}");
            assert!(found.iter().all(|h| h.satisfies(&p)));
        }
    }
}

#[test]
fn dedupe_counts_conjugation_orbits() {
    for name in ["3_1", "4_1", "6_1"] {
        let p = lookup(name).unwrap().presentation();
        for n in 2..=4 {
            let all = enumerate_homs(&p, n, &opts(false, false)).unwrap();
            let reps = dedupe(&all);
            assert_eq!(reps.len(), orbit_count(&all, n), "{name} n={n}");
            let deduped = enumerate_homs(&p, n, &opts(false, true)).unwrap();
            assert_eq!(deduped.len(), reps.len(), "{name} n={n}");
        }
    }
}

#[test]
fn meridional_pruning_keeps_every_orbit() {
    for name in ["3_1", "4_1", "5_1", "5_2"] {
        let p = lookup(name).unwrap().presentation();
        for n in 2..=3 {
            let full = enumerate_homs(&p, n, &opts(false, false)).unwrap();
            let pruned = enumerate_homs(&p, n, &opts(true, false)).unwrap();
            let full_set: BTreeSet<_> = full.iter().map(images).collect();
            assert!(pruned.iter().all(|h| full_set.contains(&images(h))), "{name} n={n}: not a subset");
            assert_eq!(orbit_count(&pruned, n), orbit_count(&full, n), "{name} n={n}");
        }
    }
}

#[test]
fn singleton_and_conjugate_pairs() {
    let x = Permutation::from_images(vec![1, 0, 2]).unwrap();
    let y = Permutation::from_images(vec![0, 2, 1]).unwrap();
    let one = vec![HomAssignment::new(3, vec![x.clone()])];
    assert_eq!(dedupe(&one).len(), 1);
    let two = vec![HomAssignment::new(3, vec![x]), HomAssignment::new(3, vec![y])];
    assert_eq!(dedupe(&two).len(), 1);
}
