//! Probe generators for the law suites: exhaustive rational grids and seeded
//! random measures.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::convex::compositions;
use crate::finmeas::FinMeasSpace;
use crate::giry::{MetaProb, Mixture, Prob, Tower};
use crate::rational::Rational;

/// Largest denominator used by the random generators.
pub const RANDOM_MAX_DENOM: i64 = 12;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every weight vector of length `parts` summing to one whose entries share a
/// denominator `d <= max_denom`; with `positive`, zero entries are excluded.
pub fn weight_vectors(parts: usize, max_denom: i64, positive: bool) -> Vec<Vec<Rational>> {
    let mut out = BTreeSet::new();
    for d in 1..=max_denom {
        compositions(d, parts, &mut vec![], &mut |c| {
            if !positive || c.iter().all(|&k| k > 0) {
                out.insert(c.iter().map(|&k| Rational::new(k, d)).collect::<Vec<_>>());
            }
        });
    }
    out.into_iter().collect()
}

pub fn probs_with_denominators(space: &FinMeasSpace, max_denom: i64) -> Vec<Prob> {
    weight_vectors(space.num_atoms(), max_denom, false)
        .into_iter()
        .map(|w| Prob::new(space, w).expect("grid weights sum to one"))
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut vec![], &mut out);
    out
}

/// All mixtures of at most `max_support` distinct items with positive weights of
/// common denominator at most `max_denom`.
pub fn mixtures<T: Clone + PartialEq>(
    items: &[T],
    max_support: usize,
    max_denom: i64,
) -> Vec<Mixture<T>> {
    let mut out = Vec::new();
    for k in 1..=max_support.min(items.len()) {
        let weights = weight_vectors(k, max_denom, true);
        for s in subsets(items.len(), k) {
            for w in &weights {
                let pairs = w.iter().cloned().zip(s.iter().map(|&i| items[i].clone()));
                out.push(Mixture::new(pairs).expect("positive weights summing to one"));
            }
        }
    }
    out
}

/// Two-level towers over the denominator grid.
pub fn two_level_towers(space: &FinMeasSpace, max_support: usize, max_denom: i64) -> Vec<MetaProb> {
    mixtures(
        &probs_with_denominators(space, max_denom),
        max_support,
        max_denom,
    )
    .into_iter()
    .map(|m| MetaProb::from_mixture(space, m).expect("same base"))
    .collect()
}

/// Three-level towers: outer and middle support at most two, inner measures with
/// denominators at most two, all mixing weights with denominators at most four.
pub fn three_level_towers(space: &FinMeasSpace) -> Vec<Tower> {
    let middle = mixtures(&probs_with_denominators(space, 2), 2, 4);
    mixtures(&middle, 2, 4)
}

pub fn random_prob(space: &FinMeasSpace, rng: &mut impl Rng) -> Prob {
    let d = rng.gen_range(1..=RANDOM_MAX_DENOM);
    let n = space.num_atoms();
    let mut cuts: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(0..=d)).collect();
    cuts.sort_unstable();
    let mut prev = 0;
    let mut weights = Vec::with_capacity(n);
    for c in cuts.into_iter().chain([d]) {
        weights.push(Rational::new(c - prev, d));
        prev = c;
    }
    Prob::new(space, weights).expect("cuts partition the denominator")
}

fn random_mixture<T: Clone + PartialEq>(
    rng: &mut impl Rng,
    mut draw: impl FnMut(&mut dyn FnMut() -> u64) -> T,
) -> Mixture<T> {
    let k = rng.gen_range(1..=3usize);
    let d = rng.gen_range(k as i64..=RANDOM_MAX_DENOM);
    // positive composition of d into k parts
    let mut cuts: BTreeSet<i64> = BTreeSet::new();
    while cuts.len() < k - 1 {
        cuts.insert(rng.gen_range(1..d));
    }
    let mut prev = 0;
    let mut pairs = Vec::with_capacity(k);
    for c in cuts.into_iter().chain([d]) {
        let mut next = || rng.gen::<u64>();
        pairs.push((Rational::new(c - prev, d), draw(&mut next)));
        prev = c;
    }
    Mixture::new(pairs).expect("positive weights summing to one")
}

/// A random two-level tower with support between one and three.
pub fn random_meta(space: &FinMeasSpace, rng: &mut impl Rng) -> MetaProb {
    let m = random_mixture(rng, |next| random_prob(space, &mut seeded(next())));
    MetaProb::from_mixture(space, m).expect("same base")
}

pub fn random_tower(space: &FinMeasSpace, rng: &mut impl Rng) -> Tower {
    random_mixture(rng, |next| {
        random_meta(space, &mut seeded(next())).mixture().clone()
    })
}

/// Every measurable space on the points `p1..pn`, one per set partition.
pub fn all_spaces(points: usize) -> Vec<FinMeasSpace> {
    let ids: Vec<String> = (1..=points).map(|i| format!("p{i}")).collect();
    let mut out = Vec::new();
    // restricted growth strings enumerate set partitions
    let mut rgs = vec![0usize; points];
    loop {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let atoms: Vec<Vec<String>> = (0..blocks)
            .map(|b| {
                (0..points)
                    .filter(|&i| rgs[i] == b)
                    .map(|i| ids[i].clone())
                    .collect()
            })
            .collect();
        if points > 0 {
            out.push(FinMeasSpace::new(&ids, &atoms).expect("partition"));
        }
        let mut i = points;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let bound = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                for r in rgs[i + 1..].iter_mut() {
                    *r = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let x = FinMeasSpace::discrete(&["a", "b", "c"]).unwrap();
        // distinct simplex points with denominators dividing 1..4
        assert_eq!(probs_with_denominators(&x, 4).len(), 22);
        assert_eq!(probs_with_denominators(&x, 2).len(), 6);
    }

    #[test]
    fn partitions_are_bell_numbers() {
        let counts: Vec<usize> = (1..=4).map(|n| all_spaces(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15]);
    }

    #[test]
    fn random_probes_are_reproducible() {
        let x = FinMeasSpace::discrete(&["a", "b", "c"]).unwrap();
        let a: Vec<Prob> = (0..5)
            .map({
                let mut r = seeded(7);
                move |_| random_prob(&x, &mut r)
            })
            .collect();
        let x = FinMeasSpace::discrete(&["a", "b", "c"]).unwrap();
        let mut r = seeded(7);
        let b: Vec<Prob> = (0..5).map(|_| random_prob(&x, &mut r)).collect();
        assert_eq!(a, b);
        let mut r = seeded(7);
        let t = random_tower(&x, &mut r);
        assert!(!t.is_empty());
    }
}
