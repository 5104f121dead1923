//! Exhaustive checks over small carriers.

use std::collections::BTreeSet;

use girylab::convex::{
    axiom_suite, canonical_alphas, hom_enum, AffineMap, ConvexSpace, Element, Semilattice,
};
use girylab::finmeas::{generate_sigma, hom, max_enum, FinMeasSpace};
use girylab::giry::{kleisli_compose, pushforward, Kernel, Prob};
use girylab::probes::{all_spaces, probs_with_denominators, seeded};
use girylab::rational::unit_grid;
use girylab::sigma::{
    boolean_pairs, boolean_probes, mcoprod_check, sigma_functor, sigma_map, Variant,
};
use girylab::{q, Rational};
use rand::seq::SliceRandom;

fn small_spaces() -> Vec<FinMeasSpace> {
    (1..=3).flat_map(all_spaces).collect()
}

fn semilattices() -> Vec<ConvexSpace> {
    Semilattice::enumerate_up_to_iso(4)
        .into_iter()
        .map(ConvexSpace::Semilattice)
        .collect()
}

fn sc(n: i64, d: i64) -> Element {
    Element::Scalar(q(n, d))
}

#[test]
fn pushforward_is_functorial_on_every_small_triple() {
    let spaces = small_spaces();
    for x in &spaces {
        let probs = probs_with_denominators(x, 2);
        for y in &spaces {
            let fs = hom(x, y, max_enum()).unwrap();
            for p in &probs {
                for f in &fs {
                    let fp = pushforward(f, p).unwrap();
                    for z in &spaces {
                        for g in hom(y, z, max_enum()).unwrap() {
                            let gf = f.then(&g).unwrap();
                            assert_eq!(pushforward(&gf, p).unwrap(), pushforward(&g, &fp).unwrap());
                        }
                    }
                }
            }
        }
    }
}

/// Kernels whose rows are drawn from `rows`, one per domain atom.
fn kernels(x: &FinMeasSpace, y: &FinMeasSpace, rows: &[Prob]) -> Vec<Kernel> {
    let mut out = Vec::new();
    let mut pick = vec![0usize; x.num_atoms()];
    loop {
        out.push(Kernel::new(x, y, pick.iter().map(|&i| rows[i].clone()).collect()).unwrap());
        let Some(i) = pick.iter().rposition(|&v| v + 1 < rows.len()) else {
            return out;
        };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|v| *v = 0);
    }
}

#[test]
fn kleisli_is_associative_and_unital_on_enumerated_kernels() {
    let spaces: Vec<FinMeasSpace> = (1..=3).map(|n| all_spaces(n).pop().unwrap()).collect();
    let rows = |y: &FinMeasSpace| {
        if y.num_atoms() <= 2 {
            probs_with_denominators(y, 2)
        } else {
            let mut r: Vec<Prob> = (0..y.num_atoms())
                .map(|a| Prob::dirac(y, y.atoms()[a][0]))
                .collect();
            r.push(Prob::uniform(y));
            r
        }
    };
    for w in &spaces {
        for x in &spaces {
            let k1s = kernels(w, x, &rows(x));
            for k1 in &k1s {
                assert_eq!(&kleisli_compose(&Kernel::identity(w), k1).unwrap(), k1);
                assert_eq!(&kleisli_compose(k1, &Kernel::identity(x)).unwrap(), k1);
            }
            for y in spaces.iter().filter(|y| y.num_atoms() <= 2) {
                let k2s = kernels(x, y, &rows(y));
                for z in spaces.iter().filter(|z| z.num_atoms() <= 2) {
                    let k3s = kernels(y, z, &rows(z));
                    for k1 in &k1s {
                        for k2 in &k2s {
                            let k12 = kleisli_compose(k1, k2).unwrap();
                            for k3 in &k3s {
                                let left = kleisli_compose(&k12, k3).unwrap();
                                let right =
                                    kleisli_compose(k1, &kleisli_compose(k2, k3).unwrap()).unwrap();
                                assert_eq!(left, right);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn axioms_hold_for_every_variant_on_random_elements() {
    let chain = ConvexSpace::chain(4);
    let spaces = vec![
        ConvexSpace::Simplex { n: 3 },
        ConvexSpace::polytope(
            2,
            vec![
                vec![q(0, 1), q(0, 1)],
                vec![q(1, 1), q(0, 1)],
                vec![q(0, 1), q(1, 1)],
                vec![q(1, 1), q(1, 1)],
            ],
        )
        .unwrap(),
        ConvexSpace::Semilattice(
            Semilattice::from_order(
                ["b", "l", "r", "t"].iter().map(|s| s.to_string()).collect(),
                |a, b| a == b || a == 0 || b == 3,
            )
            .unwrap(),
        ),
        ConvexSpace::IntervalQ,
        ConvexSpace::RInfty,
        ConvexSpace::quotient(chain.clone(), vec![vec![0], vec![1], vec![2, 3]]).unwrap(),
    ];
    let mut rng = seeded(200);
    for space in &spaces {
        let pool = space.probe_elements(6);
        // each probe is a random triple; the suite runs over all orderings of it
        for _ in 0..200 {
            let triple: Vec<Element> = (0..3)
                .map(|_| pool.choose(&mut rng).unwrap().clone())
                .collect();
            let rep = axiom_suite(space, &triple, &canonical_alphas());
            assert!(rep.passed(), "{space:?}: {:?}", rep.first_failure());
        }
    }
}

#[test]
fn path_maps_are_affine_on_the_sixths_grid() {
    let grid = unit_grid(6);
    let mut probes: Vec<(Element, Element, Rational)> = Vec::new();
    for a in &grid {
        for b in &grid {
            for al in &grid {
                probes.push((
                    Element::Scalar(a.clone()),
                    Element::Scalar(b.clone()),
                    al.clone(),
                ));
            }
        }
    }
    let cases = [
        (ConvexSpace::IntervalQ, sc(1, 3), sc(1, 1)),
        (ConvexSpace::IntervalQ, sc(1, 1), sc(0, 1)),
        (
            ConvexSpace::Simplex { n: 3 },
            Element::Vector(vec![q(1, 1), q(0, 1), q(0, 1)]),
            Element::Vector(vec![q(0, 1), q(1, 2), q(1, 2)]),
        ),
        (ConvexSpace::RInfty, sc(-2, 1), Element::Infinity),
        (ConvexSpace::RInfty, sc(-2, 1), sc(5, 3)),
        (ConvexSpace::chain(3), Element::Index(2), Element::Index(1)),
    ];
    for (cod, a, b) in cases {
        let path = AffineMap::path(cod, a, b).unwrap();
        assert_eq!(path.affinity_witness(&probes), None, "{path:?}");
    }
}

/// Every grid-to-grid function on the quarters grid that preserves the combinations
/// landing inside the grid, by backtracking in grid order.
fn affine_grid_tables(grid: &[Rational]) -> Vec<Vec<usize>> {
    let n = grid.len();
    let alphas: Vec<Rational> = unit_grid(4);
    let mut constraints: Vec<(usize, usize, Rational, usize)> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for al in &alphas {
                let c = Rational::lerp(&grid[i], &grid[j], al);
                if let Some(k) = grid.iter().position(|g| *g == c) {
                    constraints.push((i, j, al.clone(), k));
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut f = Vec::with_capacity(n);
    fn go(
        f: &mut Vec<usize>,
        grid: &[Rational],
        cons: &[(usize, usize, Rational, usize)],
        out: &mut Vec<Vec<usize>>,
    ) {
        let m = f.len();
        let consistent = cons
            .iter()
            .filter(|(i, j, _, k)| *i.max(j).max(k) + 1 == m)
            .all(|(i, j, al, k)| Rational::lerp(&grid[f[*i]], &grid[f[*j]], al) == grid[f[*k]]);
        if !consistent {
            return;
        }
        if m == grid.len() {
            out.push(f.clone());
            return;
        }
        for v in 0..grid.len() {
            f.push(v);
            go(f, grid, cons, out);
            f.pop();
        }
    }
    go(&mut f, grid, &constraints, &mut out);
    out
}

#[test]
fn affine_interval_tables_are_paths() {
    let grid: Vec<Rational> = unit_grid(4);
    let tables = affine_grid_tables(&grid);
    assert!(!tables.is_empty());
    for t in &tables {
        let path = AffineMap::path(
            ConvexSpace::IntervalQ,
            Element::Scalar(grid[t[0]].clone()),
            Element::Scalar(grid[*t.last().unwrap()].clone()),
        )
        .unwrap();
        for (i, &v) in t.iter().enumerate() {
            assert_eq!(
                path.apply(&Element::Scalar(grid[i].clone())).unwrap(),
                Element::Scalar(grid[v].clone())
            );
        }
    }
}

fn sigma_spaces() -> Vec<ConvexSpace> {
    let mut out = semilattices();
    out.extend([ConvexSpace::IntervalQ, ConvexSpace::RInfty]);
    out.extend((1..=3).map(|n| ConvexSpace::Simplex { n }));
    out
}

#[test]
fn boolean_pairs_have_affine_characteristic_maps() {
    for space in sigma_spaces() {
        let probes = boolean_probes(&space);
        for pair in boolean_pairs(&space).unwrap() {
            assert!(pair.is_affine_on(&probes), "{}", pair.describe());
        }
    }
}

#[test]
fn finite_two_valued_sigma_is_generated_by_boolean_parts() {
    for space in semilattices() {
        let labels = space.labels().unwrap();
        let parts: Vec<Vec<String>> = boolean_pairs(&space)
            .unwrap()
            .iter()
            .map(|p| {
                p.members()
                    .unwrap()
                    .iter()
                    .map(|&i| labels[i].clone())
                    .collect()
            })
            .collect();
        let generated = generate_sigma(&labels, &parts).unwrap();
        let s2 = sigma_functor(&space, Variant::Sigma2).unwrap();
        let explicit = s2.explicit().unwrap();
        let atoms = |s: &FinMeasSpace| s.atom_ids().into_iter().collect::<BTreeSet<_>>();
        assert_eq!(atoms(explicit), atoms(&generated), "{space:?}");
    }
}

#[test]
fn affine_maps_between_semilattices_are_measurable() {
    let sls = semilattices();
    for a in &sls {
        for b in &sls {
            for m in hom_enum(a, b, max_enum()).unwrap() {
                for v in [Variant::Sigma2, Variant::SigmaI, Variant::Join] {
                    assert!(sigma_map(&m, v).is_ok(), "{m:?} under {v}");
                }
            }
        }
    }
}

#[test]
fn every_boolean_pair_of_a_small_semilattice_splits_it() {
    for space in semilattices() {
        for pair in boolean_pairs(&space).unwrap() {
            let rep = mcoprod_check(&space, &pair).unwrap();
            assert!(
                rep.passed(),
                "{}: {:?}",
                pair.describe(),
                rep.first_failure()
            );
        }
    }
}
