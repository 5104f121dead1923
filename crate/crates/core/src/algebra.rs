//! Giry algebras on finite spaces, their coequalizer presentation as convex
//! spaces, and the round trips between the two.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::convex::{axiom_suite, canonical_alphas, hom_enum, ConvexSpace, Element, FiniteTable};
use crate::error::{input, Error, Result};
use crate::factorization::{
    counit, elements_of_measure, epsilon_of_measures, mixing_triples, solve_on_probes,
    ProbeConstraints,
};
use crate::finmeas::{max_enum, FinMeasSpace, MeasurableMap};
use crate::giry::{mu, pushforward, MetaProb, Prob};
use crate::probes::{probs_with_denominators, random_meta, seeded, two_level_towers};
use crate::rational::Rational;
use crate::report::{par_check, LawCheck, Report};
use crate::sigma::{sigma_functor, Variant};

/// `h: P(X) -> X`, returning an atom index.
pub type Evaluator = dyn Fn(&Prob) -> Result<usize> + Send + Sync;

/// Probe measures for the algebra laws.
#[derive(Clone, Debug, Default)]
pub struct AlgebraProbes {
    pub probs: Vec<Prob>,
    pub metas: Vec<MetaProb>,
}

impl AlgebraProbes {
    /// Denominators at most four, every two-level tower with support at most
    /// three, and `random` seeded towers.
    pub fn standard(space: &FinMeasSpace, seed: u64, random: usize) -> Self {
        let mut metas = two_level_towers(space, 3, 4);
        let mut rng = seeded(seed);
        metas.extend((0..random).map(|_| random_meta(space, &mut seeded(rng.gen()))));
        AlgebraProbes {
            probs: probs_with_denominators(space, 4),
            metas,
        }
    }
}

/// A finite measurable space with an evaluator satisfying the unit and
/// multiplication laws on the probes it was admitted with.
#[derive(Clone)]
pub struct GiryAlgebra {
    space: FinMeasSpace,
    h: Arc<Evaluator>,
    table: Option<BTreeMap<String, usize>>,
}

impl fmt::Debug for GiryAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GiryAlgebra({:?}", self.space)?;
        if let Some(t) = &self.table {
            write!(f, ", {} entries", t.len())?;
        }
        write!(f, ")")
    }
}

/// `G(h)(M)`: push each inner measure to the point `h` sends it to.
pub fn push_along_h(h: &Evaluator, m: &MetaProb) -> Result<Prob> {
    let space = m.base();
    let mut w = vec![Rational::zero(); space.num_atoms()];
    for (wt, p) in m.iter() {
        let a = h(p)?;
        w[a] = &w[a] + wt;
    }
    Prob::new(space, w)
}

fn law_report(space: &FinMeasSpace, h: &Evaluator, probes: &AlgebraProbes) -> Result<Report> {
    let atoms: Vec<usize> = (0..space.num_atoms()).collect();
    let unit = par_check("algebra-unit", &atoms, |&a| {
        let got = h(&Prob::dirac_atom(space, a))?;
        Ok((got != a).then(|| format!("h(δ_{}) = {}", space.atom_key(a), space.atom_key(got))))
    })?;
    let metas: Vec<&MetaProb> = probes.metas.iter().filter(|m| m.base() == space).collect();
    let mult = par_check("algebra-multiplication", &metas, |m| {
        let lhs = h(&mu(m))?;
        let rhs = h(&push_along_h(h, m)?)?;
        Ok((lhs != rhs).then(|| {
            format!(
                "h(μ M) = {} but h(G(h) M) = {} for M = {m:?}",
                space.atom_key(lhs),
                space.atom_key(rhs)
            )
        }))
    })?;
    Ok(Report {
        checks: vec![unit, mult],
    })
}

impl GiryAlgebra {
    /// Admit an evaluator after checking both laws on the probes.
    pub fn new(space: &FinMeasSpace, h: Arc<Evaluator>, probes: &AlgebraProbes) -> Result<Self> {
        let rep = law_report(space, &*h, probes)?;
        if let Some(f) = rep.first_failure() {
            return Err(Error::Consistency(format!(
                "{} fails: {}",
                f.law,
                f.witness.as_deref().unwrap_or("")
            )));
        }
        Ok(GiryAlgebra {
            space: space.clone(),
            h,
            table: None,
        })
    }

    /// An evaluator given on finitely many measures, keyed canonically.
    ///
    /// Every Dirac measure must be listed. The laws are checked on all towers of
    /// listed measures (support at most two, weights with denominator at most
    /// two) whose required values are listed too; evaluating an unlisted measure
    /// is an input error.
    pub fn from_table(space: &FinMeasSpace, table: BTreeMap<String, usize>) -> Result<Self> {
        for a in 0..space.num_atoms() {
            let key = Prob::dirac_atom(space, a).key();
            if !table.contains_key(&key) {
                return input(format!("algebra table lacks the Dirac measure `{key}`"));
            }
        }
        if let Some((k, _)) = table.iter().find(|(_, &v)| v >= space.num_atoms()) {
            return input(format!("algebra table sends `{k}` outside the space"));
        }
        let t = table.clone();
        let h: Arc<Evaluator> = Arc::new(move |p: &Prob| {
            t.get(&p.key())
                .copied()
                .ok_or_else(|| Error::Input(format!("algebra is undefined at `{}`", p.key())))
        });
        let listed: Vec<Prob> = table
            .keys()
            .map(|k| Prob::from_key(space, k))
            .collect::<Result<_>>()?;
        let defined = |p: &Prob| table.contains_key(&p.key());
        let metas = crate::probes::mixtures(&listed, 2, 2)
            .into_iter()
            .filter_map(|m| MetaProb::from_mixture(space, m).ok())
            .filter(|m| {
                defined(&mu(m)) && push_along_h(&*h, m).map(|p| defined(&p)).unwrap_or(false)
            })
            .collect();
        let alg = Self::new(
            space,
            h,
            &AlgebraProbes {
                probs: listed,
                metas,
            },
        )?;
        Ok(GiryAlgebra {
            table: Some(table),
            ..alg
        })
    }

    pub fn space(&self) -> &FinMeasSpace {
        &self.space
    }

    pub fn evaluator(&self) -> &Evaluator {
        &*self.h
    }

    pub fn table(&self) -> Option<&BTreeMap<String, usize>> {
        self.table.as_ref()
    }

    pub fn apply(&self, p: &Prob) -> Result<usize> {
        if p.space() != &self.space {
            return Err(Error::SpaceMismatch(
                "measure is not on the algebra's space".into(),
            ));
        }
        (self.h)(p)
    }

    /// Whether `h` is known at `p`; always true unless given by a table.
    pub fn is_defined(&self, p: &Prob) -> bool {
        self.table.as_ref().is_none_or(|t| t.contains_key(&p.key()))
    }

    pub fn laws(&self, probes: &AlgebraProbes) -> Result<Report> {
        law_report(&self.space, &*self.h, probes)
    }
}

/// The algebra `Σε_A` on `Σ̂ A`: the barycenter of the pushed-forward measure.
pub fn algebra_from_convex(space: &ConvexSpace, probes: &AlgebraProbes) -> Result<GiryAlgebra> {
    let x = sigma_space(space)?;
    let a = space.clone();
    let xs = x.clone();
    let h: Arc<Evaluator> = Arc::new(move |p: &Prob| {
        let Element::Index(i) = counit(&a, &elements_of_measure(&a, p)?)? else {
            return input("counit left the carrier");
        };
        let labels = a.labels().expect("finite carrier");
        Ok(xs.atom_of(xs.index_of(&labels[i])?))
    });
    GiryAlgebra::new(&x, h, probes)
}

/// `Σ̂ A` as an explicit space, required to be separated.
pub fn sigma_space(space: &ConvexSpace) -> Result<FinMeasSpace> {
    if !space.is_finite_carrier() {
        return Err(Error::Precondition(
            "algebras are built on finite carriers".into(),
        ));
    }
    let x = sigma_functor(space, Variant::Join)?
        .explicit()
        .cloned()
        .expect("finite carriers are explicit");
    if !x.is_separated() {
        return Err(Error::Precondition("Σ̂ A is not separated".into()));
    }
    Ok(x)
}

/// The quotient of `P(X)` by the fibres of `h`, presented on the atoms of `X`.
#[derive(Clone, Debug)]
pub struct Coequalizer {
    quotient: ConvexSpace,
    alg: GiryAlgebra,
}

impl Coequalizer {
    pub fn quotient(&self) -> &ConvexSpace {
        &self.quotient
    }

    pub fn algebra(&self) -> &GiryAlgebra {
        &self.alg
    }

    /// `q(P) = [P]`, the class of `P`, named by `h(P)`.
    pub fn q(&self, p: &Prob) -> Result<usize> {
        self.alg.apply(p)
    }

    /// `θ(x) = q(δ_x)` as a map into `Σ̂ CoEq`.
    pub fn theta(&self) -> Result<MeasurableMap> {
        let x = self.alg.space();
        let target = sigma_functor(&self.quotient, Variant::Join)?
            .explicit()
            .cloned()
            .expect("finite carrier");
        let graph = (0..x.num_points())
            .map(|i| {
                let c = self.q(&Prob::dirac_atom(x, x.atom_of(i)))?;
                target.index_of(x.atom_key(c))
            })
            .collect::<Result<Vec<_>>>()?;
        MeasurableMap::new(x, &target, graph)
    }
}

/// Build the quotient. The binary combination is read off `h` at weight one
/// half; the checks then confirm it agrees with `h` at every probe weight.
pub fn coequalizer(alg: &GiryAlgebra) -> Result<Coequalizer> {
    let x = alg.space();
    let n = x.num_atoms();
    let half = Rational::half();
    let mut mid = vec![vec![0; n]; n];
    for (a, row) in mid.iter_mut().enumerate() {
        for (b, m) in row.iter_mut().enumerate() {
            *m = alg.apply(&Prob::dirac_atom(x, a).mix(&Prob::dirac_atom(x, b), &half)?)?;
        }
    }
    let labels: Vec<String> = (0..n).map(|a| x.atom_key(a).to_string()).collect();
    let table = FiniteTable::new(
        labels,
        Arc::new(move |a: usize, b: usize, alpha: &Rational| {
            if alpha.is_zero() {
                a
            } else if alpha.is_one() {
                b
            } else {
                mid[a][b]
            }
        }),
    )?;
    Ok(Coequalizer {
        quotient: ConvexSpace::Table(table),
        alg: alg.clone(),
    })
}

/// Test codomains for the universal property.
pub fn test_codomains() -> Vec<ConvexSpace> {
    vec![ConvexSpace::two(), ConvexSpace::chain(3)]
}

/// Axioms of the induced structure, the coequalizing condition, affinity of `q`,
/// the congruence property, and uniqueness of factorizations into the test
/// codomains.
pub fn coequalizer_suite(coeq: &Coequalizer, probes: &AlgebraProbes) -> Result<Report> {
    let alg = &coeq.alg;
    let x = alg.space();
    let quotient = &coeq.quotient;
    let elems = quotient.elements().expect("finite carrier");
    let alphas = canonical_alphas();
    let mut rep = Report::new();
    let mut axioms = LawCheck::new("coeq-axioms");
    for c in axiom_suite(quotient, &elems, &alphas).checks {
        axioms.absorb(c);
    }
    rep.push(axioms);

    let metas: Vec<&MetaProb> = probes.metas.iter().filter(|m| m.base() == x).collect();
    rep.push(par_check("coeq-coforks", &metas, |m| {
        let lhs = coeq.q(&epsilon_of_measures(m)?)?;
        let rhs = coeq.q(&push_along_h(alg.evaluator(), m)?)?;
        Ok((lhs != rhs).then(|| {
            format!(
                "q(ε M) = {} but q(G(h) M) = {} for {m:?}",
                x.atom_key(lhs),
                x.atom_key(rhs)
            )
        }))
    })?);

    let probs: Vec<&Prob> = probes
        .probs
        .iter()
        .filter(|p| p.space() == x && alg.is_defined(p))
        .collect();
    let pairs: Vec<(&Prob, &Prob)> = probs
        .iter()
        .flat_map(|p| probs.iter().map(move |r| (*p, *r)))
        .collect();
    rep.push(par_check("coeq-q-affine", &pairs, |(p, r)| {
        for alpha in &alphas {
            let mixed = p.mix(r, alpha)?;
            if !alg.is_defined(&mixed) {
                continue;
            }
            let lhs = coeq.q(&mixed)?;
            let rhs = quotient.cc_index(coeq.q(p)?, coeq.q(r)?, alpha);
            if lhs != rhs {
                return Ok(Some(format!(
                    "q({p:?} +_{alpha} {r:?}) = {} vs {}",
                    x.atom_key(lhs),
                    x.atom_key(rhs)
                )));
            }
        }
        Ok(None)
    })?);

    // classes of the small probes; mixing representatives must respect classes
    let small: Vec<Prob> = probs_with_denominators(x, 2)
        .into_iter()
        .filter(|p| alg.is_defined(p))
        .collect();
    let class: Vec<usize> = small.iter().map(|p| coeq.q(p)).collect::<Result<_>>()?;
    let mut congruence = LawCheck::new("coeq-congruence");
    for i in 0..small.len() {
        for j in 0..small.len() {
            if class[i] != class[j] {
                continue;
            }
            for k in 0..small.len() {
                for l in 0..small.len() {
                    if class[k] != class[l] {
                        continue;
                    }
                    for alpha in &alphas {
                        let (mi, mj) = (
                            small[i].mix(&small[k], alpha)?,
                            small[j].mix(&small[l], alpha)?,
                        );
                        if !alg.is_defined(&mi) || !alg.is_defined(&mj) {
                            continue;
                        }
                        let a = coeq.q(&mi)?;
                        let b = coeq.q(&mj)?;
                        congruence.record(a == b, || {
                            format!(
                                "{:?} ~ {:?} and {:?} ~ {:?} but mixes at {alpha} differ",
                                small[i], small[j], small[k], small[l]
                            )
                        });
                    }
                }
            }
        }
    }
    rep.push(congruence);
    rep.push(universal_property(coeq, &small)?);
    Ok(rep)
}

/// Every affine coforking map `g` on the probe set factors through `q` by exactly
/// one affine map out of the quotient, and every affine map out of the quotient
/// arises this way.
fn universal_property(coeq: &Coequalizer, probe_set: &[Prob]) -> Result<LawCheck> {
    let x = coeq.alg.space();
    let mut check = LawCheck::new("coeq-universal");
    let mut c = ProbeConstraints {
        fixed: vec![None; probe_set.len()],
        ..Default::default()
    };
    c.triples = mixing_triples(probe_set)?;
    for (i, p) in probe_set.iter().enumerate() {
        let target = Prob::dirac_atom(x, coeq.q(p)?);
        match probe_set.iter().position(|s| s == &target) {
            Some(j) if j != i => c.equal.push((i, j)),
            Some(_) => {}
            None => return input("probe set must contain every Dirac measure"),
        }
    }
    let qs: Vec<usize> = probe_set.iter().map(|p| coeq.q(p)).collect::<Result<_>>()?;
    for b in test_codomains() {
        let coforks = solve_on_probes(&b, probe_set.len(), &c, usize::MAX)?;
        let factors = hom_enum(&coeq.quotient, &b, max_enum())?;
        let tables: Vec<Vec<usize>> = factors
            .iter()
            .map(|m| {
                (0..x.num_atoms())
                    .map(|a| match m.apply(&Element::Index(a))? {
                        Element::Index(v) => Ok(v),
                        e => input(format!("{e:?} is not a carrier index")),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        for g in &coforks {
            let through: Vec<&Vec<usize>> = tables
                .iter()
                .filter(|t| qs.iter().zip(g).all(|(&qa, &ga)| t[qa] == ga))
                .collect();
            check.record(through.len() == 1, || {
                format!(
                    "coforking map {g:?} into {} factors {} ways",
                    b.kind(),
                    through.len()
                )
            });
        }
        check.record(coforks.len() == tables.len(), || {
            format!(
                "{} coforking maps but {} affine maps out of the quotient into {}",
                coforks.len(),
                tables.len(),
                b.kind()
            )
        });
    }
    Ok(check)
}

/// `θ` is a measurable bijection with measurable inverse, and an algebra
/// morphism: `θ ∘ h = Σ(ε_CoEq) ∘ G(θ)` on the probes.
pub fn theta_check(coeq: &Coequalizer, probes: &AlgebraProbes) -> Result<Report> {
    let mut bij = LawCheck::new("theta-bijective");
    let mut square = LawCheck::new("theta-algebra-square");
    let theta = match coeq.theta() {
        Ok(t) => t,
        Err(e) => {
            bij.fail(format!("θ is not measurable: {e}"));
            return Ok(Report {
                checks: vec![bij, square],
            });
        }
    };
    bij.record(theta.is_bijective(), || {
        format!("θ = {:?} is not a bijection", theta.graph_ids())
    });
    if theta.is_bijective() {
        if let Err(e) = theta.inverse() {
            bij.fail(format!("θ⁻¹ is not measurable: {e}"));
        }
    }
    let x = coeq.alg.space();
    let probs: Vec<&Prob> = probes
        .probs
        .iter()
        .filter(|p| p.space() == x && coeq.alg.is_defined(p))
        .collect();
    let sq = par_check("theta-algebra-square", &probs, |p| {
        let lhs = theta.apply(x.atoms()[coeq.alg.apply(p)?][0]);
        let pushed = pushforward(&theta, p)?;
        let Element::Index(c) = counit(
            &coeq.quotient,
            &elements_of_measure(&coeq.quotient, &pushed)?,
        )?
        else {
            return input("counit left the carrier");
        };
        let rhs = theta.cod().index_of(x.atom_key(c))?;
        Ok((lhs != rhs).then(|| {
            format!(
                "θ(h P) = {} but ε(G(θ) P) = {} for {p:?}",
                theta.cod().point(lhs),
                theta.cod().point(rhs)
            )
        }))
    })?;
    square.absorb(sq);
    Ok(Report {
        checks: vec![bij, square],
    })
}

/// A bijection of carriers preserving every combination at the canonical
/// weights, or the first mismatched triple of the label-matching candidate.
pub fn find_isomorphism(
    a: &ConvexSpace,
    b: &ConvexSpace,
) -> Result<std::result::Result<Vec<usize>, String>> {
    let (Some(n), Some(m)) = (a.carrier_size(), b.carrier_size()) else {
        return input("isomorphism search needs finite carriers");
    };
    if n != m {
        return Ok(Err(format!("carriers have {n} and {m} elements")));
    }
    if n > 8 {
        return Err(Error::EnumerationCap {
            needed: (1..=n as u128).product(),
            cap: 40320,
        });
    }
    let alphas = canonical_alphas();
    let mismatch = |perm: &[usize]| {
        for x in 0..n {
            for y in 0..n {
                for alpha in &alphas {
                    if perm[a.cc_index(x, y, alpha)] != b.cc_index(perm[x], perm[y], alpha) {
                        return Some((x, y, alpha.clone()));
                    }
                }
            }
        }
        None
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let first = mismatch(&perm);
    loop {
        if mismatch(&perm).is_none() {
            return Ok(Ok(perm));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let (x, y, alpha) = first.expect("identity failed");
    let la = a.labels().expect("finite");
    Ok(Err(format!(
        "no isomorphism; e.g. {} +_{alpha} {} under the identity matching",
        la[x], la[y]
    )))
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Algebra laws, coequalizer checks and `θ` for one algebra, plus the return
/// trip: the algebra of the quotient agrees with `h` after relabelling by `θ`.
pub fn algebra_suite(alg: &GiryAlgebra, probes: &AlgebraProbes) -> Result<Report> {
    let mut rep = alg.laws(probes)?;
    let coeq = coequalizer(alg)?;
    rep.extend(coequalizer_suite(&coeq, probes)?);
    rep.extend(theta_check(&coeq, probes)?);

    let mut back = LawCheck::new("roundtrip-algebra");
    match (coeq.theta(), sigma_space(coeq.quotient())) {
        (Ok(theta), Ok(y)) => {
            let alg2 = algebra_from_convex(coeq.quotient(), &AlgebraProbes::standard(&y, 0, 0))?;
            let x = alg.space();
            let probs: Vec<&Prob> = probes
                .probs
                .iter()
                .filter(|p| p.space() == x && alg.is_defined(p))
                .collect();
            back.absorb(par_check("roundtrip-algebra", &probs, |p| {
                let lhs = theta.apply(x.atoms()[alg.apply(p)?][0]);
                let rhs = y.atoms()[alg2.apply(&pushforward(&theta, p)?)?][0];
                Ok((lhs != rhs).then(|| {
                    format!(
                        "θ(h P) = {} but h'(G(θ) P) = {} for {p:?}",
                        y.point(lhs),
                        y.point(rhs)
                    )
                }))
            })?);
        }
        (Err(e), _) | (_, Err(e)) => back.fail(format!(
            "quotient cannot be turned back into an algebra: {e}"
        )),
    }
    rep.push(back);
    Ok(rep)
}

/// From a finite convex space to its algebra and back: the quotient must be
/// isomorphic to the original space.
pub fn equivalence_roundtrip(space: &ConvexSpace, probes: &AlgebraProbes) -> Result<Report> {
    let alg = algebra_from_convex(space, probes)?;
    let mut rep = algebra_suite(&alg, probes)?;
    let coeq = coequalizer(&alg)?;
    let mut iso = LawCheck::new("roundtrip-iso");
    match find_isomorphism(space, coeq.quotient())? {
        Ok(_) => iso.record(true, String::new),
        Err(w) => iso.fail(w),
    }
    rep.push(iso);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convex::Semilattice;
    use crate::rational::q;

    fn quick(space: &FinMeasSpace) -> AlgebraProbes {
        AlgebraProbes {
            probs: probs_with_denominators(space, 3),
            metas: two_level_towers(space, 2, 2),
        }
    }

    #[test]
    fn algebra_of_two_is_meet_of_support() {
        let two = ConvexSpace::two();
        let x = sigma_space(&two).unwrap();
        let alg = algebra_from_convex(&two, &quick(&x)).unwrap();
        let one = x.index_of("1").unwrap();
        for p in probs_with_denominators(&x, 4) {
            let want = if p.weight(x.atom_of(one)).is_one() {
                x.atom_of(one)
            } else {
                x.atom_of(x.index_of("0").unwrap())
            };
            assert_eq!(alg.apply(&p).unwrap(), want, "{p:?}");
        }
    }

    #[test]
    fn corrupted_evaluator_is_rejected() {
        let two = ConvexSpace::two();
        let x = sigma_space(&two).unwrap();
        let good = algebra_from_convex(&two, &quick(&x)).unwrap();
        let swapped: Arc<Evaluator> = Arc::new(move |p: &Prob| good.apply(p).map(|a| 1 - a));
        assert!(matches!(
            GiryAlgebra::new(&x, swapped, &quick(&x)),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn singleton_and_chain_round_trips() {
        for space in [
            ConvexSpace::chain(1),
            ConvexSpace::two(),
            ConvexSpace::chain(3),
        ] {
            let x = sigma_space(&space).unwrap();
            let rep = equivalence_roundtrip(&space, &quick(&x)).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert_eq!(rep.checks.len(), 11);
        }
    }

    #[test]
    fn diamond_round_trip() {
        let d = Semilattice::from_order(
            vec!["b".into(), "l".into(), "r".into(), "t".into()],
            |a, b| a == b || a == 0 || b == 3,
        )
        .unwrap();
        let space = ConvexSpace::Semilattice(d);
        let x = sigma_space(&space).unwrap();
        let rep = equivalence_roundtrip(&space, &quick(&x)).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }

    #[test]
    fn coequalizer_of_two_has_meet_structure() {
        let two = ConvexSpace::two();
        let x = sigma_space(&two).unwrap();
        let coeq = coequalizer(&algebra_from_convex(&two, &quick(&x)).unwrap()).unwrap();
        let z = x.atom_of(x.index_of("0").unwrap());
        let o = x.atom_of(x.index_of("1").unwrap());
        for alpha in [q(1, 3), q(1, 2), q(2, 3)] {
            assert_eq!(coeq.quotient().cc_index(o, o, &alpha), o);
            assert_eq!(coeq.quotient().cc_index(o, z, &alpha), z);
        }
        assert!(find_isomorphism(&two, coeq.quotient()).unwrap().is_ok());
    }

    #[test]
    fn table_algebra_needs_diracs() {
        let x = FinMeasSpace::discrete(&["a", "b"]).unwrap();
        let mut t = BTreeMap::new();
        t.insert(Prob::dirac(&x, 0).key(), 0);
        assert!(matches!(
            GiryAlgebra::from_table(&x, t.clone()),
            Err(Error::Input(_))
        ));
        t.insert(Prob::dirac(&x, 1).key(), 1);
        t.insert(Prob::uniform(&x).key(), 0);
        let alg = GiryAlgebra::from_table(&x, t).unwrap();
        assert_eq!(alg.apply(&Prob::uniform(&x)).unwrap(), 0);
        assert!(matches!(
            alg.apply(&Prob::new(&x, vec![q(1, 3), q(2, 3)]).unwrap()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn mismatched_spaces_are_not_isomorphic() {
        let r = find_isomorphism(&ConvexSpace::two(), &ConvexSpace::chain(3)).unwrap();
        assert!(r.is_err());
        let v = Semilattice::from_order(vec!["b".into(), "l".into(), "r".into()], |a, b| {
            a == b || a == 0
        })
        .unwrap();
        let r = find_isomorphism(&ConvexSpace::chain(3), &ConvexSpace::Semilattice(v)).unwrap();
        assert!(r.is_err());
    }
}
