//! The command surface behind the `girylab` binary: law suites over a model
//! file, kernel composition, barycenters and separation quotients.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{algebra_suite, equivalence_roundtrip, sigma_space, AlgebraProbes};
use crate::convex::{axiom_suite, canonical_alphas, ConvexSpace, Element};
use crate::error::{Error, Result};
use crate::factorization::{
    adjunct_uniqueness, affine_measure_path_check, counit, counit_naturality, counit_suite,
    evaluation, lemma_suite_scale_preserve, measure_from_spec, no_choice_witness,
    point_from_alpha2, point_from_two_valued, spec_from_measure, triangle_suite,
    weakly_averaging_two_valued, Adjunct, ProbeFunction, TriangleProbes,
};
use crate::finmeas::{hom_and_function_space, max_enum, separation_suite, FinMeasSpace};
use crate::giry::{kleisli_compose, monad_law_suite, pushforward, Kernel, Mixture, MonadProbes};
use crate::model::{canonical, format_element, kernel_json, separation_json, MeasureEntry, Model};
use crate::probes::{
    mixtures, probs_with_denominators, random_prob, random_tower, seeded, three_level_towers,
    two_level_towers,
};
use crate::rational::{unit_grid, Rational};
use crate::report::{LawCheck, Report};
use crate::sigma::{boolean_pairs, mcoprod_check, separated_check, Variant};

/// Suite names with the statement each one checks, in run order.
pub const SUITES: &[(&str, &str)] = &[
    ("separation", "separation quotient: idempotence, functoriality and naturality of induced maps, hom bijection Hom(X_s, Y) = Hom(X, Y) for separated Y"),
    ("function-space", "the evaluation σ-algebra on Hom(X, Y) is separated when X and Y are"),
    ("monad", "unit laws and associativity of the multiplication of the finite Giry monad"),
    ("kleisli", "identity and associativity of kernel composition, and composition acting on measures"),
    ("convex", "idempotence, parametric commutativity and parametric associativity of each convex space"),
    ("sigma", "Boolean pairs split Σ A as a coproduct, and the joined Boolean/interval σ-algebra separates points"),
    ("spec", "a measure and its integral functional determine each other, naturally in the space; weak averaging, scaling, path and ε₂ compatibility, additivity, sequential continuity"),
    ("two-valued", "a weakly averaging affine functional 2^X -> 2 obeying the complement law is evaluation at a point, and evaluations are recovered from Dirac measures"),
    ("counit", "the barycenter of P lies in a Boolean pair U exactly when P(U) = 1; the barycenter is affine, fixes Dirac measures and commutes with affine maps"),
    ("triangles", "both triangle identities, the multiplication as a barycenter of measures, and uniqueness of affine extensions"),
    ("paths", "a family of measures is affine in its parameter exactly when every integral is"),
    ("algebra", "algebra laws, the coequalizer of an algebra with its universal property, θ and the round trips between algebras and convex spaces"),
];

pub fn list_suites() -> String {
    let v: Vec<Value> = SUITES
        .iter()
        .map(|(n, d)| json!({ "suite": n, "checks": d }))
        .collect();
    canonical(&Value::Array(v))
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub suite: String,
    pub seed: u64,
    pub timings: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            suite: "all".into(),
            seed: 0,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: String,
    pub subject: String,
    pub law: String,
    pub status: &'static str,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub passed: bool,
    pub records: Vec<CheckRecord>,
    pub text: String,
}

type Subjects = Vec<(String, Report, Duration)>;

fn run_subjects<T: Sync>(
    items: Vec<(String, T)>,
    f: impl Fn(&T) -> Result<Report> + Sync,
) -> Result<Subjects> {
    items
        .par_iter()
        .map(|(name, item)| {
            let start = Instant::now();
            let rep = f(item)?;
            Ok((name.clone(), rep, start.elapsed()))
        })
        .collect()
}

/// Merge checks that share a law name, keeping first-seen order.
fn merge(reports: impl IntoIterator<Item = Report>) -> Report {
    let mut out = Report::new();
    for r in reports {
        for c in r.checks {
            match out.checks.iter_mut().find(|o| o.law == c.law) {
                Some(o) => o.absorb(c),
                None => out.push(c),
            }
        }
    }
    out
}

fn spaces(model: &Model) -> Vec<(String, FinMeasSpace)> {
    model
        .spaces
        .iter()
        .map(|(n, s)| (n.clone(), s.clone()))
        .collect()
}

fn convexes(model: &Model) -> Vec<(String, ConvexSpace)> {
    model
        .convex
        .iter()
        .map(|(n, s)| (n.clone(), s.clone()))
        .collect()
}

/// Sample elements: the whole carrier when finite, a small grid otherwise.
fn sample_elements(space: &ConvexSpace) -> Vec<Element> {
    space.elements().unwrap_or_else(|| space.probe_elements(2))
}

/// Measures over the elements of a convex space: every support pattern of at
/// most three (four on carriers of four elements) with denominators up to four
/// when finite; grid points mixed in pairs otherwise.
fn convex_measures(space: &ConvexSpace, extra: Vec<Mixture<Element>>) -> Vec<Mixture<Element>> {
    let mut out = match space.elements() {
        Some(e) => {
            let support = if e.len() <= 4 { e.len() } else { 3 };
            mixtures(&e, support, 4)
        }
        None => mixtures(&space.probe_elements(2), 2, 2),
    };
    out.extend(extra);
    out
}

fn suite_separation(model: &Model, _seed: u64) -> Result<Subjects> {
    let pairs: Vec<(String, (FinMeasSpace, FinMeasSpace))> = spaces(model)
        .iter()
        .flat_map(|(a, x)| {
            spaces(model)
                .into_iter()
                .map(move |(b, y)| (format!("{a}->{b}"), (x.clone(), y)))
        })
        .collect();
    run_subjects(pairs, |(x, y)| separation_suite(x, y, max_enum()))
}

fn suite_function_space(model: &Model, _seed: u64) -> Result<Subjects> {
    let pairs: Vec<(String, (FinMeasSpace, FinMeasSpace))> = spaces(model)
        .iter()
        .filter(|(_, x)| x.is_separated())
        .flat_map(|(a, x)| {
            spaces(model)
                .into_iter()
                .filter(|(_, y)| y.is_separated())
                .map(move |(b, y)| (format!("{a}->{b}"), (x.clone(), y)))
        })
        .collect();
    run_subjects(pairs, |(x, y)| {
        let (maps, fs) = hom_and_function_space(x, y, max_enum())?;
        let mut c = LawCheck::new("function-space-separated");
        c.record(fs.is_separated(), || {
            format!("{} maps but only {} atoms", maps.len(), fs.num_atoms())
        });
        Ok(c.into())
    })
}

fn suite_monad(model: &Model, seed: u64) -> Result<Subjects> {
    let items: Vec<(String, (FinMeasSpace, Vec<crate::giry::Prob>))> = model
        .spaces
        .iter()
        .map(|(n, s)| (n.clone(), (s.clone(), model.measures_on_space(n))))
        .collect();
    run_subjects(items, |(x, extra)| {
        let small = x.num_atoms() <= 3;
        let mut probs = probs_with_denominators(x, if small { 4 } else { 2 });
        probs.extend(extra.iter().cloned());
        let mut towers = if small { three_level_towers(x) } else { vec![] };
        let mut rng = seeded(seed);
        towers.extend((0..100).map(|_| random_tower(x, &mut rng)));
        Ok(monad_law_suite(x, &MonadProbes { probs, towers }))
    })
}

fn suite_kleisli(model: &Model, _seed: u64) -> Result<Subjects> {
    let kernels: Vec<(String, Kernel)> = model
        .kernels
        .iter()
        .map(|(n, k)| (n.clone(), k.kernel.clone()))
        .collect();
    let items: Vec<(String, (Kernel, Vec<Kernel>))> = kernels
        .iter()
        .map(|(n, k)| {
            (
                n.clone(),
                (k.clone(), kernels.iter().map(|(_, k)| k.clone()).collect()),
            )
        })
        .collect();
    run_subjects(items, |(k, all)| {
        let mut unit = LawCheck::new("kleisli-unit");
        let left = kleisli_compose(&Kernel::identity(k.dom()), k)?;
        let right = kleisli_compose(k, &Kernel::identity(k.cod()))?;
        unit.record(&left == k && &right == k, || {
            format!("identity does not fix {k:?}")
        });
        let mut assoc = LawCheck::new("kleisli-associativity");
        let mut action = LawCheck::new("kleisli-action");
        for k2 in all.iter().filter(|k2| k2.dom() == k.cod()) {
            let kk = kleisli_compose(k, k2)?;
            for p in probs_with_denominators(k.dom(), 2) {
                let lhs = kk.apply(&p)?;
                let rhs = k2.apply(&k.apply(&p)?)?;
                action.record(lhs == rhs, || {
                    format!("composite acts differently on {p:?}")
                });
            }
            for k3 in all.iter().filter(|k3| k3.dom() == k2.cod()) {
                let a = kleisli_compose(&kk, k3)?;
                let b = kleisli_compose(k, &kleisli_compose(k2, k3)?)?;
                assoc.record(a == b, || format!("({k:?} ; {k2:?}) ; {k3:?} differs"));
            }
        }
        Ok(Report {
            checks: vec![unit, assoc, action],
        })
    })
}

fn suite_convex(model: &Model, _seed: u64) -> Result<Subjects> {
    run_subjects(convexes(model), |a| {
        Ok(axiom_suite(a, &sample_elements(a), &canonical_alphas()))
    })
}

fn suite_sigma(model: &Model, _seed: u64) -> Result<Subjects> {
    let supported: Vec<(String, ConvexSpace)> = convexes(model)
        .into_iter()
        .filter(|(_, a)| !matches!(a, ConvexSpace::Polytope { .. }))
        .collect();
    run_subjects(supported, |a| {
        let mut parts = Vec::new();
        if a.is_finite_carrier() {
            for pair in boolean_pairs(a)? {
                parts.push(mcoprod_check(a, &pair)?);
            }
        }
        // R∞ is used as a codomain only; its finite points are not separated
        if *a != ConvexSpace::RInfty {
            parts.push(separated_check(a, Variant::Join, None)?);
        }
        Ok(merge(parts))
    })
}

fn probe_functions(x: &FinMeasSpace, rng: &mut impl rand::Rng) -> Result<Vec<ProbeFunction>> {
    let mut out: Vec<ProbeFunction> = x
        .all_sets(max_enum())?
        .iter()
        .map(ProbeFunction::indicator)
        .collect();
    for _ in 0..4 {
        let values = (0..x.num_atoms())
            .map(|_| Rational::new(rng.gen_range(0..=6), 6))
            .collect();
        out.push(ProbeFunction::new(x, values)?);
    }
    Ok(out)
}

fn suite_spec(model: &Model, seed: u64) -> Result<Subjects> {
    type Item = (FinMeasSpace, Vec<crate::giry::Prob>, Vec<crate::finmeas::MeasurableMap>);
    let items: Vec<(String, Item)> = model
        .spaces
        .iter()
        .map(|(n, s)| {
            let maps = model
                .maps
                .values()
                .filter(|m| &m.dom == n)
                .map(|m| m.map.clone())
                .collect();
            (n.clone(), (s.clone(), model.measures_on_space(n), maps))
        })
        .collect();
    run_subjects(items, |(x, extra, maps)| {
        let mut rng = seeded(seed);
        let mut probs: Vec<_> = (0..50).map(|_| random_prob(x, &mut rng)).collect();
        probs.extend(extra.iter().cloned());
        let fns = probe_functions(x, &mut rng)?;
        let grid = unit_grid(2);
        let mut round = LawCheck::new("spec-round-trip");
        let mut natural = LawCheck::new("spec-naturality");
        let mut parts = Vec::new();
        for p in &probs {
            let alpha = spec_from_measure(p);
            let back = measure_from_spec(&alpha)?;
            round.record(&back == p, || format!("{p:?} came back as {back:?}"));
            for f in maps {
                let via = measure_from_spec(&alpha.pushforward(f)?)?;
                let direct = pushforward(f, p)?;
                natural.record(via == direct, || {
                    format!("along {f:?}: {via:?} vs {direct:?}")
                });
            }
            parts.push(lemma_suite_scale_preserve(&alpha, &fns, &grid)?);
        }
        let mut rep = Report {
            checks: vec![round, natural],
        };
        rep.extend(merge(parts));
        Ok(rep)
    })
}

fn suite_two_valued(model: &Model, _seed: u64) -> Result<Subjects> {
    let items: Vec<(String, FinMeasSpace)> = spaces(model)
        .into_iter()
        .filter(|(_, x)| x.is_separated() && x.num_atoms() <= 3)
        .collect();
    run_subjects(items, |x| {
        let mut law = LawCheck::new("two-valued-complement-law-iff-evaluation");
        for a in weakly_averaging_two_valued(x, max_enum())? {
            let is_eval = (0..x.num_atoms()).any(|i| evaluation(x, i) == a);
            let complement = no_choice_witness(x, &a).is_none();
            law.record(is_eval == complement, || {
                format!("{a:?}: evaluation {is_eval}, complement law {complement}")
            });
            if complement {
                let p = point_from_two_valued(x, &a)?;
                law.record(evaluation(x, x.atom_of(p)) == a, || {
                    format!("recovered `{}` for {a:?}", x.point(p))
                });
            }
        }
        let mut recover = LawCheck::new("two-valued-dirac-recovery");
        for i in 0..x.num_points() {
            let got = point_from_alpha2(&spec_from_measure(&crate::giry::Prob::dirac(x, i)))?;
            recover.record(got == i, || {
                format!("δ_{} gave `{}`", x.point(i), x.point(got))
            });
        }
        Ok(Report {
            checks: vec![law, recover],
        })
    })
}

fn suite_counit(model: &Model, _seed: u64) -> Result<Subjects> {
    type Item = (ConvexSpace, Vec<Mixture<Element>>, Vec<crate::convex::AffineMap>);
    let items: Vec<(String, Item)> = convexes(model)
        .into_iter()
        .filter(|(_, a)| !matches!(a, ConvexSpace::Polytope { .. }))
        .map(|(n, a)| {
            let maps = model
                .affine_maps
                .values()
                .filter(|m| m.dom == n)
                .map(|m| m.map.clone())
                .collect();
            let extra = model.measures_on_convex(&n);
            (n, (a, extra, maps))
        })
        .collect();
    run_subjects(items, |(a, extra, maps)| {
        let measures = convex_measures(a, extra.clone());
        let mut rep = counit_suite(a, &measures)?;
        let mut nat = LawCheck::new("counit-naturality");
        for m in maps {
            nat.absorb(counit_naturality(m, &measures)?);
        }
        rep.push(nat);
        Ok(rep)
    })
}

fn suite_triangles(model: &Model, _seed: u64) -> Result<Subjects> {
    type Item = (Option<FinMeasSpace>, Option<ConvexSpace>);
    let mut items: Vec<(String, Item)> = Vec::new();
    for (n, x) in spaces(model) {
        items.push((n, (Some(x), None)));
    }
    for (n, a) in convexes(model) {
        items.push((n, (None, Some(a))));
    }
    let xs = spaces(model);
    run_subjects(items, |item| match item {
        (Some(x), _) => {
            let small = x.num_atoms() <= 3;
            let probes = TriangleProbes {
                probs: probs_with_denominators(x, if small { 4 } else { 2 }),
                metas: if small {
                    two_level_towers(x, 3, 4)
                } else {
                    two_level_towers(x, 2, 2)
                },
                elements: vec![],
            };
            let rep = triangle_suite(x, &ConvexSpace::two(), &probes)?;
            Ok(Report {
                checks: rep
                    .checks
                    .into_iter()
                    .filter(|c| c.law != "triangle-convex")
                    .collect(),
            })
        }
        (None, Some(a)) => {
            let probes = TriangleProbes {
                elements: sample_elements(a),
                ..Default::default()
            };
            let dummy = FinMeasSpace::discrete(&["*"])?;
            let rep = triangle_suite(&dummy, a, &probes)?;
            let mut rep = Report {
                checks: rep
                    .checks
                    .into_iter()
                    .filter(|c| c.law == "triangle-convex")
                    .collect(),
            };
            if let Some(n) = a.carrier_size() {
                let mut uniq = LawCheck::new("adjunct-unique");
                for (_, x) in xs.iter().filter(|(_, x)| {
                    (n as u64)
                        .checked_pow(x.num_atoms() as u32)
                        .is_some_and(|c| c <= 64)
                }) {
                    let s = probs_with_denominators(x, 2);
                    let mut values = vec![0usize; x.num_atoms()];
                    loop {
                        let adj = Adjunct::new(
                            x,
                            a,
                            values.iter().map(|&v| Element::Index(v)).collect(),
                        )?;
                        uniq.absorb(adjunct_uniqueness(&adj, &s)?);
                        // odometer over atom values
                        let Some(i) = values.iter().rposition(|&v| v + 1 < n) else {
                            break;
                        };
                        values[i] += 1;
                        values[i + 1..].iter_mut().for_each(|v| *v = 0);
                    }
                }
                rep.push(uniq);
            }
            Ok(rep)
        }
        _ => unreachable!("one side is always set"),
    })
}

fn suite_paths(model: &Model, _seed: u64) -> Result<Subjects> {
    let items: Vec<(String, (FinMeasSpace, Vec<crate::giry::Prob>))> = model
        .spaces
        .iter()
        .map(|(n, s)| (n.clone(), (s.clone(), model.measures_on_space(n))))
        .filter(|(_, (_, ms))| ms.len() >= 2)
        .collect();
    run_subjects(items, |(x, ms)| {
        let grid = unit_grid(4);
        let mut parts = Vec::new();
        for (i, p0) in ms.iter().enumerate() {
            for p1 in &ms[i + 1..] {
                let fam = grid
                    .iter()
                    .map(|r| Ok((r.clone(), p0.mix(p1, r)?)))
                    .collect::<Result<Vec<_>>>()?;
                parts.push(affine_measure_path_check(x, &fam)?);
            }
        }
        Ok(merge(parts))
    })
}

fn suite_algebra(model: &Model, seed: u64) -> Result<Subjects> {
    enum Item {
        Alg(crate::algebra::GiryAlgebra),
        Convex(ConvexSpace),
    }
    let mut items: Vec<(String, Item)> = model
        .algebras
        .iter()
        .map(|(n, a)| (n.clone(), Item::Alg(a.algebra.clone())))
        .collect();
    for (n, a) in convexes(model) {
        if sigma_space(&a).is_ok() {
            items.push((n, Item::Convex(a)));
        }
    }
    run_subjects(items, |item| match item {
        Item::Alg(alg) => {
            let probes = match alg.table() {
                Some(t) => {
                    let probs: Vec<_> = t
                        .keys()
                        .map(|k| crate::giry::Prob::from_key(alg.space(), k))
                        .collect::<Result<_>>()?;
                    AlgebraProbes {
                        probs,
                        metas: vec![],
                    }
                }
                None => AlgebraProbes::standard(alg.space(), seed, 100),
            };
            algebra_suite(alg, &probes)
        }
        Item::Convex(a) => {
            equivalence_roundtrip(a, &AlgebraProbes::standard(&sigma_space(a)?, seed, 100))
        }
    })
}

type SuiteFn = fn(&Model, u64) -> Result<Subjects>;

fn suite_fn(name: &str) -> Option<SuiteFn> {
    Some(match name {
        "separation" => suite_separation,
        "function-space" => suite_function_space,
        "monad" => suite_monad,
        "kleisli" => suite_kleisli,
        "convex" => suite_convex,
        "sigma" => suite_sigma,
        "spec" => suite_spec,
        "two-valued" => suite_two_valued,
        "counit" => suite_counit,
        "triangles" => suite_triangles,
        "paths" => suite_paths,
        "algebra" => suite_algebra,
        _ => return None,
    })
}

/// Run one suite or all of them. Records come out in suite, subject and law
/// order whatever the scheduling.
pub fn cmd_check(model: &Model, opts: &CheckOptions) -> Result<CheckOutcome> {
    let names: Vec<&str> = if opts.suite == "all" {
        SUITES.iter().map(|(n, _)| *n).collect()
    } else {
        match suite_fn(&opts.suite) {
            Some(_) => vec![opts.suite.as_str()],
            None => {
                return Err(Error::Input(format!(
                    "unknown suite `{}`; see --list-suites",
                    opts.suite
                )))
            }
        }
    };
    let mut records = Vec::new();
    for name in names {
        let run = suite_fn(name).expect("listed suite")(model, opts.seed)?;
        for (subject, rep, elapsed) in run {
            for c in rep.checks {
                records.push(CheckRecord {
                    suite: name.to_string(),
                    subject: subject.clone(),
                    status: if c.passed() { "pass" } else { "fail" },
                    law: c.law,
                    cases: c.cases,
                    witness: c.witness,
                    elapsed_ms: opts.timings.then_some(elapsed.as_millis() as u64),
                });
            }
        }
    }
    let passed = records.iter().all(|r| r.status == "pass");
    let v = json!({
        "suite": opts.suite,
        "seed": opts.seed,
        "status": if passed { "pass" } else { "fail" },
        "checks": records,
    });
    Ok(CheckOutcome {
        passed,
        records,
        text: canonical(&v),
    })
}

pub fn cmd_compose(model: &Model, k1: &str, k2: &str) -> Result<String> {
    let a = model
        .kernels
        .get(k1)
        .ok_or_else(|| Error::Input(format!("unknown kernel `{k1}`")))?;
    let b = model
        .kernels
        .get(k2)
        .ok_or_else(|| Error::Input(format!("unknown kernel `{k2}`")))?;
    if a.kernel.cod() != b.kernel.dom() {
        return Err(Error::Input(format!(
            "`{k1}` lands in `{}` but `{k2}` starts at `{}`",
            a.cod, b.dom
        )));
    }
    let k = kleisli_compose(&a.kernel, &b.kernel)?;
    Ok(canonical(&kernel_json(&a.dom, &b.cod, &k)))
}

/// The named kernel written in canonical form.
pub fn cmd_canonical_kernel(model: &Model, k: &str) -> Result<String> {
    let a = model
        .kernels
        .get(k)
        .ok_or_else(|| Error::Input(format!("unknown kernel `{k}`")))?;
    Ok(canonical(&kernel_json(&a.dom, &a.cod, &a.kernel)))
}

pub fn cmd_barycenter(model: &Model, convex: &str, measure: &str) -> Result<String> {
    let a = model
        .convex
        .get(convex)
        .ok_or_else(|| Error::Input(format!("unknown convex space `{convex}`")))?;
    let dist = match model.measures.get(measure) {
        Some(MeasureEntry::OnConvex { convex: c, dist }) if c == convex => dist.clone(),
        Some(_) => {
            return Err(Error::Input(format!(
                "measure `{measure}` is not on `{convex}`"
            )))
        }
        None => return Err(Error::Input(format!("unknown measure `{measure}`"))),
    };
    if matches!(a, ConvexSpace::Polytope { .. }) {
        return Err(Error::Input(
            "barycenters are not offered on polytopes".into(),
        ));
    }
    let b = counit(a, &dist)?;
    Ok(canonical(
        &json!({ "convex": convex, "measure": measure, "barycenter": format_element(a, &b) }),
    ))
}

pub fn cmd_separate(model: &Model, space: &str) -> Result<String> {
    let s = model
        .spaces
        .get(space)
        .ok_or_else(|| Error::Input(format!("unknown space `{space}`")))?;
    Ok(canonical(&separation_json(space, s)))
}
