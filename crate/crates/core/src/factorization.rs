//! The integral pairing, evaluators carried by measures, the barycenter counit,
//! adjuncts and the triangle identities.

use std::collections::BTreeSet;
use std::fmt;

use crate::convex::{canonical_alphas, is_affine, AffineMap, ConvexSpace, Element, Semilattice};
use crate::error::{input, Error, Result};
use crate::finmeas::{max_enum, FinMeasSpace, MeasSet, MeasurableMap};
use crate::giry::{mu, MetaProb, Mixture, Prob};
use crate::rational::Rational;
use crate::report::{LawCheck, Report};
use crate::sigma::{boolean_pairs, BooleanPair};

/// A measurable function into the unit interval, one value per atom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ProbeFunction {
    space: FinMeasSpace,
    values: Vec<Rational>,
}

impl fmt::Debug for ProbeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .map(|(a, v)| format!("{}:{v}", self.space.atom_key(a)))
            .collect();
        write!(f, "f[{}]", parts.join(","))
    }
}

impl ProbeFunction {
    pub fn new(space: &FinMeasSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.num_atoms() {
            return input(format!(
                "probe function has {} values for {} atoms",
                values.len(),
                space.num_atoms()
            ));
        }
        if let Some(a) = values.iter().position(|v| !v.in_unit_interval()) {
            return input(format!(
                "value {} at `{}` is outside [0, 1]",
                values[a],
                space.atom_key(a)
            ));
        }
        Ok(ProbeFunction {
            space: space.clone(),
            values,
        })
    }

    pub fn constant(space: &FinMeasSpace, u: &Rational) -> Result<Self> {
        Self::new(space, vec![u.clone(); space.num_atoms()])
    }

    /// `χ_U`
    pub fn indicator(set: &MeasSet) -> Self {
        let space = set.space().clone();
        let values = (0..space.num_atoms())
            .map(|a| {
                if set.contains_atom(a) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        ProbeFunction { space, values }
    }

    pub fn space(&self) -> &FinMeasSpace {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, atom: usize) -> &Rational {
        &self.values[atom]
    }

    pub fn is_two_valued(&self) -> bool {
        self.values.iter().all(|v| v.is_zero() || v.is_one())
    }

    /// The set where the function equals one.
    pub fn level_one(&self) -> MeasSet {
        MeasSet::from_atoms(
            &self.space,
            (0..self.values.len()).filter(|&a| self.values[a].is_one()),
        )
    }

    fn map_values(&self, f: impl Fn(&Rational) -> Rational) -> ProbeFunction {
        ProbeFunction {
            space: self.space.clone(),
            values: self.values.iter().map(f).collect(),
        }
    }

    /// `γ_{u,v} ∘ f`, pointwise `u +_{f(x)} v`.
    pub fn then_path(&self, u: &Rational, v: &Rational) -> ProbeFunction {
        self.map_values(|x| Rational::lerp(u, v, x))
    }

    /// `ε₂ ∘ f`: one exactly where `f` is one.
    pub fn then_epsilon2(&self) -> ProbeFunction {
        self.map_values(|x| {
            if x.is_one() {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn scale(&self, s: &Rational) -> Result<ProbeFunction> {
        if !s.in_unit_interval() {
            return input(format!("scale {s} outside [0, 1]"));
        }
        Ok(self.map_values(|x| x * s))
    }

    /// `f ∘ g` for a measurable `g` into this function's space.
    pub fn precompose(&self, g: &MeasurableMap) -> Result<ProbeFunction> {
        if g.cod() != &self.space {
            return Err(Error::SpaceMismatch(
                "precomposition: map lands elsewhere".into(),
            ));
        }
        let values = (0..g.dom().num_atoms())
            .map(|a| self.values[g.atom_image(a)].clone())
            .collect();
        Ok(ProbeFunction {
            space: g.dom().clone(),
            values,
        })
    }
}

/// `∫ f dP = Σ_a P(a)·f(a)`
pub fn integral(p: &Prob, f: &ProbeFunction) -> Result<Rational> {
    if p.space() != f.space() {
        return Err(Error::SpaceMismatch(
            "integrand and measure live on different spaces".into(),
        ));
    }
    Ok(p.weights()
        .iter()
        .zip(&f.values)
        .filter(|(w, _)| w.is_positive())
        .map(|(w, v)| w * v)
        .sum())
}

/// An element of `Spec(_^X)[2]`, carried by the measure that generates it.
///
/// The interval component is `f ↦ ∫ f dP`; the **2** component sends `χ_U` to one
/// exactly when `P(U) = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SpecElement {
    measure: Prob,
}

impl SpecElement {
    pub fn from_measure(p: &Prob) -> Self {
        SpecElement { measure: p.clone() }
    }

    /// Admit a hand-built interval functional after checking it against the
    /// measure it induces on single atoms.
    pub fn from_evaluator(
        space: &FinMeasSpace,
        alpha: &dyn Fn(&ProbeFunction) -> Rational,
        probes: &[ProbeFunction],
    ) -> Result<Self> {
        let atom_weights: Vec<Rational> = (0..space.num_atoms())
            .map(|a| alpha(&ProbeFunction::indicator(&MeasSet::from_atoms(space, [a]))))
            .collect();
        for u in [Rational::zero(), Rational::half(), Rational::one()] {
            let got = alpha(&ProbeFunction::constant(space, &u)?);
            if got != u {
                return Err(Error::Consistency(format!(
                    "functional is not weakly averaging: constant {u} ↦ {got}"
                )));
            }
        }
        let p = Prob::new(space, atom_weights)
            .map_err(|e| Error::Consistency(format!("atom values are not a measure: {e}")))?;
        for set in space.all_sets(max_enum())? {
            let direct = alpha(&ProbeFunction::indicator(&set));
            let additive = p.measure(&set);
            if direct != additive {
                return Err(Error::Consistency(format!(
                    "functional is not additive on {set:?}: {direct} vs sum over atoms {additive}"
                )));
            }
        }
        for f in probes {
            let direct = alpha(f);
            let linear = integral(&p, f)?;
            if direct != linear {
                return Err(Error::Consistency(format!(
                    "functional disagrees with its measure on {f:?}"
                )));
            }
        }
        Ok(SpecElement { measure: p })
    }

    pub fn base(&self) -> &FinMeasSpace {
        self.measure.space()
    }

    pub fn measure(&self) -> &Prob {
        &self.measure
    }

    pub fn alpha_interval(&self, f: &ProbeFunction) -> Result<Rational> {
        integral(&self.measure, f)
    }

    /// The **2** component on a two-valued probe.
    pub fn alpha_two(&self, f: &ProbeFunction) -> Result<bool> {
        if !f.is_two_valued() {
            return input("the 2-component takes two-valued functions");
        }
        if f.space() != self.base() {
            return Err(Error::SpaceMismatch("probe on another space".into()));
        }
        Ok(self.measure.measure(&f.level_one()).is_one())
    }

    pub fn alpha_two_set(&self, set: &MeasSet) -> bool {
        self.measure.measure(set).is_one()
    }

    /// `α ∘ _^f`: precompose every probe with `f`.
    pub fn pushforward(&self, f: &MeasurableMap) -> Result<SpecElement> {
        if f.dom() != self.base() {
            return Err(Error::SpaceMismatch(
                "map does not start at the base".into(),
            ));
        }
        let cod = f.cod();
        let weights = (0..cod.num_atoms())
            .map(|b| {
                self.alpha_interval(
                    &ProbeFunction::indicator(&MeasSet::from_atoms(cod, [b])).precompose(f)?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SpecElement {
            measure: Prob::new(cod, weights)?,
        })
    }
}

pub fn spec_from_measure(p: &Prob) -> SpecElement {
    SpecElement::from_measure(p)
}

/// Recover the measure from the interval component: `P(U) = α_I(χ_U)`.
pub fn measure_from_spec(alpha: &SpecElement) -> Result<Prob> {
    let space = alpha.base();
    let weights = (0..space.num_atoms())
        .map(|a| alpha.alpha_interval(&ProbeFunction::indicator(&MeasSet::from_atoms(space, [a]))))
        .collect::<Result<Vec<_>>>()?;
    Prob::new(space, weights)
        .map_err(|e| Error::Consistency(format!("recovered weights are not a measure: {e}")))
}

/// Weak averaging, scaling, compatibility with path maps and with `ε₂`, finite
/// additivity, and continuity along stabilising sequences.
pub fn lemma_suite_scale_preserve(
    alpha: &SpecElement,
    probes: &[ProbeFunction],
    grid: &[Rational],
) -> Result<Report> {
    let space = alpha.base().clone();
    let mut averaging = LawCheck::new("spec-weak-averaging");
    let mut scaling = LawCheck::new("spec-scaling");
    let mut paths = LawCheck::new("spec-path-naturality");
    let mut eps = LawCheck::new("spec-epsilon2-square");
    let mut additive = LawCheck::new("spec-finite-additivity");
    let mut continuity = LawCheck::new("spec-sequential-continuity");

    for u in grid {
        let got = alpha.alpha_interval(&ProbeFunction::constant(&space, u)?)?;
        averaging.record(&got == u, || format!("α_I of constant {u} is {got}"));
        // the constant path γ_{u,u} applied to any probe
        for f in probes.iter().take(4) {
            let got = alpha.alpha_interval(&f.then_path(u, u))?;
            averaging.record(&got == u, || format!("α_I(γ_{{{u},{u}}} ∘ {f:?}) = {got}"));
        }
    }
    for (value, want) in [(Rational::zero(), false), (Rational::one(), true)] {
        let got = alpha.alpha_two(&ProbeFunction::constant(&space, &value)?)?;
        averaging.record(got == want, || format!("α₂ of constant {value} is {got}"));
    }

    for f in probes {
        let base = alpha.alpha_interval(f)?;
        for s in grid {
            let got = alpha.alpha_interval(&f.scale(s)?)?;
            scaling.record(got == s * &base, || {
                format!("α_I({s}·{f:?}) = {got}, expected {}", s * &base)
            });
            for v in grid {
                let lhs = alpha.alpha_interval(&f.then_path(s, v))?;
                let rhs = Rational::lerp(s, v, &base);
                paths.record(lhs == rhs, || {
                    format!("path ({s},{v}) on {f:?}: {lhs} vs {rhs}")
                });
            }
        }
        let lhs = alpha.alpha_two(&f.then_epsilon2())?;
        let rhs = base.is_one();
        eps.record(lhs == rhs, || {
            format!("α₂(ε₂∘f) = {lhs} but ε₂(α_I f) = {rhs} for {f:?}")
        });

        // increasing truncations min(f, k/4) stabilise at f
        let mut prev = Rational::zero();
        for k in 0..=4 {
            let cap = Rational::new(k, 4);
            let fk = f.map_values(|x| if x < &cap { x.clone() } else { cap.clone() });
            let got = alpha.alpha_interval(&fk)?;
            continuity.record(got >= prev, || {
                format!("truncation {k}/4 of {f:?} decreased α_I")
            });
            prev = got;
        }
        continuity.record(prev == base, || {
            format!("truncations of {f:?} do not reach α_I(f)")
        });
    }

    let n = space.num_atoms();
    for a in 0..n {
        for b in a + 1..n {
            let ua = MeasSet::from_atoms(&space, [a]);
            let ub = MeasSet::from_atoms(&space, [b]);
            let lhs = alpha.alpha_interval(&ProbeFunction::indicator(&ua.union(&ub)))?;
            let rhs = alpha.alpha_interval(&ProbeFunction::indicator(&ua))?
                + alpha.alpha_interval(&ProbeFunction::indicator(&ub))?;
            additive.record(lhs == rhs, || format!("atoms {a}, {b}: {lhs} vs {rhs}"));
        }
    }

    // decreasing chains of measurable sets reaching ∅
    for order in [(0..n).collect::<Vec<_>>(), (0..n).rev().collect()] {
        let mut prev_i = Rational::one();
        let mut prev_2 = true;
        for k in 0..=n {
            let set = MeasSet::from_atoms(&space, order[k..].iter().copied());
            let vi = alpha.alpha_interval(&ProbeFunction::indicator(&set))?;
            let v2 = alpha.alpha_two_set(&set);
            continuity.record(vi <= prev_i && (prev_2 || !v2), || {
                format!("chain step {k} of {order:?} increased")
            });
            prev_i = vi;
            prev_2 = v2;
        }
        continuity.record(prev_i.is_zero() && !prev_2, || {
            format!("chain {order:?} does not reach 0")
        });
    }

    Ok(Report {
        checks: vec![averaging, scaling, paths, eps, additive, continuity],
    })
}

/// A two-valued functional on `2^X`, given by the measurable sets it sends to one.
pub type TwoValued = BTreeSet<BTreeSet<usize>>;

/// `2^X` with its pointwise convex structure; elements are measurable sets
/// (as atom sets), combined by intersection at interior weights.
pub fn two_power(space: &FinMeasSpace, max_enum: u64) -> Result<(Semilattice, Vec<MeasSet>)> {
    let sets = space.all_sets(max_enum)?;
    let labels: Vec<String> = sets.iter().map(|s| format!("{:?}", s.atoms())).collect();
    let idx = |s: &MeasSet| {
        sets.iter()
            .position(|t| t == s)
            .expect("closed under intersection")
    };
    let meet = sets
        .iter()
        .map(|a| sets.iter().map(|b| idx(&a.intersection(b))).collect())
        .collect();
    Ok((Semilattice::new(labels, meet)?, sets))
}

/// Every weakly-averaging affine map `2^X -> 2`, found by exhaustive enumeration.
pub fn weakly_averaging_two_valued(space: &FinMeasSpace, max_enum: u64) -> Result<Vec<TwoValued>> {
    let (lattice, sets) = two_power(space, max_enum)?;
    let dom = ConvexSpace::Semilattice(lattice);
    let maps = crate::convex::hom_enum(&dom, &ConvexSpace::two(), max_enum)?;
    let empty = sets
        .iter()
        .position(MeasSet::is_empty)
        .expect("∅ is measurable");
    let full = sets
        .iter()
        .position(|s| s.complement().is_empty())
        .expect("X is measurable");
    let mut out = Vec::new();
    for m in maps {
        let value = |i: usize| m.apply(&Element::Index(i)).map(|e| e == Element::Index(1));
        if value(empty)? || !value(full)? {
            continue;
        }
        let mut ones = TwoValued::new();
        for (i, s) in sets.iter().enumerate() {
            if value(i)? {
                ones.insert(s.atoms().clone());
            }
        }
        out.push(ones);
    }
    Ok(out)
}

/// `α₂(χ_U) = 1` iff `α₂(χ_{Uᶜ}) = 0`, over every measurable `U`.
pub fn no_choice_witness(space: &FinMeasSpace, alpha2: &TwoValued) -> Option<BTreeSet<usize>> {
    let all: BTreeSet<usize> = (0..space.num_atoms()).collect();
    space
        .all_sets(max_enum())
        .ok()?
        .into_iter()
        .map(|s| s.atoms().clone())
        .find(|u| {
            let comp: BTreeSet<usize> = all.difference(u).copied().collect();
            alpha2.contains(u) == alpha2.contains(&comp)
        })
}

/// The atom `a` with `α₂ = ev_a`: the intersection of the sets sent to one.
pub fn point_from_two_valued(space: &FinMeasSpace, alpha2: &TwoValued) -> Result<usize> {
    if !space.is_separated() {
        return Err(Error::Precondition("base space is not separated".into()));
    }
    if let Some(u) = no_choice_witness(space, alpha2) {
        return Err(Error::Consistency(format!(
            "complement law fails at atoms {u:?}"
        )));
    }
    let mut core: BTreeSet<usize> = (0..space.num_atoms()).collect();
    for u in alpha2 {
        core = core.intersection(u).copied().collect();
    }
    let a = match core.len() {
        1 => *core.iter().next().expect("one element"),
        0 => {
            return Err(Error::Consistency(
                "sets sent to one have empty intersection".into(),
            ))
        }
        _ => {
            return Err(Error::Consistency(format!(
                "sets sent to one meet in {core:?}"
            )))
        }
    };
    let all = space.all_sets(max_enum())?;
    if let Some(s) = all
        .iter()
        .find(|s| alpha2.contains(s.atoms()) != s.contains_atom(a))
    {
        return Err(Error::Consistency(format!(
            "functional differs from evaluation at `{}` on {s:?}",
            space.atom_key(a)
        )));
    }
    Ok(space.atoms()[a][0])
}

/// The point whose evaluation is the **2** component of `alpha`.
pub fn point_from_alpha2(alpha: &SpecElement) -> Result<usize> {
    let space = alpha.base();
    let sets = space.all_sets(max_enum())?;
    let ones: TwoValued = sets
        .iter()
        .filter(|s| alpha.alpha_two_set(s))
        .map(|s| s.atoms().clone())
        .collect();
    point_from_two_valued(space, &ones)
}

/// `ev_x` as a two-valued functional.
pub fn evaluation(space: &FinMeasSpace, atom: usize) -> TwoValued {
    space
        .all_sets(max_enum())
        .expect("small space")
        .into_iter()
        .filter(|s| s.contains_atom(atom))
        .map(|s| s.atoms().clone())
        .collect()
}

/// Barycenter `ε_A(P)` of a finitely supported measure on the elements of `A`.
pub fn counit(space: &ConvexSpace, p: &Mixture<Element>) -> Result<Element> {
    if let Some((_, e)) = p.iter().find(|(_, e)| !space.contains(e)) {
        return input(format!(
            "support point {e:?} is not an element of this {} space",
            space.kind()
        ));
    }
    match space {
        ConvexSpace::Simplex { .. } | ConvexSpace::Polytope { .. } => {
            let len = match p.iter().next().map(|(_, e)| e) {
                Some(Element::Vector(v)) => v.len(),
                _ => return input("empty measure"),
            };
            let mut acc = vec![Rational::zero(); len];
            for (w, e) in p.iter() {
                let Element::Vector(v) = e else {
                    unreachable!("membership checked")
                };
                for (x, y) in acc.iter_mut().zip(v) {
                    *x = &*x + &(w * y);
                }
            }
            Ok(Element::Vector(acc))
        }
        ConvexSpace::IntervalQ => Ok(Element::Scalar(
            p.iter()
                .map(|(w, e)| match e {
                    Element::Scalar(r) => w * r,
                    _ => unreachable!("membership checked"),
                })
                .sum(),
        )),
        ConvexSpace::RInfty => {
            if p.iter().any(|(_, e)| *e == Element::Infinity) {
                return Ok(Element::Infinity);
            }
            Ok(Element::Scalar(
                p.iter()
                    .map(|(w, e)| match e {
                        Element::Scalar(r) => w * r,
                        _ => unreachable!("finite support"),
                    })
                    .sum(),
            ))
        }
        ConvexSpace::Semilattice(s) => {
            let m = s.meet_all(p.iter().map(|(_, e)| match e {
                Element::Index(i) => *i,
                _ => unreachable!("membership checked"),
            }));
            m.map(Element::Index)
                .ok_or_else(|| Error::Input("empty measure".into()))
        }
        ConvexSpace::Quotient { .. } | ConvexSpace::Table(_) => {
            let pairs: Vec<(Rational, Element)> =
                p.iter().map(|(w, e)| (w.clone(), e.clone())).collect();
            space.combo(&pairs)
        }
    }
}

/// Translate a measure on an explicit `Σ A` (points are element labels) into a
/// distribution over elements. Needs every atom to be a single element.
pub fn elements_of_measure(space: &ConvexSpace, p: &Prob) -> Result<Mixture<Element>> {
    let sigma = p.space();
    if !sigma.is_separated() {
        return Err(Error::Precondition(
            "Σ A is not separated, so atoms do not name elements".into(),
        ));
    }
    let pairs = p
        .support()
        .map(|a| {
            Ok((
                p.weight(a).clone(),
                Element::Index(space.index_of(sigma.atom_key(a))?),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Mixture::new(pairs)
}

/// `P(U)` for a region of `A` and a distribution over its elements.
pub fn region_mass(pair: &BooleanPair, p: &Mixture<Element>) -> Result<Rational> {
    let mut total = Rational::zero();
    for (w, e) in p.iter() {
        if pair.part().contains(pair.space(), e)? {
            total = total + w;
        }
    }
    Ok(total)
}

/// `χ_U(a) = 1` iff `P(U) = 1` for every Boolean pair `U` of the space.
pub fn counit_oracle(
    space: &ConvexSpace,
    pairs: &[BooleanPair],
    p: &Mixture<Element>,
    a: &Element,
) -> Result<Option<String>> {
    for pair in pairs {
        let at_a = pair.part().contains(space, a)?;
        let full = region_mass(pair, p)?.is_one();
        if at_a != full {
            return Ok(Some(format!(
                "{} : χ(a) = {at_a} but P(U) = 1 is {full}",
                pair.describe()
            )));
        }
    }
    Ok(None)
}

/// Boolean-pair oracle and affinity of the counit over the given measures.
pub fn counit_suite(space: &ConvexSpace, measures: &[Mixture<Element>]) -> Result<Report> {
    let pairs = boolean_pairs(space)?;
    let mut oracle = LawCheck::new("counit-boolean-oracle");
    let mut affine = LawCheck::new("counit-affine");
    let mut unit = LawCheck::new("counit-dirac");
    for p in measures {
        let a = counit(space, p)?;
        let w = counit_oracle(space, &pairs, p, &a)?;
        oracle.record(w.is_none(), || {
            format!("ε({p:?}) = {a:?}: {}", w.clone().unwrap_or_default())
        });
        for (_, e) in p.iter() {
            let d = counit(space, &Mixture::dirac(e.clone()))?;
            unit.record(space.same(&d, e), || format!("ε(δ_{e:?}) = {d:?}"));
        }
    }
    let alphas = canonical_alphas();
    for (i, p) in measures.iter().enumerate().step_by(3) {
        for qm in measures.iter().skip(i).step_by(5).take(6) {
            for alpha in &alphas {
                let lhs = counit(space, &p.mix(qm, alpha)?)?;
                let rhs = space.cc(&counit(space, p)?, &counit(space, qm)?, alpha)?;
                affine.record(space.same(&lhs, &rhs), || {
                    format!("ε({p:?} +_{alpha} {qm:?}) = {lhs:?} vs {rhs:?}")
                });
            }
        }
    }
    Ok(Report {
        checks: vec![oracle, unit, affine],
    })
}

/// `m(ε_A(P)) = ε_B(P pushed along m)`
pub fn counit_naturality(m: &AffineMap, measures: &[Mixture<Element>]) -> Result<LawCheck> {
    let mut check = LawCheck::new("counit-naturality");
    for p in measures {
        let lhs = m.apply(&counit(m.dom(), p)?)?;
        let pushed = p.try_map(|e| m.apply(e))?;
        let rhs = counit(m.cod(), &pushed)?;
        check.record(m.cod().same(&lhs, &rhs), || {
            format!("on {p:?}: {lhs:?} vs {rhs:?}")
        });
    }
    Ok(check)
}

/// Barycenter in the convex structure of `P(X)`: a left fold of pairwise mixing.
pub fn prob_combo(pairs: &[(Rational, Prob)]) -> Result<Prob> {
    let ((w0, p0), rest) = pairs
        .split_first()
        .ok_or_else(|| Error::Input("empty combination".into()))?;
    let mut acc = p0.clone();
    let mut acc_w = w0.clone();
    for (w, p) in rest {
        let next = &acc_w + w;
        if next.is_zero() {
            acc = p.clone();
            continue;
        }
        acc = acc.mix(p, &(w / &next))?;
        acc_w = next;
    }
    Ok(acc)
}

/// `ε_{P(X)}` on a meta-measure, computed without the monad multiplication.
pub fn epsilon_of_measures(m: &MetaProb) -> Result<Prob> {
    let pairs: Vec<(Rational, Prob)> = m.iter().map(|(w, p)| (w.clone(), p.clone())).collect();
    prob_combo(&pairs)
}

/// The transpose `f̂ = ε_A ∘ P(f)` of a measurable `f: X -> Σ A`, with `f` given
/// by the element each atom of `X` lands on.
#[derive(Clone, PartialEq, Debug)]
pub struct Adjunct {
    dom: FinMeasSpace,
    cod: ConvexSpace,
    values: Vec<Element>,
}

impl Adjunct {
    pub fn new(dom: &FinMeasSpace, cod: &ConvexSpace, values: Vec<Element>) -> Result<Self> {
        if values.len() != dom.num_atoms() {
            return input("adjunct needs one element per atom");
        }
        if let Some(e) = values.iter().find(|e| !cod.contains(e)) {
            return input(format!("{e:?} is not an element of the codomain"));
        }
        Ok(Adjunct {
            dom: dom.clone(),
            cod: cod.clone(),
            values,
        })
    }

    /// From a measurable map into an explicit `Σ A` whose points are element labels.
    pub fn from_measurable(f: &MeasurableMap, cod: &ConvexSpace) -> Result<Self> {
        let values = (0..f.dom().num_atoms())
            .map(|a| {
                let y = f.apply(f.dom().atoms()[a][0]);
                cod.index_of(f.cod().point(y)).map(Element::Index)
            })
            .collect::<Result<_>>()?;
        Self::new(f.dom(), cod, values)
    }

    pub fn dom(&self) -> &FinMeasSpace {
        &self.dom
    }

    pub fn cod(&self) -> &ConvexSpace {
        &self.cod
    }

    /// `f(x)` on the atom of `x`.
    pub fn value(&self, atom: usize) -> &Element {
        &self.values[atom]
    }

    pub fn apply(&self, p: &Prob) -> Result<Element> {
        if p.space() != &self.dom {
            return Err(Error::SpaceMismatch(
                "measure is not on the adjunct's domain".into(),
            ));
        }
        let pushed = Mixture::new(
            p.support()
                .map(|a| (p.weight(a).clone(), self.values[a].clone())),
        )?;
        counit(&self.cod, &pushed)
    }

    /// `f̂ ∘ η = f` and affinity of `f̂` on the probe measures.
    pub fn check(&self, probes: &[Prob]) -> Result<Report> {
        let mut unit = LawCheck::new("adjunct-unit");
        for a in 0..self.dom.num_atoms() {
            let got = self.apply(&Prob::new(
                &self.dom,
                (0..self.dom.num_atoms())
                    .map(|b| {
                        if a == b {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect(),
            )?)?;
            unit.record(self.cod.same(&got, &self.values[a]), || {
                format!(
                    "f̂(δ_{}) = {got:?}, f = {:?}",
                    self.dom.atom_key(a),
                    self.values[a]
                )
            });
        }
        let mut affine = LawCheck::new("adjunct-affine");
        for p in probes {
            for q in probes.iter().take(8) {
                for alpha in canonical_alphas() {
                    let lhs = self.apply(&p.mix(q, &alpha)?)?;
                    let rhs = self.cod.cc(&self.apply(p)?, &self.apply(q)?, &alpha)?;
                    affine.record(self.cod.same(&lhs, &rhs), || {
                        format!("f̂({p:?} +_{alpha} {q:?}) = {lhs:?} vs {rhs:?}")
                    });
                }
            }
        }
        Ok(Report {
            checks: vec![unit, affine],
        })
    }
}

/// Constraints on a map `g: S -> A` from a finite probe set of measures into a
/// finite-carrier convex space.
#[derive(Clone, Debug, Default)]
pub(crate) struct ProbeConstraints {
    pub fixed: Vec<Option<usize>>,
    pub equal: Vec<(usize, usize)>,
    pub triples: Vec<(usize, usize, Rational, usize)>,
}

/// `(i, j, α, t)` with `S[t] = S[i] +_α S[j]`, for interior canonical weights.
pub(crate) fn mixing_triples(probe_set: &[Prob]) -> Result<Vec<(usize, usize, Rational, usize)>> {
    let k = probe_set.len();
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for alpha in canonical_alphas().into_iter().filter(Rational::is_interior) {
                let m = probe_set[i].mix(&probe_set[j], &alpha)?;
                if let Some(t) = probe_set.iter().position(|s| s == &m) {
                    out.push((i, j, alpha, t));
                }
            }
        }
    }
    Ok(out)
}

/// All maps satisfying the constraints, stopping once `limit` are found.
pub(crate) fn solve_on_probes(
    space: &ConvexSpace,
    k: usize,
    c: &ProbeConstraints,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let n = space
        .carrier_size()
        .ok_or_else(|| Error::Input("enumeration needs a finite carrier".into()))?;
    // each constraint is checked once its last index is assigned
    type Due = (Vec<(usize, usize)>, Vec<(usize, usize, Rational, usize)>);
    let mut at: Vec<Due> = vec![(vec![], vec![]); k];
    for &(i, j) in &c.equal {
        at[i.max(j)].0.push((i, j));
    }
    for (i, j, alpha, t) in &c.triples {
        at[*i.max(j).max(t)].1.push((*i, *j, alpha.clone(), *t));
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        pos: usize,
        n: usize,
        space: &ConvexSpace,
        c: &ProbeConstraints,
        at: &[Due],
        g: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if pos == g.len() {
            out.push(g.clone());
            return;
        }
        let choices: Vec<usize> = match c.fixed.get(pos).copied().flatten() {
            Some(v) => vec![v],
            None => (0..n).collect(),
        };
        for v in choices {
            g[pos] = v;
            let (eqs, tris) = &at[pos];
            if eqs.iter().all(|&(i, j)| g[i] == g[j])
                && tris
                    .iter()
                    .all(|(i, j, alpha, t)| space.cc_index(g[*i], g[*j], alpha) == g[*t])
            {
                go(pos + 1, n, space, c, at, g, out, limit);
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, space, c, &at, &mut vec![0; k], &mut out, limit);
    Ok(out)
}

/// Count the maps `g: S -> A` on a finite probe set `S ⊂ P(X)` that are affine on
/// every combination landing in `S` and agree with `f` on Dirac measures; exactly
/// one must exist and it must be the adjunct.
pub fn adjunct_uniqueness(adj: &Adjunct, probe_set: &[Prob]) -> Result<LawCheck> {
    let mut c = ProbeConstraints {
        fixed: vec![None; probe_set.len()],
        ..Default::default()
    };
    for (i, p) in probe_set.iter().enumerate() {
        let support: Vec<usize> = p.support().collect();
        if let [a] = support[..] {
            let Element::Index(v) = adj.values[a] else {
                return input("uniqueness is enumerated on finite carriers");
            };
            c.fixed[i] = Some(v);
        }
    }
    c.triples = mixing_triples(probe_set)?;
    let solutions = solve_on_probes(&adj.cod, probe_set.len(), &c, 2)?;

    let expected: Vec<usize> = probe_set
        .iter()
        .map(|p| match adj.apply(p)? {
            Element::Index(i) => Ok(i),
            e => input(format!("{e:?} is not a carrier index")),
        })
        .collect::<Result<_>>()?;
    let mut check = LawCheck::new("adjunct-unique");
    check.record(solutions.len() == 1, || {
        format!(
            "{} affine extensions of f on the probe set",
            solutions.len()
        )
    });
    check.record(solutions.first() == Some(&expected), || {
        format!(
            "the extension {:?} is not f̂ = {expected:?}",
            solutions.first()
        )
    });
    Ok(check)
}

/// Probes for [`triangle_suite`].
#[derive(Clone, Debug, Default)]
pub struct TriangleProbes {
    pub probs: Vec<Prob>,
    pub metas: Vec<MetaProb>,
    pub elements: Vec<Element>,
}

/// Both triangle identities and `μ = Σ(ε_{P(X)})`.
pub fn triangle_suite(
    x: &FinMeasSpace,
    a: &ConvexSpace,
    probes: &TriangleProbes,
) -> Result<Report> {
    let mut left = LawCheck::new("triangle-measures");
    let mut right = LawCheck::new("triangle-convex");
    let mut mult = LawCheck::new("multiplication-is-counit");
    for p in probes.probs.iter().filter(|p| p.space() == x) {
        let back = epsilon_of_measures(&MetaProb::of_diracs(p))?;
        left.record(&back == p, || {
            format!("ε_P(X)(P(η)(P)) = {back:?} for {p:?}")
        });
    }
    for m in probes.metas.iter().filter(|m| m.base() == x) {
        let via_counit = epsilon_of_measures(m)?;
        let direct = mu(m);
        mult.record(via_counit == direct, || {
            format!("ε_P(X)(M) = {via_counit:?} but μ(M) = {direct:?}")
        });
    }
    for e in &probes.elements {
        let back = counit(a, &Mixture::dirac(e.clone()))?;
        right.record(a.same(&back, e), || format!("ε_A(δ_{e:?}) = {back:?}"));
    }
    Ok(Report {
        checks: vec![left, right, mult],
    })
}

/// For a family `r ↦ P_r` sampled on a rational grid: the family is affine in `r`
/// exactly when each curried functional `r ↦ ∫ f dP_r` is affine. Both sides are
/// checked, together with their agreement.
pub fn affine_measure_path_check(x: &FinMeasSpace, family: &[(Rational, Prob)]) -> Result<Report> {
    if family.len() < 3 {
        return input("path check needs at least three grid points");
    }
    if family
        .iter()
        .any(|(r, p)| !r.in_unit_interval() || p.space() != x)
    {
        return input("family must be indexed by [0, 1] and live on the given space");
    }
    let lookup = |r: &Rational| family.iter().find(|(s, _)| s == r).map(|(_, p)| p);
    let probes: Vec<ProbeFunction> = (0..x.num_atoms())
        .map(|a| ProbeFunction::indicator(&MeasSet::from_atoms(x, [a])))
        .collect();

    let mut fam = LawCheck::new("path-family-affine");
    let mut curried = LawCheck::new("path-curried-affine");
    let mut agree = LawCheck::new("path-bijection-consistent");
    for (r, pr) in family {
        for (s, ps) in family {
            for t in canonical_alphas() {
                let mid = Rational::lerp(r, s, &t);
                let Some(pm) = lookup(&mid) else { continue };
                let family_ok = pm == &pr.mix(ps, &t)?;
                fam.record(family_ok, || format!("P at {mid} ≠ P_{r} +_{t} P_{s}"));
                let mut curried_ok = true;
                for f in &probes {
                    let lhs = integral(pm, f)?;
                    let rhs = Rational::lerp(&integral(pr, f)?, &integral(ps, f)?, &t);
                    curried_ok &= lhs == rhs;
                }
                curried.record(curried_ok, || {
                    format!("curried functional not affine at ({r}, {s}, {t})")
                });
                agree.record(family_ok == curried_ok, || {
                    format!("routes disagree at ({r}, {s}, {t})")
                });
            }
        }
    }
    Ok(Report {
        checks: vec![fam, curried, agree],
    })
}

/// `is_affine` restated for the adjunct over a Prob-space presentation.
pub fn adjunct_is_affine(adj: &Adjunct, probes: &[Prob]) -> bool {
    let simplex = ConvexSpace::Simplex {
        n: adj.dom.num_atoms(),
    };
    let to_prob = |e: &Element| match e {
        Element::Vector(v) => Prob::new(&adj.dom, v.clone()),
        _ => input("not a barycentric vector"),
    };
    let f = |e: &Element| adj.apply(&to_prob(e)?);
    let elems: Vec<Element> = probes
        .iter()
        .map(|p| Element::Vector(p.weights().to_vec()))
        .collect();
    let mut triples = Vec::new();
    for a in &elems {
        for b in &elems {
            for alpha in canonical_alphas() {
                triples.push((a.clone(), b.clone(), alpha));
            }
        }
    }
    is_affine(&simplex, &adj.cod, &f, &triples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::giry::pushforward;
    use crate::rational::q;

    fn disc(n: usize) -> FinMeasSpace {
        let pts: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        FinMeasSpace::discrete(&pts).unwrap()
    }

    fn pr(space: &FinMeasSpace, w: &[(i64, i64)]) -> Prob {
        Prob::new(space, w.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    fn pf(space: &FinMeasSpace, w: &[(i64, i64)]) -> ProbeFunction {
        ProbeFunction::new(space, w.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn integral_examples() {
        let x = disc(2);
        assert_eq!(
            integral(&pr(&x, &[(1, 3), (2, 3)]), &pf(&x, &[(0, 1), (3, 4)])).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            integral(
                &pr(&x, &[(1, 3), (2, 3)]),
                &ProbeFunction::constant(&x, &q(2, 5)).unwrap()
            )
            .unwrap(),
            q(2, 5)
        );
        assert_eq!(
            integral(&Prob::dirac(&x, 1), &pf(&x, &[(1, 7), (3, 4)])).unwrap(),
            q(3, 4)
        );
    }

    #[test]
    fn spec_round_trip_and_dirac() {
        let x = disc(2);
        let p = Prob::uniform(&x);
        assert_eq!(measure_from_spec(&spec_from_measure(&p)).unwrap(), p);
        let d = spec_from_measure(&Prob::dirac(&x, 1));
        for s in x.all_sets(16).unwrap() {
            assert_eq!(d.alpha_two_set(&s), s.contains_point(1));
        }
    }

    #[test]
    fn spec_pushforward_is_natural() {
        let x = disc(3);
        let y = disc(2);
        let f = MeasurableMap::new(&x, &y, vec![0, 0, 1]).unwrap();
        let p = pr(&x, &[(1, 6), (1, 3), (1, 2)]);
        let via_spec = measure_from_spec(&spec_from_measure(&p).pushforward(&f).unwrap()).unwrap();
        assert_eq!(via_spec, pushforward(&f, &p).unwrap());
        assert_eq!(via_spec, pr(&y, &[(1, 2), (1, 2)]));
    }

    #[test]
    fn evaluator_gate() {
        let x = disc(2);
        let good =
            SpecElement::from_evaluator(&x, &|f| (f.value(0) + f.value(1)) * q(1, 2), &[]).unwrap();
        assert_eq!(good.measure(), &Prob::uniform(&x));
        // max is weakly averaging but not additive
        let bad =
            SpecElement::from_evaluator(&x, &|f| f.value(0).clone().max(f.value(1).clone()), &[]);
        assert!(matches!(bad, Err(Error::Consistency(_))));
    }

    #[test]
    fn lemma_suite_passes_on_measures() {
        let x = disc(3);
        let grid = crate::rational::unit_grid(3);
        let probes = vec![
            pf(&x, &[(0, 1), (1, 2), (1, 1)]),
            pf(&x, &[(1, 3), (1, 3), (2, 3)]),
        ];
        for p in [pr(&x, &[(1, 6), (1, 3), (1, 2)]), Prob::dirac(&x, 2)] {
            let r = lemma_suite_scale_preserve(&spec_from_measure(&p), &probes, &grid).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    // `2^X` with the pointwise structure of 2, written directly on bitmasks.
    fn oracle_two_valued(n: usize) -> Vec<Vec<bool>> {
        let m = 1usize << n;
        let mut out = Vec::new();
        for graph in 0u64..(1 << m) {
            let g = |f: usize| graph >> f & 1 == 1;
            let ok = (0..m).all(|f| (0..m).all(|h| g(f & h) == (g(f) && g(h))));
            if ok && !g(0) && g(m - 1) {
                out.push((0..m).map(g).collect());
            }
        }
        out
    }

    #[test]
    fn two_valued_functionals_match_bitmask_oracle() {
        for n in 2..=3 {
            let x = disc(n);
            let got = weakly_averaging_two_valued(&x, 1 << 20).unwrap();
            let want = oracle_two_valued(n);
            assert_eq!(got.len(), want.len());
            // one per nonempty principal filter of subsets of X
            assert_eq!(got.len(), (1 << n) - 1);
            let evals: Vec<usize> = got
                .iter()
                .filter_map(|a| point_from_two_valued(&x, a).ok())
                .collect();
            assert_eq!(evals.len(), n);
            for a in &got {
                let is_eval = (0..n).any(|i| &evaluation(&x, i) == a);
                assert_eq!(no_choice_witness(&x, a).is_none(), is_eval);
            }
        }
    }

    #[test]
    fn point_from_alpha2_examples() {
        let x = disc(3);
        assert_eq!(
            point_from_alpha2(&spec_from_measure(&Prob::dirac(&x, 1))).unwrap(),
            1
        );
        assert!(matches!(
            point_from_alpha2(&spec_from_measure(&Prob::uniform(&x))),
            Err(Error::Consistency(_))
        ));
        let ns = FinMeasSpace::new(&["a", "b", "c"], &[vec!["a", "b"], vec!["c"]]).unwrap();
        assert!(matches!(
            point_from_alpha2(&spec_from_measure(&Prob::dirac(&ns, 2))),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn counit_examples() {
        let s3 = ConvexSpace::Simplex { n: 3 };
        let p =
            Mixture::new((0..3).map(|i| (Rational::new([1, 2, 3][i], 6), s3.vertex(i).unwrap())))
                .unwrap();
        assert_eq!(
            counit(&s3, &p).unwrap(),
            Element::Vector(vec![q(1, 6), q(1, 3), q(1, 2)])
        );

        let two = ConvexSpace::two();
        let p = Mixture::new([(q(1, 3), Element::Index(0)), (q(2, 3), Element::Index(1))]).unwrap();
        let a = counit(&two, &p).unwrap();
        assert_eq!(a, Element::Index(0));
        assert!(counit_oracle(&two, &boolean_pairs(&two).unwrap(), &p, &a)
            .unwrap()
            .is_none());
        assert!(
            counit_oracle(&two, &boolean_pairs(&two).unwrap(), &p, &Element::Index(1))
                .unwrap()
                .is_some()
        );
        assert_eq!(
            counit(&two, &Mixture::dirac(Element::Index(1))).unwrap(),
            Element::Index(1)
        );
    }

    #[test]
    fn adjunct_examples() {
        let x = disc(2);
        let f = Adjunct::new(
            &x,
            &ConvexSpace::IntervalQ,
            vec![Element::Scalar(q(0, 1)), Element::Scalar(q(1, 1))],
        )
        .unwrap();
        let p = pr(&x, &[(1, 4), (3, 4)]);
        assert_eq!(f.apply(&p).unwrap(), Element::Scalar(q(3, 4)));
        assert!(f
            .check(&crate::probes::probs_with_denominators(&x, 3))
            .unwrap()
            .passed());
        assert!(adjunct_is_affine(
            &f,
            &crate::probes::probs_with_denominators(&x, 2)
        ));

        let one = disc(1);
        let c = Adjunct::new(&one, &ConvexSpace::chain(3), vec![Element::Index(2)]).unwrap();
        assert_eq!(c.apply(&Prob::uniform(&one)).unwrap(), Element::Index(2));

        let m = MetaProb::new(
            &x,
            [
                (q(1, 3), pr(&x, &[(1, 1), (0, 1)])),
                (q(2, 3), pr(&x, &[(1, 4), (3, 4)])),
            ],
        )
        .unwrap();
        assert_eq!(epsilon_of_measures(&m).unwrap(), mu(&m));
    }

    #[test]
    fn adjunct_is_unique_on_chain() {
        let x = disc(3);
        let chain = ConvexSpace::chain(3);
        let adj = Adjunct::new(
            &x,
            &chain,
            vec![Element::Index(2), Element::Index(0), Element::Index(1)],
        )
        .unwrap();
        let s = crate::probes::probs_with_denominators(&x, 2);
        assert!(adjunct_uniqueness(&adj, &s).unwrap().passed());
    }

    #[test]
    fn path_check_examples() {
        let x = disc(2);
        let grid = crate::rational::unit_grid(4);
        let p0 = pr(&x, &[(1, 1), (0, 1)]);
        let p1 = pr(&x, &[(1, 4), (3, 4)]);
        let linear: Vec<_> = grid
            .iter()
            .map(|r| (r.clone(), p0.mix(&p1, r).unwrap()))
            .collect();
        assert!(affine_measure_path_check(&x, &linear).unwrap().passed());
        let constant: Vec<_> = grid.iter().map(|r| (r.clone(), p1.clone())).collect();
        assert!(affine_measure_path_check(&x, &constant).unwrap().passed());
        let kink: Vec<_> = grid
            .iter()
            .map(|r| {
                let t = if r <= &q(1, 2) { r.clone() } else { q(1, 2) };
                (r.clone(), p0.mix(&p1, &t).unwrap())
            })
            .collect();
        let rep = affine_measure_path_check(&x, &kink).unwrap();
        assert!(!rep.get("path-family-affine").unwrap().passed());
        assert!(!rep.get("path-curried-affine").unwrap().passed());
        assert!(rep.get("path-bijection-consistent").unwrap().passed());
    }
}
