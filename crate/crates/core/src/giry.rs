//! The finitely-supported Giry monad on finite measurable spaces.
//!
//! Measures assign weight to atoms rather than points, so two points that no
//! measurable set tells apart have the same Dirac measure.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{input, Error, Result};
use crate::finmeas::{FinMeasSpace, MeasSet, MeasurableMap};
use crate::rational::Rational;
use crate::report::{LawCheck, Report};

/// A probability measure on a finite measurable space, one weight per atom.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Prob {
    space: FinMeasSpace,
    weights: Vec<Rational>,
}

impl fmt::Debug for Prob {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Prob({})", self.key())
    }
}

impl PartialOrd for Prob {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Prob {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weights
            .cmp(&other.weights)
            .then_with(|| self.space.points().cmp(other.space.points()))
            .then_with(|| self.space.atoms().cmp(other.space.atoms()))
    }
}

impl Prob {
    /// Weights indexed by atom; must be nonnegative and sum to exactly one.
    pub fn new(space: &FinMeasSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != space.num_atoms() {
            return input(format!(
                "measure has {} weights for {} atoms",
                weights.len(),
                space.num_atoms()
            ));
        }
        if let Some(a) = weights.iter().position(Rational::is_negative) {
            return input(format!("negative weight on atom `{}`", space.atom_key(a)));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return input(format!("weights sum to {total}, not 1"));
        }
        Ok(Prob {
            space: space.clone(),
            weights,
        })
    }

    /// Weights keyed by canonical atom key; missing atoms get zero.
    pub fn from_keyed(space: &FinMeasSpace, weights: &BTreeMap<String, Rational>) -> Result<Self> {
        let mut w = vec![Rational::zero(); space.num_atoms()];
        for (key, v) in weights {
            w[space.atom_by_key(key)?] = v.clone();
        }
        Self::new(space, w)
    }

    /// Unit of the monad at point index `x`.
    pub fn dirac(space: &FinMeasSpace, x: usize) -> Self {
        Self::dirac_atom(space, space.atom_of(x))
    }

    pub fn dirac_id(space: &FinMeasSpace, id: &str) -> Result<Self> {
        Ok(Self::dirac(space, space.index_of(id)?))
    }

    pub(crate) fn dirac_atom(space: &FinMeasSpace, atom: usize) -> Self {
        let mut weights = vec![Rational::zero(); space.num_atoms()];
        weights[atom] = Rational::one();
        Prob {
            space: space.clone(),
            weights,
        }
    }

    /// Equal weight on every atom.
    pub fn uniform(space: &FinMeasSpace) -> Self {
        let n = space.num_atoms() as i64;
        Prob {
            space: space.clone(),
            weights: vec![Rational::new(1, n); n as usize],
        }
    }

    pub fn space(&self) -> &FinMeasSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, atom: usize) -> &Rational {
        &self.weights[atom]
    }

    pub fn measure(&self, set: &MeasSet) -> Rational {
        debug_assert_eq!(set.space(), &self.space);
        set.atoms().iter().map(|&a| &self.weights[a]).sum()
    }

    /// Atoms of positive weight.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .map(|(a, _)| a)
    }

    /// `(1 - alpha) * self + alpha * other`
    pub fn mix(&self, other: &Prob, alpha: &Rational) -> Result<Prob> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch(
                "mixing measures on different spaces".into(),
            ));
        }
        if !alpha.in_unit_interval() {
            return input(format!("mixing weight {alpha} outside [0, 1]"));
        }
        let weights = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(p, q)| Rational::lerp(p, q, alpha))
            .collect();
        Ok(Prob {
            space: self.space.clone(),
            weights,
        })
    }

    /// Canonical text form: `key:p/q` for each positive atom, comma separated.
    pub fn key(&self) -> String {
        self.support()
            .map(|a| format!("{}:{}", self.space.atom_key(a), self.weights[a]))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parse [`Prob::key`] output back.
    pub fn from_key(space: &FinMeasSpace, key: &str) -> Result<Self> {
        let mut w = BTreeMap::new();
        for part in key.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = part
                .rsplit_once(':')
                .ok_or_else(|| Error::Input(format!("bad measure key `{part}`")))?;
            w.insert(k.to_string(), v.parse()?);
        }
        Self::from_keyed(space, &w)
    }

    /// Weights keyed by atom key, including zeros.
    pub fn keyed(&self) -> BTreeMap<String, Rational> {
        self.weights
            .iter()
            .enumerate()
            .map(|(a, w)| (self.space.atom_key(a).to_string(), w.clone()))
            .collect()
    }
}

/// `P ↦ P ∘ f⁻¹`
pub fn pushforward(f: &MeasurableMap, p: &Prob) -> Result<Prob> {
    if p.space() != f.dom() {
        return Err(Error::SpaceMismatch(
            "measure is not on the map's domain".into(),
        ));
    }
    let mut weights = vec![Rational::zero(); f.cod().num_atoms()];
    for (a, w) in p.weights.iter().enumerate() {
        if w.is_positive() {
            let b = f.atom_image(a);
            weights[b] = &weights[b] + w;
        }
    }
    Ok(Prob {
        space: f.cod().clone(),
        weights,
    })
}

/// A finitely-supported probability distribution over arbitrary values.
///
/// Entries are distinct and carry strictly positive weight summing to one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mixture<T> {
    support: Vec<(Rational, T)>,
}

impl<T: fmt::Debug> fmt::Debug for Mixture<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.support.iter().map(|(w, t)| (w.to_string(), t)))
            .finish()
    }
}

impl<T: Clone + PartialEq> Mixture<T> {
    /// Drops zero weights and merges equal values.
    pub fn new(pairs: impl IntoIterator<Item = (Rational, T)>) -> Result<Self> {
        let mut support: Vec<(Rational, T)> = Vec::new();
        for (w, t) in pairs {
            if w.is_negative() {
                return input(format!("negative mixture weight {w}"));
            }
            if w.is_zero() {
                continue;
            }
            match support.iter_mut().find(|(_, u)| *u == t) {
                Some((v, _)) => *v = &*v + &w,
                None => support.push((w, t)),
            }
        }
        let total: Rational = support.iter().map(|(w, _)| w).sum();
        if !total.is_one() {
            return input(format!("mixture weights sum to {total}, not 1"));
        }
        Ok(Mixture { support })
    }

    pub fn dirac(t: T) -> Self {
        Mixture {
            support: vec![(Rational::one(), t)],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &T)> {
        self.support.iter().map(|(w, t)| (w, t))
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Functorial action: push weights along `f`, merging collisions.
    pub fn map<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> U) -> Mixture<U> {
        Mixture::new(self.support.iter().map(|(w, t)| (w.clone(), f(t))))
            .expect("pushforward of a mixture is a mixture")
    }

    pub fn try_map<U: Clone + PartialEq>(&self, f: impl Fn(&T) -> Result<U>) -> Result<Mixture<U>> {
        let pairs = self
            .support
            .iter()
            .map(|(w, t)| Ok((w.clone(), f(t)?)))
            .collect::<Result<Vec<_>>>()?;
        Mixture::new(pairs)
    }

    /// `(1 - alpha) * self + alpha * other`
    pub fn mix(&self, other: &Mixture<T>, alpha: &Rational) -> Result<Mixture<T>> {
        if !alpha.in_unit_interval() {
            return input(format!("mixing weight {alpha} outside [0, 1]"));
        }
        let beta = alpha.complement();
        Mixture::new(
            self.support
                .iter()
                .map(|(w, t)| (w * &beta, t.clone()))
                .chain(other.support.iter().map(|(w, t)| (w * alpha, t.clone()))),
        )
    }

    pub fn weight_of(&self, t: &T) -> Rational {
        self.support
            .iter()
            .find(|(_, u)| u == t)
            .map(|(w, _)| w.clone())
            .unwrap_or_default()
    }
}

impl<T: Clone + PartialEq> Mixture<Mixture<T>> {
    /// Multiplication of the distribution monad on plain values.
    pub fn flatten(&self) -> Mixture<T> {
        Mixture::new(
            self.support
                .iter()
                .flat_map(|(w, inner)| inner.support.iter().map(move |(v, t)| (w * v, t.clone()))),
        )
        .expect("flattening a tower of mixtures is a mixture")
    }
}

/// A finitely-supported measure over measures on `base`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MetaProb {
    base: FinMeasSpace,
    dist: Mixture<Prob>,
}

impl fmt::Debug for MetaProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MetaProb{:?}", self.dist)
    }
}

impl MetaProb {
    pub fn new(
        base: &FinMeasSpace,
        pairs: impl IntoIterator<Item = (Rational, Prob)>,
    ) -> Result<Self> {
        let dist = Mixture::new(pairs)?;
        Self::from_mixture(base, dist)
    }

    pub fn from_mixture(base: &FinMeasSpace, dist: Mixture<Prob>) -> Result<Self> {
        if dist.iter().any(|(_, p)| p.space() != base) {
            return Err(Error::SpaceMismatch(
                "inner measure on a different space".into(),
            ));
        }
        Ok(MetaProb {
            base: base.clone(),
            dist,
        })
    }

    /// `δ_P`, the unit of the monad at level two.
    pub fn dirac(p: &Prob) -> Self {
        MetaProb {
            base: p.space().clone(),
            dist: Mixture::dirac(p.clone()),
        }
    }

    /// `G(η)(P)`: each atom's weight sits on the Dirac measure at that atom.
    pub fn of_diracs(p: &Prob) -> Self {
        let dist = Mixture::new(
            p.support()
                .map(|a| (p.weight(a).clone(), Prob::dirac_atom(p.space(), a))),
        )
        .expect("measure weights form a mixture");
        MetaProb {
            base: p.space().clone(),
            dist,
        }
    }

    pub fn base(&self) -> &FinMeasSpace {
        &self.base
    }

    pub fn mixture(&self) -> &Mixture<Prob> {
        &self.dist
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rational, &Prob)> {
        self.dist.iter()
    }

    /// Pushforward at both levels: `G(G(f))`.
    pub fn pushforward(&self, f: &MeasurableMap) -> Result<MetaProb> {
        let dist = self.dist.try_map(|p| pushforward(f, p))?;
        Ok(MetaProb {
            base: f.cod().clone(),
            dist,
        })
    }

    pub fn mix(&self, other: &MetaProb, alpha: &Rational) -> Result<MetaProb> {
        if self.base != other.base {
            return Err(Error::SpaceMismatch(
                "mixing meta-measures on different spaces".into(),
            ));
        }
        Ok(MetaProb {
            base: self.base.clone(),
            dist: self.dist.mix(&other.dist, alpha)?,
        })
    }
}

/// Monad multiplication: `μ(M)(U) = Σ_i w_i P_i(U)`.
pub fn mu(m: &MetaProb) -> Prob {
    let mut weights = vec![Rational::zero(); m.base.num_atoms()];
    for (w, p) in m.iter() {
        for (acc, x) in weights.iter_mut().zip(p.weights()) {
            if x.is_positive() {
                *acc = &*acc + &(w * x);
            }
        }
    }
    Prob {
        space: m.base.clone(),
        weights,
    }
}

/// Markov kernel: one measure on `cod` for each atom of `dom`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Kernel {
    dom: FinMeasSpace,
    cod: FinMeasSpace,
    rows: Vec<Prob>,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .map(|(a, p)| format!("{} => {}", self.dom.atom_key(a), p.key()))
            .collect();
        write!(f, "Kernel{rows:?}")
    }
}

impl Kernel {
    pub fn new(dom: &FinMeasSpace, cod: &FinMeasSpace, rows: Vec<Prob>) -> Result<Self> {
        if rows.len() != dom.num_atoms() {
            return input(format!(
                "kernel has {} rows for {} atoms",
                rows.len(),
                dom.num_atoms()
            ));
        }
        if let Some(a) = rows.iter().position(|r| r.space() != cod) {
            return Err(Error::SpaceMismatch(format!(
                "row `{}` is not a measure on the codomain",
                dom.atom_key(a)
            )));
        }
        Ok(Kernel {
            dom: dom.clone(),
            cod: cod.clone(),
            rows,
        })
    }

    /// Dirac rows: the identity of the Kleisli category.
    pub fn identity(space: &FinMeasSpace) -> Self {
        let rows = (0..space.num_atoms())
            .map(|a| Prob::dirac_atom(space, a))
            .collect();
        Kernel {
            dom: space.clone(),
            cod: space.clone(),
            rows,
        }
    }

    /// Deterministic kernel `η ∘ f`.
    pub fn from_map(f: &MeasurableMap) -> Self {
        let rows = (0..f.dom().num_atoms())
            .map(|a| Prob::dirac_atom(f.cod(), f.atom_image(a)))
            .collect();
        Kernel {
            dom: f.dom().clone(),
            cod: f.cod().clone(),
            rows,
        }
    }

    pub fn constant(dom: &FinMeasSpace, p: &Prob) -> Self {
        Kernel {
            dom: dom.clone(),
            cod: p.space().clone(),
            rows: vec![p.clone(); dom.num_atoms()],
        }
    }

    pub fn dom(&self) -> &FinMeasSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinMeasSpace {
        &self.cod
    }

    pub fn rows(&self) -> &[Prob] {
        &self.rows
    }

    pub fn row(&self, atom: usize) -> &Prob {
        &self.rows[atom]
    }

    /// Push a measure on the domain through the kernel: `μ(G(k)(P))`.
    pub fn apply(&self, p: &Prob) -> Result<Prob> {
        if p.space() != &self.dom {
            return Err(Error::SpaceMismatch(
                "measure is not on the kernel's domain".into(),
            ));
        }
        let m = MetaProb::new(
            &self.cod,
            p.support()
                .map(|a| (p.weight(a).clone(), self.rows[a].clone())),
        )?;
        Ok(mu(&m))
    }
}

/// Kleisli composite `k2 ∘ k1`: `row(x)(W) = Σ_b k1(x)(b) · k2(b)(W)`.
pub fn kleisli_compose(k1: &Kernel, k2: &Kernel) -> Result<Kernel> {
    if k1.cod != k2.dom {
        return Err(Error::SpaceMismatch(
            "kernel codomain and domain differ".into(),
        ));
    }
    let rows = k1
        .rows
        .iter()
        .map(|r| {
            let mut w = vec![Rational::zero(); k2.cod.num_atoms()];
            for (b, rb) in r.weights().iter().enumerate() {
                if rb.is_zero() {
                    continue;
                }
                for (acc, x) in w.iter_mut().zip(k2.rows[b].weights()) {
                    *acc = &*acc + &(rb * x);
                }
            }
            Prob {
                space: k2.cod.clone(),
                weights: w,
            }
        })
        .collect();
    Ok(Kernel {
        dom: k1.dom.clone(),
        cod: k2.cod.clone(),
        rows,
    })
}

/// A three-level tower: a mixture of meta-measures on one base.
pub type Tower = Mixture<Mixture<Prob>>;

/// Probes for [`monad_law_suite`].
#[derive(Debug, Clone, Default)]
pub struct MonadProbes {
    pub probs: Vec<Prob>,
    pub towers: Vec<Tower>,
}

/// Unit and associativity laws with the standard multiplication.
pub fn monad_law_suite(space: &FinMeasSpace, probes: &MonadProbes) -> Report {
    monad_law_suite_with(space, probes, &mu)
}

/// As [`monad_law_suite`], but against an arbitrary candidate multiplication.
pub fn monad_law_suite_with(
    space: &FinMeasSpace,
    probes: &MonadProbes,
    mult: &(dyn Fn(&MetaProb) -> Prob + Sync),
) -> Report {
    let mut left = LawCheck::new("monad-left-unit");
    let mut right = LawCheck::new("monad-right-unit");
    let mut assoc = LawCheck::new("monad-associativity");

    for p in probes.probs.iter().filter(|p| p.space() == space) {
        let l = mult(&MetaProb::dirac(p));
        left.record(&l == p, || format!("μ(δ_P) = {l:?} for P = {p:?}"));
        let r = mult(&MetaProb::of_diracs(p));
        right.record(&r == p, || format!("μ(G(η)(P)) = {r:?} for P = {p:?}"));
    }
    let meta = |m: &Mixture<Prob>| MetaProb::from_mixture(space, m.clone()).map(|m| mult(&m));
    for t in &probes.towers {
        let outer = MetaProb::from_mixture(space, t.flatten()).map(|m| mult(&m));
        let inner = t
            .try_map(meta)
            .and_then(|m| MetaProb::from_mixture(space, m))
            .map(|m| mult(&m));
        match (outer, inner) {
            (Ok(a), Ok(b)) => {
                assoc.record(a == b, || format!("μ∘μG = {a:?} but μ∘Gμ = {b:?} on {t:?}"))
            }
            (a, b) => assoc.fail(format!(
                "tower not on the space: {:?} {:?}",
                a.err(),
                b.err()
            )),
        }
    }
    Report {
        checks: vec![left, right, assoc],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn disc(n: usize) -> FinMeasSpace {
        let pts: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        FinMeasSpace::discrete(&pts).unwrap()
    }

    fn p(space: &FinMeasSpace, w: &[(i64, i64)]) -> Prob {
        Prob::new(space, w.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn prob_validation() {
        let x = disc(2);
        assert!(Prob::new(&x, vec![q(1, 2), q(1, 3)]).is_err());
        assert!(Prob::new(&x, vec![q(3, 2), q(-1, 2)]).is_err());
        assert!(Prob::new(&x, vec![q(1, 1)]).is_err());
    }

    #[test]
    fn dirac_examples() {
        let x = disc(3);
        assert_eq!(Prob::dirac(&x, 0).weights(), &[q(1, 1), q(0, 1), q(0, 1)]);

        let abc = FinMeasSpace::new(&["a", "b", "c"], &[vec!["a", "b"], vec!["c"]]).unwrap();
        assert_eq!(
            Prob::dirac_id(&abc, "a").unwrap(),
            Prob::dirac_id(&abc, "b").unwrap()
        );
        assert_ne!(
            Prob::dirac_id(&abc, "a").unwrap(),
            Prob::dirac_id(&abc, "c").unwrap()
        );
        assert!(Prob::dirac_id(&abc, "z").is_err());

        let one = disc(1);
        assert_eq!(Prob::dirac(&one, 0), Prob::uniform(&one));
    }

    #[test]
    fn pushforward_examples() {
        let x = disc(3);
        let y = FinMeasSpace::discrete(&["y1", "y2"]).unwrap();
        let f = MeasurableMap::new(&x, &y, vec![0, 0, 1]).unwrap();
        let pf = pushforward(&f, &p(&x, &[(1, 6), (1, 3), (1, 2)])).unwrap();
        assert_eq!(pf, p(&y, &[(1, 2), (1, 2)]));

        let d2 = disc(2);
        let swap = MeasurableMap::new(&d2, &d2, vec![1, 0]).unwrap();
        let half = Prob::uniform(&d2);
        assert_eq!(pushforward(&swap, &half).unwrap(), half);
        assert_eq!(
            pushforward(&MeasurableMap::identity(&x), &Prob::uniform(&x)).unwrap(),
            Prob::uniform(&x)
        );
        assert!(pushforward(&f, &half).is_err());
    }

    #[test]
    fn mu_examples() {
        let x = disc(2);
        let p1 = p(&x, &[(1, 1), (0, 1)]);
        let p2 = p(&x, &[(1, 4), (3, 4)]);
        let m = MetaProb::new(&x, [(q(1, 3), p1.clone()), (q(2, 3), p2)]).unwrap();
        assert_eq!(mu(&m), p(&x, &[(1, 2), (1, 2)]));
        assert_eq!(mu(&MetaProb::dirac(&p1)), p1);
        let u = Prob::uniform(&disc(3));
        assert_eq!(mu(&MetaProb::of_diracs(&u)), u);
    }

    #[test]
    fn kleisli_examples() {
        let x = FinMeasSpace::discrete(&["x"]).unwrap();
        let y = disc(2);
        let k1 = Kernel::new(&x, &y, vec![p(&y, &[(1, 2), (1, 2)])]).unwrap();
        let k2 = Kernel::new(
            &y,
            &y,
            vec![p(&y, &[(1, 1), (0, 1)]), p(&y, &[(1, 3), (2, 3)])],
        )
        .unwrap();
        let k = kleisli_compose(&k1, &k2).unwrap();
        assert_eq!(k.row(0), &p(&y, &[(2, 3), (1, 3)]));
        assert_eq!(kleisli_compose(&k1, &Kernel::identity(&y)).unwrap(), k1);
        assert!(kleisli_compose(&k2, &k1).is_err());

        // constant rows: every composite row is the pushforward-average
        let c = Kernel::constant(&y, &p(&y, &[(1, 4), (3, 4)]));
        let kc = kleisli_compose(&k2, &c).unwrap();
        assert!(kc.rows().iter().all(|r| r == &p(&y, &[(1, 4), (3, 4)])));
    }

    #[test]
    fn kleisli_matches_mu_route() {
        let y = disc(3);
        let k = Kernel::new(
            &y,
            &y,
            vec![
                p(&y, &[(1, 2), (1, 4), (1, 4)]),
                p(&y, &[(0, 1), (1, 3), (2, 3)]),
                p(&y, &[(1, 1), (0, 1), (0, 1)]),
            ],
        )
        .unwrap();
        let kk = kleisli_compose(&k, &k).unwrap();
        for a in 0..3 {
            assert_eq!(kk.row(a), &k.apply(k.row(a)).unwrap());
        }
    }

    #[test]
    fn mixture_merges_and_flattens() {
        let m = Mixture::new([
            (q(1, 2), 'a'),
            (q(1, 4), 'b'),
            (q(1, 4), 'a'),
            (q(0, 1), 'c'),
        ])
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m.weight_of(&'a'), q(3, 4));
        let t = Mixture::new([(q(1, 2), m.clone()), (q(1, 2), Mixture::dirac('b'))]).unwrap();
        assert_eq!(t.flatten().weight_of(&'b'), q(5, 8));
        assert!(Mixture::new([(q(1, 2), 'a')]).is_err());
    }

    #[test]
    fn corrupted_mu_is_caught() {
        let x = disc(3);
        let probes = MonadProbes {
            probs: vec![p(&x, &[(1, 2), (1, 4), (1, 4)])],
            towers: vec![],
        };
        let dropped = |m: &MetaProb| {
            let mut w = mu(m).weights().to_vec();
            w[0] = Rational::zero();
            Prob {
                space: m.base().clone(),
                weights: w,
            }
        };
        let r = monad_law_suite_with(&x, &probes, &dropped);
        assert!(!r.passed());
        assert!(r.first_failure().unwrap().witness.is_some());
        assert!(monad_law_suite(&x, &probes).passed());
    }
}
