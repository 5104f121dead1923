//! Finitely-presented convex spaces and affine maps.
//!
//! Convention throughout: `cc(a, b, α) = (1 - α)·a + α·b`, so `α = 0` gives `a`
//! and `α = 1` gives `b`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{input, Error, Result};
use crate::rational::{q, unit_grid, Rational};
use crate::report::{LawCheck, Report};

/// Mixing weights used by default for affinity and axiom probes.
pub fn canonical_alphas() -> Vec<Rational> {
    vec![q(0, 1), q(1, 3), q(1, 2), q(2, 3), q(1, 1)]
}

/// An element of some [`ConvexSpace`]. Which variant is legal depends on the space.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    /// Index into a finite carrier.
    Index(usize),
    /// Barycentric coordinates (simplex) or generator coefficients (polytope).
    Vector(Vec<Rational>),
    /// A point of the unit interval or a finite point of `R∞`.
    Scalar(Rational),
    /// The point at infinity of `R∞`.
    Infinity,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Index(i) => write!(f, "#{i}"),
            Element::Vector(v) => write!(f, "{v:?}"),
            Element::Scalar(r) => write!(f, "{r}"),
            Element::Infinity => write!(f, "∞"),
        }
    }
}

/// A finite meet-semilattice; combination at interior weights is the meet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Semilattice {
    labels: Vec<String>,
    meet: Vec<Vec<usize>>,
}

impl fmt::Debug for Semilattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.labels[a], self.labels[b]))
            .collect();
        write!(f, "Semilattice{:?}{{{}}}", self.labels, covers.join(","))
    }
}

impl Semilattice {
    /// Validate a meet table: idempotent, commutative, associative.
    pub fn new(labels: Vec<String>, meet: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return input("semilattice needs an element");
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != n {
            return input("duplicate semilattice label");
        }
        if meet.len() != n
            || meet
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&c| c >= n))
        {
            return input("meet table has the wrong shape");
        }
        for a in 0..n {
            if meet[a][a] != a {
                return input(format!("meet is not idempotent at `{}`", labels[a]));
            }
            for b in 0..n {
                if meet[a][b] != meet[b][a] {
                    return input(format!(
                        "meet is not commutative at `{}`, `{}`",
                        labels[a], labels[b]
                    ));
                }
                for c in 0..n {
                    if meet[meet[a][b]][c] != meet[a][meet[b][c]] {
                        return input(format!(
                            "meet is not associative at `{}`, `{}`, `{}`",
                            labels[a], labels[b], labels[c]
                        ));
                    }
                }
            }
        }
        Ok(Semilattice { labels, meet })
    }

    /// Build from a partial order; every pair must have a greatest lower bound.
    pub fn from_order(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let mut meet = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                let lower: Vec<usize> = (0..n).filter(|&c| leq(c, a) && leq(c, b)).collect();
                let glb = lower
                    .iter()
                    .copied()
                    .find(|&c| lower.iter().all(|&d| leq(d, c)));
                meet[a][b] = glb.ok_or_else(|| {
                    Error::Input(format!("`{}` and `{}` have no meet", labels[a], labels[b]))
                })?;
            }
        }
        Self::new(labels, meet)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_order(labels, |a, b| a <= b).expect("chains are semilattices")
    }

    /// Meet table from `(a, b, a∧b)` label triples; diagonal entries are implied.
    pub fn from_triples(labels: Vec<String>, triples: &[(String, String, String)]) -> Result<Self> {
        let n = labels.len();
        let idx = |s: &str| {
            labels
                .iter()
                .position(|l| l == s)
                .ok_or_else(|| Error::Input(format!("unknown semilattice element `{s}`")))
        };
        let mut meet = vec![vec![usize::MAX; n]; n];
        for (i, row) in meet.iter_mut().enumerate() {
            row[i] = i;
        }
        for (a, b, c) in triples {
            let (a, b, c) = (idx(a)?, idx(b)?, idx(c)?);
            for (x, y) in [(a, b), (b, a)] {
                if meet[x][y] != usize::MAX && meet[x][y] != c {
                    return input(format!(
                        "conflicting meets for `{}`, `{}`",
                        labels[x], labels[y]
                    ));
                }
                meet[x][y] = c;
            }
        }
        if let Some((a, b)) = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| meet[a][b] == usize::MAX)
        {
            return input(format!("missing meet for `{}`, `{}`", labels[a], labels[b]));
        }
        Self::new(labels, meet)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet[a][b] == a
    }

    /// Meet of a nonempty set of elements.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> Option<usize> {
        items.into_iter().reduce(|a, b| self.meet[a][b])
    }

    /// `(meet, a, b)` triples with `a < b` for the JSON form.
    pub fn meet_triples(&self) -> Vec<(String, String, String)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .map(|(a, b)| {
                (
                    self.labels[a].clone(),
                    self.labels[b].clone(),
                    self.labels[self.meet[a][b]].clone(),
                )
            })
            .collect()
    }

    /// Covering pairs `a ⋖ b` of the order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq(a, b);
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)))
            .collect()
    }

    /// Up-closed, meet-closed nonempty subsets, found by exhaustive search.
    pub fn filters(&self) -> Vec<BTreeSet<usize>> {
        let n = self.len();
        (1u32..(1 << n))
            .map(|m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .collect::<BTreeSet<usize>>()
            })
            .filter(|s| {
                s.iter()
                    .all(|&a| (0..n).all(|b| !self.leq(a, b) || s.contains(&b)))
                    && s.iter()
                        .all(|&a| s.iter().all(|&b| s.contains(&self.meet[a][b])))
            })
            .collect()
    }

    /// `↑a`
    pub fn principal_filter(&self, a: usize) -> BTreeSet<usize> {
        (0..self.len()).filter(|&b| self.leq(a, b)).collect()
    }

    /// Restriction to a meet-closed subset.
    pub fn restrict(&self, members: &[usize]) -> Result<Self> {
        let pos = |x: usize| members.iter().position(|&m| m == x);
        let mut meet = vec![vec![0; members.len()]; members.len()];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                meet[i][j] = pos(self.meet[a][b])
                    .ok_or_else(|| Error::Input("subset is not closed under meets".into()))?;
            }
        }
        Self::new(
            members.iter().map(|&m| self.labels[m].clone()).collect(),
            meet,
        )
    }

    /// Every meet-semilattice with `1..=max_len` elements, one per isomorphism class.
    pub fn enumerate_up_to_iso(max_len: usize) -> Vec<Semilattice> {
        let mut out = Vec::new();
        for n in 1..=max_len {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|(a, b)| a != b)
                .collect();
            let perms = permutations(n);
            let mut seen = BTreeSet::new();
            for mask in 0u64..(1 << pairs.len()) {
                let mut rel = vec![vec![false; n]; n];
                for (i, row) in rel.iter_mut().enumerate() {
                    row[i] = true;
                }
                for (k, &(a, b)) in pairs.iter().enumerate() {
                    rel[a][b] = mask >> k & 1 == 1;
                }
                let antisym = pairs.iter().all(|&(a, b)| !(rel[a][b] && rel[b][a]));
                let trans = (0..n).all(|a| {
                    (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || rel[a][c]))
                });
                if !antisym || !trans {
                    continue;
                }
                let canon = perms
                    .iter()
                    .map(|p| {
                        let mut m = vec![vec![false; n]; n];
                        for a in 0..n {
                            for b in 0..n {
                                m[p[a]][p[b]] = rel[a][b];
                            }
                        }
                        m
                    })
                    .min()
                    .expect("at least one permutation");
                if !seen.insert(canon) {
                    continue;
                }
                let labels = (0..n).map(|i| i.to_string()).collect();
                if let Ok(s) = Semilattice::from_order(labels, |a, b| rel[a][b]) {
                    out.push(s);
                }
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut v = p.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Combination rule of a [`FiniteTable`] space.
pub type CombineFn = dyn Fn(usize, usize, &Rational) -> usize + Send + Sync;

/// A finite carrier with a combination rule given as a function of the indices and weight.
///
/// The rule is used as-is, including at `α ∈ {0, 1}`, so the axiom suite is a
/// real check on it.
#[derive(Clone)]
pub struct FiniteTable {
    labels: Vec<String>,
    combine: Arc<CombineFn>,
}

impl FiniteTable {
    pub fn new(labels: Vec<String>, combine: Arc<CombineFn>) -> Result<Self> {
        if labels.is_empty() || labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
            return input("finite table needs distinct labels");
        }
        Ok(FiniteTable { labels, combine })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn combine(&self, a: usize, b: usize, alpha: &Rational) -> usize {
        (self.combine)(a, b, alpha)
    }
}

impl PartialEq for FiniteTable {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && Arc::ptr_eq(&self.combine, &other.combine)
    }
}

impl fmt::Debug for FiniteTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteTable{:?}", self.labels)
    }
}

/// A finitely-presented convex space.
#[derive(Clone, PartialEq, Debug)]
pub enum ConvexSpace {
    /// Standard simplex on `n` vertices; elements are barycentric vectors.
    Simplex { n: usize },
    /// Convex hull of rational generators in `Q^dim`; elements are coefficient vectors.
    Polytope {
        dim: usize,
        generators: Vec<Vec<Rational>>,
    },
    /// Discrete space: meet at interior weights.
    Semilattice(Semilattice),
    /// Rationals in `[0, 1]`.
    IntervalQ,
    /// Rationals together with a point at infinity that absorbs any positive weight.
    RInfty,
    /// Quotient of a finite-carrier space by a congruence, given as a partition of elements.
    Quotient {
        base: Box<ConvexSpace>,
        classes: Vec<Vec<usize>>,
    },
    /// A finite carrier with an arbitrary combination rule.
    Table(FiniteTable),
}

impl ConvexSpace {
    /// The two-element space `{0, 1}` where `0` absorbs all interior combinations.
    pub fn two() -> Self {
        ConvexSpace::Semilattice(Semilattice::chain(2))
    }

    pub fn chain(n: usize) -> Self {
        ConvexSpace::Semilattice(Semilattice::chain(n))
    }

    pub fn polytope(dim: usize, generators: Vec<Vec<Rational>>) -> Result<Self> {
        if generators.is_empty() || generators.iter().any(|g| g.len() != dim) {
            return input("polytope generators must be nonempty and match the dimension");
        }
        Ok(ConvexSpace::Polytope { dim, generators })
    }

    /// Validate that `classes` partitions the base carrier and respects combination.
    pub fn quotient(base: ConvexSpace, classes: Vec<Vec<usize>>) -> Result<Self> {
        let n = base
            .carrier_size()
            .ok_or_else(|| Error::Input("quotient of an infinite carrier".into()))?;
        let mut class_of = vec![usize::MAX; n];
        for (c, block) in classes.iter().enumerate() {
            if block.is_empty() {
                return input("empty congruence class");
            }
            for &x in block {
                if x >= n || class_of[x] != usize::MAX {
                    return input("congruence classes do not partition the carrier");
                }
                class_of[x] = c;
            }
        }
        if class_of.contains(&usize::MAX) {
            return input("congruence classes do not cover the carrier");
        }
        for a in 0..n {
            for b in 0..n {
                for alpha in canonical_alphas() {
                    let r = base.cc_index(a, b, &alpha);
                    for (&a2, &b2) in classes[class_of[a]]
                        .iter()
                        .flat_map(|a2| classes[class_of[b]].iter().map(move |b2| (a2, b2)))
                    {
                        if class_of[base.cc_index(a2, b2, &alpha)] != class_of[r] {
                            return input(format!(
                                "partition is not a congruence: #{a} ~ #{a2}, #{b} ~ #{b2} at α = {alpha}"
                            ));
                        }
                    }
                }
            }
        }
        Ok(ConvexSpace::Quotient {
            base: Box::new(base),
            classes,
        })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ConvexSpace::Simplex { .. } => "simplex",
            ConvexSpace::Polytope { .. } => "polytope",
            ConvexSpace::Semilattice(_) => "semilattice",
            ConvexSpace::IntervalQ => "intervalQ",
            ConvexSpace::RInfty => "rinfty",
            ConvexSpace::Quotient { .. } => "quotient",
            ConvexSpace::Table(_) => "table",
        }
    }

    /// Simplex, polytope and interval embed in a rational vector space.
    pub fn is_geometric(&self) -> bool {
        matches!(
            self,
            ConvexSpace::Simplex { .. } | ConvexSpace::Polytope { .. } | ConvexSpace::IntervalQ
        )
    }

    pub fn carrier_size(&self) -> Option<usize> {
        match self {
            ConvexSpace::Semilattice(s) => Some(s.len()),
            ConvexSpace::Quotient { classes, .. } => Some(classes.len()),
            ConvexSpace::Table(t) => Some(t.labels.len()),
            _ => None,
        }
    }

    pub fn is_finite_carrier(&self) -> bool {
        self.carrier_size().is_some()
    }

    /// Labels of a finite carrier, in index order.
    pub fn labels(&self) -> Option<Vec<String>> {
        match self {
            ConvexSpace::Semilattice(s) => Some(s.labels.clone()),
            ConvexSpace::Table(t) => Some(t.labels.clone()),
            ConvexSpace::Quotient { base, classes } => {
                let base_labels = base.labels()?;
                Some(
                    classes
                        .iter()
                        .map(|c| {
                            c.iter()
                                .map(|&i| base_labels[i].as_str())
                                .collect::<Vec<_>>()
                                .join("|")
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Elements of a finite carrier.
    pub fn elements(&self) -> Option<Vec<Element>> {
        self.carrier_size()
            .map(|n| (0..n).map(Element::Index).collect())
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels()
            .and_then(|ls| ls.iter().position(|l| l == label))
            .ok_or_else(|| {
                Error::Input(format!(
                    "`{label}` is not an element of this {} space",
                    self.kind()
                ))
            })
    }

    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (_, Element::Index(i)) => self.carrier_size().is_some_and(|n| *i < n),
            (ConvexSpace::Simplex { n }, Element::Vector(v)) => {
                v.len() == *n
                    && v.iter().all(|x| !x.is_negative())
                    && v.iter().sum::<Rational>().is_one()
            }
            (ConvexSpace::Polytope { generators, .. }, Element::Vector(v)) => {
                v.len() == generators.len()
                    && v.iter().all(|x| !x.is_negative())
                    && v.iter().sum::<Rational>().is_one()
            }
            (ConvexSpace::IntervalQ, Element::Scalar(r)) => r.in_unit_interval(),
            (ConvexSpace::RInfty, Element::Scalar(_) | Element::Infinity) => true,
            _ => false,
        }
    }

    fn check(&self, e: &Element) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            input(format!(
                "{e:?} is not an element of this {} space",
                self.kind()
            ))
        }
    }

    /// Ambient coordinates of a geometric element.
    pub fn ambient(&self, e: &Element) -> Option<Vec<Rational>> {
        match (self, e) {
            (ConvexSpace::Simplex { .. }, Element::Vector(v)) => Some(v.clone()),
            (ConvexSpace::Polytope { dim, generators }, Element::Vector(c)) => {
                let mut x = vec![Rational::zero(); *dim];
                for (w, g) in c.iter().zip(generators) {
                    if w.is_zero() {
                        continue;
                    }
                    for (xi, gi) in x.iter_mut().zip(g) {
                        *xi = &*xi + &(w * gi);
                    }
                }
                Some(x)
            }
            (ConvexSpace::IntervalQ, Element::Scalar(r)) => Some(vec![r.clone()]),
            _ => None,
        }
    }

    /// Equality of elements as points of this space (ambient equality for polytopes).
    pub fn same(&self, a: &Element, b: &Element) -> bool {
        match self {
            ConvexSpace::Polytope { .. } => self.ambient(a) == self.ambient(b),
            _ => a == b,
        }
    }

    /// Vertex `i` of a simplex or generator `i` of a polytope.
    pub fn vertex(&self, i: usize) -> Result<Element> {
        let n = match self {
            ConvexSpace::Simplex { n } => *n,
            ConvexSpace::Polytope { generators, .. } => generators.len(),
            _ => return input("only simplices and polytopes have vertices"),
        };
        if i >= n {
            return input(format!("vertex {i} out of range"));
        }
        Ok(Element::Vector(
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect(),
        ))
    }

    pub(crate) fn cc_index(&self, a: usize, b: usize, alpha: &Rational) -> usize {
        match self {
            ConvexSpace::Semilattice(s) => {
                if alpha.is_zero() {
                    a
                } else if alpha.is_one() {
                    b
                } else {
                    s.meet[a][b]
                }
            }
            ConvexSpace::Table(t) => t.combine(a, b, alpha),
            ConvexSpace::Quotient { base, classes } => {
                let r = base.cc_index(classes[a][0], classes[b][0], alpha);
                classes
                    .iter()
                    .position(|c| c.contains(&r))
                    .expect("classes cover the base")
            }
            _ => unreachable!("cc_index on an infinite carrier"),
        }
    }

    /// `a +_α b = (1 - α)·a + α·b`
    pub fn cc(&self, a: &Element, b: &Element, alpha: &Rational) -> Result<Element> {
        if !alpha.in_unit_interval() {
            return input(format!("weight {alpha} outside [0, 1]"));
        }
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (Element::Index(i), Element::Index(j)) => Element::Index(self.cc_index(*i, *j, alpha)),
            (Element::Vector(u), Element::Vector(v)) => Element::Vector(
                u.iter()
                    .zip(v)
                    .map(|(x, y)| Rational::lerp(x, y, alpha))
                    .collect(),
            ),
            (Element::Scalar(x), Element::Scalar(y)) => {
                Element::Scalar(Rational::lerp(x, y, alpha))
            }
            // R∞: any positive weight on ∞ gives ∞
            (Element::Infinity, _) if !alpha.is_one() => Element::Infinity,
            (_, Element::Infinity) if !alpha.is_zero() => Element::Infinity,
            (Element::Infinity, other) | (other, Element::Infinity) => other.clone(),
            _ => unreachable!("mixed element kinds pass the membership check"),
        })
    }

    /// Finite convex sum, folding `cc` left to right.
    pub fn combo(&self, pairs: &[(Rational, Element)]) -> Result<Element> {
        if pairs.is_empty() {
            return input("empty convex combination");
        }
        if let Some((w, _)) = pairs.iter().find(|(w, _)| w.is_negative()) {
            return input(format!("negative weight {w}"));
        }
        let total: Rational = pairs.iter().map(|(w, _)| w).sum();
        if !total.is_one() {
            return input(format!("weights sum to {total}, not 1"));
        }
        let (w0, e0) = &pairs[0];
        self.check(e0)?;
        let mut acc = e0.clone();
        let mut acc_w = w0.clone();
        for (w, e) in &pairs[1..] {
            let next_w = &acc_w + w;
            if next_w.is_zero() {
                self.check(e)?;
                acc = e.clone();
                continue;
            }
            acc = self.cc(&acc, e, &(w / &next_w))?;
            acc_w = next_w;
        }
        Ok(acc)
    }

    /// A finite set of sample elements: the whole carrier when finite, a rational grid otherwise.
    pub fn probe_elements(&self, max_denom: i64) -> Vec<Element> {
        match self {
            ConvexSpace::Simplex { n } => barycentric_grid(*n, max_denom)
                .into_iter()
                .map(Element::Vector)
                .collect(),
            ConvexSpace::Polytope { generators, .. } => {
                barycentric_grid(generators.len(), max_denom)
                    .into_iter()
                    .map(Element::Vector)
                    .collect()
            }
            ConvexSpace::IntervalQ => unit_grid(max_denom)
                .into_iter()
                .map(Element::Scalar)
                .collect(),
            ConvexSpace::RInfty => {
                let mut v: Vec<Element> = unit_grid(max_denom)
                    .into_iter()
                    .map(|r| r * Rational::from_integer(8) - Rational::from_integer(4))
                    .chain([Rational::from_integer(-16), Rational::from_integer(16)])
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .map(Element::Scalar)
                    .collect();
                v.push(Element::Infinity);
                v
            }
            _ => self.elements().expect("finite carrier"),
        }
    }

    /// Sub-convex space on a subset of a finite carrier closed under combination.
    pub fn subspace(&self, members: &[usize]) -> Result<ConvexSpace> {
        if let ConvexSpace::Semilattice(s) = self {
            return Ok(ConvexSpace::Semilattice(s.restrict(members)?));
        }
        let labels = self
            .labels()
            .ok_or_else(|| Error::Input("subspace of an infinite carrier".into()))?;
        for &a in members {
            for &b in members {
                for alpha in canonical_alphas() {
                    if !members.contains(&self.cc_index(a, b, &alpha)) {
                        return input("subset is not closed under combination");
                    }
                }
            }
        }
        let parent = self.clone();
        let m = members.to_vec();
        let combine = move |a: usize, b: usize, alpha: &Rational| {
            let r = parent.cc_index(m[a], m[b], alpha);
            m.iter().position(|&x| x == r).unwrap_or(usize::MAX)
        };
        Ok(ConvexSpace::Table(FiniteTable::new(
            members.iter().map(|&i| labels[i].clone()).collect(),
            Arc::new(combine),
        )?))
    }
}

/// All barycentric vectors of length `n` whose entries have a common denominator `d <= max_denom`.
pub fn barycentric_grid(n: usize, max_denom: i64) -> Vec<Vec<Rational>> {
    let mut out = BTreeSet::new();
    for d in 1..=max_denom {
        compositions(d, n, &mut vec![], &mut |c| {
            out.insert(c.iter().map(|&k| Rational::new(k, d)).collect::<Vec<_>>());
        });
    }
    out.into_iter().collect()
}

/// Calls `f` on every way of writing `total` as an ordered sum of `parts` nonnegative integers.
pub(crate) fn compositions(
    total: i64,
    parts: usize,
    prefix: &mut Vec<i64>,
    f: &mut dyn FnMut(&[i64]),
) {
    if parts == 0 {
        if total == 0 {
            f(prefix);
        }
        return;
    }
    if parts == 1 {
        prefix.push(total);
        f(prefix);
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, parts - 1, prefix, f);
        prefix.pop();
    }
}

/// How an affine map computes its values.
#[derive(Clone, PartialEq, Debug)]
pub enum MapBody {
    /// Explicit graph on a finite carrier, `graph[i]` is the image of element `i`.
    Table(Vec<Element>),
    /// `y = M·x + c` on ambient coordinates.
    Linear {
        matrix: Vec<Vec<Rational>>,
        offset: Vec<Rational>,
    },
    /// `γ(r) = start +_r end` out of the unit interval.
    Path { start: Element, end: Element },
}

/// A structure-preserving map between convex spaces.
#[derive(Clone, PartialEq, Debug)]
pub struct AffineMap {
    dom: ConvexSpace,
    cod: ConvexSpace,
    body: MapBody,
}

impl AffineMap {
    /// Table maps are checked exhaustively; linear maps are checked to land in the codomain.
    pub fn new(dom: ConvexSpace, cod: ConvexSpace, body: MapBody) -> Result<Self> {
        match &body {
            MapBody::Table(graph) => {
                let n = dom
                    .carrier_size()
                    .ok_or_else(|| Error::Input("table map needs a finite domain".into()))?;
                if graph.len() != n {
                    return input("table map graph has the wrong length");
                }
                for e in graph {
                    cod.check(e)?;
                }
            }
            MapBody::Linear { matrix, offset } => {
                let in_dim = match &dom {
                    ConvexSpace::Simplex { n } => *n,
                    ConvexSpace::Polytope { dim, .. } => *dim,
                    ConvexSpace::IntervalQ => 1,
                    _ => return input("linear maps need a geometric domain"),
                };
                let out_dim = match &cod {
                    ConvexSpace::Simplex { n } => *n,
                    ConvexSpace::IntervalQ => 1,
                    _ => return input("linear maps need a simplex or interval codomain"),
                };
                if matrix.len() != out_dim
                    || offset.len() != out_dim
                    || matrix.iter().any(|r| r.len() != in_dim)
                {
                    return input("linear map has the wrong shape");
                }
            }
            MapBody::Path { start, end } => {
                if dom != ConvexSpace::IntervalQ {
                    return input("path maps start at the unit interval");
                }
                cod.check(start)?;
                cod.check(end)?;
            }
        }
        let map = AffineMap { dom, cod, body };
        match &map.body {
            MapBody::Table(_) => {
                if let Some((a, b, alpha)) = map.affinity_witness(&default_probes(&map.dom)) {
                    return input(format!(
                        "table map is not affine at ({a:?}, {b:?}, {alpha})"
                    ));
                }
            }
            MapBody::Linear { .. } => {
                // vertices land in the codomain, hence so does the whole hull
                for v in extreme_points(&map.dom) {
                    map.apply(&v)?;
                }
            }
            MapBody::Path { .. } => {}
        }
        Ok(map)
    }

    /// The path map `γ_{a,b}` from the unit interval.
    pub fn path(cod: ConvexSpace, start: Element, end: Element) -> Result<Self> {
        Self::new(ConvexSpace::IntervalQ, cod, MapBody::Path { start, end })
    }

    pub fn identity(space: ConvexSpace) -> Result<Self> {
        match space.carrier_size() {
            Some(n) => Self::new(
                space.clone(),
                space,
                MapBody::Table((0..n).map(Element::Index).collect()),
            ),
            None if space == ConvexSpace::IntervalQ => Self::path(
                space,
                Element::Scalar(Rational::zero()),
                Element::Scalar(Rational::one()),
            ),
            None => input("identity map only for finite carriers and the interval"),
        }
    }

    pub fn dom(&self) -> &ConvexSpace {
        &self.dom
    }

    pub fn cod(&self) -> &ConvexSpace {
        &self.cod
    }

    pub fn body(&self) -> &MapBody {
        &self.body
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        self.dom.check(e)?;
        match &self.body {
            MapBody::Table(graph) => match e {
                Element::Index(i) => Ok(graph[*i].clone()),
                _ => unreachable!("finite carrier elements are indices"),
            },
            MapBody::Linear { matrix, offset } => {
                let x = self.dom.ambient(e).expect("geometric domain");
                let y: Vec<Rational> = matrix
                    .iter()
                    .zip(offset)
                    .map(|(row, c)| row.iter().zip(&x).map(|(m, xi)| m * xi).sum::<Rational>() + c)
                    .collect();
                let out = match self.cod {
                    ConvexSpace::IntervalQ => Element::Scalar(y[0].clone()),
                    _ => Element::Vector(y),
                };
                self.cod.check(&out)?;
                Ok(out)
            }
            MapBody::Path { start, end } => match e {
                Element::Scalar(r) => self.cod.cc(start, end, r),
                _ => unreachable!("interval elements are scalars"),
            },
        }
    }

    /// First probe on which `m(a +_α b) = m(a) +_α m(b)` fails.
    pub fn affinity_witness(
        &self,
        probes: &[(Element, Element, Rational)],
    ) -> Option<(Element, Element, Rational)> {
        affinity_witness(&self.dom, &self.cod, &|e| self.apply(e), probes)
    }

    pub fn is_affine(&self, probes: &[(Element, Element, Rational)]) -> bool {
        self.affinity_witness(probes).is_none()
    }

    /// `other ∘ self`, tabulated; needs a finite domain.
    pub fn then(&self, other: &AffineMap) -> Result<AffineMap> {
        if self.cod != other.dom {
            return Err(Error::SpaceMismatch(
                "affine composition: codomain and domain differ".into(),
            ));
        }
        let elems = self
            .dom
            .elements()
            .ok_or_else(|| Error::Input("composition needs a finite domain".into()))?;
        let graph = elems
            .iter()
            .map(|e| other.apply(&self.apply(e)?))
            .collect::<Result<_>>()?;
        AffineMap::new(self.dom.clone(), other.cod.clone(), MapBody::Table(graph))
    }
}

/// Vertices for simplices and polytopes, endpoints for the interval.
pub(crate) fn extreme_points(space: &ConvexSpace) -> Vec<Element> {
    match space {
        ConvexSpace::Simplex { n } => (0..*n)
            .map(|i| space.vertex(i).expect("in range"))
            .collect(),
        ConvexSpace::Polytope { generators, .. } => (0..generators.len())
            .map(|i| space.vertex(i).expect("in range"))
            .collect(),
        ConvexSpace::IntervalQ => vec![
            Element::Scalar(Rational::zero()),
            Element::Scalar(Rational::one()),
        ],
        _ => space.elements().unwrap_or_default(),
    }
}

/// Affinity probes: every pair of sample elements at every canonical weight.
pub fn default_probes(space: &ConvexSpace) -> Vec<(Element, Element, Rational)> {
    let elems = if space.is_finite_carrier() {
        space.probe_elements(1)
    } else {
        space.probe_elements(3)
    };
    let alphas = canonical_alphas();
    let mut out = Vec::with_capacity(elems.len() * elems.len() * alphas.len());
    for a in &elems {
        for b in &elems {
            for alpha in &alphas {
                out.push((a.clone(), b.clone(), alpha.clone()));
            }
        }
    }
    out
}

/// First probe on which a candidate map fails to preserve combination. Evaluation
/// errors count as failures.
pub fn affinity_witness(
    dom: &ConvexSpace,
    cod: &ConvexSpace,
    f: &dyn Fn(&Element) -> Result<Element>,
    probes: &[(Element, Element, Rational)],
) -> Option<(Element, Element, Rational)> {
    probes
        .iter()
        .find(|(a, b, alpha)| {
            let lhs = dom.cc(a, b, alpha).and_then(|c| f(&c));
            let rhs = f(a).and_then(|fa| f(b).and_then(|fb| cod.cc(&fa, &fb, alpha)));
            !matches!((lhs, rhs), (Ok(l), Ok(r)) if cod.same(&l, &r))
        })
        .cloned()
}

pub fn is_affine(
    dom: &ConvexSpace,
    cod: &ConvexSpace,
    f: &dyn Fn(&Element) -> Result<Element>,
    probes: &[(Element, Element, Rational)],
) -> bool {
    affinity_witness(dom, cod, f, probes).is_none()
}

/// The barycentric-algebra axioms over the given elements and weights.
///
/// Associativity is checked in the form
/// `(a +_r b) +_s c = a +_t (b +_{s/t} c)` with `t = r + s - rs`; when `t = 0`
/// both sides reduce to `a`.
pub fn axiom_suite(space: &ConvexSpace, elems: &[Element], alphas: &[Rational]) -> Report {
    let mut idem = LawCheck::new("convex-idempotence");
    let mut comm = LawCheck::new("convex-parametric-commutativity");
    let mut assoc = LawCheck::new("convex-parametric-associativity");
    let same = |x: &Result<Element>, y: &Result<Element>| matches!((x, y), (Ok(x), Ok(y)) if space.same(x, y));

    for a in elems {
        for alpha in alphas {
            let r = space.cc(a, a, alpha);
            idem.record(same(&r, &Ok(a.clone())), || {
                format!("{a:?} +_{alpha} {a:?} = {r:?}")
            });
        }
        for b in elems {
            for alpha in alphas {
                let l = space.cc(a, b, alpha);
                let r = space.cc(b, a, &alpha.complement());
                comm.record(same(&l, &r), || {
                    format!("a={a:?} b={b:?} α={alpha}: {l:?} vs {r:?}")
                });
            }
            for c in elems {
                for r in alphas {
                    for s in alphas {
                        let t = r + s - r * s;
                        let lhs = space.cc(a, b, r).and_then(|ab| space.cc(&ab, c, s));
                        let rhs = if t.is_zero() {
                            Ok(a.clone())
                        } else {
                            space
                                .cc(b, c, &(s / &t))
                                .and_then(|bc| space.cc(a, &bc, &t))
                        };
                        assoc.record(same(&lhs, &rhs), || {
                            format!("a={a:?} b={b:?} c={c:?} r={r} s={s}: {lhs:?} vs {rhs:?}")
                        });
                    }
                }
            }
        }
    }
    Report {
        checks: vec![idem, comm, assoc],
    }
}

/// Every affine map between two finite-carrier spaces.
pub fn hom_enum(a: &ConvexSpace, b: &ConvexSpace, max_enum: u64) -> Result<Vec<AffineMap>> {
    let (n, m) = match (a.carrier_size(), b.carrier_size()) {
        (Some(n), Some(m)) => (n, m),
        _ => return input("hom enumeration needs finite carriers"),
    };
    let needed = (m as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if needed > max_enum as u128 {
        return Err(Error::EnumerationCap {
            needed,
            cap: max_enum,
        });
    }
    let probes = default_probes(a);
    let mut out = Vec::new();
    let mut graph = vec![0usize; n];
    loop {
        let f = |e: &Element| match e {
            Element::Index(i) => Ok(Element::Index(graph[*i])),
            _ => input("not a carrier element"),
        };
        if is_affine(a, b, &f, &probes) {
            out.push(AffineMap {
                dom: a.clone(),
                cod: b.clone(),
                body: MapBody::Table(graph.iter().map(|&j| Element::Index(j)).collect()),
            });
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            graph[i] += 1;
            if graph[i] < m {
                break;
            }
            graph[i] = 0;
        }
    }
}

/// The affine map `I -> 2` sending `1` to `1` and everything else to `0`.
pub fn epsilon2() -> AffineMap {
    AffineMap::path(ConvexSpace::two(), Element::Index(0), Element::Index(1))
        .expect("0 and 1 are in 2")
}

/// Label → index lookup for finite carriers.
pub fn label_index(space: &ConvexSpace) -> BTreeMap<String, usize> {
    space
        .labels()
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .map(|(i, l)| (l, i))
        .collect()
}
