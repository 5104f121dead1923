//! Finite measurable spaces.
//!
//! A σ-algebra on a finite set is the same thing as a partition of that set:
//! the measurable sets are exactly the unions of blocks ("atoms"). Every space
//! here is stored in that form, with points sorted by identifier and atoms
//! sorted by their least member, so structurally equal spaces compare equal.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{input, Error, Result};
use crate::report::{LawCheck, Report};

/// Default cap on the number of candidate graphs an exhaustive enumeration may visit.
pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;

static MAX_ENUM: AtomicU64 = AtomicU64::new(DEFAULT_MAX_ENUM);

/// The enumeration cap used where no explicit cap is passed.
pub fn max_enum() -> u64 {
    MAX_ENUM.load(Ordering::Relaxed)
}

pub fn set_max_enum(cap: u64) {
    MAX_ENUM.store(cap, Ordering::Relaxed);
}

#[derive(PartialEq, Eq, Hash)]
struct SpaceInner {
    points: Vec<String>,
    atoms: Vec<Vec<usize>>,
    atom_of: Vec<usize>,
}

/// A finite set together with a σ-algebra, held as its atom partition.
///
/// Cheap to clone; clones share storage.
#[derive(Clone)]
pub struct FinMeasSpace(Arc<SpaceInner>);

impl PartialEq for FinMeasSpace {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FinMeasSpace {}

impl Hash for FinMeasSpace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for FinMeasSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<Vec<&str>> = self
            .0
            .atoms
            .iter()
            .map(|b| b.iter().map(|&i| self.0.points[i].as_str()).collect())
            .collect();
        write!(f, "FinMeasSpace{blocks:?}")
    }
}

impl FinMeasSpace {
    /// Build a space from point ids and a partition of them into atoms.
    pub fn new<S: AsRef<str>>(points: &[S], atoms: &[Vec<S>]) -> Result<Self> {
        let (points, index) = sorted_points(points)?;
        let mut blocks = Vec::with_capacity(atoms.len());
        let mut seen = vec![false; points.len()];
        for block in atoms {
            if block.is_empty() {
                return input("empty atom");
            }
            let mut b = Vec::with_capacity(block.len());
            for id in block {
                let i = *index
                    .get(id.as_ref())
                    .ok_or_else(|| Error::UnknownPoint(id.as_ref().to_string()))?;
                if std::mem::replace(&mut seen[i], true) {
                    return input(format!("point `{}` occurs in two atoms", id.as_ref()));
                }
                b.push(i);
            }
            blocks.push(b);
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return input(format!("point `{}` is in no atom", points[i]));
        }
        Ok(Self::from_blocks(points, blocks))
    }

    /// Every singleton is an atom.
    pub fn discrete<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let (points, _) = sorted_points(points)?;
        let blocks = (0..points.len()).map(|i| vec![i]).collect();
        Ok(Self::from_blocks(points, blocks))
    }

    /// One atom holding every point. Requires at least one point.
    pub fn trivial<S: AsRef<str>>(points: &[S]) -> Result<Self> {
        let (points, _) = sorted_points(points)?;
        if points.is_empty() {
            return input("trivial space needs a point");
        }
        let blocks = vec![(0..points.len()).collect()];
        Ok(Self::from_blocks(points, blocks))
    }

    /// `points` must already be sorted and unique; `blocks` index into it.
    pub(crate) fn from_blocks(points: Vec<String>, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        let mut atom_of = vec![usize::MAX; points.len()];
        for (a, b) in blocks.iter().enumerate() {
            for &p in b {
                atom_of[p] = a;
            }
        }
        debug_assert!(atom_of.iter().all(|&a| a != usize::MAX));
        FinMeasSpace(Arc::new(SpaceInner {
            points,
            atoms: blocks,
            atom_of,
        }))
    }

    /// Partition a sorted point list by a labelling function: equal labels share an atom.
    pub(crate) fn from_labels<K: Ord>(points: Vec<String>, label: impl Fn(usize) -> K) -> Self {
        let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
        for i in 0..points.len() {
            groups.entry(label(i)).or_default().push(i);
        }
        Self::from_blocks(points, groups.into_values().collect())
    }

    pub fn points(&self) -> &[String] {
        &self.0.points
    }

    pub fn point(&self, i: usize) -> &str {
        &self.0.points[i]
    }

    pub fn num_points(&self) -> usize {
        self.0.points.len()
    }

    pub fn atoms(&self) -> &[Vec<usize>] {
        &self.0.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.0.atoms.len()
    }

    /// Index of the atom containing point `i`.
    pub fn atom_of(&self, i: usize) -> usize {
        self.0.atom_of[i]
    }

    /// Canonical name of an atom: the id of its least member.
    pub fn atom_key(&self, atom: usize) -> &str {
        &self.0.points[self.0.atoms[atom][0]]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.0
            .points
            .binary_search_by(|p| p.as_str().cmp(id))
            .map_err(|_| Error::UnknownPoint(id.to_string()))
    }

    /// Look an atom up by its canonical key.
    pub fn atom_by_key(&self, key: &str) -> Result<usize> {
        let i = self.index_of(key)?;
        let a = self.atom_of(i);
        if self.0.atoms[a][0] != i {
            return input(format!("`{key}` is not the least member of its atom"));
        }
        Ok(a)
    }

    /// Every atom is a singleton.
    pub fn is_separated(&self) -> bool {
        self.num_atoms() == self.num_points()
    }

    /// Atom blocks as point ids, for display and serialization.
    pub fn atom_ids(&self) -> Vec<Vec<String>> {
        self.0
            .atoms
            .iter()
            .map(|b| b.iter().map(|&i| self.0.points[i].clone()).collect())
            .collect()
    }

    /// The whole space as a measurable set.
    pub fn full(&self) -> MeasSet {
        MeasSet::from_atoms(self, 0..self.num_atoms())
    }

    pub fn empty(&self) -> MeasSet {
        MeasSet::from_atoms(self, std::iter::empty())
    }

    /// All measurable sets (one per subset of atoms). Errors when `2^atoms` exceeds `max`.
    pub fn all_sets(&self, max: u64) -> Result<Vec<MeasSet>> {
        let n = self.num_atoms();
        let needed = 1u128.checked_shl(n as u32).unwrap_or(u128::MAX);
        if n >= 64 || needed > max as u128 {
            return Err(Error::EnumerationCap { needed, cap: max });
        }
        Ok((0..(1u64 << n))
            .map(|mask| MeasSet::from_atoms(self, (0..n).filter(move |a| mask >> a & 1 == 1)))
            .collect())
    }
}

fn sorted_points<S: AsRef<str>>(points: &[S]) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut v: Vec<String> = points.iter().map(|p| p.as_ref().to_string()).collect();
    v.sort();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return input(format!("duplicate point `{}`", w[0]));
    }
    let index = v.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    Ok((v, index))
}

/// A measurable subset, stored as the set of atoms it is the union of.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MeasSet {
    space: FinMeasSpace,
    atoms: BTreeSet<usize>,
}

impl fmt::Debug for MeasSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<&str> = self.points().map(|i| self.space.point(i)).collect();
        write!(f, "{ids:?}")
    }
}

impl MeasSet {
    pub fn from_atoms(space: &FinMeasSpace, atoms: impl IntoIterator<Item = usize>) -> Self {
        MeasSet {
            space: space.clone(),
            atoms: atoms.into_iter().collect(),
        }
    }

    /// Validate that the given points form a union of atoms.
    pub fn from_points<S: AsRef<str>>(space: &FinMeasSpace, ids: &[S]) -> Result<Self> {
        let mut members = BTreeSet::new();
        for id in ids {
            members.insert(space.index_of(id.as_ref())?);
        }
        Self::from_point_indices(space, &members)
    }

    pub fn from_point_indices(space: &FinMeasSpace, members: &BTreeSet<usize>) -> Result<Self> {
        let atoms: BTreeSet<usize> = members.iter().map(|&i| space.atom_of(i)).collect();
        for &a in &atoms {
            if let Some(&p) = space.atoms()[a].iter().find(|p| !members.contains(p)) {
                return input(format!(
                    "set is not measurable: it splits the atom of `{}` (missing `{}`)",
                    space.atom_key(a),
                    space.point(p)
                ));
            }
        }
        Ok(MeasSet {
            space: space.clone(),
            atoms,
        })
    }

    pub fn space(&self) -> &FinMeasSpace {
        &self.space
    }

    pub fn atoms(&self) -> &BTreeSet<usize> {
        &self.atoms
    }

    pub fn contains_atom(&self, atom: usize) -> bool {
        self.atoms.contains(&atom)
    }

    pub fn contains_point(&self, i: usize) -> bool {
        self.atoms.contains(&self.space.atom_of(i))
    }

    /// Member point indices in increasing order.
    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        let mut v: Vec<usize> = self
            .atoms
            .iter()
            .flat_map(|&a| self.space.atoms()[a].iter().copied())
            .collect();
        v.sort_unstable();
        v.into_iter()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn complement(&self) -> MeasSet {
        MeasSet::from_atoms(
            &self.space,
            (0..self.space.num_atoms()).filter(|a| !self.atoms.contains(a)),
        )
    }

    pub fn union(&self, other: &MeasSet) -> MeasSet {
        MeasSet::from_atoms(&self.space, self.atoms.union(&other.atoms).copied())
    }

    pub fn intersection(&self, other: &MeasSet) -> MeasSet {
        MeasSet::from_atoms(&self.space, self.atoms.intersection(&other.atoms).copied())
    }

    pub fn is_subset(&self, other: &MeasSet) -> bool {
        self.atoms.is_subset(&other.atoms)
    }
}

/// Smallest σ-algebra on `points` making every generator measurable.
///
/// Two points share an atom exactly when no generator separates them.
pub fn generate_sigma<S: AsRef<str>>(points: &[S], generators: &[Vec<S>]) -> Result<FinMeasSpace> {
    let (points, index) = sorted_points(points)?;
    let mut member = vec![vec![false; points.len()]; generators.len()];
    for (g, gen) in generators.iter().enumerate() {
        for id in gen {
            let i = *index
                .get(id.as_ref())
                .ok_or_else(|| Error::UnknownPoint(id.as_ref().to_string()))?;
            member[g][i] = true;
        }
    }
    Ok(generate_from_indicators(points, &member))
}

/// As [`generate_sigma`], with generators given as membership vectors over sorted points.
pub(crate) fn generate_from_indicators(
    points: Vec<String>,
    generators: &[Vec<bool>],
) -> FinMeasSpace {
    FinMeasSpace::from_labels(points, |i| {
        generators.iter().map(|g| g[i]).collect::<Vec<bool>>()
    })
}

/// Preimage of every codomain atom is a union of domain atoms.
///
/// Equivalently, each domain atom lands inside a single codomain atom.
pub fn is_measurable(dom: &FinMeasSpace, cod: &FinMeasSpace, graph: &[usize]) -> bool {
    graph.len() == dom.num_points()
        && graph.iter().all(|&y| y < cod.num_points())
        && dom.atoms().iter().all(|block| {
            let a = cod.atom_of(graph[block[0]]);
            block.iter().all(|&x| cod.atom_of(graph[x]) == a)
        })
}

/// A measurable function between finite measurable spaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MeasurableMap {
    dom: FinMeasSpace,
    cod: FinMeasSpace,
    graph: Vec<usize>,
}

impl fmt::Debug for MeasurableMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .graph
            .iter()
            .enumerate()
            .map(|(x, &y)| format!("{}->{}", self.dom.point(x), self.cod.point(y)))
            .collect();
        write!(f, "Map{{{}}}", pairs.join(", "))
    }
}

impl MeasurableMap {
    /// `graph[i]` is the codomain index of domain point `i`.
    pub fn new(dom: &FinMeasSpace, cod: &FinMeasSpace, graph: Vec<usize>) -> Result<Self> {
        if graph.len() != dom.num_points() || graph.iter().any(|&y| y >= cod.num_points()) {
            return input("graph is not a total function into the codomain");
        }
        if !is_measurable(dom, cod, &graph) {
            let block = dom
                .atoms()
                .iter()
                .find(|b| {
                    b.iter()
                        .any(|&x| cod.atom_of(graph[x]) != cod.atom_of(graph[b[0]]))
                })
                .expect("non-measurable map has a split atom");
            return input(format!(
                "map is not measurable: the atom of `{}` is sent into several codomain atoms",
                dom.point(block[0])
            ));
        }
        Ok(MeasurableMap {
            dom: dom.clone(),
            cod: cod.clone(),
            graph,
        })
    }

    /// Build from a point-id graph.
    pub fn from_ids<S: AsRef<str>>(
        dom: &FinMeasSpace,
        cod: &FinMeasSpace,
        graph: &BTreeMap<S, S>,
    ) -> Result<Self> {
        let mut g = vec![usize::MAX; dom.num_points()];
        for (x, y) in graph {
            g[dom.index_of(x.as_ref())?] = cod.index_of(y.as_ref())?;
        }
        if let Some(x) = g.iter().position(|&y| y == usize::MAX) {
            return input(format!("graph has no value for `{}`", dom.point(x)));
        }
        Self::new(dom, cod, g)
    }

    pub fn identity(space: &FinMeasSpace) -> Self {
        MeasurableMap {
            dom: space.clone(),
            cod: space.clone(),
            graph: (0..space.num_points()).collect(),
        }
    }

    pub fn constant(dom: &FinMeasSpace, cod: &FinMeasSpace, y: usize) -> Self {
        assert!(y < cod.num_points());
        MeasurableMap {
            dom: dom.clone(),
            cod: cod.clone(),
            graph: vec![y; dom.num_points()],
        }
    }

    pub fn dom(&self) -> &FinMeasSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinMeasSpace {
        &self.cod
    }

    pub fn graph(&self) -> &[usize] {
        &self.graph
    }

    pub fn apply(&self, x: usize) -> usize {
        self.graph[x]
    }

    /// `other ∘ self`
    pub fn then(&self, other: &MeasurableMap) -> Result<MeasurableMap> {
        if self.cod != other.dom {
            return Err(Error::SpaceMismatch(
                "composition: codomain and domain differ".into(),
            ));
        }
        Ok(MeasurableMap {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            graph: self.graph.iter().map(|&y| other.graph[y]).collect(),
        })
    }

    /// Codomain atom that domain atom `atom` lands in.
    pub fn atom_image(&self, atom: usize) -> usize {
        self.cod.atom_of(self.graph[self.dom.atoms()[atom][0]])
    }

    pub fn preimage(&self, set: &MeasSet) -> Result<MeasSet> {
        if set.space() != &self.cod {
            return Err(Error::SpaceMismatch(
                "preimage of a set on another space".into(),
            ));
        }
        Ok(MeasSet::from_atoms(
            &self.dom,
            (0..self.dom.num_atoms()).filter(|&a| set.contains_atom(self.atom_image(a))),
        ))
    }

    pub fn is_bijective(&self) -> bool {
        let mut hit = vec![false; self.cod.num_points()];
        self.graph.len() == self.cod.num_points()
            && self
                .graph
                .iter()
                .all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    /// Inverse of a bijection, if it is measurable.
    pub fn inverse(&self) -> Result<MeasurableMap> {
        if !self.is_bijective() {
            return Err(Error::Precondition("map is not a bijection".into()));
        }
        let mut inv = vec![0; self.cod.num_points()];
        for (x, &y) in self.graph.iter().enumerate() {
            inv[y] = x;
        }
        MeasurableMap::new(&self.cod, &self.dom, inv)
    }

    /// Graph as point ids.
    pub fn graph_ids(&self) -> BTreeMap<String, String> {
        self.graph
            .iter()
            .enumerate()
            .map(|(x, &y)| (self.dom.point(x).to_string(), self.cod.point(y).to_string()))
            .collect()
    }
}

/// The separation quotient `X_s` and the quotient map `q: X -> X_s`.
///
/// Points of `X_s` are the atoms of `X`, named by their least member; the final
/// σ-algebra along `q` is computed and comes out discrete.
pub fn separate(space: &FinMeasSpace) -> (FinMeasSpace, MeasurableMap) {
    let keys: Vec<String> = (0..space.num_atoms())
        .map(|a| space.atom_key(a).to_string())
        .collect();
    // Atom keys are least members and atoms are sorted by least member, so `keys` is sorted.
    debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));

    // Final σ-algebra: W is measurable iff q⁻¹(W) is. Each singleton {[x]} pulls back
    // to an atom, so every singleton is a generator.
    let singletons: Vec<Vec<bool>> = (0..keys.len())
        .filter(|&b| {
            let pre: BTreeSet<usize> = space.atoms()[b].iter().copied().collect();
            MeasSet::from_point_indices(space, &pre).is_ok()
        })
        .map(|b| (0..keys.len()).map(|c| c == b).collect())
        .collect();
    let quotient = generate_from_indicators(keys, &singletons);
    assert!(
        quotient.is_separated(),
        "final σ-algebra on a finite quotient is discrete"
    );

    let graph = (0..space.num_points()).map(|x| space.atom_of(x)).collect();
    let q = MeasurableMap {
        dom: space.clone(),
        cod: quotient.clone(),
        graph,
    };
    (quotient, q)
}

/// The map `f_s: X_s -> Y_s` with `f_s([x]) = [f(x)]`.
pub fn induced_map(f: &MeasurableMap) -> Result<MeasurableMap> {
    let (xs, _) = separate(f.dom());
    let (ys, _) = separate(f.cod());
    let dom = f.dom();
    let cod = f.cod();
    let mut graph = Vec::with_capacity(dom.num_atoms());
    for block in dom.atoms() {
        let image = cod.atom_of(f.apply(block[0]));
        if let Some(&x) = block.iter().find(|&&x| cod.atom_of(f.apply(x)) != image) {
            return Err(Error::Consistency(format!(
                "`{}` and `{}` share an atom but land in different atoms",
                dom.point(block[0]),
                dom.point(x)
            )));
        }
        graph.push(image);
    }
    MeasurableMap::new(&xs, &ys, graph)
}

fn candidate_count(dom: &FinMeasSpace, cod: &FinMeasSpace) -> u128 {
    (cod.num_points() as u128)
        .checked_pow(dom.num_points() as u32)
        .unwrap_or(u128::MAX)
}

/// All measurable maps `dom -> cod`, in lexicographic order of their graphs.
pub fn hom(dom: &FinMeasSpace, cod: &FinMeasSpace, max_enum: u64) -> Result<Vec<MeasurableMap>> {
    let needed = candidate_count(dom, cod);
    if needed > max_enum as u128 {
        return Err(Error::EnumerationCap {
            needed,
            cap: max_enum,
        });
    }
    let n = dom.num_points();
    let m = cod.num_points();
    let mut out = Vec::new();
    if m == 0 {
        return Ok(if n == 0 {
            vec![MeasurableMap::new(dom, cod, vec![])?]
        } else {
            out
        });
    }
    let mut graph = vec![0usize; n];
    loop {
        if is_measurable(dom, cod, &graph) {
            out.push(MeasurableMap {
                dom: dom.clone(),
                cod: cod.clone(),
                graph: graph.clone(),
            });
        }
        // odometer, last position fastest
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

/// Point id used for a map inside a function space: `x1=y1;x2=y2;...`.
pub fn map_point_id(f: &MeasurableMap) -> String {
    f.graph
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{}={}", f.dom.point(x), f.cod.point(y)))
        .collect::<Vec<_>>()
        .join(";")
}

/// `Hom(X, Y)` together with the function space `Y^X` carrying the evaluation σ-algebra.
///
/// The returned list is ordered like the points of the returned space.
pub fn hom_and_function_space(
    x: &FinMeasSpace,
    y: &FinMeasSpace,
    max_enum: u64,
) -> Result<(Vec<MeasurableMap>, FinMeasSpace)> {
    let mut maps = hom(x, y, max_enum)?;
    maps.sort_by_cached_key(map_point_id);
    let ids: Vec<String> = maps.iter().map(map_point_id).collect();
    // Generators ev_x⁻¹(V) for V a codomain atom; a single label per map suffices:
    // the tuple of codomain atoms hit by each evaluation.
    let labels: Vec<Vec<usize>> = maps
        .iter()
        .map(|f| (0..x.num_points()).map(|p| y.atom_of(f.apply(p))).collect())
        .collect();
    let space = FinMeasSpace::from_labels(ids, |i| labels[i].clone());
    Ok((maps, space))
}

/// Check that precomposition with `q_X` is a bijection `Hom(X_s, Y) -> Hom(X, Y)` for
/// separated `Y`, and that the separation monad is idempotent on `X`.
pub fn check_s_adjunction(x: &FinMeasSpace, y: &FinMeasSpace, max_enum: u64) -> Result<Report> {
    if !y.is_separated() {
        return Err(Error::Precondition("codomain must be separated".into()));
    }
    let (xs, q) = separate(x);
    let left = hom(&xs, y, max_enum)?;
    let right = hom(x, y, max_enum)?;

    let mut bij = LawCheck::new("separation-hom-bijection");
    let mut images = BTreeSet::new();
    for g in &left {
        let composite = q.then(g)?;
        let fresh = images.insert(composite.graph.clone());
        bij.record(fresh, || {
            format!("two maps out of X_s restrict to the same map {composite:?}")
        });
    }
    let right_graphs: BTreeSet<Vec<usize>> = right.iter().map(|f| f.graph.clone()).collect();
    for f in &right {
        let hit = images.contains(&f.graph);
        bij.record(hit, || format!("{f:?} does not factor through X_s"));
    }
    bij.record(images.is_subset(&right_graphs), || {
        "a composite is not measurable".into()
    });

    let mut idem = LawCheck::new("separation-monad-idempotent");
    let (xss, qq) = separate(&xs);
    idem.record(xss == xs, || {
        format!("separating twice changed {xs:?} into {xss:?}")
    });
    idem.record(qq.is_bijective(), || {
        "second quotient map is not a bijection".into()
    });

    Ok(Report {
        checks: vec![bij, idem],
    })
}

/// Idempotence of separation, functoriality and naturality of induced maps over
/// `Hom(X, Y)` and `Hom(Y, X)`, and the hom bijection against `Y_s`.
pub fn separation_suite(x: &FinMeasSpace, y: &FinMeasSpace, max_enum: u64) -> Result<Report> {
    let (xs, qx) = separate(x);
    let (ys, qy) = separate(y);
    let mut rep = check_s_adjunction(x, &ys, max_enum)?;

    let mut ident = LawCheck::new("separation-identity");
    let id_s = induced_map(&MeasurableMap::identity(x))?;
    ident.record(id_s == MeasurableMap::identity(&xs), || {
        format!("(id_X)_s = {id_s:?}")
    });

    let forward = hom(x, y, max_enum)?;
    let backward = hom(y, x, max_enum)?;
    let mut natural = LawCheck::new("separation-naturality");
    let mut functor = LawCheck::new("separation-functoriality");
    for f in &forward {
        let fs = induced_map(f)?;
        natural.record(qx.then(&fs)? == f.then(&qy)?, || {
            format!("f_s ∘ q ≠ q ∘ f for {f:?}")
        });
        for g in &backward {
            let lhs = induced_map(&f.then(g)?)?;
            let rhs = fs.then(&induced_map(g)?)?;
            functor.record(lhs == rhs, || {
                format!("(g ∘ f)_s ≠ g_s ∘ f_s for f = {f:?}, g = {g:?}")
            });
        }
    }
    rep.push(ident);
    rep.push(natural);
    rep.push(functor);
    Ok(rep)
}
