//! Boolean subobject pairs and the σ-algebras a convex space carries.
//!
//! Three readings are available: `Σ₂` (generated by affine maps into **2**),
//! `Σ_I` (generated by affine maps into the unit interval) and their join `Σ̂`.
//! Finite carriers get an explicit [`FinMeasSpace`]; infinite carriers get a
//! generator family with a membership oracle that never guesses.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::convex::{
    canonical_alphas, hom_enum, is_affine, AffineMap, ConvexSpace, Element, MapBody,
};
use crate::error::{input, Error, Result};
use crate::finmeas::{is_measurable, max_enum, FinMeasSpace, MeasSet, MeasurableMap};
use crate::linalg;
use crate::rational::{q, unit_grid, Rational};
use crate::report::{LawCheck, Report};

/// Which family of affine maps generates the σ-algebra.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Variant {
    /// Affine maps into **2**.
    Sigma2,
    /// Affine maps into the unit interval.
    SigmaI,
    /// Both families together.
    Join,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Sigma2 => "sigma2",
            Variant::SigmaI => "sigmaI",
            Variant::Join => "join",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sigma2" => Ok(Variant::Sigma2),
            "sigmaI" => Ok(Variant::SigmaI),
            "join" => Ok(Variant::Join),
            _ => input(format!("unknown σ variant `{s}`")),
        }
    }
}

/// An interval of rationals with explicit endpoint closure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Interval {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl Interval {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo,
            lo_closed: true,
            hi,
            hi_closed: true,
        }
    }

    /// `[lo, hi)`
    pub fn half_open(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo,
            lo_closed: true,
            hi,
            hi_closed: false,
        }
    }

    pub fn contains(&self, r: &Rational) -> bool {
        let above = if self.lo_closed {
            r >= &self.lo
        } else {
            r > &self.lo
        };
        let below = if self.hi_closed {
            r <= &self.hi
        } else {
            r < &self.hi
        };
        above && below
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi && self.lo_closed && self.hi_closed {
            return write!(f, "{{{}}}", self.lo);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A finitely described subset of a convex space.
#[derive(Clone, PartialEq, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Region {
    Empty,
    Full,
    /// Indices of a finite carrier.
    Set(BTreeSet<usize>),
    /// A single element of an infinite carrier.
    Point(Element),
    /// `{x ≥ c}` (or `> c`) when `upward`, `{x < c}` (or `≤ c`) otherwise, on scalar
    /// spaces; `∞` lies above every threshold.
    Threshold {
        at: Rational,
        closed: bool,
        upward: bool,
    },
    /// `m⁻¹(J)` for an affine `m` into the unit interval.
    Preimage {
        map: AffineMap,
        interval: Interval,
    },
    Complement(Box<Region>),
    Union(Box<Region>, Box<Region>),
}

impl Region {
    pub fn complement(&self) -> Region {
        match self {
            Region::Empty => Region::Full,
            Region::Full => Region::Empty,
            Region::Complement(r) => (**r).clone(),
            r => Region::Complement(Box::new(r.clone())),
        }
    }

    pub fn contains(&self, space: &ConvexSpace, e: &Element) -> Result<bool> {
        if !space.contains(e) {
            return input(format!(
                "{e:?} is not an element of this {} space",
                space.kind()
            ));
        }
        Ok(match self {
            Region::Empty => false,
            Region::Full => true,
            Region::Set(s) => matches!(e, Element::Index(i) if s.contains(i)),
            Region::Point(p) => space.same(p, e),
            Region::Threshold { at, closed, upward } => match e {
                Element::Infinity => *upward,
                Element::Scalar(r) => match (upward, closed) {
                    (true, true) => r >= at,
                    (true, false) => r > at,
                    (false, true) => r <= at,
                    (false, false) => r < at,
                },
                _ => return input("thresholds apply to scalar spaces only"),
            },
            Region::Preimage { map, interval } => match map.apply(e)? {
                Element::Scalar(r) => interval.contains(&r),
                _ => return input("preimage map does not land in the unit interval"),
            },
            Region::Complement(r) => !r.contains(space, e)?,
            Region::Union(a, b) => a.contains(space, e)? || b.contains(space, e)?,
        })
    }

    /// Human-readable form; finite carriers print their labels.
    pub fn describe(&self, space: &ConvexSpace) -> String {
        match self {
            Region::Empty => "∅".into(),
            Region::Full => "full".into(),
            Region::Set(s) => {
                let labels = space.labels().unwrap_or_default();
                let items: Vec<&str> = s
                    .iter()
                    .map(|&i| labels.get(i).map_or("?", |l| l.as_str()))
                    .collect();
                format!("{{{}}}", items.join(","))
            }
            Region::Point(p) => format!("{{{p:?}}}"),
            Region::Threshold { at, closed, upward } => match (upward, closed) {
                (true, true) => format!("[{at}, ∞]"),
                (true, false) => format!("({at}, ∞]"),
                (false, true) => format!("[-∞, {at}]"),
                (false, false) => format!("[-∞, {at})"),
            },
            Region::Preimage { map, interval } => format!("{}⁻¹({interval})", describe_map(map)),
            Region::Complement(r) => format!("({})ᶜ", r.describe(space)),
            Region::Union(a, b) => format!("{} ∪ {}", a.describe(space), b.describe(space)),
        }
    }
}

fn describe_map(m: &AffineMap) -> String {
    match m.body() {
        MapBody::Path { start, end } => format!("γ[{start:?},{end:?}]"),
        MapBody::Linear { matrix, offset } => {
            let terms: Vec<String> = matrix[0]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    if c.is_one() {
                        format!("x{i}")
                    } else {
                        format!("{c}·x{i}")
                    }
                })
                .collect();
            let lin = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join("+")
            };
            if offset[0].is_zero() {
                lin
            } else {
                format!("({lin}+{})", offset[0])
            }
        }
        MapBody::Table(g) => format!("table{g:?}"),
    }
}

/// A subset whose characteristic map into **2** is affine.
#[derive(Clone, PartialEq, Debug)]
pub struct BooleanPair {
    space: ConvexSpace,
    part: Region,
}

impl BooleanPair {
    /// Checks the characteristic map on the space's Boolean probe grid.
    pub fn new(space: ConvexSpace, part: Region) -> Result<Self> {
        let pair = BooleanPair { space, part };
        if !pair.is_affine_on(&boolean_probes(&pair.space)) {
            return input(format!(
                "characteristic map of {} is not affine",
                pair.part.describe(&pair.space)
            ));
        }
        Ok(pair)
    }

    pub fn space(&self) -> &ConvexSpace {
        &self.space
    }

    pub fn part(&self) -> &Region {
        &self.part
    }

    pub fn complement(&self) -> Region {
        self.part.complement()
    }

    /// `χ(e)` as an element of **2**.
    pub fn chi(&self, e: &Element) -> Result<Element> {
        Ok(Element::Index(usize::from(
            self.part.contains(&self.space, e)?,
        )))
    }

    pub fn is_affine_on(&self, probes: &[(Element, Element, Rational)]) -> bool {
        is_affine(&self.space, &ConvexSpace::two(), &|e| self.chi(e), probes)
    }

    pub fn describe(&self) -> String {
        self.part.describe(&self.space)
    }

    /// Member indices, for finite carriers.
    pub fn members(&self) -> Option<BTreeSet<usize>> {
        let n = self.space.carrier_size()?;
        Some(
            (0..n)
                .filter(|&i| {
                    self.part
                        .contains(&self.space, &Element::Index(i))
                        .unwrap_or(false)
                })
                .collect(),
        )
    }
}

/// Probe triples for Boolean-pair checks: finer than the default affinity probes.
pub fn boolean_probes(space: &ConvexSpace) -> Vec<(Element, Element, Rational)> {
    let elems = match space {
        ConvexSpace::Simplex { .. } | ConvexSpace::Polytope { .. } => space.probe_elements(4),
        _ if space.is_finite_carrier() => space.probe_elements(1),
        _ => space.probe_elements(6),
    };
    let alphas = canonical_alphas();
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            for alpha in &alphas {
                out.push((a.clone(), b.clone(), alpha.clone()));
            }
        }
    }
    out
}

/// `m_S(x) = Σ_{i ∈ S} x_i` on a simplex.
pub fn face_functional(n: usize, face: &BTreeSet<usize>) -> Result<AffineMap> {
    let row = (0..n)
        .map(|i| {
            if face.contains(&i) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    AffineMap::new(
        ConvexSpace::Simplex { n },
        ConvexSpace::IntervalQ,
        MapBody::Linear {
            matrix: vec![row],
            offset: vec![Rational::zero()],
        },
    )
}

/// The face `{x : supp(x) ⊆ S}` as `(ε₂ ∘ m_S)⁻¹(1)`.
pub fn face_region(n: usize, face: &BTreeSet<usize>) -> Result<Region> {
    Ok(Region::Preimage {
        map: face_functional(n, face)?,
        interval: Interval::closed(q(1, 1), q(1, 1)),
    })
}

/// The `i`-th coordinate, rescaled into the unit interval when needed.
pub fn coordinate_functional(space: &ConvexSpace, i: usize) -> Result<Option<AffineMap>> {
    match space {
        ConvexSpace::Simplex { n } => {
            if i >= *n {
                return input("coordinate out of range");
            }
            let row = (0..*n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            AffineMap::new(
                space.clone(),
                ConvexSpace::IntervalQ,
                MapBody::Linear {
                    matrix: vec![row],
                    offset: vec![Rational::zero()],
                },
            )
            .map(Some)
        }
        ConvexSpace::Polytope { dim, generators } => {
            if i >= *dim {
                return input("coordinate out of range");
            }
            let lo = generators
                .iter()
                .map(|g| &g[i])
                .min()
                .expect("nonempty")
                .clone();
            let hi = generators
                .iter()
                .map(|g| &g[i])
                .max()
                .expect("nonempty")
                .clone();
            if lo == hi {
                return Ok(None);
            }
            let scale = (&hi - &lo).recip();
            let row = (0..*dim)
                .map(|j| {
                    if i == j {
                        scale.clone()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            AffineMap::new(
                space.clone(),
                ConvexSpace::IntervalQ,
                MapBody::Linear {
                    matrix: vec![row],
                    offset: vec![-(&lo * &scale)],
                },
            )
            .map(Some)
        }
        ConvexSpace::IntervalQ => AffineMap::identity(ConvexSpace::IntervalQ).map(Some),
        _ => input(format!(
            "no coordinate functionals on a {} space",
            space.kind()
        )),
    }
}

/// Candidate parts that the Boolean probe filter is run against on infinite carriers.
fn candidate_regions(space: &ConvexSpace) -> Result<Vec<Region>> {
    let mut out = vec![Region::Empty, Region::Full];
    let thresholds = |out: &mut Vec<Region>, cuts: Vec<Rational>| {
        for at in cuts {
            for closed in [true, false] {
                for upward in [true, false] {
                    out.push(Region::Threshold {
                        at: at.clone(),
                        closed,
                        upward,
                    });
                }
            }
        }
    };
    match space {
        ConvexSpace::IntervalQ => {
            let zero = Region::Point(Element::Scalar(q(0, 1)));
            let one = Region::Point(Element::Scalar(q(1, 1)));
            let ends = Region::Union(Box::new(zero.clone()), Box::new(one.clone()));
            out.extend([
                zero.clone(),
                one.clone(),
                zero.complement(),
                one.complement(),
                ends.clone(),
                ends.complement(),
            ]);
            thresholds(
                &mut out,
                unit_grid(4)
                    .into_iter()
                    .filter(Rational::is_interior)
                    .collect(),
            );
        }
        ConvexSpace::RInfty => {
            let inf = Region::Point(Element::Infinity);
            out.extend([
                inf.clone(),
                inf.complement(),
                Region::Point(Element::Scalar(q(0, 1))),
            ]);
            thresholds(&mut out, (-2..=2).map(|k| q(k, 1)).collect());
        }
        ConvexSpace::Simplex { n } => {
            for mask in 1u32..(1 << n) - 1 {
                let face: BTreeSet<usize> = (0..*n).filter(|i| mask >> i & 1 == 1).collect();
                let r = face_region(*n, &face)?;
                out.push(r.complement());
                out.push(r);
            }
            // coordinate cuts are never Boolean once there are two vertices
            for i in (0..*n).filter(|_| *n > 1) {
                let map = coordinate_functional(space, i)?.expect("simplex coordinates are proper");
                out.push(Region::Preimage {
                    map: map.clone(),
                    interval: Interval {
                        lo: q(1, 2),
                        lo_closed: false,
                        hi: q(1, 1),
                        hi_closed: true,
                    },
                });
                out.push(Region::Preimage {
                    map,
                    interval: Interval::half_open(q(0, 1), q(1, 2)),
                });
            }
        }
        _ => {
            return input(format!(
                "Boolean pairs are not computed for {} spaces",
                space.kind()
            ))
        }
    }
    Ok(out)
}

/// All Boolean subobject pairs, given by their parts.
///
/// Finite carriers are enumerated exhaustively through `Cvx(A, 2)`. Scalar spaces
/// and simplices run a fixed candidate family through the probe filter; on a
/// simplex the survivors are the faces.
pub fn boolean_pairs(space: &ConvexSpace) -> Result<Vec<BooleanPair>> {
    if space.is_finite_carrier() {
        let maps = hom_enum(space, &ConvexSpace::two(), max_enum())?;
        return Ok(maps
            .iter()
            .map(|m| {
                let part = match m.body() {
                    MapBody::Table(g) => g
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| **v == Element::Index(1))
                        .map(|(i, _)| i)
                        .collect(),
                    _ => unreachable!("enumerated maps are tables"),
                };
                BooleanPair {
                    space: space.clone(),
                    part: Region::Set(part),
                }
            })
            .collect());
    }
    let probes = boolean_probes(space);
    let mut out = Vec::new();
    for part in candidate_regions(space)? {
        let pair = BooleanPair {
            space: space.clone(),
            part,
        };
        if pair.is_affine_on(&probes) {
            out.push(pair);
        }
    }
    Ok(out)
}

/// One generator of an infinite-carrier σ-algebra.
#[derive(Clone, PartialEq, Debug)]
pub enum Generator {
    Region(Region),
    /// Preimages of every rational interval under an affine map into the unit interval.
    AllPreimages(AffineMap),
}

#[derive(Clone, PartialEq, Debug)]
pub enum SigmaRepr {
    Explicit(FinMeasSpace),
    Generators(Vec<Generator>),
}

/// A σ-algebra on a convex space.
#[derive(Clone, PartialEq, Debug)]
pub struct SigmaDescriptor {
    pub source: ConvexSpace,
    pub variant: Variant,
    pub repr: SigmaRepr,
}

impl SigmaDescriptor {
    pub fn explicit(&self) -> Option<&FinMeasSpace> {
        match &self.repr {
            SigmaRepr::Explicit(s) => Some(s),
            SigmaRepr::Generators(_) => None,
        }
    }

    /// Whether `region` is measurable: `Some` only when that can be decided from the
    /// descriptors, `None` when the oracle cannot tell.
    pub fn contains(&self, region: &Region) -> Option<bool> {
        match (&self.repr, region) {
            (_, Region::Empty | Region::Full) => Some(true),
            (_, Region::Complement(r)) => self.contains(r),
            (_, Region::Union(a, b)) => match (self.contains(a), self.contains(b)) {
                (Some(true), Some(true)) => Some(true),
                _ => self.refute(region),
            },
            (SigmaRepr::Explicit(space), Region::Set(s)) => {
                let ids = carrier_ids(&self.source, s).ok()?;
                Some(MeasSet::from_points(space, &ids).is_ok())
            }
            (SigmaRepr::Explicit(_), _) => None,
            (SigmaRepr::Generators(gens), r) => {
                let listed = gens.iter().any(|g| match (g, r) {
                    (Generator::Region(g), r) => g == r || g.complement() == *r,
                    (Generator::AllPreimages(m), Region::Preimage { map, .. }) => m == map,
                    _ => false,
                });
                if listed {
                    return Some(true);
                }
                if let Region::Preimage { map, interval } = r {
                    if map.dom() == &self.source && map.cod() == &ConvexSpace::IntervalQ {
                        let into_two = interval == &Interval::closed(q(1, 1), q(1, 1));
                        match self.variant {
                            Variant::SigmaI | Variant::Join => return Some(true),
                            Variant::Sigma2 if into_two => return Some(true),
                            Variant::Sigma2 => {}
                        }
                    }
                }
                self.refute(r)
            }
        }
    }

    /// Two probe elements that no generator separates but `region` does.
    fn refute(&self, region: &Region) -> Option<bool> {
        let SigmaRepr::Generators(gens) = &self.repr else {
            return None;
        };
        let elems = self.source.probe_elements(6);
        let signature = |e: &Element| -> Option<Vec<String>> {
            gens.iter()
                .map(|g| match g {
                    Generator::Region(r) => r.contains(&self.source, e).ok().map(|b| b.to_string()),
                    Generator::AllPreimages(m) => m.apply(e).ok().map(|v| format!("{v:?}")),
                })
                .collect()
        };
        let mut seen: BTreeMap<Vec<String>, bool> = BTreeMap::new();
        for e in &elems {
            let sig = signature(e)?;
            let inside = region.contains(&self.source, e).ok()?;
            if let Some(&prev) = seen.get(&sig) {
                if prev != inside {
                    return Some(false);
                }
            }
            seen.insert(sig, inside);
        }
        None
    }
}

fn carrier_ids(space: &ConvexSpace, set: &BTreeSet<usize>) -> Result<Vec<String>> {
    let labels = space
        .labels()
        .ok_or_else(|| Error::Input("not a finite carrier".into()))?;
    set.iter()
        .map(|&i| {
            labels
                .get(i)
                .cloned()
                .ok_or_else(|| Error::Input(format!("element #{i} out of range")))
        })
        .collect()
}

/// Sorted labels of a finite carrier together with each label's carrier index.
fn sorted_carrier(space: &ConvexSpace) -> Result<(Vec<String>, Vec<usize>)> {
    let labels = space
        .labels()
        .ok_or_else(|| Error::Input("not a finite carrier".into()))?;
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    Ok((order.iter().map(|&i| labels[i].clone()).collect(), order))
}

/// Affinity constraints `m(a +_α b) - (1-α)m(a) - αm(b) = 0` over a finite carrier.
fn affinity_constraints(space: &ConvexSpace, n: usize) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for alpha in canonical_alphas() {
                let c = match space.cc(&Element::Index(a), &Element::Index(b), &alpha) {
                    Ok(Element::Index(c)) => c,
                    _ => continue,
                };
                let mut row = vec![Rational::zero(); n];
                row[c] = &row[c] + &Rational::one();
                row[a] = &row[a] - &alpha.complement();
                row[b] = &row[b] - &alpha;
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// A basis of the affine functionals on a finite carrier, up to rescaling into `[0, 1]`.
///
/// Functionals are solutions of the affinity constraints; constants are among them,
/// so any solution can be shifted and scaled into the unit interval.
pub fn affine_functionals(space: &ConvexSpace) -> Result<Vec<Vec<Rational>>> {
    let n = space
        .carrier_size()
        .ok_or_else(|| Error::Input("not a finite carrier".into()))?;
    Ok(linalg::nullspace(affinity_constraints(space, n), n))
}

/// Carrier-index partition label under `Σ_I`: the tuple of basis functional values.
fn sigma_i_labels(space: &ConvexSpace) -> Result<Vec<Vec<Rational>>> {
    let basis = affine_functionals(space)?;
    let n = space.carrier_size().expect("finite");
    Ok((0..n)
        .map(|i| basis.iter().map(|v| v[i].clone()).collect())
        .collect())
}

fn sigma2_labels(space: &ConvexSpace) -> Result<Vec<Vec<bool>>> {
    let pairs = boolean_pairs(space)?;
    let n = space.carrier_size().expect("finite");
    Ok((0..n)
        .map(|i| {
            pairs
                .iter()
                .map(|p| p.members().expect("finite").contains(&i))
                .collect()
        })
        .collect())
}

/// The σ-algebra `Σ A` in the chosen reading.
pub fn sigma_functor(space: &ConvexSpace, variant: Variant) -> Result<SigmaDescriptor> {
    let repr = if space.is_finite_carrier() {
        let (points, order) = sorted_carrier(space)?;
        let s2 = if variant == Variant::SigmaI {
            None
        } else {
            Some(sigma2_labels(space)?)
        };
        let si = if variant == Variant::Sigma2 {
            None
        } else {
            Some(sigma_i_labels(space)?)
        };
        let label = |p: usize| {
            let i = order[p];
            (
                s2.as_ref().map(|l| l[i].clone()),
                si.as_ref().map(|l| l[i].clone()),
            )
        };
        SigmaRepr::Explicit(FinMeasSpace::from_labels(points, label))
    } else {
        let two_gens = || -> Result<Vec<Generator>> {
            Ok(boolean_pairs(space)?
                .into_iter()
                .map(|p| p.part)
                .filter(|r| !matches!(r, Region::Empty | Region::Full))
                .map(Generator::Region)
                .collect())
        };
        let interval_gens = || -> Result<Vec<Generator>> {
            match space {
                ConvexSpace::RInfty => Ok(vec![]),
                ConvexSpace::IntervalQ | ConvexSpace::Simplex { .. } => {
                    let n = match space {
                        ConvexSpace::Simplex { n } => *n,
                        _ => 1,
                    };
                    (0..n)
                        .map(|i| {
                            Ok(Generator::AllPreimages(
                                coordinate_functional(space, i)?.expect("proper"),
                            ))
                        })
                        .collect()
                }
                ConvexSpace::Polytope { dim, .. } => Ok((0..*dim)
                    .filter_map(|i| coordinate_functional(space, i).transpose())
                    .map(|m| m.map(Generator::AllPreimages))
                    .collect::<Result<_>>()?),
                _ => unreachable!("finite carriers handled above"),
            }
        };
        let gens = match (variant, space) {
            (Variant::Sigma2 | Variant::Join, ConvexSpace::Polytope { .. }) => {
                return input("Σ₂ of a polytope is not computed; use sigmaI");
            }
            (Variant::Sigma2, _) => two_gens()?,
            (Variant::SigmaI, _) => interval_gens()?,
            (Variant::Join, _) => {
                let mut g = two_gens()?;
                g.extend(interval_gens()?);
                g
            }
        };
        SigmaRepr::Generators(gens)
    };
    Ok(SigmaDescriptor {
        source: space.clone(),
        variant,
        repr,
    })
}

/// `Σm` as a measurable map between explicit σ-algebras of finite carriers.
pub fn sigma_map(m: &AffineMap, variant: Variant) -> Result<MeasurableMap> {
    let dom = sigma_functor(m.dom(), variant)?;
    let cod = sigma_functor(m.cod(), variant)?;
    let (Some(ds), Some(cs)) = (dom.explicit(), cod.explicit()) else {
        return input("Σ on maps is tabulated only between finite carriers");
    };
    let dl = m.dom().labels().expect("finite");
    let cl = m.cod().labels().expect("finite");
    let mut graph = vec![0; ds.num_points()];
    for (i, label) in dl.iter().enumerate() {
        let Element::Index(j) = m.apply(&Element::Index(i))? else {
            unreachable!("finite codomain")
        };
        graph[ds.index_of(label)?] = cs.index_of(&cl[j])?;
    }
    if !is_measurable(ds, cs, &graph) {
        return Err(Error::Consistency(
            "affine map is not measurable for Σ".into(),
        ));
    }
    MeasurableMap::new(ds, cs, graph)
}

/// Σ₂ of a finite carrier splits as the coproduct of Σ₂ of the two sides of a Boolean pair.
pub fn mcoprod_check(space: &ConvexSpace, pair: &BooleanPair) -> Result<Report> {
    if pair.space() != space {
        return Err(Error::SpaceMismatch(
            "Boolean pair lives on another space".into(),
        ));
    }
    let part = pair
        .members()
        .ok_or_else(|| Error::Input("coproduct check needs a finite carrier".into()))?;
    if !pair.is_affine_on(&boolean_probes(space)) {
        return input("pair is not Boolean");
    }
    let n = space.carrier_size().expect("finite");
    let rest: BTreeSet<usize> = (0..n).filter(|i| !part.contains(i)).collect();
    let labels = space.labels().expect("finite");

    let whole = sigma_functor(space, Variant::Sigma2)?;
    let whole = whole.explicit().expect("finite");
    let as_label_sets = |s: &FinMeasSpace| -> BTreeSet<BTreeSet<String>> {
        s.atom_ids()
            .into_iter()
            .map(|b| b.into_iter().collect())
            .collect()
    };

    let mut restriction = LawCheck::new("mcoprod-restriction");
    let mut iso = LawCheck::new("mcoprod-iso");
    let mut union_atoms = BTreeSet::new();
    for side in [&part, &rest] {
        if side.is_empty() {
            continue;
        }
        let members: Vec<usize> = side.iter().copied().collect();
        let sub = space.subspace(&members)?;
        let sub_sigma = sigma_functor(&sub, Variant::Sigma2)?;
        let own = as_label_sets(sub_sigma.explicit().expect("finite"));
        let side_labels: BTreeSet<String> = members.iter().map(|&i| labels[i].clone()).collect();
        let restricted: BTreeSet<BTreeSet<String>> = as_label_sets(whole)
            .into_iter()
            .map(|b| {
                b.intersection(&side_labels)
                    .cloned()
                    .collect::<BTreeSet<_>>()
            })
            .filter(|b| !b.is_empty())
            .collect();
        restriction.record(restricted == own, || {
            format!(
                "on {}: restricted atoms {restricted:?} vs own atoms {own:?}",
                pair.describe()
            )
        });
        union_atoms.extend(own);
    }
    let whole_atoms = as_label_sets(whole);
    iso.record(union_atoms == whole_atoms, || {
        format!("coproduct atoms {union_atoms:?} vs Σ₂ atoms {whole_atoms:?}")
    });
    Ok(Report {
        checks: vec![restriction, iso],
    })
}

/// A measurable set separating two elements, and the generator it came from.
#[derive(Clone, PartialEq, Debug)]
pub struct CosepWitness {
    pub region: Region,
    pub generator: String,
}

/// Find a measurable set containing exactly one of `a1`, `a2`, from a fixed family:
/// coordinate functionals on geometric spaces, principal filters on semilattices,
/// Boolean pairs and affine functionals on other finite carriers.
pub fn cosep_witness(
    space: &ConvexSpace,
    variant: Variant,
    a1: &Element,
    a2: &Element,
) -> Result<CosepWitness> {
    if !space.contains(a1) || !space.contains(a2) {
        return input("witness search needs two elements of the space");
    }
    if space.same(a1, a2) {
        return input("witness search needs distinct elements");
    }
    let none = || {
        Error::Consistency(format!(
            "no separating {variant} set for {a1:?} and {a2:?} in the {} family",
            space.kind()
        ))
    };
    let use_two = variant != Variant::SigmaI;
    let use_i = variant != Variant::Sigma2;

    let by_functional = |m: AffineMap, name: String| -> Result<Option<CosepWitness>> {
        let (Element::Scalar(x), Element::Scalar(y)) = (m.apply(a1)?, m.apply(a2)?) else {
            return input("functional does not land in the unit interval");
        };
        if x == y {
            return Ok(None);
        }
        let c = (&x + &y) * Rational::half();
        let interval = if x < y {
            Interval::half_open(Rational::zero(), c)
        } else {
            Interval {
                lo: c,
                lo_closed: false,
                hi: Rational::one(),
                hi_closed: true,
            }
        };
        Ok(Some(CosepWitness {
            region: Region::Preimage { map: m, interval },
            generator: name,
        }))
    };

    match space {
        ConvexSpace::Semilattice(s) if use_two => {
            let (Element::Index(x), Element::Index(y)) = (a1, a2) else {
                unreachable!("checked membership")
            };
            let top = if !s.leq(*x, *y) { *x } else { *y };
            return Ok(CosepWitness {
                region: Region::Set(s.principal_filter(top)),
                generator: format!("principal filter ↑{}", s.labels()[top]),
            });
        }
        ConvexSpace::Semilattice(_) => {}
        _ if space.is_finite_carrier() => {
            if use_two {
                for p in boolean_pairs(space)? {
                    if p.part.contains(space, a1)? != p.part.contains(space, a2)? {
                        return Ok(CosepWitness {
                            generator: format!("Boolean pair {}", p.describe()),
                            region: p.part,
                        });
                    }
                }
            }
            if use_i {
                let (Element::Index(x), Element::Index(y)) = (a1, a2) else {
                    unreachable!("checked membership")
                };
                for v in affine_functionals(space)? {
                    if v[*x] == v[*y] {
                        continue;
                    }
                    let lo = v.iter().min().expect("nonempty").clone();
                    let hi = v.iter().max().expect("nonempty").clone();
                    let scale = (&hi - &lo).recip();
                    let graph = v
                        .iter()
                        .map(|t| Element::Scalar((t - &lo) * &scale))
                        .collect();
                    let m = AffineMap::new(
                        space.clone(),
                        ConvexSpace::IntervalQ,
                        MapBody::Table(graph),
                    )?;
                    if let Some(w) = by_functional(m, "affine functional".into())? {
                        return Ok(w);
                    }
                }
            }
        }
        ConvexSpace::IntervalQ => {
            if use_i {
                let id = AffineMap::identity(ConvexSpace::IntervalQ)?;
                if let Some(w) = by_functional(id, "identity".into())? {
                    return Ok(w);
                }
            }
            if use_two {
                for r in [q(0, 1), q(1, 1)] {
                    let p = Region::Point(Element::Scalar(r.clone()));
                    if p.contains(space, a1)? != p.contains(space, a2)? {
                        return Ok(CosepWitness {
                            region: p,
                            generator: format!("Boolean pair {{{r}}}"),
                        });
                    }
                }
            }
        }
        ConvexSpace::Simplex { n } => {
            if use_i {
                for i in 0..*n {
                    let m = coordinate_functional(space, i)?.expect("proper");
                    if let Some(w) = by_functional(m, format!("coordinate x{i}"))? {
                        return Ok(w);
                    }
                }
            }
            if use_two {
                for p in boolean_pairs(space)? {
                    if p.part.contains(space, a1)? != p.part.contains(space, a2)? {
                        return Ok(CosepWitness {
                            generator: format!("face {}", p.describe()),
                            region: p.part,
                        });
                    }
                }
            }
        }
        ConvexSpace::Polytope { dim, .. } if use_i => {
            for i in 0..*dim {
                if let Some(m) = coordinate_functional(space, i)? {
                    if let Some(w) = by_functional(m, format!("rescaled coordinate x{i}"))? {
                        return Ok(w);
                    }
                }
            }
        }
        ConvexSpace::RInfty if use_two => {
            let finite = Region::Point(Element::Infinity).complement();
            if finite.contains(space, a1)? != finite.contains(space, a2)? {
                return Ok(CosepWitness {
                    region: finite,
                    generator: "Boolean pair R".into(),
                });
            }
        }
        _ => {}
    }
    Err(none())
}

/// Every sampled pair of distinct elements has a separating witness that the
/// descriptor recognises as measurable.
pub fn separated_check(
    space: &ConvexSpace,
    variant: Variant,
    samples: Option<&[Element]>,
) -> Result<Report> {
    let elems: Vec<Element> = match samples {
        Some(s) => s.to_vec(),
        None => space.probe_elements(4),
    };
    let sigma = sigma_functor(space, variant)?;
    let mut check = LawCheck::new(format!("sigma-separated-{variant}"));
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i + 1..] {
            if space.same(a, b) {
                continue;
            }
            match cosep_witness(space, variant, a, b) {
                Ok(w) => {
                    let splits = w.region.contains(space, a)? != w.region.contains(space, b)?;
                    let measurable = sigma.contains(&w.region) == Some(true);
                    check.record(splits && measurable, || {
                        format!(
                            "witness {} for {a:?}, {b:?} does not qualify",
                            w.region.describe(space)
                        )
                    });
                }
                Err(Error::Consistency(msg)) => check.fail(msg),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(Report::from(check))
}
