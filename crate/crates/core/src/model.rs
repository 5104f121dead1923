//! Model files: named spaces, maps, measures, kernels, convex spaces, affine maps
//! and algebras, read from JSON and written back canonically.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::algebra::{algebra_from_convex, sigma_space, AlgebraProbes, GiryAlgebra};
use crate::convex::{AffineMap, ConvexSpace, Element, MapBody, Semilattice};
use crate::error::{input, Error, Result};
use crate::finmeas::{separate, FinMeasSpace, MeasurableMap};
use crate::giry::{Kernel, Mixture, Prob};
use crate::rational::Rational;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    #[serde(default)]
    spaces: BTreeMap<String, RawSpace>,
    #[serde(default)]
    maps: BTreeMap<String, RawMap>,
    #[serde(default)]
    measures: BTreeMap<String, RawMeasure>,
    #[serde(default)]
    kernels: BTreeMap<String, RawKernel>,
    #[serde(default)]
    convex: BTreeMap<String, RawConvex>,
    #[serde(default)]
    affine_maps: BTreeMap<String, RawAffine>,
    #[serde(default)]
    algebras: BTreeMap<String, RawAlgebra>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpace {
    points: Vec<String>,
    atoms: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    dom: String,
    cod: String,
    graph: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasure {
    space: Option<String>,
    convex: Option<String>,
    weights: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    space: Option<String>,
    weights: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKernel {
    dom: String,
    cod: String,
    rows: BTreeMap<String, RawRow>,
}

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawConvex {
    #[serde(rename = "simplex")]
    Simplex { n: usize },
    #[serde(rename = "semilattice")]
    Semilattice {
        elements: Vec<String>,
        meet: Vec<[String; 3]>,
    },
    #[serde(rename = "chain")]
    Chain { n: usize },
    #[serde(rename = "polytope")]
    Polytope {
        dim: usize,
        generators: Vec<Vec<String>>,
    },
    #[serde(rename = "intervalQ")]
    IntervalQ,
    #[serde(rename = "rinfty")]
    RInfty,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAffine {
    dom: String,
    cod: String,
    body: String,
    table: Option<BTreeMap<String, String>>,
    matrix: Option<Vec<Vec<String>>>,
    offset: Option<Vec<String>>,
    start: Option<String>,
    end: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    space: Option<String>,
    convex: Option<String>,
    h: Option<BTreeMap<String, String>>,
}

#[derive(Clone, Debug)]
pub struct NamedMap {
    pub dom: String,
    pub cod: String,
    pub map: MeasurableMap,
}

#[derive(Clone, Debug)]
pub enum MeasureEntry {
    OnSpace {
        space: String,
        prob: Prob,
    },
    OnConvex {
        convex: String,
        dist: Mixture<Element>,
    },
}

#[derive(Clone, Debug)]
pub struct NamedKernel {
    pub dom: String,
    pub cod: String,
    pub kernel: Kernel,
}

#[derive(Clone, Debug)]
pub struct NamedAffine {
    pub dom: String,
    pub cod: String,
    pub map: AffineMap,
}

#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    /// The model space it lives on, or the convex space it was derived from.
    pub source: String,
    pub algebra: GiryAlgebra,
}

/// A loaded model with every cross-reference resolved.
#[derive(Clone, Debug, Default)]
pub struct Model {
    pub spaces: BTreeMap<String, FinMeasSpace>,
    pub maps: BTreeMap<String, NamedMap>,
    pub measures: BTreeMap<String, MeasureEntry>,
    pub kernels: BTreeMap<String, NamedKernel>,
    pub convex: BTreeMap<String, ConvexSpace>,
    pub affine_maps: BTreeMap<String, NamedAffine>,
    pub algebras: BTreeMap<String, NamedAlgebra>,
}

fn at<T>(path: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Input(m) => Error::Input(format!("{path}: {m}")),
        Error::Rational(s) => Error::Input(format!(
            "{path}: `{s}` is not a rational p/q in lowest terms"
        )),
        Error::UnknownPoint(p) => Error::Input(format!("{path}: unknown point `{p}`")),
        other => Error::Input(format!("{path}: {other}")),
    })
}

fn lookup<'a, T>(table: &'a BTreeMap<String, T>, kind: &str, name: &str) -> Result<&'a T> {
    table
        .get(name)
        .ok_or_else(|| Error::Input(format!("unknown {kind} `{name}`")))
}

fn rational(s: &str) -> Result<Rational> {
    if !s.contains('/') {
        return Err(Error::Rational(s.to_string()));
    }
    s.parse()
}

/// Text form of an element: a label on finite carriers, `(p/q,...)` for points
/// of a simplex or polytope (`vK` names vertex `K`), `p/q` or `inf` for scalars.
pub fn parse_element(space: &ConvexSpace, token: &str) -> Result<Element> {
    if let Some(labels) = space.labels() {
        return match labels.iter().position(|l| l == token) {
            Some(i) => Ok(Element::Index(i)),
            None => input(format!("`{token}` is not an element")),
        };
    }
    let e = match space {
        ConvexSpace::Simplex { .. } | ConvexSpace::Polytope { .. } => {
            if let Some(k) = token.strip_prefix('v') {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::Input(format!("bad vertex `{token}`")))?;
                space.vertex(k)?
            } else {
                let inner = token
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| Error::Input(format!("expected `(p/q,...)`, got `{token}`")))?;
                Element::Vector(
                    inner
                        .split(',')
                        .map(|c| rational(c.trim()))
                        .collect::<Result<_>>()?,
                )
            }
        }
        ConvexSpace::RInfty if token == "inf" => Element::Infinity,
        _ => Element::Scalar(rational(token)?),
    };
    if !space.contains(&e) {
        return input(format!(
            "`{token}` is not an element of this {} space",
            space.kind()
        ));
    }
    Ok(e)
}

pub fn format_element(space: &ConvexSpace, e: &Element) -> String {
    match e {
        Element::Index(i) => space
            .labels()
            .map(|l| l[*i].clone())
            .unwrap_or_else(|| format!("#{i}")),
        Element::Vector(v) => format!(
            "({})",
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ),
        Element::Scalar(r) => r.to_string(),
        Element::Infinity => "inf".into(),
    }
}

fn weights_on(space: &FinMeasSpace, raw: &BTreeMap<String, String>) -> Result<Prob> {
    let mut keyed = BTreeMap::new();
    for (k, v) in raw {
        let a = space.atom_by_key(k)?;
        keyed.insert(
            space.atom_key(a).to_string(),
            at(&format!("weights.{k}"), rational(v))?,
        );
    }
    Prob::from_keyed(space, &keyed)
}

fn build_convex(raw: &RawConvex) -> Result<ConvexSpace> {
    Ok(match raw {
        RawConvex::Simplex { n } => {
            if *n == 0 {
                return input("a simplex needs at least one vertex");
            }
            ConvexSpace::Simplex { n: *n }
        }
        RawConvex::Chain { n } => {
            if *n == 0 {
                return input("a chain needs at least one element");
            }
            ConvexSpace::chain(*n)
        }
        RawConvex::Semilattice { elements, meet } => {
            let triples: Vec<(String, String, String)> = meet
                .iter()
                .map(|[a, b, c]| (a.clone(), b.clone(), c.clone()))
                .collect();
            ConvexSpace::Semilattice(Semilattice::from_triples(elements.clone(), &triples)?)
        }
        RawConvex::Polytope { dim, generators } => {
            let gens = generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    at(
                        &format!("generators[{i}]"),
                        g.iter().map(|c| rational(c)).collect::<Result<Vec<_>>>(),
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            ConvexSpace::polytope(*dim, gens)?
        }
        RawConvex::IntervalQ => ConvexSpace::IntervalQ,
        RawConvex::RInfty => ConvexSpace::RInfty,
    })
}

impl Model {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawModel =
            serde_json::from_str(text).map_err(|e| Error::Input(format!("model file: {e}")))?;
        let mut m = Model::default();

        for (name, s) in &raw.spaces {
            let space = match &s.atoms {
                Some(atoms) => FinMeasSpace::new(&s.points, atoms),
                None => FinMeasSpace::discrete(&s.points),
            };
            m.spaces
                .insert(name.clone(), at(&format!("spaces.{name}"), space)?);
        }
        for (name, f) in &raw.maps {
            let path = format!("maps.{name}");
            let built = at(
                &path,
                (|| {
                    let dom = lookup(&m.spaces, "space", &f.dom)?;
                    let cod = lookup(&m.spaces, "space", &f.cod)?;
                    MeasurableMap::from_ids(dom, cod, &f.graph)
                })(),
            )?;
            m.maps.insert(
                name.clone(),
                NamedMap {
                    dom: f.dom.clone(),
                    cod: f.cod.clone(),
                    map: built,
                },
            );
        }
        for (name, c) in &raw.convex {
            m.convex.insert(
                name.clone(),
                at(&format!("convex.{name}"), build_convex(c))?,
            );
        }
        for (name, p) in &raw.measures {
            let path = format!("measures.{name}");
            let entry = at(
                &path,
                (|| match (&p.space, &p.convex) {
                    (Some(s), None) => Ok(MeasureEntry::OnSpace {
                        space: s.clone(),
                        prob: weights_on(lookup(&m.spaces, "space", s)?, &p.weights)?,
                    }),
                    (None, Some(c)) => {
                        let space = lookup(&m.convex, "convex space", c)?;
                        let pairs = p
                            .weights
                            .iter()
                            .map(|(k, v)| {
                                Ok((
                                    at(&format!("weights.{k}"), rational(v))?,
                                    parse_element(space, k)?,
                                ))
                            })
                            .collect::<Result<Vec<_>>>()?;
                        if pairs.iter().any(|(w, _)| w.is_negative()) {
                            return input("negative weight");
                        }
                        Ok(MeasureEntry::OnConvex {
                            convex: c.clone(),
                            dist: Mixture::new(pairs)?,
                        })
                    }
                    _ => input("give exactly one of `space` or `convex`"),
                })(),
            )?;
            m.measures.insert(name.clone(), entry);
        }
        for (name, k) in &raw.kernels {
            let path = format!("kernels.{name}");
            let built = at(
                &path,
                (|| {
                    let dom = lookup(&m.spaces, "space", &k.dom)?;
                    let cod = lookup(&m.spaces, "space", &k.cod)?;
                    let mut rows = Vec::with_capacity(dom.num_atoms());
                    for a in 0..dom.num_atoms() {
                        let key = dom.atom_key(a);
                        let row = k
                            .rows
                            .get(key)
                            .ok_or_else(|| Error::Input(format!("missing row `{key}`")))?;
                        if row.space.as_deref().is_some_and(|s| s != k.cod) {
                            return input(format!(
                                "rows.{key}: row lives on `{}`, not `{}`",
                                row.space.as_deref().unwrap_or(""),
                                k.cod
                            ));
                        }
                        rows.push(at(&format!("rows.{key}"), weights_on(cod, &row.weights))?);
                    }
                    if let Some(extra) = k.rows.keys().find(|r| {
                        dom.atom_by_key(r)
                            .map(|a| dom.atom_key(a) != r.as_str())
                            .unwrap_or(true)
                    }) {
                        return input(format!("row `{extra}` is not an atom key of `{}`", k.dom));
                    }
                    Kernel::new(dom, cod, rows)
                })(),
            )?;
            m.kernels.insert(
                name.clone(),
                NamedKernel {
                    dom: k.dom.clone(),
                    cod: k.cod.clone(),
                    kernel: built,
                },
            );
        }
        for (name, a) in &raw.affine_maps {
            let path = format!("affine_maps.{name}");
            let built = at(
                &path,
                (|| {
                    let dom = lookup(&m.convex, "convex space", &a.dom)?.clone();
                    let cod = lookup(&m.convex, "convex space", &a.cod)?.clone();
                    let body = match a.body.as_str() {
                        "table" => {
                            let table = a
                                .table
                                .as_ref()
                                .ok_or_else(|| Error::Input("table body needs `table`".into()))?;
                            let labels = dom.labels().ok_or_else(|| {
                                Error::Input("table bodies need a finite domain".into())
                            })?;
                            let values = labels
                                .iter()
                                .map(|l| {
                                    let v = table.get(l).ok_or_else(|| {
                                        Error::Input(format!("table misses `{l}`"))
                                    })?;
                                    parse_element(&cod, v)
                                })
                                .collect::<Result<Vec<_>>>()?;
                            if table.len() != labels.len() {
                                return input("table has entries outside the domain");
                            }
                            MapBody::Table(values)
                        }
                        "linear" => {
                            let matrix = a
                                .matrix
                                .as_ref()
                                .ok_or_else(|| Error::Input("linear body needs `matrix`".into()))?;
                            let matrix: Vec<Vec<Rational>> = matrix
                                .iter()
                                .map(|r| r.iter().map(|c| rational(c)).collect())
                                .collect::<Result<_>>()?;
                            let offset = match &a.offset {
                                Some(o) => o.iter().map(|c| rational(c)).collect::<Result<_>>()?,
                                None => vec![Rational::zero(); matrix.len()],
                            };
                            MapBody::Linear { matrix, offset }
                        }
                        "path" => {
                            let (Some(s), Some(e)) = (&a.start, &a.end) else {
                                return input("path body needs `start` and `end`");
                            };
                            MapBody::Path {
                                start: parse_element(&cod, s)?,
                                end: parse_element(&cod, e)?,
                            }
                        }
                        other => return input(format!("unknown body `{other}`")),
                    };
                    AffineMap::new(dom, cod, body)
                })(),
            )?;
            m.affine_maps.insert(
                name.clone(),
                NamedAffine {
                    dom: a.dom.clone(),
                    cod: a.cod.clone(),
                    map: built,
                },
            );
        }
        for (name, a) in &raw.algebras {
            let path = format!("algebras.{name}");
            let built = at(
                &path,
                (|| match (&a.space, &a.convex, &a.h) {
                    (Some(s), None, Some(h)) => {
                        let space = lookup(&m.spaces, "space", s)?;
                        let mut table = BTreeMap::new();
                        for (k, v) in h {
                            let p = at(&format!("h.{k}"), Prob::from_key(space, k))?;
                            let x = space.index_of(v)?;
                            table.insert(p.key(), space.atom_of(x));
                        }
                        Ok(NamedAlgebra {
                            source: s.clone(),
                            algebra: GiryAlgebra::from_table(space, table)?,
                        })
                    }
                    (None, Some(c), None) => {
                        let conv = lookup(&m.convex, "convex space", c)?;
                        let x = sigma_space(conv)?;
                        let probes = AlgebraProbes::standard(&x, 0, 0);
                        Ok(NamedAlgebra {
                            source: c.clone(),
                            algebra: algebra_from_convex(conv, &probes)?,
                        })
                    }
                    _ => input("give `space` with `h`, or `convex` alone"),
                })(),
            )?;
            m.algebras.insert(name.clone(), built);
        }
        Ok(m)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Measures that live on the named space.
    pub fn measures_on_space(&self, name: &str) -> Vec<Prob> {
        self.measures
            .values()
            .filter_map(|m| match m {
                MeasureEntry::OnSpace { space, prob } if space == name => Some(prob.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn measures_on_convex(&self, name: &str) -> Vec<Mixture<Element>> {
        self.measures
            .values()
            .filter_map(|m| match m {
                MeasureEntry::OnConvex { convex, dist } if convex == name => Some(dist.clone()),
                _ => None,
            })
            .collect()
    }
}

/// Weights keyed by atom, zero weights omitted.
pub fn prob_json(p: &Prob) -> Value {
    let weights: serde_json::Map<String, Value> = p
        .support()
        .map(|a| {
            (
                p.space().atom_key(a).to_string(),
                Value::String(p.weight(a).to_string()),
            )
        })
        .collect();
    Value::Object(weights)
}

pub fn kernel_json(dom: &str, cod: &str, k: &Kernel) -> Value {
    let rows: serde_json::Map<String, Value> = (0..k.dom().num_atoms())
        .map(|a| {
            (
                k.dom().atom_key(a).to_string(),
                json!({ "space": cod, "weights": prob_json(k.row(a)) }),
            )
        })
        .collect();
    json!({ "dom": dom, "cod": cod, "rows": rows })
}

pub fn space_json(s: &FinMeasSpace) -> Value {
    json!({ "points": s.points(), "atoms": s.atom_ids() })
}

pub fn separation_json(name: &str, s: &FinMeasSpace) -> Value {
    let (xs, q) = separate(s);
    let graph: serde_json::Map<String, Value> = q
        .graph_ids()
        .into_iter()
        .map(|(a, b)| (a, Value::String(b)))
        .collect();
    json!({ "space": name, "separated": space_json(&xs), "quotient_map": graph, "already_separated": s.is_separated() })
}

/// Sorted keys (the map type keeps them sorted), two-space indent, trailing LF.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
