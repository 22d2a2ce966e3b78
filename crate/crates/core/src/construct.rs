//! The quiver, representation and thin dimension vector attached to a
//! homogeneous polynomial system.
//!
//! For an equalized system of degree `d` in `P^n` with `k` equations the quiver
//! has vertices `{1, 2, 3}`, arrows `phi_1..phi_k : 2 -> 1` given by the
//! coefficient rows of the equations in the monomial basis `M_{n,d}`, and
//! arrows `f_0..f_n : 2 -> 3` with `f_i(v_m) = v_{m - e_i}`. The dimension
//! vector of the representation is `(1, M, M')` and the Grassmannian is taken
//! at `e = (0, 1, 1)`. With no equations vertex 1 is dropped and `e = (1, 1)`
//! on the remaining vertices `{2, 3}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::exactmath::{parse_rational, Field, MathError, Matrix, Scalar};
use crate::polysys::{PolyError, PolynomialSystem};
use crate::veronese::{raise_table, MonomialBasis};

pub type Vertex = u32;

pub const LINEAR_FORM_TARGET: Vertex = 1;
pub const SOURCE: Vertex = 2;
pub const SHIFT_TARGET: Vertex = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("arrow {arrow}: expected a {expected:?} matrix, found {found:?}")]
    Shape {
        arrow: String,
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("arrow {arrow} references unknown vertex {vertex}")]
    UnknownVertex { arrow: String, vertex: Vertex },
    #[error("system has degree {system}, basis has degree {basis}")]
    DegreeMismatch { system: u32, basis: u32 },
    #[error("invalid representation document: {0}")]
    Document(String),
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<Vertex>, arrows: Vec<Arrow>) -> Result<Quiver, ConstructError> {
        for a in &arrows {
            for v in [a.source, a.target] {
                if !vertices.contains(&v) {
                    return Err(ConstructError::UnknownVertex {
                        arrow: a.name.clone(),
                        vertex: v,
                    });
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Kahn's algorithm: acyclic iff every vertex can be removed.
    pub fn is_acyclic(&self) -> bool {
        let mut indegree: BTreeMap<Vertex, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for a in &self.arrows {
            *indegree.get_mut(&a.target).expect("validated vertex") += 1;
        }
        let mut ready: Vec<Vertex> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut removed = 0;
        while let Some(v) = ready.pop() {
            removed += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                let d = indegree.get_mut(&a.target).expect("validated vertex");
                *d -= 1;
                if *d == 0 {
                    ready.push(a.target);
                }
            }
        }
        removed == self.vertices.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DimensionVector {
    entries: BTreeMap<Vertex, usize>,
}

impl DimensionVector {
    pub fn new(entries: BTreeMap<Vertex, usize>) -> DimensionVector {
        DimensionVector { entries }
    }

    pub fn get(&self, v: Vertex) -> Option<usize> {
        self.entries.get(&v).copied()
    }

    pub fn entries(&self) -> &BTreeMap<Vertex, usize> {
        &self.entries
    }

    pub fn is_thin(&self) -> bool {
        self.entries.values().all(|&e| e <= 1)
    }
}

/// A representation produced by [`build_representation`]: one matrix per
/// arrow, `dim(target) × dim(source)`, together with the `(n, d)` of the
/// monomial bases spanning vertices 2 and 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRepresentation {
    quiver: Quiver,
    dims: BTreeMap<Vertex, usize>,
    maps: Vec<Matrix>,
    n: usize,
    d: u32,
}

impl QuiverRepresentation {
    pub fn new(
        quiver: Quiver,
        dims: BTreeMap<Vertex, usize>,
        maps: Vec<Matrix>,
        n: usize,
        d: u32,
    ) -> Result<QuiverRepresentation, ConstructError> {
        if maps.len() != quiver.arrows.len() {
            return Err(ConstructError::Document(format!(
                "{} arrows but {} matrices",
                quiver.arrows.len(),
                maps.len()
            )));
        }
        for v in &quiver.vertices {
            if !dims.contains_key(v) {
                return Err(ConstructError::Document(format!("vertex {v} has no dimension")));
            }
        }
        for (a, m) in quiver.arrows.iter().zip(&maps) {
            let expected = (dims[&a.target], dims[&a.source]);
            if (m.rows(), m.cols()) != expected {
                return Err(ConstructError::Shape {
                    arrow: a.name.clone(),
                    expected,
                    found: (m.rows(), m.cols()),
                });
            }
        }
        Ok(QuiverRepresentation {
            quiver,
            dims,
            maps,
            n,
            d,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dims(&self) -> &BTreeMap<Vertex, usize> {
        &self.dims
    }

    pub fn dim(&self, v: Vertex) -> usize {
        self.dims.get(&v).copied().unwrap_or(0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> Field {
        self.maps.first().map_or(Field::Rational, Matrix::field)
    }

    /// Arrows paired with their matrices, in serialization order.
    pub fn arrows(&self) -> impl Iterator<Item = (&Arrow, &Matrix)> {
        self.quiver.arrows.iter().zip(&self.maps)
    }

    pub fn map(&self, name: &str) -> Option<&Matrix> {
        self.arrows().find(|(a, _)| a.name == name).map(|(_, m)| m)
    }

    /// The rows `phi_1..phi_k` as `1 × M` matrices.
    pub fn linear_forms(&self) -> Vec<&Matrix> {
        self.arrows()
            .filter(|(a, _)| a.target == LINEAR_FORM_TARGET)
            .map(|(_, m)| m)
            .collect()
    }

    /// `f_0..f_n`.
    pub fn shift_maps(&self) -> Vec<&Matrix> {
        self.arrows()
            .filter(|(a, _)| a.target == SHIFT_TARGET)
            .map(|(_, m)| m)
            .collect()
    }

    pub fn basis_d(&self) -> MonomialBasis {
        MonomialBasis::new(self.n, self.d)
    }

    pub fn reduce_into(&self, field: Field) -> Result<QuiverRepresentation, MathError> {
        Ok(QuiverRepresentation {
            quiver: self.quiver.clone(),
            dims: self.dims.clone(),
            maps: self
                .maps
                .iter()
                .map(|m| m.reduce_into(field))
                .collect::<Result<_, _>>()?,
            n: self.n,
            d: self.d,
        })
    }

    pub fn to_json(&self, e: &DimensionVector) -> String {
        let doc = RepresentationDoc {
            vertices: self.quiver.vertices.clone(),
            arrows: self
                .arrows()
                .map(|(a, m)| ArrowDoc {
                    name: a.name.clone(),
                    source: a.source,
                    target: a.target,
                    matrix: m.row_vecs().iter().map(|r| r.iter().map(scalar_to_json).collect()).collect(),
                })
                .collect(),
            dims: self.dims.iter().map(|(v, d)| (v.to_string(), *d)).collect(),
            dimension_vector: e.entries.iter().map(|(v, d)| (v.to_string(), *d)).collect(),
            n: self.n,
            d: self.d,
            monomial_order: self
                .basis_d()
                .monomials()
                .iter()
                .map(|m| m.exponents().to_vec())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("representation serializes")
    }

    /// Loads a document written by [`QuiverRepresentation::to_json`]. Entries are read over Q.
    pub fn from_json(text: &str) -> Result<(QuiverRepresentation, DimensionVector), ConstructError> {
        let doc: RepresentationDoc =
            serde_json::from_str(text).map_err(|e| ConstructError::Document(e.to_string()))?;
        let parse_key = |k: &String| {
            k.parse::<Vertex>()
                .map_err(|_| ConstructError::Document(format!("bad vertex key {k:?}")))
        };
        let dims = doc
            .dims
            .iter()
            .map(|(k, v)| Ok((parse_key(k)?, *v)))
            .collect::<Result<BTreeMap<_, _>, ConstructError>>()?;
        let e = doc
            .dimension_vector
            .iter()
            .map(|(k, v)| Ok((parse_key(k)?, *v)))
            .collect::<Result<BTreeMap<_, _>, ConstructError>>()?;
        let expected_order: Vec<Vec<u32>> = MonomialBasis::new(doc.n, doc.d)
            .monomials()
            .iter()
            .map(|m| m.exponents().to_vec())
            .collect();
        if expected_order != doc.monomial_order {
            return Err(ConstructError::Document("monomial_order is not canonical".into()));
        }
        let mut arrows = Vec::new();
        let mut maps = Vec::new();
        for a in doc.arrows {
            let cols = *dims.get(&a.source).ok_or_else(|| ConstructError::UnknownVertex {
                arrow: a.name.clone(),
                vertex: a.source,
            })?;
            let rows = a
                .matrix
                .iter()
                .map(|r| r.iter().map(scalar_from_json).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            maps.push(Matrix::from_rows(Field::Rational, cols, rows)?);
            arrows.push(Arrow {
                name: a.name,
                source: a.source,
                target: a.target,
            });
        }
        let quiver = Quiver::new(doc.vertices, arrows)?;
        Ok((
            QuiverRepresentation::new(quiver, dims, maps, doc.n, doc.d)?,
            DimensionVector::new(e),
        ))
    }
}

#[derive(Serialize, Deserialize)]
struct RepresentationDoc {
    vertices: Vec<Vertex>,
    arrows: Vec<ArrowDoc>,
    dims: BTreeMap<String, usize>,
    dimension_vector: BTreeMap<String, usize>,
    n: usize,
    d: u32,
    monomial_order: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct ArrowDoc {
    name: String,
    source: Vertex,
    target: Vertex,
    matrix: Vec<Vec<Value>>,
}

/// Integers that fit in an `i64` become JSON numbers; everything else is an `"a/b"` string.
fn scalar_to_json(x: &Scalar) -> Value {
    match x {
        Scalar::Rational(r) if r.is_integer() => match i64::try_from(r.numer()) {
            Ok(v) => Value::from(v),
            Err(_) => Value::from(x.to_string()),
        },
        Scalar::Rational(_) => Value::from(x.to_string()),
        Scalar::Mod { value, .. } => Value::from(*value),
    }
}

fn scalar_from_json(v: &Value) -> Result<Scalar, ConstructError> {
    let parsed = match v {
        Value::Number(n) => n.as_i64().map(|i| Scalar::from_i64(i, Field::Rational)),
        Value::String(s) => parse_rational(s),
        _ => None,
    };
    parsed.ok_or_else(|| ConstructError::Document(format!("bad matrix entry {v}")))
}

/// One coefficient row per equation, laid out in the order of `basis_d`.
pub fn build_linear_forms(
    s: &PolynomialSystem,
    basis_d: &MonomialBasis,
) -> Result<Vec<Vec<Scalar>>, ConstructError> {
    let field = s.field();
    s.equations()
        .iter()
        .map(|eq| {
            if eq.degree() != basis_d.degree() {
                return Err(ConstructError::DegreeMismatch {
                    system: eq.degree(),
                    basis: basis_d.degree(),
                });
            }
            let mut row = vec![Scalar::zero(field); basis_d.len()];
            for (m, c) in eq.terms() {
                let k = basis_d.index_of(m).ok_or_else(|| {
                    ConstructError::Document(format!("monomial {m} outside the basis"))
                })?;
                row[k] = c.clone();
            }
            Ok(row)
        })
        .collect()
}

/// The maps `f_0..f_n : V_2 -> V_3` over Q, each `M' × M`.
pub fn build_fi(basis_d: &MonomialBasis, basis_dm1: &MonomialBasis) -> Vec<Matrix> {
    let table = raise_table(basis_d, basis_dm1);
    (0..=basis_d.n())
        .map(|i| {
            let mut f = Matrix::zeros(Field::Rational, basis_dm1.len(), basis_d.len());
            for (row, raised) in table.iter().enumerate() {
                f.set(row, raised[i], Scalar::one(Field::Rational))
                    .expect("same field");
            }
            f
        })
        .collect()
}

/// Equalizes (to the system's common or maximal degree) and builds the representation.
pub fn build_representation(
    s: &PolynomialSystem,
) -> Result<(QuiverRepresentation, DimensionVector), ConstructError> {
    let d = s.common_degree().or(s.max_degree()).unwrap_or(1);
    build_representation_at_degree(s, d)
}

/// Like [`build_representation`] but equalizes to an explicit degree
/// `d >= max degree`.
pub fn build_representation_at_degree(
    s: &PolynomialSystem,
    d: u32,
) -> Result<(QuiverRepresentation, DimensionVector), ConstructError> {
    let s = s.equalize_to_degree(d)?;
    let n = s.ambient_n();
    let basis_d = MonomialBasis::new(n, d);
    let basis_dm1 = MonomialBasis::new(n, d - 1);
    let forms = build_linear_forms(&s, &basis_d)?;
    let k = forms.len();

    let mut arrows = Vec::new();
    let mut maps = Vec::new();
    for (j, row) in forms.into_iter().enumerate() {
        arrows.push(Arrow {
            name: format!("phi_{}", j + 1),
            source: SOURCE,
            target: LINEAR_FORM_TARGET,
        });
        maps.push(Matrix::from_rows(s.field(), basis_d.len(), vec![row])?);
    }
    for (i, f) in build_fi(&basis_d, &basis_dm1).into_iter().enumerate() {
        arrows.push(Arrow {
            name: format!("f_{i}"),
            source: SOURCE,
            target: SHIFT_TARGET,
        });
        maps.push(f.reduce_into(s.field())?);
    }

    let mut dims = BTreeMap::from([(SOURCE, basis_d.len()), (SHIFT_TARGET, basis_dm1.len())]);
    let mut e = BTreeMap::from([(SOURCE, 1), (SHIFT_TARGET, 1)]);
    let mut vertices = vec![SOURCE, SHIFT_TARGET];
    if k > 0 {
        vertices.insert(0, LINEAR_FORM_TARGET);
        dims.insert(LINEAR_FORM_TARGET, 1);
        e.insert(LINEAR_FORM_TARGET, 0);
    }
    let quiver = Quiver::new(vertices, arrows)?;
    Ok((
        QuiverRepresentation::new(quiver, dims, maps, n, d)?,
        DimensionVector::new(e),
    ))
}
