//! Simplicial complexes given by their facets, together with a degree map
//! on the vertices, and the poset of facet intersections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::DegreeMultiset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("vertex `{0}` is declared more than once")]
    DuplicateVertex(String),
    #[error("facet {facet} mentions undeclared vertex `{vertex}`")]
    UnknownVertexInFacet { facet: Simplex, vertex: String },
    #[error("facet {facet} is contained in facet {container}")]
    NonMaximalFacet { facet: Simplex, container: Simplex },
    #[error("vertex `{0}` lies in no facet")]
    OrphanVertex(String),
    #[error("vertex `{vertex}` has degree {degree}; degrees must be positive and even")]
    OddOrNonpositiveDegree { vertex: String, degree: i64 },
    #[error("facet #{0} is empty")]
    EmptyFacet(usize),
    #[error("a complex needs at least one facet")]
    NoFacets,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{0} is not a face of the complex")]
    NotAFace(Simplex),
}

/// A set of vertex ids, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(BTreeSet<String>);

impl Simplex {
    pub fn empty() -> Self {
        Simplex(BTreeSet::new())
    }

    pub fn new<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Simplex(ids.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &Simplex) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.intersection(&other.0).cloned().collect())
    }

    /// Vertices of `self` that also belong to `block`.
    pub fn restrict(&self, block: &BTreeSet<String>) -> Simplex {
        Simplex(self.0.intersection(block).cloned().collect())
    }

    pub fn ids(&self) -> &BTreeSet<String> {
        &self.0
    }

    /// All subsets, including the empty one and `self`.
    pub fn subsets(&self) -> Vec<Simplex> {
        let ids: Vec<&String> = self.0.iter().collect();
        assert!(ids.len() < 32, "simplex too large to enumerate its faces");
        (0u32..(1u32 << ids.len()))
            .map(|mask| {
                Simplex(
                    ids.iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, id)| (*id).clone())
                        .collect(),
                )
            })
            .collect()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

impl<S: Into<String>> FromIterator<S> for Simplex {
    fn from_iter<T: IntoIterator<Item = S>>(iter: T) -> Self {
        Simplex::new(iter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexDecl {
    pub id: String,
    pub degree: i64,
}

/// Wire form of a complex, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawComplex {
    pub vertices: Vec<VertexDecl>,
    pub facets: Vec<Vec<String>>,
}

/// A validated simplicial complex `K` on vertex set `V` with degree map
/// `φ: V → 2ℤ_{>0}`. Facets keep their input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct ComplexWithDegrees {
    vertices: Vec<(String, u32)>,
    degrees: BTreeMap<String, u32>,
    facets: Vec<Simplex>,
}

impl TryFrom<RawComplex> for ComplexWithDegrees {
    type Error = ComplexError;

    fn try_from(raw: RawComplex) -> Result<Self, Self::Error> {
        validate(&raw)?;
        let vertices: Vec<(String, u32)> = raw
            .vertices
            .iter()
            .map(|v| (v.id.clone(), v.degree as u32))
            .collect();
        let degrees = vertices.iter().cloned().collect();
        let facets = raw.facets.into_iter().map(Simplex::new).collect();
        Ok(ComplexWithDegrees {
            vertices,
            degrees,
            facets,
        })
    }
}

impl From<ComplexWithDegrees> for RawComplex {
    fn from(c: ComplexWithDegrees) -> Self {
        RawComplex {
            vertices: c
                .vertices
                .into_iter()
                .map(|(id, degree)| VertexDecl {
                    id,
                    degree: degree as i64,
                })
                .collect(),
            facets: c
                .facets
                .into_iter()
                .map(|f| f.0.into_iter().collect())
                .collect(),
        }
    }
}

/// Checks every structural invariant of a complex description.
pub fn validate(raw: &RawComplex) -> Result<(), ComplexError> {
    let mut declared = BTreeSet::new();
    for v in &raw.vertices {
        if !declared.insert(v.id.as_str()) {
            return Err(ComplexError::DuplicateVertex(v.id.clone()));
        }
        if v.degree < 2 || v.degree % 2 != 0 || v.degree > u32::MAX as i64 {
            return Err(ComplexError::OddOrNonpositiveDegree {
                vertex: v.id.clone(),
                degree: v.degree,
            });
        }
    }
    if raw.facets.is_empty() {
        return Err(ComplexError::NoFacets);
    }
    let facets: Vec<Simplex> = raw
        .facets
        .iter()
        .map(|f| Simplex::new(f.iter().cloned()))
        .collect();
    for (i, (facet, listed)) in facets.iter().zip(&raw.facets).enumerate() {
        if facet.is_empty() {
            return Err(ComplexError::EmptyFacet(i));
        }
        if let Some(v) = listed.iter().find(|v| !declared.contains(v.as_str())) {
            return Err(ComplexError::UnknownVertexInFacet {
                facet: facet.clone(),
                vertex: v.clone(),
            });
        }
    }
    for (i, facet) in facets.iter().enumerate() {
        for (j, other) in facets.iter().enumerate() {
            if i != j && facet.is_subset(other) && (facet != other || i > j) {
                return Err(ComplexError::NonMaximalFacet {
                    facet: facet.clone(),
                    container: other.clone(),
                });
            }
        }
    }
    let covered: BTreeSet<&str> = facets.iter().flat_map(|f| f.iter()).collect();
    if let Some(v) = raw
        .vertices
        .iter()
        .find(|v| !covered.contains(v.id.as_str()))
    {
        return Err(ComplexError::OrphanVertex(v.id.clone()));
    }
    Ok(())
}

impl ComplexWithDegrees {
    pub fn new(vertices: Vec<VertexDecl>, facets: Vec<Vec<String>>) -> Result<Self, ComplexError> {
        RawComplex { vertices, facets }.try_into()
    }

    /// Convenience constructor from `(id, degree)` pairs.
    pub fn from_parts(vertices: &[(&str, i64)], facets: &[&[&str]]) -> Result<Self, ComplexError> {
        Self::new(
            vertices
                .iter()
                .map(|&(id, degree)| VertexDecl {
                    id: id.to_string(),
                    degree,
                })
                .collect(),
            facets
                .iter()
                .map(|f| f.iter().map(|s| s.to_string()).collect())
                .collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }

    /// Vertices in declaration order.
    pub fn vertices(&self) -> impl Iterator<Item = (&str, u32)> + '_ {
        self.vertices.iter().map(|(id, d)| (id.as_str(), *d))
    }

    /// Vertex ids in lexicographic order.
    pub fn sorted_ids(&self) -> impl Iterator<Item = &str> + '_ {
        self.degrees.keys().map(String::as_str)
    }

    pub fn degree(&self, id: &str) -> Option<u32> {
        self.degrees.get(id).copied()
    }

    pub fn degree_map(&self) -> &BTreeMap<String, u32> {
        &self.degrees
    }

    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn max_degree(&self) -> u32 {
        self.degrees.values().copied().max().unwrap_or(0)
    }

    fn check_declared(&self, s: &Simplex) -> Result<(), ComplexError> {
        match s.iter().find(|id| !self.degrees.contains_key(*id)) {
            Some(id) => Err(ComplexError::UnknownVertex(id.to_string())),
            None => Ok(()),
        }
    }

    /// Whether `s` is a face, i.e. a subset of some facet.
    pub fn is_face(&self, s: &Simplex) -> Result<bool, ComplexError> {
        self.check_declared(s)?;
        Ok(self.contains_face(s))
    }

    pub(crate) fn contains_face(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_subset(f))
    }

    pub fn degree_multiset(&self, s: &Simplex) -> Result<DegreeMultiset, ComplexError> {
        if !self.is_face(s)? {
            return Err(ComplexError::NotAFace(s.clone()));
        }
        Ok(self.multiset_of(s))
    }

    /// Degree multiset of any set of declared vertices, face or not.
    pub(crate) fn multiset_of(&self, s: &Simplex) -> DegreeMultiset {
        DegreeMultiset::from_degrees(s.iter().map(|id| self.degrees[id]))
            .expect("validated degrees are even and positive")
    }

    /// All faces, including the empty one, in lexicographic order.
    pub fn faces(&self) -> BTreeSet<Simplex> {
        self.facets.iter().flat_map(|f| f.subsets()).collect()
    }

    /// The poset of intersections of nonempty sets of facets.
    pub fn pmax(&self) -> MaxIntersectionPoset {
        let mut elements: BTreeSet<Simplex> = self.facets.iter().cloned().collect();
        let mut frontier: Vec<Simplex> = elements.iter().cloned().collect();
        while let Some(s) = frontier.pop() {
            for f in &self.facets {
                let meet = s.intersection(f);
                if elements.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        MaxIntersectionPoset {
            elements: elements.into_iter().collect(),
        }
    }

    /// The subcomplex spanned by the facets at `indices`, in that order.
    pub fn facet_subcomplex(&self, indices: &[usize]) -> Result<Self, ComplexError> {
        let facets: Vec<Simplex> = indices.iter().map(|&i| self.facets[i].clone()).collect();
        let used: BTreeSet<&str> = facets.iter().flat_map(|f| f.iter()).collect();
        let vertices = self
            .vertices
            .iter()
            .filter(|(id, _)| used.contains(id.as_str()))
            .map(|(id, d)| VertexDecl {
                id: id.clone(),
                degree: *d as i64,
            })
            .collect();
        Self::new(
            vertices,
            facets
                .into_iter()
                .map(|f| f.0.into_iter().collect())
                .collect(),
        )
    }

    /// Same complex with the facets in sorted order, so that anything
    /// depending on facet order is reproducible across input permutations.
    pub fn canonical(&self) -> Self {
        let mut c = self.clone();
        c.facets.sort();
        c
    }

    /// Same complex with the facets listed in the given order.
    pub fn with_facet_order(&self, order: &[usize]) -> Self {
        assert_eq!(order.len(), self.facets.len());
        let mut c = self.clone();
        c.facets = order.iter().map(|&i| self.facets[i].clone()).collect();
        c
    }
}

/// Intersections of facets ordered by inclusion. Elements are sorted
/// lexicographically on their sorted id lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxIntersectionPoset {
    elements: Vec<Simplex>,
}

impl MaxIntersectionPoset {
    pub fn elements(&self) -> &[Simplex] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.elements.binary_search(s).is_ok()
    }

    /// Strict order `s < t`.
    pub fn less(&self, s: &Simplex, t: &Simplex) -> bool {
        s != t && s.is_subset(t)
    }

    /// Covering pairs `(s, t)`: `s < t` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Simplex, Simplex)> {
        let mut out = Vec::new();
        for s in &self.elements {
            for t in &self.elements {
                if !self.less(s, t) {
                    continue;
                }
                let between = self
                    .elements
                    .iter()
                    .any(|u| self.less(s, u) && self.less(u, t));
                if !between {
                    out.push((s.clone(), t.clone()));
                }
            }
        }
        out
    }
}
