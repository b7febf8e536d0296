//! The homotopy-colimit diagram over `P_max(K)`: node spaces built from
//! `BSp(n)`, `BSU(n)` and copies of `CP^∞`, and edge maps built from the
//! standard inclusions `ι1: BSU(n) → BSU(n+1)`, `ι2: BSp(n) → BSp(n+1)`,
//! `ι3: BSp(n) → BSU(2n)` and coordinate inclusions of `CP^∞` factors.
//!
//! Nothing topological is built; every label carries enough data to recover
//! the free cohomology ring of a node and the map induced on generators by
//! an edge.

mod emit;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexWithDegrees, Simplex};
use crate::realize::{Partition, PartitionError};
use crate::ring::DegreeMultiset;
use crate::steenrod::{sp_degrees, su_degrees, AdmissibleClass};

pub use emit::{emit_dot, emit_json, parse_json};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("{simplex} meets block {block} in an unconstructible piece ({class})")]
    InadmissibleSimplex {
        simplex: Simplex,
        block: usize,
        class: AdmissibleClass,
    },
    #[error("no canonical map {from} -> {to} in block {block}")]
    NoCanonicalMap {
        from: String,
        to: String,
        block: usize,
    },
    #[error("{0} is not contained in {1}")]
    NotContained(Simplex, Simplex),
    #[error("labels of {0} and {1} have different block counts")]
    BlockCountMismatch(Simplex, Simplex),
    #[error("malformed label in block {block}: {detail}")]
    MalformedLabel { block: usize, detail: String },
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FactorLabel {
    #[serde(rename = "CPInfPower")]
    CpInfPower {
        k: usize,
    },
    BSp {
        n: u32,
    },
    BSU {
        n: u32,
    },
    Point,
}

impl FactorLabel {
    /// Generator degrees of the Lie factor alone (`CP^∞` coordinates are
    /// accounted for separately).
    fn lie_degrees(&self) -> Vec<u32> {
        match *self {
            FactorLabel::BSp { n } => sp_degrees(n),
            // H*(BSU(n)) = Z[c_2, …, c_n]
            FactorLabel::BSU { n } => su_degrees(n.saturating_sub(1)),
            FactorLabel::CpInfPower { .. } | FactorLabel::Point => Vec::new(),
        }
    }
}

impl fmt::Display for FactorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FactorLabel::CpInfPower { k } => write!(f, "{}", cp_text(k)),
            FactorLabel::BSp { n } => write!(f, "BSp({n})"),
            FactorLabel::BSU { n } => write!(f, "BSU({n})"),
            FactorLabel::Point => write!(f, "pt"),
        }
    }
}

fn cp_text(k: usize) -> String {
    if k == 1 {
        "CP^inf".to_string()
    } else {
        format!("CP^inf^{k}")
    }
}

/// The space `X_{σ ∩ A_i}` for one partition block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockLabel {
    pub block: usize,
    pub factor: FactorLabel,
    /// Vertices bound to the Lie factor's generators, in ascending degree.
    pub lie_generators: Vec<String>,
    /// Degree-2 vertices, one per `CP^∞` coordinate, in id order.
    pub cp_coordinates: Vec<String>,
}

impl BlockLabel {
    fn has_lie(&self) -> bool {
        matches!(
            self.factor,
            FactorLabel::BSp { .. } | FactorLabel::BSU { .. }
        )
    }

    /// Generator degrees of the label's free cohomology ring.
    pub fn generator_degrees(&self) -> Vec<u32> {
        let mut v = self.factor.lie_degrees();
        let cps = match self.factor {
            FactorLabel::CpInfPower { k } => k,
            _ => self.cp_coordinates.len(),
        };
        v.extend(std::iter::repeat_n(2, cps));
        v.sort_unstable();
        v
    }

    /// `(vertex, degree)` for every generator the label binds to a vertex.
    fn bindings(&self) -> Vec<(&str, u32)> {
        let lie = self.factor.lie_degrees();
        self.lie_generators
            .iter()
            .map(String::as_str)
            .zip(lie)
            .chain(self.cp_coordinates.iter().map(|c| (c.as_str(), 2)))
            .collect()
    }

    /// Checks that generators and bound vertices line up one-to-one and
    /// agree with `degrees`.
    pub fn check_bindings(&self, degrees: &BTreeMap<String, u32>) -> Result<(), DiagramError> {
        let malformed = |detail: String| DiagramError::MalformedLabel {
            block: self.block,
            detail,
        };
        let lie = self.factor.lie_degrees();
        if lie.len() != self.lie_generators.len() {
            return Err(malformed(format!(
                "{} has {} generators but {} bound vertices",
                self.factor,
                lie.len(),
                self.lie_generators.len()
            )));
        }
        match self.factor {
            FactorLabel::CpInfPower { k } if k != self.cp_coordinates.len() || k == 0 => {
                return Err(malformed(format!(
                    "{} with {} coordinates",
                    self.factor,
                    self.cp_coordinates.len()
                )))
            }
            FactorLabel::Point if !self.cp_coordinates.is_empty() => {
                return Err(malformed("point with CP coordinates".into()))
            }
            _ => {}
        }
        for (v, d) in self.bindings() {
            match degrees.get(v) {
                Some(&actual) if actual == d => {}
                Some(&actual) => {
                    return Err(malformed(format!(
                        "vertex {v} of degree {actual} bound to a generator of degree {d}"
                    )))
                }
                None => return Err(malformed(format!("unknown vertex {v}"))),
            }
        }
        Ok(())
    }
}

impl fmt::Display for BlockLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.factor)?;
        if self.has_lie() && !self.cp_coordinates.is_empty() {
            write!(f, " x {}", cp_text(self.cp_coordinates.len()))?;
        }
        Ok(())
    }
}

/// `F(σ) = ∏_i X_{σ ∩ A_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpaceLabel(pub Vec<BlockLabel>);

impl SpaceLabel {
    pub fn blocks(&self) -> &[BlockLabel] {
        &self.0
    }

    pub fn generator_degrees(&self) -> DegreeMultiset {
        DegreeMultiset::from_degrees(self.0.iter().flat_map(|b| b.generator_degrees()))
            .expect("label degrees are even")
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .filter(|b| b.factor != FactorLabel::Point)
            .map(|b| b.to_string())
            .collect();
        if parts.is_empty() {
            write!(f, "pt")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// The Lie part of a block map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all_fields = "camelCase")]
pub enum LieMap {
    /// No Lie factor on either side.
    Trivial,
    /// From a point into a Lie factor.
    FromPoint,
    /// `ι1^a` (SU → SU), or `ι1^a ∘ ι3` (Sp → SU).
    Iota1Power { a: u32, after_iota3: bool },
    /// `ι2^a` (Sp → Sp).
    Iota2Power { a: u32 },
}

impl fmt::Display for LieMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn power(name: &str, a: u32) -> Option<String> {
            match a {
                0 => None,
                1 => Some(name.to_string()),
                _ => Some(format!("{name}^{a}")),
            }
        }
        let parts: Vec<String> = match *self {
            LieMap::Trivial => vec![],
            LieMap::FromPoint => vec!["pt".into()],
            LieMap::Iota1Power { a, after_iota3 } => power("iota1", a)
                .into_iter()
                .chain(after_iota3.then(|| "iota3".to_string()))
                .collect(),
            LieMap::Iota2Power { a } => power("iota2", a).into_iter().collect(),
        };
        if parts.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{}", parts.join(" . "))
        }
    }
}

/// `f_{σ∩A_i, τ∩A_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BlockMap {
    pub block: usize,
    pub lie: LieMap,
    /// Entry `j` is the target coordinate receiving source coordinate `j`.
    pub cp_inclusion: Vec<usize>,
}

/// Where a target generator goes under the induced map on cohomology:
/// to the generator of `source`, or to zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorImage {
    pub target: String,
    pub source: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramNode {
    pub name: String,
    pub simplex: Simplex,
    pub factors: SpaceLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramEdge {
    pub from: Simplex,
    pub to: Simplex,
    pub maps: Vec<BlockMap>,
    pub induced: Vec<GeneratorImage>,
}

impl DiagramEdge {
    pub fn label_text(&self, target: &SpaceLabel) -> String {
        let parts: Vec<String> = self
            .maps
            .iter()
            .zip(target.blocks())
            .filter_map(|(m, t)| {
                let mut bits = Vec::new();
                if m.lie != LieMap::Trivial {
                    bits.push(m.lie.to_string());
                }
                if !t.cp_coordinates.is_empty() {
                    bits.push("incl".to_string());
                }
                (!bits.is_empty()).then(|| bits.join(" x "))
            })
            .collect();
        if parts.is_empty() {
            "id".into()
        } else {
            parts.join(" x ")
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitDiagram {
    pub partition: Partition,
    pub nodes: Vec<DiagramNode>,
    pub edges: Vec<DiagramEdge>,
}

impl ColimitDiagram {
    pub fn node(&self, s: &Simplex) -> Option<&DiagramNode> {
        self.nodes.iter().find(|n| &n.simplex == s)
    }
}

pub fn node_name(s: &Simplex) -> String {
    let ids: Vec<&str> = s.iter().collect();
    format!("sigma_{}", ids.join("_"))
}

/// Labels `F(s) = ∏_i X_{s ∩ A_i}`.
pub fn label_node(
    complex: &ComplexWithDegrees,
    s: &Simplex,
    partition: &Partition,
) -> Result<SpaceLabel, DiagramError> {
    partition.check(complex)?;
    partition
        .classify_pieces(complex, s)
        .into_iter()
        .map(|piece| {
            let mut big: Vec<(u32, &str)> = piece
                .simplex
                .iter()
                .map(|id| (complex.degree(id).unwrap(), id))
                .filter(|&(d, _)| d != 2)
                .collect();
            big.sort_unstable();
            let lie_generators: Vec<String> = big.iter().map(|(_, id)| id.to_string()).collect();
            let cp_coordinates: Vec<String> = piece
                .simplex
                .iter()
                .filter(|id| complex.degree(id) == Some(2))
                .map(str::to_string)
                .collect();
            let factor = match piece.class {
                AdmissibleClass::SpType { n, .. } => FactorLabel::BSp { n },
                AdmissibleClass::SuType { n, .. } => FactorLabel::BSU { n: n + 1 },
                AdmissibleClass::Torus { k2: 0 } => FactorLabel::Point,
                AdmissibleClass::Torus { k2 } => FactorLabel::CpInfPower { k: k2 },
                class => {
                    return Err(DiagramError::InadmissibleSimplex {
                        simplex: s.clone(),
                        block: piece.block,
                        class,
                    })
                }
            };
            Ok(BlockLabel {
                block: piece.block,
                factor,
                lie_generators,
                cp_coordinates,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(SpaceLabel)
}

fn lie_map(block: usize, source: &BlockLabel, target: &BlockLabel) -> Result<LieMap, DiagramError> {
    let none = || DiagramError::NoCanonicalMap {
        from: source.to_string(),
        to: target.to_string(),
        block,
    };
    match (source.has_lie(), target.has_lie()) {
        (false, false) => return Ok(LieMap::Trivial),
        (false, true) => return Ok(LieMap::FromPoint),
        (true, false) => return Err(none()),
        (true, true) => {}
    }
    match (source.factor, target.factor) {
        (FactorLabel::BSp { n: m }, FactorLabel::BSp { n }) if n >= m => {
            Ok(LieMap::Iota2Power { a: n - m })
        }
        (FactorLabel::BSU { n: m }, FactorLabel::BSU { n }) if n >= m => Ok(LieMap::Iota1Power {
            a: n - m,
            after_iota3: false,
        }),
        (FactorLabel::BSp { n: m }, FactorLabel::BSU { n }) if n >= 2 * m => {
            Ok(LieMap::Iota1Power {
                a: n - 2 * m,
                after_iota3: true,
            })
        }
        _ => Err(none()),
    }
}

/// The map between two node labels, computed from the labels alone.
pub fn map_between(
    source: &SpaceLabel,
    target: &SpaceLabel,
) -> Result<Vec<BlockMap>, DiagramError> {
    source
        .blocks()
        .iter()
        .zip(target.blocks())
        .map(|(s, t)| {
            let lie = lie_map(s.block, s, t)?;
            let cp_inclusion = s
                .cp_coordinates
                .iter()
                .map(|c| {
                    t.cp_coordinates.iter().position(|x| x == c).ok_or_else(|| {
                        DiagramError::NoCanonicalMap {
                            from: s.to_string(),
                            to: t.to_string(),
                            block: s.block,
                        }
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(BlockMap {
                block: s.block,
                lie,
                cp_inclusion,
            })
        })
        .collect()
}

/// Map on cohomology generators induced by `maps`, read off the `ι` tables:
/// each target generator goes to the matching source generator or to zero.
pub fn induced_generator_map(
    source: &SpaceLabel,
    target: &SpaceLabel,
    maps: &[BlockMap],
) -> Result<Vec<GeneratorImage>, DiagramError> {
    if source.blocks().len() != target.blocks().len() || maps.len() != target.blocks().len() {
        return Err(DiagramError::MalformedLabel {
            block: 0,
            detail: "block counts differ".into(),
        });
    }
    let mut out = Vec::new();
    for ((s, t), m) in source.blocks().iter().zip(target.blocks()).zip(maps) {
        let bad = |detail: &str| DiagramError::MalformedLabel {
            block: m.block,
            detail: detail.to_string(),
        };
        // Lie generators, indexed by the 1-based position in the target.
        let src_gen = |j: usize| s.lie_generators.get(j - 1).cloned();
        for (idx, tv) in t.lie_generators.iter().enumerate() {
            let j = idx + 1;
            let image = match (m.lie, s.factor, t.factor) {
                (LieMap::FromPoint, _, _) if !s.has_lie() => None,
                (
                    LieMap::Iota2Power { a },
                    FactorLabel::BSp { n: sm },
                    FactorLabel::BSp { n: tn },
                ) if tn == sm + a => {
                    // ι2*(q_j) = q_j for j ≤ m, else 0
                    if j as u32 <= sm {
                        src_gen(j)
                    } else {
                        None
                    }
                }
                (
                    LieMap::Iota1Power {
                        a,
                        after_iota3: false,
                    },
                    FactorLabel::BSU { n: sm },
                    FactorLabel::BSU { n: tn },
                ) if tn == sm + a => {
                    // target generator j is c_{j+1}
                    if (j as u32 + 1) <= sm {
                        src_gen(j)
                    } else {
                        None
                    }
                }
                (
                    LieMap::Iota1Power {
                        a,
                        after_iota3: true,
                    },
                    FactorLabel::BSp { n: sm },
                    FactorLabel::BSU { n: tn },
                ) if tn == 2 * sm + a => {
                    // ι3*(c_{2i}) = q_i, odd Chern classes die
                    let c = j as u32 + 1;
                    if c.is_multiple_of(2) && c / 2 <= sm {
                        src_gen((c / 2) as usize)
                    } else {
                        None
                    }
                }
                _ => return Err(bad("map label does not fit the node labels")),
            };
            out.push(GeneratorImage {
                target: tv.clone(),
                source: image,
            });
        }
        if m.lie == LieMap::Trivial && (s.has_lie() || t.has_lie()) {
            return Err(bad("trivial map between Lie factors"));
        }
        if m.cp_inclusion.len() != s.cp_coordinates.len() {
            return Err(bad("CP inclusion has the wrong length"));
        }
        let mut hit = BTreeSet::new();
        for &k in &m.cp_inclusion {
            if k >= t.cp_coordinates.len() || !hit.insert(k) {
                return Err(bad("CP inclusion is not an injection"));
            }
        }
        for (k, tv) in t.cp_coordinates.iter().enumerate() {
            let source = m
                .cp_inclusion
                .iter()
                .position(|&x| x == k)
                .map(|j| s.cp_coordinates[j].clone());
            out.push(GeneratorImage {
                target: tv.clone(),
                source,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// The projection `ℤ[τ] → ℤ[σ]` on generators.
pub fn sr_projection(s: &Simplex, t: &Simplex) -> Vec<GeneratorImage> {
    t.iter()
        .map(|v| GeneratorImage {
            target: v.to_string(),
            source: s.contains(v).then(|| v.to_string()),
        })
        .collect()
}

/// Edge data for `s ⊂ t`.
pub fn label_edge(
    complex: &ComplexWithDegrees,
    s: &Simplex,
    t: &Simplex,
    partition: &Partition,
) -> Result<DiagramEdge, DiagramError> {
    if !s.is_subset(t) {
        return Err(DiagramError::NotContained(s.clone(), t.clone()));
    }
    let source = label_node(complex, s, partition)?;
    let target = label_node(complex, t, partition)?;
    edge_from_labels(s, t, &source, &target)
}

fn edge_from_labels(
    s: &Simplex,
    t: &Simplex,
    source: &SpaceLabel,
    target: &SpaceLabel,
) -> Result<DiagramEdge, DiagramError> {
    let maps = map_between(source, target)?;
    let induced = induced_generator_map(source, target, &maps)?;
    Ok(DiagramEdge {
        from: s.clone(),
        to: t.clone(),
        maps,
        induced,
    })
}

/// Builds the diagram over `P = P_max(K)` with edges on covering pairs.
pub fn build_diagram(
    complex: &ComplexWithDegrees,
    partition: &Partition,
) -> Result<ColimitDiagram, DiagramError> {
    partition.check(complex)?;
    let poset = complex.pmax();
    let nodes = poset
        .elements()
        .iter()
        .map(|s| {
            Ok(DiagramNode {
                name: node_name(s),
                simplex: s.clone(),
                factors: label_node(complex, s, partition)?,
            })
        })
        .collect::<Result<Vec<_>, DiagramError>>()?;
    let label = |s: &Simplex| &nodes.iter().find(|n| &n.simplex == s).unwrap().factors;
    let edges = poset
        .covers()
        .iter()
        .map(|(s, t)| edge_from_labels(s, t, label(s), label(t)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ColimitDiagram {
        partition: partition.clone(),
        nodes,
        edges,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("composite along {chain:?} differs from the direct map {from} -> {to}")]
pub struct FunctorialityError {
    pub from: Simplex,
    pub to: Simplex,
    pub chain: Vec<String>,
}

type GenMap = BTreeMap<String, Option<String>>;

fn as_map(images: &[GeneratorImage]) -> GenMap {
    images
        .iter()
        .map(|g| (g.target.clone(), g.source.clone()))
        .collect()
}

/// Checks that composing edge maps along every saturated chain `σ ⋖ … ⋖ υ`
/// gives the same generator map as the direct map `σ → υ`.
pub fn check_functoriality(diagram: &ColimitDiagram) -> Result<(), FunctorialityError> {
    let edge_maps: BTreeMap<(&Simplex, &Simplex), GenMap> = diagram
        .edges
        .iter()
        .map(|e| ((&e.from, &e.to), as_map(&e.induced)))
        .collect();

    // all (chain, composite) pairs from `s` up to `u`
    fn chains<'a>(
        s: &'a Simplex,
        u: &'a Simplex,
        edges: &BTreeMap<(&'a Simplex, &'a Simplex), GenMap>,
    ) -> Vec<(Vec<String>, GenMap)> {
        if s == u {
            let id: GenMap = s
                .iter()
                .map(|v| (v.to_string(), Some(v.to_string())))
                .collect();
            return vec![(vec![node_name(s)], id)];
        }
        let mut out = Vec::new();
        for ((from, to), f) in edges {
            if *from != s || !to.is_subset(u) {
                continue;
            }
            for (mut chain, g) in chains(to, u, edges) {
                // (g ∘ f)^* = f^* ∘ g^*
                let composite = g
                    .iter()
                    .map(|(top, mid)| (top.clone(), mid.as_ref().and_then(|m| f[m].clone())))
                    .collect();
                chain.insert(0, node_name(s));
                out.push((chain, composite));
            }
        }
        out
    }

    for a in &diagram.nodes {
        for b in &diagram.nodes {
            if a.simplex == b.simplex || !a.simplex.is_subset(&b.simplex) {
                continue;
            }
            let direct = map_between(&a.factors, &b.factors)
                .and_then(|m| induced_generator_map(&a.factors, &b.factors, &m))
                .map(|g| as_map(&g));
            for (chain, composite) in chains(&a.simplex, &b.simplex, &edge_maps) {
                if direct.as_ref().ok() != Some(&composite) {
                    return Err(FunctorialityError {
                        from: a.simplex.clone(),
                        to: b.simplex.clone(),
                        chain,
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::find_partition;

    fn two_facets() -> ComplexWithDegrees {
        ComplexWithDegrees::from_parts(
            &[("x4", 4), ("x6", 6), ("x8", 8)],
            &[&["x4", "x6"], &["x4", "x8"]],
        )
        .unwrap()
    }

    fn s(ids: &[&str]) -> Simplex {
        Simplex::new(ids.iter().copied())
    }

    #[test]
    fn node_labels_two_facets() {
        let c = two_facets();
        let p = Partition::single(&c);
        assert_eq!(
            label_node(&c, &s(&["x4", "x6"]), &p).unwrap().to_string(),
            "BSU(3)"
        );
        assert_eq!(
            label_node(&c, &s(&["x4", "x8"]), &p).unwrap().to_string(),
            "BSp(2)"
        );
        assert_eq!(
            label_node(&c, &s(&["x4"]), &p).unwrap().to_string(),
            "BSp(1)"
        );
        assert_eq!(
            label_node(&c, &Simplex::empty(), &p).unwrap().to_string(),
            "pt"
        );
        assert_eq!(
            label_node(&c, &Simplex::empty(), &p).unwrap().blocks()[0].factor,
            FactorLabel::Point
        );
    }

    #[test]
    fn inadmissible_piece_is_reported() {
        let c =
            ComplexWithDegrees::from_parts(&[("x4", 4), ("x6", 6)], &[&["x4"], &["x6"]]).unwrap();
        let p = Partition::single(&c);
        assert!(matches!(
            label_node(&c, &s(&["x6"]), &p),
            Err(DiagramError::InadmissibleSimplex { block: 0, .. })
        ));
    }

    #[test]
    fn edge_labels() {
        let c = two_facets();
        let p = Partition::single(&c);
        let e = label_edge(&c, &s(&["x4"]), &s(&["x4", "x6"]), &p).unwrap();
        assert_eq!(
            e.maps[0].lie,
            LieMap::Iota1Power {
                a: 1,
                after_iota3: true
            }
        );
        assert_eq!(e.maps[0].lie.to_string(), "iota1 . iota3");
        assert_eq!(e.induced, sr_projection(&s(&["x4"]), &s(&["x4", "x6"])));
        let e = label_edge(&c, &s(&["x4"]), &s(&["x4", "x8"]), &p).unwrap();
        assert_eq!(e.maps[0].lie, LieMap::Iota2Power { a: 1 });
        assert_eq!(e.maps[0].lie.to_string(), "iota2");

        let c3 = ComplexWithDegrees::from_parts(
            &[("x4", 4), ("y6", 6), ("x8", 8)],
            &[&["x4", "y6", "x8"]],
        )
        .unwrap();
        let p3 = Partition::single(&c3);
        let e = label_edge(&c3, &s(&["x4", "x8"]), &s(&["x4", "x8", "y6"]), &p3).unwrap();
        assert_eq!(
            e.maps[0].lie,
            LieMap::Iota1Power {
                a: 0,
                after_iota3: true
            }
        );
        assert_eq!(e.maps[0].lie.to_string(), "iota3");
        assert_eq!(
            e.induced,
            vec![
                GeneratorImage {
                    target: "x4".into(),
                    source: Some("x4".into())
                },
                GeneratorImage {
                    target: "x8".into(),
                    source: Some("x8".into())
                },
                GeneratorImage {
                    target: "y6".into(),
                    source: None
                },
            ]
        );
    }

    #[test]
    fn no_canonical_map_when_target_too_small() {
        let sp2 = SpaceLabel(vec![BlockLabel {
            block: 0,
            factor: FactorLabel::BSp { n: 2 },
            lie_generators: vec!["a".into(), "b".into()],
            cp_coordinates: vec![],
        }]);
        let su3 = SpaceLabel(vec![BlockLabel {
            block: 0,
            factor: FactorLabel::BSU { n: 3 },
            lie_generators: vec!["a".into(), "c".into()],
            cp_coordinates: vec![],
        }]);
        assert!(matches!(
            map_between(&sp2, &su3),
            Err(DiagramError::NoCanonicalMap { .. })
        ));
        assert!(matches!(
            map_between(&su3, &sp2),
            Err(DiagramError::NoCanonicalMap { .. })
        ));
    }

    #[test]
    fn build_two_facets() {
        let c = two_facets();
        let d = build_diagram(&c, &Partition::single(&c)).unwrap();
        assert_eq!(d.nodes.len(), 3);
        assert_eq!(d.edges.len(), 2);
        assert_eq!(d.nodes[0].name, "sigma_x4");
        check_functoriality(&d).unwrap();
    }

    #[test]
    fn twos_become_cp_coordinates() {
        let c = ComplexWithDegrees::from_parts(
            &[("a", 4), ("t", 2), ("u", 2), ("b", 8)],
            &[&["a", "t", "b"], &["a", "t", "u"]],
        )
        .unwrap();
        let d = build_diagram(&c, &Partition::single(&c)).unwrap();
        let labels: Vec<String> = d.nodes.iter().map(|n| n.factors.to_string()).collect();
        assert_eq!(
            labels,
            vec!["BSp(2) x CP^inf", "BSp(1) x CP^inf", "BSp(1) x CP^inf^2"]
        );
        for e in &d.edges {
            assert_eq!(e.induced, sr_projection(&e.from, &e.to));
        }
        check_functoriality(&d).unwrap();
    }

    #[test]
    fn functoriality_catches_a_bad_edge() {
        let c = ComplexWithDegrees::from_parts(
            &[("a", 4), ("b", 6), ("c", 8), ("d", 2)],
            &[&["a", "b", "c"], &["a", "c", "d"], &["a", "b", "d"]],
        )
        .unwrap();
        let mut d = build_diagram(&c, &Partition::single(&c)).unwrap();
        check_functoriality(&d).unwrap();
        let e = d.edges.iter_mut().find(|e| !e.induced.is_empty()).unwrap();
        let g = e.induced.iter_mut().find(|g| g.source.is_some()).unwrap();
        g.source = None;
        assert!(check_functoriality(&d).is_err());
    }

    #[test]
    fn multi_block_labels() {
        let c = ComplexWithDegrees::from_parts(&[("a", 4), ("b", 4)], &[&["a", "b"]]).unwrap();
        let p = find_partition(&c).unwrap();
        let d = build_diagram(&c, &p).unwrap();
        assert_eq!(d.nodes.len(), 1);
        assert_eq!(d.nodes[0].factors.to_string(), "BSp(1) x BSp(1)");
    }
}
