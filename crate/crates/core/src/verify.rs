//! Graded-dimension verification of the colimit construction.
//!
//! Adding facets one at a time glues `ℤ[σ_j]` onto the ring of the complex
//! built so far along the ring of their intersection. Since both restriction
//! maps are onto, Mayer–Vietoris identifies the glued ring with the kernel of
//! the difference map, so in every degree
//!
//! ```text
//! dim SR(K_j) = dim SR(K_{j−1}) + dim ℤ[σ_j] − dim SR(K_{j−1} ∩ σ_j)
//! ```
//!
//! The empty complex is treated as a point (`ℤ` in degree 0).

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexWithDegrees, Simplex};
use crate::diagram::{induced_generator_map, node_name, sr_projection, ColimitDiagram};
use crate::ring::{facet_hilbert, free_hilbert, HilbertFunction};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("vertex `{vertex}` has degree {first} in one complex and {second} in the other")]
    DegreeMismatch {
        vertex: String,
        first: u32,
        second: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeCheck {
    pub degree: u32,
    /// `dim SR(K_j)`
    #[serde(with = "crate::ring::count")]
    pub union: BigUint,
    /// `dim SR(K_{j−1})`
    #[serde(with = "crate::ring::count")]
    pub previous: BigUint,
    /// `dim ℤ[σ_j]`
    #[serde(with = "crate::ring::count")]
    pub facet: BigUint,
    /// `dim SR(K_{j−1} ∩ σ_j)`
    #[serde(with = "crate::ring::count")]
    pub intersection: BigUint,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    pub facet: Simplex,
    pub degrees: Vec<DegreeCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelCheck {
    pub item: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all_fields = "camelCase")]
pub enum Discrepancy {
    Structure {
        detail: String,
    },
    NodeLabel {
        node: String,
        degree: Option<u32>,
        detail: String,
    },
    EdgeMap {
        from: String,
        to: String,
        detail: String,
    },
    Recurrence {
        step: usize,
        degree: u32,
    },
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::Structure { detail } => write!(f, "structure: {detail}"),
            Discrepancy::NodeLabel {
                node,
                degree,
                detail,
            } => match degree {
                Some(d) => write!(f, "node {node} at degree {d}: {detail}"),
                None => write!(f, "node {node}: {detail}"),
            },
            Discrepancy::EdgeMap { from, to, detail } => write!(f, "edge {from} -> {to}: {detail}"),
            Discrepancy::Recurrence { step, degree } => {
                write!(
                    f,
                    "pushout recurrence fails at step {step}, degree {degree}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub max_degree: u32,
    pub structure: Vec<String>,
    pub nodes: Vec<LabelCheck>,
    pub edges: Vec<LabelCheck>,
    pub steps: Vec<StepRecord>,
    pub discrepancies: Vec<Discrepancy>,
    pub passed: bool,
}

impl VerificationReport {
    fn new(max_degree: u32) -> Self {
        VerificationReport {
            max_degree,
            structure: Vec::new(),
            nodes: Vec::new(),
            edges: Vec::new(),
            steps: Vec::new(),
            discrepancies: Vec::new(),
            passed: true,
        }
    }

    pub fn first_discrepancy(&self) -> Option<&Discrepancy> {
        self.discrepancies.first()
    }

    fn record(&mut self, d: Discrepancy) {
        self.passed = false;
        self.discrepancies.push(d);
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Plain-text rendering: label checks, then a degree × step table of
    /// `union = previous + facet - intersection`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        writeln!(out, "verification at D={}: {verdict}", self.max_degree).unwrap();
        for s in &self.structure {
            writeln!(out, "structure: {s}").unwrap();
        }
        for (title, checks) in [("nodes", &self.nodes), ("edges", &self.edges)] {
            if checks.is_empty() {
                continue;
            }
            writeln!(out, "{title}:").unwrap();
            for c in checks {
                match &c.detail {
                    Some(d) => writeln!(out, "  {}: FAIL ({d})", c.item).unwrap(),
                    None => writeln!(out, "  {}: ok", c.item).unwrap(),
                }
            }
        }
        if !self.steps.is_empty() {
            writeln!(
                out,
                "pushout recurrence (union = previous + facet - intersection):"
            )
            .unwrap();
            let mut header = format!("{:>6}", "degree");
            for s in &self.steps {
                write!(header, " | {:>14}", format!("{} {}", s.step, s.facet)).unwrap();
            }
            writeln!(out, "{header}").unwrap();
            let rows = self.steps[0].degrees.len();
            for r in 0..rows {
                let mut line = format!("{:>6}", self.steps[0].degrees[r].degree);
                for s in &self.steps {
                    let c = &s.degrees[r];
                    let mark = if c.ok { "" } else { " !" };
                    write!(
                        line,
                        " | {:>14}",
                        format!(
                            "{}={}+{}-{}{mark}",
                            c.union, c.previous, c.facet, c.intersection
                        )
                    )
                    .unwrap();
                }
                writeln!(out, "{line}").unwrap();
            }
        }
        if let Some(d) = self.first_discrepancy() {
            writeln!(out, "first discrepancy: {d}").unwrap();
        }
        out
    }
}

fn recurrence_steps(complex: &ComplexWithDegrees, max_degree: u32) -> Vec<StepRecord> {
    let degrees = complex.degree_map();
    let facets = complex.facets();
    (0..facets.len())
        .map(|j| {
            let facet = &facets[j];
            let union = facet_hilbert(&facets[..=j], degrees, max_degree);
            let previous = facet_hilbert(&facets[..j], degrees, max_degree);
            let free = free_hilbert(&complex.multiset_of(facet), max_degree);
            let meets: Vec<Simplex> = facets[..j].iter().map(|f| f.intersection(facet)).collect();
            let intersection = facet_hilbert(&meets, degrees, max_degree);
            let checks = (0..=max_degree)
                .step_by(2)
                .map(|d| {
                    let (prev, fac) = (previous.dim(d), free.dim(d));
                    let inter = intersection.dim(d);
                    let u = union.dim(d);
                    DegreeCheck {
                        degree: d,
                        ok: &u + &inter == &prev + &fac,
                        union: u,
                        previous: prev,
                        facet: fac,
                        intersection: inter,
                    }
                })
                .collect();
            StepRecord {
                step: j + 1,
                facet: facet.clone(),
                degrees: checks,
            }
        })
        .collect()
}

/// Checks the facet-by-facet gluing identity in every even degree up to
/// `max_degree`, adding facets in the complex's own order.
pub fn pushout_recurrence_check(
    complex: &ComplexWithDegrees,
    max_degree: u32,
) -> VerificationReport {
    let mut report = VerificationReport::new(max_degree);
    add_recurrence(&mut report, complex);
    report
}

fn add_recurrence(report: &mut VerificationReport, complex: &ComplexWithDegrees) {
    report.steps = recurrence_steps(complex, report.max_degree);
    let bad: Vec<Discrepancy> = report
        .steps
        .iter()
        .flat_map(|s| {
            s.degrees
                .iter()
                .filter(|c| !c.ok)
                .map(move |c| Discrepancy::Recurrence {
                    step: s.step,
                    degree: c.degree,
                })
        })
        .collect();
    for d in bad {
        report.record(d);
    }
}

/// `dim` in degree `d` of the kernel of `SR(K1) ⊕ SR(K2) → SR(K1 ∩ K2)`,
/// which by surjectivity of both projections is
/// `dim SR(K1) + dim SR(K2) − dim SR(K1 ∩ K2)`.
pub fn kernel_dim(
    first: &ComplexWithDegrees,
    second: &ComplexWithDegrees,
    d: u32,
) -> Result<BigUint, VerifyError> {
    let mut degrees: BTreeMap<String, u32> = first.degree_map().clone();
    for (v, &deg) in second.degree_map() {
        match degrees.get(v) {
            Some(&other) if other != deg => {
                return Err(VerifyError::DegreeMismatch {
                    vertex: v.clone(),
                    first: other,
                    second: deg,
                })
            }
            _ => {
                degrees.insert(v.clone(), deg);
            }
        }
    }
    if d % 2 == 1 {
        return Ok(BigUint::default());
    }
    let meets: Vec<Simplex> = first
        .facets()
        .iter()
        .flat_map(|a| second.facets().iter().map(move |b| a.intersection(b)))
        .collect();
    let h1 = facet_hilbert(first.facets(), &degrees, d);
    let h2 = facet_hilbert(second.facets(), &degrees, d);
    let h12 = facet_hilbert(&meets, &degrees, d);
    Ok(h1.dim(d) + h2.dim(d) - h12.dim(d))
}

/// Counts monomials by walking exponent vectors of total degree at most
/// `max_degree` and keeping those whose support is a face. A vertex only
/// gets a positive exponent if the support stays a face; faces are closed
/// downward, so this drops nothing that would survive.
pub fn brute_oracle_hilbert(complex: &ComplexWithDegrees, max_degree: u32) -> HilbertFunction {
    fn walk(
        vs: &[(&str, u32)],
        used: u32,
        support: &mut Vec<String>,
        complex: &ComplexWithDegrees,
        max_degree: u32,
        tally: &mut [u64],
    ) {
        let Some((&(id, deg), rest)) = vs.split_first() else {
            if complex.contains_face(&Simplex::new(support.iter().cloned())) {
                tally[(used / 2) as usize] += 1;
            }
            return;
        };
        walk(rest, used, support, complex, max_degree, tally);
        support.push(id.to_string());
        if !complex.contains_face(&Simplex::new(support.iter().cloned())) {
            support.pop();
            return;
        }
        let mut total = used + deg;
        while total <= max_degree {
            walk(rest, total, support, complex, max_degree, tally);
            total += deg;
        }
        support.pop();
    }
    assert!(
        max_degree.is_multiple_of(2),
        "truncation degree must be even"
    );
    let vs: Vec<(&str, u32)> = complex.vertices().collect();
    let mut tally = vec![0u64; (max_degree / 2 + 1) as usize];
    walk(&vs, 0, &mut Vec::new(), complex, max_degree, &mut tally);
    HilbertFunction::from_dims(max_degree, tally.into_iter().map(BigUint::from).collect())
        .expect("one slot per even degree")
}

/// Checks a diagram against its complex: its shape is `P_max(K)` with cover
/// edges; (a) each node label has the free cohomology of `ℤ[σ]`; (b) each
/// edge induces the projection `ℤ[τ] → ℤ[σ]` on generators; (c) the gluing
/// recurrence holds.
pub fn verify_construction(
    complex: &ComplexWithDegrees,
    diagram: &ColimitDiagram,
    max_degree: u32,
) -> VerificationReport {
    let mut report = VerificationReport::new(max_degree);
    check_structure(&mut report, complex, diagram);

    for node in &diagram.nodes {
        let item = format!("{} {}", node.name, node.factors);
        let problem = node_problem(complex, diagram, node, max_degree);
        report.nodes.push(LabelCheck {
            item,
            ok: problem.is_none(),
            detail: problem.as_ref().map(|(_, d)| d.clone()),
        });
        if let Some((degree, detail)) = problem {
            report.record(Discrepancy::NodeLabel {
                node: node.name.clone(),
                degree,
                detail,
            });
        }
    }

    for edge in &diagram.edges {
        let from = node_name(&edge.from);
        let to = node_name(&edge.to);
        let problem = edge_problem(diagram, edge);
        report.edges.push(LabelCheck {
            item: format!("{from} -> {to}"),
            ok: problem.is_none(),
            detail: problem.clone(),
        });
        if let Some(detail) = problem {
            report.record(Discrepancy::EdgeMap { from, to, detail });
        }
    }

    add_recurrence(&mut report, complex);
    report
}

fn check_structure(
    report: &mut VerificationReport,
    complex: &ComplexWithDegrees,
    diagram: &ColimitDiagram,
) {
    let mut problems = Vec::new();
    if let Err(e) = diagram.partition.check(complex) {
        problems.push(format!("partition: {e}"));
    }
    let poset = complex.pmax();
    let mut nodes: Vec<&Simplex> = diagram.nodes.iter().map(|n| &n.simplex).collect();
    nodes.sort();
    let expected: Vec<&Simplex> = poset.elements().iter().collect();
    if nodes != expected {
        problems.push("node set is not P_max(K)".to_string());
    }
    for n in &diagram.nodes {
        if n.name != node_name(&n.simplex) {
            problems.push(format!(
                "node {} should be named {}",
                n.name,
                node_name(&n.simplex)
            ));
        }
        if n.factors.blocks().len() != diagram.partition.len() {
            problems.push(format!("node {} has the wrong number of blocks", n.name));
        }
    }
    let mut edges: Vec<(&Simplex, &Simplex)> =
        diagram.edges.iter().map(|e| (&e.from, &e.to)).collect();
    edges.sort();
    let covers = poset.covers();
    let mut expected: Vec<(&Simplex, &Simplex)> = covers.iter().map(|(a, b)| (a, b)).collect();
    expected.sort();
    if edges != expected {
        problems.push("edge set is not the covering relation of P_max(K)".to_string());
    }
    for p in problems {
        report.structure.push(p.clone());
        report.record(Discrepancy::Structure { detail: p });
    }
}

fn node_problem(
    complex: &ComplexWithDegrees,
    diagram: &ColimitDiagram,
    node: &crate::diagram::DiagramNode,
    max_degree: u32,
) -> Option<(Option<u32>, String)> {
    if !complex.contains_face(&node.simplex) {
        return Some((None, format!("{} is not a face", node.simplex)));
    }
    let expected = free_hilbert(&complex.multiset_of(&node.simplex), max_degree);
    let actual = free_hilbert(&node.factors.generator_degrees(), max_degree);
    if let Some(d) = actual.first_difference(&expected) {
        return Some((
            Some(d),
            format!(
                "label has dimension {} but Z[sigma] has {}",
                actual.dim(d),
                expected.dim(d)
            ),
        ));
    }
    for (b, label) in node.factors.blocks().iter().enumerate() {
        if let Err(e) = label.check_bindings(complex.degree_map()) {
            return Some((None, e.to_string()));
        }
        let mut bound: Vec<&str> = label
            .lie_generators
            .iter()
            .chain(&label.cp_coordinates)
            .map(String::as_str)
            .collect();
        bound.sort_unstable();
        let piece = match diagram.partition.blocks().get(b) {
            Some(block) => node.simplex.restrict(block),
            None => return Some((None, format!("no partition block {b}"))),
        };
        let piece: Vec<&str> = piece.iter().collect();
        if bound != piece {
            return Some((
                None,
                format!("block {b} binds {bound:?}, expected {piece:?}"),
            ));
        }
    }
    None
}

fn edge_problem(diagram: &ColimitDiagram, edge: &crate::diagram::DiagramEdge) -> Option<String> {
    let (Some(source), Some(target)) = (diagram.node(&edge.from), diagram.node(&edge.to)) else {
        return Some("endpoint is not a node".into());
    };
    let expected = sr_projection(&edge.from, &edge.to);
    match induced_generator_map(&source.factors, &target.factors, &edge.maps) {
        Err(e) => Some(e.to_string()),
        Ok(induced) if induced != expected => {
            Some("induced generator map is not the projection".into())
        }
        Ok(_) if edge.induced != expected => {
            Some("recorded generator map is not the projection".into())
        }
        Ok(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{build_diagram, FactorLabel};
    use crate::realize::Partition;
    use crate::ring::sr_hilbert;

    fn two_facets() -> ComplexWithDegrees {
        ComplexWithDegrees::from_parts(
            &[("x4", 4), ("x6", 6), ("x8", 8)],
            &[&["x4", "x6"], &["x4", "x8"]],
        )
        .unwrap()
    }

    fn n(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn recurrence_two_facets_degree_twelve() {
        let r = pushout_recurrence_check(&two_facets(), 40);
        assert!(r.passed);
        let c = &r.steps[1].degrees[6];
        assert_eq!(c.degree, 12);
        let got = [&c.union, &c.previous, &c.facet, &c.intersection];
        assert_eq!(got, [&n(3), &n(2), &n(2), &n(1)]);
    }

    #[test]
    fn single_facet_is_trivial() {
        let c = ComplexWithDegrees::from_parts(&[("a", 4), ("b", 6)], &[&["a", "b"]]).unwrap();
        let r = pushout_recurrence_check(&c, 24);
        assert!(r.passed);
        assert_eq!(r.steps.len(), 1);
        let free = free_hilbert(&c.multiset_of(&c.facets()[0]), 24);
        for chk in &r.steps[0].degrees {
            assert_eq!(chk.union, free.dim(chk.degree));
        }
    }

    #[test]
    fn disjoint_facets_glue_at_a_point() {
        let c = ComplexWithDegrees::from_parts(&[("a", 4), ("b", 4)], &[&["a"], &["b"]]).unwrap();
        let r = pushout_recurrence_check(&c, 8);
        assert!(r.passed);
        let at4 = &r.steps[1].degrees[2];
        let got = [&at4.union, &at4.previous, &at4.facet, &at4.intersection];
        assert_eq!(got, [&n(2), &n(1), &n(1), &n(0)]);
        let at0 = &r.steps[1].degrees[0];
        assert_eq!(at0.intersection, n(1));
    }

    #[test]
    fn kernel_dim_examples() {
        let k1 = ComplexWithDegrees::from_parts(&[("x4", 4), ("x6", 6)], &[&["x4", "x6"]]).unwrap();
        let k2 = ComplexWithDegrees::from_parts(&[("x4", 4), ("x8", 8)], &[&["x4", "x8"]]).unwrap();
        assert_eq!(kernel_dim(&k1, &k2, 12).unwrap(), n(3));
        assert_eq!(kernel_dim(&k2, &k1, 12).unwrap(), n(3));
        let full = two_facets();
        for d in (0..=30).step_by(2) {
            assert_eq!(
                kernel_dim(&k1, &k2, d).unwrap(),
                sr_hilbert(&full, 30).dim(d)
            );
            assert_eq!(kernel_dim(&k1, &k1, d).unwrap(), sr_hilbert(&k1, 30).dim(d));
        }
        let a = ComplexWithDegrees::from_parts(&[("a", 4)], &[&["a"]]).unwrap();
        let b = ComplexWithDegrees::from_parts(&[("b", 6)], &[&["b"]]).unwrap();
        assert_eq!(kernel_dim(&a, &b, 0).unwrap(), n(1));
        let clash = ComplexWithDegrees::from_parts(&[("x4", 8)], &[&["x4"]]).unwrap();
        assert!(kernel_dim(&k1, &clash, 4).is_err());
    }

    #[test]
    fn oracle_examples() {
        let c = two_facets();
        assert_eq!(brute_oracle_hilbert(&c, 40), sr_hilbert(&c, 40));
        let z2 = ComplexWithDegrees::from_parts(&[("x2", 2)], &[&["x2"]]).unwrap();
        let h = brute_oracle_hilbert(&z2, 10);
        assert!(h.iter().all(|(_, v)| *v == n(1)));
        let split =
            ComplexWithDegrees::from_parts(&[("x4", 4), ("x6", 6)], &[&["x4"], &["x6"]]).unwrap();
        // x4^6 and x6^4; x4^3·x6^2 has non-face support
        assert_eq!(brute_oracle_hilbert(&split, 24).dim(24), n(2));
    }

    #[test]
    fn construction_passes_and_mutation_fails() {
        let c = two_facets();
        let d = build_diagram(&c, &Partition::single(&c)).unwrap();
        let r = verify_construction(&c, &d, 40);
        assert!(r.passed, "{}", r.to_text());

        let mut bad = d.clone();
        let node = bad
            .nodes
            .iter_mut()
            .find(|n| n.factors.blocks()[0].factor == FactorLabel::BSp { n: 2 })
            .unwrap();
        node.factors.0[0].factor = FactorLabel::BSp { n: 3 };
        let r = verify_construction(&c, &bad, 40);
        assert!(!r.passed);
        assert!(matches!(
            r.first_discrepancy(),
            Some(Discrepancy::NodeLabel {
                degree: Some(12),
                ..
            })
        ));
    }

    #[test]
    fn torus_only_passes() {
        let c = ComplexWithDegrees::from_parts(
            &[("t", 2), ("u", 2), ("v", 2)],
            &[&["t", "u"], &["u", "v"]],
        )
        .unwrap();
        let d = build_diagram(&c, &Partition::single(&c)).unwrap();
        let r = verify_construction(&c, &d, 20);
        assert!(r.passed, "{}", r.to_text());
    }

    #[test]
    fn foreign_diagram_is_refused() {
        let c = two_facets();
        let mut d = build_diagram(&c, &Partition::single(&c)).unwrap();
        d.edges.pop();
        let r = verify_construction(&c, &d, 12);
        assert!(!r.passed);
        assert!(matches!(
            r.first_discrepancy(),
            Some(Discrepancy::Structure { .. })
        ));
    }

    #[test]
    fn text_report_has_table() {
        let t = pushout_recurrence_check(&two_facets(), 12).to_text();
        assert!(t.contains("PASS"));
        assert!(t.contains("3=2+2-1"));
    }
}
