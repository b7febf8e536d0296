//! Decision procedures: the main realizability criterion, the necessary
//! condition over `P_max(K)`, and the vertex-partition search for the
//! colimit construction.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexWithDegrees, Simplex};
use crate::ring::DegreeMultiset;
use crate::steenrod::{classify, AdmissibleClass};

/// Disjoint nonempty vertex blocks covering `V`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    blocks: Vec<BTreeSet<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("vertex `{0}` appears in two blocks")]
    Overlap(String),
    #[error("vertex `{0}` is in no block")]
    Uncovered(String),
    #[error("vertex `{0}` is not in the complex")]
    Unknown(String),
}

impl Partition {
    pub fn new(blocks: Vec<BTreeSet<String>>) -> Self {
        Partition { blocks }
    }

    pub fn single(complex: &ComplexWithDegrees) -> Self {
        Partition {
            blocks: vec![complex.sorted_ids().map(str::to_string).collect()],
        }
    }

    pub fn blocks(&self) -> &[BTreeSet<String>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn check(&self, complex: &ComplexWithDegrees) -> Result<(), PartitionError> {
        let mut seen = BTreeSet::new();
        for (i, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(PartitionError::EmptyBlock(i));
            }
            for v in b {
                if complex.degree(v).is_none() {
                    return Err(PartitionError::Unknown(v.clone()));
                }
                if !seen.insert(v.as_str()) {
                    return Err(PartitionError::Overlap(v.clone()));
                }
            }
        }
        match complex.sorted_ids().find(|v| !seen.contains(v)) {
            Some(v) => Err(PartitionError::Uncovered(v.to_string())),
            None => Ok(()),
        }
    }

    /// `σ ∩ A_i` for every block, with the class of its degree multiset.
    pub fn classify_pieces(&self, complex: &ComplexWithDegrees, s: &Simplex) -> Vec<SigmaClass> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let piece = s.restrict(b);
                let multiset = complex.multiset_of(&piece);
                SigmaClass {
                    simplex: piece,
                    block: i,
                    class: classify(&multiset),
                    multiset,
                }
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "{}", Simplex::new(b.iter().cloned()))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaClass {
    pub simplex: Simplex,
    pub block: usize,
    pub multiset: DegreeMultiset,
    pub class: AdmissibleClass,
}

/// Two distinct vertices of equal power-of-two degree spanning a face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("`{first}` and `{second}` both have degree {degree} and span a face")]
#[serde(rename_all = "camelCase")]
pub struct HypothesisViolation {
    pub first: String,
    pub second: String,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all_fields = "camelCase")]
pub enum Verdict {
    Realizable {
        partition: Partition,
        per_sigma: Vec<SigmaClass>,
    },
    /// `class` is either inadmissible or outside the allowed families.
    NotRealizable {
        witness: Simplex,
        multiset: DegreeMultiset,
        class: AdmissibleClass,
    },
    HypothesisViolated {
        pair: (String, String),
        shared_power_degree: u32,
    },
    SufficientOnly {
        partition: Partition,
    },
    Unknown,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Realizable { .. } => "Realizable",
            Verdict::NotRealizable { .. } => "NotRealizable",
            Verdict::HypothesisViolated { .. } => "HypothesisViolated",
            Verdict::SufficientOnly { .. } => "SufficientOnly",
            Verdict::Unknown => "Unknown",
        }
    }

    /// The partition a colimit diagram can be built from, if any.
    pub fn partition(&self) -> Option<&Partition> {
        match self {
            Verdict::Realizable { partition, .. } | Verdict::SufficientOnly { partition } => {
                Some(partition)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Realizable {
                partition,
                per_sigma,
            } => {
                writeln!(f, "Realizable")?;
                writeln!(f, "  partition: {partition}")?;
                for sc in per_sigma {
                    writeln!(
                        f,
                        "  {} block {} degrees {}: {}",
                        sc.simplex, sc.block, sc.multiset, sc.class
                    )?;
                }
                Ok(())
            }
            Verdict::NotRealizable {
                witness,
                multiset,
                class,
            } => {
                writeln!(f, "NotRealizable")?;
                writeln!(f, "  witness: {witness}")?;
                writeln!(f, "  degrees: {multiset}")?;
                writeln!(f, "  class: {class}")
            }
            Verdict::HypothesisViolated {
                pair,
                shared_power_degree,
            } => {
                writeln!(f, "HypothesisViolated")?;
                writeln!(
                    f,
                    "  {} and {} share degree {shared_power_degree} on a common face",
                    pair.0, pair.1
                )
            }
            Verdict::SufficientOnly { partition } => {
                writeln!(f, "SufficientOnly")?;
                writeln!(f, "  partition: {partition}")
            }
            Verdict::Unknown => writeln!(f, "Unknown"),
        }
    }
}

fn find_shared_power_pair(
    complex: &ComplexWithDegrees,
    degree_ok: impl Fn(u32) -> bool,
) -> Option<HypothesisViolation> {
    let ids: Vec<(&str, u32)> = complex
        .sorted_ids()
        .map(|id| (id, complex.degree(id).unwrap()))
        .filter(|&(_, d)| degree_ok(d))
        .collect();
    for (i, &(x, dx)) in ids.iter().enumerate() {
        for &(y, dy) in &ids[i + 1..] {
            if dx == dy && complex.contains_face(&Simplex::new([x, y])) {
                return Some(HypothesisViolation {
                    first: x.to_string(),
                    second: y.to_string(),
                    degree: dx,
                });
            }
        }
    }
    None
}

/// No two vertices with `φ(x) = φ(y) = 2^i`, `i ≥ 2`, may span a face.
pub fn check_main_hypothesis(complex: &ComplexWithDegrees) -> Result<(), HypothesisViolation> {
    match find_shared_power_pair(complex, |d| d >= 4 && d.is_power_of_two()) {
        Some(v) => Err(v),
        None => Ok(()),
    }
}

/// The main criterion: under the hypothesis, realizable iff every element of
/// `P_max(K)` is Torus, SU-type or Sp-type.
pub fn decide_main(complex: &ComplexWithDegrees) -> Verdict {
    if let Err(v) = check_main_hypothesis(complex) {
        return Verdict::HypothesisViolated {
            pair: (v.first, v.second),
            shared_power_degree: v.degree,
        };
    }
    let partition = Partition::single(complex);
    let mut per_sigma = Vec::new();
    for s in complex.pmax().elements() {
        let multiset = complex.multiset_of(s);
        let class = classify(&multiset);
        if !class.is_constructible() {
            return Verdict::NotRealizable {
                witness: s.clone(),
                multiset,
                class,
            };
        }
        per_sigma.push(SigmaClass {
            simplex: s.clone(),
            block: 0,
            multiset,
            class,
        });
    }
    Verdict::Realizable {
        partition,
        per_sigma,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NecessaryOutcome {
    Holds,
    Fails {
        witness: Simplex,
        multiset: DegreeMultiset,
        class: AdmissibleClass,
    },
}

/// Necessary condition for realizability when no two degree-4 vertices span
/// a face: every element of `P_max(K)` lies in one of the four families,
/// Exceptional included.
pub fn necessary_condition(
    complex: &ComplexWithDegrees,
) -> Result<NecessaryOutcome, HypothesisViolation> {
    if let Some(v) = find_shared_power_pair(complex, |d| d == 4) {
        return Err(v);
    }
    for s in complex.pmax().elements() {
        let multiset = complex.multiset_of(s);
        let class = classify(&multiset);
        if !class.is_admissible() {
            return Ok(NecessaryOutcome::Fails {
                witness: s.clone(),
                multiset,
                class,
            });
        }
    }
    Ok(NecessaryOutcome::Holds)
}

/// Degree multiset of the vertices of `sigma` (indices into `big`) that are
/// assigned to `block` so far.
fn piece_degrees(sigma: &[usize], big: &[u32], assign: &[usize], block: usize) -> Vec<u32> {
    sigma
        .iter()
        .filter(|&&v| v < assign.len() && assign[v] == block)
        .map(|&v| big[v])
        .collect()
}

struct Search<'a> {
    big: &'a [u32],
    /// P_max elements as sorted lists of big-vertex indices.
    sigmas: Vec<Vec<usize>>,
    /// For each big vertex, the sigmas whose last big vertex it is, and the
    /// sigmas that merely contain it.
    closing: Vec<Vec<usize>>,
    touching: Vec<Vec<usize>>,
    assign: Vec<usize>,
}

impl Search<'_> {
    fn piece_ok(&self, sigma: usize, block: usize, complete: bool) -> bool {
        let mut degs = piece_degrees(&self.sigmas[sigma], self.big, &self.assign, block);
        degs.sort_unstable();
        if complete {
            classify(&DegreeMultiset::from_degrees(degs).expect("even degrees")).is_constructible()
        } else {
            // any set of distinct even degrees ≥ 4 extends to an SU pattern
            degs.windows(2).all(|w| w[0] != w[1])
        }
    }

    fn run(&mut self, blocks_used: usize) -> bool {
        let v = self.assign.len();
        if v == self.big.len() {
            return true;
        }
        for b in 0..=blocks_used.min(self.big.len() - 1) {
            self.assign.push(b);
            let ok = self.closing[v]
                .iter()
                .all(|&s| (0..=blocks_used).all(|blk| self.piece_ok(s, blk, true)))
                && self.touching[v].iter().all(|&s| self.piece_ok(s, b, false));
            if ok && self.run(blocks_used.max(b + 1)) {
                return true;
            }
            self.assign.pop();
        }
        false
    }
}

/// Searches for a vertex partition making every `σ ∩ A_i` (σ in `P_max(K)`)
/// Torus, SU-type or Sp-type.
///
/// Degree-2 vertices never affect the family, so they join block 0. The
/// remaining vertices are assigned in lexicographic order with block indices
/// in first-use order; each element of `P_max` is classified in full as soon
/// as its last vertex is placed, and partial pieces must have distinct
/// degrees.
pub fn find_partition(complex: &ComplexWithDegrees) -> Option<Partition> {
    let big_ids: Vec<&str> = complex
        .sorted_ids()
        .filter(|id| complex.degree(id) != Some(2))
        .collect();
    let twos: BTreeSet<String> = complex
        .sorted_ids()
        .filter(|id| complex.degree(id) == Some(2))
        .map(str::to_string)
        .collect();
    if big_ids.is_empty() {
        return Some(Partition::new(vec![twos]));
    }
    let big: Vec<u32> = big_ids
        .iter()
        .map(|id| complex.degree(id).unwrap())
        .collect();
    let sigmas: Vec<Vec<usize>> = complex
        .pmax()
        .elements()
        .iter()
        .map(|s| {
            big_ids
                .iter()
                .enumerate()
                .filter(|(_, id)| s.contains(id))
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let mut closing = vec![Vec::new(); big.len()];
    let mut touching = vec![Vec::new(); big.len()];
    for (si, s) in sigmas.iter().enumerate() {
        if let Some(&last) = s.last() {
            closing[last].push(si);
        }
        for &v in s {
            touching[v].push(si);
        }
    }
    let mut search = Search {
        big: &big,
        sigmas,
        closing,
        touching,
        assign: Vec::new(),
    };
    if !search.run(0) {
        return None;
    }
    let nblocks = search.assign.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![BTreeSet::new(); nblocks];
    for (v, &b) in search.assign.iter().enumerate() {
        blocks[b].insert(big_ids[v].to_string());
    }
    blocks[0].extend(twos);
    Some(Partition::new(blocks))
}

/// Combines the main criterion, the partition search and the necessary
/// condition into a single verdict.
pub fn full_report(complex: &ComplexWithDegrees) -> Verdict {
    let main = decide_main(complex);
    if matches!(main, Verdict::Realizable { .. }) {
        return main;
    }
    if let Some(partition) = find_partition(complex) {
        return Verdict::SufficientOnly { partition };
    }
    match necessary_condition(complex) {
        Ok(NecessaryOutcome::Fails {
            witness,
            multiset,
            class,
        }) => Verdict::NotRealizable {
            witness,
            multiset,
            class,
        },
        Ok(NecessaryOutcome::Holds) if !matches!(main, Verdict::NotRealizable { .. }) => {
            Verdict::Unknown
        }
        _ => main,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::ObstructionReason;

    fn two_facets() -> ComplexWithDegrees {
        ComplexWithDegrees::from_parts(
            &[("x4", 4), ("x6", 6), ("x8", 8)],
            &[&["x4", "x6"], &["x4", "x8"]],
        )
        .unwrap()
    }

    fn square() -> ComplexWithDegrees {
        ComplexWithDegrees::from_parts(
            &[("x4", 4), ("y1", 6), ("y2", 6), ("z1", 8), ("z2", 8)],
            &[
                &["x4", "y1", "z1"],
                &["x4", "y1", "z2"],
                &["x4", "y2", "z1"],
                &["x4", "y2", "z2"],
            ],
        )
        .unwrap()
    }

    fn x4x6_disjoint() -> ComplexWithDegrees {
        ComplexWithDegrees::from_parts(&[("x4", 4), ("x6", 6)], &[&["x4"], &["x6"]]).unwrap()
    }

    fn ab44() -> ComplexWithDegrees {
        ComplexWithDegrees::from_parts(&[("a", 4), ("b", 4)], &[&["a", "b"]]).unwrap()
    }

    fn blocks(p: &Partition) -> Vec<Vec<&str>> {
        p.blocks()
            .iter()
            .map(|b| b.iter().map(String::as_str).collect())
            .collect()
    }

    #[test]
    fn hypothesis_examples() {
        assert_eq!(check_main_hypothesis(&two_facets()), Ok(()));
        assert_eq!(
            check_main_hypothesis(&ab44()),
            Err(HypothesisViolation {
                first: "a".into(),
                second: "b".into(),
                degree: 4
            })
        );
        assert_eq!(check_main_hypothesis(&square()), Ok(()));
    }

    #[test]
    fn decide_main_examples() {
        assert!(matches!(decide_main(&two_facets()), Verdict::Realizable { .. }));
        match decide_main(&x4x6_disjoint()) {
            Verdict::NotRealizable { witness, class, .. } => {
                assert_eq!(witness, Simplex::new(["x6"]));
                assert_eq!(class.reason(), Some(ObstructionReason::TableMiss));
            }
            v => panic!("{v:?}"),
        }
        let torus = ComplexWithDegrees::from_parts(&[("t", 2), ("u", 2)], &[&["t", "u"]]).unwrap();
        match decide_main(&torus) {
            Verdict::Realizable { per_sigma, .. } => {
                assert_eq!(per_sigma[0].class, AdmissibleClass::Torus { k2: 2 })
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn necessary_examples() {
        assert_eq!(necessary_condition(&two_facets()), Ok(NecessaryOutcome::Holds));
        assert!(matches!(
            necessary_condition(&x4x6_disjoint()),
            Ok(NecessaryOutcome::Fails { witness, .. }) if witness == Simplex::new(["x6"])
        ));
        let exc = ComplexWithDegrees::from_parts(
            &[("a", 4), ("b", 8), ("c", 8), ("d", 12)],
            &[&["a", "b", "c", "d"]],
        )
        .unwrap();
        assert_eq!(necessary_condition(&exc), Ok(NecessaryOutcome::Holds));
        assert!(necessary_condition(&ab44()).is_err());
    }

    #[test]
    fn partition_examples() {
        assert_eq!(
            blocks(&find_partition(&ab44()).unwrap()),
            vec![vec!["a"], vec!["b"]]
        );
        assert_eq!(find_partition(&two_facets()).unwrap().len(), 1);
        assert_eq!(find_partition(&x4x6_disjoint()), None);
        let with_twos =
            ComplexWithDegrees::from_parts(&[("a", 4), ("b", 4), ("t", 2)], &[&["a", "b", "t"]])
                .unwrap();
        assert_eq!(
            blocks(&find_partition(&with_twos).unwrap()),
            vec![vec!["a", "t"], vec!["b"]]
        );
    }

    #[test]
    fn full_report_examples() {
        match full_report(&ab44()) {
            Verdict::SufficientOnly { partition } => {
                assert_eq!(blocks(&partition), vec![vec!["a"], vec!["b"]])
            }
            v => panic!("{v:?}"),
        }
        assert!(matches!(
            full_report(&x4x6_disjoint()),
            Verdict::NotRealizable { .. }
        ));
        let exc = ComplexWithDegrees::from_parts(
            &[("a", 4), ("b", 8), ("c", 8), ("d", 12)],
            &[&["a", "b", "c", "d"]],
        )
        .unwrap();
        assert_eq!(find_partition(&exc), None);
        assert_eq!(full_report(&exc), Verdict::Unknown);
    }

    #[test]
    fn two_fours_without_partition_stay_hypothesis_violated() {
        // three 6s need three blocks but only two can hold a 4
        let c = ComplexWithDegrees::from_parts(
            &[("a", 4), ("b", 4), ("c", 6), ("d", 6), ("e", 6)],
            &[&["a", "b", "c", "d", "e"]],
        )
        .unwrap();
        assert_eq!(find_partition(&c), None);
        assert!(matches!(
            full_report(&c),
            Verdict::HypothesisViolated { .. }
        ));
    }

    #[test]
    fn verdict_json_shape() {
        let v = full_report(&x4x6_disjoint());
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["verdict"], "NotRealizable");
        assert_eq!(j["witness"], serde_json::json!(["x6"]));
        assert_eq!(j["class"]["reason"]["kind"], "TableMiss");
        let back: Verdict = serde_json::from_value(j).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn partition_check() {
        let c = ab44();
        assert!(find_partition(&c).unwrap().check(&c).is_ok());
        let bad = Partition::new(vec![["a".to_string()].into()]);
        assert_eq!(bad.check(&c), Err(PartitionError::Uncovered("b".into())));
    }
}
