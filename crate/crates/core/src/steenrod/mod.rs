//! Admissibility of generator-degree multisets for polynomial rings that
//! carry an unstable action of the Steenrod algebra at every prime.
//!
//! Only degree-level consequences are computed: a rank inequality forced by
//! surjectivity of `Sq^{2^i}` on indecomposables, the `p = 3` Adem obstruction
//! for `{4,16}`, and membership in the table of pseudoreflection-group degree
//! families.

mod dirichlet;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ring::DegreeMultiset;

pub use dirichlet::{dirichlet_prime, is_prime, DirichletError, BASE_CONGRUENCES};
pub use table::{aguade_table_member, table_families};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all_fields = "camelCase")]
pub enum ObstructionReason {
    /// `Sq^{2^i}: QA^{source} → QA^{target}` must be onto, but the source has
    /// fewer generators than the target.
    ThomasRank {
        target: u32,
        i: u32,
        source: u32,
        dim_source: usize,
        dim_target: usize,
    },
    AdemP3,
    TableMiss,
    MultipleDegree4,
}

impl fmt::Display for ObstructionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ObstructionReason::ThomasRank {
                target,
                i,
                source,
                dim_source,
                dim_target,
            } => write!(
                f,
                "ThomasRank target {target} source {source} dims {dim_source}<{dim_target} \
                 (Sq^{} cannot map QA^{source} onto QA^{target}; rank inequality only)",
                1u64 << i
            ),
            ObstructionReason::AdemP3 => write!(
                f,
                "AdemP3 (P^8 = -P^1 P^7 at p = 3 and no generator has degree 12 mod 16)"
            ),
            ObstructionReason::TableMiss => {
                write!(
                    f,
                    "TableMiss (degrees match no admissible polynomial family)"
                )
            }
            ObstructionReason::MultipleDegree4 => {
                write!(f, "MultipleDegree4 (more than one generator of degree 4)")
            }
        }
    }
}

/// Which admissible family a degree multiset belongs to. `k2` counts the
/// degree-2 entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AdmissibleClass {
    Torus {
        k2: usize,
    },
    /// `{4, 6, …, 2n+2}`: `n` consecutive even degrees from 4.
    #[serde(rename = "SUType")]
    SuType {
        n: u32,
        k2: usize,
    },
    /// `{4, 8, …, 4n}`.
    SpType {
        n: u32,
        k2: usize,
    },
    /// `{4, 8, …, 2^{n+1}−4} ∪ {2^n}`, `n ≥ 3`.
    Exceptional {
        n: u32,
        k2: usize,
    },
    Inadmissible {
        reason: ObstructionReason,
    },
}

impl AdmissibleClass {
    /// Torus, SU-type or Sp-type: the families the colimit construction
    /// can realize.
    pub fn is_constructible(&self) -> bool {
        matches!(
            self,
            AdmissibleClass::Torus { .. }
                | AdmissibleClass::SuType { .. }
                | AdmissibleClass::SpType { .. }
        )
    }

    /// Any of the four families allowed by the necessary condition.
    pub fn is_admissible(&self) -> bool {
        !matches!(self, AdmissibleClass::Inadmissible { .. })
    }

    pub fn reason(&self) -> Option<ObstructionReason> {
        match self {
            AdmissibleClass::Inadmissible { reason } => Some(*reason),
            _ => None,
        }
    }

    /// Regenerates the degree multiset of an admissible class.
    pub fn multiset(&self) -> Option<DegreeMultiset> {
        let (core, k2) = match *self {
            AdmissibleClass::Torus { k2 } => (vec![], k2),
            AdmissibleClass::SuType { n, k2 } => (su_degrees(n), k2),
            AdmissibleClass::SpType { n, k2 } => (sp_degrees(n), k2),
            AdmissibleClass::Exceptional { n, k2 } => (exceptional_degrees(n), k2),
            AdmissibleClass::Inadmissible { .. } => return None,
        };
        Some(
            DegreeMultiset::from_degrees(core)
                .expect("family degrees are even")
                .with_twos(k2),
        )
    }
}

impl fmt::Display for AdmissibleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdmissibleClass::Torus { k2 } => write!(f, "Torus k2={k2}"),
            AdmissibleClass::SuType { n, k2 } => write!(f, "SUType n={n} k2={k2}"),
            AdmissibleClass::SpType { n, k2 } => write!(f, "SpType n={n} k2={k2}"),
            AdmissibleClass::Exceptional { n, k2 } => write!(f, "Exceptional n={n} k2={k2}"),
            AdmissibleClass::Inadmissible { reason } => write!(f, "Inadmissible: {reason}"),
        }
    }
}

pub(crate) fn su_degrees(n: u32) -> Vec<u32> {
    (0..n).map(|j| 4 + 2 * j).collect()
}

pub(crate) fn sp_degrees(n: u32) -> Vec<u32> {
    (1..=n).map(|j| 4 * j).collect()
}

pub(crate) fn exceptional_degrees(n: u32) -> Vec<u32> {
    let mut v: Vec<u32> = (1..(1u32 << (n - 1))).map(|j| 4 * j).collect();
    v.push(1 << n);
    v.sort_unstable();
    v
}

fn is_step_run(v: &[u32], start: u32, step: u32) -> bool {
    v.iter()
        .enumerate()
        .all(|(j, &d)| d == start + step * j as u32)
}

/// Classifies a degree multiset. Sp-type wins over SU-type for `{4}`.
///
/// Multisets outside the four families are first matched against the
/// pseudoreflection table; table members are then run through the rank and
/// Adem checks, and anything surviving both is rejected by the table rule.
pub fn classify(ms: &DegreeMultiset) -> AdmissibleClass {
    let k2 = ms.twos();
    let core = ms.without_twos();
    let v = core.as_slice();
    let len = v.len() as u32;

    if v.is_empty() {
        return AdmissibleClass::Torus { k2 };
    }
    if is_step_run(v, 4, 4) {
        return AdmissibleClass::SpType { n: len, k2 };
    }
    if is_step_run(v, 4, 2) {
        return AdmissibleClass::SuType { n: len, k2 };
    }
    if len >= 4 && len.is_power_of_two() {
        let n = len.trailing_zeros() + 1;
        if v == exceptional_degrees(n).as_slice() {
            return AdmissibleClass::Exceptional { n, k2 };
        }
    }
    if core.count(4) > 1 {
        return AdmissibleClass::Inadmissible {
            reason: ObstructionReason::MultipleDegree4,
        };
    }
    let reason = if !aguade_table_member(&core) {
        ObstructionReason::TableMiss
    } else {
        thomas_rank_check(ms)
            .or_else(|| adem_p3_check(ms))
            .unwrap_or(ObstructionReason::TableMiss)
    };
    AdmissibleClass::Inadmissible { reason }
}

/// For each degree `d = 2^i·m` (`i ≥ 1`, `m` odd `≥ 3`) present with
/// multiplicity `c`, requires at least `c` generators in degree `2^i(m−1)`.
/// Returns the violation at the smallest such `d`.
pub fn thomas_rank_check(ms: &DegreeMultiset) -> Option<ObstructionReason> {
    let mut degrees: Vec<u32> = ms.as_slice().to_vec();
    degrees.dedup();
    degrees.into_iter().find_map(|d| {
        if d.is_power_of_two() {
            return None;
        }
        let i = d.trailing_zeros();
        let source = d - (1 << i);
        let dim_target = ms.count(d);
        let dim_source = ms.count(source);
        (dim_source < dim_target).then_some(ObstructionReason::ThomasRank {
            target: d,
            i,
            source,
            dim_source,
            dim_target,
        })
    })
}

/// Rejects exactly `{4,16} ∪ {2,…,2}`.
pub fn adem_p3_check(ms: &DegreeMultiset) -> Option<ObstructionReason> {
    (ms.without_twos().as_slice() == [4, 16]).then_some(ObstructionReason::AdemP3)
}
