#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srreal::complex::VertexDecl;
use srreal::ComplexWithDegrees;

pub const FAMILY_SEED: u64 = 0x5eed_2024;
pub const FAMILY_SIZE: usize = 200;

/// Random complex: 1 to 6 vertices with degrees in {2, …, 12}, up to five
/// random facets reduced to the maximal ones, unused vertices dropped.
pub fn random_complex(rng: &mut impl Rng) -> ComplexWithDegrees {
    let n = rng.gen_range(1..=6usize);
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let degrees: Vec<i64> = (0..n).map(|_| 2 * rng.gen_range(1..=6)).collect();
    let k = rng.gen_range(1..=5usize);
    let mut facets: Vec<BTreeSet<usize>> = (0..k)
        .map(|_| {
            let mut f: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            if f.is_empty() {
                f.insert(rng.gen_range(0..n));
            }
            f
        })
        .collect();
    facets.sort();
    facets.dedup();
    let maximal: Vec<BTreeSet<usize>> = facets
        .iter()
        .filter(|f| !facets.iter().any(|g| g != *f && f.is_subset(g)))
        .cloned()
        .collect();
    build(&ids, &degrees, &maximal)
}

fn build(ids: &[String], degrees: &[i64], facets: &[BTreeSet<usize>]) -> ComplexWithDegrees {
    let used: BTreeSet<usize> = facets.iter().flatten().copied().collect();
    let vertices = used
        .iter()
        .map(|&i| VertexDecl {
            id: ids[i].clone(),
            degree: degrees[i],
        })
        .collect();
    let facets = facets
        .iter()
        .map(|f| f.iter().map(|&i| ids[i].clone()).collect())
        .collect();
    ComplexWithDegrees::new(vertices, facets).expect("generated complex is valid")
}

/// The fixed family of random complexes shared by the soundness checks.
pub fn random_family() -> Vec<ComplexWithDegrees> {
    let mut rng = ChaCha8Rng::seed_from_u64(FAMILY_SEED);
    (0..FAMILY_SIZE).map(|_| random_complex(&mut rng)).collect()
}

pub fn from_seed(seed: u64) -> ComplexWithDegrees {
    random_complex(&mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn shuffled_order(len: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut order: Vec<usize> = (0..len).collect();
    order.shuffle(rng);
    order
}

/// Every complex whose vertices are `fours` degree-4 vertices and `twos`
/// degree-2 vertices, with at most `max_facets` facets, all vertices used.
pub fn all_complexes(fours: usize, twos: usize, max_facets: usize) -> Vec<ComplexWithDegrees> {
    let n = fours + twos;
    let ids: Vec<String> = (0..n)
        .map(|i| {
            if i < fours {
                format!("a{i}")
            } else {
                format!("t{}", i - fours)
            }
        })
        .collect();
    let degrees: Vec<i64> = (0..n).map(|i| if i < fours { 4 } else { 2 }).collect();
    let subsets: Vec<BTreeSet<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    antichains(&subsets, 0, max_facets, &mut chosen, &mut |facets| {
        let covered: BTreeSet<usize> = facets.iter().flatten().copied().collect();
        if covered.len() == n {
            out.push(build(&ids, &degrees, facets));
        }
    });
    out
}

fn antichains(
    subsets: &[BTreeSet<usize>],
    from: usize,
    room: usize,
    chosen: &mut Vec<BTreeSet<usize>>,
    emit: &mut impl FnMut(&[BTreeSet<usize>]),
) {
    if !chosen.is_empty() {
        emit(chosen);
    }
    if room == 0 {
        return;
    }
    for i in from..subsets.len() {
        let s = &subsets[i];
        if chosen.iter().any(|c| c.is_subset(s) || s.is_subset(c)) {
            continue;
        }
        chosen.push(s.clone());
        antichains(subsets, i + 1, room - 1, chosen, emit);
        chosen.pop();
    }
}

pub fn two_facets() -> ComplexWithDegrees {
    ComplexWithDegrees::from_parts(
        &[("x4", 4), ("x6", 6), ("x8", 8)],
        &[&["x4", "x6"], &["x4", "x8"]],
    )
    .unwrap()
}

/// `ℤ[x4, x6_1 … x6_n, x8]` with all products `x6_j x6_k` killed.
pub fn fan(n: usize) -> ComplexWithDegrees {
    let mut vertices = vec![
        VertexDecl {
            id: "x4".into(),
            degree: 4,
        },
        VertexDecl {
            id: "x8".into(),
            degree: 8,
        },
    ];
    let mut facets = Vec::new();
    for j in 1..=n {
        let y = format!("x6_{j}");
        vertices.push(VertexDecl {
            id: y.clone(),
            degree: 6,
        });
        facets.push(vec!["x4".to_string(), y, "x8".to_string()]);
    }
    ComplexWithDegrees::new(vertices, facets).unwrap()
}

/// `ℤ[x4, x6_1, x6_2, x8_1, x8_2]/(x6_1 x6_2, x8_1 x8_2)`.
pub fn square() -> ComplexWithDegrees {
    ComplexWithDegrees::from_parts(
        &[
            ("x4", 4),
            ("x6_1", 6),
            ("x6_2", 6),
            ("x8_1", 8),
            ("x8_2", 8),
        ],
        &[
            &["x4", "x6_1", "x8_1"],
            &["x4", "x6_1", "x8_2"],
            &["x4", "x6_2", "x8_1"],
            &["x4", "x6_2", "x8_2"],
        ],
    )
    .unwrap()
}

/// `ℤ[x4, x6]/(x4 x6)`.
pub fn split_four_six() -> ComplexWithDegrees {
    ComplexWithDegrees::from_parts(&[("x4", 4), ("x6", 6)], &[&["x4"], &["x6"]]).unwrap()
}
