use crate::ring::DegreeMultiset;

const SPORADIC: &[&[u32]] = &[
    &[4, 12],
    &[4, 12, 16, 24],
    &[4, 10, 12, 16, 18, 24],
    &[4, 12, 16, 20, 24, 28, 36],
    &[4, 16, 24, 28, 36, 40, 48, 60],
    &[4, 16],
    &[4, 24],
    &[4, 48],
];

/// Every table family (degree-2 family excluded) whose largest degree is at
/// most `max_degree`, in a fixed order.
pub fn table_families(max_degree: u32) -> Vec<DegreeMultiset> {
    let mut out: Vec<Vec<u32>> = Vec::new();
    // {4, 6, …, 2n}, n ≥ 2
    for n in 2..=max_degree / 2 {
        out.push((2..=n).map(|j| 2 * j).filter(|&d| d >= 4).collect());
    }
    // {4, 8, …, 4n}
    for n in 1..=max_degree / 4 {
        out.push((1..=n).map(|j| 4 * j).collect());
    }
    // {4, 8, …, 4(n−1), 2n}, n ≥ 4
    let mut n = 4;
    while 4 * (n - 1) <= max_degree {
        let mut v: Vec<u32> = (1..n).map(|j| 4 * j).collect();
        v.push(2 * n);
        out.push(v);
        n += 1;
    }
    for s in SPORADIC {
        if s.iter().all(|&d| d <= max_degree) {
            out.push(s.to_vec());
        }
    }
    let mut families: Vec<DegreeMultiset> = out
        .into_iter()
        .map(|v| DegreeMultiset::from_degrees(v).expect("table degrees are even"))
        .collect();
    families.dedup();
    families
}

/// Whether the multiset (degree-2 entries ignored) is a union of table
/// families. Each family contains exactly one 4, so the search peels off
/// one family per 4 and backtracks on failure.
pub fn aguade_table_member(ms: &DegreeMultiset) -> bool {
    let core = ms.without_twos();
    let top = core.as_slice().last().copied().unwrap_or(0);
    let families = table_families(top);
    decompose(&core, &families)
}

fn decompose(rest: &DegreeMultiset, families: &[DegreeMultiset]) -> bool {
    if rest.is_empty() {
        return true;
    }
    families.iter().any(|f| match rest.minus(f) {
        Some(smaller) => decompose(&smaller, families),
        None => false,
    })
}
