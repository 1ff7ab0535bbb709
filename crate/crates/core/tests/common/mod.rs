#![allow(dead_code)]
#![allow(clippy::needless_range_loop)]

//! Brute-force oracles that only look at a multiplication table.

use hyperkit::CayleyGroup;

pub fn inverse(mul: &[Vec<usize>], e: usize, x: usize) -> usize {
    (0..mul.len()).find(|&y| mul[x][y] == e).unwrap()
}

/// Conjugacy classes by direct orbit computation, sorted by least element.
pub fn classes(mul: &[Vec<usize>], e: usize) -> Vec<Vec<usize>> {
    let n = mul.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if blocks.iter().any(|b| b.contains(&x)) {
            continue;
        }
        let mut orbit: Vec<usize> = (0..n).map(|g| mul[mul[g][x]][inverse(mul, e, g)]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        blocks.push(orbit);
    }
    blocks
}

/// Subgroup generated by `gens`, by closing under products.
pub fn closure(mul: &[Vec<usize>], e: usize, gens: &[usize]) -> Vec<usize> {
    let mut set = vec![e];
    set.extend_from_slice(gens);
    set.sort_unstable();
    set.dedup();
    loop {
        let mut next = set.clone();
        for &a in &set {
            for &b in &set {
                next.push(mul[a][b]);
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.len() == set.len() {
            return next;
        }
        set = next;
    }
}

/// Double cosets `H x H`, sorted by least element.
pub fn double_cosets(mul: &[Vec<usize>], h: &[usize]) -> Vec<Vec<usize>> {
    let n = mul.len();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if blocks.iter().any(|b| b.contains(&x)) {
            continue;
        }
        let mut block: Vec<usize> = h
            .iter()
            .flat_map(|&a| h.iter().map(move |&b| (a, b)))
            .map(|(a, b)| mul[mul[a][x]][b])
            .collect();
        block.sort_unstable();
        block.dedup();
        blocks.push(block);
    }
    blocks
}

/// Expands `(sum B_i / |B_i|)(sum B_j / |B_j|)` over every pair of group
/// elements and returns the total mass landing in each block, as exact
/// integer counts divided once.
pub fn block_algebra(mul: &[Vec<usize>], blocks: &[Vec<usize>]) -> Vec<Vec<Vec<f64>>> {
    let n = mul.len();
    let mut owner = vec![usize::MAX; n];
    for (k, b) in blocks.iter().enumerate() {
        for &x in b {
            owner[x] = k;
        }
    }
    let m = blocks.len();
    let mut out = vec![vec![vec![0.0; m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            let mut counts = vec![0u64; m];
            for &a in &blocks[i] {
                for &b in &blocks[j] {
                    counts[owner[mul[a][b]]] += 1;
                }
            }
            let total = (blocks[i].len() * blocks[j].len()) as f64;
            for k in 0..m {
                out[i][j][k] = counts[k] as f64 / total;
            }
        }
    }
    out
}

/// Every subgroup generated by at most two elements, deduplicated.
pub fn small_subgroups(g: &CayleyGroup) -> Vec<Vec<usize>> {
    let mul = g.table();
    let e = g.identity();
    let n = g.order();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        for b in a..n {
            let h = closure(mul, e, &[a, b]);
            if !out.contains(&h) {
                out.push(h);
            }
        }
    }
    out
}

pub fn max_diff(table: &hyperkit::HypergroupTable, expected: &[Vec<Vec<f64>>]) -> f64 {
    let n = table.size();
    assert_eq!(n, expected.len(), "block count differs");
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                worst = worst.max((table.coeff(i, j, k) - expected[i][j][k]).abs());
            }
        }
    }
    worst
}

/// Largest entrywise deviation between the library's class and double-coset
/// hypergroups of `g` and the brute-force expansion.
pub fn group_oracle_defect(g: &CayleyGroup) -> f64 {
    let mul = g.table();
    let e = g.identity();
    let mut worst = max_diff(
        &hyperkit::constructions::conjugacy_class_hypergroup(g),
        &block_algebra(mul, &classes(mul, e)),
    );
    for h in small_subgroups(g) {
        let table = hyperkit::constructions::double_coset_hypergroup(g, &h).unwrap();
        worst = worst.max(max_diff(&table, &block_algebra(mul, &double_cosets(mul, &h))));
    }
    worst
}

/// Builtin group names of order at most 24.
pub fn small_builtin_groups() -> Vec<String> {
    let mut names: Vec<String> = (1..=12).map(|n| format!("z{n}")).collect();
    names.extend(["s3", "s4", "d4", "q8"].map(String::from));
    names
}
