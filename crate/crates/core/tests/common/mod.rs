#![allow(dead_code)]

use std::path::PathBuf;

use mckay_core::groupfile::{read_group_file, GroupFile};
use mckay_core::matgroup::{close_named_group, MatrixGroup, DEFAULT_CAP};

pub const CORPUS: &[&str] = &[
    "bd8", "bd12", "bt48", "trihedral", "icosahedral", "terminal4", "cyclic7", "quarter4", "third3",
];

pub fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.group"))
}

pub fn load_file(name: &str) -> GroupFile {
    read_group_file(corpus_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load(name: &str) -> MatrixGroup {
    close_named_group(&load_file(name).named_matrices(), DEFAULT_CAP)
        .unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Dynkin type of a simply-laced tree, from its branch structure alone.
pub fn ade_type(nodes: usize, edges: &[(usize, usize)]) -> Option<String> {
    if nodes == 0 || edges.len() != nodes - 1 {
        return None;
    }
    let mut adj = vec![Vec::new(); nodes];
    for &(a, b) in edges {
        if a == b {
            return None;
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nodes];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return None;
    }
    let branch: Vec<usize> = (0..nodes).filter(|&v| adj[v].len() >= 3).collect();
    match branch.as_slice() {
        [] => Some(format!("A{nodes}")),
        [c] if adj[*c].len() == 3 => {
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, k] => Some(format!("D{}", k + 3)),
                [1, 2, 2] => Some("E6".into()),
                [1, 2, 3] => Some("E7".into()),
                [1, 2, 4] => Some("E8".into()),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Hirzebruch-Jung continued fraction `r/q = b_1 - 1/(b_2 - ...)`.
pub fn hirzebruch_jung(r: u64, q: u64) -> Vec<u64> {
    let (mut num, mut den) = (r, q);
    let mut out = Vec::new();
    while den != 0 {
        let b = num.div_ceil(den);
        out.push(b);
        let next = b * den - num;
        num = den;
        den = next;
    }
    out
}

#[test]
fn oracle_self_check() {
    assert_eq!(ade_type(3, &[(0, 1), (1, 2)]).as_deref(), Some("A3"));
    assert_eq!(ade_type(4, &[(0, 1), (0, 2), (0, 3)]).as_deref(), Some("D4"));
    assert_eq!(
        ade_type(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]).as_deref(),
        Some("E6")
    );
    assert_eq!(ade_type(3, &[(0, 1), (1, 2), (2, 0)]), None);
    assert_eq!(hirzebruch_jung(7, 6), vec![2; 6]);
    assert_eq!(hirzebruch_jung(5, 2), vec![3, 2]);
}
