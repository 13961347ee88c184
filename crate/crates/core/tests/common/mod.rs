#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use eqkh::chromatic::Graph;
use eqkh::diagram::lift_fundamental_domain;
use eqkh::{CyclicAction, LinkDiagram, Tangle};
use rand::Rng;

pub fn braid_lift(strands: usize, word: &[i32], p: usize) -> (LinkDiagram, CyclicAction) {
    lift_fundamental_domain(&Tangle::braid(strands, word).unwrap(), p).unwrap()
}

pub fn trefoil() -> (LinkDiagram, CyclicAction) {
    braid_lift(2, &[1], 3)
}

/// Three crossingless circles permuted cyclically.
pub fn unlink3() -> (LinkDiagram, CyclicAction) {
    let d = LinkDiagram::unlink(3);
    let a = CyclicAction::new(&d, 3, vec![], &BTreeMap::from([(1, 2), (2, 3), (3, 1)])).unwrap();
    (d, a)
}

pub fn unlink5() -> (LinkDiagram, CyclicAction) {
    let d = LinkDiagram::unlink(5);
    let a = CyclicAction::new(&d, 5, vec![], &(1..=5).map(|i| (i, i % 5 + 1)).collect()).unwrap();
    (d, a)
}

/// Symmetric diagrams with `p = 3` or `5`, beyond the two basic examples.
pub fn constructed_symmetric() -> Vec<(String, LinkDiagram, CyclicAction)> {
    let mut out: Vec<(String, LinkDiagram, CyclicAction)> = [
        (2, vec![1], 5),
        (2, vec![-1], 5),
        (2, vec![1, 1], 3),
        (2, vec![1, -1], 3),
        (3, vec![1, -2], 3),
        (3, vec![1, 2], 3),
        (3, vec![1], 3),
        (2, vec![], 5),
    ]
    .into_iter()
    .map(|(s, w, p)| {
        (
            format!("braid {s} {w:?} p={p}"),
            braid_lift(s, &w, p).0,
            braid_lift(s, &w, p).1,
        )
    })
    .collect();
    let (d, a) = unlink5();
    out.push(("5-unlink p=5".into(), d, a));
    out
}

pub fn all_symmetric() -> Vec<(String, LinkDiagram, CyclicAction)> {
    let (u, ua) = unlink3();
    let (t, ta) = trefoil();
    let mut out = vec![("3-unlink".to_string(), u, ua), ("trefoil".to_string(), t, ta)];
    out.extend(constructed_symmetric());
    out
}

/// A random braid word with at most `max_len` letters on 2 to 4 strands.
pub fn random_braid(rng: &mut impl Rng, max_len: usize) -> (usize, Vec<i32>) {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_len);
    let word = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        })
        .collect();
    (strands, word)
}

pub fn closure(strands: usize, word: &[i32]) -> LinkDiagram {
    Tangle::braid(strands, word).unwrap().closure().unwrap()
}

/// Diagrams with at most five crossings.
pub fn small_corpus() -> Vec<LinkDiagram> {
    let words: &[(usize, &[i32])] = &[
        (2, &[1]),
        (2, &[1, 1]),
        (2, &[1, -1]),
        (2, &[1, 1, 1]),
        (3, &[1, -2, 1, -2]),
        (3, &[1, 2, -1]),
        (2, &[1, 1, 1, 1, 1]),
        (3, &[1, 1, -2, -2, 1]),
        (4, &[1, 2, 3, -1, 2]),
    ];
    let mut out: Vec<LinkDiagram> = words.iter().map(|(s, w)| closure(*s, w)).collect();
    out.push(trefoil().0);
    let (k, _, _) = LinkDiagram::unknot().add_positive_kink(1, None).unwrap();
    out.push(k);
    out
}

fn canonical(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (perm[a].min(perm[b]), perm[a].max(perm[b])))
            .collect();
        e.sort();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    best.unwrap()
}

/// All connected simple graphs on `1..=max_n` vertices, one per isomorphism
/// class.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut seen = BTreeSet::new();
        for mask in 0u32..1 << pairs.len() {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let g = Graph::new(n, edges.clone()).unwrap();
            let all = (1u32 << edges.len()) - 1;
            if g.components(all).iter().any(|&r| r != 0) {
                continue;
            }
            if seen.insert(canonical(n, &edges)) {
                out.push(g);
            }
        }
    }
    out
}
