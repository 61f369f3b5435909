//! Brute-force oracles shared by the integration suites. They only use the
//! public data accessors, never the solvers they check.
#![allow(dead_code)]

use std::collections::HashSet;

use ltree_intermezzo::graph::LTreeInstance;
use ltree_intermezzo::intermezzo::GimInstance;
use ltree_intermezzo::order::PartialOrder;
use ltree_intermezzo::reductions::{CnfFormula, MulticolorGraph};

/// Calls `visit` on every permutation of `0..n` (Heap's algorithm); stops
/// early once `visit` returns true.
pub fn any_permutation(n: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    let mut p: Vec<usize> = (0..n).collect();
    if visit(&p) {
        return true;
    }
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            if visit(&p) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}

/// Rightmost-earlier-neighbor parent of every vertex, straight from the
/// definition; `None` when some later vertex has no earlier neighbor.
pub fn ltree_parents(inst: &LTreeInstance, seq: &[usize]) -> Option<Vec<Option<usize>>> {
    let g = inst.graph();
    let mut parents = vec![None; seq.len()];
    for (i, &v) in seq.iter().enumerate().skip(1) {
        let p = seq[..i].iter().rev().find(|&&u| g.has_edge(u, v))?;
        parents[v] = Some(*p);
    }
    Some(parents)
}

pub fn accepts_ltree(inst: &LTreeInstance, seq: &[usize]) -> bool {
    seq[0] == inst.root()
        && ltree_parents(inst, seq)
            .is_some_and(|ps| (0..seq.len()).all(|v| v == inst.root() || ps[v] == inst.parent(v)))
}

/// Exhaustive rooted L-tree feasibility over all `n!` permutations.
pub fn ltree_feasible(inst: &LTreeInstance) -> bool {
    any_permutation(inst.vertex_count(), |seq| accepts_ltree(inst, seq))
}

pub fn accepts_gim(inst: &GimInstance, seq: &[usize]) -> bool {
    let mut pos = vec![0; seq.len()];
    for (i, &e) in seq.iter().enumerate() {
        pos[e] = i;
    }
    inst.pairs().all(|(x, y)| pos[x] < pos[y])
        && inst.triples().all(|(x, y, z)| (pos[x] < pos[y] && pos[y] < pos[z]) || (pos[y] < pos[z] && pos[z] < pos[x]))
}

pub fn gim_feasible(inst: &GimInstance) -> bool {
    any_permutation(inst.len(), |seq| accepts_gim(inst, seq))
}

pub fn sat_feasible(f: &CnfFormula) -> Option<Vec<bool>> {
    let n = f.variables();
    (0..1u32 << n)
        .map(|mask| (0..n).map(|j| mask >> j & 1 == 1).collect::<Vec<bool>>())
        .find(|a| f.clauses().iter().all(|c| c.iter().any(|&l| a[l.unsigned_abs() as usize - 1] == (l > 0))))
}

/// Some multicolor clique by trying all `q^k` choices.
pub fn find_clique(g: &MulticolorGraph) -> Option<Vec<usize>> {
    let (k, q) = (g.colors(), g.class_size());
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut code| {
            (0..k)
                .map(|_| {
                    let p = code % q;
                    code /= q;
                    p
                })
                .collect::<Vec<usize>>()
        })
        .find(|c| (0..k).all(|i| (i + 1..k).all(|j| g.has_edge((i, c[i]), (j, c[j])))))
}

/// Largest antichain by subset enumeration.
pub fn max_antichain(order: &PartialOrder) -> usize {
    let n = order.len();
    (0u32..1 << n)
        .filter(|&s| {
            let members: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
            members.iter().all(|&a| members.iter().all(|&b| a == b || !order.less(a, b)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Largest chain by subset enumeration.
pub fn longest_chain(order: &PartialOrder) -> usize {
    let n = order.len();
    (0u32..1 << n)
        .filter(|&s| {
            let members: Vec<usize> = (0..n).filter(|&i| s >> i & 1 == 1).collect();
            members.iter().all(|&a| members.iter().all(|&b| a == b || order.less(a, b) || order.less(b, a)))
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Transitive closure by repeated pairwise composition until nothing new
/// appears.
pub fn naive_closure(n: usize, pairs: &HashSet<(usize, usize)>) -> HashSet<(usize, usize)> {
    let mut rel: HashSet<(usize, usize)> = pairs.clone();
    rel.extend((0..n).map(|i| (i, i)));
    loop {
        let mut next = rel.clone();
        for &(a, b) in &rel {
            for &(c, d) in &rel {
                if b == c {
                    next.insert((a, d));
                }
            }
        }
        if next.len() == rel.len() {
            return rel;
        }
        rel = next;
    }
}
