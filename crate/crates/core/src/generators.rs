//! Seeded instance factories. Every generator draws from a ChaCha8 stream
//! seeded with `ChaCha8Rng::seed_from_u64(seed)`, so a seed and parameter
//! set always yield the same instance.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GenError;
use crate::graph::{Graph, LTreeInstance, RootedSpanningTree};
use crate::intermezzo::GimInstance;
use crate::order::PartialOrder;
use crate::reductions::{CnfFormula, MulticolorGraph};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParameter(msg.into())
}

/// Vertex names for the `t`-branch family: `r`, then letters while they
/// last, then `v{i}`.
fn branch_name(i: usize, total: usize) -> String {
    if total <= 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("v{}", i + 1)
    }
}

/// Root `r` with `t` two-vertex branches `top_i – bot_i` and chords
/// `top_{i+1} bot_i` plus `top_1 bot_t`. Rooted-infeasible for every `t`.
pub fn gen_fig4(t: usize) -> Result<LTreeInstance, GenError> {
    if t < 2 {
        return Err(invalid(format!("fig4 needs at least 2 branches, got {t}")));
    }
    let mut g = Graph::new();
    let root = g.add_vertex("r");
    let tops: Vec<usize> = (0..t).map(|i| g.add_vertex(&branch_name(i, 2 * t))).collect();
    let bots: Vec<usize> = (0..t).map(|i| g.add_vertex(&branch_name(t + i, 2 * t))).collect();
    let mut parent = vec![None; 2 * t + 1];
    for i in 0..t {
        g.add_edge(root, tops[i]).expect("distinct");
        g.add_edge(tops[i], bots[i]).expect("distinct");
        parent[tops[i]] = Some(root);
        parent[bots[i]] = Some(tops[i]);
    }
    for i in 0..t {
        g.add_edge(tops[(i + 1) % t], bots[i]).expect("distinct");
    }
    Ok(LTreeInstance::new(g, RootedSpanningTree::new(root, parent)).expect("valid by construction"))
}

/// `m` clauses over `n` variables, each on three distinct variables with
/// independent random signs.
pub fn gen_random_cnf(n: usize, m: usize, seed: u64) -> Result<CnfFormula, GenError> {
    if n < 3 {
        return Err(invalid(format!("need at least 3 variables, got {n}")));
    }
    let mut rng = rng(seed);
    let vars: Vec<i32> = (1..=n as i32).collect();
    let clauses = (0..m)
        .map(|_| {
            let mut c = [0i32; 3];
            for (slot, &v) in c.iter_mut().zip(vars.choose_multiple(&mut rng, 3)) {
                *slot = if rng.gen_bool(0.5) { v } else { -v };
            }
            c
        })
        .collect();
    Ok(CnfFormula::new(n, clauses).expect("distinct variables by construction"))
}

/// `k` color classes of `q` vertices; every inter-color pair is an edge with
/// probability `edge_prob`.
pub fn gen_random_mcp(k: usize, q: usize, edge_prob: f64, seed: u64) -> Result<MulticolorGraph, GenError> {
    if k < 2 || q < 1 {
        return Err(invalid(format!("need k >= 2 and q >= 1, got k = {k}, q = {q}")));
    }
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(invalid(format!("edge probability {edge_prob} outside [0, 1]")));
    }
    let mut rng = rng(seed);
    let mut g = MulticolorGraph::new(k, q);
    for i in 0..k {
        for p in 0..q {
            for j in i + 1..k {
                for r in 0..q {
                    if rng.gen_bool(edge_prob) {
                        g.add_edge((i, p), (j, r)).expect("distinct colors");
                    }
                }
            }
        }
    }
    Ok(g)
}

/// Elements `e1..en` split at random into `k` non-empty chains recorded as
/// consecutive pairs, plus up to `triples` random triples `(x, y, z)` whose
/// `y` precedes `z` in the same chain. The induced order has width at most
/// `k`.
pub fn gen_random_gim(k: usize, n: usize, triples: usize, seed: u64) -> Result<GimInstance, GenError> {
    if k < 1 || n < k {
        return Err(invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let mut rng = rng(seed);
    let mut inst = GimInstance::new();
    for i in 1..=n {
        inst.add_element(&format!("e{i}"));
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut cuts: Vec<usize> = rand::seq::index::sample(&mut rng, n - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(n);
    let mut chains = Vec::with_capacity(k);
    let mut start = 0;
    for end in cuts {
        chains.push(perm[start..end].to_vec());
        start = end;
    }
    for chain in &chains {
        for w in chain.windows(2) {
            inst.add_pair(w[0], w[1]).expect("distinct");
        }
    }
    let long: Vec<&Vec<usize>> = chains.iter().filter(|c| c.len() >= 2).collect();
    if long.is_empty() || n < 3 {
        return Ok(inst);
    }
    let mut attempts = 0;
    while inst.triple_count() < triples && attempts < 20 * triples {
        attempts += 1;
        let chain = long[rng.gen_range(0..long.len())];
        let a = rng.gen_range(0..chain.len() - 1);
        let b = rng.gen_range(a + 1..chain.len());
        let (y, z) = (chain[a], chain[b]);
        let x = rng.gen_range(0..n);
        if x != y && x != z {
            inst.add_triple(x, y, z).expect("distinct");
        }
    }
    Ok(inst)
}

/// A random general Intermezzo instance without pairs: `triples` triples
/// over `e1..en` drawn uniformly. Often inconsistent for large counts.
pub fn gen_random_triples(n: usize, triples: usize, seed: u64) -> Result<GimInstance, GenError> {
    if n < 3 {
        return Err(invalid(format!("need at least 3 elements, got {n}")));
    }
    let mut rng = rng(seed);
    let mut inst = GimInstance::new();
    for i in 1..=n {
        inst.add_element(&format!("e{i}"));
    }
    let mut attempts = 0;
    while inst.triple_count() < triples && attempts < 20 * triples {
        attempts += 1;
        let t = rand::seq::index::sample(&mut rng, n, 3);
        inst.add_triple(t.index(0), t.index(1), t.index(2)).expect("distinct");
    }
    Ok(inst)
}

/// A cs-tree Intermezzo instance: a random tree on `e1..en` rooted at `e1`,
/// one triple per tree edge (so the induced order is exactly the tree
/// order) and `extra` triples whose last two elements are ancestor and
/// descendant.
pub fn gen_cstree_gim(n: usize, extra: usize, seed: u64) -> Result<GimInstance, GenError> {
    if n < 3 {
        return Err(invalid(format!("need at least 3 elements, got {n}")));
    }
    let mut rng = rng(seed);
    let mut inst = GimInstance::new();
    for i in 1..=n {
        inst.add_element(&format!("e{i}"));
    }
    let parent: Vec<Option<usize>> = (0..n).map(|v| if v == 0 { None } else { Some(rng.gen_range(0..v)) }).collect();
    let other = |rng: &mut ChaCha8Rng, a: usize, b: usize| loop {
        let x = rng.gen_range(0..n);
        if x != a && x != b {
            return x;
        }
    };
    for v in 1..n {
        let p = parent[v].expect("non-root");
        let x = other(&mut rng, p, v);
        inst.add_triple(x, p, v).expect("distinct");
    }
    let ancestors = |mut v: usize| {
        let mut out = Vec::new();
        while let Some(p) = parent[v] {
            out.push(p);
            v = p;
        }
        out
    };
    for _ in 0..extra {
        let z = rng.gen_range(1..n);
        let up = ancestors(z);
        let y = up[rng.gen_range(0..up.len())];
        let x = other(&mut rng, y, z);
        inst.add_triple(x, y, z).expect("distinct");
    }
    Ok(inst)
}

fn random_tree(n: usize, rng: &mut ChaCha8Rng) -> (Graph, Vec<Option<usize>>) {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("v{i}"));
    }
    let parent: Vec<Option<usize>> = (0..n).map(|v| if v == 0 { None } else { Some(rng.gen_range(0..v)) }).collect();
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            g.add_edge(p, v).expect("distinct");
        }
    }
    (g, parent)
}

/// Random tree on `v0..v{n-1}` rooted at `v0` (each vertex hangs below a
/// uniformly chosen earlier one) plus up to `chords` random non-tree edges.
pub fn gen_random_ltree(n: usize, chords: usize, seed: u64) -> Result<LTreeInstance, GenError> {
    gen_ltree(n, chords, seed, |_, _| true)
}

/// Like [`gen_random_ltree`] but every chord joins an ancestor to a
/// descendant, so no hook can occur.
pub fn gen_hookfree_ltree(n: usize, chords: usize, seed: u64) -> Result<LTreeInstance, GenError> {
    gen_ltree(n, chords, seed, |inst, (u, v)| inst.is_ancestor_or_self(u, v) || inst.is_ancestor_or_self(v, u))
}

fn gen_ltree(
    n: usize,
    chords: usize,
    seed: u64,
    keep: impl Fn(&LTreeInstance, (usize, usize)) -> bool,
) -> Result<LTreeInstance, GenError> {
    if n < 1 {
        return Err(invalid("need at least one vertex"));
    }
    let mut rng = rng(seed);
    let (mut g, parent) = random_tree(n, &mut rng);
    let tree = RootedSpanningTree::new(0, parent);
    let bare = LTreeInstance::new(g.clone(), tree.clone()).expect("valid by construction");
    let possible = n * (n - 1) / 2 - (n - 1);
    let mut added = 0;
    let mut attempts = 0;
    while added < chords.min(possible) && attempts < 50 * (chords + 1) {
        attempts += 1;
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && keep(&bare, (u, v)) {
            g.add_edge(u, v).expect("distinct");
            added += 1;
        }
    }
    Ok(LTreeInstance::new(g, tree).expect("chords keep the tree valid"))
}

/// A random partial order on `n` elements: each pair `(i, j)` with `i < j`
/// in a random permutation is related with probability `density`, then
/// closed.
pub fn gen_random_poset(n: usize, density: f64, seed: u64) -> Result<PartialOrder, GenError> {
    if !(0.0..=1.0).contains(&density) {
        return Err(invalid(format!("density {density} outside [0, 1]")));
    }
    let mut rng = rng(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut pairs = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                pairs.insert((perm[i], perm[j]));
            }
        }
    }
    Ok(PartialOrder::from_pairs(n, pairs).expect("pairs follow a permutation"))
}
