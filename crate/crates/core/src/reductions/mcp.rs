//! Multicolor Clique to General Intermezzo with an induced cs-tree of width
//! `k + 1`.
//!
//! Elements: selectors `s.i` (`1..=k+1`), checkpoints `c.i,j` (`i <= j`),
//! and per color `i`, candidate `p` the counters `u.i.p.j` (`j = 0..=k`).

use std::collections::{BTreeSet, HashSet};

use crate::error::ReductionError;
use crate::intermezzo::{lower_pairs_to_triples, verify_ordering, GimInstance};
use crate::ordering::Ordering;

use super::WitnessMap;

/// A graph whose vertices are split into `colors` classes of equal size
/// `class_size`; edges only join different classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulticolorGraph {
    names: Vec<Vec<String>>,
    edges: BTreeSet<((usize, usize), (usize, usize))>,
}

impl MulticolorGraph {
    /// Vertices named `v.i.p` (1-based).
    pub fn new(colors: usize, class_size: usize) -> Self {
        let names = (1..=colors).map(|i| (1..=class_size).map(|p| format!("v.{i}.{p}")).collect()).collect();
        Self { names, edges: BTreeSet::new() }
    }

    /// Classes given by vertex names; all classes must be non-empty and of
    /// equal size.
    pub fn from_classes(names: Vec<Vec<String>>) -> Result<Self, ReductionError> {
        let q = names.first().map_or(0, Vec::len);
        if names.is_empty() || q == 0 {
            return Err(ReductionError::InvalidColoring("need at least one non-empty color class".into()));
        }
        if let Some(i) = names.iter().position(|c| c.len() != q) {
            return Err(ReductionError::InvalidColoring(format!(
                "color {} has {} vertices, color 1 has {q}",
                i + 1,
                names[i].len()
            )));
        }
        Ok(Self { names, edges: BTreeSet::new() })
    }

    /// Adds an edge between `(color, index)` pairs, 0-based.
    pub fn add_edge(&mut self, u: (usize, usize), v: (usize, usize)) -> Result<bool, ReductionError> {
        for (c, p) in [u, v] {
            if c >= self.colors() || p >= self.class_size() {
                return Err(ReductionError::InvalidColoring(format!("vertex ({c}, {p}) out of range")));
            }
        }
        if u.0 == v.0 {
            return Err(ReductionError::InvalidColoring(format!(
                "edge {} - {} inside one color class",
                self.name(u),
                self.name(v)
            )));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn has_edge(&self, u: (usize, usize), v: (usize, usize)) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn colors(&self) -> usize {
        self.names.len()
    }

    pub fn class_size(&self) -> usize {
        self.names.first().map_or(0, Vec::len)
    }

    pub fn name(&self, v: (usize, usize)) -> &str {
        &self.names[v.0][v.1]
    }

    pub fn classes(&self) -> &[Vec<String>] {
        &self.names
    }

    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize))> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `choice[i]` is the chosen index in color `i`.
    pub fn is_multicolor_clique(&self, choice: &[usize]) -> bool {
        choice.len() == self.colors()
            && choice.iter().all(|&p| p < self.class_size())
            && (0..choice.len()).all(|i| (i + 1..choice.len()).all(|j| self.has_edge((i, choice[i]), (j, choice[j]))))
    }
}

/// Dense element indices of the construction.
struct Layout {
    k: usize,
    q: usize,
    c_index: Vec<Vec<usize>>,
    u_offset: usize,
}

impl Layout {
    fn new(k: usize, q: usize) -> Self {
        let mut c_index = vec![vec![usize::MAX; k + 1]; k + 1];
        let mut next = k + 1;
        for i in 1..=k {
            for j in i..=k {
                c_index[i][j] = next;
                next += 1;
            }
        }
        Self { k, q, c_index, u_offset: next }
    }

    fn s(&self, i: usize) -> usize {
        i - 1
    }

    fn c(&self, i: usize, j: usize) -> usize {
        self.c_index[i][j]
    }

    fn u(&self, i: usize, p: usize, j: usize) -> usize {
        self.u_offset + ((i - 1) * self.q + (p - 1)) * (self.k + 1) + j
    }

    fn len(&self) -> usize {
        self.u_offset + self.k * self.q * (self.k + 1)
    }

    /// `(i, j)` of all checkpoints in their forced order.
    fn checkpoints(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.k).flat_map(move |i| (i..=self.k).map(move |j| (i, j)))
    }
}

/// Builds the instance. Precedence pairs are kept as pairs unless
/// `lower_pairs` is set, in which case one guard element encodes them.
pub fn mcp_to_gim(g: &MulticolorGraph, lower_pairs: bool) -> (GimInstance, WitnessMap) {
    let (k, q) = (g.colors(), g.class_size());
    let lay = Layout::new(k, q);
    let mut gim = GimInstance::new();
    let mut map = WitnessMap::new();
    for i in 1..=k + 1 {
        let name = format!("s.{i}");
        gim.add_element(&name);
        map.add("selector", &name, None);
    }
    for (i, j) in lay.checkpoints() {
        let name = format!("c.{i},{j}");
        gim.add_element(&name);
        map.add("checkpoint", &name, None);
    }
    for i in 1..=k {
        for p in 1..=q {
            for j in 0..=k {
                let name = format!("u.{i}.{p}.{j}");
                gim.add_element(&name);
                map.add("counter", &name, Some(g.name((i - 1, p - 1))));
            }
        }
    }
    debug_assert_eq!(gim.len(), lay.len());

    let mut pair = |x: usize, y: usize| {
        gim.add_pair(x, y).expect("distinct");
    };
    for i in 1..=k {
        let chain: Vec<usize> =
            (1..=q).flat_map(|p| (0..=k).map(move |j| (p, j))).map(|(p, j)| lay.u(i, p, j)).collect();
        for (a, &x) in chain.iter().enumerate() {
            pair(lay.s(i), x);
            for &y in &chain[a + 1..] {
                pair(x, y);
            }
        }
        pair(lay.u(i, 1, 0), lay.s(i + 1));
    }
    let cps: Vec<usize> = lay.checkpoints().map(|(i, j)| lay.c(i, j)).collect();
    for (a, &x) in cps.iter().enumerate() {
        for &y in &cps[a + 1..] {
            pair(x, y);
        }
    }
    for i in 1..k {
        pair(lay.c(i, k), lay.c(i + 1, i + 1));
    }
    pair(lay.s(k + 1), lay.c(1, 1));

    let mut triple = |x: usize, y: usize, z: usize| {
        gim.add_triple(x, y, z).expect("distinct");
    };
    // Selection phase.
    for i in 1..=k {
        for p in 1..q {
            for j in 1..=k {
                triple(lay.s(i + 1), lay.u(i, p, j), lay.u(i, p + 1, 0));
            }
        }
        for j in 1..=k {
            triple(lay.u(i, q, j), lay.s(i), lay.s(i + 1));
        }
        for p in 1..=q {
            for j in 0..=k {
                triple(lay.u(i, p, j), lay.s(i + 1), lay.c(1, 1));
            }
        }
    }
    // Verification phase.
    for i in 1..k {
        let (y, z) = (lay.c(i, k), lay.c(i + 1, i + 1));
        for x in (0..lay.len()).filter(|&x| x != y && x != z) {
            triple(x, y, z);
        }
    }
    for l in 1..k {
        for m in l..k {
            let (y, z) = (lay.c(l, m), lay.c(l, m + 1));
            for i in 1..=k {
                for p in 1..=q {
                    for j in 0..=k {
                        let outsider = (i != l && i != m + 1) || (i == m + 1 && j != l) || (i == l && j != m);
                        if outsider {
                            triple(lay.u(i, p, j), y, z);
                        }
                    }
                }
            }
            for p in 1..=q {
                triple(lay.c(l, m + 1), lay.u(l, p, m - 1), lay.u(l, p, m));
                triple(lay.c(l, m + 1), lay.u(m + 1, p, l - 1), lay.u(m + 1, p, l));
            }
            for p in 1..=q {
                for r in 1..=q {
                    if !g.has_edge((l - 1, p - 1), (m, r - 1)) {
                        triple(lay.u(m + 1, r, l), lay.u(l, p, m), lay.u(l, p, m + 1));
                        triple(lay.u(l, p, m), lay.u(m + 1, r, l), lay.u(m + 1, r, l + 1));
                    }
                }
            }
        }
    }
    if lower_pairs {
        let (lowered, guard) = lower_pairs_to_triples(&gim);
        if let Some(w) = guard {
            map.add("pair-guard", lowered.name(w), None);
        }
        return (lowered, map);
    }
    (gim, map)
}

fn element(inst: &GimInstance, name: &str) -> Result<usize, ReductionError> {
    inst.element(name).ok_or_else(|| ReductionError::InvalidWitness(format!("instance has no element `{name}`")))
}

/// Reads the clique off an accepted ordering: for each color the candidate
/// whose counter `u.i.p.0` is the last one before `c.1,1`.
pub fn clique_from_order(
    g: &MulticolorGraph,
    inst: &GimInstance,
    order: &Ordering,
) -> Result<Vec<usize>, ReductionError> {
    if !verify_ordering(inst, order) {
        return Err(ReductionError::InvalidWitness("ordering violates the instance".into()));
    }
    let start = order.position(element(inst, "c.1,1")?);
    let mut choice = Vec::with_capacity(g.colors());
    for i in 1..=g.colors() {
        let mut best = None;
        for p in 1..=g.class_size() {
            if order.position(element(inst, &format!("u.{i}.{p}.0"))?) < start {
                best = Some(p - 1);
            }
        }
        choice.push(best.ok_or_else(|| ReductionError::Internal(format!("no candidate selected for color {i}")))?);
    }
    if !g.is_multicolor_clique(&choice) {
        return Err(ReductionError::Internal("selected vertices do not form a clique".into()));
    }
    Ok(choice)
}

/// The accepted ordering for a multicolor clique: selection of each
/// candidate, the checkpoints with their two counters each, the rest of
/// the chosen counters, then the unchosen ones.
pub fn order_from_clique(
    g: &MulticolorGraph,
    inst: &GimInstance,
    choice: &[usize],
) -> Result<Ordering, ReductionError> {
    if !g.is_multicolor_clique(choice) {
        return Err(ReductionError::InvalidWitness("not a multicolor clique".into()));
    }
    let (k, q) = (g.colors(), g.class_size());
    let chosen = |i: usize| choice[i - 1] + 1;
    let mut names: Vec<String> = Vec::new();
    for i in 1..=k {
        names.push(format!("s.{i}"));
        for p in 1..chosen(i) {
            names.extend((0..=k).map(|j| format!("u.{i}.{p}.{j}")));
        }
        names.push(format!("u.{i}.{}.0", chosen(i)));
    }
    names.push(format!("s.{}", k + 1));
    for l in 1..=k {
        for m in l..=k {
            names.push(format!("c.{l},{m}"));
            if m < k {
                names.push(format!("u.{l}.{}.{m}", chosen(l)));
                names.push(format!("u.{}.{}.{l}", m + 1, chosen(m + 1)));
            }
        }
    }
    // Leftovers of the chosen candidates first: an unchosen counter placed
    // before them would sit inside a non-edge triple.
    let mut placed: HashSet<String> = names.iter().cloned().collect();
    for i in 1..=k {
        for j in 0..=k {
            let n = format!("u.{i}.{}.{j}", chosen(i));
            if placed.insert(n.clone()) {
                names.push(n);
            }
        }
    }
    for i in 1..=k {
        for p in chosen(i) + 1..=q {
            for j in 0..=k {
                let n = format!("u.{i}.{p}.{j}");
                if !placed.contains(&n) {
                    names.push(n);
                }
            }
        }
    }
    let mut seq = names.iter().map(|n| element(inst, n)).collect::<Result<Vec<_>, _>>()?;
    // A pair guard, if present, goes first.
    let listed: HashSet<usize> = seq.iter().copied().collect();
    let extra: Vec<usize> = (0..inst.len()).filter(|e| !listed.contains(e)).collect();
    seq.splice(0..0, extra);
    let order = Ordering::with_len(seq, inst.len()).map_err(|e| ReductionError::Internal(e.to_string()))?;
    if !verify_ordering(inst, &order) {
        return Err(ReductionError::Internal("constructed ordering violates the instance".into()));
    }
    Ok(order)
}
