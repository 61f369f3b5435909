//! Relations, partial orders and their derived structure: closure, Hasse
//! diagrams, height, Dilworth chain partitions and the cs-tree test.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use crate::error::OrderError;

/// A binary relation on `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Relation {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(n: usize) -> Self {
        Self { n, pairs: BTreeSet::new() }
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, OrderError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rel = Self::new(n);
        for (x, y) in pairs {
            rel.insert(x, y)?;
        }
        Ok(rel)
    }

    /// Adds `(x, y)`; returns whether it was new.
    pub fn insert(&mut self, x: usize, y: usize) -> Result<bool, OrderError> {
        if x >= self.n || y >= self.n {
            return Err(OrderError::UnknownElement { index: x.max(y), size: self.n });
        }
        Ok(self.pairs.insert((x, y)))
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn element_count(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }
}

/// Strict reachability rows of the transitive closure of `pairs` on `0..n`.
/// Row `x` contains `y` iff there is a non-empty path from `x` to `y`.
fn reach_rows<I>(n: usize, pairs: I) -> Vec<FixedBitSet>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    let mut rows = vec![FixedBitSet::with_capacity(n); n];
    for (x, y) in pairs {
        rows[x].insert(y);
    }
    // Warshall over bit rows.
    for k in 0..n {
        let via = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&via);
            }
        }
    }
    rows
}

/// The smallest reflexive and transitive relation containing `rel`.
pub fn close_relation(rel: &Relation) -> Relation {
    let n = rel.n;
    let rows = reach_rows(n, rel.pairs());
    let mut out = Relation::new(n);
    for (x, row) in rows.iter().enumerate() {
        out.pairs.insert((x, x));
        for y in row.ones() {
            out.pairs.insert((x, y));
        }
    }
    out
}

/// Elements that lie on a common cycle with the first element (by index)
/// that has one, sorted by index.
fn first_cycle(rows: &[FixedBitSet]) -> Option<Vec<usize>> {
    for (x, row) in rows.iter().enumerate() {
        let scc: Vec<usize> = row.ones().filter(|&y| y != x && rows[y].contains(x)).collect();
        if !scc.is_empty() {
            let mut cycle = scc;
            cycle.push(x);
            cycle.sort_unstable();
            return Some(cycle);
        }
    }
    None
}

/// Checks antisymmetry of a reflexively and transitively closed relation.
/// On failure the strongly connected class of the first offending element
/// is returned.
pub fn check_partial_order(rel: &Relation) -> Result<(), Vec<usize>> {
    let rows = reach_rows(rel.n, rel.pairs().filter(|&(x, y)| x != y));
    match first_cycle(&rows) {
        Some(cycle) => Err(cycle),
        None => Ok(()),
    }
}

/// A finite partial order on `0..n`, stored as strict up- and down-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialOrder {
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
}

impl PartialOrder {
    /// Closes `pairs` and checks antisymmetry. Reflexive pairs are ignored.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, Vec<usize>>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let above = reach_rows(n, pairs.into_iter().filter(|&(x, y)| x != y));
        if let Some(cycle) = first_cycle(&above) {
            return Err(cycle);
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (x, row) in above.iter().enumerate() {
            for y in row.ones() {
                below[y].insert(x);
            }
        }
        Ok(Self { above, below })
    }

    pub fn from_relation(rel: &Relation) -> Result<Self, Vec<usize>> {
        Self::from_pairs(rel.n, rel.pairs())
    }

    /// The order with no strict pairs.
    pub fn trivial(n: usize) -> Self {
        Self { above: vec![FixedBitSet::with_capacity(n); n], below: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn total(n: usize) -> Self {
        Self::from_pairs(n, (1..n).map(|i| (i - 1, i))).expect("a path is acyclic")
    }

    pub fn len(&self) -> usize {
        self.above.len()
    }

    pub fn is_empty(&self) -> bool {
        self.above.is_empty()
    }

    /// `x ≺ y`.
    pub fn less(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        x == y || self.less(x, y) || self.less(y, x)
    }

    pub fn above(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    pub fn below(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.above.iter().enumerate().flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
    }

    pub fn strict_pair_count(&self) -> usize {
        self.above.iter().map(|r| r.count_ones(..)).sum()
    }

    /// The reflexive closure as an explicit relation.
    pub fn to_relation(&self) -> Relation {
        let mut rel = Relation::new(self.len());
        for x in 0..self.len() {
            rel.pairs.insert((x, x));
        }
        rel.pairs.extend(self.strict_pairs());
        rel
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.below[x].is_clear()).collect()
    }

    /// A linear extension: elements sorted by the size of their down-set,
    /// ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut seq: Vec<usize> = (0..self.len()).collect();
        seq.sort_by_key(|&x| (self.below[x].count_ones(..), x));
        seq
    }

    pub fn is_linear_extension(&self, seq: &[usize]) -> bool {
        if seq.len() != self.len() {
            return false;
        }
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in seq.iter().enumerate() {
            if x >= self.len() || pos[x] != usize::MAX {
                return false;
            }
            pos[x] = i;
        }
        self.strict_pairs().all(|(x, y)| pos[x] < pos[y])
    }
}

/// Cover relation of a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    covers: Vec<(usize, usize)>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl HasseDiagram {
    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    /// Pairs `(x, y)` with `y` covering `x`, sorted.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Elements covering `x`.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.up[x]
    }

    /// Elements covered by `x`.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.down[x]
    }
}

pub fn hasse(order: &PartialOrder) -> HasseDiagram {
    let n = order.len();
    let mut covers = Vec::new();
    let mut up = vec![Vec::new(); n];
    let mut down = vec![Vec::new(); n];
    for x in 0..n {
        let mut implied = FixedBitSet::with_capacity(n);
        for z in order.above(x).ones() {
            implied.union_with(order.above(z));
        }
        let mut direct = order.above(x).clone();
        direct.difference_with(&implied);
        for y in direct.ones() {
            covers.push((x, y));
            up[x].push(y);
            down[y].push(x);
        }
    }
    HasseDiagram { covers, up, down }
}

/// Number of elements of a longest chain.
pub fn height(order: &PartialOrder) -> usize {
    let diagram = hasse(order);
    let mut level = vec![0usize; order.len()];
    for x in order.linear_extension() {
        level[x] = 1 + diagram.lower_covers(x).iter().map(|&p| level[p]).max().unwrap_or(0);
    }
    level.into_iter().max().unwrap_or(0)
}

/// A partition of the ground set into chains, each listed bottom-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPartition {
    chains: Vec<Vec<usize>>,
}

impl ChainPartition {
    pub fn chains(&self) -> &[Vec<usize>] {
        &self.chains
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chain_lengths(&self) -> Vec<usize> {
        self.chains.iter().map(Vec::len).collect()
    }

    /// Checks the partition invariants against `order`.
    pub fn is_valid_for(&self, order: &PartialOrder) -> bool {
        let mut seen = vec![false; order.len()];
        for chain in &self.chains {
            for w in chain.windows(2) {
                if !order.less(w[0], w[1]) {
                    return false;
                }
            }
            for &x in chain {
                if x >= seen.len() || seen[x] {
                    return false;
                }
                seen[x] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn into_chains(self) -> Vec<Vec<usize>> {
        self.chains
    }
}

/// Minimum chain partition (Dilworth) via a minimum path cover of the
/// comparability DAG, computed by augmenting-path bipartite matching with
/// elements and successors visited in index order.
pub fn chain_partition(order: &PartialOrder) -> ChainPartition {
    let n = order.len();
    // matched_from[y] = x means y follows x in its chain.
    let mut matched_from: Vec<Option<usize>> = vec![None; n];
    let mut seen = FixedBitSet::with_capacity(n);

    fn augment(x: usize, order: &PartialOrder, matched_from: &mut [Option<usize>], seen: &mut FixedBitSet) -> bool {
        for y in order.above(x).ones() {
            if seen.put(y) {
                continue;
            }
            let free = match matched_from[y] {
                None => true,
                Some(prev) => augment(prev, order, matched_from, seen),
            };
            if free {
                matched_from[y] = Some(x);
                return true;
            }
        }
        false
    }

    for x in 0..n {
        seen.clear();
        augment(x, order, &mut matched_from, &mut seen);
    }

    let mut next: Vec<Option<usize>> = vec![None; n];
    for (y, from) in matched_from.iter().enumerate() {
        if let Some(x) = from {
            next[*x] = Some(y);
        }
    }
    let mut chains = Vec::new();
    for start in (0..n).filter(|&y| matched_from[y].is_none()) {
        let mut chain = vec![start];
        let mut cur = start;
        while let Some(nx) = next[cur] {
            chain.push(nx);
            cur = nx;
        }
        chains.push(chain);
    }
    ChainPartition { chains }
}

/// Width, reported as the size of a minimum chain partition.
pub fn width(order: &PartialOrder) -> usize {
    chain_partition(order).len()
}

/// Whether the Hasse diagram is a tree rooted in the unique minimal element.
pub fn is_cs_tree(order: &PartialOrder) -> bool {
    if order.is_empty() {
        return false;
    }
    let diagram = hasse(order);
    let mut minimal = 0;
    for x in 0..order.len() {
        match diagram.lower_covers(x).len() {
            0 => minimal += 1,
            1 => {}
            _ => return false,
        }
    }
    minimal == 1
}
