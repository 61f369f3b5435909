//! General Intermezzo instances: precedence pairs plus triples `(x, y, z)`
//! demanding `x ≺ y ≺ z` or `y ≺ z ≺ x`, i.e. `x` never strictly between
//! `y` and `z` while `y` precedes `z`.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::InstanceError;
use crate::order::{hasse, PartialOrder};
use crate::ordering::Ordering;
use crate::symbols::Symbols;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GimInstance {
    symbols: Symbols,
    pairs: BTreeSet<(usize, usize)>,
    triples: BTreeSet<(usize, usize, usize)>,
}

impl GimInstance {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_element(&mut self, name: &str) -> usize {
        self.symbols.intern(name)
    }

    pub fn add_pair(&mut self, x: usize, y: usize) -> Result<bool, InstanceError> {
        self.check(x)?;
        self.check(y)?;
        if x == y {
            return Err(InstanceError::ReflexivePair(self.name(x).to_owned()));
        }
        Ok(self.pairs.insert((x, y)))
    }

    pub fn add_triple(&mut self, x: usize, y: usize, z: usize) -> Result<bool, InstanceError> {
        for e in [x, y, z] {
            self.check(e)?;
        }
        if x == y || y == z || x == z {
            return Err(InstanceError::RepeatedElement(
                self.name(x).to_owned(),
                self.name(y).to_owned(),
                self.name(z).to_owned(),
            ));
        }
        Ok(self.triples.insert((x, y, z)))
    }

    pub fn add_named_pair(&mut self, x: &str, y: &str) -> Result<bool, InstanceError> {
        let (x, y) = (self.add_element(x), self.add_element(y));
        self.add_pair(x, y)
    }

    pub fn add_named_triple(&mut self, x: &str, y: &str, z: &str) -> Result<bool, InstanceError> {
        let (x, y, z) = (self.add_element(x), self.add_element(y), self.add_element(z));
        self.add_triple(x, y, z)
    }

    fn check(&self, e: usize) -> Result<(), InstanceError> {
        if e < self.len() {
            Ok(())
        } else {
            Err(InstanceError::UnknownElement(e))
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, e: usize) -> &str {
        self.symbols.name(e)
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.symbols.get(name)
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.triples.iter().copied()
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn triple_count(&self) -> usize {
        self.triples.len()
    }

    /// Plain Intermezzo: no pairs are required here, but no element may
    /// occur in two triples.
    pub fn check_disjoint_triples(&self) -> Result<(), InstanceError> {
        let mut seen = HashSet::new();
        for (x, y, z) in self.triples() {
            for e in [x, y, z] {
                if !seen.insert(e) {
                    return Err(InstanceError::SharedElement(self.name(e).to_owned()));
                }
            }
        }
        Ok(())
    }

    /// Triples grouped by their first component.
    pub(crate) fn triples_by_first(&self) -> Vec<Vec<(usize, usize)>> {
        let mut by_first = vec![Vec::new(); self.len()];
        for (x, y, z) in self.triples() {
            by_first[x].push((y, z));
        }
        by_first
    }
}

/// The closure of the pairs together with `y ≺ z` for every triple. Every
/// feasible ordering is a linear extension of it; a cycle proves
/// infeasibility.
pub fn induced_order(inst: &GimInstance) -> Result<PartialOrder, Vec<usize>> {
    PartialOrder::from_pairs(inst.len(), inst.pairs().chain(inst.triples().map(|(_, y, z)| (y, z))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintViolation {
    WrongLength { expected: usize, found: usize },
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

/// Names the first violated constraint, pairs before triples.
pub fn check_ordering(inst: &GimInstance, order: &Ordering) -> Result<(), ConstraintViolation> {
    if order.len() != inst.len() {
        return Err(ConstraintViolation::WrongLength { expected: inst.len(), found: order.len() });
    }
    if let Some((x, y)) = inst.pairs().find(|&(x, y)| !order.precedes(x, y)) {
        return Err(ConstraintViolation::Pair(x, y));
    }
    let ok = |&(x, y, z): &(usize, usize, usize)| {
        let (px, py, pz) = (order.position(x), order.position(y), order.position(z));
        (px < py && py < pz) || (py < pz && pz < px)
    };
    match inst.triples().find(|t| !ok(t)) {
        Some((x, y, z)) => Err(ConstraintViolation::Triple(x, y, z)),
        None => Ok(()),
    }
}

pub fn verify_ordering(inst: &GimInstance, order: &Ordering) -> bool {
    check_ordering(inst, order).is_ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Feasible,
    Infeasible,
    ResourceExceeded,
}

impl SolveStatus {
    pub fn label(self) -> &'static str {
        match self {
            SolveStatus::Feasible => "FEASIBLE",
            SolveStatus::Infeasible => "INFEASIBLE",
            SolveStatus::ResourceExceeded => "RESOURCE-EXCEEDED",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    /// Search nodes (backtracking) or reachable states (DP).
    pub nodes: u64,
    /// DP table size, the product of chain lengths plus one.
    pub states: Option<u128>,
    /// `((n/k) + 1)^k` for the same `n` and chain count `k`.
    pub state_bound: Option<f64>,
    pub chains: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveResult {
    pub status: SolveStatus,
    pub witness: Option<Ordering>,
    pub stats: SolveStats,
}

impl SolveResult {
    pub(crate) fn infeasible(stats: SolveStats) -> Self {
        Self { status: SolveStatus::Infeasible, witness: None, stats }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == SolveStatus::Feasible
    }
}

pub const DEFAULT_BUDGET: u64 = 10_000_000;

const MEMO_LIMIT: usize = 1 << 22;

/// Exact search over prefixes. An element may be appended once all its
/// predecessors in the induced order are placed and no triple `(x, y, z)`
/// has `y` placed but `z` not.
pub fn solve_backtracking(inst: &GimInstance, budget: u64) -> SolveResult {
    let Ok(order) = induced_order(inst) else {
        return SolveResult::infeasible(SolveStats::default());
    };
    let mut by_middle = vec![Vec::new(); inst.len()];
    for (x, y, _) in inst.triples() {
        by_middle[y].push(x);
    }
    let mut search = Backtrack {
        order: &order,
        covers: hasse(&order).cover_edges().to_vec(),
        triples: inst.triples().collect(),
        by_first: inst.triples_by_first(),
        by_middle,
        placed: FixedBitSet::with_capacity(inst.len()),
        seq: Vec::with_capacity(inst.len()),
        failed: HashSet::new(),
        nodes: 0,
        budget,
    };
    let outcome = search.extend();
    let stats = SolveStats { nodes: search.nodes, ..SolveStats::default() };
    match outcome {
        Some(true) => {
            let witness = Ordering::new(search.seq).expect("each element placed once");
            debug_assert!(verify_ordering(inst, &witness));
            SolveResult { status: SolveStatus::Feasible, witness: Some(witness), stats }
        }
        Some(false) => SolveResult::infeasible(stats),
        None => SolveResult { status: SolveStatus::ResourceExceeded, witness: None, stats },
    }
}

struct Backtrack<'a> {
    order: &'a PartialOrder,
    covers: Vec<(usize, usize)>,
    triples: Vec<(usize, usize, usize)>,
    by_first: Vec<Vec<(usize, usize)>>,
    /// First elements of the triples each element is the middle of.
    by_middle: Vec<Vec<usize>>,
    placed: FixedBitSet,
    seq: Vec<usize>,
    failed: HashSet<FixedBitSet>,
    nodes: u64,
    budget: u64,
}

impl Backtrack<'_> {
    fn appendable(&self, x: usize) -> bool {
        !self.placed.contains(x)
            && self.order.below(x).is_subset(&self.placed)
            && self.by_first[x].iter().all(|&(y, z)| !self.placed.contains(y) || self.placed.contains(z))
    }

    /// Placing `x` now cannot hurt once every triple with `x` in the middle
    /// has its first element placed: moving `x` earlier in any completion
    /// keeps it valid.
    fn safe(&self, x: usize) -> bool {
        self.by_middle[x].iter().all(|&w| self.placed.contains(w))
    }

    /// A cycle among the precedences the unplaced elements must still obey
    /// (the induced order, and `z ≺ x` for a triple `(x, y, z)` whose `y` is
    /// placed) rules out every completion.
    fn stuck(&self) -> bool {
        let n = self.order.len();
        let open = |v: usize| !self.placed.contains(v);
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in &self.covers {
            if open(u) {
                succ[u].push(v);
            }
        }
        for &(x, y, z) in &self.triples {
            if !open(y) && open(z) && open(x) {
                succ[z].push(x);
            }
        }
        let mut indeg = vec![0u32; n];
        for list in &succ {
            for &w in list {
                indeg[w] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| open(v) && indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &succ[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen < n - self.seq.len()
    }

    fn extend(&mut self) -> Option<bool> {
        let n = self.order.len();
        if self.seq.len() == n {
            return Some(true);
        }
        if self.failed.contains(&self.placed) {
            return Some(false);
        }
        if self.stuck() {
            if self.failed.len() < MEMO_LIMIT {
                self.failed.insert(self.placed.clone());
            }
            return Some(false);
        }
        let forced = (0..n).find(|&x| self.appendable(x) && self.safe(x));
        for x in 0..n {
            if forced.is_some_and(|f| f != x) || !self.appendable(x) {
                continue;
            }
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            self.placed.insert(x);
            self.seq.push(x);
            match self.extend() {
                Some(false) => {
                    self.seq.pop();
                    self.placed.set(x, false);
                }
                other => return other,
            }
        }
        if self.failed.len() < MEMO_LIMIT {
            self.failed.insert(self.placed.clone());
        }
        Some(false)
    }
}

/// Adds one fresh element `w` placed before everything and turns each pair
/// `(y, z)` into the triple `(w, y, z)`. Instances without pairs are
/// returned unchanged. The second value is the fresh element.
pub fn lower_pairs_to_triples(inst: &GimInstance) -> (GimInstance, Option<usize>) {
    if inst.pair_count() == 0 {
        return (inst.clone(), None);
    }
    let mut out = GimInstance { symbols: inst.symbols.clone(), pairs: BTreeSet::new(), triples: inst.triples.clone() };
    let w = out.add_element(&inst.symbols.fresh("w"));
    for (y, z) in inst.pairs() {
        out.triples.insert((w, y, z));
    }
    (out, Some(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(pairs: &[(&str, &str)], triples: &[(&str, &str, &str)]) -> GimInstance {
        let mut g = GimInstance::new();
        for (x, y) in pairs {
            g.add_named_pair(x, y).unwrap();
        }
        for (x, y, z) in triples {
            g.add_named_triple(x, y, z).unwrap();
        }
        g
    }

    fn ord(g: &GimInstance, names: &[&str]) -> Ordering {
        Ordering::new(names.iter().map(|n| g.element(n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn single_triple_order() {
        let g = named(&[], &[("c", "a", "b")]);
        let p = induced_order(&g).unwrap();
        assert_eq!(p.strict_pairs().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn inconsistent_pair() {
        let g = named(&[("z", "y")], &[("x", "y", "z")]);
        let (y, z) = (g.element("y").unwrap(), g.element("z").unwrap());
        let mut cyc = vec![y, z];
        cyc.sort();
        assert_eq!(induced_order(&g), Err(cyc));
        assert_eq!(solve_backtracking(&g, DEFAULT_BUDGET).status, SolveStatus::Infeasible);
    }

    #[test]
    fn verify_examples() {
        let mut g = GimInstance::new();
        for e in ["a", "b", "c"] {
            g.add_element(e);
        }
        g.add_named_triple("c", "a", "b").unwrap();
        assert!(verify_ordering(&g, &ord(&g, &["a", "b", "c"])));
        assert!(!verify_ordering(&g, &ord(&g, &["a", "c", "b"])));
        assert!(verify_ordering(&GimInstance::new(), &Ordering::identity(0)));
    }

    #[test]
    fn repeated_elements_rejected() {
        let mut g = GimInstance::new();
        assert!(g.add_named_triple("a", "b", "a").is_err());
        assert!(g.add_named_pair("a", "a").is_err());
    }

    #[test]
    fn crossing_triples_infeasible() {
        let g = named(&[], &[("x", "y", "z"), ("z", "y", "x")]);
        assert_eq!(solve_backtracking(&g, DEFAULT_BUDGET).status, SolveStatus::Infeasible);
    }

    #[test]
    fn total_pairs_give_unique_extension() {
        let g = named(&[("a", "b"), ("b", "c"), ("c", "d")], &[]);
        let res = solve_backtracking(&g, DEFAULT_BUDGET);
        assert_eq!(res.witness.unwrap().sequence(), &[0, 1, 2, 3]);
    }

    #[test]
    fn lowering_pairs() {
        let g = named(&[("a", "b")], &[]);
        let (h, w) = lower_pairs_to_triples(&g);
        let w = w.unwrap();
        assert_eq!(h.name(w), "w");
        assert_eq!(h.pair_count(), 0);
        assert_eq!(h.triples().collect::<Vec<_>>(), vec![(w, 0, 1)]);
        let plain = named(&[], &[("c", "a", "b")]);
        assert_eq!(lower_pairs_to_triples(&plain), (plain.clone(), None));
    }

    #[test]
    fn lowering_avoids_name_clash() {
        let g = named(&[("w", "b")], &[]);
        let (h, w) = lower_pairs_to_triples(&g);
        assert_eq!(h.name(w.unwrap()), "w'");
    }

    #[test]
    fn disjointness() {
        assert!(named(&[], &[("a", "b", "c"), ("d", "e", "f")]).check_disjoint_triples().is_ok());
        assert!(named(&[], &[("a", "b", "c"), ("d", "e", "a")]).check_disjoint_triples().is_err());
    }
}
