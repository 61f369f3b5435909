//! Deciding whether a rooted spanning tree is the L-tree of some generic
//! search ordering.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::graph::LTreeInstance;
use crate::order::PartialOrder;
use crate::ordering::Ordering;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Failed prefix sets remembered before the memo stops growing.
const MEMO_LIMIT: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecognitionStatus {
    Feasible,
    Infeasible,
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecognitionResult {
    pub status: RecognitionStatus,
    pub witness: Option<Ordering>,
    pub nodes_explored: u64,
}

impl RecognitionResult {
    fn infeasible(nodes_explored: u64) -> Self {
        Self { status: RecognitionStatus::Infeasible, witness: None, nodes_explored }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == RecognitionStatus::Feasible
    }
}

/// Pairs every accepted ordering must respect, closed under transitivity.
///
/// Starts from parent ≺ child and point ≺ eye for each hook, then resolves
/// U-bends: for a non-tree edge `xy` with parents `x'`, `y'` an accepted
/// ordering has either `x ≺ y'` or `y ≺ x'`, so whenever one side is already
/// contradicted the other is added. Returns the vertices of a cycle when the
/// pairs cannot all hold.
pub fn necessity_order(inst: &LTreeInstance) -> Result<PartialOrder, Vec<usize>> {
    let n = inst.vertex_count();
    let mut pairs: Vec<(usize, usize)> = inst.tree().edges().collect();
    pairs.extend(inst.find_hooks().iter().map(|h| (h.point, h.eye)));
    let bends = inst.find_ubends();
    let mut resolved = vec![false; bends.len()];
    loop {
        let order = PartialOrder::from_pairs(n, pairs.iter().copied())?;
        let at_most = |a: usize, b: usize| a == b || order.less(a, b);
        let mut changed = false;
        for (b, done) in bends.iter().zip(resolved.iter_mut()) {
            if *done {
                continue;
            }
            let (x, y, xp, yp) = (b.child_a, b.child_b, b.parent_a, b.parent_b);
            if at_most(yp, x) {
                pairs.push((y, xp));
            } else if at_most(xp, y) {
                pairs.push((x, yp));
            } else {
                continue;
            }
            *done = true;
            changed = true;
        }
        if !changed {
            return Ok(order);
        }
    }
}

/// The depth-first order of the tree when no hook configuration exists.
/// `None` only means the shortcut does not apply.
pub fn decide_hookfree(inst: &LTreeInstance) -> Option<Ordering> {
    inst.find_hooks().is_empty().then(|| inst.dfs_order())
}

/// Exact search for an ordering whose L-tree is the instance tree, exploring
/// at most `budget` placements.
pub fn recognize_rooted(inst: &LTreeInstance, budget: u64) -> RecognitionResult {
    let Ok(necessary) = necessity_order(inst) else {
        return RecognitionResult::infeasible(0);
    };
    let mut search = Search::new(inst, &necessary, budget);
    let root = inst.root();
    search.place(root);
    search.nodes = 1;
    match search.extend() {
        Some(true) => {
            let witness = Ordering::new(search.seq).expect("search places every vertex once");
            debug_assert!(inst.verify_order(&witness));
            RecognitionResult {
                status: RecognitionStatus::Feasible,
                witness: Some(witness),
                nodes_explored: search.nodes,
            }
        }
        Some(false) => RecognitionResult::infeasible(search.nodes),
        None => RecognitionResult {
            status: RecognitionStatus::BudgetExhausted,
            witness: None,
            nodes_explored: search.nodes,
        },
    }
}

/// Tries every root in index order, sharing `budget` across attempts.
/// The instance tree is used only for its edges.
pub fn recognize_unrooted(inst: &LTreeInstance, budget: u64) -> (RecognitionResult, Option<usize>) {
    let mut spent = 0;
    let mut exhausted = false;
    for root in 0..inst.vertex_count() {
        let tree = inst.tree().rerooted(root).expect("instance tree spans the graph");
        let rooted = LTreeInstance::new(inst.graph().clone(), tree).expect("rerooting keeps a valid tree");
        let res = recognize_rooted(&rooted, budget - spent);
        spent += res.nodes_explored.min(budget - spent);
        match res.status {
            RecognitionStatus::Feasible => {
                return (RecognitionResult { nodes_explored: spent, ..res }, Some(root));
            }
            RecognitionStatus::BudgetExhausted => {
                exhausted = true;
                break;
            }
            RecognitionStatus::Infeasible => {}
        }
        if spent >= budget {
            exhausted = true;
            break;
        }
    }
    let status = if exhausted { RecognitionStatus::BudgetExhausted } else { RecognitionStatus::Infeasible };
    (RecognitionResult { status, witness: None, nodes_explored: spent }, None)
}

struct Search<'a> {
    inst: &'a LTreeInstance,
    /// Vertices that must be placed before each vertex.
    required: Vec<FixedBitSet>,
    /// `(gate, pending)` per vertex: it may not be placed while `gate` is
    /// placed and `pending` is not.
    guards: Vec<Vec<(usize, usize)>>,
    placed: FixedBitSet,
    /// How many unplaced vertices with a placed parent are non-tree
    /// neighbors of each vertex; placing a blocked vertex would steal their
    /// parent.
    blocked_by: Vec<u32>,
    seq: Vec<usize>,
    failed: HashSet<FixedBitSet>,
    nodes: u64,
    budget: u64,
}

impl<'a> Search<'a> {
    fn new(inst: &'a LTreeInstance, necessary: &PartialOrder, budget: u64) -> Self {
        let n = inst.vertex_count();
        let mut guards = vec![Vec::new(); n];
        for b in inst.find_ubends() {
            guards[b.parent_b].push((b.parent_a, b.child_a));
            guards[b.parent_a].push((b.parent_b, b.child_b));
        }
        Self {
            inst,
            required: (0..n).map(|v| necessary.below(v).clone()).collect(),
            guards,
            placed: FixedBitSet::with_capacity(n),
            blocked_by: vec![0; n],
            seq: Vec::with_capacity(n),
            failed: HashSet::new(),
            nodes: 0,
            budget,
        }
    }

    fn appendable(&self, v: usize) -> bool {
        !self.placed.contains(v)
            && self.inst.parent(v).is_some_and(|p| self.placed.contains(p))
            && self.blocked_by[v] == 0
            && self.required[v].is_subset(&self.placed)
            && self.guards[v].iter().all(|&(g, p)| !self.placed.contains(g) || self.placed.contains(p))
    }

    fn place(&mut self, v: usize) {
        self.placed.insert(v);
        self.seq.push(v);
        for &w in self.inst.non_tree_neighbors(v) {
            if v != self.inst.root() {
                self.blocked_by[w] -= 1;
            }
        }
        for &c in self.inst.children(v) {
            for &w in self.inst.non_tree_neighbors(c) {
                self.blocked_by[w] += 1;
            }
        }
    }

    fn unplace(&mut self, v: usize) {
        for &c in self.inst.children(v) {
            for &w in self.inst.non_tree_neighbors(c) {
                self.blocked_by[w] -= 1;
            }
        }
        for &w in self.inst.non_tree_neighbors(v) {
            if v != self.inst.root() {
                self.blocked_by[w] += 1;
            }
        }
        self.seq.pop();
        self.placed.set(v, false);
    }

    /// Looks for a cycle among precedences every completion must respect:
    /// tree edges, the static necessary order, an open vertex (placed
    /// parent) before its unplaced non-tree neighbors, and the U-bend
    /// consequence `x ≺ parent(y)` once `parent(x)` is placed.
    fn stuck(&self) -> bool {
        let n = self.inst.vertex_count();
        let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in (0..n).filter(|&v| !self.placed.contains(v)) {
            let p = self.inst.parent(v).expect("root is placed first");
            if !self.placed.contains(p) {
                succ[p].push(v);
            } else {
                for &w in self.inst.non_tree_neighbors(v) {
                    if !self.placed.contains(w) {
                        succ[v].push(w);
                    }
                }
            }
            for u in self.required[v].ones().filter(|&u| !self.placed.contains(u)) {
                succ[u].push(v);
            }
            for &(gate, pending) in &self.guards[v] {
                if self.placed.contains(gate) && !self.placed.contains(pending) {
                    succ[pending].push(v);
                }
            }
        }
        let mut indeg = vec![0u32; n];
        for list in &succ {
            for &w in list {
                indeg[w] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| !self.placed.contains(v) && indeg[v] == 0).collect();
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

    /// Appending `v` now cannot hurt when every non-tree neighbor of its
    /// children is already placed: any completion that places `v` later
    /// stays valid with `v` moved here.
    fn safe(&self, v: usize) -> bool {
        self.inst.children(v).iter().all(|&c| self.inst.non_tree_neighbors(c).iter().all(|&w| self.placed.contains(w)))
    }

    /// `Some(true)` on a full ordering, `Some(false)` when no completion
    /// exists, `None` once the budget runs out.
    fn extend(&mut self) -> Option<bool> {
        let n = self.inst.vertex_count();
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
        let forced = (0..n).find(|&v| self.appendable(v) && self.safe(v));
        for v in 0..n {
            if forced.is_some_and(|f| f != v) || !self.appendable(v) {
                continue;
            }
            if self.nodes >= self.budget {
                return None;
            }
            self.nodes += 1;
            self.place(v);
            match self.extend() {
                Some(false) => self.unplace(v),
                other => return other,
            }
        }
        if self.failed.len() < MEMO_LIMIT {
            self.failed.insert(self.placed.clone());
        }
        Some(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::instance_from_names;

    fn crossed() -> LTreeInstance {
        instance_from_names("r", &[("r", "a"), ("r", "b"), ("a", "c"), ("b", "d")], &[("a", "d"), ("b", "c")]).unwrap()
    }

    #[test]
    fn crossed_necessity_cycle() {
        let f = crossed();
        let v = |n| f.graph().vertex(n).unwrap();
        assert_eq!(necessity_order(&f), Err(vec![v("a"), v("b")]));
    }

    #[test]
    fn hookfree_necessity_is_ancestry() {
        let p = instance_from_names("r", &[("r", "a"), ("a", "b"), ("r", "c")], &[]).unwrap();
        let ord = necessity_order(&p).unwrap();
        assert_eq!(ord.strict_pair_count(), 4);
        assert!(ord.less(0, 2));
        assert!(!ord.comparable(1, 3));
    }

    #[test]
    fn triangle_star_is_infeasible() {
        let t = instance_from_names("r", &[("r", "a"), ("r", "b")], &[("a", "b")]).unwrap();
        assert!(necessity_order(&t).is_err());
        assert_eq!(recognize_rooted(&t, DEFAULT_BUDGET).status, RecognitionStatus::Infeasible);
    }

    #[test]
    fn hookfree_shortcut() {
        let p = instance_from_names("r", &[("r", "a"), ("a", "b")], &[("r", "b")]).unwrap();
        let o = decide_hookfree(&p).unwrap();
        assert_eq!(o.sequence(), &[0, 1, 2]);
        assert!(p.verify_order(&o));
        assert!(decide_hookfree(&crossed()).is_none());
    }

    #[test]
    fn crossed_rooted_infeasible() {
        let res = recognize_rooted(&crossed(), DEFAULT_BUDGET);
        assert_eq!(res.status, RecognitionStatus::Infeasible);
        assert!(res.nodes_explored <= 200);
    }

    #[test]
    fn triangle_path_is_feasible() {
        let t = instance_from_names("r", &[("r", "a"), ("a", "b")], &[("r", "b")]).unwrap();
        let res = recognize_rooted(&t, DEFAULT_BUDGET);
        assert!(res.is_feasible());
        assert!(t.verify_order(res.witness.as_ref().unwrap()));
    }

    #[test]
    fn hook_instance_needs_search() {
        // r-a-c, r-b; chord a-b makes b the eye of a hook with point a.
        let t = instance_from_names("r", &[("r", "a"), ("a", "c"), ("r", "b")], &[("c", "b")]).unwrap();
        let res = recognize_rooted(&t, DEFAULT_BUDGET);
        assert!(res.is_feasible());
        assert!(t.verify_order(res.witness.as_ref().unwrap()));
    }

    #[test]
    fn budget_is_respected() {
        let p = instance_from_names("r", &[("r", "a"), ("a", "b"), ("b", "c")], &[]).unwrap();
        let res = recognize_rooted(&p, 2);
        assert_eq!(res.status, RecognitionStatus::BudgetExhausted);
        assert!(res.nodes_explored <= 2);
    }

    #[test]
    fn unrooted_path_and_crossed() {
        let p = instance_from_names("r", &[("r", "a"), ("a", "b")], &[]).unwrap();
        let (res, root) = recognize_unrooted(&p, DEFAULT_BUDGET);
        assert!(res.is_feasible());
        assert_eq!(root, Some(0));
        // The crossed instance is recognizable once another vertex is the
        // root.
        let (res, root) = recognize_unrooted(&crossed(), DEFAULT_BUDGET);
        assert!(res.is_feasible());
        assert!(root.is_some());
    }
}
