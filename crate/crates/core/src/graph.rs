//! Undirected graphs, rooted spanning trees and last-in trees of search
//! orderings, plus the two structural obstructions used throughout:
//! hook configurations and U-bends.

use std::fmt;

use crate::error::GraphError;
use crate::ordering::Ordering;
use crate::symbols::Symbols;

/// A simple undirected graph with named vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    symbols: Symbols,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds (or finds) a vertex by name.
    pub fn add_vertex(&mut self, name: &str) -> usize {
        let v = self.symbols.intern(name);
        if v == self.adj.len() {
            self.adj.push(Vec::new());
        }
        v
    }

    /// Adds edge `uv`; returns whether it was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.adj.len();
        if u >= n || v >= n {
            return Err(GraphError::UnknownVertex(u.max(v)));
        }
        if u == v {
            return Err(GraphError::SelfLoop(self.name(u).to_owned()));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(at) => {
                self.adj[u].insert(at, v);
                let back = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(back, u);
                self.edge_count += 1;
                Ok(true)
            }
        }
    }

    pub fn add_named_edge(&mut self, u: &str, v: &str) -> Result<bool, GraphError> {
        let (u, v) = (self.add_vertex(u), self.add_vertex(v));
        self.add_edge(u, v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbors of `v` in increasing index order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn name(&self, v: usize) -> &str {
        self.symbols.name(v)
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.symbols.get(name)
    }

    pub fn symbols(&self) -> &Symbols {
        &self.symbols
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }
}

/// A spanning tree given by parent pointers. Validity against a host graph
/// is checked by [`validate_instance`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedSpanningTree {
    root: usize,
    parent: Vec<Option<usize>>,
}

impl RootedSpanningTree {
    pub fn new(root: usize, parent: Vec<Option<usize>>) -> Self {
        Self { root, parent }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Tree edges as `(parent, child)`, ordered by child.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (p, v)))
    }

    /// Re-roots the underlying undirected tree at `root`. Returns `None` if
    /// the parent links do not form a tree spanning `0..n`.
    pub fn rerooted(&self, root: usize) -> Option<Self> {
        let n = self.parent.len();
        if root >= n {
            return None;
        }
        let mut adj = vec![Vec::new(); n];
        for (p, c) in self.edges() {
            if p >= n {
                return None;
            }
            adj[p].push(c);
            adj[c].push(p);
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    count += 1;
                    stack.push(w);
                }
            }
        }
        (count == n && self.edges().count() == n - 1).then_some(Self { root, parent })
    }
}

/// A violated tree invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Defect {
    SizeMismatch { graph: usize, tree: usize },
    EmptyGraph,
    RootOutOfRange(usize),
    RootHasParent(usize),
    MissingParent(usize),
    ParentOutOfRange { child: usize, parent: usize },
    NonEdgeParentLink { child: usize, parent: usize },
    Cycle(Vec<usize>),
}

impl fmt::Display for Defect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Defect::SizeMismatch { graph, tree } => {
                write!(f, "tree covers {tree} vertices but the graph has {graph}")
            }
            Defect::EmptyGraph => write!(f, "empty graph"),
            Defect::RootOutOfRange(r) => write!(f, "root index {r} out of range"),
            Defect::RootHasParent(r) => write!(f, "root {r} has a parent"),
            Defect::MissingParent(v) => write!(f, "vertex {v} has no parent (disconnected)"),
            Defect::ParentOutOfRange { child, parent } => {
                write!(f, "parent {parent} of vertex {child} out of range")
            }
            Defect::NonEdgeParentLink { child, parent } => {
                write!(f, "non-edge parent link {parent} -> {child}")
            }
            Defect::Cycle(vs) => write!(f, "cycle through {vs:?}"),
        }
    }
}

/// Checks that `tree` is a spanning tree of `graph` rooted at its root.
pub fn validate_instance(graph: &Graph, tree: &RootedSpanningTree) -> Result<(), Vec<Defect>> {
    let n = graph.vertex_count();
    let mut defects = Vec::new();
    if n == 0 {
        return Err(vec![Defect::EmptyGraph]);
    }
    if tree.len() != n {
        return Err(vec![Defect::SizeMismatch { graph: n, tree: tree.len() }]);
    }
    if tree.root >= n {
        return Err(vec![Defect::RootOutOfRange(tree.root)]);
    }
    if tree.parent[tree.root].is_some() {
        defects.push(Defect::RootHasParent(tree.root));
    }
    for v in (0..n).filter(|&v| v != tree.root) {
        match tree.parent[v] {
            None => defects.push(Defect::MissingParent(v)),
            Some(p) if p >= n => defects.push(Defect::ParentOutOfRange { child: v, parent: p }),
            Some(p) if !graph.has_edge(p, v) => defects.push(Defect::NonEdgeParentLink { child: v, parent: p }),
            Some(_) => {}
        }
    }
    // Follow parent links; 0 = unvisited, 1 = on current walk, 2 = reaches root.
    let mut state = vec![0u8; n];
    state[tree.root] = 2;
    for start in 0..n {
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            match state[cur] {
                2 => break,
                1 => {
                    let at = walk.iter().position(|&w| w == cur).unwrap_or(0);
                    let mut cycle = walk[at..].to_vec();
                    cycle.sort_unstable();
                    if !defects.contains(&Defect::Cycle(cycle.clone())) {
                        defects.push(Defect::Cycle(cycle));
                    }
                    break;
                }
                _ => {}
            }
            state[cur] = 1;
            walk.push(cur);
            match tree.parent[cur] {
                Some(p) if p < n => cur = p,
                _ => break,
            }
        }
        for w in walk {
            state[w] = 2;
        }
    }
    if defects.is_empty() {
        Ok(())
    } else {
        Err(defects)
    }
}

/// Hook configuration: `anchor` is the parent of `point`, `point–eye` is a
/// non-tree edge, and `eye` descends from `anchor` but not from `point`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hook {
    pub point: usize,
    pub eye: usize,
    pub anchor: usize,
}

/// U-bend: a non-tree edge `child_a–child_b` between two non-root vertices
/// together with their parents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UBend {
    pub child_a: usize,
    pub child_b: usize,
    pub parent_a: usize,
    pub parent_b: usize,
}

/// Why an ordering fails to produce the expected L-tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderViolation {
    WrongLength { expected: usize, found: usize },
    WrongStart { expected: usize, found: usize },
    NotConnected(usize),
    WrongParent { vertex: usize, expected: usize, found: usize },
}

/// The first vertex of an ordering that has no earlier neighbor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotConnectedOrder(pub usize);

/// Connects every vertex to its rightmost earlier neighbor.
pub fn extract_ltree(graph: &Graph, order: &Ordering) -> Result<RootedSpanningTree, NotConnectedOrder> {
    let n = graph.vertex_count();
    let root = order.first().expect("ordering of a non-empty graph");
    let mut parent = vec![None; n];
    for (i, &v) in order.sequence().iter().enumerate().skip(1) {
        let p = graph
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| order.position(w) < i)
            .max_by_key(|&w| order.position(w))
            .ok_or(NotConnectedOrder(v))?;
        parent[v] = Some(p);
    }
    Ok(RootedSpanningTree::new(root, parent))
}

/// A graph together with a validated rooted spanning tree, with the derived
/// indices the algorithms need (children, Euler intervals, non-tree
/// adjacency).
#[derive(Clone, Debug)]
pub struct LTreeInstance {
    graph: Graph,
    tree: RootedSpanningTree,
    children: Vec<Vec<usize>>,
    non_tree: Vec<Vec<usize>>,
    enter: Vec<usize>,
    exit: Vec<usize>,
    depth: Vec<usize>,
}

impl PartialEq for LTreeInstance {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.tree == other.tree
    }
}

impl Eq for LTreeInstance {}

impl LTreeInstance {
    pub fn new(graph: Graph, tree: RootedSpanningTree) -> Result<Self, Vec<Defect>> {
        validate_instance(&graph, &tree)?;
        let n = graph.vertex_count();
        let mut children = vec![Vec::new(); n];
        for (p, c) in tree.edges() {
            children[p].push(c);
        }
        let non_tree = (0..n)
            .map(|v| {
                graph
                    .neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| tree.parent(v) != Some(w) && tree.parent(w) != Some(v))
                    .collect()
            })
            .collect();
        let mut enter = vec![0; n];
        let mut exit = vec![0; n];
        let mut depth = vec![0; n];
        let mut clock = 0;
        // Iterative preorder; exit stamps record the last preorder index in
        // the subtree.
        let mut stack = vec![(tree.root(), 0usize)];
        enter[tree.root()] = clock;
        clock += 1;
        while let Some((v, next)) = stack.pop() {
            if next < children[v].len() {
                stack.push((v, next + 1));
                let c = children[v][next];
                depth[c] = depth[v] + 1;
                enter[c] = clock;
                clock += 1;
                stack.push((c, 0));
            } else {
                exit[v] = clock - 1;
            }
        }
        Ok(Self { graph, tree, children, non_tree, enter, exit, depth })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn tree(&self) -> &RootedSpanningTree {
        &self.tree
    }

    pub fn root(&self) -> usize {
        self.tree.root()
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.tree.parent(v)
    }

    /// Children in increasing index order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Neighbors of `v` joined to it by non-tree edges.
    pub fn non_tree_neighbors(&self, v: usize) -> &[usize] {
        &self.non_tree[v]
    }

    /// Non-tree edges `(u, v)` with `u < v`.
    pub fn non_tree_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.non_tree.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_tree_edge(&self, u: usize, v: usize) -> bool {
        self.tree.parent(v) == Some(u) || self.tree.parent(u) == Some(v)
    }

    /// `a` is an ancestor of `d` or equal to it.
    pub fn is_ancestor_or_self(&self, a: usize, d: usize) -> bool {
        self.enter[a] <= self.enter[d] && self.enter[d] <= self.exit[a]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Height in edges.
    pub fn height(&self) -> usize {
        self.depth.iter().copied().max().unwrap_or(0)
    }

    /// Leaves other than the root.
    pub fn branch_leaves(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| v != self.root() && self.children[v].is_empty()).collect()
    }

    pub fn name(&self, v: usize) -> &str {
        self.graph.name(v)
    }

    /// All hook configurations, sorted by point then eye. Both orientations
    /// of every non-tree edge are tested.
    pub fn find_hooks(&self) -> Vec<Hook> {
        let mut hooks = Vec::new();
        for (u, v) in self.non_tree_edges() {
            for (point, eye) in [(u, v), (v, u)] {
                let Some(anchor) = self.parent(point) else { continue };
                if self.is_ancestor_or_self(anchor, eye) && !self.is_ancestor_or_self(point, eye) {
                    hooks.push(Hook { point, eye, anchor });
                }
            }
        }
        hooks.sort();
        hooks
    }

    /// One U-bend per non-tree edge whose endpoints both have parents.
    pub fn find_ubends(&self) -> Vec<UBend> {
        self.non_tree_edges()
            .filter_map(|(a, b)| {
                Some(UBend { child_a: a, child_b: b, parent_a: self.parent(a)?, parent_b: self.parent(b)? })
            })
            .collect()
    }

    /// Depth-first preorder of the tree alone, children in index order.
    pub fn dfs_order(&self) -> Ordering {
        let mut seq = Vec::with_capacity(self.vertex_count());
        let mut stack = vec![self.root()];
        while let Some(v) = stack.pop() {
            seq.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        Ordering::new(seq).expect("tree preorder is a permutation")
    }

    /// Checks that `order` starts at the root and has this tree as its
    /// L-tree, naming the first problem otherwise.
    pub fn check_order(&self, order: &Ordering) -> Result<(), OrderViolation> {
        let n = self.vertex_count();
        if order.len() != n {
            return Err(OrderViolation::WrongLength { expected: n, found: order.len() });
        }
        let first = order.first().expect("non-empty");
        if first != self.root() {
            return Err(OrderViolation::WrongStart { expected: self.root(), found: first });
        }
        let extracted = extract_ltree(&self.graph, order).map_err(|e| OrderViolation::NotConnected(e.0))?;
        for &v in order.sequence().iter().skip(1) {
            let found = extracted.parent(v).expect("non-root has a parent");
            let expected = self.parent(v).expect("non-root has a parent");
            if found != expected {
                return Err(OrderViolation::WrongParent { vertex: v, expected, found });
            }
        }
        Ok(())
    }

    pub fn verify_order(&self, order: &Ordering) -> bool {
        self.check_order(order).is_ok()
    }
}

/// Free-function form of [`LTreeInstance::verify_order`] for unvalidated input.
pub fn verify_ltree_order(graph: &Graph, tree: &RootedSpanningTree, order: &Ordering) -> bool {
    match LTreeInstance::new(graph.clone(), tree.clone()) {
        Ok(inst) => inst.verify_order(order),
        Err(_) => false,
    }
}

/// Builds an instance from named tree edges `(parent, child)` and named
/// non-tree edges. Vertices are indexed by first appearance, root first.
pub fn instance_from_names(
    root: &str,
    tree_edges: &[(&str, &str)],
    extra_edges: &[(&str, &str)],
) -> Result<LTreeInstance, String> {
    let mut g = Graph::new();
    g.add_vertex(root);
    for (p, c) in tree_edges.iter().chain(extra_edges) {
        g.add_named_edge(p, c).map_err(|e| e.to_string())?;
    }
    let mut parent = vec![None; g.vertex_count()];
    for (p, c) in tree_edges {
        parent[g.vertex(c).unwrap()] = g.vertex(p);
    }
    let tree = RootedSpanningTree::new(0, parent);
    LTreeInstance::new(g, tree).map_err(|d| format!("{d:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn crossed() -> LTreeInstance {
        instance_from_names("r", &[("r", "a"), ("r", "b"), ("a", "c"), ("b", "d")], &[("a", "d"), ("b", "c")]).unwrap()
    }

    fn seq(inst: &LTreeInstance, names: &[&str]) -> Ordering {
        Ordering::new(names.iter().map(|n| inst.graph().vertex(n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn crossed_is_valid() {
        let f = crossed();
        assert_eq!(f.vertex_count(), 5);
        assert!(validate_instance(f.graph(), f.tree()).is_ok());
    }

    #[test]
    fn non_edge_parent_is_a_defect() {
        let mut g = Graph::new();
        for v in ["r", "a", "b"] {
            g.add_vertex(v);
        }
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let t = RootedSpanningTree::new(0, vec![None, Some(0), Some(0)]);
        assert_eq!(validate_instance(&g, &t), Err(vec![Defect::NonEdgeParentLink { child: 2, parent: 0 }]));
    }

    #[test]
    fn two_cycle_is_a_defect() {
        let mut g = Graph::new();
        for v in ["r", "a", "b"] {
            g.add_vertex(v);
        }
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let t = RootedSpanningTree::new(0, vec![None, Some(2), Some(1)]);
        let defects = validate_instance(&g, &t).unwrap_err();
        assert!(defects.contains(&Defect::Cycle(vec![1, 2])));
    }

    #[test]
    fn self_loops_are_rejected() {
        let mut g = Graph::new();
        g.add_vertex("a");
        assert!(g.add_edge(0, 0).is_err());
    }

    #[test]
    fn extract_triangle() {
        let mut g = Graph::new();
        g.add_named_edge("r", "a").unwrap();
        g.add_named_edge("r", "b").unwrap();
        g.add_named_edge("a", "b").unwrap();
        let t = extract_ltree(&g, &Ordering::identity(3)).unwrap();
        assert_eq!(t.parent(1), Some(0));
        assert_eq!(t.parent(2), Some(1));
    }

    #[test]
    fn extract_crossed_reparents_c() {
        let f = crossed();
        let t = extract_ltree(f.graph(), &seq(&f, &["r", "a", "b", "c", "d"])).unwrap();
        let (b, c) = (f.graph().vertex("b").unwrap(), f.graph().vertex("c").unwrap());
        assert_eq!(t.parent(c), Some(b));
    }

    #[test]
    fn extract_reports_disconnected_prefix() {
        let mut g = Graph::new();
        g.add_named_edge("r", "a").unwrap();
        g.add_named_edge("a", "x").unwrap();
        let o = Ordering::new(vec![0, 2, 1]).unwrap();
        assert_eq!(extract_ltree(&g, &o), Err(NotConnectedOrder(2)));
    }

    #[test]
    fn path_order_verifies() {
        let p = instance_from_names("r", &[("r", "a"), ("a", "b")], &[]).unwrap();
        assert!(p.verify_order(&Ordering::identity(3)));
    }

    #[test]
    fn no_gs_order_of_crossed_verifies() {
        let f = crossed();
        let rest = ["a", "b", "c", "d"];
        let mut count = 0;
        for perm in permutations(&rest) {
            let mut names = vec!["r"];
            names.extend(perm);
            let o = seq(&f, &names);
            if extract_ltree(f.graph(), &o).is_ok() {
                count += 1;
                assert!(!f.verify_order(&o));
            }
        }
        assert_eq!(count, 12);
    }

    fn permutations<'a>(items: &[&'a str]) -> Vec<Vec<&'a str>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn wrong_start_is_named() {
        let p = instance_from_names("r", &[("r", "a")], &[]).unwrap();
        assert_eq!(
            p.check_order(&Ordering::new(vec![1, 0]).unwrap()),
            Err(OrderViolation::WrongStart { expected: 0, found: 1 })
        );
    }

    #[test]
    fn crossed_hooks_and_ubends() {
        let f = crossed();
        let v = |n| f.graph().vertex(n).unwrap();
        assert_eq!(
            f.find_hooks(),
            vec![
                Hook { point: v("a"), eye: v("d"), anchor: v("r") },
                Hook { point: v("b"), eye: v("c"), anchor: v("r") },
            ]
        );
        assert_eq!(f.find_ubends().len(), 2);
    }

    #[test]
    fn tree_only_has_no_obstructions() {
        let p = instance_from_names("r", &[("r", "a"), ("a", "b"), ("r", "c")], &[]).unwrap();
        assert!(p.find_hooks().is_empty());
        assert!(p.find_ubends().is_empty());
    }

    #[test]
    fn triangle_star_has_hooks_both_ways() {
        let t = instance_from_names("r", &[("r", "a"), ("r", "b")], &[("a", "b")]).unwrap();
        assert_eq!(t.find_hooks(), vec![Hook { point: 1, eye: 2, anchor: 0 }, Hook { point: 2, eye: 1, anchor: 0 }]);
    }

    #[test]
    fn root_chords_make_no_ubend() {
        let p = instance_from_names("r", &[("r", "a"), ("a", "b")], &[("r", "b")]).unwrap();
        assert!(p.find_ubends().is_empty());
        assert!(p.find_hooks().is_empty());
    }

    #[test]
    fn dfs_orders() {
        let star = instance_from_names("r", &[("r", "l1"), ("r", "l2"), ("r", "l3")], &[]).unwrap();
        assert_eq!(star.dfs_order().sequence(), &[0, 1, 2, 3]);
        let f = crossed();
        let names: Vec<&str> = f.dfs_order().sequence().iter().map(|&v| f.name(v)).collect();
        assert_eq!(names, ["r", "a", "c", "b", "d"]);
    }

    #[test]
    fn ancestry_and_shape() {
        let f = crossed();
        let v = |n| f.graph().vertex(n).unwrap();
        assert!(f.is_ancestor_or_self(v("r"), v("d")));
        assert!(f.is_ancestor_or_self(v("a"), v("c")));
        assert!(!f.is_ancestor_or_self(v("a"), v("d")));
        assert_eq!(f.height(), 2);
        assert_eq!(f.branch_leaves(), vec![v("c"), v("d")]);
    }

    #[test]
    fn rerooting_keeps_edges() {
        let f = crossed();
        let t = f.tree().rerooted(3).unwrap();
        assert_eq!(t.root(), 3);
        assert!(LTreeInstance::new(f.graph().clone(), t).is_ok());
    }
}
