//! Equivalence between rooted L-tree recognition and General Intermezzo
//! instances whose induced order is a cs-tree.

use crate::error::ReductionError;
use crate::graph::{Graph, LTreeInstance, RootedSpanningTree};
use crate::intermezzo::{induced_order, GimInstance};
use crate::order::{hasse, is_cs_tree};
use crate::ordering::Ordering;

use super::WitnessMap;

/// Where the separator element `s` sits in the induced order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Variant {
    /// `s` below the first child of the root: height grows by one.
    #[default]
    Height,
    /// `s` below everything: width equals the number of branch leaves.
    Width,
}

#[derive(Clone, Debug)]
pub struct TreeGim {
    pub instance: GimInstance,
    pub map: WitnessMap,
    /// The separator; every other element keeps its vertex index.
    pub separator: usize,
    pub variant: Variant,
}

impl TreeGim {
    /// Inserts the separator into an accepted vertex ordering.
    pub fn gim_order(&self, ltree_order: &Ordering) -> Ordering {
        let mut seq = ltree_order.sequence().to_vec();
        match self.variant {
            Variant::Height => seq.push(self.separator),
            Variant::Width => seq.insert(0, self.separator),
        }
        Ordering::new(seq).expect("separator is fresh")
    }

    /// Drops the separator from an intermezzo ordering.
    pub fn ltree_order(&self, gim_order: &Ordering) -> Ordering {
        let seq = gim_order.sequence().iter().copied().filter(|&e| e != self.separator).collect();
        Ordering::new(seq).expect("remaining elements are the vertices")
    }
}

/// Triples forcing parents before children, plus `(w, u, v)` for every
/// non-tree neighbor `w` of a vertex `v` with parent `u`; `s` is pinned by
/// one extra triple depending on the variant.
pub fn ltree_to_gim(inst: &LTreeInstance, variant: Variant) -> Result<TreeGim, ReductionError> {
    let root = inst.root();
    let Some(&first_child) = inst.children(root).first() else {
        return Err(ReductionError::TreeTooShallow(0));
    };
    let mut gim = GimInstance::new();
    let mut map = WitnessMap::new();
    for v in 0..inst.vertex_count() {
        gim.add_element(inst.name(v));
        map.add("vertex", inst.name(v), Some(inst.name(v)));
    }
    let s_name = inst.graph().symbols().fresh("s");
    let s = gim.add_element(&s_name);
    map.add("separator", &s_name, None);
    let add = |gim: &mut GimInstance, x, y, z| gim.add_triple(x, y, z).expect("distinct elements");
    match variant {
        Variant::Height => add(&mut gim, root, first_child, s),
        Variant::Width => add(&mut gim, first_child, s, root),
    };
    for (u, v) in inst.tree().edges() {
        add(&mut gim, s, u, v);
        for &w in inst.non_tree_neighbors(v) {
            add(&mut gim, w, u, v);
        }
    }
    Ok(TreeGim { instance: gim, map, separator: s, variant })
}

/// Output of [`gim_cstree_to_ltree`]: the graph keeps every element as a
/// vertex with the same index; proxies follow.
#[derive(Clone, Debug)]
pub struct HasseLTree {
    pub instance: LTreeInstance,
    pub map: WitnessMap,
    /// Owner element of proxy `elements + i`.
    pub proxy_owners: Vec<usize>,
}

impl HasseLTree {
    fn elements(&self) -> usize {
        self.instance.vertex_count() - self.proxy_owners.len()
    }

    /// Places each proxy right after its owner.
    pub fn ltree_order(&self, gim_order: &Ordering) -> Ordering {
        let n = self.elements();
        let mut proxies = vec![Vec::new(); n];
        for (i, &o) in self.proxy_owners.iter().enumerate() {
            proxies[o].push(n + i);
        }
        let seq =
            gim_order.sequence().iter().flat_map(|&e| std::iter::once(e).chain(proxies[e].iter().copied())).collect();
        Ordering::new(seq).expect("proxies are fresh")
    }

    /// Drops the proxies.
    pub fn gim_order(&self, ltree_order: &Ordering) -> Ordering {
        let n = self.elements();
        Ordering::new(ltree_order.sequence().iter().copied().filter(|&v| v < n).collect()).expect("elements kept")
    }
}

/// The Hasse diagram becomes the spanning tree; each triple `(x, y, z)`
/// adds chords from `x` to every vertex after `y` on the path down to `z`.
///
/// A chord `x–w` also forbids `w` between `x` and its parent. Where that is
/// not already implied (`x` is the root, `w` is comparable to `x`, or the
/// triple `(w, parent(x), x)` exists) the chord is attached to a pendant
/// proxy child of `x` instead, which an ordering places right after `x`.
pub fn gim_cstree_to_ltree(inst: &GimInstance) -> Result<HasseLTree, ReductionError> {
    if inst.pair_count() > 0 {
        return Err(ReductionError::HasPairs);
    }
    let order = induced_order(inst)
        .map_err(|cyc| ReductionError::InconsistentOrder(cyc.iter().map(|&e| inst.name(e).to_owned()).collect()))?;
    if inst.is_empty() || !is_cs_tree(&order) {
        return Err(ReductionError::NotCsTree);
    }
    let h = hasse(&order);
    let n = inst.len();
    let parent: Vec<Option<usize>> = (0..n).map(|x| h.lower_covers(x).first().copied()).collect();
    let root = (0..n).find(|&x| parent[x].is_none()).expect("cs-tree has a minimum");
    let mut graph = Graph::new();
    let mut map = WitnessMap::new();
    for e in 0..n {
        graph.add_vertex(inst.name(e));
        map.add("vertex", inst.name(e), Some(inst.name(e)));
    }
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            graph.add_edge(p, v).expect("distinct");
        }
    }
    let triples: std::collections::HashSet<(usize, usize, usize)> = inst.triples().collect();
    let safe = |x: usize, w: usize| match parent[x] {
        None => true,
        Some(p) => order.comparable(x, w) || triples.contains(&(w, p, x)),
    };
    let mut chords = Vec::new();
    for (x, y, z) in inst.triples() {
        let mut w = z;
        while w != y {
            if w == x {
                return Err(ReductionError::ForcedBetween(
                    inst.name(x).to_owned(),
                    inst.name(y).to_owned(),
                    inst.name(z).to_owned(),
                ));
            }
            if parent[w] != Some(x) && parent[x] != Some(w) {
                chords.push((x, w));
            }
            w = parent[w].expect("y is an ancestor of z");
        }
    }
    let mut proxy_of = vec![None; n];
    let mut proxy_owners = Vec::new();
    for (x, w) in chords {
        let from = if safe(x, w) {
            x
        } else {
            *proxy_of[x].get_or_insert_with(|| {
                let name = graph.symbols().fresh(&format!("{}'", inst.name(x)));
                let v = graph.add_vertex(&name);
                map.add("proxy", &name, Some(inst.name(x)));
                graph.add_edge(x, v).expect("fresh");
                proxy_owners.push(x);
                v
            })
        };
        graph.add_edge(from, w).expect("distinct");
    }
    let parent = parent.into_iter().chain(proxy_owners.iter().map(|&x| Some(x))).collect();
    let tree = RootedSpanningTree::new(root, parent);
    let instance = LTreeInstance::new(graph, tree).map_err(|d| ReductionError::Internal(format!("{d:?}")))?;
    Ok(HasseLTree { instance, map, proxy_owners })
}
