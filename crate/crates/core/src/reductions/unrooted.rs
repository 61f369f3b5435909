//! Gadget turning rooted recognition into unrooted recognition: a triangle
//! `a, b, c` hangs off the root so that no accepted ordering can start
//! anywhere but at the old root.

use crate::graph::{LTreeInstance, RootedSpanningTree};

use super::WitnessMap;

#[derive(Clone, Debug)]
pub struct UnrootedGadget {
    /// Graph plus tree; the tree stays rooted at the old root for
    /// convenience but callers should treat it as unrooted.
    pub instance: LTreeInstance,
    pub map: WitnessMap,
    /// Indices of the three added vertices `a`, `b`, `c`.
    pub added: [usize; 3],
}

/// Adds vertices `a, b, c` with edges `ab, ac, bc, ar` and tree edges
/// `ar, ab, ac`. Names get primes appended on collision.
pub fn rooted_to_unrooted(inst: &LTreeInstance) -> UnrootedGadget {
    let mut graph = inst.graph().clone();
    let mut map = WitnessMap::new();
    for v in 0..graph.vertex_count() {
        map.add("vertex", graph.name(v), Some(graph.name(v)));
    }
    let root = inst.root();
    let mut added = [0; 3];
    for (slot, base) in added.iter_mut().zip(["a", "b", "c"]) {
        let name = graph.symbols().fresh(base);
        *slot = graph.add_vertex(&name);
        map.add("gadget", &name, None);
    }
    let [a, b, c] = added;
    for (u, v) in [(a, b), (a, c), (b, c), (a, root)] {
        graph.add_edge(u, v).expect("fresh vertices");
    }
    let mut parent = inst.tree().parents().to_vec();
    parent.extend([Some(root), Some(a), Some(a)]);
    let tree = RootedSpanningTree::new(root, parent);
    let instance = LTreeInstance::new(graph, tree).expect("gadget keeps a spanning tree");
    UnrootedGadget { instance, map, added }
}
