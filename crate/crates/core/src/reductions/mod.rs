//! Constructive reductions between L-tree recognition, (General) Intermezzo,
//! 3-SAT and Multicolor Clique, each with witness translation.

mod general_to_normal;
mod mcp;
mod sat;
mod tree_intermezzo;
mod unrooted;

use std::collections::HashMap;

pub use general_to_normal::{gim_to_im, NormalForm};
pub use mcp::{clique_from_order, mcp_to_gim, order_from_clique, MulticolorGraph};
pub use sat::{assignment_from_order, order_from_assignment, sat_to_ltree, CnfFormula};
pub use tree_intermezzo::{gim_cstree_to_ltree, ltree_to_gim, HasseLTree, TreeGim, Variant};
pub use unrooted::{rooted_to_unrooted, UnrootedGadget};

/// One synthesized element: its role tag, its name in the target instance,
/// and optionally the source object it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleEntry {
    pub tag: String,
    pub name: String,
    pub source: Option<String>,
}

/// Name table of a reduction output. Every target element has exactly one
/// entry.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WitnessMap {
    entries: Vec<RoleEntry>,
    by_name: HashMap<String, usize>,
}

impl WitnessMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a role. Panics if `name` already has one; reductions never
    /// reuse names.
    pub fn add(&mut self, tag: &str, name: &str, source: Option<&str>) {
        let prev = self.by_name.insert(name.to_owned(), self.entries.len());
        assert!(prev.is_none(), "element `{name}` tagged twice");
        self.entries.push(RoleEntry { tag: tag.to_owned(), name: name.to_owned(), source: source.map(str::to_owned) });
    }

    pub fn entries(&self) -> &[RoleEntry] {
        &self.entries
    }

    pub fn role(&self, name: &str) -> Option<&RoleEntry> {
        self.by_name.get(name).map(|&i| &self.entries[i])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of entries per tag.
    pub fn tag_counts(&self) -> Vec<(String, usize)> {
        let mut counts: Vec<(String, usize)> = Vec::new();
        for e in &self.entries {
            match counts.iter_mut().find(|(t, _)| *t == e.tag) {
                Some((_, c)) => *c += 1,
                None => counts.push((e.tag.clone(), 1)),
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[should_panic]
    fn duplicate_role_panics() {
        let mut m = WitnessMap::new();
        m.add("s", "s", None);
        m.add("s", "s", None);
    }

    #[test]
    fn lookup_and_counts() {
        let mut m = WitnessMap::new();
        m.add("vertex", "r", Some("r"));
        m.add("vertex", "a", Some("a"));
        m.add("separator", "s", None);
        assert_eq!(m.role("a").unwrap().tag, "vertex");
        assert_eq!(m.tag_counts(), vec![("vertex".into(), 2), ("separator".into(), 1)]);
    }
}
