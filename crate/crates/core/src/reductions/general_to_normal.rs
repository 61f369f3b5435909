//! General Intermezzo to Intermezzo with pairwise disjoint triples.
//!
//! Every element `v` becomes a chain `a, b_1..b_n, c_1..c_m, d` where the
//! `c`s stand for the triples led by `v`. Triples then only touch `b`, `c`
//! and fresh splitter copies of `a` and `d`, one copy per triple.

use crate::error::ReductionError;
use crate::intermezzo::{induced_order, GimInstance};
use crate::order::hasse;
use crate::ordering::Ordering;

use super::WitnessMap;

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub instance: GimInstance,
    pub map: WitnessMap,
    /// Target elements replacing each source element, in chain order.
    blocks: Vec<Vec<usize>>,
    /// The `a` element of each block.
    anchors: Vec<usize>,
}

impl NormalForm {
    /// Expands an ordering of the source elements block by block.
    pub fn im_order(&self, source: &Ordering) -> Ordering {
        let seq = source.sequence().iter().flat_map(|&v| self.blocks[v].iter().copied()).collect();
        Ordering::new(seq).expect("blocks partition the target")
    }

    /// Restricts a target ordering to the anchors.
    pub fn gim_order(&self, target: &Ordering) -> Ordering {
        let mut src: Vec<usize> = (0..self.anchors.len()).collect();
        src.sort_by_key(|&v| target.position(self.anchors[v]));
        Ordering::new(src).expect("one anchor per source element")
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

pub fn gim_to_im(inst: &GimInstance) -> Result<NormalForm, ReductionError> {
    let order = induced_order(inst)
        .map_err(|cyc| ReductionError::InconsistentOrder(cyc.iter().map(|&e| inst.name(e).to_owned()).collect()))?;
    let n = inst.len();
    let mut led: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (x, y, z) in inst.triples() {
        led[x].push((y, z));
    }
    // Triples before splitting, as (first element name, a-owner, d-owner).
    let mut pending: Vec<(String, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            pending.push((format!("b.{}.{}", i + 1, j + 1), j, j));
        }
        for (l, &(h, j)) in led[i].iter().enumerate() {
            pending.push((format!("c.{}.{}", i + 1, l + 1), h, j));
        }
    }
    let mut a_split = vec![0usize; n];
    let mut d_split = vec![0usize; n];
    let mut split_names = Vec::with_capacity(pending.len());
    for (_, h, j) in &pending {
        a_split[*h] += 1;
        d_split[*j] += 1;
        split_names.push((format!("a.{}~{}", h + 1, a_split[*h]), format!("d.{}~{}", j + 1, d_split[*j])));
    }

    let mut out = GimInstance::new();
    let mut map = WitnessMap::new();
    let mut blocks = Vec::with_capacity(n);
    let mut anchors = Vec::with_capacity(n);
    for i in 0..n {
        let src = Some(inst.name(i));
        let k = i + 1;
        let mut block = Vec::new();
        let mut push = |name: String, tag: &str, out: &mut GimInstance| {
            block.push(out.add_element(&name));
            map.add(tag, &name, src);
        };
        for t in 1..=a_split[i] {
            push(format!("a.{k}~{t}"), "a-splitter", &mut out);
        }
        push(format!("a.{k}"), "a", &mut out);
        anchors.push(out.len() - 1);
        for j in 1..=n {
            push(format!("b.{k}.{j}"), "b", &mut out);
        }
        for l in 1..=led[i].len() {
            push(format!("c.{k}.{l}"), "c", &mut out);
        }
        push(format!("d.{k}"), "d", &mut out);
        for t in 1..=d_split[i] {
            push(format!("d.{k}~{t}"), "d-splitter", &mut out);
        }
        for w in block.windows(2) {
            out.add_pair(w[0], w[1]).expect("distinct");
        }
        blocks.push(block);
    }
    for &(u, v) in hasse(&order).cover_edges() {
        let (last, first) = (*blocks[u].last().unwrap(), blocks[v][0]);
        out.add_pair(last, first).expect("distinct");
    }
    for ((x, _, _), (a, d)) in pending.iter().zip(&split_names) {
        let id = |name: &str| out.element(name).expect("declared above");
        let (x, a, d) = (id(x), id(a), id(d));
        out.add_triple(x, a, d).expect("distinct");
    }
    debug_assert!(out.check_disjoint_triples().is_ok());
    Ok(NormalForm { instance: out, map, blocks, anchors })
}
