//! Dynamic program over prefixes of a minimum chain partition of the
//! induced order. A prefix closed under the induced order is determined by
//! how many elements of each chain it contains, so the table has
//! `Π (len_i + 1)` entries.

use crate::intermezzo::{induced_order, GimInstance, SolveResult, SolveStats, SolveStatus};
use crate::order::chain_partition;
use crate::ordering::Ordering;

pub const DEFAULT_STATE_CAP: u128 = 1 << 27;

/// Entry value of the all-empty state.
const START: u8 = u8::MAX;
/// Chain indices must fit below `START` after the +1 shift.
const MAX_CHAINS: usize = (u8::MAX - 1) as usize;

/// Chain structure and table size for an instance, without filling.
#[derive(Clone, Debug, PartialEq)]
pub struct DpShape {
    pub chains: Vec<Vec<usize>>,
    pub states: u128,
    pub state_bound: f64,
}

/// Computes the chain partition the DP would use. `None` if the induced
/// order is cyclic.
pub fn dp_shape(inst: &GimInstance) -> Option<DpShape> {
    let order = induced_order(inst).ok()?;
    let chains = chain_partition(&order).into_chains();
    let states = chains.iter().fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128 + 1));
    let (n, k) = (inst.len() as f64, chains.len() as i32);
    let state_bound = if k == 0 { 1.0 } else { (n / k as f64 + 1.0).powi(k) };
    Some(DpShape { chains, states, state_bound })
}

pub fn solve_dp(inst: &GimInstance, state_cap: u128) -> SolveResult {
    let Some(shape) = dp_shape(inst) else {
        return SolveResult::infeasible(SolveStats::default());
    };
    let mut stats = SolveStats {
        nodes: 0,
        states: Some(shape.states),
        state_bound: Some(shape.state_bound),
        chains: Some(shape.chains.len()),
    };
    if shape.states > state_cap || shape.chains.len() > MAX_CHAINS {
        return SolveResult { status: SolveStatus::ResourceExceeded, witness: None, stats };
    }
    let table = Table::new(inst, shape.chains);
    let entries = table.fill(TripleCheck::Indexed);
    stats.nodes = entries.iter().filter(|&&e| e != 0).count() as u64;
    match table.witness(&entries) {
        Some(seq) => {
            let witness = Ordering::new(seq).expect("chains partition the elements");
            debug_assert!(crate::intermezzo::verify_ordering(inst, &witness));
            SolveResult { status: SolveStatus::Feasible, witness: Some(witness), stats }
        }
        None => SolveResult::infeasible(stats),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum TripleCheck {
    /// Per-element triple lists.
    Indexed,
    /// Scan of every triple; used to cross-check the indexed form.
    #[cfg_attr(not(test), allow(dead_code))]
    Naive,
}

struct Table<'a> {
    inst: &'a GimInstance,
    chains: Vec<Vec<usize>>,
    chain_of: Vec<usize>,
    pos_in_chain: Vec<usize>,
    stride: Vec<usize>,
    /// `need[x][j]`: how many elements of chain `j` must be placed before `x`.
    need: Vec<Vec<usize>>,
    by_first: Vec<Vec<(usize, usize)>>,
    size: usize,
}

impl<'a> Table<'a> {
    fn new(inst: &'a GimInstance, chains: Vec<Vec<usize>>) -> Self {
        let order = induced_order(inst).expect("checked by caller");
        let n = inst.len();
        let k = chains.len();
        let mut chain_of = vec![0; n];
        let mut pos_in_chain = vec![0; n];
        for (i, c) in chains.iter().enumerate() {
            for (p, &x) in c.iter().enumerate() {
                chain_of[x] = i;
                pos_in_chain[x] = p;
            }
        }
        let mut stride = Vec::with_capacity(k);
        let mut size = 1usize;
        for c in &chains {
            stride.push(size);
            size *= c.len() + 1;
        }
        let need = (0..n)
            .map(|x| {
                let mut row = vec![0; k];
                for p in order.below(x).ones() {
                    let j = chain_of[p];
                    row[j] = row[j].max(pos_in_chain[p] + 1);
                }
                row
            })
            .collect();
        Self { inst, chains, chain_of, pos_in_chain, stride, need, by_first: inst.triples_by_first(), size }
    }

    fn placed(&self, counts: &[usize], e: usize) -> bool {
        counts[self.chain_of[e]] > self.pos_in_chain[e]
    }

    fn allowed(&self, counts: &[usize], x: usize, check: TripleCheck) -> bool {
        if self.need[x].iter().zip(counts).any(|(&need, &have)| have < need) {
            return false;
        }
        let splits = |&(y, z): &(usize, usize)| self.placed(counts, y) && !self.placed(counts, z);
        match check {
            TripleCheck::Indexed => !self.by_first[x].iter().any(splits),
            TripleCheck::Naive => !self.inst.triples().any(|(t, y, z)| t == x && splits(&(y, z))),
        }
    }

    /// Entries: 0 unreachable, `1 + i` reached by appending from chain `i`,
    /// `START` for the empty prefix. Indices grow along every transition,
    /// so ascending index order is a valid fill order.
    fn fill(&self, check: TripleCheck) -> Vec<u8> {
        let k = self.chains.len();
        let mut entries = vec![0u8; self.size];
        entries[0] = START;
        let mut counts = vec![0usize; k];
        for s in 0..self.size {
            if entries[s] != 0 {
                for i in 0..k {
                    let next = s + self.stride[i];
                    if counts[i] < self.chains[i].len()
                        && entries[next] == 0
                        && self.allowed(&counts, self.chains[i][counts[i]], check)
                    {
                        entries[next] = i as u8 + 1;
                    }
                }
            }
            // Mixed-radix increment.
            for i in 0..k {
                counts[i] += 1;
                if counts[i] <= self.chains[i].len() {
                    break;
                }
                counts[i] = 0;
            }
        }
        entries
    }

    fn witness(&self, entries: &[u8]) -> Option<Vec<usize>> {
        let mut s = self.size - 1;
        if entries[s] == 0 {
            return None;
        }
        let mut counts: Vec<usize> = self.chains.iter().map(Vec::len).collect();
        let mut rev = Vec::with_capacity(self.inst.len());
        while entries[s] != START {
            let i = (entries[s] - 1) as usize;
            counts[i] -= 1;
            rev.push(self.chains[i][counts[i]]);
            s -= self.stride[i];
        }
        rev.reverse();
        Some(rev)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intermezzo::{solve_backtracking, verify_ordering, DEFAULT_BUDGET};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_instance(rng: &mut ChaCha8Rng) -> GimInstance {
        let n = rng.gen_range(1..=7);
        let mut g = GimInstance::new();
        for i in 0..n {
            g.add_element(&format!("e{i}"));
        }
        if n >= 3 {
            for _ in 0..rng.gen_range(0..=n) {
                let x = rng.gen_range(0..n);
                let y = rng.gen_range(0..n);
                let z = rng.gen_range(0..n);
                if x != y && y != z && x != z {
                    g.add_triple(x, y, z).unwrap();
                }
            }
        }
        for _ in 0..rng.gen_range(0..=2) {
            let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if x < y {
                g.add_pair(x, y).unwrap();
            }
        }
        g
    }

    #[test]
    fn naive_and_indexed_checks_fill_identical_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let g = random_instance(&mut rng);
            let Some(shape) = dp_shape(&g) else { continue };
            let table = Table::new(&g, shape.chains);
            assert_eq!(table.fill(TripleCheck::Indexed), table.fill(TripleCheck::Naive));
        }
    }

    #[test]
    fn agrees_with_backtracking() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let g = random_instance(&mut rng);
            let dp = solve_dp(&g, DEFAULT_STATE_CAP);
            let bt = solve_backtracking(&g, DEFAULT_BUDGET);
            assert_eq!(dp.status, bt.status);
            if let Some(w) = &dp.witness {
                assert!(verify_ordering(&g, w));
            }
        }
    }

    #[test]
    fn state_count_matches_chain_lengths() {
        let mut g = GimInstance::new();
        for (x, y) in [("a", "b"), ("b", "c"), ("d", "e")] {
            g.add_named_pair(x, y).unwrap();
        }
        let res = solve_dp(&g, DEFAULT_STATE_CAP);
        assert!(res.is_feasible());
        assert_eq!(res.stats.states, Some(4 * 3));
        assert_eq!(res.stats.chains, Some(2));
    }

    #[test]
    fn cap_is_reported() {
        let mut g = GimInstance::new();
        for e in ["a", "b", "c"] {
            g.add_element(e);
        }
        let res = solve_dp(&g, 7);
        assert_eq!(res.status, SolveStatus::ResourceExceeded);
        assert_eq!(res.stats.states, Some(8));
    }

    #[test]
    fn empty_instance() {
        let res = solve_dp(&GimInstance::new(), DEFAULT_STATE_CAP);
        assert!(res.is_feasible());
        assert!(res.witness.unwrap().is_empty());
    }
}
