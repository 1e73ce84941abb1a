//! Reachability search over proper colorings.
//!
//! States are colorings packed as fixed-width color indices of the
//! recolorable edges only (frozen and singleton-list edges never move, so
//! they are implied by the instance). Packed states hash by 64-bit mixing
//! with equality resolved by full comparison, which is what the visited set
//! needs at census scale.

use crate::color::Color;
use crate::egraph::{ColoredMultigraph, EdgeColoring};
use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};

/// Limits for breadth-first search and enumeration-backed constructions.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub max_states: u64,
    pub max_bytes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        // 1e8 states, 2 GiB of visited-set accounting
        Budget { max_states: 100_000_000, max_bytes: 2 << 30 }
    }
}

impl Budget {
    pub fn states(max_states: u64) -> Self {
        Budget { max_states, ..Budget::default() }
    }
}

/// One recoloring step: edge index and the color it changes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reachability {
    Reachable { witness: Option<Vec<Step>> },
    Unreachable,
    BudgetExceeded { visited: u64 },
}

/// Packs colorings of a fixed graph into `u64` words.
#[derive(Debug, Clone)]
pub struct StatePacker {
    /// recolorable edge indices, in edge order
    pub slots: Vec<usize>,
    bits: u32,
    words: usize,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Packed(Box<[u64]>);

impl StatePacker {
    pub fn new(g: &ColoredMultigraph) -> Self {
        let slots = g.recolorable_edges();
        let bits = 32 - (g.k() as u32 - 1).leading_zeros();
        let bits = bits.max(1);
        let words = ((slots.len() as u32 * bits + 63) / 64) as usize;
        StatePacker { slots, bits, words: words.max(1) }
    }

    pub fn pack(&self, f: &EdgeColoring) -> Packed {
        let mut w = vec![0u64; self.words];
        for (s, &e) in self.slots.iter().enumerate() {
            let val = (f.0[e] - 1) as u64;
            let pos = s as u32 * self.bits;
            w[(pos / 64) as usize] |= val << (pos % 64);
            if pos % 64 + self.bits > 64 {
                w[(pos / 64) as usize + 1] |= val >> (64 - pos % 64);
            }
        }
        Packed(w.into_boxed_slice())
    }

    /// Bytes of visited-set accounting per stored state.
    pub fn state_bytes(&self) -> u64 {
        (self.words * 8 + 48) as u64
    }

    /// Unpack into a full coloring, taking non-recolorable edges from `base`.
    pub fn unpack(&self, p: &Packed, base: &EdgeColoring) -> EdgeColoring {
        let mut f = base.clone();
        for (s, &e) in self.slots.iter().enumerate() {
            let pos = s as u32 * self.bits;
            let mut val = p.0[(pos / 64) as usize] >> (pos % 64);
            if pos % 64 + self.bits > 64 {
                val |= p.0[(pos / 64) as usize + 1] << (64 - pos % 64);
            }
            val &= (1u64 << self.bits) - 1;
            f.0[e] = val as Color + 1;
        }
        f
    }
}

/// Breadth-first search from `f0` to `fr` under single-recolor adjacency,
/// optionally restricted to recoloring a subset of edges.
pub fn reachable(
    g: &ColoredMultigraph,
    f0: &EdgeColoring,
    fr: &EdgeColoring,
    budget: Budget,
    want_witness: bool,
) -> Result<Reachability> {
    reachable_restricted(g, f0, fr, None, budget, want_witness)
}

pub fn reachable_restricted(
    g: &ColoredMultigraph,
    f0: &EdgeColoring,
    fr: &EdgeColoring,
    restriction: Option<&[usize]>,
    budget: Budget,
    want_witness: bool,
) -> Result<Reachability> {
    if let Some(why) = g.check_proper(f0) {
        return Err(Error::Improper(format!("start: {:?}", why)));
    }
    if let Some(why) = g.check_proper(fr) {
        return Err(Error::Improper(format!("target: {:?}", why)));
    }
    let target_pred = |f: &EdgeColoring| f == fr;
    match bfs_to(g, f0, &target_pred, restriction, budget, want_witness)? {
        BfsOutcome::Found { witness } => Ok(Reachability::Reachable { witness }),
        BfsOutcome::Exhausted => Ok(Reachability::Unreachable),
        BfsOutcome::OverBudget { visited } => Ok(Reachability::BudgetExceeded { visited }),
    }
}

pub enum BfsOutcome {
    Found { witness: Option<Vec<Step>> },
    Exhausted,
    OverBudget { visited: u64 },
}

/// BFS from `f0` until `target` holds, moves restricted to `restriction`
/// when given. Deterministic: queue order, edge order, colors ascending.
pub fn bfs_to(
    g: &ColoredMultigraph,
    f0: &EdgeColoring,
    target: &dyn Fn(&EdgeColoring) -> bool,
    restriction: Option<&[usize]>,
    budget: Budget,
    want_witness: bool,
) -> Result<BfsOutcome> {
    let packer = StatePacker::new(g);
    let movable: Vec<usize> = match restriction {
        Some(r) => r.to_vec(),
        None => packer.slots.clone(),
    };
    if target(f0) {
        return Ok(BfsOutcome::Found { witness: want_witness.then(Vec::new) });
    }
    let mut visited: HashMap<Packed, u32> = HashMap::new();
    // per visited state: parent index and the step that produced it
    let mut meta: Vec<(u32, u32, Color)> = Vec::new();
    let mut queue: VecDeque<(EdgeColoring, u32)> = VecDeque::new();
    visited.insert(packer.pack(f0), 0);
    meta.push((u32::MAX, 0, 0));
    queue.push_back((f0.clone(), 0));
    let state_bytes = packer.state_bytes();
    let mut used = vec![0u32; g.num_vertices()];
    while let Some((f, idx)) = queue.pop_front() {
        used.iter_mut().for_each(|m| *m = 0);
        for (i, e) in g.edges().iter().enumerate() {
            let bit = 1u32 << (f.0[i] - 1);
            used[e.u] |= bit;
            used[e.v] |= bit;
        }
        for &i in &movable {
            for c in g.moves_for_edge(&f, &used, i).iter() {
                let mut nf = f.clone();
                nf.0[i] = c;
                let key = packer.pack(&nf);
                if visited.contains_key(&key) {
                    continue;
                }
                let nidx = meta.len() as u32;
                visited.insert(key, nidx);
                meta.push((idx, i as u32, c));
                if target(&nf) {
                    let witness = want_witness.then(|| {
                        let mut steps = Vec::new();
                        let mut at = nidx;
                        while at != 0 {
                            let (p, e, col) = meta[at as usize];
                            steps.push(Step { edge: e as usize, color: col });
                            at = p;
                        }
                        steps.reverse();
                        steps
                    });
                    return Ok(BfsOutcome::Found { witness });
                }
                if visited.len() as u64 > budget.max_states
                    || visited.len() as u64 * state_bytes > budget.max_bytes
                {
                    return Ok(BfsOutcome::OverBudget { visited: visited.len() as u64 });
                }
                queue.push_back((nf, nidx));
            }
        }
    }
    Ok(BfsOutcome::Exhausted)
}

/// Replay a witness, checking every step is a proper single recoloring.
/// Returns the final coloring.
pub fn replay_witness(
    g: &ColoredMultigraph,
    f0: &EdgeColoring,
    steps: &[Step],
) -> Result<EdgeColoring> {
    if let Some(why) = g.check_proper(f0) {
        return Err(Error::Improper(format!("start: {:?}", why)));
    }
    let mut f = f0.clone();
    for (n, s) in steps.iter().enumerate() {
        if s.edge >= g.num_edges() {
            return Err(Error::UnknownEdge(format!("step {}: index {}", n, s.edge)));
        }
        if f.0[s.edge] == s.color {
            return Err(Error::Improper(format!("step {}: recolors edge to its own color", n)));
        }
        f.0[s.edge] = s.color;
        if let Some(why) = g.check_proper(&f) {
            return Err(Error::Improper(format!("step {}: {:?}", n, why)));
        }
    }
    Ok(f)
}

/// The reconfiguration graph: every proper coloring, with single-recolor
/// adjacency. `restriction` limits which edges may be recolored (the node
/// set is unaffected). Nodes are in enumeration order.
pub struct RecfgGraph {
    pub nodes: Vec<EdgeColoring>,
    pub adjacency: Vec<(usize, usize)>,
}

pub fn reconfiguration_graph(
    g: &ColoredMultigraph,
    restriction: Option<&[usize]>,
    budget: Budget,
) -> Result<RecfgGraph> {
    let nodes = g
        .collect_colorings(budget.max_states as usize)
        .ok_or(Error::BudgetExceeded { visited: budget.max_states })?;
    let packer = StatePacker::new(g);
    let index: HashMap<Packed, usize> =
        nodes.iter().enumerate().map(|(i, f)| (packer.pack(f), i)).collect();
    let movable: Vec<usize> = match restriction {
        Some(r) => r.to_vec(),
        None => (0..g.num_edges()).collect(),
    };
    let mut adjacency = Vec::new();
    let mut used = vec![0u32; g.num_vertices()];
    for (i, f) in nodes.iter().enumerate() {
        used.iter_mut().for_each(|m| *m = 0);
        for (ei, e) in g.edges().iter().enumerate() {
            let bit = 1u32 << (f.0[ei] - 1);
            used[e.u] |= bit;
            used[e.v] |= bit;
        }
        for &ei in &movable {
            for c in g.moves_for_edge(f, &used, ei).iter() {
                let mut nf = f.clone();
                nf.0[ei] = c;
                if let Some(&j) = index.get(&packer.pack(&nf)) {
                    if i < j {
                        adjacency.push((i, j));
                    }
                }
            }
        }
    }
    adjacency.sort_unstable();
    adjacency.dedup();
    Ok(RecfgGraph { nodes, adjacency })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::color::ColorSet;
    use crate::egraph::GraphBuilder;

    fn two_frozen() -> ColoredMultigraph {
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", ColorSet::from_colors([1, 2])).unwrap();
        b.edge("b", "v", "w", ColorSet::from_colors([1, 2])).unwrap();
        b.build()
    }

    #[test]
    fn identity_is_reachable_with_empty_witness() {
        let g = two_frozen();
        let f = EdgeColoring(vec![1, 2]);
        match reachable(&g, &f, &f, Budget::default(), true).unwrap() {
            Reachability::Reachable { witness } => assert_eq!(witness.unwrap().len(), 0),
            other => panic!("expected reachable, got {:?}", other),
        }
    }

    #[test]
    fn frozen_pair_is_unreachable() {
        let g = two_frozen();
        let r = reachable(
            &g,
            &EdgeColoring(vec![1, 2]),
            &EdgeColoring(vec![2, 1]),
            Budget::default(),
            false,
        )
        .unwrap();
        assert_eq!(r, Reachability::Unreachable);
    }

    #[test]
    fn single_edge_three_colors_k3() {
        let mut b = GraphBuilder::new(4);
        b.edge("e", "u", "v", ColorSet::from_colors([1, 2, 3])).unwrap();
        let g = b.build();
        let rg = reconfiguration_graph(&g, None, Budget::default()).unwrap();
        assert_eq!(rg.nodes.len(), 3);
        assert_eq!(rg.adjacency.len(), 3); // complete graph on 3 nodes
    }

    #[test]
    fn witness_replays() {
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", ColorSet::from_colors([1, 2, 3])).unwrap();
        b.edge("b", "v", "w", ColorSet::from_colors([1, 2, 3])).unwrap();
        let g = b.build();
        let f0 = EdgeColoring(vec![1, 2]);
        let fr = EdgeColoring(vec![2, 1]);
        match reachable(&g, &f0, &fr, Budget::default(), true).unwrap() {
            Reachability::Reachable { witness } => {
                let w = witness.unwrap();
                assert_eq!(replay_witness(&g, &f0, &w).unwrap(), fr);
            }
            other => panic!("expected reachable, got {:?}", other),
        }
    }

    #[test]
    fn budget_exceeded_is_distinct() {
        let mut b = GraphBuilder::new(4);
        for i in 0..6 {
            b.edge(&format!("e{}", i), &format!("u{}", i), &format!("v{}", i), ColorSet::full(4))
                .unwrap();
        }
        let g = b.build();
        let f0 = EdgeColoring(vec![1; 6]);
        let fr = EdgeColoring(vec![4; 6]);
        let r = reachable(&g, &f0, &fr, Budget::states(10), false).unwrap();
        matches!(r, Reachability::BudgetExceeded { .. })
            .then_some(())
            .expect("tiny budget must be reported as exceeded");
    }

    #[test]
    fn packer_roundtrip() {
        let mut b = GraphBuilder::new(7);
        b.edge("a", "u", "v", ColorSet::full(7)).unwrap();
        b.frozen_edge("f", "u", "x", 5).unwrap();
        for i in 0..30 {
            b.edge(&format!("e{}", i), &format!("p{}", i), &format!("q{}", i), ColorSet::full(7))
                .unwrap();
        }
        let g = b.build();
        let packer = StatePacker::new(&g);
        assert_eq!(packer.slots.len(), 31); // frozen edge excluded
        let f = EdgeColoring(
            (0..g.num_edges()).map(|i| if i == 1 { 5 } else { (i % 7) as Color + 1 }).collect(),
        );
        let p = packer.pack(&f);
        let back = packer.unpack(&p, &f);
        assert_eq!(back, f);
    }
}
