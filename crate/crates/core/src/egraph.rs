//! Colored multigraphs and proper (list) edge-colorings.
//!
//! The multigraph allows parallel edges (which are adjacent to each other —
//! they share both endpoints) but not loops. Every edge carries a color list
//! `L(e) ⊆ {1..k}`; an optional frozen color pins the list to a singleton.
//! Edge order is fixed at construction and all enumeration is performed in
//! that order with colors ascending, so "the lexicographically smallest
//! coloring" is well-defined and deterministic.

use crate::color::{Color, ColorSet, MAX_COLORS};
use crate::error::{Error, Result};
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct Edge {
    pub id: String,
    pub u: usize,
    pub v: usize,
    pub list: ColorSet,
    pub frozen: Option<Color>,
}

/// A multigraph with per-edge color lists.
#[derive(Debug, Clone)]
pub struct ColoredMultigraph {
    k: Color,
    vertex_names: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    /// vertex -> indices of incident edges
    incident: Vec<Vec<usize>>,
}

/// A total color assignment, indexed by edge position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeColoring(pub Vec<Color>);

impl EdgeColoring {
    pub fn get(&self, edge: usize) -> Color {
        self.0[edge]
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub struct GraphBuilder {
    k: Color,
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, usize>,
    edges: Vec<Edge>,
    edge_index: HashMap<String, usize>,
}

impl GraphBuilder {
    pub fn new(k: Color) -> Self {
        assert!(k >= 1 && k <= MAX_COLORS);
        GraphBuilder {
            k,
            vertex_names: Vec::new(),
            vertex_index: HashMap::new(),
            edges: Vec::new(),
            edge_index: HashMap::new(),
        }
    }

    pub fn k(&self) -> Color {
        self.k
    }

    /// Add a vertex if not present; returns its index either way.
    pub fn vertex(&mut self, id: &str) -> usize {
        if let Some(&i) = self.vertex_index.get(id) {
            return i;
        }
        let i = self.vertex_names.len();
        self.vertex_names.push(id.to_string());
        self.vertex_index.insert(id.to_string(), i);
        i
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertex_index.contains_key(id)
    }

    pub fn edge(&mut self, id: &str, u: &str, v: &str, list: ColorSet) -> Result<usize> {
        self.push_edge(id, u, v, list, None)
    }

    pub fn frozen_edge(&mut self, id: &str, u: &str, v: &str, color: Color) -> Result<usize> {
        self.push_edge(id, u, v, ColorSet::singleton(color), Some(color))
    }

    fn push_edge(
        &mut self,
        id: &str,
        u: &str,
        v: &str,
        list: ColorSet,
        frozen: Option<Color>,
    ) -> Result<usize> {
        if self.edge_index.contains_key(id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
        if u == v {
            return Err(Error::LoopEdge(id.to_string()));
        }
        if list.is_empty() {
            return Err(Error::BadEdge(id.to_string(), "empty color list".into()));
        }
        if !list.is_subset_of(ColorSet::full(self.k)) {
            return Err(Error::BadEdge(
                id.to_string(),
                format!("list {:?} not a subset of {{1..{}}}", list, self.k),
            ));
        }
        if let Some(c) = frozen {
            if list != ColorSet::singleton(c) {
                return Err(Error::BadEdge(
                    id.to_string(),
                    "frozen edge list must equal its frozen color".into(),
                ));
            }
        }
        let u = self.vertex(u);
        let v = self.vertex(v);
        let idx = self.edges.len();
        self.edges.push(Edge { id: id.to_string(), u, v, list, frozen });
        self.edge_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn build(self) -> ColoredMultigraph {
        let mut incident = vec![Vec::new(); self.vertex_names.len()];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.u].push(i);
            incident[e.v].push(i);
        }
        ColoredMultigraph {
            k: self.k,
            vertex_names: self.vertex_names,
            edges: self.edges,
            vertex_index: self.vertex_index,
            edge_index: self.edge_index,
            incident,
        }
    }
}

/// Why a coloring fails to be proper.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Impropriety {
    OffList { edge: usize, color: Color },
    Conflict { edge_a: usize, edge_b: usize, color: Color },
    WrongLength { got: usize, want: usize },
}

impl ColoredMultigraph {
    pub fn k(&self) -> Color {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertex_names[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, name: &str) -> Result<usize> {
        self.edge_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn incident(&self, vertex: usize) -> &[usize] {
        &self.incident[vertex]
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.incident[vertex].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges that can ever change color (list size >= 2).
    pub fn recolorable_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].list.len() >= 2).collect()
    }

    /// Check both properness conditions; `None` means proper.
    pub fn check_proper(&self, f: &EdgeColoring) -> Option<Impropriety> {
        if f.0.len() != self.edges.len() {
            return Some(Impropriety::WrongLength { got: f.0.len(), want: self.edges.len() });
        }
        for (i, e) in self.edges.iter().enumerate() {
            if !e.list.contains(f.0[i]) {
                return Some(Impropriety::OffList { edge: i, color: f.0[i] });
            }
        }
        for v in 0..self.num_vertices() {
            let mut seen = ColorSet::EMPTY;
            for &i in &self.incident[v] {
                let c = f.0[i];
                if seen.contains(c) {
                    let other = self.incident[v]
                        .iter()
                        .copied()
                        .find(|&j| j != i && f.0[j] == c)
                        .unwrap();
                    return Some(Impropriety::Conflict { edge_a: other, edge_b: i, color: c });
                }
                seen.insert(c);
            }
        }
        None
    }

    pub fn is_proper(&self, f: &EdgeColoring) -> bool {
        self.check_proper(f).is_none()
    }

    /// Per-vertex masks of colors in use under `f`.
    fn used_masks(&self, f: &EdgeColoring) -> Vec<u32> {
        let mut used = vec![0u32; self.num_vertices()];
        for (i, e) in self.edges.iter().enumerate() {
            let bit = 1u32 << (f.0[i] - 1);
            used[e.u] |= bit;
            used[e.v] |= bit;
        }
        used
    }

    /// Colors edge `i` could move to under `f` (excluding its current color).
    pub fn moves_for_edge(&self, f: &EdgeColoring, used: &[u32], i: usize) -> ColorSet {
        let e = &self.edges[i];
        let cur = 1u32 << (f.0[i] - 1);
        let blocked = (used[e.u] | used[e.v]) & !cur;
        ColorSet::from_mask(e.list.mask() & !blocked & !cur)
    }

    /// All proper colorings adjacent to `f` (single-recolor moves), in edge
    /// order with colors ascending. Errors if `f` itself is improper.
    pub fn coloring_neighbors(&self, f: &EdgeColoring) -> Result<Vec<EdgeColoring>> {
        if let Some(why) = self.check_proper(f) {
            return Err(Error::Improper(format!("{:?}", why)));
        }
        let used = self.used_masks(f);
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            for c in self.moves_for_edge(f, &used, i).iter() {
                let mut g = f.clone();
                g.0[i] = c;
                out.push(g);
            }
        }
        Ok(out)
    }

    /// Visit every proper coloring in lexicographic order (edge order, colors
    /// ascending). The callback returns `false` to stop early; the function
    /// returns `false` iff it was stopped.
    pub fn for_each_coloring<F: FnMut(&EdgeColoring) -> bool>(&self, mut visit: F) -> bool {
        let n = self.edges.len();
        let mut used = vec![0u32; self.num_vertices()];
        let mut cur = EdgeColoring(vec![0; n]);
        self.rec_enumerate(0, &mut used, &mut cur, &mut visit)
    }

    fn rec_enumerate<F: FnMut(&EdgeColoring) -> bool>(
        &self,
        i: usize,
        used: &mut [u32],
        cur: &mut EdgeColoring,
        visit: &mut F,
    ) -> bool {
        if i == self.edges.len() {
            return visit(cur);
        }
        let e = &self.edges[i];
        let mut avail = e.list.mask() & !(used[e.u] | used[e.v]);
        while avail != 0 {
            let bit = avail & avail.wrapping_neg();
            avail &= avail - 1;
            used[e.u] |= bit;
            used[e.v] |= bit;
            cur.0[i] = bit.trailing_zeros() as Color + 1;
            let keep_going = self.rec_enumerate(i + 1, used, cur, visit);
            used[e.u] &= !bit;
            used[e.v] &= !bit;
            if !keep_going {
                return false;
            }
        }
        true
    }

    /// Exact number of proper colorings.
    pub fn census(&self) -> u64 {
        let mut n = 0u64;
        self.for_each_coloring(|_| {
            n += 1;
            true
        });
        n
    }

    /// Collect all proper colorings; `None` if there are more than `cap`.
    pub fn collect_colorings(&self, cap: usize) -> Option<Vec<EdgeColoring>> {
        let mut out = Vec::new();
        let complete = self.for_each_coloring(|f| {
            if out.len() == cap {
                return false;
            }
            out.push(f.clone());
            true
        });
        complete.then_some(out)
    }

    /// The lexicographically smallest proper coloring extending `pin`
    /// (`pin[i] = Some(c)` fixes edge `i` to color `c`).
    pub fn lex_min_completion(&self, pin: &[Option<Color>]) -> Option<EdgeColoring> {
        assert_eq!(pin.len(), self.edges.len());
        let n = self.edges.len();
        let mut used = vec![0u32; self.num_vertices()];
        let mut cur = EdgeColoring(vec![0; n]);
        if self.rec_complete(0, pin, &mut used, &mut cur) {
            Some(cur)
        } else {
            None
        }
    }

    fn rec_complete(
        &self,
        i: usize,
        pin: &[Option<Color>],
        used: &mut [u32],
        cur: &mut EdgeColoring,
    ) -> bool {
        if i == self.edges.len() {
            return true;
        }
        let e = &self.edges[i];
        let mut avail = e.list.mask() & !(used[e.u] | used[e.v]);
        if let Some(c) = pin[i] {
            avail &= 1u32 << (c - 1);
        }
        while avail != 0 {
            let bit = avail & avail.wrapping_neg();
            avail &= avail - 1;
            used[e.u] |= bit;
            used[e.v] |= bit;
            cur.0[i] = bit.trailing_zeros() as Color + 1;
            if self.rec_complete(i + 1, pin, used, cur) {
                return true;
            }
            used[e.u] &= !bit;
            used[e.v] &= !bit;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge(list: &[Color]) -> ColoredMultigraph {
        let mut b = GraphBuilder::new(4);
        b.edge("e", "u", "v", ColorSet::from_colors(list.iter().copied())).unwrap();
        b.build()
    }

    #[test]
    fn proper_single_edge() {
        let g = single_edge(&[1, 2]);
        assert!(g.is_proper(&EdgeColoring(vec![1])));
        assert!(!g.is_proper(&EdgeColoring(vec![3]))); // off-list
    }

    #[test]
    fn adjacent_conflict() {
        // two edges sharing a vertex, both colored 1 -> improper
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", ColorSet::from_colors([1, 2])).unwrap();
        b.edge("b", "v", "w", ColorSet::from_colors([1, 2])).unwrap();
        let g = b.build();
        assert!(!g.is_proper(&EdgeColoring(vec![1, 1])));
        assert!(g.is_proper(&EdgeColoring(vec![1, 2])));
    }

    #[test]
    fn parallel_edges_conflict() {
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", ColorSet::from_colors([1, 2])).unwrap();
        b.edge("b", "u", "v", ColorSet::from_colors([1, 2])).unwrap();
        let g = b.build();
        assert!(!g.is_proper(&EdgeColoring(vec![1, 1])));
        assert!(g.is_proper(&EdgeColoring(vec![2, 1])));
        assert_eq!(g.census(), 2);
    }

    #[test]
    fn neighbors_single_edge() {
        let g = single_edge(&[1, 2]);
        let n = g.coloring_neighbors(&EdgeColoring(vec![1])).unwrap();
        assert_eq!(n, vec![EdgeColoring(vec![2])]);
    }

    #[test]
    fn neighbors_frozen_pair() {
        // two adjacent edges with lists {1,2}: (1,2) has no proper neighbor
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", ColorSet::from_colors([1, 2])).unwrap();
        b.edge("b", "v", "w", ColorSet::from_colors([1, 2])).unwrap();
        let g = b.build();
        assert!(g.coloring_neighbors(&EdgeColoring(vec![1, 2])).unwrap().is_empty());
    }

    #[test]
    fn neighbors_symmetric() {
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", ColorSet::from_colors([1, 2, 3])).unwrap();
        b.edge("b", "v", "w", ColorSet::from_colors([2, 3])).unwrap();
        b.edge("c", "w", "x", ColorSet::from_colors([1, 3])).unwrap();
        let g = b.build();
        let all = g.collect_colorings(1000).unwrap();
        for f in &all {
            for h in g.coloring_neighbors(f).unwrap() {
                assert!(g.coloring_neighbors(&h).unwrap().contains(f));
            }
        }
    }

    #[test]
    fn triangle_two_colors_has_no_coloring() {
        let mut b = GraphBuilder::new(4);
        let l = ColorSet::from_colors([1, 2]);
        b.edge("a", "x", "y", l).unwrap();
        b.edge("b", "y", "z", l).unwrap();
        b.edge("c", "z", "x", l).unwrap();
        let g = b.build();
        assert_eq!(g.census(), 0);
    }

    #[test]
    fn census_is_order_independent() {
        // same instance, reversed edge order
        let l12 = ColorSet::from_colors([1, 2]);
        let l23 = ColorSet::from_colors([2, 3]);
        let l13 = ColorSet::from_colors([1, 3]);
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", l12).unwrap();
        b.edge("b", "v", "w", l23).unwrap();
        b.edge("c", "w", "x", l13).unwrap();
        let g = b.build();
        let mut b2 = GraphBuilder::new(4);
        b2.edge("c", "w", "x", l13).unwrap();
        b2.edge("b", "v", "w", l23).unwrap();
        b2.edge("a", "u", "v", l12).unwrap();
        let g2 = b2.build();
        assert_eq!(g.census(), g2.census());
    }

    #[test]
    fn lex_min_completion_respects_pins() {
        let mut b = GraphBuilder::new(4);
        b.edge("a", "u", "v", ColorSet::from_colors([1, 2, 3])).unwrap();
        b.edge("b", "v", "w", ColorSet::from_colors([1, 2, 3])).unwrap();
        let g = b.build();
        let f = g.lex_min_completion(&[Some(2), None]).unwrap();
        assert_eq!(f, EdgeColoring(vec![2, 1]));
        let f = g.lex_min_completion(&[None, None]).unwrap();
        assert_eq!(f, EdgeColoring(vec![1, 2]));
    }

    #[test]
    fn frozen_edge_invariant() {
        let mut b = GraphBuilder::new(4);
        b.frozen_edge("a", "u", "v", 3).unwrap();
        let g = b.build();
        assert_eq!(g.edge(0).list, ColorSet::singleton(3));
        // a frozen edge with a mismatched list is rejected at construction
        let mut b = GraphBuilder::new(4);
        let err = b.push_edge("a", "u", "v", ColorSet::from_colors([1, 3]), Some(3));
        assert!(err.is_err());
    }
}
