//! Simple undirected graphs on at most 64 vertices.
//!
//! Each adjacency row is a single `u64`, so neighborhood algebra (twin tests,
//! complements, joins) is a handful of word operations.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_ORDER: usize = 64;

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a word in ascending order.
pub(crate) fn bits(mut word: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if word == 0 {
            None
        } else {
            let v = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(v)
        }
    })
}

/// An immutable simple graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Whether a blow-up part induces a clique or an independent set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PartKind {
    Complete,
    Empty,
}

/// One replacement graph `K_size` or `\bar K_size` in a blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Part {
    pub size: usize,
    pub kind: PartKind,
}

impl Part {
    pub fn complete(size: usize) -> Self {
        Part {
            size,
            kind: PartKind::Complete,
        }
    }

    pub fn empty(size: usize) -> Self {
        Part {
            size,
            kind: PartKind::Empty,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.kind, self.size) {
            (_, 1) | (PartKind::Complete, _) => write!(f, "K{}", self.size),
            (PartKind::Empty, s) => write!(f, "E{s}"),
        }
    }
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderOverflow(n))
    } else {
        Ok(())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let all = full_mask(n);
        let adj = (0..n).map(|v| all & !bit(v)).collect();
        Ok(Graph { n, adj })
    }

    /// Builds a graph from an edge list. Duplicate pairs are harmless.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_order(n)?;
        let mask = full_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & bit(v) != 0 {
                return Err(Error::SelfLoop(v));
            }
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: (row & !mask).trailing_zeros() as usize,
                    order: n,
                });
            }
            for u in bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency rows not symmetric at ({v}, {u})"
                    )));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    /// Open neighborhood of `v` as a bit set.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !full_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn complement(&self) -> Graph {
        let all = full_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & all & !bit(v)).collect();
        Graph { n: self.n, adj }
    }

    /// Vertices of `other` are shifted up by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_order(n)?;
        let shift = self.n;
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|&r| r << shift))
            .collect();
        Ok(Graph { n, adj })
    }

    /// Disjoint union plus every edge between the two parts.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = full_mask(self.n);
        let right = full_mask(g.n) & !left;
        for v in 0..g.n {
            g.adj[v] |= if v < self.n { right } else { left };
        }
        Ok(g)
    }

    /// Replaces vertex `i` by `parts[i]`; adjacent vertices become complete
    /// cross-joins. Part `i` occupies a contiguous vertex range in order.
    pub fn blow_up(&self, parts: &[Part]) -> Result<Graph> {
        if parts.len() != self.n {
            return Err(Error::ArityMismatch {
                expected: self.n,
                actual: parts.len(),
            });
        }
        if let Some(p) = parts.iter().find(|p| p.size == 0) {
            return Err(Error::InvalidParameter(format!(
                "blow-up part {p:?} must have size at least 1"
            )));
        }
        let total: usize = parts.iter().map(|p| p.size).sum();
        check_order(total)?;
        let mut offsets = Vec::with_capacity(self.n);
        let mut masks = Vec::with_capacity(self.n);
        let mut start = 0;
        for p in parts {
            offsets.push(start);
            masks.push(full_mask(start + p.size) & !full_mask(start));
            start += p.size;
        }
        let mut adj = vec![0u64; total];
        for (i, p) in parts.iter().enumerate() {
            let mut cross = 0u64;
            for j in bits(self.adj[i]) {
                cross |= masks[j];
            }
            for (v, row) in adj.iter_mut().enumerate().skip(offsets[i]).take(p.size) {
                let inner = match p.kind {
                    PartKind::Complete => masks[i] & !bit(v),
                    PartKind::Empty => 0,
                };
                *row = cross | inner;
            }
        }
        Ok(Graph { n: total, adj })
    }

    /// Subgraph induced by `vertices`, relabeled `0..vertices.len()` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let k = vertices.len();
        let mut adj = vec![0u64; k];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= bit(j);
                }
            }
        }
        Graph { n: k, adj }
    }

    /// Vertices reachable from `start`, as a bit set.
    pub fn component_of(&self, start: usize) -> u64 {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    /// The null graph and `K1` count as connected.
    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.component_of(0) == full_mask(self.n)
    }

    pub fn shortest_path_matrix(&self) -> DistanceMatrix {
        let n = self.n;
        let mut dist = vec![DistanceMatrix::INF; n * n];
        let mut queue = VecDeque::with_capacity(n);
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            row[s] = 0;
            queue.clear();
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let du = row[u];
                for w in bits(self.adj[u]) {
                    if row[w] == DistanceMatrix::INF {
                        row[w] = du + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceMatrix { n, dist }
    }

    /// Largest pairwise distance; errors on disconnected graphs.
    pub fn diameter(&self) -> Result<usize> {
        self.shortest_path_matrix().diameter()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// All-pairs hop distances; `None` between components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u8>,
}

impl DistanceMatrix {
    pub(crate) const INF: u8 = u8::MAX;

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        match self.dist[u * self.n + v] {
            Self::INF => None,
            d => Some(d as usize),
        }
    }

    /// Distances from `v` with `u8::MAX` marking unreachable vertices.
    pub(crate) fn row(&self, v: usize) -> &[u8] {
        &self.dist[v * self.n..(v + 1) * self.n]
    }

    pub fn diameter(&self) -> Result<usize> {
        let mut best = 0;
        for &d in &self.dist {
            if d == Self::INF {
                return Err(Error::Disconnected);
            }
            best = best.max(d as usize);
        }
        Ok(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn build_rejects_bad_input() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange {
                vertex: 3,
                order: 3
            })
        );
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(Graph::empty(65), Err(Error::OrderOverflow(65)));
        assert!(Graph::complete(64).is_ok());
    }

    #[test]
    fn build_examples() {
        let p4 = path(4);
        assert_eq!(p4.size(), 3);
        assert_eq!(p4.degree_sequence(), vec![2, 2, 1, 1]);
        let k1 = Graph::from_edges(1, &[]).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.degree_sequence(), vec![2; 4]);
        assert_eq!(c4, cycle(4));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(
            Graph::complete(4).unwrap().complement(),
            Graph::empty(4).unwrap()
        );
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        // {0,1},{2,3} complement: 0-2, 0-3, 1-2, 1-3
        assert_eq!(
            two_k2.complement(),
            Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
        );
        let c5c = cycle(5).complement();
        assert_eq!(c5c.degree_sequence(), vec![2; 5]);
        assert!(c5c.is_connected());
    }

    #[test]
    fn union_and_join() {
        let k2 = Graph::complete(2).unwrap();
        let k1 = Graph::complete(1).unwrap();
        assert_eq!(
            k2.disjoint_union(&k2).unwrap(),
            Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
        );
        let k3k1 = Graph::complete(3).unwrap().disjoint_union(&k1).unwrap();
        assert_eq!(k3k1.degree(3), 0);
        assert_eq!(k3k1.size(), 3);
        assert_eq!(k1.disjoint_union(&k1).unwrap(), Graph::empty(2).unwrap());

        let e2 = Graph::empty(2).unwrap();
        assert_eq!(
            e2.join(&e2).unwrap(),
            Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
        );
        let diamond = k2.join(&e2).unwrap();
        assert_eq!(diamond.size(), 5);
        assert!(!diamond.has_edge(2, 3));
        let wheelish = k1.join(&path(4)).unwrap();
        assert_eq!(wheelish.order(), 5);
        assert_eq!(wheelish.size(), 7);
        assert!(Graph::empty(40)
            .unwrap()
            .join(&Graph::empty(25).unwrap())
            .is_err());
    }

    #[test]
    fn blow_up_examples() {
        let p4 = path(4);
        assert_eq!(p4.blow_up(&[Part::complete(1); 4]).unwrap(), p4);
        let b = p4
            .blow_up(&[
                Part::complete(1),
                Part::complete(2),
                Part::complete(1),
                Part::complete(1),
            ])
            .unwrap();
        // 0 | 1 2 | 3 | 4
        assert_eq!(
            b,
            Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
        );
        let b = p4
            .blow_up(&[
                Part::empty(2),
                Part::complete(1),
                Part::complete(1),
                Part::complete(1),
            ])
            .unwrap();
        assert_eq!(
            b,
            Graph::from_edges(5, &[(0, 2), (1, 2), (2, 3), (3, 4)]).unwrap()
        );
        assert_eq!(
            p4.blow_up(&[Part::complete(1); 3]),
            Err(Error::ArityMismatch {
                expected: 4,
                actual: 3
            })
        );
        assert!(p4.blow_up(&[Part::complete(30); 4]).is_err());
    }

    #[test]
    fn distances() {
        let p4 = path(4);
        let d = p4.shortest_path_matrix();
        assert_eq!(d.get(0, 3), Some(3));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two_k2.shortest_path_matrix().get(0, 2), None);
        assert_eq!(two_k2.diameter(), Err(Error::Disconnected));
        let c5 = cycle(5).shortest_path_matrix();
        for u in 0..5 {
            for v in 0..5 {
                let d = c5.get(u, v).unwrap();
                assert!(if u == v { d == 0 } else { d == 1 || d == 2 });
            }
        }
        assert_eq!(cycle(5).diameter(), Ok(2));
        assert_eq!(Graph::complete(5).unwrap().diameter(), Ok(1));
        assert_eq!(path(5).diameter(), Ok(4));
        assert!(Graph::empty(0).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
    }

    #[test]
    fn edges_are_ordered() {
        let g = Graph::from_edges(4, &[(3, 0), (2, 1), (0, 1)]).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2)]);
        assert!(Graph::from_rows(vec![0b10, 0]).is_err());
    }
}
