//! Canonical labeling and isomorphism testing.
//!
//! Both rest on an ordered equitable partition obtained by iterated degree
//! refinement. The partition depends only on the isomorphism type, so
//! trying every labeling that respects its cell order and keeping the
//! lexicographically least adjacency string yields a canonical form.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bit, bits, Graph};

/// Largest order accepted by [`canonical_form`].
pub const CANONICAL_MAX_ORDER: usize = 10;

/// A bijection on `0..n`, stored as the image of each point.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Checks that `images` is a bijection on `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidParameter(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        Ok(Permutation(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        Permutation(inv)
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.0.iter().enumerate().filter(|&(v, &w)| v != w).count()
    }

    pub fn is_identity(&self) -> bool {
        self.support_size() == 0
    }

    /// True when the permutation maps edges onto edges.
    pub fn is_automorphism_of(&self, g: &Graph) -> bool {
        self.len() == g.order() && relabel(g, self) == *g
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Image of `g` under `perm`: vertex `v` becomes `perm(v)`.
pub fn relabel(g: &Graph, perm: &Permutation) -> Graph {
    let n = g.order();
    let mut rows = vec![0u64; n];
    for (u, v) in g.edges() {
        let (a, b) = (perm.apply(u), perm.apply(v));
        rows[a] |= bit(b);
        rows[b] |= bit(a);
    }
    Graph::from_rows(rows).expect("relabeling preserves simplicity")
}

/// Refines `colors` until stable: vertices keep equal colors only while they
/// have equal colors and equal neighbor color multisets. New colors are ranks
/// of sorted signatures, so the result is label-independent.
pub(crate) fn refine(rows: &[u64], colors: &mut [usize]) {
    let n = rows.len();
    let mut classes = count_classes(colors);
    loop {
        let mut signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = bits(rows[v]).map(|u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = signatures.clone();
        sorted.sort();
        sorted.dedup();
        for (v, sig) in signatures.iter_mut().enumerate() {
            colors[v] = sorted.binary_search(sig).expect("signature present");
        }
        let now = sorted.len();
        if now == classes {
            return;
        }
        classes = now;
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Stable vertex colors of `g` starting from the uniform coloring.
pub(crate) fn equitable_colors(g: &Graph) -> Vec<usize> {
    let mut colors = vec![0; g.order()];
    refine(g.rows(), &mut colors);
    colors
}

/// Upper-triangle adjacency bits `x01, x02, …, x0(n-1), x12, …` of the
/// lexicographically least relabeling, most significant bit first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    order: usize,
    bits: u64,
}

impl CanonicalForm {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bit_string(&self) -> String {
        let len = self.order * self.order.saturating_sub(1) / 2;
        (0..len)
            .map(|i| {
                if self.bits >> (len - 1 - i) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// The canonically labeled graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.order;
        let len = n * n.saturating_sub(1) / 2;
        let mut rows = vec![0u64; n];
        let mut idx = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.bits >> (len - 1 - idx) & 1 == 1 {
                    rows[i] |= bit(j);
                    rows[j] |= bit(i);
                }
                idx += 1;
            }
        }
        Graph::from_rows(rows).expect("canonical bits describe a simple graph")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({}, {})", self.order, self.bit_string())
    }
}

/// Row-major upper triangle of `g` with vertex `inv[p]` placed at position `p`.
fn triangle_bits(g: &Graph, inv: &[usize]) -> u64 {
    let n = g.order();
    let mut out = 0u64;
    for i in 0..n {
        let row = g.neighbors(inv[i]);
        for &vj in &inv[i + 1..n] {
            out = out << 1 | (row >> vj & 1);
        }
    }
    out
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    let n = g.order();
    if n > CANONICAL_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            operation: "canonical_form",
            order: n,
            limit: CANONICAL_MAX_ORDER,
        });
    }
    let colors = equitable_colors(g);
    let ncolors = colors.iter().max().map_or(0, |&c| c + 1);
    let mut cells: Vec<Vec<usize>> = vec![Vec::new(); ncolors];
    for (v, &c) in colors.iter().enumerate() {
        cells[c].push(v);
    }
    // `inv[p]` is the vertex placed at canonical position `p`; positions are
    // filled cell by cell and each cell's block is permuted exhaustively.
    let mut inv: Vec<usize> = cells.iter().flatten().copied().collect();
    let mut starts = Vec::with_capacity(cells.len());
    let mut s = 0;
    for c in &cells {
        starts.push(s);
        s += c.len();
    }
    let mut best = u64::MAX;
    permute_cells(g, &cells, &starts, 0, &mut inv, &mut best);
    Ok(CanonicalForm {
        order: n,
        bits: if n < 2 { 0 } else { best },
    })
}

fn permute_cells(
    g: &Graph,
    cells: &[Vec<usize>],
    starts: &[usize],
    cell: usize,
    inv: &mut Vec<usize>,
    best: &mut u64,
) {
    if cell == cells.len() {
        *best = (*best).min(triangle_bits(g, inv));
        return;
    }
    let lo = starts[cell];
    let hi = lo + cells[cell].len();
    heap_permutations(&mut inv[lo..hi].to_vec(), &mut |block| {
        inv[lo..hi].copy_from_slice(block);
        permute_cells(g, cells, starts, cell + 1, inv, best);
    });
}

/// Calls `f` on every permutation of `items` (Heap's algorithm).
pub(crate) fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Isomorphism test. Uses canonical forms up to [`CANONICAL_MAX_ORDER`]
/// vertices and a refinement-guided backtracking search above that.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.order() != h.order() || g.size() != h.size() || g.degree_sequence() != h.degree_sequence()
    {
        return false;
    }
    if g.order() <= CANONICAL_MAX_ORDER {
        return canonical_form(g).ok() == canonical_form(h).ok();
    }
    find_isomorphism(g, h).is_some()
}

/// Some bijection `f` with `uv ∈ E(g) ⟺ f(u)f(v) ∈ E(h)`, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Permutation> {
    let n = g.order();
    if n != h.order() || g.size() != h.size() {
        return None;
    }
    let (cg, ch) = joint_colors(g, h);
    let mut gc = cg.clone();
    let mut hc = ch.clone();
    gc.sort_unstable();
    hc.sort_unstable();
    if gc != hc {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u64;
    if extend_isomorphism(g, h, &cg, &ch, 0, &mut map, &mut used) {
        Some(Permutation(map))
    } else {
        None
    }
}

/// Colors for `g` and `h` drawn from one refinement so they are comparable.
fn joint_colors(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let n = g.order();
    if 2 * n <= crate::graph::MAX_ORDER {
        let both = g.disjoint_union(h).expect("combined order checked");
        let mut colors = vec![0; 2 * n];
        refine(both.rows(), &mut colors);
        let hc = colors.split_off(n);
        (colors, hc)
    } else {
        (
            (0..n).map(|v| g.degree(v)).collect(),
            (0..n).map(|v| h.degree(v)).collect(),
        )
    }
}

fn extend_isomorphism(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    v: usize,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    let n = g.order();
    if v == n {
        return true;
    }
    for w in 0..n {
        if *used & bit(w) != 0 || ch[w] != cg[v] {
            continue;
        }
        let consistent = (0..v).all(|u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        *used |= bit(w);
        if extend_isomorphism(g, h, cg, ch, v + 1, map, used) {
            return true;
        }
        *used &= !bit(w);
    }
    map[v] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use proptest::prelude::*;

    fn g(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().construct().unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(p.support_size(), 3);
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
    }

    #[test]
    fn relabeled_path_has_same_form() {
        let p4 = g("P4");
        let other = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(
            canonical_form(&p4).unwrap(),
            canonical_form(&other).unwrap()
        );
    }

    #[test]
    fn c4_differs_from_two_k2() {
        assert_ne!(
            canonical_form(&g("C4")).unwrap(),
            canonical_form(&g("2*K2")).unwrap()
        );
    }

    #[test]
    fn eleven_classes_on_four_vertices() {
        // Oracle: every labeled graph on 4 vertices, deduped by brute-force
        // minimum over all 24 relabelings, independent of refinement.
        let pairs: Vec<(usize, usize)> = (0..4)
            .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
            .collect();
        let mut brute = std::collections::BTreeSet::new();
        let mut fast = std::collections::BTreeSet::new();
        for mask in 0u32..64 {
            let edges: Vec<_> = (0..6)
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| pairs[b])
                .collect();
            let graph = Graph::from_edges(4, &edges).unwrap();
            let mut perm = vec![0, 1, 2, 3];
            let mut least = String::from("z");
            heap_permutations(&mut perm, &mut |p| {
                let r = relabel(&graph, &Permutation(p.to_vec()));
                let s: String = pairs
                    .iter()
                    .map(|&(a, b)| if r.has_edge(a, b) { '1' } else { '0' })
                    .collect();
                if s < least {
                    least = s;
                }
            });
            brute.insert(least);
            fast.insert(canonical_form(&graph).unwrap());
        }
        assert_eq!(brute.len(), 11);
        assert_eq!(fast.len(), 11);
    }

    #[test]
    fn isomorphism_examples() {
        assert!(are_isomorphic(&g("C5"), &g("C5").complement()));
        assert!(!are_isomorphic(&g("K(1,3)"), &g("P4")));
        assert!(are_isomorphic(&g("J(K2,E2)"), &g("co(U(K2,E2))")));
        assert!(!are_isomorphic(&g("C4"), &g("2*K2")));
    }

    #[test]
    fn large_isomorphism_by_search() {
        let t = g("T4");
        let perm = Permutation::new((0..11).rev().collect()).unwrap();
        let shuffled = relabel(&t, &perm);
        assert!(are_isomorphic(&t, &shuffled));
        let f = find_isomorphism(&t, &shuffled).unwrap();
        assert_eq!(relabel(&t, &f), shuffled);
        assert!(!are_isomorphic(&g("2*C6"), &g("C12")));
        assert!(!are_isomorphic(&g("2*C6"), &g("U(C5,C7)")));
        assert!(are_isomorphic(&g("U(C5,C7)"), &g("U(C7,C5)")));
        assert!(canonical_form(&t).is_err());
    }

    #[test]
    fn form_round_trips_to_graph() {
        let c = canonical_form(&g("C5'")).unwrap();
        assert!(are_isomorphic(&c.to_graph(), &g("C5'")));
        assert_eq!(canonical_form(&c.to_graph()).unwrap(), c);
        assert_eq!(canonical_form(&g("K1")).unwrap().bit_string(), "");
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn canonical_form_is_relabeling_invariant(
            graph in arb_graph(7),
            seed in prop::collection::vec(any::<u32>(), 7),
        ) {
            let n = graph.order();
            let mut images: Vec<usize> = (0..n).collect();
            images.sort_by_key(|&v| (seed[v], v));
            let perm = Permutation::new(images).unwrap();
            let moved = relabel(&graph, &perm);
            prop_assert_eq!(canonical_form(&graph).unwrap(), canonical_form(&moved).unwrap());
            prop_assert!(find_isomorphism(&graph, &moved).is_some());
        }
    }
}
