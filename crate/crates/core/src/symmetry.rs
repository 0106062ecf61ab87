//! Automorphism groups, distinguishing colorings and the distinguishing number.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::iso::{equitable_colors, Permutation};
use crate::metric::resolves;
use crate::twins::twin_classes;

/// Upper bound on the number of automorphisms we are willing to list (9!).
pub const GROUP_LIMIT: usize = 362_880;

/// Every automorphism of a graph, identity first, then ordered by the number
/// of moved points so small-support elements are tried first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismGroup {
    degree: usize,
    elements: Vec<Permutation>,
}

/// A vertex coloring with colors `1..=colors`. Not every color has to occur.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    color: Vec<usize>,
    colors: usize,
}

impl Coloring {
    pub fn new(color: Vec<usize>, colors: usize) -> Result<Self> {
        if let Some(&c) = color.iter().find(|&&c| c == 0 || c > colors) {
            return Err(Error::ColorOutOfRange { color: c, colors });
        }
        Ok(Coloring { color, colors })
    }

    /// Every vertex gets its own color.
    pub fn distinct(n: usize) -> Self {
        Coloring {
            color: (1..=n).collect(),
            colors: n,
        }
    }

    pub fn color(&self, v: usize) -> usize {
        self.color[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.color
    }

    pub fn color_count(&self) -> usize {
        self.colors
    }

    pub fn len(&self) -> usize {
        self.color.len()
    }

    pub fn is_empty(&self) -> bool {
        self.color.is_empty()
    }
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    /// Vertex orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut seen = 0u64;
        let mut out = Vec::new();
        for v in 0..n {
            if seen & bit(v) != 0 {
                continue;
            }
            let mut orbit = 0u64;
            for p in &self.elements {
                orbit |= bit(p.apply(v));
            }
            seen |= orbit;
            out.push(crate::graph::bits(orbit).collect());
        }
        out
    }

    /// No non-identity element preserves every color.
    pub fn is_distinguishing(&self, coloring: &Coloring) -> bool {
        self.first_preserving(coloring.as_slice()).is_none()
    }

    fn first_preserving(&self, color: &[usize]) -> Option<&Permutation> {
        self.elements[1..]
            .iter()
            .find(|p| (0..self.degree).all(|v| color[p.apply(v)] == color[v]))
    }
}

pub fn automorphism_group(g: &Graph) -> Result<AutomorphismGroup> {
    let n = g.order();
    let colors = equitable_colors(g);
    let mut found = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut search = Search {
        g,
        colors: &colors,
        map: &mut map,
        used: 0,
        found: &mut found,
    };
    search.extend(0)?;
    found.sort_by_cached_key(|p: &Permutation| (p.support_size(), p.clone()));
    Ok(AutomorphismGroup {
        degree: n,
        elements: found,
    })
}

struct Search<'a> {
    g: &'a Graph,
    colors: &'a [usize],
    map: &'a mut [usize],
    used: u64,
    found: &'a mut Vec<Permutation>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize) -> Result<()> {
        let n = self.g.order();
        if v == n {
            if self.found.len() == GROUP_LIMIT {
                return Err(Error::GroupTooLarge(GROUP_LIMIT));
            }
            self.found
                .push(Permutation::from_images_unchecked(self.map.to_vec()));
            return Ok(());
        }
        for w in 0..n {
            if self.used & bit(w) != 0 || self.colors[w] != self.colors[v] {
                continue;
            }
            let g = self.g;
            let map = &*self.map;
            if !(0..v).all(|u| g.has_edge(u, v) == g.has_edge(map[u], w)) {
                continue;
            }
            self.map[v] = w;
            self.used |= bit(w);
            self.extend(v + 1)?;
            self.used &= !bit(w);
        }
        self.map[v] = usize::MAX;
        Ok(())
    }
}

pub fn vertex_orbits(g: &Graph) -> Result<Vec<Vec<usize>>> {
    Ok(automorphism_group(g)?.orbits())
}

pub fn is_distinguishing(g: &Graph, coloring: &Coloring) -> Result<bool> {
    if coloring.len() != g.order() {
        return Err(Error::ColoringArity {
            len: coloring.len(),
            order: g.order(),
        });
    }
    Ok(automorphism_group(g)?.is_distinguishing(coloring))
}

/// Least number of colors in a distinguishing coloring.
pub fn distinguishing_number(g: &Graph) -> Result<usize> {
    let group = automorphism_group(g)?;
    Ok(distinguishing_number_with(g, &group))
}

/// Same as [`distinguishing_number`] with a precomputed group.
///
/// Colorings are generated as restricted growth strings (colors appear in
/// first-use order), since renaming colors cannot change whether a coloring
/// is distinguishing. Twins must get different colors because swapping them
/// is an automorphism, which also gives the starting lower bound.
pub fn distinguishing_number_with(g: &Graph, group: &AutomorphismGroup) -> usize {
    let n = g.order();
    if group.is_trivial() {
        return 1;
    }
    let mut twin_mask = vec![0u64; n];
    let mut lower = 2;
    for class in twin_classes(g) {
        lower = lower.max(class.len());
        let m = class.iter().fold(0u64, |m, &v| m | bit(v));
        for &v in &class {
            twin_mask[v] = m & !bit(v);
        }
    }
    for k in lower..=n {
        let mut color = vec![0usize; n];
        let mut gen = Generator {
            group,
            twin_mask: &twin_mask,
            color: &mut color,
            k,
        };
        if gen.assign(0, 0) {
            return k;
        }
    }
    unreachable!("the all-distinct coloring is distinguishing")
}

struct Generator<'a> {
    group: &'a AutomorphismGroup,
    twin_mask: &'a [u64],
    color: &'a mut [usize],
    k: usize,
}

impl Generator<'_> {
    /// Colors vertices `v..`; `used` colors appear among `0..v`.
    fn assign(&mut self, v: usize, used: usize) -> bool {
        let n = self.color.len();
        if v == n {
            return used == self.k && self.group.first_preserving(self.color).is_none();
        }
        if self.k - used > n - v {
            return false;
        }
        let upper = (used + 1).min(self.k);
        'colors: for c in 1..=upper {
            for u in crate::graph::bits(self.twin_mask[v] & ((1u64 << v) - 1)) {
                if self.color[u] == c {
                    continue 'colors;
                }
            }
            self.color[v] = c;
            if self.assign(v + 1, used.max(c)) {
                return true;
            }
        }
        false
    }
}

/// Colors `set[i]` with `i + 1` and every other vertex with `|set| + 1`.
/// A resolving set yields a distinguishing coloring: a color-preserving
/// automorphism fixes the set pointwise and preserves distances, so it can
/// only move a vertex to another with the same distance vector.
pub fn coloring_from_resolving_set(g: &Graph, set: &[usize]) -> Result<Coloring> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.order();
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: n,
        });
    }
    if !resolves(&g.shortest_path_matrix(), set) {
        return Err(Error::NotResolving);
    }
    let rest = set.len() + 1;
    let mut color = vec![rest; n];
    for (i, &s) in set.iter().enumerate() {
        color[s] = i + 1;
    }
    Coloring::new(color, rest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::iso::heap_permutations;
    use crate::metric::metric_dimension;

    fn g(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().construct().unwrap()
    }

    /// Brute force over all n! permutations.
    fn brute_group_order(graph: &Graph) -> usize {
        let mut items: Vec<usize> = (0..graph.order()).collect();
        let mut count = 0;
        heap_permutations(&mut items, &mut |p| {
            if Permutation::new(p.to_vec())
                .unwrap()
                .is_automorphism_of(graph)
            {
                count += 1;
            }
        });
        count
    }

    #[test]
    fn group_orders() {
        assert_eq!(automorphism_group(&g("K4")).unwrap().order(), 24);
        assert_eq!(brute_group_order(&g("C4")), 8);
        assert_eq!(automorphism_group(&g("C4")).unwrap().order(), 8);
        for k in 3..=6 {
            let t = FamilySpec::BroomTree(k).construct().unwrap();
            assert_eq!(automorphism_group(&t).unwrap().order(), 1);
        }
        for s in ["C5'", "P4", "K(2,3)", "J(K1,P4)", "U(K2,E2)"] {
            let graph = g(s);
            let group = automorphism_group(&graph).unwrap();
            assert_eq!(group.order(), brute_group_order(&graph), "{s}");
            assert!(group.elements()[0].is_identity());
            assert!(group
                .elements()
                .iter()
                .all(|p| p.is_automorphism_of(&graph)));
        }
    }

    #[test]
    fn group_is_closed() {
        let group = automorphism_group(&g("C6")).unwrap();
        let elems = group.elements();
        for a in elems {
            assert!(elems.contains(&a.inverse()));
            for b in elems {
                assert!(elems.contains(&a.compose(b)));
            }
        }
        let sizes: Vec<usize> = elems.iter().map(Permutation::support_size).collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn group_limit() {
        assert_eq!(
            automorphism_group(&g("K10")),
            Err(Error::GroupTooLarge(GROUP_LIMIT))
        );
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(
            vertex_orbits(&g("K(1,3)")).unwrap(),
            vec![vec![0], vec![1, 2, 3]]
        );
        assert_eq!(
            vertex_orbits(&g("P4")).unwrap(),
            vec![vec![0, 3], vec![1, 2]]
        );
        let house = vertex_orbits(&g("C5'")).unwrap();
        let mut sizes: Vec<usize> = house.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2, 2]);
    }

    #[test]
    fn distinguishing_examples() {
        let t3 = g("T3");
        assert_eq!(
            is_distinguishing(&t3, &Coloring::new(vec![1; 7], 1).unwrap()),
            Ok(true)
        );
        let k3 = g("K3");
        assert_eq!(
            is_distinguishing(&k3, &Coloring::new(vec![1, 1, 2], 2).unwrap()),
            Ok(false)
        );
        let p4 = g("P4");
        assert_eq!(
            is_distinguishing(&p4, &Coloring::new(vec![1, 1, 1, 2], 2).unwrap()),
            Ok(true)
        );
        assert!(is_distinguishing(&p4, &Coloring::new(vec![1, 1], 2).unwrap()).is_err());
        assert!(Coloring::new(vec![0, 1], 2).is_err());
        assert!(Coloring::new(vec![3, 1], 2).is_err());
    }

    #[test]
    fn distinguishing_numbers() {
        for n in 1..=6 {
            assert_eq!(distinguishing_number(&g(&format!("K{n}"))), Ok(n));
            assert_eq!(distinguishing_number(&g(&format!("E{n}"))), Ok(n));
        }
        for n in 2..=8 {
            assert_eq!(distinguishing_number(&g(&format!("P{n}"))), Ok(2));
        }
        assert_eq!(distinguishing_number(&g("K(3,3)")), Ok(4));
        assert_eq!(distinguishing_number(&g("C4")), Ok(3));
        assert_eq!(distinguishing_number(&g("C5")), Ok(3));
        assert_eq!(distinguishing_number(&g("C6")), Ok(2));
        assert_eq!(distinguishing_number(&g("C5'")), Ok(2));
    }

    #[test]
    fn coloring_from_resolving_examples() {
        let p4 = g("P4");
        let c = coloring_from_resolving_set(&p4, &[0]).unwrap();
        assert_eq!(c.as_slice(), &[1, 2, 2, 2]);
        assert_eq!(c.color_count(), 2);
        assert_eq!(is_distinguishing(&p4, &c), Ok(true));

        let k4 = g("K4");
        let c = coloring_from_resolving_set(&k4, &[0, 1, 2]).unwrap();
        assert_eq!(c.as_slice(), &[1, 2, 3, 4]);
        assert_eq!(is_distinguishing(&k4, &c), Ok(true));

        let c5 = g("C5");
        let w = metric_dimension(&c5).unwrap();
        assert_eq!(w.dim, 2);
        let c = coloring_from_resolving_set(&c5, &w.witness).unwrap();
        assert_eq!(c.color_count(), 3);
        assert_eq!(is_distinguishing(&c5, &c), Ok(true));

        assert_eq!(
            coloring_from_resolving_set(&g("C4"), &[0]),
            Err(Error::NotResolving)
        );
        assert_eq!(
            coloring_from_resolving_set(&g("2*K2"), &[0]),
            Err(Error::Disconnected)
        );
    }
}
