//! Twin classes, the twin graph, and the connected core `G_c`.
//!
//! `u` and `v` are twins when `N(u) \ {v} = N(v) \ {u}`. Adjacent twins
//! (equal closed neighborhoods) and non-adjacent twins (equal open
//! neighborhoods) both satisfy it. The relation is an equivalence, and every
//! class of size at least two induces a clique or an independent set.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{bit, bits, Graph, Part, PartKind};
use crate::symmetry::automorphism_group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassType {
    /// A single vertex.
    One,
    /// At least two pairwise adjacent twins.
    K,
    /// At least two pairwise non-adjacent twins.
    N,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinStructure {
    /// Classes ordered by their least vertex, each sorted ascending.
    pub classes: Vec<Vec<usize>>,
    pub class_type: Vec<ClassType>,
    /// Twin graph `G*`; vertex `i` stands for `classes[i]`.
    pub quotient: Graph,
    /// Number of classes of type `K` or `N`.
    pub alpha: usize,
}

#[inline]
pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u) & !bit(v) == g.neighbors(v) & !bit(u)
}

pub fn twin_classes(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut assigned = 0u64;
    let mut classes = Vec::new();
    for v in 0..n {
        if assigned & bit(v) != 0 {
            continue;
        }
        let class: Vec<usize> = (v..n)
            .filter(|&u| assigned & bit(u) == 0 && (u == v || are_twins(g, u, v)))
            .collect();
        debug_assert!(class
            .iter()
            .all(|&a| class.iter().all(|&b| a == b || are_twins(g, a, b))));
        for &u in &class {
            assigned |= bit(u);
        }
        classes.push(class);
    }
    classes
}

pub fn twin_graph(g: &Graph) -> TwinStructure {
    let classes = twin_classes(g);
    let class_type: Vec<ClassType> = classes
        .iter()
        .map(|c| match c.as_slice() {
            [_] => ClassType::One,
            [a, b, ..] if g.has_edge(*a, *b) => ClassType::K,
            _ => ClassType::N,
        })
        .collect();
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let quotient = g.induced_subgraph(&reps);
    let alpha = class_type.iter().filter(|t| **t != ClassType::One).count();
    TwinStructure {
        classes,
        class_type,
        quotient,
        alpha,
    }
}

impl TwinStructure {
    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    pub fn max_class_size(&self) -> usize {
        self.classes.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Blow-up parts that rebuild the graph from the quotient.
    pub fn parts(&self) -> Vec<Part> {
        self.classes
            .iter()
            .zip(&self.class_type)
            .map(|(c, t)| Part {
                size: c.len(),
                kind: match t {
                    ClassType::N => PartKind::Empty,
                    _ => PartKind::Complete,
                },
            })
            .collect()
    }

    /// `quotient[parts]`, isomorphic to the original graph.
    pub fn reconstruct(&self) -> Result<Graph> {
        self.quotient.blow_up(&self.parts())
    }

    /// Index of the class containing `v`.
    pub fn class_of(&self, v: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.contains(&v))
            .expect("every vertex lies in a class")
    }
}

/// True when every automorphism maps each twin class onto itself.
pub fn is_almost_asymmetric(g: &Graph) -> Result<bool> {
    let twins = twin_graph(g);
    let masks: Vec<u64> = twins
        .classes
        .iter()
        .map(|c| c.iter().fold(0, |m, &v| m | bit(v)))
        .collect();
    let group = automorphism_group(g)?;
    Ok(group.elements().iter().all(|p| {
        masks
            .iter()
            .all(|&m| bits(m).all(|v| m & bit(p.apply(v)) != 0))
    }))
}

/// `G` when connected, otherwise its (necessarily connected) complement.
pub fn core_graph(g: &Graph) -> Graph {
    if g.is_connected() {
        g.clone()
    } else {
        g.complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;
    use crate::iso::are_isomorphic;

    fn g(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().construct().unwrap()
    }

    #[test]
    fn class_examples() {
        let k23 = twin_graph(&g("K(2,3)"));
        assert_eq!(k23.classes, vec![vec![0, 1], vec![2, 3, 4]]);
        assert_eq!(k23.class_type, vec![ClassType::N, ClassType::N]);
        assert_eq!(k23.quotient, g("K2"));
        assert_eq!(twin_classes(&g("P4")).len(), 4);
        let k4 = twin_graph(&g("K4"));
        assert_eq!(k4.classes, vec![vec![0, 1, 2, 3]]);
        assert_eq!(k4.class_type, vec![ClassType::K]);
        assert_eq!(k4.alpha, 1);
    }

    #[test]
    fn quotient_examples() {
        for (s, t) in [(2, 3), (2, 5), (3, 4)] {
            let ts = twin_graph(&FamilySpec::CompleteBipartite(s, t).construct().unwrap());
            assert_eq!(ts.quotient, g("K2"));
            assert_eq!(ts.class_type, vec![ClassType::N, ClassType::N]);
        }
        for t in 2..=5 {
            let ts = twin_graph(&g(&format!("J(K1,U(K1,K{t}))")));
            assert_eq!(ts.classes.len(), 3);
            assert_eq!(ts.alpha, 1);
            assert_eq!(
                ts.class_type.iter().filter(|c| **c == ClassType::K).count(),
                1
            );
            assert!(are_isomorphic(&ts.quotient, &g("P3")));
        }
        let asym = twin_graph(&g("T3"));
        assert_eq!((asym.classes.len(), asym.alpha), (7, 0));
    }

    #[test]
    fn almost_asymmetric_examples() {
        assert_eq!(is_almost_asymmetric(&g("C4")), Ok(false));
        assert_eq!(is_almost_asymmetric(&g("K(2,3)")), Ok(true));
        assert_eq!(is_almost_asymmetric(&g("P4")), Ok(false));
        assert_eq!(is_almost_asymmetric(&g("T3")), Ok(true));
    }

    #[test]
    fn core_examples() {
        assert!(are_isomorphic(&core_graph(&g("2*K2")), &g("C4")));
        assert_eq!(core_graph(&g("C5")), g("C5"));
        for t in 2..=5 {
            let core = core_graph(&g(&format!("U(K{t},K1)")));
            assert!(are_isomorphic(
                &core,
                &FamilySpec::CompleteBipartite(1, t).construct().unwrap()
            ));
        }
    }

    #[test]
    fn reconstruct_round_trip() {
        for s in [
            "K(2,3)",
            "J(K2,U(K1,K3))",
            "P4[E2,K1,K3,K1]",
            "C5",
            "U(K3,E2)",
        ] {
            let graph = g(s);
            let ts = twin_graph(&graph);
            assert!(are_isomorphic(&ts.reconstruct().unwrap(), &graph), "{s}");
        }
    }
}
