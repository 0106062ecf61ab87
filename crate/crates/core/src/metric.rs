//! Resolving sets and exact metric dimension.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};
use crate::twins::twin_classes;

/// A minimum resolving set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolvingWitness {
    pub dim: usize,
    pub witness: Vec<usize>,
}

/// True when the distance vectors to `set` are pairwise distinct.
pub(crate) fn resolves(dist: &DistanceMatrix, set: &[usize]) -> bool {
    let n = dist.order();
    let mut vectors: Vec<Vec<u8>> = (0..n)
        .map(|v| set.iter().map(|&s| dist.row(s)[v]).collect())
        .collect();
    vectors.sort_unstable();
    vectors.windows(2).all(|w| w[0] != w[1])
}

pub fn is_resolving(g: &Graph, set: &[usize]) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if let Some(&v) = set.iter().find(|&&v| v >= g.order()) {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            order: g.order(),
        });
    }
    Ok(resolves(&g.shortest_path_matrix(), set))
}

/// Exact metric dimension with a lexicographically first witness among the
/// searched sets.
///
/// Twins `u, v` have equal distances to every other vertex, so any resolving
/// set omits at most one vertex per twin class. Swapping twins is an
/// automorphism, so some minimum resolving set contains every class member
/// except its largest vertex; only those supersets are searched.
pub fn metric_dimension(g: &Graph) -> Result<ResolvingWitness> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dist = g.shortest_path_matrix();
    let mut forced = Vec::new();
    let mut free = Vec::new();
    for class in twin_classes(g) {
        let (last, rest) = class.split_last().expect("twin classes are non-empty");
        forced.extend_from_slice(rest);
        free.push(*last);
    }
    forced.sort_unstable();
    for extra in 0..=free.len() {
        for chosen in free.iter().copied().combinations(extra) {
            let mut set = forced.clone();
            set.extend(chosen);
            set.sort_unstable();
            if resolves(&dist, &set) {
                return Ok(ResolvingWitness {
                    dim: set.len(),
                    witness: set,
                });
            }
        }
    }
    unreachable!("the full vertex set always resolves")
}
