//! Exhaustive generation of small graphs up to isomorphism.

use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::graph::{bit, Graph};
use crate::iso::{canonical_form, CanonicalForm};

/// Largest order generated internally; larger orders come from graph6 files.
pub const ENUMERATION_MAX_ORDER: usize = 6;

type Classes = Arc<Vec<(CanonicalForm, Graph)>>;

fn classes(n: usize) -> Result<Classes> {
    static CACHE: [OnceLock<Classes>; ENUMERATION_MAX_ORDER + 1] =
        [const { OnceLock::new() }; ENUMERATION_MAX_ORDER + 1];
    if n > ENUMERATION_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            operation: "enumerate_graphs",
            order: n,
            limit: ENUMERATION_MAX_ORDER,
        });
    }
    Ok(CACHE[n].get_or_init(|| Arc::new(generate(n))).clone())
}

/// Every labeled graph on `n` vertices, deduplicated by canonical form.
fn generate(n: usize) -> Vec<(CanonicalForm, Graph)> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut forms = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rows = vec![0u64; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
        }
        let g = Graph::from_rows(rows).expect("generated rows are simple");
        forms.insert(canonical_form(&g).expect("order within canonical bound"));
    }
    forms.into_iter().map(|f| (f, f.to_graph())).collect()
}

/// One canonically labeled representative per isomorphism class on `n`
/// vertices, sorted by canonical form.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
    Ok(classes(n)?
        .iter()
        .filter(|(_, g)| !connected_only || g.is_connected())
        .map(|(_, g)| g.clone())
        .collect())
}

/// All graphs of every order in `orders`, concatenated in order.
pub fn enumerate_orders(
    orders: impl IntoIterator<Item = usize>,
    connected_only: bool,
) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in orders {
        out.extend(enumerate_graphs(n, connected_only)?);
    }
    Ok(out)
}
