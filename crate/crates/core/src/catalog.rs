//! The family lists characterizing graphs with `D(G) = n - k` for
//! `k = 0, 1, 2, 3`, instantiated at a fixed order, plus per-graph
//! classification against them.
//!
//! Membership is decided by isomorphism against the instantiated graphs,
//! never by structural pattern matching.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::{Graph, Part};
use crate::graph6::write_graph6;
use crate::iso::{are_isomorphic, canonical_form, CanonicalForm, CANONICAL_MAX_ORDER};
use crate::metric::metric_dimension;
use crate::symmetry::distinguishing_number;
use crate::twins::{core_graph, twin_graph, ClassType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TheoremId {
    /// `D(G) = n`.
    Dn,
    /// `D(G) = n - 1`.
    Dn1,
    /// `D(G) = n - 2`, for `n >= 4`.
    Dn2,
    /// `D(G) = n - 3` within family F, for `n >= 5`.
    Dn3,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [
        TheoremId::Dn,
        TheoremId::Dn1,
        TheoremId::Dn2,
        TheoremId::Dn3,
    ];

    /// `k` such that listed graphs have `D(G) = n - k`.
    pub fn deficit(self) -> usize {
        match self {
            TheoremId::Dn => 0,
            TheoremId::Dn1 => 1,
            TheoremId::Dn2 => 2,
            TheoremId::Dn3 => 3,
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            TheoremId::Dn | TheoremId::Dn1 => 1,
            TheoremId::Dn2 => 4,
            TheoremId::Dn3 => 5,
        }
    }

    pub fn templates(self) -> &'static [Template] {
        match self {
            TheoremId::Dn => DN,
            TheoremId::Dn1 => DN1,
            TheoremId::Dn2 => DN2,
            TheoremId::Dn3 => DN3,
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .collect::<String>()
            .to_ascii_lowercase();
        match key.as_str() {
            "dn" | "n" => Ok(TheoremId::Dn),
            "dn1" | "n1" => Ok(TheoremId::Dn1),
            "dn2" | "n2" => Ok(TheoremId::Dn2),
            "dn3" | "n3" => Ok(TheoremId::Dn3),
            _ => Err(Error::UnknownTheorem(s.to_string())),
        }
    }
}

/// One list entry: a fixed graph, or a one-parameter family in `t >= min_t`.
pub struct Template {
    pub entry: usize,
    pub notation: &'static str,
    pub min_t: Option<usize>,
    pub build: fn(usize) -> FamilySpec,
}

fn k(n: usize) -> FamilySpec {
    FamilySpec::Complete(n)
}
fn e(n: usize) -> FamilySpec {
    FamilySpec::Empty(n)
}
fn kb(a: usize, b: usize) -> FamilySpec {
    FamilySpec::CompleteBipartite(a, b)
}
fn km(parts: &[usize]) -> FamilySpec {
    FamilySpec::CompleteMultipartite(parts.to_vec())
}
fn un<const N: usize>(xs: [FamilySpec; N]) -> FamilySpec {
    FamilySpec::union(xs)
}
fn jn<const N: usize>(xs: [FamilySpec; N]) -> FamilySpec {
    FamilySpec::join(xs)
}
fn p4(parts: [Part; 4]) -> FamilySpec {
    FamilySpec::blow_up(FamilySpec::Path(4), parts.to_vec())
}
fn one() -> Part {
    Part::complete(1)
}

const fn fixed(entry: usize, notation: &'static str, build: fn(usize) -> FamilySpec) -> Template {
    Template {
        entry,
        notation,
        min_t: None,
        build,
    }
}

const fn family(
    entry: usize,
    notation: &'static str,
    min_t: usize,
    build: fn(usize) -> FamilySpec,
) -> Template {
    Template {
        entry,
        notation,
        min_t: Some(min_t),
        build,
    }
}

static DN: &[Template] = &[family(1, "K_t", 1, k), family(2, "K̄_t", 1, e)];

static DN1: &[Template] = &[
    fixed(1, "C_4", |_| FamilySpec::Cycle(4)),
    family(2, "K_{t,1}", 2, |t| kb(t, 1)),
    fixed(3, "2K_2", |_| FamilySpec::copies(2, k(2))),
    family(4, "K_t ∪ K_1", 2, |t| un([k(t), k(1)])),
];

static DN2: &[Template] = &[
    fixed(1, "C_5", |_| FamilySpec::Cycle(5)),
    fixed(2, "P_4", |_| FamilySpec::Path(4)),
    fixed(3, "K_{1,2,2}", |_| km(&[1, 2, 2])),
    fixed(4, "2K_2 ∪ K_1", |_| un([k(2), k(2), k(1)])),
    fixed(5, "K_{3,3}", |_| kb(3, 3)),
    fixed(6, "2K_3", |_| FamilySpec::copies(2, k(3))),
    family(7, "K_{t,2}", 3, |t| kb(t, 2)),
    family(8, "K_t ∪ K_2", 3, |t| un([k(t), k(2)])),
    family(9, "K_2 + K̄_t", 2, |t| jn([k(2), e(t)])),
    family(10, "K_t ∪ 2K_1", 2, |t| un([k(t), k(1), k(1)])),
    family(11, "K_t + K̄_2", 2, |t| jn([k(t), e(2)])),
    family(12, "K̄_t ∪ K_2", 2, |t| un([e(t), k(2)])),
    family(13, "K_1 + (K_t ∪ K_1)", 2, |t| {
        jn([k(1), un([k(t), k(1)])])
    }),
    family(14, "K_{t,1} ∪ K_1", 2, |t| un([kb(t, 1), k(1)])),
];

static DN3: &[Template] = &[
    fixed(1, "P_5", |_| FamilySpec::Path(5)),
    fixed(2, "C_5'", |_| FamilySpec::HouseC5Prime),
    fixed(3, "K_{4,4}", |_| kb(4, 4)),
    fixed(4, "2K_4", |_| FamilySpec::copies(2, k(4))),
    family(5, "K_3 + K̄_t", 3, |t| jn([k(3), e(t)])),
    family(6, "K̄_3 ∪ K_t", 3, |t| un([e(3), k(t)])),
    family(7, "K_2 + (K_t ∪ K_1)", 2, |t| {
        jn([k(2), un([k(t), k(1)])])
    }),
    family(8, "K̄_2 ∪ K_{t,1}", 2, |t| un([e(2), kb(t, 1)])),
    family(9, "K_{t,3}", 4, |t| kb(t, 3)),
    family(10, "K_t ∪ K_3", 4, |t| un([k(t), k(3)])),
    family(11, "K_t + K̄_3", 3, |t| jn([k(t), e(3)])),
    family(12, "K̄_t ∪ K_3", 3, |t| un([e(t), k(3)])),
    family(13, "K_t + (K_2 ∪ K_1)", 2, |t| {
        jn([k(t), un([k(2), k(1)])])
    }),
    family(14, "K̄_t ∪ K_{2,1}", 2, |t| un([e(t), kb(2, 1)])),
    family(15, "K_{1,2,t}", 3, |t| km(&[1, 2, t])),
    family(16, "K_1 ∪ K_2 ∪ K_t", 3, |t| un([k(1), k(2), k(t)])),
    fixed(17, "K_2 + K_{2,2}", |_| jn([k(2), kb(2, 2)])),
    fixed(18, "K̄_2 ∪ 2K_2", |_| un([e(2), k(2), k(2)])),
    fixed(19, "K_{1,3,3}", |_| km(&[1, 3, 3])),
    fixed(20, "2K_3 ∪ K_1", |_| un([k(3), k(3), k(1)])),
    fixed(21, "K_{2,2,2}", |_| km(&[2, 2, 2])),
    fixed(22, "3K_2", |_| FamilySpec::copies(3, k(2))),
    family(23, "K̄_2 + (K_1 ∪ K_t)", 2, |t| {
        jn([e(2), un([k(1), k(t)])])
    }),
    family(24, "K_2 ∪ K_{t,1}", 2, |t| un([k(2), kb(t, 1)])),
    fixed(25, "K̄_2 + 2K_2", |_| jn([e(2), un([k(2), k(2)])])),
    fixed(26, "K_2 ∪ K_{2,2}", |_| un([k(2), kb(2, 2)])),
    family(27, "K̄_t + (K_1 ∪ K_2)", 2, |t| {
        jn([e(t), un([k(1), k(2)])])
    }),
    family(28, "K_t ∪ K_{2,1}", 2, |t| un([k(t), kb(2, 1)])),
    fixed(29, "K_2 + 2K_2", |_| jn([k(2), un([k(2), k(2)])])),
    fixed(30, "2K_1 ∪ K_{2,2}", |_| un([k(1), k(1), kb(2, 2)])),
    family(31, "K_1 + (K_1 ∪ K_{1,t})", 2, |t| {
        jn([k(1), un([k(1), kb(1, t)])])
    }),
    family(32, "K_1 ∪ (K_1 + (K_t ∪ K_1))", 2, |t| {
        un([k(1), jn([k(1), un([k(t), k(1)])])])
    }),
    fixed(33, "K_1 + P_4", |_| jn([k(1), FamilySpec::Path(4)])),
    fixed(34, "K_1 ∪ P_4", |_| un([k(1), FamilySpec::Path(4)])),
    fixed(35, "K_1 + (K_1 ∪ 2K_2)", |_| {
        jn([k(1), un([k(1), k(2), k(2)])])
    }),
    fixed(36, "K_1 ∪ (K_1 + K_{2,2})", |_| {
        un([k(1), jn([k(1), kb(2, 2)])])
    }),
    fixed(37, "K_1 + (K_1 ∪ K_{2,2})", |_| {
        jn([k(1), un([k(1), kb(2, 2)])])
    }),
    fixed(38, "K_1 ∪ (K_1 + 2K_2)", |_| {
        un([k(1), jn([k(1), un([k(2), k(2)])])])
    }),
    family(39, "P_4[K_1, K_t, K_1, K_1]", 2, |t| {
        p4([one(), Part::complete(t), one(), one()])
    }),
    family(40, "P_4[K̄_t, K_1, K_1, K_1]", 2, |t| {
        p4([Part::empty(t), one(), one(), one()])
    }),
    family(41, "P_4[K_1, K̄_t, K_1, K_1]", 2, |t| {
        p4([one(), Part::empty(t), one(), one()])
    }),
    family(42, "P_4[K_t, K_1, K_1, K_1]", 2, |t| {
        p4([Part::complete(t), one(), one(), one()])
    }),
];

/// Where a graph occurs in a list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyAlias {
    pub theorem: TheoremId,
    pub entry: usize,
    pub notation: &'static str,
    pub t: Option<usize>,
    pub expression: String,
}

/// One isomorphism class produced by a list at a given order, with every
/// (entry, parameter) that produces it.
#[derive(Clone, Debug)]
pub struct FamilyInstance {
    pub graph: Graph,
    pub form: Option<CanonicalForm>,
    pub aliases: Vec<FamilyAlias>,
}

impl FamilyInstance {
    pub fn is_isomorphic_to(&self, g: &Graph, form: Option<&CanonicalForm>) -> bool {
        match (self.form.as_ref(), form) {
            (Some(a), Some(b)) => a == b,
            _ => are_isomorphic(&self.graph, g),
        }
    }
}

fn iso_form(g: &Graph) -> Option<CanonicalForm> {
    (g.order() <= CANONICAL_MAX_ORDER)
        .then(|| canonical_form(g).ok())
        .flatten()
}

fn instantiate(id: TheoremId, n: usize) -> Result<Vec<FamilyInstance>> {
    let mut out: Vec<FamilyInstance> = Vec::new();
    for template in id.templates() {
        let candidates: Vec<(Option<usize>, FamilySpec)> = match template.min_t {
            None => vec![(None, (template.build)(0))],
            Some(lo) => (lo..=n.max(lo))
                .map(|t| (Some(t), (template.build)(t)))
                .collect(),
        };
        for (t, spec) in candidates {
            if spec.order() != n {
                continue;
            }
            let graph = spec.construct()?;
            let alias = FamilyAlias {
                theorem: id,
                entry: template.entry,
                notation: template.notation,
                t,
                expression: spec.to_string(),
            };
            let form = iso_form(&graph);
            match out
                .iter_mut()
                .find(|i| i.is_isomorphic_to(&graph, form.as_ref()))
            {
                Some(existing) => existing.aliases.push(alias),
                None => out.push(FamilyInstance {
                    graph,
                    form,
                    aliases: vec![alias],
                }),
            }
        }
    }
    Ok(out)
}

/// Every graph of order `n` produced by the list `id`, deduplicated up to
/// isomorphism. Results are cached per `(id, n)`.
pub fn instantiate_families(id: TheoremId, n: usize) -> Result<Arc<Vec<FamilyInstance>>> {
    type Cache = RwLock<HashMap<(TheoremId, usize), Arc<Vec<FamilyInstance>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    if n < id.min_order() {
        return Err(Error::NotApplicable {
            id,
            order: n,
            min: id.min_order(),
        });
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().expect("catalog cache poisoned").get(&(id, n)) {
        return Ok(hit.clone());
    }
    let built = Arc::new(instantiate(id, n)?);
    let mut w = cache.write().expect("catalog cache poisoned");
    Ok(w.entry((id, n)).or_insert(built).clone())
}

/// Every list entry (over all applicable lists) isomorphic to `g`.
pub fn matching_families(g: &Graph) -> Result<Vec<FamilyAlias>> {
    let n = g.order();
    let form = iso_form(g);
    let mut out = Vec::new();
    for id in TheoremId::ALL {
        if n < id.min_order() {
            continue;
        }
        for inst in instantiate_families(id, n)?.iter() {
            if inst.is_isomorphic_to(g, form.as_ref()) {
                out.extend(inst.aliases.iter().cloned());
            }
        }
    }
    Ok(out)
}

/// False exactly when `dim(G_c) = n - 4`, `diam(G_c) ∈ {2, 3}` and the twin
/// graph of `G_c` has between 5 and 9 vertices.
pub fn in_family_f(g: &Graph) -> Result<bool> {
    let n = g.order();
    let core = core_graph(g);
    let twin_count = twin_graph(&core).classes.len();
    if !(5..=9).contains(&twin_count) || n < 4 {
        return Ok(true);
    }
    let diam = core.diameter()?;
    if !(2..=3).contains(&diam) {
        return Ok(true);
    }
    Ok(metric_dimension(&core)?.dim != n - 4)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwinSummary {
    pub class_sizes: Vec<usize>,
    pub class_types: Vec<ClassType>,
    pub quotient_order: usize,
    pub alpha: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub graph6: String,
    pub order: usize,
    pub edges: usize,
    pub connected: bool,
    /// `None` for disconnected graphs.
    pub dim: Option<usize>,
    pub resolving_witness: Option<Vec<usize>>,
    pub distinguishing_number: usize,
    pub diameter: Option<usize>,
    pub core_diameter: usize,
    pub core_twin_graph_order: usize,
    pub twins: TwinSummary,
    pub in_family_f: bool,
    pub matches: Vec<FamilyAlias>,
}

pub fn classify_graph(g: &Graph) -> Result<ClassificationReport> {
    let connected = g.is_connected();
    let witness = if connected {
        Some(metric_dimension(g)?)
    } else {
        None
    };
    let core = core_graph(g);
    let ts = twin_graph(g);
    Ok(ClassificationReport {
        graph6: write_graph6(g),
        order: g.order(),
        edges: g.size(),
        connected,
        dim: witness.as_ref().map(|w| w.dim),
        resolving_witness: witness.map(|w| w.witness),
        distinguishing_number: distinguishing_number(g)?,
        diameter: g.diameter().ok(),
        core_diameter: core.diameter()?,
        core_twin_graph_order: twin_graph(&core).classes.len(),
        twins: TwinSummary {
            class_sizes: ts.class_sizes(),
            class_types: ts.class_type.clone(),
            quotient_order: ts.quotient.order(),
            alpha: ts.alpha,
        },
        in_family_f: in_family_f(g)?,
        matches: matching_families(g)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(spec: &str) -> Graph {
        spec.parse::<FamilySpec>().unwrap().construct().unwrap()
    }

    fn has(list: &[FamilyInstance], spec: &str) -> bool {
        let target = g(spec);
        list.iter().any(|i| are_isomorphic(&i.graph, &target))
    }

    #[test]
    fn list_lengths() {
        assert_eq!(DN.len(), 2);
        assert_eq!(DN1.len(), 4);
        assert_eq!(DN2.len(), 14);
        assert_eq!(DN3.len(), 42);
        for id in TheoremId::ALL {
            let entries: Vec<usize> = id.templates().iter().map(|t| t.entry).collect();
            assert_eq!(entries, (1..=entries.len()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn dn1_at_four_and_five() {
        let four = instantiate_families(TheoremId::Dn1, 4).unwrap();
        assert_eq!(four.len(), 4);
        for s in ["C4", "K(3,1)", "2*K2", "U(K3,K1)"] {
            assert!(has(&four, s), "{s}");
        }
        let five = instantiate_families(TheoremId::Dn1, 5).unwrap();
        assert_eq!(five.len(), 2);
        assert!(has(&five, "K(4,1)") && has(&five, "U(K4,K1)"));
    }

    #[test]
    fn dn2_at_five() {
        let five = instantiate_families(TheoremId::Dn2, 5).unwrap();
        assert!(has(&five, "C5"));
        assert!(has(&five, "J(K2,E3)"));
    }

    #[test]
    fn aliases_are_merged() {
        // K_t ∪ 2K_1 and K̄_t ∪ K_2 coincide at t = 2.
        let four = instantiate_families(TheoremId::Dn2, 4).unwrap();
        let inst = four
            .iter()
            .find(|i| are_isomorphic(&i.graph, &g("U(K2,E2)")))
            .unwrap();
        let entries: Vec<usize> = inst.aliases.iter().map(|a| a.entry).collect();
        assert_eq!(entries, vec![10, 12]);
        assert!(four.iter().all(|i| !i.aliases.is_empty()));
    }

    #[test]
    fn order_bounds() {
        assert!(matches!(
            instantiate_families(TheoremId::Dn3, 4),
            Err(Error::NotApplicable { min: 5, .. })
        ));
        assert!(instantiate_families(TheoremId::Dn2, 3).is_err());
        assert_eq!("dn-2".parse::<TheoremId>(), Ok(TheoremId::Dn2));
        assert!("Dn7".parse::<TheoremId>().is_err());
    }

    #[test]
    fn classify_examples() {
        let r = classify_graph(&g("C4")).unwrap();
        assert_eq!(r.distinguishing_number, 3);
        assert!(r
            .matches
            .iter()
            .any(|m| m.theorem == TheoremId::Dn1 && m.entry == 1));

        let r = classify_graph(&g("P4")).unwrap();
        assert_eq!(r.distinguishing_number, 2);
        assert!(r
            .matches
            .iter()
            .any(|m| m.theorem == TheoremId::Dn2 && m.entry == 2));

        let r = classify_graph(&g("P5")).unwrap();
        assert_eq!(r.distinguishing_number, 2);
        assert_eq!(r.dim, Some(1));
        assert!(r.in_family_f);
        assert!(r
            .matches
            .iter()
            .any(|m| m.theorem == TheoremId::Dn3 && m.entry == 1));

        let r = classify_graph(&g("2*K2")).unwrap();
        assert_eq!(r.dim, None);
        assert_eq!(r.core_diameter, 2);
    }

    #[test]
    fn small_orders_are_in_f() {
        for s in ["K1", "P3", "C4", "2*K2", "K4"] {
            assert_eq!(in_family_f(&g(s)), Ok(true), "{s}");
        }
    }
}
