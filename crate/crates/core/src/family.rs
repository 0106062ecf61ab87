//! Named graph families and a small expression language for composing them.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr    := term ('[' part (',' part)* ']')*
//! term    := INT '*' expr            disjoint copies
//!          | 'J(' expr (',' expr)* ')'   join
//!          | 'U(' expr (',' expr)* ')'   disjoint union
//!          | 'co(' expr ')'              complement
//!          | 'K(' INT (',' INT)+ ')'      complete multipartite
//!          | 'K' INT | 'E' INT | 'P' INT | 'C' INT | 'T' INT
//!          | "C5'" | 'House'
//! part    := 'K' INT | 'E' INT
//! ```
//!
//! `E t` is the edgeless graph on `t` vertices, `T k` the broom tree with
//! root degree `k`, and a postfix `[...]` blows each vertex up into a
//! clique or independent set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, Part, MAX_ORDER};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    Empty(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    /// Root of degree `k` carrying pendant paths of lengths `1..=k`.
    BroomTree(usize),
    /// The 5-cycle with one chord.
    HouseC5Prime,
    Complement(Box<FamilySpec>),
    Union(Vec<FamilySpec>),
    Join(Vec<FamilySpec>),
    BlowUp(Box<FamilySpec>, Vec<Part>),
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

impl FamilySpec {
    pub fn complement(inner: FamilySpec) -> Self {
        FamilySpec::Complement(Box::new(inner))
    }

    pub fn union(parts: impl IntoIterator<Item = FamilySpec>) -> Self {
        FamilySpec::Union(parts.into_iter().collect())
    }

    pub fn join(parts: impl IntoIterator<Item = FamilySpec>) -> Self {
        FamilySpec::Join(parts.into_iter().collect())
    }

    /// `copies` disjoint copies of `inner`.
    pub fn copies(copies: usize, inner: FamilySpec) -> Self {
        FamilySpec::Union(vec![inner; copies])
    }

    pub fn blow_up(base: FamilySpec, parts: Vec<Part>) -> Self {
        FamilySpec::BlowUp(Box::new(base), parts)
    }

    /// Vertex count of the graph this spec describes, without building it.
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Path(n)
            | FamilySpec::Cycle(n)
            | FamilySpec::Complete(n)
            | FamilySpec::Empty(n) => *n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::CompleteMultipartite(parts) => parts.iter().sum(),
            FamilySpec::BroomTree(k) => 1 + k * (k + 1) / 2,
            FamilySpec::HouseC5Prime => 5,
            FamilySpec::Complement(inner) => inner.order(),
            FamilySpec::Union(xs) | FamilySpec::Join(xs) => xs.iter().map(|x| x.order()).sum(),
            FamilySpec::BlowUp(_, parts) => parts.iter().map(|p| p.size).sum(),
        }
    }

    /// Checks parameter side conditions recursively.
    pub fn validate(&self) -> Result<()> {
        match self {
            FamilySpec::Path(n) | FamilySpec::Complete(n) | FamilySpec::Empty(n) if *n == 0 => {
                Err(invalid(format!("{self} needs at least one vertex")))
            }
            FamilySpec::Cycle(n) if *n < 3 => Err(invalid(format!("cycle C{n} needs n >= 3"))),
            FamilySpec::CompleteBipartite(a, b) if *a == 0 || *b == 0 => {
                Err(invalid("complete bipartite parts must be non-empty"))
            }
            FamilySpec::CompleteMultipartite(parts) if parts.len() < 2 || parts.contains(&0) => {
                Err(invalid(
                    "complete multipartite needs at least two non-empty parts",
                ))
            }
            FamilySpec::BroomTree(k) if *k < 3 => {
                Err(invalid(format!("broom tree T{k} needs k >= 3")))
            }
            FamilySpec::Complement(inner) => inner.validate(),
            FamilySpec::Union(xs) | FamilySpec::Join(xs) => {
                if xs.is_empty() {
                    return Err(invalid("union/join needs at least one operand"));
                }
                xs.iter().try_for_each(|x| x.validate())
            }
            FamilySpec::BlowUp(base, parts) => {
                base.validate()?;
                if parts.len() != base.order() {
                    return Err(Error::ArityMismatch {
                        expected: base.order(),
                        actual: parts.len(),
                    });
                }
                if parts.iter().any(|p| p.size == 0) {
                    return Err(invalid("blow-up parts must be non-empty"));
                }
                Ok(())
            }
            _ => Ok(()),
        }?;
        let n = self.order();
        if n > MAX_ORDER {
            return Err(Error::OrderOverflow(n));
        }
        Ok(())
    }

    pub fn construct(&self) -> Result<Graph> {
        self.validate()?;
        self.build()
    }

    fn build(&self) -> Result<Graph> {
        match self {
            FamilySpec::Path(n) => {
                let edges: Vec<_> = (1..*n).map(|i| (i - 1, i)).collect();
                Graph::from_edges(*n, &edges)
            }
            FamilySpec::Cycle(n) => {
                let edges: Vec<_> = (0..*n).map(|i| (i, (i + 1) % n)).collect();
                Graph::from_edges(*n, &edges)
            }
            FamilySpec::Complete(n) => Graph::complete(*n),
            FamilySpec::Empty(n) => Graph::empty(*n),
            FamilySpec::CompleteBipartite(a, b) => Graph::empty(*a)?.join(&Graph::empty(*b)?),
            FamilySpec::CompleteMultipartite(parts) => {
                let mut g = Graph::empty(0)?;
                for &p in parts {
                    g = g.join(&Graph::empty(p)?)?;
                }
                Ok(g)
            }
            FamilySpec::BroomTree(k) => Ok(broom_tree(*k).0),
            FamilySpec::HouseC5Prime => {
                Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
            }
            FamilySpec::Complement(inner) => Ok(inner.build()?.complement()),
            FamilySpec::Union(xs) => {
                let mut g = Graph::empty(0)?;
                for x in xs {
                    g = g.disjoint_union(&x.build()?)?;
                }
                Ok(g)
            }
            FamilySpec::Join(xs) => {
                let mut g = Graph::empty(0)?;
                for x in xs {
                    g = g.join(&x.build()?)?;
                }
                Ok(g)
            }
            FamilySpec::BlowUp(base, parts) => base.build()?.blow_up(parts),
        }
    }
}

/// Broom tree `T_k` and its root (always vertex 0). The pendant path of
/// length `i` is laid out right after the paths of lengths `1..i`.
fn broom_tree(k: usize) -> (Graph, usize) {
    let n = 1 + k * (k + 1) / 2;
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for len in 1..=k {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    (
        Graph::from_edges(n, &edges).expect("broom tree edges in range"),
        0,
    )
}

/// A graph with distinguishing number `distinguishing` and metric dimension
/// `dimension`, for `1 <= distinguishing < dimension`.
///
/// With one color the asymmetric broom tree `T_{dimension+1}` works. Otherwise
/// the root of `T_{dimension-distinguishing+2}` is joined to every vertex of
/// `K_distinguishing`.
pub fn dimension_gap_graph(distinguishing: usize, dimension: usize) -> Result<Graph> {
    if distinguishing == 0 || distinguishing >= dimension {
        return Err(invalid(format!(
            "need 1 <= D < dim, got D={distinguishing}, dim={dimension}"
        )));
    }
    if distinguishing == 1 {
        return FamilySpec::BroomTree(dimension + 1).construct();
    }
    let k = dimension - distinguishing + 2;
    let tree_order = FamilySpec::BroomTree(k).order();
    let n = tree_order + distinguishing;
    if n > MAX_ORDER {
        return Err(Error::OrderOverflow(n));
    }
    let (tree, root) = broom_tree(k);
    let mut g = tree.disjoint_union(&Graph::complete(distinguishing)?)?;
    for v in tree_order..n {
        g.add_edge(root, v);
    }
    Ok(g)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, head: &str, xs: &[FamilySpec]) -> fmt::Result {
            write!(f, "{head}(")?;
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")
        }
        match self {
            FamilySpec::Path(n) => write!(f, "P{n}"),
            FamilySpec::Cycle(n) => write!(f, "C{n}"),
            FamilySpec::Complete(n) => write!(f, "K{n}"),
            FamilySpec::Empty(n) => write!(f, "E{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "K({a},{b})"),
            FamilySpec::CompleteMultipartite(parts) => {
                f.write_str("K(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            FamilySpec::BroomTree(k) => write!(f, "T{k}"),
            FamilySpec::HouseC5Prime => f.write_str("C5'"),
            FamilySpec::Complement(inner) => write!(f, "co({inner})"),
            FamilySpec::Union(xs) => list(f, "U", xs),
            FamilySpec::Join(xs) => list(f, "J", xs),
            FamilySpec::BlowUp(base, parts) => {
                write!(f, "{base}[")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { chars, pos: 0 };
        let spec = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(spec)
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> Error {
        let rest: String = self.chars[self.pos.min(self.chars.len())..]
            .iter()
            .collect();
        Error::Expression(format!("{msg} at offset {} (near {rest:?})", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn eat_word(&mut self, word: &str) -> bool {
        let w: Vec<char> = word.chars().collect();
        if self.chars[self.pos..].starts_with(&w) {
            self.pos += w.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<usize> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| self.error("integer out of range"))
    }

    fn expr(&mut self) -> Result<FamilySpec> {
        let mut spec = self.term()?;
        while self.eat('[') {
            let mut parts = vec![self.part()?];
            while self.eat(',') {
                parts.push(self.part()?);
            }
            self.expect(']')?;
            spec = FamilySpec::blow_up(spec, parts);
        }
        Ok(spec)
    }

    fn part(&mut self) -> Result<Part> {
        if self.eat('K') {
            Ok(Part::complete(self.int()?))
        } else if self.eat('E') {
            Ok(Part::empty(self.int()?))
        } else {
            Err(self.error("expected blow-up part K<t> or E<t>"))
        }
    }

    fn operands(&mut self) -> Result<Vec<FamilySpec>> {
        self.expect('(')?;
        let mut xs = vec![self.expr()?];
        while self.eat(',') {
            xs.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(xs)
    }

    fn term(&mut self) -> Result<FamilySpec> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let copies = self.int()?;
            self.expect('*')?;
            if copies == 0 {
                return Err(self.error("copy count must be positive"));
            }
            let inner = self.expr()?;
            return Ok(FamilySpec::copies(copies, inner));
        }
        if self.eat_word("co(") {
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(FamilySpec::complement(inner));
        }
        if self.eat_word("House") || self.eat_word("C5'") {
            return Ok(FamilySpec::HouseC5Prime);
        }
        if self.eat_word("J") {
            return Ok(FamilySpec::Join(self.operands()?));
        }
        if self.eat_word("U") {
            return Ok(FamilySpec::Union(self.operands()?));
        }
        if self.eat_word("K(") {
            let mut parts = vec![self.int()?];
            while self.eat(',') {
                parts.push(self.int()?);
            }
            self.expect(')')?;
            return Ok(match parts.as_slice() {
                [a, b] => FamilySpec::CompleteBipartite(*a, *b),
                _ => FamilySpec::CompleteMultipartite(parts),
            });
        }
        let head = self
            .peek()
            .ok_or_else(|| self.error("unexpected end of input"))?;
        let ctor: fn(usize) -> FamilySpec = match head {
            'K' => FamilySpec::Complete,
            'E' => FamilySpec::Empty,
            'P' => FamilySpec::Path,
            'C' => FamilySpec::Cycle,
            'T' => FamilySpec::BroomTree,
            _ => return Err(self.error("unknown family")),
        };
        self.pos += 1;
        Ok(ctor(self.int()?))
    }
}
