//! Path basis of `A = kQ/I`, multiplication of basis paths, and the chain
//! sets indexing the minimal bimodule resolution.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::linalg::Scalar;
use crate::presentation::{ArrowId, Path, Presentation, Quiver, VertexId};

/// Nonzero paths of `A`: trivial paths first, then by length, then
/// lexicographically by arrow index.
#[derive(Clone, Debug)]
pub struct PathBasis {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    parallel: HashMap<(VertexId, VertexId), Vec<usize>>,
    relations: BTreeSet<(ArrowId, ArrowId)>,
}

impl PathBasis {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of the trivial path at `v`.
    pub fn trivial(&self, v: VertexId) -> usize {
        v.0
    }

    /// Basis paths from `s` to `t`, in basis order.
    pub fn parallel(&self, s: VertexId, t: VertexId) -> &[usize] {
        self.parallel.get(&(s, t)).map_or(&[], Vec::as_slice)
    }

    /// Product of two basis paths: their concatenation if it is defined and
    /// avoids the relations, otherwise zero (`None`).
    pub fn multiply(&self, a: usize, b: usize) -> Option<usize> {
        let (p, q) = (&self.paths[a], &self.paths[b]);
        if let (Some(&x), Some(&y)) = (p.arrows().last(), q.arrows().first()) {
            if self.relations.contains(&(x, y)) {
                return None;
            }
        }
        // Quadratic ideal: checking the junction suffices.
        let pq = p.compose(q)?;
        Some(self.index[&pq])
    }

    /// Index of the subpath `arrows[range]` of basis path `i` (trivial at the
    /// appropriate vertex when the range is empty).
    pub fn subpath(&self, q: &Quiver, i: usize, from: usize, to: usize) -> usize {
        let p = &self.paths[i];
        if from == to {
            let v = if from == 0 { p.source() } else { q.target(p.arrows()[from - 1]) };
            return self.trivial(v);
        }
        let sub = Path::from_arrows(q, &p.arrows()[from..to]).expect("subpath composes");
        self.index[&sub]
    }
}

/// Enumerates the basis of `A`. Finite because the quiver is acyclic.
pub fn nonzero_paths(p: &Presentation) -> PathBasis {
    let q = p.quiver();
    let mut paths: Vec<Path> = q.vertices().map(Path::trivial).collect();
    let mut layer: Vec<Path> = q.arrow_ids().map(|a| Path::arrow(q, a)).collect();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for path in &layer {
            let last = *path.arrows().last().expect("nontrivial");
            for &b in q.outgoing(path.target()) {
                if !p.is_relation(last, b) {
                    next.push(path.compose(&Path::arrow(q, b)).expect("composable"));
                }
            }
        }
        paths.append(&mut layer);
        layer = next;
    }
    let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parallel: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    for (i, path) in paths.iter().enumerate() {
        parallel.entry((path.source(), path.target())).or_default().push(i);
    }
    PathBasis { paths, index, parallel, relations: p.relations().clone() }
}

/// An element of `A` as coefficients over the path basis. The empty map is
/// the zero element.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element(BTreeMap<usize, Scalar>);

impl Element {
    pub fn zero() -> Self {
        Element(BTreeMap::new())
    }

    pub fn basis(i: usize, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(i, &c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn coefficient(&self, i: usize) -> Option<&Scalar> {
        self.0.get(&i)
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.get_mut(&i) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.0.remove(&i);
                }
            }
            None => {
                self.0.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, factor: &Scalar) {
        for (i, c) in other.terms() {
            self.add_term(i, &(factor * c));
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn mul(&self, other: &Element, basis: &PathBasis) -> Element {
        let mut out = Element::zero();
        for (i, a) in self.terms() {
            for (j, b) in other.terms() {
                if let Some(k) = basis.multiply(i, j) {
                    out.add_term(k, &(a * b));
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver, basis: &'a PathBasis) -> impl fmt::Display + 'a {
        ElementDisplay { element: self, quiver, basis }
    }
}

struct ElementDisplay<'a> {
    element: &'a Element,
    quiver: &'a Quiver,
    basis: &'a PathBasis,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.element.is_zero() {
            return f.write_str("0");
        }
        for (n, (i, c)) in self.element.terms().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", c, self.basis.path(i).display(self.quiver))?;
        }
        Ok(())
    }
}

/// An element `α_1⋯α_n` of `Γ_n`: consecutive arrows compose and every
/// consecutive pair is a relation. Length zero is a vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    start: VertexId,
    arrows: Vec<ArrowId>,
}

impl Chain {
    pub fn vertex(v: VertexId) -> Chain {
        Chain { start: v, arrows: Vec::new() }
    }

    /// Checks the chain condition.
    pub fn new(p: &Presentation, arrows: Vec<ArrowId>) -> Option<Chain> {
        let q = p.quiver();
        let first = *arrows.first()?;
        for w in arrows.windows(2) {
            if q.target(w[0]) != q.source(w[1]) || !p.is_relation(w[0], w[1]) {
                return None;
            }
        }
        Some(Chain { start: q.source(first), arrows })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn source(&self) -> VertexId {
        self.start
    }

    pub fn target(&self, q: &Quiver) -> VertexId {
        self.arrows.last().map_or(self.start, |&a| q.target(a))
    }

    /// The subchain `arrows[from..to]`; a vertex chain when empty.
    pub fn slice(&self, q: &Quiver, from: usize, to: usize) -> Chain {
        if from == to {
            let v = if from == 0 { self.start } else { q.target(self.arrows[from - 1]) };
            return Chain::vertex(v);
        }
        Chain { start: q.source(self.arrows[from]), arrows: self.arrows[from..to].to_vec() }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> impl fmt::Display + 'a {
        ChainDisplay { chain: self, quiver: q }
    }
}

struct ChainDisplay<'a> {
    chain: &'a Chain,
    quiver: &'a Quiver,
}

impl fmt::Display for ChainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.arrows.is_empty() {
            return write!(f, "e_{}", self.quiver.vertex_name(self.chain.start));
        }
        let names: Vec<&str> = self.chain.arrows.iter().map(|&a| self.quiver.arrow(a).name.as_str()).collect();
        f.write_str(&names.join("."))
    }
}

/// `Γ_n` in lexicographic arrow order: vertices for `n = 0`, arrows for
/// `n = 1`, then right extensions along relations.
pub fn chains(p: &Presentation, n: usize) -> Vec<Chain> {
    let q = p.quiver();
    if n == 0 {
        return q.vertices().map(Chain::vertex).collect();
    }
    let mut layer: Vec<Chain> = q.arrow_ids().map(|a| Chain { start: q.source(a), arrows: vec![a] }).collect();
    for _ in 1..n {
        layer = extend_chains(p, &layer);
        if layer.is_empty() {
            break;
        }
    }
    layer
}

pub(crate) fn extend_chains(p: &Presentation, layer: &[Chain]) -> Vec<Chain> {
    let mut next = Vec::new();
    for c in layer {
        let last = *c.arrows.last().expect("extension needs n >= 1");
        for b in p.relation_successors(last) {
            let mut arrows = c.arrows.clone();
            arrows.push(b);
            next.push(Chain { start: c.start, arrows });
        }
    }
    next
}

/// Largest `n` with `Γ_n` nonempty (0 for an arrowless quiver).
pub fn max_chain_length(p: &Presentation) -> usize {
    let q = p.quiver();
    if q.arrow_count() == 0 {
        return 0;
    }
    let mut n = 1;
    let mut layer = chains(p, 1);
    loop {
        layer = extend_chains(p, &layer);
        if layer.is_empty() {
            return n;
        }
        n += 1;
    }
}
