//! Bound-quiver presentations `kQ/I` with `Q` acyclic and `I` generated by
//! paths of length two.

mod classify;
mod dsl;

use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Field;

pub use classify::{classify, ClassReport, Violation};
pub use dsl::{emit_presentation, parse_presentation, ParseError};

/// Index of a vertex in the presentation's topological order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub usize);

/// Index of an arrow in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation `{first} {second}` is not composable: `{first}` ends at `{end}` but `{second}` starts at `{start}`")]
    NonComposable { first: String, second: String, end: String, start: String },
    #[error("duplicate relation `{0} {1}`")]
    DuplicateRelation(String, String),
    #[error("quiver has an oriented cycle through vertex `{0}`")]
    Cyclic(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
}

/// Finite acyclic quiver. Vertices are stored in a fixed topological order
/// (ties broken by declaration order); arrows in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    outgoing: Vec<Vec<ArrowId>>,
    incoming: Vec<Vec<ArrowId>>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Quiver {
    /// Builds a quiver from declared vertex names and `(name, source, target)`
    /// arrow triples. Rejects duplicates, dangling endpoints and cycles.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver, PresentationError> {
        let mut declared: HashMap<&str, usize> = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            let v = v.as_ref();
            if !is_identifier(v) {
                return Err(PresentationError::InvalidIdentifier(v.to_string()));
            }
            if declared.insert(v, i).is_some() {
                return Err(PresentationError::DuplicateVertex(v.to_string()));
            }
        }
        let mut seen = HashMap::new();
        let mut raw = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(PresentationError::InvalidIdentifier(name.to_string()));
            }
            if seen.insert(name, ()).is_some() {
                return Err(PresentationError::DuplicateArrow(name.to_string()));
            }
            let lookup = |v: &str| {
                declared.get(v).copied().ok_or_else(|| PresentationError::UnknownVertex(v.to_string()))
            };
            raw.push((name.to_string(), lookup(s.as_ref())?, lookup(t.as_ref())?));
        }

        // Kahn's algorithm, always releasing the earliest-declared ready vertex.
        let n = vertices.len();
        let mut indegree = vec![0usize; n];
        for &(_, _, t) in &raw {
            indegree[t] += 1;
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&v| indegree[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = ready.pop() {
            order.push(v);
            for &(_, s, t) in &raw {
                if s == v {
                    indegree[t] -= 1;
                    if indegree[t] == 0 {
                        ready.push(Reverse(t));
                    }
                }
            }
        }
        if order.len() < n {
            let stuck = (0..n).find(|&v| indegree[v] > 0).expect("some vertex remains");
            return Err(PresentationError::Cyclic(vertices[stuck].as_ref().to_string()));
        }
        let mut position = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            position[v] = pos;
        }

        let arrows: Vec<Arrow> = raw
            .into_iter()
            .map(|(name, s, t)| Arrow { name, source: VertexId(position[s]), target: VertexId(position[t]) })
            .collect();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source.0].push(ArrowId(i));
            incoming[a.target.0].push(ArrowId(i));
        }
        Ok(Quiver {
            vertices: order.iter().map(|&v| vertices[v].as_ref().to_string()).collect(),
            arrows,
            outgoing,
            incoming,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl ExactSizeIterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl ExactSizeIterator<Item = ArrowId> {
        (0..self.arrows.len()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn outgoing(&self, v: VertexId) -> &[ArrowId] {
        &self.outgoing[v.0]
    }

    pub fn incoming(&self, v: VertexId) -> &[ArrowId] {
        &self.incoming[v.0]
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|v| v == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }
}

/// A path of the quiver, composed left to right. The empty arrow list is the
/// trivial path at `source`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn arrow(q: &Quiver, a: ArrowId) -> Path {
        Path { source: q.source(a), target: q.target(a), arrows: vec![a] }
    }

    /// Builds a path from consecutive arrows; `None` if they do not compose.
    pub fn from_arrows(q: &Quiver, arrows: &[ArrowId]) -> Option<Path> {
        let (first, rest) = arrows.split_first()?;
        let mut p = Path::arrow(q, *first);
        for &a in rest {
            p = p.compose(&Path::arrow(q, a))?;
        }
        Some(p)
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Concatenation `self · other`, defined when `self` ends where `other`
    /// starts. Trivial paths act as units at their vertex.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertex_name(self.path.source));
        }
        for (i, a) in self.path.arrows.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(&self.quiver.arrow(*a).name)?;
        }
        Ok(())
    }
}

/// `A = kQ/I` with `Q` acyclic and `I` generated by composable arrow pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    quiver: Quiver,
    relations: BTreeSet<(ArrowId, ArrowId)>,
    field: Field,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: &[(ArrowId, ArrowId)], field: Field) -> Result<Self, PresentationError> {
        let mut set = BTreeSet::new();
        for &(a, b) in relations {
            for x in [a, b] {
                if x.0 >= quiver.arrow_count() {
                    return Err(PresentationError::UnknownArrow(format!("#{}", x.0)));
                }
            }
            if quiver.target(a) != quiver.source(b) {
                return Err(PresentationError::NonComposable {
                    first: quiver.arrow(a).name.clone(),
                    second: quiver.arrow(b).name.clone(),
                    end: quiver.vertex_name(quiver.target(a)).to_string(),
                    start: quiver.vertex_name(quiver.source(b)).to_string(),
                });
            }
            if !set.insert((a, b)) {
                return Err(PresentationError::DuplicateRelation(
                    quiver.arrow(a).name.clone(),
                    quiver.arrow(b).name.clone(),
                ));
            }
        }
        Ok(Presentation { quiver, relations: set, field })
    }

    /// Convenience constructor from names.
    pub fn from_names<S: AsRef<str>>(
        vertices: &[S],
        arrows: &[(S, S, S)],
        relations: &[(S, S)],
        field: Field,
    ) -> Result<Self, PresentationError> {
        let quiver = Quiver::new(vertices, arrows)?;
        let lookup = |name: &str| {
            quiver.arrow_by_name(name).ok_or_else(|| PresentationError::UnknownArrow(name.to_string()))
        };
        let rels = relations
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>, PresentationError>>()?;
        Presentation::new(quiver, &rels, field)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &BTreeSet<(ArrowId, ArrowId)> {
        &self.relations
    }

    pub fn is_relation(&self, a: ArrowId, b: ArrowId) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_field(&self, field: Field) -> Presentation {
        Presentation { field, ..self.clone() }
    }

    /// Arrows `b` with `a b` a relation, in arrow order.
    pub fn relation_successors(&self, a: ArrowId) -> impl Iterator<Item = ArrowId> + '_ {
        self.relations.range((a, ArrowId(0))..=(a, ArrowId(usize::MAX))).map(|&(_, b)| b)
    }

    /// Path `a` by name, or arrows joined with `.`.
    pub fn path_by_names(&self, text: &str) -> Option<Path> {
        let arrows = text
            .split('.')
            .map(|n| self.quiver.arrow_by_name(n))
            .collect::<Option<Vec<_>>>()?;
        Path::from_arrows(&self.quiver, &arrows)
    }

    /// Stable short digest of the canonical text form.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let bytes = Sha256::digest(emit_presentation(self).as_bytes());
        hex::encode(&bytes[..8])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn compose_paths() {
        let p = fixtures::e5();
        let q = p.quiver();
        let a1 = Path::arrow(q, q.arrow_by_name("alpha1").unwrap());
        let a2 = Path::arrow(q, q.arrow_by_name("alpha2").unwrap());
        let g = Path::arrow(q, q.arrow_by_name("gamma").unwrap());
        let e1 = Path::trivial(q.vertex_by_name("1").unwrap());
        assert_eq!(e1.compose(&a1), Some(a1.clone()));
        assert_eq!(a1.compose(&Path::trivial(q.vertex_by_name("2").unwrap())), Some(a1.clone()));
        let a12 = a1.compose(&a2).unwrap();
        assert_eq!(a12.len(), 2);
        assert_eq!(a12.display(q).to_string(), "alpha1.alpha2");
        assert_eq!(a1.compose(&g), None);
    }

    #[test]
    fn compose_is_associative_on_fixture_paths() {
        for p in fixtures::all().into_iter().map(|(_, p)| p) {
            let q = p.quiver();
            let mut paths: Vec<Path> = q.vertices().map(Path::trivial).collect();
            let mut frontier = paths.clone();
            for _ in 0..4 {
                let next: Vec<Path> = frontier
                    .iter()
                    .flat_map(|x| q.outgoing(x.target()).iter().map(move |&a| x.compose(&Path::arrow(q, a)).unwrap()))
                    .collect();
                paths.extend(next.iter().cloned());
                frontier = next;
            }
            for x in &paths {
                for y in &paths {
                    for z in &paths {
                        let left = x.compose(y).and_then(|xy| xy.compose(z));
                        let right = y.compose(z).and_then(|yz| x.compose(&yz));
                        if let (Some(l), Some(r)) = (&left, &right) {
                            assert_eq!(l, r);
                        }
                        assert_eq!(left.is_some(), right.is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn vertices_are_topologically_ordered() {
        let p = Presentation::from_names(&["c", "b", "a"], &[("x", "a", "b"), ("y", "b", "c")], &[], Field::Rational)
            .unwrap();
        let q = p.quiver();
        let names: Vec<&str> = q.vertices().map(|v| q.vertex_name(v)).collect();
        assert_eq!(names, ["a", "b", "c"]);
        for a in q.arrow_ids() {
            assert!(q.source(a) < q.target(a));
        }
    }

    #[test]
    fn rejects_cycles_and_loops() {
        let err = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap_err();
        assert!(matches!(err, PresentationError::Cyclic(_)));
        let err = Quiver::new(&["1"], &[("a", "1", "1")]).unwrap_err();
        assert!(matches!(err, PresentationError::Cyclic(_)));
    }

    #[test]
    fn rejects_duplicate_relation() {
        let err = Presentation::from_names(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3")],
            &[("a", "b"), ("a", "b")],
            Field::Rational,
        )
        .unwrap_err();
        assert_eq!(err, PresentationError::DuplicateRelation("a".into(), "b".into()));
    }
}
