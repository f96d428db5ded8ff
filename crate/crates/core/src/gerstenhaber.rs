//! Cup product, circle products and the bracket on minimal cochains, and the
//! products they induce on cohomology.
//!
//! Two rules for `f ∘_i g` are offered. [`Variant::Literal`] only lets a value
//! of `g` that is a single arrow replace the inserted subchain.
//! [`Variant::Peeled`] also lets a longer value `q` contribute by splitting a
//! boundary arrow off it: at `i = 1` a value `q'β` contributes `q'·f(β⋯)`,
//! at `i = n` a value `βq'` contributes `f(⋯β)·q'`. When `f` has degree 1 the
//! single slot is both first and last and every arrow of `q` is tried in
//! turn, `Σ_j q_{<j}·f(q_j)·q_{>j}`. The peeled rule is the one that is
//! compatible with the differential in general; the literal rule is what the
//! cochain-level vanishing for gentle algebras is stated for.

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{Chain, Element};
use crate::cohomology::{Cohomology, CohomologyClass, CohomologyError};
use crate::complex::{Cochain, MinimalComplex};
use crate::linalg::Scalar;
use crate::presentation::ArrowId;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Literal,
    Peeled,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::Literal, Variant::Peeled];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Literal => "literal",
            Variant::Peeled => "peeled",
        }
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "literal" => Ok(Variant::Literal),
            "peeled" => Ok(Variant::Peeled),
            other => Err(format!("unknown circle-product variant `{other}` (expected literal or peeled)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProductError {
    #[error("slot {i} out of range 1..={n}")]
    SlotOutOfRange { i: usize, n: usize },
    #[error("product of two degree-0 cochains has degree -1")]
    NegativeDegree,
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

fn sign(c: &MinimalComplex, k: i64) -> Scalar {
    c.field().sign(k.rem_euclid(2) as usize)
}

/// `(f ∪ g)(α_1⋯α_{n+m}) = f(α_1⋯α_n) · g(α_{n+1}⋯α_{n+m})`.
pub fn cup(c: &MinimalComplex, f: &Cochain, g: &Cochain) -> Cochain {
    let (n, m) = (f.degree(), g.degree());
    let q = c.presentation().quiver();
    let mut out = c.zero(n + m);
    for (ci, chain) in c.chains(n + m).iter().enumerate() {
        let left = c.evaluate(f, &chain.slice(q, 0, n));
        if left.is_zero() {
            continue;
        }
        let right = c.evaluate(g, &chain.slice(q, n, n + m));
        c.add_value(&mut out, ci, &left.mul(&right, c.paths()));
    }
    out
}

fn arrow_element(c: &MinimalComplex, a: ArrowId) -> usize {
    let q = c.presentation().quiver();
    c.paths().index_of(&crate::presentation::Path::arrow(q, a)).expect("arrows are basis paths")
}

/// `f` evaluated on `prefix · middle · suffix`, zero if that is not a chain.
fn evaluate_spliced(c: &MinimalComplex, f: &Cochain, prefix: &[ArrowId], middle: ArrowId, suffix: &[ArrowId]) -> Element {
    let mut arrows = Vec::with_capacity(prefix.len() + 1 + suffix.len());
    arrows.extend_from_slice(prefix);
    arrows.push(middle);
    arrows.extend_from_slice(suffix);
    match Chain::new(c.presentation(), arrows) {
        Some(chain) => c.evaluate(f, &chain),
        None => Element::zero(),
    }
}

/// `f ∘_i g` for `1 ≤ i ≤ deg f`.
///
/// Inserting a degree-0 cochain gives zero: a normalized cochain vanishes
/// as soon as one argument is an idempotent.
pub fn circ_at(c: &MinimalComplex, f: &Cochain, g: &Cochain, i: usize, variant: Variant) -> Result<Cochain, ProductError> {
    let (n, m) = (f.degree(), g.degree());
    if i == 0 || i > n {
        return Err(ProductError::SlotOutOfRange { i, n });
    }
    let degree = n + m - 1;
    let mut out = c.zero(degree);
    if m == 0 {
        return Ok(out);
    }
    let q = c.presentation().quiver();
    let paths = c.paths();
    let one = c.field().one();
    for (ci, chain) in c.chains(degree).iter().enumerate() {
        let value = c.evaluate(g, &chain.slice(q, i - 1, i - 1 + m));
        if value.is_zero() {
            continue;
        }
        let prefix = &chain.arrows()[..i - 1];
        let suffix = &chain.arrows()[i - 1 + m..];
        let mut acc = Element::zero();
        for (pi, k) in value.terms() {
            let word = paths.path(pi).arrows();
            if word.len() == 1 {
                acc.add_scaled(&evaluate_spliced(c, f, prefix, word[0], suffix), k);
                continue;
            }
            if variant == Variant::Literal {
                continue;
            }
            let len = word.len();
            if n == 1 {
                for (j, &arrow) in word.iter().enumerate() {
                    let left = Element::basis(paths.subpath(q, pi, 0, j), one.clone());
                    let right = Element::basis(paths.subpath(q, pi, j + 1, len), one.clone());
                    let mid = evaluate_spliced(c, f, &[], arrow, &[]);
                    acc.add_scaled(&left.mul(&mid, paths).mul(&right, paths), k);
                }
            } else if i == 1 {
                let left = Element::basis(paths.subpath(q, pi, 0, len - 1), one.clone());
                let mid = evaluate_spliced(c, f, &[], word[len - 1], suffix);
                acc.add_scaled(&left.mul(&mid, paths), k);
            } else if i == n {
                let right = Element::basis(paths.subpath(q, pi, 1, len), one.clone());
                let mid = evaluate_spliced(c, f, prefix, word[0], &[]);
                acc.add_scaled(&mid.mul(&right, paths), k);
            }
        }
        c.add_value(&mut out, ci, &acc);
    }
    Ok(out)
}

/// `f ∘ g = Σ_{i=1}^n (−1)^{(i−1)(m−1)} f ∘_i g`, zero when `deg f = 0`.
pub fn circ(c: &MinimalComplex, f: &Cochain, g: &Cochain, variant: Variant) -> Result<Cochain, ProductError> {
    let (n, m) = (f.degree(), g.degree());
    if n + m == 0 {
        return Err(ProductError::NegativeDegree);
    }
    let mut out = c.zero(n + m - 1);
    for i in 1..=n {
        let term = circ_at(c, f, g, i, variant)?;
        out.add_scaled(&term, &sign(c, (i as i64 - 1) * (m as i64 - 1)));
    }
    Ok(out)
}

/// `[f, g] = f ∘ g − (−1)^{(n−1)(m−1)} g ∘ f`.
pub fn bracket(c: &MinimalComplex, f: &Cochain, g: &Cochain, variant: Variant) -> Result<Cochain, ProductError> {
    let (n, m) = (f.degree() as i64, g.degree() as i64);
    let fg = circ(c, f, g, variant)?;
    let gf = circ(c, g, f, variant)?;
    let mut out = fg;
    out.add_scaled(&gf, &sign(c, (n - 1) * (m - 1) + 1));
    Ok(out)
}

/// The degree-1 cochain `α_1 ↦ ᾱ_1` for the first arrow of the chain of a
/// basis element of positive degree.
pub fn first_arrow_indicator(c: &MinimalComplex, n: usize, index: usize) -> Cochain {
    let e = &c.basis(n)[index];
    let a = c.chains(n)[e.chain].arrows()[0];
    let path = arrow_element(c, a);
    let chain = c.chain_index(1, &Chain::new(c.presentation(), vec![a]).expect("arrow")).expect("arrow chain");
    let mut g = c.zero(1);
    let idx = c.element_index(1, chain, path).expect("arrow is parallel to itself");
    g.add_term(idx, &c.field().one());
    g
}

pub fn induced_cup(h: &Cohomology, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass, ProductError> {
    Ok(h.class_of(&cup(h.complex(), &a.representative, &b.representative))?)
}

pub fn induced_bracket(
    h: &Cohomology,
    a: &CohomologyClass,
    b: &CohomologyClass,
    variant: Variant,
) -> Result<CohomologyClass, ProductError> {
    Ok(h.class_of(&bracket(h.complex(), &a.representative, &b.representative, variant)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cup,
    Bracket,
}

/// `HH^degree` basis class number `index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassRef {
    pub degree: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub left: ClassRef,
    pub right: ClassRef,
    pub degree: usize,
    /// Coordinates of the product class, as strings.
    pub coordinates: Vec<String>,
    pub zero: bool,
}

/// A report-only observation about a pair of degrees whose brackets do not
/// fill the target group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanNote {
    pub degrees: (usize, usize),
    pub target_degree: usize,
    pub target_dim: usize,
    pub spanned_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTable {
    pub kind: ProductKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Variant>,
    pub entries: Vec<TableEntry>,
    /// Every positive-degree product vanishes.
    pub trivial: bool,
    /// Every product of two classes of degree `> 1` vanishes.
    pub trivial_above_one: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<SpanNote>,
}

fn positive_classes(h: &Cohomology) -> Vec<(ClassRef, CohomologyClass)> {
    (1..=h.top_degree())
        .flat_map(|n| h.hh_basis(n).into_iter().enumerate().map(move |(index, k)| (ClassRef { degree: n, index }, k)))
        .collect()
}

fn table<F>(h: &Cohomology, kind: ProductKind, variant: Option<Variant>, product: F) -> ProductTable
where
    F: Fn(&CohomologyClass, &CohomologyClass) -> CohomologyClass + Sync,
{
    let classes = positive_classes(h);
    let pairs: Vec<_> = classes.iter().flat_map(|a| classes.iter().map(move |b| (a, b))).collect();
    let entries: Vec<(TableEntry, CohomologyClass)> = pairs
        .par_iter()
        .map(|((ra, a), (rb, b))| {
            let k = product(a, b);
            let entry = TableEntry {
                left: *ra,
                right: *rb,
                degree: k.degree,
                coordinates: k.coordinates.iter().map(ToString::to_string).collect(),
                zero: k.is_zero(),
            };
            (entry, k)
        })
        .collect();
    let trivial = entries.iter().all(|(e, _)| e.zero);
    let trivial_above_one = entries.iter().all(|(e, _)| e.zero || e.left.degree <= 1 || e.right.degree <= 1);

    let mut notes = Vec::new();
    if kind == ProductKind::Bracket {
        let top = h.top_degree();
        for n in 1..=top {
            for m in 1..=top {
                let t = n + m - 1;
                let target_dim = h.hh_dim(t);
                if target_dim == 0 || h.hh_dim(n) == 0 || h.hh_dim(m) == 0 {
                    continue;
                }
                let spanned_dim = span_dim(
                    h,
                    target_dim,
                    entries.iter().filter(|(e, _)| e.left.degree == n && e.right.degree == m).map(|(_, k)| &k.coordinates),
                );
                if spanned_dim < target_dim {
                    notes.push(SpanNote { degrees: (n, m), target_degree: t, target_dim, spanned_dim });
                }
            }
        }
    }
    ProductTable { kind, variant, entries: entries.into_iter().map(|(e, _)| e).collect(), trivial, trivial_above_one, notes }
}

/// Dimension of the span of coordinate vectors in a group of dimension
/// `dim`, stopping early once the span is full.
pub fn span_dim<'a>(h: &Cohomology, dim: usize, rows: impl IntoIterator<Item = &'a Vec<Scalar>>) -> usize {
    let mut span = crate::linalg::Span::new(h.complex().field(), dim);
    for r in rows {
        if span.rank() == dim {
            break;
        }
        if r.iter().any(|x| !x.is_zero()) {
            span.offer(r);
        }
    }
    span.rank()
}

/// Cup products of all ordered pairs of positive-degree basis classes.
pub fn ring_table(h: &Cohomology) -> ProductTable {
    table(h, ProductKind::Cup, None, |a, b| induced_cup(h, a, b).expect("cup of cocycles is a cocycle"))
}

/// Brackets of all ordered pairs of positive-degree basis classes.
pub fn lie_table(h: &Cohomology, variant: Variant) -> ProductTable {
    table(h, ProductKind::Bracket, Some(variant), |a, b| {
        induced_bracket(h, a, b, variant).expect("bracket of cocycles is a cocycle")
    })
}

impl ProductTable {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let (open, mid, close) = match self.kind {
            ProductKind::Cup => ("", " ∪ ", ""),
            ProductKind::Bracket => ("[", ", ", "]"),
        };
        if let Some(v) = self.variant {
            let _ = writeln!(out, "variant: {}", v.name());
        }
        for e in &self.entries {
            let value = if e.zero { "0".to_string() } else { format!("({})", e.coordinates.join(", ")) };
            let _ = writeln!(
                out,
                "{open}HH^{}#{}{mid}HH^{}#{}{close} = {value}",
                e.left.degree, e.left.index, e.right.degree, e.right.index
            );
        }
        let yes = |b: bool| if b { "yes" } else { "no" };
        match self.kind {
            ProductKind::Cup => {
                let _ = writeln!(out, "cup-trivial: {}", yes(self.trivial));
            }
            ProductKind::Bracket => {
                let _ = writeln!(out, "bracket-trivial(deg>1): {}", yes(self.trivial_above_one));
                for n in &self.notes {
                    let _ = writeln!(
                        out,
                        "note: [HH^{}, HH^{}] spans {} of HH^{} (dim {})",
                        n.degrees.0, n.degrees.1, n.spanned_dim, n.target_degree, n.target_dim
                    );
                }
            }
        }
        out
    }
}
