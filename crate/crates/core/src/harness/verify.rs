use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cohomology::Cohomology;
use crate::complex::{Cochain, Direction, MinimalComplex, TriType};
use crate::gerstenhaber::{self as gs, Variant};
use crate::linalg::{kernel_basis, solve_membership, Scalar};
use crate::presentation::{classify, ClassReport, Path, Presentation};

/// Report-only findings kept per report; the count is always exact.
const MAX_FINDINGS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// `δ∘δ = 0`, entries `±1`, exact tri-partition.
    ComplexValid,
    /// Positive-degree cup products vanish in cohomology (hard under (S3)).
    CupTrivial,
    /// Literal `f ∘_i g = 0` for `deg f, deg g > 1` (hard on gentle input).
    BracketGentleCochain,
    /// Brackets of classes of degree `> 1` vanish, both variants (hard on
    /// gentle input).
    BracketGentle,
    /// `[f, g] = f` (literal rule) for the first-arrow indicator `g`, plus report-only
    /// checks that `g` is not a coboundary and that `[HH^n, HH^1]` fills
    /// `HH^n`.
    Hh1Bracket,
    /// `f − δh = f_+`, `g − δh = g_−` and the support constraints of
    /// `φ_≤`, `φ_≥` in degrees `≥ 2` (hard under (S3)).
    Normalization,
    /// Products of cocycles are cocycles; products with a coboundary are
    /// coboundaries.
    Descent,
    /// `complex-valid`, `normalization` and annihilation of `φ_≤(C)·α` and
    /// `α·φ_≥(C)` on extendable chains.
    LemmaSuite,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::ComplexValid,
        Property::CupTrivial,
        Property::BracketGentleCochain,
        Property::BracketGentle,
        Property::Hh1Bracket,
        Property::Normalization,
        Property::Descent,
        Property::LemmaSuite,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::ComplexValid => "complex-valid",
            Property::CupTrivial => "cup-trivial",
            Property::BracketGentleCochain => "bracket-gentle-cochain",
            Property::BracketGentle => "bracket-gentle",
            Property::Hh1Bracket => "hh1-bracket",
            Property::Normalization => "normalization",
            Property::Descent => "descent",
            Property::LemmaSuite => "lemma-suite",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown property `{0}` (expected one of: complex-valid, cup-trivial, bracket-gentle-cochain, bracket-gentle, hh1-bracket, normalization, descent, lemma-suite)")]
pub struct UnknownProperty(pub String);

impl FromStr for Property {
    type Err = UnknownProperty;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Property::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| UnknownProperty(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ReportOnly,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ReportOnly => "report-only",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub format: u32,
    pub property: Property,
    pub digest: String,
    pub verdict: Verdict,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub finding_count: usize,
    pub findings: Vec<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replay: Option<String>,
}

impl VerdictReport {
    pub fn with_replay(mut self, seed: Option<u64>, replay: impl Into<String>) -> Self {
        self.seed = seed;
        self.replay = Some(replay.into());
        self
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = format!("{}: {} ({} checks, digest {})\n", self.property, self.verdict, self.checks, self.digest);
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness [{}]: {}", w.check, w.detail);
        }
        for w in &self.findings {
            let _ = writeln!(out, "finding [{}]: {}", w.check, w.detail);
        }
        if self.finding_count > self.findings.len() {
            let _ = writeln!(out, "... {} findings in total", self.finding_count);
        }
        if let Some(r) = &self.replay {
            let _ = writeln!(out, "replay: {r}");
        }
        out
    }
}

/// Collects hard checks (first failure becomes the witness) and report-only
/// checks (failures become findings).
struct Checker {
    checks: usize,
    any_hard: bool,
    failure: Option<Witness>,
    finding_count: usize,
    findings: Vec<Witness>,
}

impl Checker {
    fn new() -> Self {
        Checker { checks: 0, any_hard: false, failure: None, finding_count: 0, findings: Vec::new() }
    }

    /// Marks the property as applicable, so a clean run is a pass even when
    /// the presentation offers nothing to check.
    fn applies(&mut self, hard: bool) {
        self.any_hard |= hard;
    }

    /// A hard check when `hard`, report-only otherwise.
    fn check(&mut self, hard: bool, ok: bool, check: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if ok {
            return;
        }
        if hard {
            if self.failure.is_none() {
                self.failure = Some(Witness { check: check.to_string(), detail: detail() });
            }
        } else {
            self.note(check, detail);
        }
    }

    fn note(&mut self, check: &str, detail: impl FnOnce() -> String) {
        self.finding_count += 1;
        if self.findings.len() < MAX_FINDINGS {
            self.findings.push(Witness { check: check.to_string(), detail: detail() });
        }
    }

    fn failed(&self) -> bool {
        self.failure.is_some()
    }

    fn finish(self, property: Property, p: &Presentation) -> VerdictReport {
        let verdict = if self.failure.is_some() {
            Verdict::Fail
        } else if self.any_hard {
            Verdict::Pass
        } else {
            Verdict::ReportOnly
        };
        VerdictReport {
            format: 1,
            property,
            digest: p.digest(),
            verdict,
            checks: self.checks,
            witness: self.failure,
            finding_count: self.finding_count,
            findings: self.findings,
            seed: None,
            replay: None,
        }
    }
}

/// Runs the checks behind `property` on `p`.
pub fn verify(p: &Presentation, property: Property) -> VerdictReport {
    let class = classify(p);
    let h = Cohomology::new(p);
    let mut ck = Checker::new();
    match property {
        Property::ComplexValid => complex_valid(&mut ck, h.complex()),
        Property::CupTrivial => cup_trivial(&mut ck, &h, &class),
        Property::BracketGentleCochain => bracket_gentle_cochain(&mut ck, h.complex(), &class),
        Property::BracketGentle => bracket_gentle(&mut ck, &h, &class),
        Property::Hh1Bracket => hh1_bracket(&mut ck, &h),
        Property::Normalization => normalization(&mut ck, h.complex(), &class),
        Property::Descent => descent(&mut ck, &h),
        Property::LemmaSuite => {
            complex_valid(&mut ck, h.complex());
            normalization(&mut ck, h.complex(), &class);
            annihilation(&mut ck, h.complex(), &class);
        }
    }
    ck.finish(property, p)
}

fn show(c: &MinimalComplex, x: &Cochain) -> String {
    c.display_cochain(x).to_string()
}

fn complex_valid(ck: &mut Checker, c: &MinimalComplex) {
    ck.applies(true);
    let q = c.presentation().quiver();
    let one = c.field().one();
    let minus = c.field().from_i64(-1);
    for n in 0..=c.top_degree() + 1 {
        let d = c.delta(n);
        ck.check(true, d.rows() == c.dim(n + 1) && d.cols() == c.dim(n), "delta-shape", || format!("δ^{n} is {}×{}", d.rows(), d.cols()));
        let dd = c.delta(n + 1).mul(&d).expect("shapes agree");
        ck.check(true, dd.is_zero(), "delta-squared", || format!("δ^{}∘δ^{n} ≠ 0", n + 1));
        for (r, col, v) in d.entries() {
            ck.check(true, *v == one || *v == minus, "delta-entries", || format!("δ^{n}[{r},{col}] = {v}"));
        }
        for (i, e) in c.basis(n).iter().enumerate() {
            let chain = &c.chains(n)[e.chain];
            let path: &Path = c.paths().path(e.path);
            let parallel = path.source() == chain.source() && path.target() == chain.target(q);
            ck.check(true, parallel && (n == 0 || !path.is_trivial()), "basis-parallel", || c.label(n, i));
            let starts = n > 0 && path.arrows().first() == chain.arrows().first();
            let ends = n > 0 && path.arrows().last() == chain.arrows().last();
            let expected = if starts {
                TriType::Minus
            } else if ends {
                TriType::Plus
            } else {
                TriType::Zero
            };
            ck.check(true, e.tri_type == expected, "tri-partition", || format!("{} typed {:?}", c.label(n, i), e.tri_type));
        }
    }
}

fn cup_trivial(ck: &mut Checker, h: &Cohomology, class: &ClassReport) {
    ck.applies(class.s3);
    let c = h.complex();
    let unit = h.unit_class();
    for n in 0..=h.top_degree() {
        for a in h.hh_basis(n) {
            let k = gs::induced_cup(h, &unit, &a).expect("cocycles");
            ck.check(true, k.coordinates == a.coordinates, "unit-law", || format!("1 ∪ {} ≠ itself", show(c, &a.representative)));
        }
    }
    let table = gs::ring_table(h);
    for e in &table.entries {
        ck.check(class.s3, e.zero, "cup-nonzero", || {
            let a = &h.representatives(e.left.degree)[e.left.index];
            let b = &h.representatives(e.right.degree)[e.right.index];
            format!(
                "HH^{}#{} ∪ HH^{}#{} = ({}) in HH^{}; representatives {} and {}",
                e.left.degree,
                e.left.index,
                e.right.degree,
                e.right.index,
                e.coordinates.join(", "),
                e.degree,
                show(c, a),
                show(c, b)
            )
        });
    }
}

fn bracket_gentle_cochain(ck: &mut Checker, c: &MinimalComplex, class: &ClassReport) {
    ck.applies(class.gentle);
    let top = c.top_degree();
    for n in 2..=top {
        for m in 2..=top + 1 - n {
            for fi in 0..c.dim(n) {
                let f = c.basis_cochain(n, fi);
                for gi in 0..c.dim(m) {
                    let g = c.basis_cochain(m, gi);
                    for i in 1..=n {
                        let lit = gs::circ_at(c, &f, &g, i, Variant::Literal).expect("slot in range");
                        ck.check(class.gentle, lit.is_zero(), "circ-literal-nonzero", || {
                            format!("{} ∘_{i} {} = {}", c.label(n, fi), c.label(m, gi), show(c, &lit))
                        });
                        let peeled = gs::circ_at(c, &f, &g, i, Variant::Peeled).expect("slot in range");
                        if peeled != lit {
                            ck.note("variant-disagreement", || {
                                format!(
                                    "{} ∘_{i} {}: literal {} vs peeled {}",
                                    c.label(n, fi),
                                    c.label(m, gi),
                                    show(c, &lit),
                                    show(c, &peeled)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    if !class.gentle {
        ck.note("not-gentle", || "presentation is not gentle; checks are report-only".into());
    }
}

fn bracket_gentle(ck: &mut Checker, h: &Cohomology, class: &ClassReport) {
    ck.applies(class.gentle);
    for variant in Variant::ALL {
        let table = gs::lie_table(h, variant);
        for e in table.entries.iter().filter(|e| e.left.degree > 1 && e.right.degree > 1) {
            ck.check(class.gentle, e.zero, "bracket-nonzero", || {
                format!(
                    "{}: [HH^{}#{}, HH^{}#{}] = ({})",
                    variant.name(),
                    e.left.degree,
                    e.left.index,
                    e.right.degree,
                    e.right.index,
                    e.coordinates.join(", ")
                )
            });
        }
    }
    if !class.gentle {
        ck.note("not-gentle", || "presentation is not gentle; checks are report-only".into());
    }
}

fn hh1_bracket(ck: &mut Checker, h: &Cohomology) {
    ck.applies(true);
    let c = h.complex();
    for n in 2..=c.top_degree() {
        for i in 0..c.dim(n) {
            let f = c.basis_cochain(n, i);
            let g = gs::first_arrow_indicator(c, n, i);
            let label = c.label(n, i);
            ck.check(true, c.is_cocycle(&g), "indicator-cocycle", || format!("δ{} ≠ 0", show(c, &g)));
            let fg = gs::circ(c, &f, &g, Variant::Literal).expect("degrees");
            ck.check(true, fg == f, "f-circ-g", || format!("f ∘ g = {} for f = {label}", show(c, &fg)));
            let gf = gs::circ(c, &g, &f, Variant::Literal).expect("degrees");
            ck.check(true, gf.is_zero(), "g-circ-f", || format!("g ∘ f = {} for f = {label}", show(c, &gf)));
            let br = gs::bracket(c, &f, &g, Variant::Literal).expect("degrees");
            ck.check(true, br == f, "bracket-f-g", || format!("[f, g] = {} for f = {label}", show(c, &br)));
            if ck.failed() {
                return;
            }
            let nonzero = h.class_of(&g).map(|k| !k.is_zero()).unwrap_or(false);
            ck.check(false, nonzero, "indicator-class-zero", || format!("{} is a coboundary (f = {label})", show(c, &g)));
        }
    }
    for (n, span) in hh1_spans(h, Variant::Literal).into_iter().enumerate().skip(2) {
        let dim = h.hh_dim(n);
        ck.check(false, span == dim, "hh1-span", || format!("[HH^{n}, HH^1] spans {span} of {dim}"));
    }
}

/// `dim [HH^n, HH^1]` for every degree up to the top.
pub fn hh1_spans(h: &Cohomology, variant: Variant) -> Vec<usize> {
    (0..=h.top_degree())
        .map(|n| {
            if n == 0 {
                return 0;
            }
            let ones = h.hh_basis(1);
            let rows: Vec<Vec<Scalar>> = h
                .hh_basis(n)
                .iter()
                .flat_map(|a| ones.iter().map(move |b| gs::induced_bracket(h, a, b, variant).expect("cocycles").coordinates))
                .collect();
            gs::span_dim(h, h.hh_dim(n), &rows)
        })
        .collect()
}

fn normalization(ck: &mut Checker, c: &MinimalComplex, class: &ClassReport) {
    ck.applies(true);
    for n in 2..=c.top_degree() {
        let image = c.delta(n - 1);
        for (i, e) in c.basis(n).iter().enumerate() {
            if e.tri_type == TriType::Zero {
                continue;
            }
            let f = c.basis_cochain(n, i);
            let (shifted, direction) = match e.tri_type {
                TriType::Minus => (c.shift_plus(n, i).expect("minus"), Direction::Leq),
                _ => (c.shift_minus(n, i).expect("plus"), Direction::Geq),
            };
            let (hw, s) = c.normalization_witness(n, i).expect("typed element");
            let lhs = f.sub(&c.apply_delta(&hw).scale(&s));
            ck.check(class.s3, lhs == shifted, "shift-identity", || {
                format!("{}: f − δh = {} but shift = {}", c.label(n, i), show(c, &lhs), show(c, &shifted))
            });
            let diff = f.sub(&shifted);
            let in_image = solve_membership(&image, diff.coefficients()).expect("shape").is_in_span();
            ck.check(class.s3, in_image, "difference-coboundary", || format!("{}: f − shift ∉ im δ", c.label(n, i)));
            let normal = c.normalize(&f, direction).expect("degree >= 2");
            let [minus, _, plus] = c.split(&normal);
            let clean = match direction {
                Direction::Leq => minus.is_zero(),
                Direction::Geq => plus.is_zero(),
            };
            ck.check(true, clean, "support", || format!("{}: normalization keeps {}", c.label(n, i), show(c, &normal)));
        }
    }
    if !class.s3 {
        ck.note("no-s3", || "presentation violates (S3); shift identities are report-only".into());
    }
}

fn annihilation(ck: &mut Checker, c: &MinimalComplex, class: &ClassReport) {
    let q = c.presentation().quiver();
    let paths = c.paths();
    for n in 1..=c.top_degree() {
        let cocycles = kernel_basis(&c.delta(n));
        for v in cocycles {
            let phi = Cochain::from_coefficients(c.field(), n, v);
            let leq = c.normalize(&phi, Direction::Leq).expect("n >= 1");
            let geq = c.normalize(&phi, Direction::Geq).expect("n >= 1");
            for (ci, chain) in c.chains(n).iter().enumerate() {
                let last = *chain.arrows().last().expect("n >= 1");
                let first = chain.arrows()[0];
                for next in c.presentation().relation_successors(last) {
                    let a = crate::basis::Element::basis(paths.index_of(&Path::arrow(q, next)).expect("arrow"), c.field().one());
                    let prod = c.evaluate_at(&leq, ci).mul(&a, paths);
                    ck.check(class.s3, prod.is_zero(), "annihilation-right", || {
                        format!("φ = {}: φ_≤({})·{} ≠ 0", show(c, &phi), chain.display(q), q.arrow(next).name)
                    });
                }
                for prev in q.incoming(chain.source()).iter().copied().filter(|&x| c.presentation().is_relation(x, first)) {
                    let a = crate::basis::Element::basis(paths.index_of(&Path::arrow(q, prev)).expect("arrow"), c.field().one());
                    let prod = a.mul(&c.evaluate_at(&geq, ci), paths);
                    ck.check(class.s3, prod.is_zero(), "annihilation-left", || {
                        format!("φ = {}: {}·φ_≥({}) ≠ 0", show(c, &phi), q.arrow(prev).name, chain.display(q))
                    });
                }
            }
        }
    }
}

/// Kernel bases of every `δ^n` and the nonzero columns of every `δ^{n−1}`.
fn cocycles_and_coboundaries(c: &MinimalComplex) -> (Vec<Vec<Cochain>>, Vec<Vec<Cochain>>) {
    let field = c.field();
    let top = c.top_degree();
    let z = (0..=top)
        .map(|n| kernel_basis(&c.delta(n)).into_iter().map(|v| Cochain::from_coefficients(field, n, v)).collect())
        .collect();
    let b = (0..=top)
        .map(|n| {
            if n == 0 {
                return Vec::new();
            }
            (0..c.dim(n - 1))
                .map(|j| c.apply_delta(&c.basis_cochain(n - 1, j)))
                .filter(|x| !x.is_zero())
                .collect()
        })
        .collect();
    (z, b)
}

fn descent(ck: &mut Checker, h: &Cohomology) {
    ck.applies(true);
    let c = h.complex();
    let top = c.top_degree();
    let (z, b) = cocycles_and_coboundaries(c);
    let is_cob = |x: &Cochain| h.is_coboundary(x).unwrap_or(false);

    for n in 0..=top {
        for m in 0..=top - n {
            for x in &z[n] {
                for y in &z[m] {
                    let p = gs::cup(c, x, y);
                    ck.check(true, c.is_cocycle(&p), "cup-closure", || format!("{} ∪ {} is not a cocycle", show(c, x), show(c, y)));
                }
                for y in &b[m] {
                    for (l, r) in [(x, y), (y, x)] {
                        let p = gs::cup(c, l, r);
                        ck.check(true, is_cob(&p), "cup-descent", || format!("{} ∪ {} is not a coboundary", show(c, l), show(c, r)));
                    }
                }
            }
        }
    }

    for variant in Variant::ALL {
        let hard = variant == Variant::Peeled;
        let tag = variant.name();
        for n in 0..=top {
            for m in 0..=(top + 1).saturating_sub(n) {
                if n + m == 0 || m > top {
                    continue;
                }
                for x in &z[n] {
                    for y in &z[m] {
                        let p = gs::bracket(c, x, y, variant).expect("positive degree");
                        ck.check(hard, c.is_cocycle(&p), "bracket-closure", || {
                            format!("{tag}: [{}, {}] is not a cocycle", show(c, x), show(c, y))
                        });
                    }
                    for y in &b[m] {
                        for (l, r) in [(x, y), (y, x)] {
                            let p = gs::bracket(c, l, r, variant).expect("positive degree");
                            ck.check(hard, is_cob(&p), "bracket-descent", || {
                                format!("{tag}: [{}, {}] = {} is not a coboundary", show(c, l), show(c, r), show(c, &p))
                            });
                        }
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixtures_pass_hard_checks() {
        for (name, p) in fixtures::all() {
            for prop in Property::ALL {
                let r = verify(&p, prop);
                assert_ne!(r.verdict, Verdict::Fail, "{name} {prop}: {}", r.to_text());
            }
        }
    }

    #[test]
    fn expected_verdicts() {
        assert_eq!(verify(&fixtures::e5(), Property::CupTrivial).verdict, Verdict::Pass);
        assert_eq!(verify(&fixtures::d3(), Property::BracketGentleCochain).verdict, Verdict::Pass);
        assert_eq!(verify(&fixtures::e5(), Property::ComplexValid).verdict, Verdict::Pass);
        assert_eq!(verify(&fixtures::e5(), Property::BracketGentle).verdict, Verdict::ReportOnly);
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("nope".parse::<Property>().is_err());
    }
}
