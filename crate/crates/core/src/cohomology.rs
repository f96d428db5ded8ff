//! `HH^n(A) = ker δ^n / im δ^{n−1}` with deterministic class bases.

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{Cochain, MinimalComplex};
use crate::linalg::{kernel_basis, Scalar, Span};
use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("cochain of degree {degree} is not a cocycle: δc = {delta}")]
    NotACocycle { degree: usize, delta: String },
    #[error("cochain of degree {degree} has {found} coefficients, expected {expected}")]
    WrongLength { degree: usize, expected: usize, found: usize },
}

/// A class in `HH^n`, given by a cocycle and its coordinates in the basis
/// chosen by [`Cohomology`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub representative: Cochain,
    pub coordinates: Vec<Scalar>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Scalar::is_zero)
    }
}

/// Result of [`Cohomology::class_of`]: `c = Σ coords·rep + δ(witness)`.
#[derive(Clone, Debug)]
pub struct ClassReduction {
    pub class: CohomologyClass,
    /// A cochain of degree `n − 1`; `None` in degree 0.
    pub witness: Option<Cochain>,
}

#[derive(Clone, Debug)]
struct Degree {
    /// Generators `0..columns` are the columns of `δ^{n−1}`, followed by the
    /// class representatives.
    span: Span,
    columns: usize,
    representatives: Vec<Cochain>,
    rep_ids: Vec<usize>,
}

/// Cohomology of a presentation, computed once for every degree up to the
/// longest chain. Above it every group vanishes.
#[derive(Clone, Debug)]
pub struct Cohomology {
    complex: MinimalComplex,
    degrees: Vec<Degree>,
}

impl Cohomology {
    pub fn new(p: &Presentation) -> Cohomology {
        Cohomology::from_complex(MinimalComplex::new(p))
    }

    pub fn from_complex(complex: MinimalComplex) -> Cohomology {
        let degrees = (0..=complex.top_degree()).into_par_iter().map(|n| Self::degree(&complex, n)).collect();
        Cohomology { complex, degrees }
    }

    fn degree(c: &MinimalComplex, n: usize) -> Degree {
        let field = c.field();
        let mut span = Span::new(field, c.dim(n));
        let mut columns = 0;
        if n > 0 {
            let prev = c.delta(n - 1);
            for j in 0..prev.cols() {
                span.offer(&prev.column(j));
                columns += 1;
            }
        }
        let mut representatives = Vec::new();
        let mut rep_ids = Vec::new();
        for v in kernel_basis(&c.delta(n)) {
            let (id, grew) = span.offer(&v);
            if grew {
                rep_ids.push(id);
                representatives.push(Cochain::from_coefficients(field, n, v));
            }
        }
        Degree { span, columns, representatives, rep_ids }
    }

    pub fn complex(&self) -> &MinimalComplex {
        &self.complex
    }

    pub fn presentation(&self) -> &Presentation {
        self.complex.presentation()
    }

    pub fn top_degree(&self) -> usize {
        self.complex.top_degree()
    }

    pub fn hh_dim(&self, n: usize) -> usize {
        self.degrees.get(n).map_or(0, |d| d.representatives.len())
    }

    /// Basis classes of `HH^n`; the `i`-th has coordinate vector `e_i`.
    pub fn hh_basis(&self, n: usize) -> Vec<CohomologyClass> {
        let dim = self.hh_dim(n);
        let field = self.complex.field();
        (0..dim)
            .map(|i| {
                let mut coordinates = vec![field.zero(); dim];
                coordinates[i] = field.one();
                CohomologyClass {
                    degree: n,
                    representative: self.degrees[n].representatives[i].clone(),
                    coordinates,
                }
            })
            .collect()
    }

    pub fn representatives(&self, n: usize) -> &[Cochain] {
        self.degrees.get(n).map_or(&[], |d| d.representatives.as_slice())
    }

    pub fn zero_class(&self, n: usize) -> CohomologyClass {
        let field = self.complex.field();
        CohomologyClass {
            degree: n,
            representative: self.complex.zero(n),
            coordinates: vec![field.zero(); self.hh_dim(n)],
        }
    }

    /// The class of `1 ∈ HH^0`.
    pub fn unit_class(&self) -> CohomologyClass {
        self.class_of(&self.complex.unit()).expect("the unit is a cocycle")
    }

    pub fn class_of(&self, c: &Cochain) -> Result<CohomologyClass, CohomologyError> {
        self.reduce(c).map(|r| r.class)
    }

    /// Coordinates of `c` modulo coboundaries, with an explicit coboundary
    /// witness for the remainder.
    pub fn reduce(&self, c: &Cochain) -> Result<ClassReduction, CohomologyError> {
        let n = c.degree();
        let expected = self.complex.dim(n);
        if c.dim() != expected {
            return Err(CohomologyError::WrongLength { degree: n, expected, found: c.dim() });
        }
        let delta = self.complex.apply_delta(c);
        if !delta.is_zero() {
            return Err(CohomologyError::NotACocycle {
                degree: n,
                delta: self.complex.display_cochain(&delta).to_string(),
            });
        }
        let field = self.complex.field();
        let Some(data) = self.degrees.get(n) else {
            // Above the top degree C^n = 0.
            return Ok(ClassReduction {
                class: self.zero_class(n),
                witness: (n > 0).then(|| self.complex.zero(n - 1)),
            });
        };
        let red = data.span.reduce(c.coefficients());
        assert!(red.is_member(), "cocycle outside ker δ: basis computation is inconsistent");
        let coordinates = data
            .rep_ids
            .iter()
            .map(|id| red.coefficients.get(id).cloned().unwrap_or_else(|| field.zero()))
            .collect();
        let witness = (n > 0).then(|| {
            let mut h = self.complex.zero(n - 1);
            for (&g, k) in red.coefficients.range(..data.columns) {
                h.add_term(g, k);
            }
            h
        });
        Ok(ClassReduction {
            class: CohomologyClass { degree: n, representative: c.clone(), coordinates },
            witness,
        })
    }

    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool, CohomologyError> {
        self.class_of(c).map(|k| k.is_zero())
    }

    /// `Σ coords_i · rep_i`.
    pub fn canonical_representative(&self, class: &CohomologyClass) -> Cochain {
        let mut out = self.complex.zero(class.degree);
        for (rep, k) in self.representatives(class.degree).iter().zip(&class.coordinates) {
            out.add_scaled(rep, k);
        }
        out
    }

    /// Dimensions and generators for degrees `0..=max_degree`.
    pub fn summary(&self, max_degree: usize) -> HHSummary {
        let dims = (0..=max_degree).map(|n| self.hh_dim(n)).collect();
        let mut generators = Vec::new();
        for n in 0..=max_degree {
            for rep in self.representatives(n) {
                let support = rep
                    .support()
                    .map(|(i, k)| {
                        let (chain, path) = self.complex.label_parts(n, i);
                        (chain, path, k.to_string())
                    })
                    .collect();
                generators.push(Generator { degree: n, support });
            }
        }
        HHSummary { format: 1, dims, generators, euler: self.complex.euler_characteristic() }
    }

    /// `Σ (−1)^n dim HH^n`, which must equal the complex's Euler characteristic.
    pub fn euler_from_dims(&self) -> i64 {
        (0..=self.top_degree()).map(|n| if n % 2 == 0 { 1 } else { -1 } * self.hh_dim(n) as i64).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub degree: usize,
    /// `(chain, path, coefficient)` triples.
    pub support: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HHSummary {
    pub format: u32,
    pub dims: Vec<usize>,
    pub generators: Vec<Generator>,
    pub euler: i64,
}

impl HHSummary {
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        for (n, d) in self.dims.iter().enumerate() {
            let _ = writeln!(out, "HH^{n} = {d}");
        }
        for g in &self.generators {
            let terms: Vec<String> = g.support.iter().map(|(c, p, k)| format!("{k}*({c} | {p})")).collect();
            let _ = writeln!(out, "  deg {}: {}", g.degree, terms.join(" + "));
        }
        let _ = writeln!(out, "euler = {}", self.euler);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::Field;

    fn dims(p: &Presentation, upto: usize) -> Vec<usize> {
        let h = Cohomology::new(p);
        (0..=upto).map(|n| h.hh_dim(n)).collect()
    }

    #[test]
    fn small_dims() {
        assert_eq!(dims(&fixtures::e5(), 5), [1, 2, 1, 1, 1, 0]);
        assert_eq!(dims(&fixtures::a2(), 1), [1, 0]);
        assert_eq!(dims(&fixtures::k2(), 1), [1, 3]);
        assert_eq!(dims(&fixtures::d3(), 2), [1, 1, 1]);
    }

    #[test]
    fn e5_classes() {
        let h = Cohomology::new(&fixtures::e5());
        let c = h.complex();
        let beta = c.cochain(1, &[("beta", "beta", 1)]);
        let gamma = c.cochain(1, &[("gamma", "gamma", 1)]);
        assert!(!h.class_of(&beta).unwrap().is_zero());
        assert!(!h.class_of(&gamma).unwrap().is_zero());
        let diag = c.cochain(1, &[("alpha1", "alpha1", 1), ("alpha2", "alpha2", 1), ("alpha3", "alpha3", 1), ("alpha4", "alpha4", 1)]);
        assert!(!h.class_of(&diag).unwrap().is_zero());

        let mut e1 = c.zero(0);
        e1.add_term(0, &Field::Rational.one());
        let cob = c.apply_delta(&e1);
        let r = h.reduce(&cob).unwrap();
        assert!(r.class.is_zero());
        assert_eq!(c.apply_delta(r.witness.as_ref().unwrap()), cob);
    }

    #[test]
    fn not_a_cocycle_is_reported() {
        let h = Cohomology::new(&fixtures::a2());
        let e = h.complex().basis_cochain(0, 0);
        assert!(matches!(h.class_of(&e), Err(CohomologyError::NotACocycle { degree: 0, .. })));
    }

    #[test]
    fn euler_identity_on_fixtures() {
        for (name, p) in fixtures::all() {
            let h = Cohomology::new(&p);
            assert_eq!(h.euler_from_dims(), h.complex().euler_characteristic(), "{name}");
            assert_eq!(h.hh_dim(0), 1, "{name}");
        }
    }

    #[test]
    fn witness_reconstructs_cocycle() {
        for (_, p) in fixtures::all() {
            let h = Cohomology::new(&p);
            let c = h.complex();
            for n in 1..=h.top_degree() {
                for j in 0..c.dim(n - 1) {
                    let mut v = c.apply_delta(&c.basis_cochain(n - 1, j));
                    if let Some(rep) = h.representatives(n).first() {
                        v = v.add(rep);
                    }
                    let r = h.reduce(&v).unwrap();
                    let rebuilt = h.canonical_representative(&r.class).add(&c.apply_delta(r.witness.as_ref().unwrap()));
                    assert_eq!(rebuilt, v);
                }
            }
        }
    }

    #[test]
    fn prime_field_dims_match() {
        for (name, p) in fixtures::all() {
            let q = Cohomology::new(&p);
            let f = Cohomology::new(&p.with_field(Field::Prime(5)));
            for n in 0..=q.top_degree() + 1 {
                assert_eq!(q.hh_dim(n), f.hh_dim(n), "{name} degree {n}");
            }
        }
    }

    #[test]
    fn summary_json_shape() {
        let h = Cohomology::new(&fixtures::d3());
        let s = h.summary(2);
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["format"], 1);
        assert_eq!(v["dims"], serde_json::json!([1, 1, 1]));
        assert_eq!(v["generators"][2]["support"], serde_json::json!([["alpha.beta", "gamma", "1"]]));
    }
}
