//! The minimal Hochschild cochain complex `C^n = Hom_{E^e}(kΓ_n, A)`.
//!
//! A basis element of `C^n` is a pair `(chain, path)` where the path is a
//! nonzero path parallel to the chain. The differential is
//!
//! ```text
//! δ^n f(α_1⋯α_{n+1}) = α_1 · f(α_2⋯α_{n+1}) + (-1)^{n+1} f(α_1⋯α_n) · α_{n+1}
//! ```

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::basis::{self, Chain, Element, PathBasis};
use crate::linalg::{Field, Matrix, Scalar};
use crate::presentation::Presentation;

/// Position of a basis element in the three-way split of `C^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TriType {
    /// The value path starts with the chain's first arrow.
    Minus,
    /// Neither starts with the first arrow nor ends with the last.
    Zero,
    /// Ends with the last arrow and does not start with the first.
    Plus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainBasisElement {
    /// Index into `Γ_n`.
    pub chain: usize,
    /// Index into the path basis.
    pub path: usize,
    pub tri_type: TriType,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("basis element {index} of degree {degree} has type {found:?}, expected {expected:?}")]
    WrongTriType { degree: usize, index: usize, expected: TriType, found: TriType },
    #[error("operation needs degree >= {min}, got {degree}")]
    DegreeTooLow { degree: usize, min: usize },
    #[error("degree {degree} has no basis element {index}")]
    NoSuchElement { degree: usize, index: usize },
}

/// A cochain of fixed degree as a coefficient vector over `B^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Cochain {
    pub fn zero(field: Field, degree: usize, dim: usize) -> Cochain {
        Cochain { degree, field, coeffs: vec![field.zero(); dim] }
    }

    pub fn from_coefficients(field: Field, degree: usize, coeffs: Vec<Scalar>) -> Cochain {
        Cochain { degree, field, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn add_term(&mut self, i: usize, c: &Scalar) {
        self.coeffs[i] += c;
    }

    pub fn add_scaled(&mut self, other: &Cochain, factor: &Scalar) {
        assert_eq!(self.degree, other.degree, "adding cochains of different degree");
        for (i, c) in other.support() {
            self.coeffs[i] += &(factor * c);
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Cochain {
        Cochain {
            degree: self.degree,
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| factor * c).collect(),
        }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(&self.field.from_i64(-1))
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.from_i64(-1));
        out
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add_scaled(other, &self.field.one());
        out
    }
}

/// Direction of the normalization `φ ↦ φ_≤` or `φ ↦ φ_≥`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Replace every `B_−` component `f` by `f_+`.
    Leq,
    /// Replace every `B_+` component `g` by `g_−`.
    Geq,
}

/// The minimal cochain complex of a presentation, with bases and
/// differential matrices for every degree up to the longest chain.
#[derive(Clone, Debug)]
pub struct MinimalComplex {
    presentation: Presentation,
    field: Field,
    paths: PathBasis,
    chains: Vec<Vec<Chain>>,
    chain_index: Vec<HashMap<Chain, usize>>,
    bases: Vec<Vec<CochainBasisElement>>,
    element_index: Vec<HashMap<(usize, usize), usize>>,
    by_chain: Vec<Vec<Vec<usize>>>,
    deltas: Vec<Matrix>,
}

impl MinimalComplex {
    /// Builds the complex over the presentation's own field.
    pub fn new(p: &Presentation) -> MinimalComplex {
        let field = p.field();
        let paths = basis::nonzero_paths(p);
        let q = p.quiver();
        let top = basis::max_chain_length(p);

        let mut chains = vec![basis::chains(p, 0)];
        if top >= 1 {
            chains.push(basis::chains(p, 1));
        }
        while chains.len() <= top {
            let next = basis::extend_chains(p, chains.last().expect("nonempty"));
            chains.push(next);
        }
        let chain_index: Vec<HashMap<Chain, usize>> = chains
            .iter()
            .map(|layer| layer.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();

        let mut bases = Vec::with_capacity(chains.len());
        let mut element_index = Vec::with_capacity(chains.len());
        let mut by_chain = Vec::with_capacity(chains.len());
        for layer in &chains {
            let mut elements = Vec::new();
            let mut index = HashMap::new();
            let mut grouped = Vec::with_capacity(layer.len());
            for (ci, chain) in layer.iter().enumerate() {
                let mut mine = Vec::new();
                for &pi in paths.parallel(chain.source(), chain.target(q)) {
                    let tri_type = tri_type_of(chain, paths.path(pi).arrows());
                    index.insert((ci, pi), elements.len());
                    mine.push(elements.len());
                    elements.push(CochainBasisElement { chain: ci, path: pi, tri_type });
                }
                grouped.push(mine);
            }
            bases.push(elements);
            element_index.push(index);
            by_chain.push(grouped);
        }

        let mut complex = MinimalComplex {
            presentation: p.clone(),
            field,
            paths,
            chains,
            chain_index,
            bases,
            element_index,
            by_chain,
            deltas: Vec::new(),
        };
        complex.deltas = (0..=top).map(|n| complex.build_delta(n)).collect();
        complex
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn paths(&self) -> &PathBasis {
        &self.paths
    }

    /// Longest chain length; `C^n = 0` above it.
    pub fn top_degree(&self) -> usize {
        self.chains.len() - 1
    }

    pub fn chains(&self, n: usize) -> &[Chain] {
        self.chains.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn chain_index(&self, n: usize, chain: &Chain) -> Option<usize> {
        self.chain_index.get(n)?.get(chain).copied()
    }

    pub fn basis(&self, n: usize) -> &[CochainBasisElement] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    /// Basis elements on a given chain of `Γ_n`.
    pub fn elements_on(&self, n: usize, chain: usize) -> &[usize] {
        &self.by_chain[n][chain]
    }

    pub fn element_index(&self, n: usize, chain: usize, path: usize) -> Option<usize> {
        self.element_index.get(n)?.get(&(chain, path)).copied()
    }

    pub fn zero(&self, n: usize) -> Cochain {
        Cochain::zero(self.field, n, self.dim(n))
    }

    pub fn basis_cochain(&self, n: usize, index: usize) -> Cochain {
        let mut c = self.zero(n);
        c.coeffs[index] = self.field.one();
        c
    }

    /// The degree-0 cochain sending every vertex to its idempotent.
    pub fn unit(&self) -> Cochain {
        Cochain::from_coefficients(self.field, 0, vec![self.field.one(); self.dim(0)])
    }

    /// Matrix of `δ^n : C^n → C^{n+1}` (rows index `B^{n+1}`).
    pub fn delta(&self, n: usize) -> Matrix {
        match self.deltas.get(n) {
            Some(m) => m.clone(),
            None => Matrix::zeros(self.field, self.dim(n + 1), self.dim(n)),
        }
    }

    pub fn apply_delta(&self, c: &Cochain) -> Cochain {
        let n = c.degree;
        let out = self.delta(n).mul_vec(&c.coeffs).expect("cochain length matches basis");
        Cochain::from_coefficients(self.field, n + 1, out)
    }

    pub fn is_cocycle(&self, c: &Cochain) -> bool {
        self.apply_delta(c).is_zero()
    }

    fn build_delta(&self, n: usize) -> Matrix {
        let q = self.presentation.quiver();
        let mut m = Matrix::zeros(self.field, self.dim(n + 1), self.dim(n));
        let right_sign = self.field.sign(n + 1);
        for (ci, chain) in self.chains(n + 1).iter().enumerate() {
            let len = chain.len();
            let first = self.paths.index_of(&crate::presentation::Path::arrow(q, chain.arrows()[0])).expect("arrow");
            let last = self.paths.index_of(&crate::presentation::Path::arrow(q, chain.arrows()[len - 1])).expect("arrow");
            // α_1 · f(α_2⋯α_{n+1})
            let tail = self.chain_index(n, &chain.slice(q, 1, len)).expect("factor-closed");
            for &j in self.elements_on(n, tail) {
                if let Some(r) = self.paths.multiply(first, self.bases[n][j].path) {
                    let row = self.element_index(n + 1, ci, r).expect("parallel");
                    m.add_to(row, j, &self.field.one());
                }
            }
            // (-1)^{n+1} f(α_1⋯α_n) · α_{n+1}
            let head = self.chain_index(n, &chain.slice(q, 0, len - 1)).expect("factor-closed");
            for &j in self.elements_on(n, head) {
                if let Some(r) = self.paths.multiply(self.bases[n][j].path, last) {
                    let row = self.element_index(n + 1, ci, r).expect("parallel");
                    m.add_to(row, j, &right_sign);
                }
            }
        }
        m
    }

    /// Value of a cochain on the chain with index `chain` in `Γ_n`.
    pub fn evaluate_at(&self, c: &Cochain, chain: usize) -> Element {
        let mut out = Element::zero();
        for &j in self.elements_on(c.degree, chain) {
            out.add_term(self.bases[c.degree][j].path, &c.coeffs[j]);
        }
        out
    }

    /// Value of a cochain on an arbitrary chain; zero off `Γ_n`.
    pub fn evaluate(&self, c: &Cochain, chain: &Chain) -> Element {
        match self.chain_index(c.degree, chain) {
            Some(i) if chain.len() == c.degree => self.evaluate_at(c, i),
            _ => Element::zero(),
        }
    }

    /// Adds `value` as the value on chain `chain` of `Γ_n`.
    ///
    /// Panics if a path of `value` is not parallel to the chain.
    pub fn add_value(&self, target: &mut Cochain, chain: usize, value: &Element) {
        for (pi, c) in value.terms() {
            let idx = self
                .element_index(target.degree, chain, pi)
                .unwrap_or_else(|| panic!("path #{pi} is not parallel to chain #{chain} of degree {}", target.degree));
            target.coeffs[idx] += c;
        }
    }

    /// Splits a cochain into its `B_−`, `B_0`, `B_+` components.
    pub fn split(&self, c: &Cochain) -> [Cochain; 3] {
        let mut parts = [self.zero(c.degree), self.zero(c.degree), self.zero(c.degree)];
        for (i, x) in c.support() {
            let slot = match self.bases[c.degree][i].tri_type {
                TriType::Minus => 0,
                TriType::Zero => 1,
                TriType::Plus => 2,
            };
            parts[slot].coeffs[i] = x.clone();
        }
        parts
    }

    fn checked(&self, n: usize, index: usize, expected: TriType) -> Result<&CochainBasisElement, ComplexError> {
        if n == 0 {
            return Err(ComplexError::DegreeTooLow { degree: n, min: 1 });
        }
        let e = self.basis(n).get(index).ok_or(ComplexError::NoSuchElement { degree: n, index })?;
        if e.tri_type != expected {
            return Err(ComplexError::WrongTriType { degree: n, index, expected, found: e.tri_type });
        }
        Ok(e)
    }

    /// `f_+` for `f = (α_1⋯α_n, α_1 p) ∈ B_−`: supported on the chains
    /// `α_2⋯α_{n+1} ∈ Γ_n` with value `(-1)^{n+1} p α_{n+1}`.
    pub fn shift_plus(&self, n: usize, index: usize) -> Result<Cochain, ComplexError> {
        let e = self.checked(n, index, TriType::Minus)?;
        let q = self.presentation.quiver();
        let chain = &self.chains[n][e.chain];
        let plen = self.paths.path(e.path).len();
        let rest = self.paths.subpath(q, e.path, 1, plen);
        let tail = chain.slice(q, 1, n);
        let sign = self.field.sign(n + 1);
        let mut out = self.zero(n);
        for (ci, cand) in self.chains[n].iter().enumerate() {
            if cand.slice(q, 0, n - 1) != tail {
                continue;
            }
            let next = *cand.arrows().last().expect("n >= 1");
            let arrow = self.paths.index_of(&crate::presentation::Path::arrow(q, next)).expect("arrow");
            if let Some(r) = self.paths.multiply(rest, arrow) {
                self.add_value(&mut out, ci, &Element::basis(r, sign.clone()));
            }
        }
        Ok(out)
    }

    /// `g_−` for `g = (α_1⋯α_n, q α_n) ∈ B_+`: supported on the chains
    /// `α_0⋯α_{n-1} ∈ Γ_n` with value `(-1)^{n+1} α_0 q`.
    pub fn shift_minus(&self, n: usize, index: usize) -> Result<Cochain, ComplexError> {
        let e = self.checked(n, index, TriType::Plus)?;
        let q = self.presentation.quiver();
        let chain = &self.chains[n][e.chain];
        let plen = self.paths.path(e.path).len();
        let front = self.paths.subpath(q, e.path, 0, plen - 1);
        let head = chain.slice(q, 0, n - 1);
        let sign = self.field.sign(n + 1);
        let mut out = self.zero(n);
        for (ci, cand) in self.chains[n].iter().enumerate() {
            if cand.slice(q, 1, n) != head {
                continue;
            }
            let prev = cand.arrows()[0];
            let arrow = self.paths.index_of(&crate::presentation::Path::arrow(q, prev)).expect("arrow");
            if let Some(r) = self.paths.multiply(arrow, front) {
                self.add_value(&mut out, ci, &Element::basis(r, sign.clone()));
            }
        }
        Ok(out)
    }

    /// The cochain `h` of degree `n − 1` and sign `s` with
    /// `f − s·δh = f_+` (for `f ∈ B_−`) or `g − s·δh = g_−` (for `g ∈ B_+`),
    /// valid under (S3) for `n ≥ 2`.
    pub fn normalization_witness(&self, n: usize, index: usize) -> Result<(Cochain, Scalar), ComplexError> {
        let e = self.basis(n).get(index).ok_or(ComplexError::NoSuchElement { degree: n, index })?;
        if n == 0 || e.tri_type == TriType::Zero {
            return Err(ComplexError::WrongTriType { degree: n, index, expected: TriType::Minus, found: e.tri_type });
        }
        let q = self.presentation.quiver();
        let chain = &self.chains[n][e.chain];
        let plen = self.paths.path(e.path).len();
        let (sub, path, sign) = match e.tri_type {
            TriType::Minus => (chain.slice(q, 1, n), self.paths.subpath(q, e.path, 1, plen), self.field.one()),
            _ => (chain.slice(q, 0, n - 1), self.paths.subpath(q, e.path, 0, plen - 1), self.field.sign(n)),
        };
        let ci = self.chain_index(n - 1, &sub).expect("factor-closed");
        let mut h = self.zero(n - 1);
        self.add_value(&mut h, ci, &Element::basis(path, self.field.one()));
        Ok((h, sign))
    }

    /// `φ_≤ = f_+ + h + g` or `φ_≥ = f + h + g_−`, extended linearly.
    pub fn normalize(&self, phi: &Cochain, direction: Direction) -> Result<Cochain, ComplexError> {
        let n = phi.degree;
        if n == 0 {
            return Err(ComplexError::DegreeTooLow { degree: 0, min: 1 });
        }
        let mut out = self.zero(n);
        for (i, c) in phi.support() {
            let shifted = match (self.bases[n][i].tri_type, direction) {
                (TriType::Minus, Direction::Leq) => self.shift_plus(n, i)?,
                (TriType::Plus, Direction::Geq) => self.shift_minus(n, i)?,
                _ => self.basis_cochain(n, i),
            };
            out.add_scaled(&shifted, c);
        }
        Ok(out)
    }

    /// `(chain | path)` label of a basis element.
    pub fn label(&self, n: usize, index: usize) -> String {
        let e = &self.bases[n][index];
        let q = self.presentation.quiver();
        format!("({} | {})", self.chains[n][e.chain].display(q), self.paths.path(e.path).display(q))
    }

    /// `(chain, path)` display strings of a basis element.
    pub fn label_parts(&self, n: usize, index: usize) -> (String, String) {
        let e = &self.bases[n][index];
        let q = self.presentation.quiver();
        (self.chains[n][e.chain].display(q).to_string(), self.paths.path(e.path).display(q).to_string())
    }

    /// Finds the basis element with the given chain and path written as
    /// `.`-joined arrow names (`e_<v>` for trivial paths).
    pub fn find(&self, n: usize, chain: &str, path: &str) -> Option<usize> {
        (0..self.dim(n)).find(|&i| self.label_parts(n, i) == (chain.to_string(), path.to_string()))
    }

    /// A single-term cochain from labels; panics if the pair is not a basis
    /// element.
    pub fn cochain(&self, n: usize, terms: &[(&str, &str, i64)]) -> Cochain {
        let mut c = self.zero(n);
        for &(chain, path, k) in terms {
            let i = self.find(n, chain, path).unwrap_or_else(|| panic!("no basis element ({chain} | {path}) in degree {n}"));
            c.add_term(i, &self.field.from_i64(k));
        }
        c
    }

    /// Euler characteristic `Σ (−1)^n |B^n|`.
    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.top_degree()).map(|n| if n % 2 == 0 { 1 } else { -1 } * self.dim(n) as i64).sum()
    }

    pub fn display_cochain<'a>(&'a self, c: &'a Cochain) -> impl fmt::Display + 'a {
        CochainDisplay { complex: self, cochain: c }
    }
}

fn tri_type_of(chain: &Chain, path: &[crate::presentation::ArrowId]) -> TriType {
    let (Some(first), Some(last)) = (chain.arrows().first(), chain.arrows().last()) else {
        return TriType::Zero;
    };
    if path.first() == Some(first) {
        TriType::Minus
    } else if path.last() == Some(last) {
        TriType::Plus
    } else {
        TriType::Zero
    }
}

struct CochainDisplay<'a> {
    complex: &'a MinimalComplex,
    cochain: &'a Cochain,
}

impl fmt::Display for CochainDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for (i, c) in self.cochain.support() {
            if any {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{}", c, self.complex.label(self.cochain.degree, i))?;
            any = true;
        }
        if !any {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(c: &MinimalComplex, n: usize) -> Vec<String> {
        (0..c.dim(n)).map(|i| c.label(n, i)).collect()
    }

    #[test]
    fn e5_bases() {
        let c = MinimalComplex::new(&fixtures::e5());
        assert_eq!(c.dim(0), 5);
        assert_eq!(c.dim(1), 6);
        for i in 0..6 {
            let e = &c.basis(1)[i];
            assert_eq!(c.paths().path(e.path).arrows(), c.chains(1)[e.chain].arrows());
        }
        assert_eq!(labels(&c, 2), ["(alpha2.alpha3 | beta)"]);
        assert_eq!(labels(&c, 3), ["(alpha1.beta.alpha4 | gamma)"]);
        assert_eq!(labels(&c, 4), ["(alpha1.alpha2.alpha3.alpha4 | gamma)"]);
        assert_eq!(c.dim(5), 0);
        assert_eq!(c.top_degree(), 4);
        assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn a2_degree_zero_basis() {
        let c = MinimalComplex::new(&fixtures::a2());
        assert_eq!(labels(&c, 0), ["(e_1 | e_1)", "(e_2 | e_2)"]);
        assert!(c.basis(0).iter().all(|e| e.tri_type == TriType::Zero));
    }

    #[test]
    fn a2_differential() {
        let c = MinimalComplex::new(&fixtures::a2());
        let q = Field::Rational;
        assert_eq!(c.delta(0), Matrix::from_i64(q, &[vec![-1, 1]]));
    }

    #[test]
    fn e5_higher_differentials_vanish() {
        let c = MinimalComplex::new(&fixtures::e5());
        for n in 1..=4 {
            assert!(c.delta(n).is_zero(), "delta^{n}");
        }
        assert_eq!((c.delta(1).rows(), c.delta(1).cols()), (1, 6));
        assert_eq!(crate::linalg::rank(&c.delta(0)), 4);
    }

    #[test]
    fn differential_squares_to_zero_on_fixtures() {
        for (name, p) in fixtures::all() {
            let c = MinimalComplex::new(&p);
            for n in 0..=c.top_degree() + 1 {
                let dd = c.delta(n + 1).mul(&c.delta(n)).unwrap();
                assert!(dd.is_zero(), "{name}: delta^{} delta^{n} != 0", n + 1);
                assert!(c.delta(n).entries().all(|(_, _, v)| {
                    *v == Field::Rational.one() || *v == Field::Rational.from_i64(-1)
                }));
            }
        }
    }

    #[test]
    fn sd3_shift_plus_vanishes() {
        let c = MinimalComplex::new(&fixtures::sd3());
        let f = c.find(2, "alpha.beta", "alpha.delta").unwrap();
        assert_eq!(c.basis(2)[f].tri_type, TriType::Minus);
        assert!(c.shift_plus(2, f).unwrap().is_zero());
        let phi = c.basis_cochain(2, f);
        assert!(c.normalize(&phi, Direction::Leq).unwrap().is_zero());
    }

    #[test]
    fn mirror_shift_minus_vanishes() {
        let c = MinimalComplex::new(&fixtures::sd3_mirror());
        let g = c.find(2, "alpha.beta", "deltap.beta").unwrap();
        assert_eq!(c.basis(2)[g].tri_type, TriType::Plus);
        assert!(c.shift_minus(2, g).unwrap().is_zero());
    }

    #[test]
    fn shift_rejects_wrong_type() {
        let c = MinimalComplex::new(&fixtures::e5());
        let z = c.find(2, "alpha2.alpha3", "beta").unwrap();
        assert_eq!(c.basis(2)[z].tri_type, TriType::Zero);
        assert!(matches!(c.shift_plus(2, z), Err(ComplexError::WrongTriType { .. })));
        assert!(matches!(c.shift_minus(2, z), Err(ComplexError::WrongTriType { .. })));
        let phi = c.basis_cochain(2, z);
        assert_eq!(c.normalize(&phi, Direction::Leq).unwrap(), phi);
        assert_eq!(c.normalize(&phi, Direction::Geq).unwrap(), phi);
        assert!(c.normalize(&c.unit(), Direction::Leq).is_err());
    }

    /// A two-step chain with a shortcut so that `f_+` has support.
    #[test]
    fn shift_plus_with_support() {
        // 1 -a-> 2 -b-> 3 -c-> 4, shortcut s: 2 -> 4 ... relations a b, b c.
        // f = (a.b, a.s?) needs a path 1 -> 3 starting with a: use d: 2 -> 3.
        let p = Presentation::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("d", "2", "3"), ("c", "3", "4")],
            &[("a", "b"), ("b", "c"), ("d", "c")],
            Field::Rational,
        )
        .unwrap();
        let c = MinimalComplex::new(&p);
        let f = c.find(2, "a.b", "a.d").unwrap();
        let fp = c.shift_plus(2, f).unwrap();
        // (b.c, d.c) with sign (-1)^3, but d.c is a relation: zero.
        assert!(fp.is_zero());

        let p = Presentation::from_names(
            &["1", "2", "3", "4"],
            &[("a", "1", "2"), ("b", "2", "3"), ("d", "2", "3"), ("c", "3", "4")],
            &[("a", "b"), ("b", "c")],
            Field::Rational,
        )
        .unwrap();
        let c = MinimalComplex::new(&p);
        let f = c.find(2, "a.b", "a.d").unwrap();
        let fp = c.shift_plus(2, f).unwrap();
        assert_eq!(fp, c.cochain(2, &[("b.c", "d.c", -1)]));
        let (h, s) = c.normalization_witness(2, f).unwrap();
        let lhs = c.basis_cochain(2, f).sub(&c.apply_delta(&h).scale(&s));
        assert_eq!(lhs, fp);
    }
}
