use std::collections::BTreeMap;

use super::{Field, Scalar};

/// A subspace of `field^dim` grown one generator at a time.
///
/// Every offered vector receives a generator id (its offer index). Independent
/// ones are kept in echelon form together with their expression in terms of
/// generator ids, so reductions can report exact coefficients.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    dim: usize,
    offered: usize,
    echelon: Vec<EchelonVector>,
}

#[derive(Clone, Debug)]
struct EchelonVector {
    pivot: usize,
    /// Nonzero entries, normalized so the pivot entry is 1.
    entries: Vec<(usize, Scalar)>,
    combination: BTreeMap<usize, Scalar>,
}

/// `original = remainder + Σ coefficients[g] · generator[g]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub remainder: Vec<Scalar>,
    pub coefficients: BTreeMap<usize, Scalar>,
}

impl Reduction {
    pub fn is_member(&self) -> bool {
        self.remainder.iter().all(Scalar::is_zero)
    }
}

fn add_scaled(target: &mut BTreeMap<usize, Scalar>, source: &BTreeMap<usize, Scalar>, factor: &Scalar) {
    for (&g, c) in source {
        let entry = target.entry(g).or_insert_with(|| factor.field().zero());
        *entry += &(factor * c);
        if entry.is_zero() {
            target.remove(&g);
        }
    }
}

impl Span {
    pub fn new(field: Field, dim: usize) -> Self {
        Span { field, dim, offered: 0, echelon: Vec::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.echelon.len()
    }

    pub fn generator_count(&self) -> usize {
        self.offered
    }

    pub fn reduce(&self, v: &[Scalar]) -> Reduction {
        assert_eq!(v.len(), self.dim, "vector length does not match ambient dimension");
        let mut remainder = v.to_vec();
        let mut coefficients = BTreeMap::new();
        for e in &self.echelon {
            if remainder[e.pivot].is_zero() {
                continue;
            }
            let c = remainder[e.pivot].clone();
            for (i, x) in &e.entries {
                remainder[*i] = &remainder[*i] - &(&c * x);
            }
            add_scaled(&mut coefficients, &e.combination, &c);
        }
        Reduction { remainder, coefficients }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).is_member()
    }

    /// Offers a generator; returns its id and whether it enlarged the span.
    pub fn offer(&mut self, v: &[Scalar]) -> (usize, bool) {
        let id = self.offered;
        self.offered += 1;
        let red = self.reduce(v);
        let Some(pivot) = red.remainder.iter().position(|x| !x.is_zero()) else {
            return (id, false);
        };
        let inv = red.remainder[pivot].inverse();
        let mut combination = BTreeMap::new();
        combination.insert(id, inv.clone());
        add_scaled(&mut combination, &red.coefficients, &-&inv);
        let entries = red.remainder.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x * &inv)).collect();
        self.echelon.push(EchelonVector { pivot, entries, combination });
        (id, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_reconstructs_vector() {
        let f = Field::Rational;
        let g0 = vec![f.from_i64(1), f.from_i64(1), f.zero()];
        let g1 = vec![f.from_i64(2), f.from_i64(2), f.zero()];
        let g2 = vec![f.zero(), f.from_i64(1), f.from_i64(1)];
        let mut s = Span::new(f, 3);
        assert_eq!(s.offer(&g0), (0, true));
        assert_eq!(s.offer(&g1), (1, false));
        assert_eq!(s.offer(&g2), (2, true));
        assert_eq!(s.rank(), 2);

        let v = vec![f.from_i64(3), f.from_i64(5), f.from_i64(2)];
        let red = s.reduce(&v);
        assert!(red.is_member());
        let gens = [&g0, &g1, &g2];
        let mut rebuilt = vec![f.zero(); 3];
        for (g, c) in &red.coefficients {
            for i in 0..3 {
                rebuilt[i] = &rebuilt[i] + &(c * &gens[*g][i]);
            }
        }
        assert_eq!(rebuilt, v);
        assert!(!red.coefficients.contains_key(&1));
        assert!(!s.contains(&[f.one(), f.zero(), f.zero()]));
    }
}
