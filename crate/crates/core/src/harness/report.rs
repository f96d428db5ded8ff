//! Text and JSON dumps of the path basis, the chain sets and the complex.

use std::fmt::Write as _;

use serde::Serialize;

use crate::complex::{MinimalComplex, TriType};

#[derive(Serialize)]
pub struct BasisDump {
    pub format: u32,
    pub paths: Vec<String>,
    pub chains: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ComplexDump {
    pub format: u32,
    pub degrees: Vec<DegreeDump>,
}

#[derive(Serialize)]
pub struct DegreeDump {
    pub degree: usize,
    pub basis: Vec<BasisEntry>,
    pub delta: DeltaDump,
}

#[derive(Serialize)]
pub struct BasisEntry {
    pub chain: String,
    pub path: String,
    #[serde(rename = "type")]
    pub tri_type: TriType,
}

#[derive(Serialize)]
pub struct DeltaDump {
    pub rows: usize,
    pub cols: usize,
    /// `(row, column, value)` triplets.
    pub entries: Vec<(usize, usize, String)>,
}

pub fn basis_dump(c: &MinimalComplex) -> BasisDump {
    let q = c.presentation().quiver();
    BasisDump {
        format: 1,
        paths: c.paths().paths().iter().map(|p| p.display(q).to_string()).collect(),
        chains: (0..=c.top_degree()).map(|n| c.chains(n).iter().map(|ch| ch.display(q).to_string()).collect()).collect(),
    }
}

pub fn complex_dump(c: &MinimalComplex) -> ComplexDump {
    let degrees = (0..=c.top_degree())
        .map(|n| {
            let basis = (0..c.dim(n))
                .map(|i| {
                    let (chain, path) = c.label_parts(n, i);
                    BasisEntry { chain, path, tri_type: c.basis(n)[i].tri_type }
                })
                .collect();
            let d = c.delta(n);
            let entries = d.entries().map(|(r, col, v)| (r, col, v.to_string())).collect();
            DegreeDump { degree: n, basis, delta: DeltaDump { rows: d.rows(), cols: d.cols(), entries } }
        })
        .collect();
    ComplexDump { format: 1, degrees }
}

impl BasisDump {
    pub fn to_text(&self) -> String {
        let mut out = String::from("paths:\n");
        for (i, p) in self.paths.iter().enumerate() {
            let _ = writeln!(out, "  {i}: {p}");
        }
        for (n, layer) in self.chains.iter().enumerate() {
            let _ = writeln!(out, "Gamma_{n}: {}", layer.join(" "));
        }
        out
    }
}

impl ComplexDump {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for d in &self.degrees {
            let _ = writeln!(out, "C^{} (dim {})", d.degree, d.basis.len());
            for (i, e) in d.basis.iter().enumerate() {
                let t = match e.tri_type {
                    TriType::Minus => "-",
                    TriType::Zero => "0",
                    TriType::Plus => "+",
                };
                let _ = writeln!(out, "  {i}: ({} | {}) [{t}]", e.chain, e.path);
            }
            let _ = writeln!(out, "delta^{}: {}x{}", d.degree, d.delta.rows, d.delta.cols);
            for (r, c, v) in &d.delta.entries {
                let _ = writeln!(out, "  ({r}, {c}, {v})");
            }
        }
        out
    }
}
