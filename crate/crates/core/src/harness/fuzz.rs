use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::random::{random_presentation, RandomError, RandomSpec, TargetClass};
use super::verify::{verify, Property, Verdict, Witness};
use crate::presentation::emit_presentation;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzSpec {
    pub class: TargetClass,
    pub property: Property,
    pub count: usize,
    pub seed: u64,
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub density: f64,
}

impl FuzzSpec {
    /// At most 8 vertices and 12 arrows, relation density one half.
    pub fn new(class: TargetClass, property: Property, count: usize, seed: u64) -> Self {
        FuzzSpec { class, property, count, seed, max_vertices: 8, max_arrows: 12, density: 0.5 }
    }

    /// The generator spec of case `index`: seed `seed + index`, with vertex
    /// and arrow counts drawn from that seed.
    pub fn case(&self, index: usize) -> RandomSpec {
        let seed = self.seed.wrapping_add(index as u64);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        let vertices = rng.gen_range(2..=self.max_vertices.max(2));
        let cap = match self.class {
            TargetClass::String | TargetClass::Gentle => vertices,
            _ => usize::MAX,
        };
        let arrows = rng.gen_range(1..=self.max_arrows.min(cap).max(1));
        RandomSpec { class: self.class, vertices, arrows, density: self.density, seed }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzCase {
    pub index: usize,
    pub seed: u64,
    pub vertices: usize,
    pub arrows: usize,
    pub digest: Option<String>,
    pub verdict: Option<Verdict>,
    pub checks: usize,
    pub finding_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub seed: u64,
    pub digest: String,
    pub dsl: String,
    pub witness: Option<Witness>,
    pub replay: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub format: u32,
    pub class: TargetClass,
    pub property: Property,
    pub count: usize,
    pub seed: u64,
    pub passed: usize,
    pub failed: usize,
    pub report_only: usize,
    pub exhausted: usize,
    pub findings: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub cases: Vec<FuzzCase>,
}

fn replay(spec: &RandomSpec, property: Property) -> String {
    format!("{} --emit case.quiver && quiver-hh verify case.quiver --property {property}", spec.command())
}

/// Verifies `property` on `count` generated presentations. Cases run in
/// parallel on the current rayon pool; the report is ordered by index.
pub fn fuzz(spec: &FuzzSpec) -> FuzzReport {
    let results: Vec<(FuzzCase, Option<Counterexample>)> = (0..spec.count)
        .into_par_iter()
        .map(|index| {
            let rs = spec.case(index);
            let mut case = FuzzCase {
                index,
                seed: rs.seed,
                vertices: rs.vertices,
                arrows: rs.arrows,
                digest: None,
                verdict: None,
                checks: 0,
                finding_count: 0,
                error: None,
            };
            let p = match random_presentation(&rs) {
                Ok(p) => p,
                Err(e @ (RandomError::GenerationExhausted(_) | RandomError::InvalidSpec(_))) => {
                    case.error = Some(e.to_string());
                    return (case, None);
                }
            };
            let report = verify(&p, spec.property);
            case.digest = Some(report.digest.clone());
            case.verdict = Some(report.verdict);
            case.checks = report.checks;
            case.finding_count = report.finding_count;
            let cx = (report.verdict == Verdict::Fail).then(|| Counterexample {
                index,
                seed: rs.seed,
                digest: report.digest.clone(),
                dsl: emit_presentation(&p),
                witness: report.witness.clone(),
                replay: replay(&rs, spec.property),
            });
            (case, cx)
        })
        .collect();

    let count_of = |v: Verdict| results.iter().filter(|(c, _)| c.verdict == Some(v)).count();
    FuzzReport {
        format: 1,
        class: spec.class,
        property: spec.property,
        count: spec.count,
        seed: spec.seed,
        passed: count_of(Verdict::Pass),
        failed: count_of(Verdict::Fail),
        report_only: count_of(Verdict::ReportOnly),
        exhausted: results.iter().filter(|(c, _)| c.error.is_some()).count(),
        findings: results.iter().map(|(c, _)| c.finding_count).sum(),
        counterexample: results.iter().find_map(|(_, cx)| cx.clone()),
        cases: results.into_iter().map(|(c, _)| c).collect(),
    }
}

impl FuzzReport {
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = format!(
            "fuzz {} on {} x{} (seed {}): {} pass, {} fail, {} report-only, {} exhausted, {} findings\n",
            self.property, self.class, self.count, self.seed, self.passed, self.failed, self.report_only, self.exhausted, self.findings
        );
        if let Some(cx) = &self.counterexample {
            let _ = writeln!(out, "first counterexample: case {} (seed {}, digest {})", cx.index, cx.seed, cx.digest);
            if let Some(w) = &cx.witness {
                let _ = writeln!(out, "witness [{}]: {}", w.check, w.detail);
            }
            let _ = writeln!(out, "replay: {}", cx.replay);
        }
        out
    }
}
