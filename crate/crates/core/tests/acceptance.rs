//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Arithmetic is exact everywhere, so every comparison is equality. The only
//! tolerances are the wall-clock limits below.

use std::time::{Duration, Instant};

use quiver_hh::gerstenhaber::span_dim;
use quiver_hh::harness::{fuzz, hh1_spans, verify, FuzzSpec, Property, TargetClass, Verdict};
use quiver_hh::{
    fixtures, induced_bracket, lie_table, Cohomology, MinimalComplex, Presentation, Variant,
};

const E5_HH_LIMIT: Duration = Duration::from_secs(1);
const CUP_FUZZ_LIMIT: Duration = Duration::from_secs(300);
const SEED: u64 = 20_240_601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn fuzz_all(class: TargetClass, property: Property, count: usize, seed: u64) -> (bool, String) {
    let r = fuzz(&FuzzSpec::new(class, property, count, seed));
    let ok = r.passed == count && r.failed == 0 && r.exhausted == 0;
    let mut s = format!("{class}/{property} {}/{count} pass", r.passed);
    if let Some(cx) = &r.counterexample {
        s.push_str(&format!(" (first failure seed {}: {:?})", cx.seed, cx.witness));
    }
    (ok, s)
}

fn fixture_verdicts(names: &[&str], property: Property) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in names {
        let p = fixtures::by_name(name).expect("fixture");
        let r = verify(&p, property);
        ok &= r.verdict == Verdict::Pass;
        parts.push(format!("{name}={}", r.verdict));
    }
    (ok, parts.join(" "))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let h = Cohomology::new(&fixtures::e5());
    let summary = h.summary(5);
    let elapsed = start.elapsed();
    let c = h.complex();
    let dims_ok = summary.dims == [1, 2, 1, 1, 1, 0];

    let class = |n: usize, chain: &str, path: &str| h.class_of(&c.cochain(n, &[(chain, path, 1)])).expect("cocycle");
    let hh1: Vec<_> = [("beta", "beta"), ("gamma", "gamma")].iter().map(|(a, b)| class(1, a, b).coordinates).collect();
    let hh1_ok = span_dim(&h, h.hh_dim(1), &hh1) == 2;
    let higher_ok = !class(2, "alpha2.alpha3", "beta").is_zero()
        && !class(3, "alpha1.beta.alpha4", "gamma").is_zero()
        && !class(4, "alpha1.alpha2.alpha3.alpha4", "gamma").is_zero();
    let fast = elapsed < E5_HH_LIMIT;
    outcome(
        dims_ok && hh1_ok && higher_ok && fast,
        format!("dims {:?}, generator spans {}, {:?} (limit {:?})", summary.dims, hh1_ok && higher_ok, elapsed, E5_HH_LIMIT),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let (fix_ok, fix) = fixture_verdicts(&["E5", "D3", "K2"], Property::CupTrivial);
    let (s_ok, s) = fuzz_all(TargetClass::String, Property::CupTrivial, 200, SEED);
    let (q_ok, q) = fuzz_all(TargetClass::QuadraticS3, Property::CupTrivial, 200, SEED);
    let elapsed = start.elapsed();
    outcome(
        fix_ok && s_ok && q_ok && elapsed < CUP_FUZZ_LIMIT,
        format!("{fix}; {s}; {q}; {elapsed:?} (limit {CUP_FUZZ_LIMIT:?})"),
    )
}

fn criterion_3() -> Outcome {
    let (d_ok, d) = fixture_verdicts(&["D3"], Property::BracketGentleCochain);
    let (db_ok, db) = fixture_verdicts(&["D3"], Property::BracketGentle);
    let cochain = fuzz(&FuzzSpec::new(TargetClass::Gentle, Property::BracketGentleCochain, 100, SEED));
    let (b_ok, b) = fuzz_all(TargetClass::Gentle, Property::BracketGentle, 100, SEED);
    let c_ok = cochain.passed == 100;
    outcome(
        d_ok && db_ok && c_ok && b_ok,
        format!(
            "D3 cochain {d}, class {db}; gentle cochain {}/100 pass ({} variant disagreements logged); {b}",
            cochain.passed, cochain.findings
        ),
    )
}

fn criterion_4() -> Outcome {
    let h = Cohomology::new(&fixtures::e5());
    let two = &h.hh_basis(2)[0];
    let three = &h.hh_basis(3)[0];
    let mut ok = true;
    let mut parts = Vec::new();
    for v in Variant::ALL {
        let k = induced_bracket(&h, two, three, v).expect("cocycles");
        ok &= k.degree == 4 && !k.is_zero();
        parts.push(format!("[HH2,HH3] {} = {:?}", v.name(), k.coordinates.iter().map(ToString::to_string).collect::<Vec<_>>()));
    }
    let spans = hh1_spans(&h, Variant::Literal);
    let spans_ok = (2..=4).all(|n| spans[n] == h.hh_dim(n));
    let self22 = induced_bracket(&h, two, two, Variant::Literal).expect("cocycles");
    let table = lie_table(&h, Variant::Literal);
    let note = table.notes.iter().find(|n| n.degrees == (2, 2));
    let note_ok = self22.is_zero() && note.is_some_and(|n| n.spanned_dim == 0 && n.target_dim == 1);
    if let Some(n) = note {
        parts.push(format!(
            "report-only: [HH^2, HH^2] spans {} of HH^{} (dim {}), against the blanket claim",
            n.spanned_dim, n.target_degree, n.target_dim
        ));
    }
    parts.push(format!("[HH^n, HH^1] spans {:?} for n = 2..4", &spans[2..=4]));
    outcome(ok && spans_ok && note_ok, parts.join("; "))
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for name in ["E5", "D3"] {
        let r = verify(&fixtures::by_name(name).expect("fixture"), Property::Hh1Bracket);
        let zero_g = r.findings.iter().filter(|w| w.check == "indicator-class-zero").count();
        ok &= r.verdict == Verdict::Pass && zero_g == 0;
        parts.push(format!("{name}={} ({zero_g} null indicators)", r.verdict));
    }
    let (f_ok, f) = fuzz_all(TargetClass::String, Property::Hh1Bracket, 100, SEED);
    parts.push(f);
    outcome(ok && f_ok, parts.join("; "))
}

fn criterion_6() -> Outcome {
    let names: Vec<&str> = fixtures::all().iter().map(|(n, _)| *n).collect();
    let (fix_ok, fix) = fixture_verdicts(&names, Property::LemmaSuite);
    let (f_ok, f) = fuzz_all(TargetClass::QuadraticS3, Property::LemmaSuite, 200, SEED);
    outcome(fix_ok && f_ok, format!("{fix}; {f}"))
}

fn criterion_7() -> Outcome {
    let names: Vec<&str> = fixtures::all().iter().map(|(n, _)| *n).collect();
    let (fix_ok, fix) = fixture_verdicts(&names, Property::Descent);
    let (s_ok, s) = fuzz_all(TargetClass::String, Property::Descent, 100, SEED);
    let (q_ok, q) = fuzz_all(TargetClass::Quadratic, Property::Descent, 100, SEED);
    outcome(fix_ok && s_ok && q_ok, format!("{fix}; {s}; {q}"))
}

/// `(|B^n|, rank δ^n, dim HH^n)` for `n = 0..=3`, from an independent
/// brute-force computation.
type Oracle = (&'static str, [usize; 4], [usize; 4], [usize; 4]);

const ORACLES: &[Oracle] = &[
    ("A2", [2, 1, 0, 0], [1, 0, 0, 0], [1, 0, 0, 0]),
    ("K2", [2, 4, 0, 0], [1, 0, 0, 0], [1, 3, 0, 0]),
    ("D3", [3, 3, 1, 0], [2, 0, 0, 0], [1, 1, 1, 0]),
];

fn criterion_8() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, sizes, ranks, dims) in ORACLES {
        let p: Presentation = fixtures::by_name(name).expect("fixture");
        let h = Cohomology::new(&p);
        let c: &MinimalComplex = h.complex();
        let got_sizes: Vec<usize> = (0..4).map(|n| c.dim(n)).collect();
        let got_ranks: Vec<usize> = (0..4).map(|n| quiver_hh::linalg::rank(&c.delta(n))).collect();
        let got_dims: Vec<usize> = (0..4).map(|n| h.hh_dim(n)).collect();
        ok &= got_sizes == sizes && got_ranks == ranks && got_dims == dims;
        parts.push(format!("{name} dims {:?}", &got_dims[..=h.top_degree()]));
    }
    outcome(ok, parts.join("; "))
}

fn criterion_9() -> Outcome {
    let render = || -> Vec<String> {
        let e5 = Cohomology::new(&fixtures::e5());
        let spec = quiver_hh::harness::RandomSpec { class: TargetClass::String, vertices: 6, arrows: 8, density: 0.5, seed: 42 };
        vec![
            serde_json::to_string(&e5.summary(5)).expect("json"),
            serde_json::to_string(&lie_table(&e5, Variant::Peeled)).expect("json"),
            serde_json::to_string(&verify(&fixtures::e5(), Property::Descent)).expect("json"),
            quiver_hh::emit_presentation(&quiver_hh::harness::random_presentation(&spec).expect("generates")),
            serde_json::to_string(&fuzz(&FuzzSpec::new(TargetClass::Gentle, Property::BracketGentle, 30, SEED))).expect("json"),
        ]
    };
    let a = render();
    let b = render();
    outcome(a == b, format!("{} outputs compared byte for byte", a.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("E5 cohomology reproduction", criterion_1),
        ("cup triviality", criterion_2),
        ("gentle bracket vanishing", criterion_3),
        ("E5 bracket nontriviality", criterion_4),
        ("first-arrow indicator mechanism", criterion_5),
        ("lemma suite", criterion_6),
        ("descent", criterion_7),
        ("small-algebra oracles", criterion_8),
        ("determinism", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!("criterion {} [{}] {name}: {}", i + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
