use serde::Serialize;

use super::Presentation;

/// A witness that a class condition fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    /// More than two arrows start (`outgoing`) or end at `vertex`.
    TooManyArrows { vertex: String, outgoing: bool, arrows: Vec<String> },
    /// `arrow` has two continuations on the given side that avoid the ideal.
    /// `after` means paths `arrow · x`, otherwise `x · arrow`.
    TwoFreeContinuations { arrow: String, after: bool, continuations: [String; 2] },
    /// `arrow` has two continuations on the given side lying in the ideal.
    TwoRelationContinuations { arrow: String, after: bool, continuations: [String; 2] },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub triangular: bool,
    pub s2: bool,
    pub s3: bool,
    pub g1: bool,
    pub string: bool,
    pub gentle: bool,
    pub witnesses: Vec<Violation>,
}

/// Evaluates the string and gentle conditions. Monomiality, quadraticity and
/// acyclicity hold for every validated presentation.
pub fn classify(p: &Presentation) -> ClassReport {
    let q = p.quiver();
    let name = |a: super::ArrowId| q.arrow(a).name.clone();
    let mut witnesses = Vec::new();

    let mut s2 = true;
    for v in q.vertices() {
        for (outgoing, arrows) in [(true, q.outgoing(v)), (false, q.incoming(v))] {
            if arrows.len() > 2 {
                s2 = false;
                witnesses.push(Violation::TooManyArrows {
                    vertex: q.vertex_name(v).to_string(),
                    outgoing,
                    arrows: arrows.iter().map(|&a| name(a)).collect(),
                });
            }
        }
    }

    let mut s3 = true;
    let mut g1 = true;
    for a in q.arrow_ids() {
        let after: Vec<_> = q.outgoing(q.target(a)).to_vec();
        let before: Vec<_> = q.incoming(q.source(a)).to_vec();
        for (is_after, candidates) in [(true, after), (false, before)] {
            let (related, free): (Vec<_>, Vec<_>) = candidates
                .into_iter()
                .partition(|&x| if is_after { p.is_relation(a, x) } else { p.is_relation(x, a) });
            if free.len() > 1 {
                s3 = false;
                witnesses.push(Violation::TwoFreeContinuations {
                    arrow: name(a),
                    after: is_after,
                    continuations: [name(free[0]), name(free[1])],
                });
            }
            if related.len() > 1 {
                g1 = false;
                witnesses.push(Violation::TwoRelationContinuations {
                    arrow: name(a),
                    after: is_after,
                    continuations: [name(related[0]), name(related[1])],
                });
            }
        }
    }

    let string = s2 && s3;
    ClassReport { triangular: true, s2, s3, g1, string, gentle: string && g1, witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn e5_is_string_not_gentle() {
        let r = classify(&fixtures::e5());
        assert!(r.string && r.s2 && r.s3);
        assert!(!r.gentle && !r.g1);
        assert!(r.witnesses.contains(&Violation::TwoRelationContinuations {
            arrow: "alpha1".into(),
            after: true,
            continuations: ["alpha2".into(), "beta".into()],
        }));
    }

    #[test]
    fn small_fixtures_are_gentle() {
        for p in [fixtures::d3(), fixtures::k2(), fixtures::a2(), fixtures::a3r()] {
            let r = classify(&p);
            assert!(r.gentle, "{r:?}");
            assert!(r.witnesses.is_empty());
        }
    }

    #[test]
    fn three_arrows_break_s2() {
        let p = Presentation::from_names(
            &["1", "2"],
            &[("a", "1", "2"), ("b", "1", "2"), ("c", "1", "2")],
            &[],
            crate::linalg::Field::Rational,
        )
        .unwrap();
        let r = classify(&p);
        assert!(!r.s2 && !r.string && !r.gentle);
        assert!(r.s3);
    }

    #[test]
    fn two_free_continuations_break_s3() {
        let p = Presentation::from_names(
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "2", "3")],
            &[],
            crate::linalg::Field::Rational,
        )
        .unwrap();
        let r = classify(&p);
        assert!(!r.s3 && !r.string);
        assert!(matches!(r.witnesses[0], Violation::TwoFreeContinuations { .. }));
    }
}
