//! Bundled example presentations.

use crate::presentation::{parse_presentation, Presentation};

pub const E5: &str = include_str!("../fixtures/e5.quiver");
pub const D3: &str = include_str!("../fixtures/d3.quiver");
pub const K2: &str = include_str!("../fixtures/k2.quiver");
pub const A2: &str = include_str!("../fixtures/a2.quiver");
pub const A3R: &str = include_str!("../fixtures/a3r.quiver");
pub const SD3: &str = include_str!("../fixtures/sd3.quiver");
pub const SD3_MIRROR: &str = include_str!("../fixtures/sd3m.quiver");

fn load(text: &str) -> Presentation {
    parse_presentation(text).expect("bundled fixture parses")
}

/// Five vertices, six arrows, every length-two path a relation.
pub fn e5() -> Presentation {
    load(E5)
}

pub fn d3() -> Presentation {
    load(D3)
}

pub fn k2() -> Presentation {
    load(K2)
}

pub fn a2() -> Presentation {
    load(A2)
}

pub fn a3r() -> Presentation {
    load(A3R)
}

pub fn sd3() -> Presentation {
    load(SD3)
}

pub fn sd3_mirror() -> Presentation {
    load(SD3_MIRROR)
}

/// Every bundled fixture with its name.
pub fn all() -> Vec<(&'static str, Presentation)> {
    vec![
        ("E5", e5()),
        ("D3", d3()),
        ("K2", k2()),
        ("A2", a2()),
        ("A3R", a3r()),
        ("SD3", sd3()),
        ("SD3M", sd3_mirror()),
    ]
}

/// Looks a fixture up by (case-insensitive) name.
pub fn by_name(name: &str) -> Option<Presentation> {
    all().into_iter().find(|(n, _)| n.eq_ignore_ascii_case(name)).map(|(_, p)| p)
}
