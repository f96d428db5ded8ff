use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::Field;
use crate::presentation::{classify, Presentation};

/// Attempts per presentation before giving up.
pub const RETRY_BOUND: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetClass {
    Quadratic,
    QuadraticS3,
    String,
    Gentle,
}

impl TargetClass {
    pub fn name(self) -> &'static str {
        match self {
            TargetClass::Quadratic => "quadratic",
            TargetClass::QuadraticS3 => "quadratic-s3",
            TargetClass::String => "string",
            TargetClass::Gentle => "gentle",
        }
    }

    /// Whether at most two arrows may start or end at a vertex.
    fn capped(self) -> bool {
        matches!(self, TargetClass::String | TargetClass::Gentle)
    }
}

impl fmt::Display for TargetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TargetClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quadratic" => Ok(TargetClass::Quadratic),
            "quadratic-s3" => Ok(TargetClass::QuadraticS3),
            "string" => Ok(TargetClass::String),
            "gentle" => Ok(TargetClass::Gentle),
            other => Err(format!("unknown class `{other}` (expected quadratic, quadratic-s3, string or gentle)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomSpec {
    pub class: TargetClass,
    pub vertices: usize,
    pub arrows: usize,
    pub density: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RandomError {
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("generation exhausted after {RETRY_BOUND} attempts for {class} with {vertices} vertices, {arrows} arrows, density {density}, seed {seed}", class = .0.class, vertices = .0.vertices, arrows = .0.arrows, density = .0.density, seed = .0.seed)]
    GenerationExhausted(RandomSpec),
}

impl RandomSpec {
    pub fn validate(&self) -> Result<(), RandomError> {
        if self.vertices == 0 {
            return Err(RandomError::InvalidSpec("vertex count must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(RandomError::InvalidSpec(format!("density {} outside [0, 1]", self.density)));
        }
        Ok(())
    }

    /// The `random` invocation that regenerates this presentation.
    pub fn command(&self) -> String {
        format!(
            "quiver-hh random --class {} --vertices {} --arrows {} --density {} --seed {}",
            self.class, self.vertices, self.arrows, self.density, self.seed
        )
    }
}

/// A random presentation of the requested class, deterministic in the seed.
///
/// Arrows follow a random total order of the vertices, so the quiver is
/// acyclic. Relations are chosen vertex by vertex; for the classes with (S3)
/// the non-relations at each vertex form a partial matching, and for gentle
/// presentations the relations do too. The result is checked with
/// [`classify`] before it is returned.
pub fn random_presentation(spec: &RandomSpec) -> Result<Presentation, RandomError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..RETRY_BOUND {
        if let Some(p) = attempt(spec, &mut rng) {
            let r = classify(&p);
            let ok = match spec.class {
                TargetClass::Quadratic => true,
                TargetClass::QuadraticS3 => r.s3,
                TargetClass::String => r.string,
                TargetClass::Gentle => r.gentle,
            };
            if ok {
                return Ok(p);
            }
        }
    }
    Err(RandomError::GenerationExhausted(spec.clone()))
}

fn attempt(spec: &RandomSpec, rng: &mut ChaCha8Rng) -> Option<Presentation> {
    let n = spec.vertices;
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);

    let mut out_deg = vec![0usize; n];
    let mut in_deg = vec![0usize; n];
    let mut arrows: Vec<(usize, usize)> = Vec::with_capacity(spec.arrows);
    for _ in 0..spec.arrows {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (u, v) = (order[i], order[j]);
                if !spec.class.capped() || (out_deg[u] < 2 && in_deg[v] < 2) {
                    pairs.push((u, v));
                }
            }
        }
        let &(u, v) = pairs.choose(rng)?;
        out_deg[u] += 1;
        in_deg[v] += 1;
        arrows.push((u, v));
    }

    let mut relations = Vec::new();
    for v in 0..n {
        let incoming: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].1 == v).collect();
        let outgoing: Vec<usize> = (0..arrows.len()).filter(|&a| arrows[a].0 == v).collect();
        let pairs: Vec<(usize, usize)> =
            incoming.iter().flat_map(|&x| outgoing.iter().map(move |&y| (x, y))).collect();
        relations.extend(choose_relations(spec, &pairs, rng));
    }

    let vertex_names: Vec<String> = (1..=n).map(|v| v.to_string()).collect();
    let arrow_specs: Vec<(String, String, String)> = arrows
        .iter()
        .enumerate()
        .map(|(k, &(u, v))| (format!("a{}", k + 1), vertex_names[u].clone(), vertex_names[v].clone()))
        .collect();
    let rel_names: Vec<(String, String)> =
        relations.iter().map(|&(x, y)| (arrow_specs[x].0.clone(), arrow_specs[y].0.clone())).collect();
    let rel_refs: Vec<(&str, &str)> = rel_names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let arrow_refs: Vec<(&str, &str, &str)> =
        arrow_specs.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    let vertex_refs: Vec<&str> = vertex_names.iter().map(String::as_str).collect();
    Presentation::from_names(&vertex_refs, &arrow_refs, &rel_refs, Field::Rational).ok()
}

fn is_matching(pairs: &[(usize, usize)]) -> bool {
    pairs.iter().enumerate().all(|(i, a)| pairs[i + 1..].iter().all(|b| a.0 != b.0 && a.1 != b.1))
}

fn choose_relations(spec: &RandomSpec, pairs: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    match spec.class {
        TargetClass::Quadratic => pairs.iter().copied().filter(|_| rng.gen_bool(spec.density)).collect(),
        TargetClass::QuadraticS3 | TargetClass::String => {
            let mut shuffled = pairs.to_vec();
            shuffled.shuffle(rng);
            let mut free: Vec<(usize, usize)> = Vec::new();
            let mut related = Vec::new();
            for (x, y) in shuffled {
                let open = free.iter().all(|&(a, b)| a != x && b != y);
                if open && !rng.gen_bool(spec.density) {
                    free.push((x, y));
                } else {
                    related.push((x, y));
                }
            }
            related.sort_unstable();
            related
        }
        TargetClass::Gentle => {
            // At most four pairs per vertex: enumerate the admissible subsets.
            let k = pairs.len();
            let mut options = Vec::new();
            let mut weights = Vec::new();
            for mask in 0u32..(1 << k) {
                let (related, free): (Vec<_>, Vec<_>) =
                    (0..k).map(|i| (mask >> i & 1 == 1, pairs[i])).partition(|(r, _)| *r);
                let related: Vec<_> = related.into_iter().map(|(_, p)| p).collect();
                let free: Vec<_> = free.into_iter().map(|(_, p)| p).collect();
                if is_matching(&related) && is_matching(&free) {
                    weights.push(spec.density.powi(related.len() as i32) * (1.0 - spec.density).powi(free.len() as i32));
                    options.push(related);
                }
            }
            let total: f64 = weights.iter().sum();
            let pick = if total > 0.0 {
                let mut x = rng.gen::<f64>() * total;
                let mut idx = options.len() - 1;
                for (i, w) in weights.iter().enumerate() {
                    if x < *w {
                        idx = i;
                        break;
                    }
                    x -= w;
                }
                idx
            } else {
                rng.gen_range(0..options.len())
            };
            options.swap_remove(pick)
        }
    }
}
