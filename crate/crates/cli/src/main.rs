use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use quiver_hh::harness::{self, FuzzSpec, Property, RandomError, RandomSpec, TargetClass, Verdict};
use quiver_hh::{classify, emit_presentation, lie_table, parse_presentation, ring_table, Cohomology, Field, Presentation, Variant};

#[derive(Parser)]
#[command(name = "quiver-hh", version, about = "Hochschild cohomology of quadratic monomial quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation and report its class flags.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Dimensions and generators of HH^n.
    Hh {
        file: PathBuf,
        /// Highest degree to report (default: longest chain length).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Q or F<p>; overrides the file's field.
        #[arg(long)]
        field: Option<Field>,
        #[arg(long)]
        json: bool,
        /// Print the path basis and chain sets.
        #[arg(long)]
        dump_basis: bool,
        /// Print cochain bases and differential matrices.
        #[arg(long)]
        dump_complex: bool,
    },
    /// Cup-product and bracket tables on cohomology basis classes.
    Products {
        file: PathBuf,
        #[arg(long, default_value = "literal")]
        circ_variant: Variant,
        #[arg(long)]
        json: bool,
    },
    /// Check one property; exit 0 on pass or report-only, 1 on failure.
    Verify {
        file: PathBuf,
        #[arg(long)]
        property: String,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random presentation of a given class.
    Random {
        #[arg(long)]
        class: TargetClass,
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        arrows: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long)]
        seed: u64,
        /// Write the presentation here instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Verify a property on many random presentations.
    Fuzz {
        #[arg(long)]
        class: TargetClass,
        #[arg(long)]
        property: String,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 12)]
        max_arrows: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Directory for the first counterexample, if any.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// Input could not be used: bad file, bad syntax, unknown property.
struct Invalid(anyhow::Error);

fn load(path: &Path) -> Result<Presentation, Invalid> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Invalid)?;
    parse_presentation(&text).with_context(|| format!("parsing {}", path.display())).map_err(Invalid)
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn property(name: &str) -> Result<Property, Invalid> {
    name.parse().map_err(|e| Invalid(anyhow::Error::new(e)))
}

#[derive(Serialize)]
struct CheckOutput {
    format: u32,
    digest: String,
    #[serde(flatten)]
    report: quiver_hh::ClassReport,
}

#[derive(Serialize)]
struct ProductsOutput {
    format: u32,
    ring: quiver_hh::ProductTable,
    lie: quiver_hh::ProductTable,
}

fn run(cli: Cli) -> Result<ExitCode, Invalid> {
    let ok = |r: Result<()>| r.map(|_| ExitCode::SUCCESS).map_err(Invalid);
    match cli.command {
        Command::Check { file, json } => {
            let p = load(&file)?;
            let report = classify(&p);
            if json {
                ok(print_json(&CheckOutput { format: 1, digest: p.digest(), report }))
            } else {
                let yes = |b: bool| if b { "yes" } else { "no" };
                println!("valid: yes (digest {})", p.digest());
                println!(
                    "triangular: {}\nS2: {}\nS3: {}\nG1: {}\nstring: {}\ngentle: {}",
                    yes(report.triangular),
                    yes(report.s2),
                    yes(report.s3),
                    yes(report.g1),
                    yes(report.string),
                    yes(report.gentle)
                );
                for w in &report.witnesses {
                    println!("violation: {}", serde_json::to_string(w).expect("serializable"));
                }
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Hh { file, max_degree, field, json, dump_basis, dump_complex } => {
            let mut p = load(&file)?;
            if let Some(f) = field {
                p = p.with_field(f);
            }
            let h = Cohomology::new(&p);
            let summary = h.summary(max_degree.unwrap_or(h.top_degree()));
            let basis = dump_basis.then(|| harness::report::basis_dump(h.complex()));
            let complex = dump_complex.then(|| harness::report::complex_dump(h.complex()));
            if json {
                let mut v = serde_json::to_value(&summary).map_err(|e| Invalid(e.into()))?;
                if let Some(b) = basis {
                    v["basis"] = serde_json::to_value(b).map_err(|e| Invalid(e.into()))?;
                }
                if let Some(c) = complex {
                    v["complex"] = serde_json::to_value(c).map_err(|e| Invalid(e.into()))?;
                }
                ok(print_json(&v))
            } else {
                if let Some(b) = basis {
                    print!("{}", b.to_text());
                }
                if let Some(c) = complex {
                    print!("{}", c.to_text());
                }
                print!("{}", summary.to_text());
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Products { file, circ_variant, json } => {
            let p = load(&file)?;
            let h = Cohomology::new(&p);
            let ring = ring_table(&h);
            let lie = lie_table(&h, circ_variant);
            if json {
                ok(print_json(&ProductsOutput { format: 1, ring, lie }))
            } else {
                print!("{}{}", ring.to_text(), lie.to_text());
                Ok(ExitCode::SUCCESS)
            }
        }
        Command::Verify { file, property: name, json } => {
            let prop = property(&name)?;
            let p = load(&file)?;
            let report = harness::verify(&p, prop)
                .with_replay(None, format!("quiver-hh verify {} --property {prop}", file.display()));
            if json {
                print_json(&report).map_err(Invalid)?;
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.verdict == Verdict::Fail { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
        Command::Random { class, vertices, arrows, density, seed, emit } => {
            let spec = RandomSpec { class, vertices, arrows, density, seed };
            let p = match harness::random_presentation(&spec) {
                Ok(p) => p,
                Err(e @ RandomError::InvalidSpec(_)) => return Err(Invalid(e.into())),
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(ExitCode::from(1));
                }
            };
            let text = emit_presentation(&p);
            match emit {
                Some(path) => ok(std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))),
                None => {
                    print!("{text}");
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Fuzz { class, property: name, count, seed, jobs, max_vertices, max_arrows, density, out_dir, json } => {
            let prop = property(&name)?;
            if !(0.0..=1.0).contains(&density) || max_vertices == 0 {
                return Err(Invalid(anyhow::anyhow!("density must lie in [0, 1] and max-vertices must be positive")));
            }
            let spec = FuzzSpec { class, property: prop, count, seed, max_vertices, max_arrows, density };
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs.unwrap_or(0))
                .build()
                .map_err(|e| Invalid(e.into()))?;
            let report = pool.install(|| harness::fuzz(&spec));
            if let Some(cx) = &report.counterexample {
                let path = out_dir.join(format!("counterexample-{prop}-{}.quiver", cx.seed));
                let body = format!("# {prop} fails; replay: {}\n{}", cx.replay, cx.dsl);
                std::fs::write(&path, body).with_context(|| format!("writing {}", path.display())).map_err(Invalid)?;
                eprintln!("counterexample written to {}", path.display());
            }
            if json {
                print_json(&report).map_err(Invalid)?;
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.failed > 0 { ExitCode::from(1) } else { ExitCode::SUCCESS })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
