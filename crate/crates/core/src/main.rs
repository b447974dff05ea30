use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use twoterm::acceptance::{self, Scale};
use twoterm::butterfly::{
    classify, coimage_b, cokernel_b, compose, copip, image_b, is_invertible, kernel_b, pip, random_butterfly,
    random_complex, random_group, random_map, two_morphism_find, Butterfly,
};
use twoterm::derived::biext_groups;
use twoterm::exactness::{
    presentation_sequence, random_exact_sequence, shift_sequence, truncation_sequence, ButterflyShortSeq,
};
use twoterm::fgab::FgAbGroup;
use twoterm::fixtures;
use twoterm::json::{self as doc, Document, Kind, ReadError};
use twoterm::twocomplex::TwoTermComplex;
use twoterm::Error;

#[derive(Parser)]
#[command(name = "twoterm", version, about = "Butterflies between 2-term complexes of f.g. abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check documents; butterflies are checked against every axiom.
    Validate {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Check independent files on this many threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// The composite `Z ∘ Y` of `Y: E → F` and `Z: F → G`.
    Compose {
        y: PathBuf,
        z: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a 2-isomorphism between parallel butterflies.
    Iso2 { a: PathBuf, b: PathBuf },
    /// Invariants of a butterfly.
    Report { y: PathBuf },
    /// The six-term homology sequence of a short exact sequence.
    Les { seq: PathBuf },
    /// `π_1` and `π_0` of Biext(A, B; C). Groups are shorthand like `Z/2+Z`,
    /// a single order like `6`, or comma lists of invariant factors with `0` for Z.
    Biext { a: String, b: String, c: String },
    /// Emit a document: a named fixture, or a seeded random one.
    Gen {
        /// group, map, complex, butterfly or sequence.
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fixture name (K2, E2, F2, B, IK2, Br, IE2, presentation:E2, truncation:E2, shift:E2, ...).
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 16)]
        max_order: u64,
        #[arg(long, default_value_t = 1)]
        max_rank: usize,
    },
    /// Re-emit a document in canonical form.
    Roundtrip { path: PathBuf },
    /// Run acceptance criteria 1 to 9.
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

/// A failed command: what to print and which exit code to use.
struct Failure {
    code: u8,
    message: String,
}

impl From<ReadError> for Failure {
    fn from(e: ReadError) -> Self {
        Failure { code: e.exit_code() as u8, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        ReadError::from(e).into()
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure { code: 2, message: format!("{}: {e}", path.display()) }
}

fn usage(message: String) -> Failure {
    Failure { code: 2, message }
}

fn refusal(message: String) -> Failure {
    Failure { code: 1, message }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path, kind: Option<Kind>) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(doc::parse_document(&text, kind)?)
}

fn read_butterfly(path: &Path) -> Result<Butterfly, Failure> {
    match read(path, Some(Kind::Butterfly))? {
        Document::Butterfly(y) => {
            y.validate().map_err(|a| refusal(format!("{}: {}", path.display(), Error::Axiom(a))))?;
            Ok(y)
        }
        _ => unreachable!("parse_document honors the expected kind"),
    }
}

fn read_sequence(path: &Path) -> Result<ButterflyShortSeq, Failure> {
    match read(path, Some(Kind::Sequence))? {
        Document::Sequence(s) => {
            for (name, y) in [("Y", s.y()), ("Z", s.z())] {
                y.validate().map_err(|a| refusal(format!("{name}: {}", Error::Axiom(a))))?;
            }
            Ok(s)
        }
        _ => unreachable!("parse_document honors the expected kind"),
    }
}

fn validate_one(path: &Path) -> Outcome {
    match read(path, None)? {
        Document::Butterfly(y) => y.validate().map_err(|a| refusal(Error::Axiom(a).to_string()))?,
        Document::Sequence(_) => {
            read_sequence(path)?;
        }
        _ => {}
    }
    Ok("ok".into())
}

fn validate(paths: &[PathBuf], jobs: usize) -> Outcome {
    let results: Vec<Outcome> = if jobs <= 1 || paths.len() == 1 {
        paths.iter().map(|p| validate_one(p)).collect()
    } else {
        let chunk = paths.len().div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = paths
                .chunks(chunk)
                .map(|c| s.spawn(move || c.iter().map(|p| validate_one(p)).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("validation thread")).collect()
        })
    };
    if paths.len() == 1 {
        return results.into_iter().next().expect("one result");
    }
    let mut lines = Vec::new();
    let mut worst = 0;
    for (p, r) in paths.iter().zip(results) {
        match r {
            Ok(m) => lines.push(format!("{}: {m}", p.display())),
            Err(f) => {
                worst = worst.max(f.code);
                lines.push(format!("{}: {}", p.display(), f.message));
            }
        }
    }
    if worst == 0 {
        Ok(lines.join("\n"))
    } else {
        Err(Failure { code: worst, message: lines.join("\n") })
    }
}

fn factors(g: &FgAbGroup) -> Value {
    Value::String(g.to_string())
}

fn homology_value(k: &TwoTermComplex) -> Value {
    json!({ "H-1": factors(k.homology().h_m1()), "H0": factors(k.homology().h0()) })
}

fn report(y: &Butterfly) -> Value {
    let (a1, a0) = y.homology_action();
    let c = classify(y);
    json!({
        "homology_action": { "H-1": doc::map_to_value(&a1), "H0": doc::map_to_value(&a0) },
        "invertible": is_invertible(y),
        "mono": c.mono,
        "epi": c.epi,
        "faithful": c.faithful,
        "cofaithful": c.cofaithful,
        "pip": factors(&pip(y)),
        "copip": factors(&copip(y)),
        "kernel": homology_value(&kernel_b(y).0),
        "cokernel": homology_value(&cokernel_b(y).0),
        "image": homology_value(&image_b(y)),
        "coimage": homology_value(&coimage_b(y)),
    })
}

fn les(s: &ButterflyShortSeq) -> Outcome {
    if !s.is_exact() {
        return Err(refusal(Error::NotExact("0 → E^-1 → Y → Z → G^0 → 0 is not exact".into()).to_string()));
    }
    let six = s.les()?;
    let v = json!({
        "groups": six.groups.iter().map(factors).collect::<Vec<_>>(),
        "maps": six.maps.iter().map(doc::map_to_value).collect::<Vec<_>>(),
        "exact": six.exactness().to_vec(),
        "delta": doc::map_to_value(six.delta()),
    });
    Ok(doc::to_canonical_string(&v))
}

/// Shorthand (`Z/2+Z`, `0`), a single order `n` for Z/n, or a comma list of
/// invariant factors in which `0` stands for Z.
fn parse_group(s: &str) -> Result<FgAbGroup, Failure> {
    let s = s.trim();
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) && s.contains(',') {
        let terms: Vec<String> = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| if t == "0" { "Z".to_string() } else { format!("Z/{t}") })
            .collect();
        return terms.join("+").parse().map_err(usage);
    }
    if let Ok(n) = s.parse::<u64>() {
        return Ok(if n <= 1 { FgAbGroup::trivial() } else { FgAbGroup::cyclic(n) });
    }
    s.parse().map_err(usage)
}

fn biext(a: &str, b: &str, c: &str) -> Outcome {
    let x = biext_groups(&parse_group(a)?, &parse_group(b)?, &parse_group(c)?)?;
    let v = json!({
        "pi1": factors(&x.pi1),
        "pi0": factors(&x.pi0),
        "hom_part": factors(&x.hom_part),
        "ext_part": factors(&x.ext_part),
    });
    Ok(doc::to_canonical_string(&v))
}

fn named(kind: &str, name: &str) -> Result<Document, Failure> {
    let unknown = || usage(format!("no {kind} fixture named `{name}`"));
    Ok(match kind {
        "complex" => Document::Complex(fixtures::complex_by_name(name).ok_or_else(unknown)?),
        "butterfly" => Document::Butterfly(fixtures::butterfly_by_name(name).ok_or_else(unknown)?),
        "sequence" => {
            let (which, on) = name.split_once(':').ok_or_else(unknown)?;
            let e = fixtures::complex_by_name(on).ok_or_else(unknown)?;
            Document::Sequence(match which {
                "presentation" => presentation_sequence(&e),
                "truncation" => truncation_sequence(&e),
                "shift" => shift_sequence(&e),
                _ => return Err(unknown()),
            })
        }
        "group" => Document::Group(parse_group(name)?),
        _ => return Err(usage(format!("unknown document kind `{kind}`"))),
    })
}

fn generate(kind: &str, seed: u64, name: Option<&str>, max_order: u64, max_rank: usize) -> Outcome {
    let d = match name {
        Some(n) => named(kind, n)?,
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match kind {
                "group" => Document::Group(random_group(&mut rng, max_order, max_rank)),
                "map" => {
                    let a = random_group(&mut rng, max_order, max_rank);
                    let b = random_group(&mut rng, max_order, max_rank);
                    Document::Map(random_map(&mut rng, &a, &b))
                }
                "complex" => Document::Complex(random_complex(&mut rng, max_order, max_rank)),
                "butterfly" => {
                    let e = random_complex(&mut rng, max_order, max_rank);
                    let f = random_complex(&mut rng, max_order, max_rank);
                    Document::Butterfly(random_butterfly(&mut rng, &e, &f))
                }
                "sequence" => Document::Sequence(random_exact_sequence(&mut rng, max_order, max_rank)),
                _ => return Err(usage(format!("unknown document kind `{kind}`"))),
            }
        }
    };
    Ok(doc::document_to_string(&d))
}

fn selftest(quick: bool) -> Outcome {
    let scale = if quick { Scale::Quick } else { Scale::Full };
    let reports = acceptance::run_suites(scale);
    let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    if reports.iter().all(|r| r.passed) {
        Ok(text)
    } else {
        println!("{text}");
        Err(refusal(format!("{} of {} criteria failed", reports.iter().filter(|r| !r.passed).count(), reports.len())))
    }
}

fn iso2(a: &Butterfly, b: &Butterfly) -> Outcome {
    Ok(match two_morphism_find(a, b)? {
        Some(t) => format!("isomorphic\n{}", doc::to_canonical_string(&json!({ "m": doc::map_to_value(&t.m) }))),
        None => "none".into(),
    })
}

fn run(cmd: Cmd) -> Outcome {
    match cmd {
        Cmd::Validate { paths, jobs } => validate(&paths, jobs),
        Cmd::Compose { y, z, out } => {
            let (y, z) = (read_butterfly(&y)?, read_butterfly(&z)?);
            let zy = compose(&z, &y)?;
            let text = doc::document_to_string(&Document::Butterfly(zy.clone()));
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| io_failure(&path, e))?;
                    Ok(format!("carrier {}", zy.carrier()))
                }
                None => Ok(text),
            }
        }
        Cmd::Iso2 { a, b } => iso2(&read_butterfly(&a)?, &read_butterfly(&b)?),
        Cmd::Report { y } => Ok(doc::to_canonical_string(&report(&read_butterfly(&y)?))),
        Cmd::Les { seq } => les(&read_sequence(&seq)?),
        Cmd::Biext { a, b, c } => biext(&a, &b, &c),
        Cmd::Gen { kind, seed, name, max_order, max_rank } => {
            generate(&kind, seed, name.as_deref(), max_order, max_rank)
        }
        Cmd::Roundtrip { path } => Ok(doc::document_to_string(&read(&path, None)?)),
        Cmd::Selftest { quick } => selftest(quick),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("twoterm: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_arguments() {
        assert_eq!(parse_group("2,2").ok().unwrap().to_string(), "Z/2+Z/2");
        assert_eq!(parse_group("0").ok().unwrap().to_string(), "0");
        assert_eq!(parse_group("2,0").ok().unwrap().to_string(), "Z/2+Z");
        assert_eq!(parse_group("Z/4+Z").ok().unwrap().to_string(), "Z/4+Z");
        assert_eq!(parse_group("6").ok().unwrap().to_string(), "Z/6");
        assert!(parse_group("Q").is_err());
    }
}
