//! Command-line front end: parse a presentation file, run one of the
//! subcommands, and emit deterministic text.
//!
//! Exit codes: `0` on success, `1` on validation or verification failure,
//! `2` on usage errors.  Output for a fixed invocation is byte-stable:
//! every collection is iterated in a canonical order, and parallel batch
//! verification never reorders its report lines.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::decompose::{cg_tensor, normalize_band, Decomposition, Indecomposable};
use crate::fibre::{connected_components, fibre_product, ComponentClass};
use crate::ideal::principal_ideal;
use crate::oracle::verify_decomposition;
use crate::par;
use crate::quiver::{parse_presentation, validate_string_algebra, QuiverPresentation};
use crate::repring::{string_to_idempotents, Universe};
use crate::shape::{
    count_factorizations, enumerate_cyclic_shapes, enumerate_linear_shapes, Shape, ShapeWord,
};

#[derive(Parser)]
#[command(
    name = "stringalg",
    version,
    about = "Exact tensor-product calculator for string algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Readable lines such as `15× S[@x]`.
    Human,
    /// Tab-separated records such as `15<TAB>string<TAB>S[@x]`.
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Validate that a presentation file is a finite-dimensional string algebra
    Check {
        /// Presentation file
        file: PathBuf,
    },
    /// List the string classes up to a word-length bound
    Strings {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// List the band shape classes up to a word-length bound
    Bands {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Decompose the tensor product of two indecomposables
    Tensor {
        file: PathBuf,
        /// First class: a word like "a a b^-", "@x", "S[a]", or "B[(a b^-), 1/2, 3]"
        a: String,
        /// Second class
        b: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Print idempotent-basis expansions and the band action table
    RingTable {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Describe the principal tensor ideal of an indecomposable
    Ideal {
        file: PathBuf,
        /// Generator: a linear word, "S[...]", "B[...]", or a bare cyclic
        /// word "(a b^-)" (the ideal of a band does not depend on its
        /// eigenvalue or size)
        x: String,
        /// Truncation bound for member word lengths and band sizes
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Show the components of the fibre product of two shapes
    Fibre {
        file: PathBuf,
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Re-check tensor decompositions against exact matrix computations
    Verify {
        file: PathBuf,
        /// First class (omit and pass --all to sweep enumerated pairs)
        a: Option<String>,
        /// Second class
        b: Option<String>,
        /// Verify every unordered pair of enumerated classes
        #[arg(long)]
        all: bool,
        /// Word-length bound for the --all sweep
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Include bands up to this size in the --all sweep (0 = strings only)
        #[arg(long, default_value_t = 0)]
        max_band_size: u64,
        /// Hom probes use every string class up to this length
        #[arg(long, default_value_t = 2)]
        probe_len: usize,
        /// Verify pairs on multiple threads (report order is unaffected)
        #[arg(long)]
        parallel: bool,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

/// A failed run: the message and which exit code it deserves.
enum Failure {
    /// Bad input data: unreadable file, parse error, axiom violation,
    /// unknown class literal.  Exit code 1.
    Validation(String),
    /// Structurally bad invocation.  Exit code 2.
    Usage(String),
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure::Validation(e.to_string())
}

/// Everything a successful command wants to tell the caller.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, ok: true }
    }
}

/// Entry point: parses arguments from the environment, runs the command,
/// prints its output, and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.text);
            if outcome.ok {
                0
            } else {
                1
            }
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    }
}

fn load(file: &PathBuf) -> Result<QuiverPresentation, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", file.display())))?;
    parse_presentation(&text).map_err(invalid)
}

/// Loads and insists on a valid string algebra, as every computation
/// beyond `check` assumes the axioms.
fn load_valid(file: &PathBuf) -> Result<QuiverPresentation, Failure> {
    let pres = load(file)?;
    let report = validate_string_algebra(&pres);
    if !report.passes() {
        return Err(Failure::Validation(format!(
            "not a finite-dimensional string algebra:\n{}",
            report.render(&pres)
        )));
    }
    Ok(pres)
}

fn parse_word(pres: &QuiverPresentation, text: &str) -> Result<ShapeWord, Failure> {
    ShapeWord::parse(pres, text).map_err(invalid)
}

fn parse_shape(pres: &QuiverPresentation, text: &str) -> Result<Shape, Failure> {
    Shape::from_word(pres, parse_word(pres, text)?).map_err(invalid)
}

/// Parses a class literal: `S[word]`, `B[(word), p/q, s]`, or a bare word.
/// Bare cyclic words are accepted only when `bare_cyclic_band` is set (they
/// then denote the band with eigenvalue 1 and size 1).
fn parse_class(
    pres: &QuiverPresentation,
    text: &str,
    bare_cyclic_band: bool,
) -> Result<Indecomposable, Failure> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("S[").and_then(|r| r.strip_suffix(']')) {
        let shape = parse_shape(pres, inner)?;
        return Indecomposable::string(&shape).map_err(invalid);
    }
    if let Some(inner) = t.strip_prefix("B[").and_then(|r| r.strip_suffix(']')) {
        let close = inner.rfind(')').ok_or_else(|| {
            Failure::Validation(format!("band literal needs a cyclic word: {t}"))
        })?;
        let word = parse_word(pres, &inner[..=close])?;
        let rest: Vec<&str> = inner[close + 1..]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let [lambda, size] = rest.as_slice() else {
            return Err(Failure::Validation(format!(
                "band literal needs `B[(word), eigenvalue, size]`: {t}"
            )));
        };
        let lambda = BigRational::from_str(lambda)
            .map_err(|e| Failure::Validation(format!("bad eigenvalue \"{lambda}\": {e}")))?;
        let size = size
            .parse::<u64>()
            .map_err(|e| Failure::Validation(format!("bad band size \"{size}\": {e}")))?;
        return normalize_band(pres, &word, lambda, size).map_err(invalid);
    }
    let word = parse_word(pres, t)?;
    if word.is_cyclic() {
        if bare_cyclic_band {
            return normalize_band(pres, &word, BigRational::from_str("1").unwrap(), 1)
                .map_err(invalid);
        }
        return Err(Failure::Validation(format!(
            "\"{t}\" is a cyclic word; bands need `B[(word), eigenvalue, size]`"
        )));
    }
    let shape = Shape::from_word(pres, word).map_err(invalid)?;
    Indecomposable::string(&shape).map_err(invalid)
}

fn render_decomposition(
    pres: &QuiverPresentation,
    d: &Decomposition,
    format: Format,
) -> String {
    if d.is_empty() {
        return match format {
            Format::Human => "(zero module)\n".to_string(),
            Format::Records => String::new(),
        };
    }
    let mut out = String::new();
    for (class, mult) in d.entries() {
        let kind = match class {
            Indecomposable::String { .. } => "string",
            Indecomposable::Band { .. } => "band",
        };
        match format {
            Format::Human => {
                let _ = writeln!(out, "{mult}× {}", class.literal(pres));
            }
            Format::Records => {
                let _ = writeln!(out, "{mult}\t{kind}\t{}", class.literal(pres));
            }
        }
    }
    out
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check { file } => {
            let pres = load(&file)?;
            let report = validate_string_algebra(&pres);
            if report.passes() {
                Ok(Outcome::ok("string algebra: OK\n".to_string()))
            } else {
                Ok(Outcome {
                    text: format!("string algebra: FAILED\n{}", report.render(&pres)),
                    ok: false,
                })
            }
        }

        Command::Strings { file, max_len, format } => {
            let pres = load_valid(&file)?;
            let mut out = String::new();
            for shape in enumerate_linear_shapes(&pres, max_len) {
                let word = shape.canonical_word().display(&pres);
                match format {
                    Format::Human => {
                        let _ = writeln!(out, "S[{word}]");
                    }
                    Format::Records => {
                        let _ = writeln!(out, "string\tS[{word}]");
                    }
                }
            }
            Ok(Outcome::ok(out))
        }

        Command::Bands { file, max_len, format } => {
            let pres = load_valid(&file)?;
            let mut out = String::new();
            for shape in enumerate_cyclic_shapes(&pres, max_len) {
                let word = shape.canonical_word().display(&pres);
                match format {
                    Format::Human => {
                        let _ = writeln!(out, "{word}");
                    }
                    Format::Records => {
                        let _ = writeln!(out, "band-shape\t{word}");
                    }
                }
            }
            Ok(Outcome::ok(out))
        }

        Command::Tensor { file, a, b, format } => {
            let pres = load_valid(&file)?;
            let u = parse_class(&pres, &a, false)?;
            let v = parse_class(&pres, &b, false)?;
            let d = cg_tensor(&pres, &u, &v).map_err(invalid)?;
            Ok(Outcome::ok(render_decomposition(&pres, &d, format)))
        }

        Command::RingTable { file, max_len, format } => {
            let pres = load_valid(&file)?;
            let universe = Universe::build(&pres, max_len);
            let mut out = String::new();
            for shape in universe.strings() {
                let word = shape.canonical_word();
                let expansion = string_to_idempotents(&universe, &word).map_err(invalid)?;
                let rendered = expansion.render(&pres);
                match format {
                    Format::Human => {
                        let _ = writeln!(out, "[S {}] = {rendered}", word.display(&pres));
                    }
                    Format::Records => {
                        let _ = writeln!(out, "expand\t{}\t{rendered}", word.display(&pres));
                    }
                }
            }
            for cyclic in enumerate_cyclic_shapes(&pres, max_len) {
                let gword = cyclic.canonical_word().display(&pres);
                for f in universe.strings() {
                    let count = count_factorizations(&cyclic, f);
                    if count == 0 {
                        continue;
                    }
                    let fword = f.canonical_word().display(&pres);
                    match format {
                        Format::Human => {
                            let _ = writeln!(
                                out,
                                "[B {gword}]·e[{fword}] = {count}·s·e[{fword}]"
                            );
                        }
                        Format::Records => {
                            let _ = writeln!(out, "action\t{gword}\t{fword}\t{count}");
                        }
                    }
                }
            }
            Ok(Outcome::ok(out))
        }

        Command::Ideal { file, x, max_len, format } => {
            let pres = load_valid(&file)?;
            let generator = parse_class(&pres, &x, true)?;
            let ideal = principal_ideal(&pres, &generator, max_len).map_err(invalid)?;
            let mut out = String::new();
            for word in ideal.strings() {
                match format {
                    Format::Human => {
                        let _ = writeln!(out, "S[{}]", word.display(&pres));
                    }
                    Format::Records => {
                        let _ = writeln!(out, "string\tS[{}]", word.display(&pres));
                    }
                }
            }
            for gword in ideal.band_shapes() {
                match format {
                    Format::Human => {
                        let _ = writeln!(
                            out,
                            "B[{}, λ, t] for every eigenvalue λ and size t ≤ {}",
                            gword.display(&pres),
                            ideal.bound()
                        );
                    }
                    Format::Records => {
                        let _ =
                            writeln!(out, "band\t{}\t{}", gword.display(&pres), ideal.bound());
                    }
                }
            }
            Ok(Outcome::ok(out))
        }

        Command::Fibre { file, a, b, format } => {
            let pres = load_valid(&file)?;
            let f1 = parse_shape(&pres, &a)?;
            let f2 = parse_shape(&pres, &b)?;
            let product = fibre_product(&f1, &f2);
            let report = connected_components(&pres, &product);
            let mut grouped: std::collections::BTreeMap<(u8, ShapeWord), u64> =
                std::collections::BTreeMap::new();
            for component in &report.components {
                let rank = match component.class {
                    ComponentClass::Linear => 0,
                    ComponentClass::Diagonal => 1,
                    ComponentClass::OtherCyclic => 2,
                };
                *grouped.entry((rank, component.shape.canonical_word())).or_insert(0) += 1;
            }
            let mut out = String::new();
            for ((rank, word), count) in &grouped {
                let kind = ["linear", "diagonal", "cyclic"][*rank as usize];
                match format {
                    Format::Human => {
                        let _ = writeln!(out, "{count}× {kind} {}", word.display(&pres));
                    }
                    Format::Records => {
                        let _ = writeln!(out, "{count}\t{kind}\t{}", word.display(&pres));
                    }
                }
            }
            Ok(Outcome::ok(out))
        }

        Command::Verify {
            file,
            a,
            b,
            all,
            max_len,
            max_band_size,
            probe_len,
            parallel,
            format,
        } => {
            let pres = load_valid(&file)?;
            match (a, b, all) {
                (Some(a), Some(b), false) => {
                    verify_pair(&pres, &a, &b, probe_len, parallel, format)
                }
                (None, None, true) => verify_all(
                    &pres,
                    max_len,
                    max_band_size,
                    probe_len,
                    parallel,
                    format,
                ),
                _ => Err(Failure::Usage(
                    "verify needs either two class literals or --all".to_string(),
                )),
            }
        }
    }
}

fn string_probes(pres: &QuiverPresentation, probe_len: usize) -> Vec<Indecomposable> {
    enumerate_linear_shapes(pres, probe_len)
        .iter()
        .map(|s| Indecomposable::string(s).expect("enumerated shapes are linear"))
        .collect()
}

fn verify_pair(
    pres: &QuiverPresentation,
    a: &str,
    b: &str,
    probe_len: usize,
    parallel: bool,
    format: Format,
) -> Result<Outcome, Failure> {
    let u = parse_class(pres, a, false)?;
    let v = parse_class(pres, b, false)?;
    let predicted = cg_tensor(pres, &u, &v).map_err(invalid)?;
    let mut probes = string_probes(pres, probe_len);
    probes.push(u.clone());
    probes.push(v.clone());
    let report = verify_decomposition(pres, &u, &v, &predicted, &probes, parallel);

    let mut out = render_decomposition(pres, &predicted, format);
    for check in &report.checks {
        if check.passed {
            let _ = writeln!(out, "check {}: ok", check.label);
        } else {
            let _ = writeln!(
                out,
                "check {}: MISMATCH (tensor side {}, predicted side {})",
                check.label, check.expected, check.actual
            );
        }
    }
    let _ = writeln!(
        out,
        "result: {} ({} probes)",
        if report.passed { "PASS" } else { "FAIL" },
        report.n_probes
    );
    Ok(Outcome { text: out, ok: report.passed })
}

fn verify_all(
    pres: &QuiverPresentation,
    max_len: usize,
    max_band_size: u64,
    probe_len: usize,
    parallel: bool,
    format: Format,
) -> Result<Outcome, Failure> {
    let mut classes = string_probes(pres, max_len);
    for shape in enumerate_cyclic_shapes(pres, max_len) {
        for size in 1..=max_band_size {
            classes.push(
                normalize_band(
                    pres,
                    &shape.canonical_word(),
                    BigRational::from_str("2").unwrap(),
                    size,
                )
                .map_err(invalid)?,
            );
        }
    }
    let probes = string_probes(pres, probe_len);

    let mut pairs: Vec<(Indecomposable, Indecomposable)> = Vec::new();
    for (i, u) in classes.iter().enumerate() {
        for v in classes.iter().skip(i) {
            pairs.push((u.clone(), v.clone()));
        }
    }

    let lines: Vec<(String, bool)> = par::map_batch(&pairs, parallel, |(u, v)| {
        let predicted = match cg_tensor(pres, u, v) {
            Ok(d) => d,
            Err(e) => return (format!("ERROR {} ⊗ {}: {e}", u.literal(pres), v.literal(pres)), false),
        };
        let mut pair_probes = probes.clone();
        pair_probes.push(u.clone());
        pair_probes.push(v.clone());
        // Inner verification stays sequential; the sweep itself is the
        // parallel axis.
        let report = verify_decomposition(pres, u, v, &predicted, &pair_probes, false);
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        let line = match format {
            Format::Human => format!(
                "{verdict} {} ⊗ {} ({} probes)",
                u.literal(pres),
                v.literal(pres),
                report.n_probes
            ),
            Format::Records => format!(
                "{verdict}\t{}\t{}\t{}",
                u.literal(pres),
                v.literal(pres),
                report.n_probes
            ),
        };
        (line, report.passed)
    });

    let mut out = String::new();
    let mut failures = 0usize;
    for (line, passed) in &lines {
        let _ = writeln!(out, "{line}");
        if !passed {
            failures += 1;
        }
    }
    let _ = writeln!(
        out,
        "verified {} pairs at probe depth {probe_len}: {failures} failures",
        pairs.len()
    );
    Ok(Outcome { text: out, ok: failures == 0 })
}
