//! The `quasisection` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::arrangement::{build_dcel, sample_section, ArrangementSpec, LocalVertex};
use crate::error::{Error, Result};
use crate::formula::{
    all_families, euler_of_summary, gallery, gallery_catalog, solve_uniqueness, Anchor, Family, GalleryCheck,
    QuasisectionSummary,
};
use crate::oracle::{expected_index, expected_index_shortcut, oracle_report};
use crate::portrait::{classify, named_portrait, type_i, type_ii, type_iii, whitney, Portrait, Side, VertexDescriptor};
use crate::rational::Rational;
use crate::render::{render_arrangement, render_portrait};
use crate::weights::weight_of;

#[derive(Parser, Debug)]
#[command(
    name = "quasisection",
    version,
    about = "Local formula for Euler numbers of quasisections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare oracle expectations with the closed-form weights.
    VerifyWeights {
        #[arg(long, default_value_t = 5)]
        max_nk: u32,
        #[arg(long, default_value_t = 5)]
        max_r: u32,
    },
    /// Euler number of an arrangement or summary file.
    Euler { input: PathBuf },
    /// Draw random sections of an arrangement and check the index sum.
    Sample {
        input: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Solve the constraint system on an unknown local formula.
    Uniqueness {
        #[arg(long, default_value_t = 6)]
        cutoff: u32,
        /// Comma-separated family names, `all` or `none`.
        #[arg(long, default_value = "all")]
        families: String,
        /// Comma-separated anchor names or `none`.
        #[arg(long, default_value = "ANCHOR1")]
        anchors: String,
    },
    /// Write an SVG of a portrait or arrangement.
    Render {
        /// Portrait or arrangement JSON file.
        input: Option<PathBuf>,
        /// Generator name such as `I(2,0)` or `whitney(2)` instead of a file.
        #[arg(long)]
        portrait: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curated example quasisections.
    Gallery {
        #[command(subcommand)]
        action: GalleryAction,
    },
    /// Enumerate the expected index of one portrait.
    Oracle {
        /// Generator name such as `II(1,R)`, or a portrait JSON file.
        target: String,
    },
    /// Generate, classify or validate portraits.
    Portrait {
        #[command(subcommand)]
        action: PortraitAction,
    },
}

#[derive(Subcommand, Debug)]
enum GalleryAction {
    List,
    Check,
    Show { name: String },
}

#[derive(Subcommand, Debug)]
enum PortraitAction {
    /// Print the generator portrait as JSON.
    Show {
        name: String,
    },
    Classify {
        input: PathBuf,
    },
    Validate {
        input: PathBuf,
    },
}

/// One row of the weight verification table.
#[derive(Clone, Debug)]
pub struct WeightRow {
    pub name: String,
    pub descriptor: VertexDescriptor,
    pub oracle: Rational,
    pub closed_form: Rational,
    pub shortcut: Rational,
    pub mirror: Rational,
}

impl WeightRow {
    pub fn ok(&self) -> bool {
        self.oracle == self.closed_form && self.shortcut == self.oracle && self.mirror == -&self.oracle
    }
}

fn row(name: String, p: &Portrait, closed_form: Rational) -> Result<WeightRow> {
    Ok(WeightRow {
        name,
        descriptor: classify(p)?,
        oracle: expected_index(p)?,
        closed_form,
        shortcut: expected_index_shortcut(p)?,
        mirror: expected_index(&p.mirror())?,
    })
}

/// Generator portraits within the bounds, in table order.
pub fn weight_rows(max_nk: u32, max_r: u32) -> Result<Vec<WeightRow>> {
    let mut rows = Vec::new();
    for s in 1..=max_nk {
        for n in (0..=s).rev() {
            let d = VertexDescriptor::TypeI { n, k: s - n };
            rows.push(row(d.to_string(), &type_i(n, s - n)?, weight_of(&d)?)?);
        }
    }
    for r in 0..=max_r {
        for side in [Side::R, Side::L] {
            let d = VertexDescriptor::TypeII { r, side };
            rows.push(row(d.to_string(), &type_ii(r, side), weight_of(&d)?)?);
        }
    }
    for r in 0..=max_r {
        for side in [Side::R, Side::L] {
            let d = VertexDescriptor::TypeIII { r, side };
            rows.push(row(d.to_string(), &type_iii(r, side), weight_of(&d)?)?);
        }
    }
    for r in 1..=max_r.clamp(1, 3) {
        rows.push(row(format!("whitney({r})"), &whitney(r)?, Rational::zero())?);
    }
    Ok(rows)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

enum Input {
    Arrangement(ArrangementSpec),
    Summary(QuasisectionSummary),
    Portrait(Portrait),
}

fn load(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let with_context = |e: Error| Error::InvalidParameter(format!("{}: {e}", path.display()));
    if value.get("pancakes").is_some() {
        Ok(Input::Arrangement(
            ArrangementSpec::from_json(&text).map_err(with_context)?,
        ))
    } else if value.get("vertices").is_some() {
        Ok(Input::Summary(
            QuasisectionSummary::from_json(&text).map_err(with_context)?,
        ))
    } else if value.get("sectors").is_some() {
        Ok(Input::Portrait(Portrait::from_json(&text).map_err(with_context)?))
    } else {
        Err(Error::InvalidParameter(format!(
            "{}: expected an arrangement (\"pancakes\"), summary (\"vertices\") or portrait (\"sectors\")",
            path.display()
        )))
    }
}

fn portrait_target(target: &str) -> Result<Portrait> {
    let path = Path::new(target);
    if path.exists() {
        match load(path)? {
            Input::Portrait(p) => Ok(p),
            _ => Err(Error::InvalidParameter(format!("{target}: not a portrait file"))),
        }
    } else {
        named_portrait(target)
    }
}

fn parse_list<T: std::str::FromStr<Err = Error> + Ord>(
    raw: &str,
    all: impl Fn() -> BTreeSet<T>,
) -> Result<BTreeSet<T>> {
    match raw.trim() {
        "all" => Ok(all()),
        "none" | "" => Ok(BTreeSet::new()),
        list => list.split(',').map(str::parse).collect(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SelfCheck { .. } | Error::NonIntegralDegree(_) | Error::ExtensionMismatch(_) => 1,
        _ => 2,
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Io(e)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::VerifyWeights { max_nk, max_r } => {
            let rows = weight_rows(max_nk, max_r)?;
            writeln!(
                out,
                "{:<14} {:<24} {:>10} {:>10} {:>10} {:>10}  ok",
                "portrait", "descriptor", "oracle", "formula", "shortcut", "mirror"
            )
            .map_err(io)?;
            let mut bad = 0;
            for r in &rows {
                if !r.ok() {
                    bad += 1;
                }
                writeln!(
                    out,
                    "{:<14} {:<24} {:>10} {:>10} {:>10} {:>10}  {}",
                    r.name,
                    r.descriptor.to_string(),
                    r.oracle.to_string(),
                    r.closed_form.to_string(),
                    r.shortcut.to_string(),
                    r.mirror.to_string(),
                    if r.ok() { "yes" } else { "NO" }
                )
                .map_err(io)?;
            }
            writeln!(out, "{} rows, {} mismatches", rows.len(), bad).map_err(io)?;
            Ok(if bad == 0 { 0 } else { 1 })
        }
        Command::Euler { input } => match load(&input)? {
            Input::Summary(s) => {
                let e = euler_of_summary(&s)?;
                writeln!(out, "{e}").map_err(io)?;
                Ok(0)
            }
            Input::Arrangement(spec) => {
                let dcel = build_dcel(&spec)?;
                let vs = LocalVertex::all(&spec, &dcel)?;
                let mut total = Rational::zero();
                for v in &vs {
                    let (x, y) = dcel.vertices[v.vertex].point;
                    let (a, b) = dcel.vertices[v.vertex].circles;
                    writeln!(
                        out,
                        "# v{} circles {a},{b} at ({x:.6}, {y:.6}): {} weight {}",
                        v.vertex, v.descriptor, v.weight
                    )
                    .map_err(io)?;
                    total += &v.weight;
                }
                writeln!(out, "{total}").map_err(io)?;
                Ok(0)
            }
            Input::Portrait(_) => Err(Error::InvalidParameter(
                "euler expects an arrangement or a summary".into(),
            )),
        },
        Command::Sample { input, samples, seed } => {
            let spec = match load(&input)? {
                Input::Arrangement(s) => s,
                _ => return Err(Error::InvalidParameter("sample expects an arrangement file".into())),
            };
            let dcel = build_dcel(&spec)?;
            let vs = LocalVertex::all(&spec, &dcel)?;
            let mut sums = vec![0i64; vs.len()];
            let mut zero = 0u64;
            for i in 0..samples {
                let s = sample_section(&spec, &dcel, seed.wrapping_add(i))?;
                let mut total = 0i64;
                for (j, v) in vs.iter().enumerate() {
                    let d = v.index(&s)?;
                    sums[j] += d;
                    total += d;
                }
                if total == 0 {
                    zero += 1;
                } else {
                    writeln!(out, "sample {i} (seed {}): index sum {total}", seed.wrapping_add(i)).map_err(io)?;
                }
            }
            writeln!(out, "samples: {samples}").map_err(io)?;
            writeln!(out, "zero index sums: {zero}/{samples}").map_err(io)?;
            if samples > 0 {
                for (j, v) in vs.iter().enumerate() {
                    let mean = Rational::new(sums[j], samples as i64);
                    let exact = expected_index(&v.portrait)?;
                    writeln!(
                        out,
                        "v{} {}: empirical mean {mean}, expected {exact}",
                        v.vertex, v.descriptor
                    )
                    .map_err(io)?;
                }
            }
            Ok(if zero == samples { 0 } else { 1 })
        }
        Command::Uniqueness {
            cutoff,
            families,
            anchors,
        } => {
            let fams: BTreeSet<Family> = parse_list(&families, all_families)?;
            let anchors: BTreeSet<Anchor> = parse_list(&anchors, || Anchor::ALL.into_iter().collect())?;
            let report = solve_uniqueness(cutoff, &fams, &anchors)?;
            writeln!(out, "{report}").map_err(io)?;
            if report.verified() {
                Ok(0)
            } else if !report.mismatches.is_empty() || !report.solution.is_consistent() {
                Ok(1)
            } else if anchors.contains(&Anchor::Anchor1) {
                writeln!(err, "kernel_dim = {} with ANCHOR1", report.kernel_dim()).map_err(io)?;
                Ok(1)
            } else {
                writeln!(err, "warning: kernel_dim = {} without ANCHOR1", report.kernel_dim()).map_err(io)?;
                Ok(0)
            }
        }
        Command::Render {
            input,
            portrait,
            out: path,
        } => {
            let svg = match (input, portrait) {
                (Some(_), Some(_)) => return Err(Error::InvalidParameter("give either a file or --portrait".into())),
                (None, None) => return Err(Error::InvalidParameter("nothing to render".into())),
                (None, Some(name)) => render_portrait(&named_portrait(&name)?)?,
                (Some(file), None) => match load(&file)? {
                    Input::Portrait(p) => render_portrait(&p)?,
                    Input::Arrangement(s) => render_arrangement(&s)?,
                    Input::Summary(_) => return Err(Error::InvalidParameter("summaries have no figure".into())),
                },
            };
            match path {
                Some(p) => fs::write(&p, svg).map_err(io)?,
                None => out.write_all(svg.as_bytes()).map_err(io)?,
            }
            Ok(0)
        }
        Command::Gallery { action } => match action {
            GalleryAction::List => {
                for e in gallery_catalog() {
                    let s = e.summary()?;
                    let vs: Vec<String> = s
                        .vertices
                        .iter()
                        .map(|v| format!("{}x{}", v.count, v.descriptor))
                        .collect();
                    writeln!(out, "{e}: E={} {{{}}}", s.declared_euler, vs.join(", ")).map_err(io)?;
                }
                Ok(0)
            }
            GalleryAction::Check => {
                let mut bad = 0;
                for e in gallery_catalog() {
                    let c = GalleryCheck::run(&e.summary()?)?;
                    if !c.ok() {
                        bad += 1;
                    }
                    writeln!(
                        out,
                        "{:<28} computed {:>6} declared {:>3}  {}",
                        c.name,
                        c.computed.to_string(),
                        c.declared,
                        if c.ok() { "ok" } else { "MISMATCH" }
                    )
                    .map_err(io)?;
                }
                Ok(if bad == 0 { 0 } else { 1 })
            }
            GalleryAction::Show { name } => {
                writeln!(out, "{}", gallery(&name)?.to_json()).map_err(io)?;
                Ok(0)
            }
        },
        Command::Oracle { target } => {
            let p = portrait_target(&target)?;
            let r = oracle_report(&p)?;
            writeln!(out, "descriptor: {}", r.descriptor).map_err(io)?;
            writeln!(out, "sector sizes: {:?}", r.sector_sizes).map_err(io)?;
            writeln!(out, "assignments: {}", r.assignments).map_err(io)?;
            writeln!(out, "configurations: {}", r.configurations).map_err(io)?;
            writeln!(out, "expected index: {}", r.expected).map_err(io)?;
            writeln!(out, "shortcut: {}", r.shortcut).map_err(io)?;
            writeln!(out, "weight: {}", r.weight).map_err(io)?;
            writeln!(out, "agrees: {}", r.agrees()).map_err(io)?;
            Ok(if r.agrees() { 0 } else { 1 })
        }
        Command::Portrait { action } => match action {
            PortraitAction::Show { name } => {
                writeln!(out, "{}", named_portrait(&name)?.to_json()).map_err(io)?;
                Ok(0)
            }
            PortraitAction::Classify { input } => {
                let p = portrait_target(&input.to_string_lossy())?;
                writeln!(out, "{}", classify(&p)?).map_err(io)?;
                Ok(0)
            }
            PortraitAction::Validate { input } => {
                let text = read(&input)?;
                let p: Portrait = serde_json::from_str(&text)?;
                match p.validate() {
                    Ok(()) => {
                        writeln!(out, "valid").map_err(io)?;
                        Ok(0)
                    }
                    Err(vs) => {
                        for v in vs {
                            writeln!(out, "{v}").map_err(io)?;
                        }
                        Ok(1)
                    }
                }
            }
        },
    }
}
