//! Command-line front end for `liaison-core`.
//!
//! [`run`] takes an argument vector and two writers and returns the process
//! exit code, so the binary is a thin wrapper and tests drive it in-process.
//!
//! Exit codes: 0 on success, 1 on usage, domain or I/O errors, 2 when a
//! `verify` run finds an unequal row.

mod args;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::error::ErrorKind;
use clap::Parser;
use liaison_core::genus::{
    castelnuovo_genus, closed_form_genus, compute_parameters, delta_h_table, max_genus, min_admissible_degree,
    printed_castelnuovo_genus,
};
use liaison_core::linkage::{classify_example1, example2_construction};
use liaison_core::oracle::{build_random_ci_through_points, build_seeded, verify_duality, PointSet};
use liaison_core::scroll::{
    canonical_characteristic, canonical_class, ci_curve_invariants, class_group, integral_total_transform,
    intersection_number, make_scroll, proper_transform_line_vertex, vertex_multiplicity, ResolutionClass, Scroll,
    VertexDivisor,
};
use serde::Serialize;

pub use args::{BoundArgs, Cli, Command, GenusArgs, ScrollArgs, ScrollVerb, TripleArgs, VerifyArgs};
use report::{
    render_verification, BoundReport, CastelnuovoReport, ClassifyReport, DeltaHRow, GenusReport, ScrollReport,
    ScrollResult, Style,
};

/// Seed used by `verify` when `--seed` is not given.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_FAILED: i32 = 2;

enum Outcome {
    Ok,
    Failed,
}

/// Runs with ANSI styling disabled.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_styled(argv, out, err, false)
}

/// Runs, styling table output when `color` is set and `--plain` is not.
pub fn run_styled<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_ERROR
                }
            };
        }
    };
    let style = Style { color: color && !cli.plain && cli.output.is_none() && !cli.json };
    match execute(&cli, style, out, err) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::Failed) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_ERROR
        }
    }
}

fn execute(cli: &Cli, style: Style, out: &mut dyn Write, err: &mut dyn Write) -> anyhow::Result<Outcome> {
    let (text, outcome) = match &cli.command {
        Command::Genus(a) => {
            let r = genus_report(a)?;
            if let Some(path) = &a.csv {
                write_csv(path, &r.delta_h)?;
            }
            (emit(cli, &r, |s| r.render(s), style)?, Outcome::Ok)
        }
        Command::Bound(a) => {
            let r = BoundReport { n: a.n, s: a.s, min_admissible_degree: min_admissible_degree(a.n, a.s)?.to_string() };
            (emit(cli, &r, |_| r.render(), style)?, Outcome::Ok)
        }
        Command::Scroll(a) => {
            let r = scroll_report(a)?;
            (emit(cli, &r, |s| r.render(s), style)?, Outcome::Ok)
        }
        Command::Classify(a) => {
            let r = classify_report(a)?;
            (emit(cli, &r, |s| r.render(s), style)?, Outcome::Ok)
        }
        Command::Verify(a) => {
            let r = verify(a, cli.verbose, err)?;
            let outcome = if r.pass { Outcome::Ok } else { Outcome::Failed };
            (emit(cli, &r, |s| render_verification(&r, s), style)?, outcome)
        }
    };
    match &cli.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes()).context("writing output")?,
    }
    Ok(outcome)
}

fn emit<T: Serialize>(cli: &Cli, value: &T, table: impl FnOnce(Style) -> String, style: Style) -> anyhow::Result<String> {
    if cli.json {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        Ok(text)
    } else {
        Ok(table(style))
    }
}

fn genus_report(a: &GenusArgs) -> anyhow::Result<GenusReport> {
    let TripleArgs { d, n, s } = a.triple;
    let params = compute_parameters(d, n, s)?;
    let table = delta_h_table(&params)?;
    let closed = closed_form_genus(&params)?;
    Ok(GenusReport {
        parameters: params,
        delta_h: table.rows().map(|(r, delta_h)| DeltaHRow { r, delta_h }).collect(),
        max_genus: max_genus(&params)?,
        closed_form: (&closed).into(),
        discrepancy: closed.discrepancy,
        castelnuovo: CastelnuovoReport {
            degree: s,
            ambient: n - 1,
            genus: castelnuovo_genus(s, n - 1)?,
            printed_genus: printed_castelnuovo_genus(s, n - 1)?,
        },
    })
}

fn write_csv(path: &Path, rows: &[DeltaHRow]) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn int_list(text: &str, want: usize, what: &str) -> anyhow::Result<Vec<i64>> {
    let values = text
        .split(',')
        .map(|t| t.trim().parse::<i64>().with_context(|| format!("{what}: not an integer: {t:?}")))
        .collect::<anyhow::Result<Vec<_>>>()?;
    if values.len() != want {
        bail!("{what}: expected {want} comma-separated integers, got {}", values.len());
    }
    Ok(values)
}

fn vertex_divisors(text: &str) -> anyhow::Result<(VertexDivisor, VertexDivisor)> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    let mut divisors = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i].eq_ignore_ascii_case("r") {
            divisors.push(VertexDivisor::Ruling);
            i += 1;
        } else {
            let pair = tokens.get(i..i + 2).context("vertex-mult: each divisor is \"c,a\" or \"R\"")?;
            let c = pair[0].parse().with_context(|| format!("vertex-mult: not an integer: {:?}", pair[0]))?;
            let a = pair[1].parse().with_context(|| format!("vertex-mult: not an integer: {:?}", pair[1]))?;
            divisors.push(VertexDivisor::Hyper { c, a });
            i += 2;
        }
    }
    match divisors[..] {
        [first, second] => Ok((first, second)),
        _ => bail!("vertex-mult: expected two divisors, got {}", divisors.len()),
    }
}

fn resolution_classes(text: &str) -> anyhow::Result<Vec<ResolutionClass>> {
    text.split(';')
        .map(|pair| {
            let v = int_list(pair, 2, "intersect")?;
            Ok(ResolutionClass::new(v[0], v[1]))
        })
        .collect()
}

fn scroll_report(a: &ScrollArgs) -> anyhow::Result<ScrollReport> {
    let scroll: Scroll = make_scroll(a.n, &a.kind)?;
    let result = match &a.verb {
        ScrollVerb::ClassGroup => ScrollResult::ClassGroup { class_group: class_group(&scroll) },
        ScrollVerb::Canonical => ScrollResult::Canonical {
            canonical: canonical_class(&scroll),
            characteristic: canonical_characteristic(&scroll),
        },
        ScrollVerb::Intersect { classes } => {
            let classes = resolution_classes(classes)?;
            let value = intersection_number(&scroll, &classes)?;
            ScrollResult::Intersect { classes, value }
        }
        ScrollVerb::TotalTransform { d } => {
            ScrollResult::TotalTransform { d: *d, transform: integral_total_transform(&scroll, *d)? }
        }
        ScrollVerb::ProperTransform { divisor } => {
            let v = int_list(divisor, 2, "proper-transform")?;
            ScrollResult::ProperTransform { c: v[0], a: v[1], transform: proper_transform_line_vertex(&scroll, v[0], v[1])? }
        }
        ScrollVerb::VertexMult { divisors } => {
            let (first, second) = vertex_divisors(divisors)?;
            ScrollResult::VertexMult { first, second, multiplicity: vertex_multiplicity(&scroll, first, second)? }
        }
        ScrollVerb::Ci { degrees } => {
            let v = int_list(degrees, 2, "ci")?;
            let ci = ci_curve_invariants(&scroll, v[0], v[1])?;
            ScrollResult::Ci { a: v[0], b: v[1], degree: ci.degree, genus: ci.genus }
        }
    };
    Ok(ScrollReport { scroll, result })
}

fn classify_report(a: &TripleArgs) -> anyhow::Result<ClassifyReport> {
    let example1 = classify_example1(a.d, a.n, a.s)?;
    let v = example1.params.v;
    let (example2, example2_note) = if v == a.n - 3 || v == a.n - 4 {
        match example2_construction(a.d, a.n, a.s, None) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (None, None)
    };
    Ok(ClassifyReport { example1, example2, example2_note })
}

fn verify(
    a: &VerifyArgs,
    verbose: u8,
    err: &mut dyn Write,
) -> anyhow::Result<liaison_core::oracle::VerificationReport> {
    let start = Instant::now();
    let instance = match &a.z1 {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let z1 = PointSet::parse(a.surface.ambient_dim(), &text)
                .with_context(|| format!("parsing points in {}", path.display()))?;
            build_random_ci_through_points(a.surface, a.a1, a.a2, &z1, a.seed)?
        }
        None => {
            let size = a.split.unwrap_or(((a.a1 * a.a2).max(0) * a.surface.degree() / 2) as usize);
            build_seeded(a.surface, a.a1, a.a2, size, a.seed)?
        }
    };
    if verbose > 0 {
        let _ = writeln!(
            err,
            "built {} instance of type ({}, {}) with |Z1| = {}",
            a.surface,
            a.a1,
            a.a2,
            instance.z1.len()
        );
    }
    if verbose > 1 {
        for (j, form) in instance.forms.iter().enumerate() {
            let _ = writeln!(err, "F{} = {form}", j + 1);
        }
        for p in instance.z1.points() {
            let _ = writeln!(err, "Z1 point {p}");
        }
    }
    let imax = a.imax.unwrap_or(a.a1.min(a.a2) - 1);
    if imax < a.imin {
        bail!("empty range of twists: imin = {} > imax = {imax}", a.imin);
    }
    let is: Vec<i64> = (a.imin..=imax).collect();
    let mut report = verify_duality(&instance, &is)?;
    if a.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}
