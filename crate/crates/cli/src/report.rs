//! Report types emitted by each subcommand, as JSON or as plain tables.

use std::fmt::Write as _;

use liaison_core::genus::{ClosedForm, GenusParameters};
use liaison_core::linkage::{Example1Report, Example2Report};
use liaison_core::oracle::{Mode, VerificationReport};
use liaison_core::scroll::{ClassGroup, DivisorClass, ResolutionClass, Scroll, VertexDivisor};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn bold(&self, text: &str) -> String {
        if self.color {
            format!("\x1b[1m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn verdict(&self, ok: bool) -> String {
        let (word, code) = if ok { ("PASS", 32) } else { ("FAIL", 31) };
        if self.color {
            format!("\x1b[1;{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

/// Right-aligned columns with a header row.
fn table(header: &[&str], rows: &[Vec<String>], style: Style) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = style.bold(&line(header.iter().map(|h| h.to_string()).collect()));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row.clone()));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClosedFormValue {
    Integer(i64),
    /// Non-integral values as "p/q".
    Fraction(String),
}

impl From<&ClosedForm> for ClosedFormValue {
    fn from(c: &ClosedForm) -> Self {
        if c.is_integral() {
            ClosedFormValue::Integer(c.value.to_integer())
        } else {
            ClosedFormValue::Fraction(format!("{}/{}", c.value.numer(), c.value.denom()))
        }
    }
}

impl std::fmt::Display for ClosedFormValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedFormValue::Integer(v) => write!(f, "{v}"),
            ClosedFormValue::Fraction(v) => f.write_str(v),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaHRow {
    pub r: i64,
    pub delta_h: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CastelnuovoReport {
    pub degree: i64,
    pub ambient: i64,
    pub genus: i64,
    pub printed_genus: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusReport {
    pub parameters: GenusParameters,
    pub delta_h: Vec<DeltaHRow>,
    pub max_genus: i64,
    pub closed_form: ClosedFormValue,
    pub discrepancy: bool,
    /// Castelnuovo bound for degree `s` in `P^(n-1)`.
    pub castelnuovo: CastelnuovoReport,
}

impl GenusReport {
    pub fn render(&self, style: Style) -> String {
        let p = &self.parameters;
        let mut out = String::new();
        let _ = writeln!(out, "{}", style.bold(&format!("(d, n, s) = ({}, {}, {})", p.d, p.n, p.s)));
        let _ = writeln!(
            out,
            "m = {}  epsilon = {}  w = {}  v = {}  branch = {}  k = {}  delta = {}  e = {}",
            p.m, p.epsilon, p.w, p.v, p.branch, p.k, p.delta, p.e
        );
        out.push('\n');
        let rows: Vec<Vec<String>> =
            self.delta_h.iter().map(|row| vec![row.r.to_string(), row.delta_h.to_string()]).collect();
        out.push_str(&table(&["r", "delta_h"], &rows, style));
        out.push('\n');
        let c = &self.castelnuovo;
        let flag = if self.discrepancy { "  (differs from max_genus)" } else { "" };
        let _ = writeln!(out, "max_genus        {}", self.max_genus);
        let _ = writeln!(out, "closed_form      {}{flag}", self.closed_form);
        let _ = writeln!(out, "castelnuovo      {} for degree {} in P^{} (printed variant {})", c.genus, c.degree, c.ambient, c.printed_genus);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: i64,
    pub s: i64,
    /// Decimal string; the value can exceed 64 bits.
    pub min_admissible_degree: String,
}

impl BoundReport {
    pub fn render(&self) -> String {
        format!("{}\n", self.min_admissible_degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verb", rename_all = "kebab-case")]
pub enum ScrollResult {
    ClassGroup { class_group: ClassGroup },
    Canonical { canonical: DivisorClass, characteristic: i64 },
    Intersect { classes: Vec<ResolutionClass>, value: i64 },
    TotalTransform { d: i64, transform: ResolutionClass },
    ProperTransform { c: i64, a: i64, transform: ResolutionClass },
    VertexMult { first: VertexDivisor, second: VertexDivisor, multiplicity: i64 },
    Ci { a: i64, b: i64, degree: i64, genus: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScrollReport {
    pub scroll: Scroll,
    #[serde(flatten)]
    pub result: ScrollResult,
}

fn vertex_divisor(d: &VertexDivisor) -> String {
    match d {
        VertexDivisor::Hyper { c, a } => format!("{c}H with multiplicity {a}"),
        VertexDivisor::Ruling => "ruling plane R".to_string(),
    }
}

impl ScrollReport {
    pub fn render(&self, style: Style) -> String {
        let mut out = format!("{}\n", style.bold(&self.scroll.to_string()));
        let body = match &self.result {
            ScrollResult::ClassGroup { class_group } => match class_group {
                ClassGroup::Free => "class group Z[H] + Z[R]".to_string(),
                ClassGroup::Cyclic { f } => format!("class group Z[R], H = {f}R"),
            },
            ScrollResult::Canonical { canonical, characteristic } => {
                format!("K = {canonical}\ncharacteristic {characteristic}")
            }
            ScrollResult::Intersect { classes, value } => {
                let names: Vec<String> = classes.iter().map(|c| format!("({c})")).collect();
                format!("{} = {value}", names.join(" . "))
            }
            ScrollResult::TotalTransform { d, transform } => format!("total transform of {d}R = {transform}"),
            ScrollResult::ProperTransform { c, a, transform } => {
                format!("proper transform of {c}H with multiplicity {a} = {transform}")
            }
            ScrollResult::VertexMult { first, second, multiplicity } => format!(
                "{} and {}: multiplicity {multiplicity} along the vertex line",
                vertex_divisor(first),
                vertex_divisor(second)
            ),
            ScrollResult::Ci { a, b, degree, genus } => {
                format!("complete intersection ({a}, {b}): degree {degree}, arithmetic genus {genus}")
            }
        };
        out.push_str(&body);
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub example1: Example1Report,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example2: Option<Example2Report>,
    /// Why the explicit construction was not produced, when `v` is in range for it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example2_note: Option<String>,
}

impl ClassifyReport {
    pub fn render(&self, style: Style) -> String {
        let e1 = &self.example1;
        let p = &e1.params;
        let mut out = String::new();
        let _ = writeln!(out, "{}", style.bold(&format!("(d, n, s) = ({}, {}, {})", p.d, p.n, p.s)));
        let _ = writeln!(out, "max_genus {}", e1.max_genus);
        match (&e1.chain, &e1.reason) {
            (Some(c), _) => {
                let _ = writeln!(out, "{}", style.bold("residual chain"));
                let _ = writeln!(out, "  surface class        {}", c.surface_class);
                let _ = writeln!(out, "  link type            {:?}", c.link_degrees);
                let _ = writeln!(out, "  p_a(Y)               {}", c.p_y);
                let _ = writeln!(out, "  C'                   degree {}, genus {}", c.deg_c_prime, c.p_c_prime);
                let _ = writeln!(
                    out,
                    "  C''                  degree {}, genus {}, deg R|C'' = {}",
                    c.deg_c_double_prime, c.p_c_double_prime, c.deg_r_c_double_prime
                );
                let _ = writeln!(out, "  residual sections    {}", c.residual_sections);
                let _ = writeln!(out, "  genus through link   {}  {}", c.genus_cross_check, style.verdict(c.agrees));
            }
            (None, Some(reason)) => {
                let _ = writeln!(out, "residual chain not applicable: {reason}");
            }
            (None, None) => {}
        }
        if let Some(e2) = &self.example2 {
            let _ = writeln!(out, "{}", style.bold(&format!("explicit construction ({:?})", e2.variant)));
            let _ = writeln!(out, "  surface class        {}", e2.surface_class);
            let _ = writeln!(out, "  D, C'                degree {}, {}", e2.deg_d, e2.deg_c_prime);
            let _ = writeln!(out, "  linked curve         degree {}, genus {}", e2.linked_degree, e2.linked_genus);
            let _ = writeln!(out, "  genus through link   {}  {}", e2.genus_cross_check, style.verdict(e2.agrees));
        }
        if let Some(note) = &self.example2_note {
            let _ = writeln!(out, "explicit construction unavailable: {note}");
        }
        out
    }
}

pub fn render_verification(r: &VerificationReport, style: Style) -> String {
    let mut out = String::new();
    let mode = match r.mode {
        Mode::PointSplit => "POINT_SPLIT",
        Mode::IdealColon => "IDEAL_COLON",
    };
    let seed = r.seed.map_or("-".to_string(), |s| s.to_string());
    let _ = writeln!(
        out,
        "{}",
        style.bold(&format!("{} ({}, {}), seed {seed}, {mode}", r.surface, r.degrees[0], r.degrees[1]))
    );
    let z2 = r.split.z2.map_or("-".to_string(), |z| z.to_string());
    let _ = writeln!(out, "|Z1| = {}  |Z2| = {z2}  c = {}  ch_W = {}", r.split.z1, r.c, r.ch_w);
    let _ = writeln!(out, "{}", r.twist);
    out.push('\n');
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|row| {
            vec![
                row.i.to_string(),
                row.lhs.to_string(),
                row.rhs.to_string(),
                if row.equal { "=" } else { "!=" }.to_string(),
            ]
        })
        .collect();
    out.push_str(&table(&["i", "lhs", "rhs", "eq"], &rows, style));
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(out, "time {ms} ms");
    }
    let _ = writeln!(out, "{}", style.verdict(r.pass));
    out
}
