use std::collections::BTreeMap;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num::{BigInt, BigRational, Signed, ToPrimitive};
use serde_json::{json, Value};

use contact_surgery::braid::{example_braid, BraidError, BraidWord, Letter};
use contact_surgery::cfrac::{self, format_rational, neg_cfrac, CfracError, SlopeVector};
use contact_surgery::legendrian::{
    self, c1_pairing, contactomorphism_lower_bound, enumerate_weinstein, link_front_stats, LegendrianError,
};
use contact_surgery::limits::{self, CoeffStream, LimitsError, SignTuple};
use contact_surgery::surgery::{self, ExpansionForm, SurgeryDiagram, SurgeryError};

#[derive(Parser)]
#[command(name = "contact-surgery", version, about = "Tight contact structures on surgeries along braid closures")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Crossing statistics, hypothesis conditions and Dehornoy-floor probes of a braid.
    Analyze {
        braid: String,
        /// Record hyperbolicity of the closure as given.
        #[arg(long)]
        assert_hyperbolic: bool,
    },
    /// Negative continued fraction of a rational below -1.
    Cfrac {
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// Rational surgery diagram, its integral expansion and homology.
    Surgery {
        braid: String,
        #[arg(long, allow_hyphen_values = true)]
        slopes: String,
        /// Expand every slope through the continued-fraction chain.
        #[arg(long)]
        chain: bool,
    },
    /// Weinstein-Kirby diagrams for a slope vector, one JSON line each.
    Enumerate {
        braid: String,
        #[arg(long, allow_hyphen_values = true)]
        slopes: String,
        #[arg(long)]
        count_only: bool,
        /// Order of the isometry group of the complement.
        #[arg(long)]
        isom_order: Option<i64>,
    },
    /// θ-invariant of one diagram, or of every diagram grouped by value.
    Theta {
        braid: String,
        #[arg(long, alias = "slope", allow_hyphen_values = true)]
        slopes: String,
        /// 1-based menu indices, one per unknot.
        #[arg(long, num_args = 1.., allow_hyphen_values = true)]
        tuple: Option<Vec<i64>>,
        /// Refuse to list more diagrams than this.
        #[arg(long, default_value_t = 100_000)]
        max_diagrams: u64,
    },
    /// Sign, blocks and end slopes of a tuple over an eventually periodic stream.
    Limits {
        /// Coefficient stream, e.g. "-3,-2(-4,-2)".
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        /// Tuple as JSON: {"prefix": [..], "tail": "ones" | "max" | {"periodic": [..]}}.
        #[arg(long)]
        tuple: String,
        #[arg(long, default_value_t = 5)]
        levels: usize,
        /// Check every truncation against this braid.
        #[arg(long)]
        braid: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "other_tuple")]
        other_coeffs: Option<String>,
        #[arg(long, requires = "other_coeffs")]
        other_tuple: Option<String>,
    },
    /// Braid families and the L-space surgery diagrams.
    Family {
        #[command(subcommand)]
        kind: Family,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Δ^{2l} β.
    Delta2l {
        braid: String,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// β^k.
    Power {
        braid: String,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// s1^{2k+1} s2^-1 in B3.
    Example420 {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// V(l) ∪ U(0) ∪ β̂(k) with U the braid axis; β defaults to s1 s2 … s_{m-1}.
    Lspace {
        #[arg(long, conflicts_with = "m", required_unless_present = "m")]
        braid: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
}

/// Failure categories; the discriminant is the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Category {
    Input = 2,
    Hypothesis = 3,
    Numeric = 4,
}

#[derive(Debug)]
struct Failure {
    category: Category,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn new(category: Category, kind: &'static str, message: impl ToString) -> Self {
        Failure { category, kind, message: message.to_string() }
    }

    fn input(message: impl ToString) -> Self {
        Failure::new(Category::Input, "invalid_input", message)
    }
}

impl From<BraidError> for Failure {
    fn from(e: BraidError) -> Self {
        match e {
            BraidError::Parse(_) => Failure::new(Category::Input, "parse", e),
            BraidError::BudgetExceeded { .. } => Failure::new(Category::Numeric, "budget_exceeded", e),
            _ => Failure::input(e),
        }
    }
}

impl From<CfracError> for Failure {
    fn from(e: CfracError) -> Self {
        match e {
            CfracError::BadRational(_) | CfracError::BadCoefficients(_) => Failure::new(Category::Input, "parse", e),
            _ => Failure::input(e),
        }
    }
}

impl From<SurgeryError> for Failure {
    fn from(e: SurgeryError) -> Self {
        match e {
            SurgeryError::NotAKnot => Failure::new(Category::Hypothesis, "hypothesis", e),
            SurgeryError::Singular => Failure::new(Category::Numeric, "singular", e),
            SurgeryError::Braid(b) => b.into(),
            SurgeryError::Cfrac(c) => c.into(),
            _ => Failure::input(e),
        }
    }
}

impl From<LegendrianError> for Failure {
    fn from(e: LegendrianError) -> Self {
        match e {
            LegendrianError::NotAKnot(_)
            | LegendrianError::HypothesisViolation { .. }
            | LegendrianError::Infeasible { .. }
            | LegendrianError::FramingTooLarge(_) => Failure::new(Category::Hypothesis, "hypothesis", e),
            LegendrianError::Singular => Failure::new(Category::Numeric, "singular", e),
            LegendrianError::Surgery(s) => s.into(),
            LegendrianError::Cfrac(c) => c.into(),
            _ => Failure::input(e),
        }
    }
}

impl From<LimitsError> for Failure {
    fn from(e: LimitsError) -> Self {
        match e {
            LimitsError::Parse(_) => Failure::new(Category::Input, "parse", e),
            LimitsError::Legendrian(l) => l.into(),
            LimitsError::Cfrac(c) => c.into(),
            _ => Failure::input(e),
        }
    }
}

type Out<'a> = &'a mut dyn Write;

struct Ctx {
    format: Format,
    echo: Value,
}

impl Ctx {
    fn document(&self, mut body: Value) -> Value {
        body["schema"] = json!(1);
        body["inputs_echo"] = self.echo.clone();
        body
    }

    fn emit(&self, out: Out, body: Value) -> io::Result<()> {
        let doc = self.document(body);
        match self.format {
            Format::Json => writeln!(out, "{doc}"),
            Format::Table => write_table(out, &doc),
        }
    }

    /// One line per record; used for streamed output.
    fn emit_line(&self, out: Out, record: &Value) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(out, "{record}"),
            Format::Table => write_table(out, record),
        }
    }
}

fn write_table(out: Out, v: &Value) -> io::Result<()> {
    let Value::Object(map) = v else {
        return writeln!(out, "{v}");
    };
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (k, v) in map {
        match v {
            Value::String(s) => writeln!(out, "{k:width$}  {s}")?,
            _ => writeln!(out, "{k:width$}  {v}")?,
        }
    }
    writeln!(out)
}

fn parse_braid(s: &str) -> Result<BraidWord, Failure> {
    s.parse::<BraidWord>().map_err(Failure::from)
}

fn parse_slopes(s: &str) -> Result<SlopeVector, Failure> {
    let v: SlopeVector = s.parse()?;
    if let Some(r) = v.slopes.iter().find(|r| !r.is_positive()) {
        return Err(Failure::input(format!(
            "slope {} is not positive; the integral expansion needs every slope > 0",
            format_rational(r)
        )));
    }
    Ok(v)
}

fn parse_tuple(s: &str) -> Result<SignTuple, Failure> {
    serde_json::from_str(s).map_err(|e| Failure::new(Category::Input, "parse", format!("bad tuple {s:?}: {e}")))
}

fn big_json(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn analyze(ctx: &Ctx, out: Out, braid: &str, hyperbolic: bool) -> Result<(), Failure> {
    let beta = parse_braid(braid)?;
    let probes: BTreeMap<String, Value> = (1..=3)
        .map(|d| {
            let v = match beta.dehornoy_floor_at_least(d) {
                Ok(b) => json!(b),
                Err(BraidError::BudgetExceeded { .. }) => json!("budget_exceeded"),
                Err(e) => json!(e.to_string()),
            };
            (d.to_string(), v)
        })
        .collect();
    let fronts: Vec<Value> = link_front_stats(&beta)
        .iter()
        .map(|c| json!({"tb": c.tb, "rot": c.rot, "cusps": c.cusps}))
        .collect();
    let body = json!({
        "braid": beta.to_string(),
        "strands": beta.strands(),
        "length": beta.len(),
        "exponent_sum": beta.exponent_sum(),
        "components": beta.permutation(),
        "crossing_stats": beta.crossing_stats(),
        "hypothesis": beta.check_hypothesis(hyperbolic),
        "fronts": fronts,
        "dehornoy_floor_at_least": probes,
    });
    ctx.emit(out, body).map_err(io_failure)
}

fn cfrac_cmd(ctx: &Ctx, out: Out, value: &str) -> Result<(), Failure> {
    let r = cfrac::parse_rational(value)?;
    let f = neg_cfrac(&r)?;
    let n = f.len() - 1;
    let conv = cfrac::convergents(f.coeffs().iter().cloned(), n)?;
    let body = json!({
        "value": format_rational(f.value()),
        "coeffs": f.coeffs().iter().map(big_json).collect::<Vec<_>>(),
        "phi": big_json(&f.phi()),
        "convergents": conv.iter().map(format_rational).collect::<Vec<_>>(),
    });
    ctx.emit(out, body).map_err(io_failure)
}

fn surgery_cmd(ctx: &Ctx, out: Out, braid: &str, slopes: &str, chain: bool) -> Result<(), Failure> {
    let beta = parse_braid(braid)?;
    let v = parse_slopes(slopes)?;
    let d = SurgeryDiagram::rational_surgery(&beta, &v)?;
    let form = if chain { ExpansionForm::Chain } else { ExpansionForm::SingleMeridian };
    let e = d.slam_dunk_expand_with(form)?;
    let h1 = d.h1();
    let body = json!({
        "rational": d.to_json(),
        "h1_order": big_json(&h1.order),
        "expanded": e.to_json(),
        "homology": e.homology()?.to_json(),
    });
    ctx.emit(out, body).map_err(io_failure)
}

fn enumerate_cmd(ctx: &Ctx, out: Out, braid: &str, slopes: &str, count_only: bool, isom: Option<i64>) -> Result<(), Failure> {
    let beta = parse_braid(braid)?;
    let v = parse_slopes(slopes)?;
    let e = enumerate_weinstein(&beta, &v)?;
    let mut header = json!({
        "count": big_json(e.count()),
        "menu_sizes": e.menu_sizes(),
        "hypothesis": beta.check_hypothesis(false),
    });
    if let Some(c) = isom {
        header["contactomorphism_lower_bound"] = big_json(&contactomorphism_lower_bound(e.count(), c)?);
    }
    ctx.emit(out, header).map_err(io_failure)?;
    if !count_only {
        for (i, w) in e.iter().enumerate() {
            let mut rec = w.to_json();
            rec["index"] = json!(i);
            ctx.emit_line(out, &rec).map_err(io_failure)?;
        }
    }
    Ok(())
}

fn theta_cmd(ctx: &Ctx, out: Out, braid: &str, slopes: &str, tuple: Option<&[i64]>, max: u64) -> Result<(), Failure> {
    let beta = parse_braid(braid)?;
    let v = parse_slopes(slopes)?;
    let e = enumerate_weinstein(&beta, &v)?;
    let report = |w: &legendrian::WeinsteinDiagram, k: &[i64]| -> Result<Value, Failure> {
        let mut t = legendrian::theta(w)?.to_json();
        t["tuple"] = json!(k);
        t["c1"] = json!(c1_pairing(w));
        Ok(t)
    };
    if let Some(k) = tuple {
        let w = e.with_tuple(k)?;
        return ctx.emit(out, report(&w, k)?).map_err(io_failure);
    }
    if e.count() > &BigInt::from(max) {
        return Err(Failure::input(format!("{} diagrams exceed --max-diagrams {max}", e.count())));
    }
    let mut reports = Vec::new();
    let mut groups: BTreeMap<BigRational, Vec<Value>> = BTreeMap::new();
    for w in e.iter() {
        // rot = 2k + f on an f-framed unknot
        let framings = e.base().components();
        let k: Vec<i64> = w
            .legendrian
            .iter()
            .zip(framings)
            .filter(|(_, c)| c.kind.is_unknot())
            .map(|(l, c)| (l.rot - c.framing.as_integer().and_then(|f| f.to_i64()).unwrap_or(0)) / 2)
            .collect();
        let t = legendrian::theta(&w)?;
        groups.entry(t.theta.clone()).or_default().push(json!(k));
        reports.push(report(&w, &k)?);
    }
    let groups: Vec<Value> = groups
        .into_iter()
        .map(|(theta, tuples)| json!({"theta": format_rational(&theta), "tuples": tuples}))
        .collect();
    let body = json!({"count": big_json(e.count()), "reports": reports, "groups": groups});
    ctx.emit(out, body).map_err(io_failure)
}

#[allow(clippy::too_many_arguments)]
fn limits_cmd(
    ctx: &Ctx,
    out: Out,
    coeffs: &str,
    tuple: &str,
    levels: usize,
    braid: Option<&str>,
    other: Option<(&str, &str)>,
) -> Result<(), Failure> {
    let s: CoeffStream = coeffs.parse()?;
    let k = parse_tuple(tuple)?;
    k.validate(&s)?;
    let blocks = limits::block_decomposition(&s, &k, levels)?;
    let slopes: Vec<Value> = (0..=levels)
        .map(|n| limits::end_slope(&s, n).map(|r| limits::slope_json(&r)))
        .collect::<Result<_, _>>()?;
    let sign = if s.is_irrational() { json!(limits::sign_of(&s, &k)?.to_string()) } else { Value::Null };
    let mut body = json!({
        "coeffs": s.to_string(),
        "canonical_coeffs": s.canonical().to_string(),
        "tuple": k.to_json(),
        "truncated_tuple": k.truncate(&s, levels),
        "blocks": limits::blocks_json(&blocks),
        "end_slopes": slopes,
        "sign": sign,
    });
    if let Some(b) = braid {
        let beta = parse_braid(b)?;
        let checks: Vec<bool> = (0..=levels)
            .map(|n| limits::truncation_consistency(&beta, &s, &k, n))
            .collect::<Result<_, _>>()?;
        body["truncation_consistency"] = json!(checks);
    }
    if let Some((c2, t2)) = other {
        let s2: CoeffStream = c2.parse()?;
        let k2 = parse_tuple(t2)?;
        body["properly_isotopic"] = json!(limits::properly_isotopic(&s, &k, &s2, &k2)?);
    }
    ctx.emit(out, body).map_err(io_failure)
}

fn family_cmd(ctx: &Ctx, out: Out, kind: &Family) -> Result<(), Failure> {
    let braid_body = |b: &BraidWord| json!({"braid": b.to_string(), "length": b.len(), "strands": b.strands()});
    let body = match kind {
        Family::Delta2l { braid, l } => braid_body(&parse_braid(braid)?.delta_squared_times(*l)),
        Family::Power { braid, k } => braid_body(&parse_braid(braid)?.power(*k)),
        Family::Example420 { k } => braid_body(&example_braid(*k)?),
        Family::Lspace { braid, m, k, l } => {
            let beta = match (braid, m) {
                (Some(b), _) => parse_braid(b)?,
                (None, Some(m)) => BraidWord::new(*m, (1..*m).map(Letter::pos).collect())?,
                (None, None) => return Err(Failure::input("need --braid or --m")),
            };
            let f = surgery::lspace_family_diagram(&beta, *k, *l)?;
            json!({
                "braid": beta.to_string(),
                "diagram": f.diagram.to_json(),
                "homology": f.homology.to_json(),
                "h1_orders": f.orders.iter().map(big_json).collect::<Vec<_>>(),
                "additivity_check": f.additivity_check,
            })
        }
    };
    ctx.emit(out, body).map_err(io_failure)
}

fn io_failure(e: io::Error) -> Failure {
    Failure::new(Category::Numeric, "io", e)
}

fn echo(cli: &Cli) -> Value {
    let format = match cli.format {
        Format::Json => "json",
        Format::Table => "table",
    };
    let mut v = match &cli.command {
        Command::Analyze { braid, assert_hyperbolic } => {
            json!({"subcommand": "analyze", "braid": braid, "assert_hyperbolic": assert_hyperbolic})
        }
        Command::Cfrac { value } => json!({"subcommand": "cfrac", "value": value}),
        Command::Surgery { braid, slopes, chain } => {
            json!({"subcommand": "surgery", "braid": braid, "slopes": slopes, "chain": chain})
        }
        Command::Enumerate { braid, slopes, count_only, isom_order } => json!({
            "subcommand": "enumerate", "braid": braid, "slopes": slopes,
            "count_only": count_only, "isom_order": isom_order,
        }),
        Command::Theta { braid, slopes, tuple, max_diagrams } => json!({
            "subcommand": "theta", "braid": braid, "slopes": slopes, "tuple": tuple, "max_diagrams": max_diagrams,
        }),
        Command::Limits { coeffs, tuple, levels, braid, other_coeffs, other_tuple } => json!({
            "subcommand": "limits", "coeffs": coeffs, "tuple": tuple, "levels": levels, "braid": braid,
            "other_coeffs": other_coeffs, "other_tuple": other_tuple,
        }),
        Command::Family { kind } => match kind {
            Family::Delta2l { braid, l } => json!({"subcommand": "family", "kind": "delta2l", "braid": braid, "l": l}),
            Family::Power { braid, k } => json!({"subcommand": "family", "kind": "power", "braid": braid, "k": k}),
            Family::Example420 { k } => json!({"subcommand": "family", "kind": "example420", "k": k}),
            Family::Lspace { braid, m, k, l } => {
                json!({"subcommand": "family", "kind": "lspace", "braid": braid, "m": m, "k": k, "l": l})
            }
        },
    };
    v["format"] = json!(format);
    v
}

fn run(cli: &Cli, ctx: &Ctx, out: Out) -> Result<(), Failure> {
    match &cli.command {
        Command::Analyze { braid, assert_hyperbolic } => analyze(ctx, out, braid, *assert_hyperbolic),
        Command::Cfrac { value } => cfrac_cmd(ctx, out, value),
        Command::Surgery { braid, slopes, chain } => surgery_cmd(ctx, out, braid, slopes, *chain),
        Command::Enumerate { braid, slopes, count_only, isom_order } => {
            enumerate_cmd(ctx, out, braid, slopes, *count_only, *isom_order)
        }
        Command::Theta { braid, slopes, tuple, max_diagrams } => {
            theta_cmd(ctx, out, braid, slopes, tuple.as_deref(), *max_diagrams)
        }
        Command::Limits { coeffs, tuple, levels, braid, other_coeffs, other_tuple } => {
            let other = other_coeffs.as_deref().zip(other_tuple.as_deref());
            limits_cmd(ctx, out, coeffs, tuple, *levels, braid.as_deref(), other)
        }
        Command::Family { kind } => family_cmd(ctx, out, kind),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { format: cli.format, echo: echo(&cli) };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &ctx, &mut out);
    let code = match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            let err = json!({"error": {"kind": f.kind, "message": f.message}});
            let _ = ctx.emit(&mut out, err);
            ExitCode::from(f.category as u8)
        }
    };
    let _ = out.flush();
    code
}
