//! `descent` — command-line front end for the coboundary tables.
//!
//! Subcommands mirror the library surface: `table` prints one family's
//! curve and table, `verify` recomputes every requested table and compares
//! it against the embedded reference data, `specialize` evaluates a family
//! at a rational parameter value, `choose-lambda` runs the constructive
//! parameter search, `hilbert` computes quaternion ramification over Q,
//! and `dump-fixtures` emits the raw reference data for audit.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a table that disagrees
//! with the reference data, 2 for usage and precondition errors.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use descent_core::curves::RawCurve;
use descent_core::exact::{Coeff, FieldKind};
use descent_core::families::{FamilyRegistry, FamilySpec};
use descent_core::fixtures::{CharRule, FIXTURES};
use descent_core::global_fields::{
    choose_lambda, format_rational, hilbert_symbol, quaternion_is_split, specialize, Place,
    PlaceCondition, DEFAULT_CANDIDATE_BUDGET,
};
use descent_core::grammar::{emit_ratfunc, parse_ratfunc};
use descent_core::kummer::{ClassField, PowerClass};
use descent_core::miller::{self, DescentTable};
use descent_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "descent",
    version,
    about = "Coboundary tables for one-parameter torsion families of elliptic curves"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Coefficient characteristic: 0 for Q, a prime p for F_p.  Only
    /// `table` and `verify` accept a nonzero value; the other commands
    /// work over Q.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the curve, marked point, and coboundary table of one family.
    Table {
        /// Torsion order of the family.
        n: u32,
    },

    /// Recompute coboundary tables and compare them with the reference data.
    Verify {
        /// Orders to check (each runs on its own thread).
        ns: Vec<u32>,

        /// Check every registered order.
        #[arg(long, conflicts_with = "ns")]
        all: bool,

        /// Corrupt one reference entry per table before comparing, to
        /// exercise the mismatch path.
        #[arg(long, hide = true)]
        inject_mismatch: bool,
    },

    /// Evaluate a family at a rational parameter value over Q.
    Specialize {
        /// Torsion order of the family.
        n: u32,

        /// Parameter value, an integer or fraction like 3/4.
        #[arg(allow_hyphen_values = true)]
        lambda: String,
    },

    /// Search for a parameter value meeting local conditions at given places.
    ChooseLambda {
        /// Torsion order of the family (6, 7, 8, 9, 10, or 12).
        n: u32,

        /// Finite places (primes), repeated or comma separated.
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,

        /// Also require delta(P)(lambda) < 0 at the real place (even N only).
        #[arg(long)]
        real: bool,

        /// Candidates to try before giving up.
        #[arg(long, default_value_t = DEFAULT_CANDIDATE_BUDGET)]
        budget: u32,
    },

    /// Ramification of the quaternion algebra (a, b) over Q.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,

        #[arg(allow_hyphen_values = true)]
        b: String,

        /// Evaluate the Hilbert symbol at one place ("real" or a prime)
        /// instead of listing the full ramification set.
        #[arg(long)]
        place: Option<String>,
    },

    /// Emit every embedded reference fixture as a JSON array.
    DumpFixtures,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            report_error(cli.format, &e);
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let field = field_kind(cli.characteristic)?;
    match &cli.command {
        Command::Table { n } => {
            cmd_table(*n, field, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { ns, all, inject_mismatch } => {
            cmd_verify(ns, *all, *inject_mismatch, field, cli.format)
        }
        Command::Specialize { n, lambda } => {
            require_q(field, "specialize")?;
            cmd_specialize(*n, lambda, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ChooseLambda { n, primes, real, budget } => {
            require_q(field, "choose-lambda")?;
            cmd_choose_lambda(*n, primes, *real, *budget, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Hilbert { a, b, place } => {
            require_q(field, "hilbert")?;
            cmd_hilbert(a, b, place.as_deref(), cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::DumpFixtures => {
            require_q(field, "dump-fixtures")?;
            cmd_dump_fixtures()?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn field_kind(ch: u64) -> Result<FieldKind> {
    if ch == 0 {
        Ok(FieldKind::Q)
    } else {
        FieldKind::fp(ch)
    }
}

fn require_q(field: FieldKind, what: &str) -> Result<()> {
    if field != FieldKind::Q {
        return Err(Error::BadCharacteristic(format!(
            "{what} works over Q; --char applies to table and verify only"
        )));
    }
    Ok(())
}

fn report_error(format: Format, e: &Error) {
    match format {
        Format::Text => eprintln!("error: {e}"),
        Format::Json => eprintln!("{}", json!({ "error": e.to_string(), "kind": kind_name(e) })),
    }
}

/// Variant name of the error, for machine-readable diagnostics.
fn kind_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(['(', ' ', '{']).next().unwrap_or("Error").to_string()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.parse()
        .map_err(|_| Error::Parse(format!("expected an integer or fraction, got \"{s}\"")))
}

fn print_json(doc: &Value) {
    println!("{}", serde_json::to_string_pretty(doc).expect("documents serialize"));
}

// ---------------------------------------------------------------------------
// table
// ---------------------------------------------------------------------------

fn cmd_table(n: u32, field: FieldKind, format: Format) -> Result<()> {
    let fam = FamilyRegistry::standard().get(n)?;
    let spec = fam.spec(field)?;
    let table = fam.delta_table(field)?;
    match format {
        Format::Json => print_json(&spec.to_json(&table)),
        Format::Text => {
            println!("order-{} family over {}(la)  [{}]", spec.n, spec.field, fam.strategy());
            println!("source: {}", spec.fixture.source);
            if let (Some(r), Some(s)) = (&spec.r, &spec.s) {
                println!("r = {}, s = {}", emit_ratfunc(r), emit_ratfunc(s));
            }
            println!("curve:  {}", curve_equation(spec.curve.raw()));
            println!("disc:   {}", emit_ratfunc(&spec.disc));
            println!();
            print_rows(&table_rows(&spec, &table)?);
        }
    }
    Ok(())
}

fn table_rows(
    spec: &FamilySpec,
    table: &DescentTable<descent_core::grammar::BaseRatFunc>,
) -> Result<Vec<[String; 3]>> {
    let mults = spec.curve.multiples(&spec.point, spec.n - 1)?;
    let mut rows = vec![["nP".to_string(), "(x, y)".to_string(), "delta(nP)".to_string()]];
    for (m, q) in (1..spec.n).zip(&mults) {
        let (x, y) = q.xy().expect("multiples below the order are affine");
        let class = table.entry(m).expect("table covers n = 1..N-1");
        rows.push([
            point_label(m),
            format!("({}, {})", emit_ratfunc(x), emit_ratfunc(y)),
            class.to_string(),
        ]);
    }
    Ok(rows)
}

fn point_label(m: u32) -> String {
    if m == 1 {
        "P".to_string()
    } else {
        format!("{m}P")
    }
}

/// Right-align the first column, left-align the middle, and leave the last
/// column ragged.
fn print_rows(rows: &[[String; 3]]) {
    let w0 = rows.iter().map(|r| r[0].len()).max().unwrap_or(0);
    let w1 = rows.iter().map(|r| r[1].len()).max().unwrap_or(0);
    for r in rows {
        println!("  {:>w0$}  {:<w1$}  {}", r[0], r[1], r[2]);
    }
}

/// Render a long Weierstrass equation from the a-invariants, omitting zero
/// terms and folding unit coefficients.
fn curve_equation<K: ClassField>(raw: &RawCurve<K>) -> String {
    let lhs = joined("y^2", &[term(&raw.a1, "x*y"), term(&raw.a3, "y")]);
    let rhs = joined(
        "x^3",
        &[term(&raw.a2, "x^2"), term(&raw.a4, "x"), term(&raw.a6, "")],
    );
    format!("{lhs} = {rhs}")
}

fn term<K: ClassField>(c: &K, mono: &str) -> Option<String> {
    if c.is_zero() {
        return None;
    }
    let s = c.render();
    Some(if mono.is_empty() {
        s
    } else if s == "1" {
        mono.to_string()
    } else if s == "-1" {
        format!("-{mono}")
    } else if c.atomic_render() {
        format!("{s}*{mono}")
    } else {
        format!("({s})*{mono}")
    })
}

fn joined(head: &str, terms: &[Option<String>]) -> String {
    let mut out = head.to_string();
    for t in terms.iter().flatten() {
        if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Outcome {
    n: u32,
    ms: u128,
    entries: usize,
    mismatches: Vec<String>,
    skipped: Option<String>,
    /// (norm constant, normalization unit) when the table came out of the
    /// evaluation algorithm.
    certificate: Option<(String, String)>,
    error: Option<Error>,
}

enum Checked {
    Skipped(String),
    Done {
        entries: usize,
        mismatches: Vec<String>,
        certificate: Option<(String, String)>,
    },
}

fn cmd_verify(
    ns: &[u32],
    all: bool,
    inject: bool,
    field: FieldKind,
    format: Format,
) -> Result<ExitCode> {
    let reg = FamilyRegistry::standard();
    let orders: Vec<u32> = if all {
        reg.orders()
    } else if ns.is_empty() {
        return Err(Error::Parse("pass at least one order, or --all".to_string()));
    } else {
        let mut v = ns.to_vec();
        v.sort_unstable();
        v.dedup();
        for n in &v {
            reg.get(*n)?;
        }
        v
    };

    let mut slots: Vec<Option<Outcome>> = (0..orders.len()).map(|_| None).collect();
    std::thread::scope(|s| {
        for (slot, &n) in slots.iter_mut().zip(&orders) {
            s.spawn(move || *slot = Some(verify_one(n, field, inject)));
        }
    });
    let outcomes: Vec<Outcome> =
        slots.into_iter().map(|o| o.expect("every verify thread fills its slot")).collect();

    for o in &outcomes {
        if let Some(e) = &o.error {
            return Err(e.clone());
        }
    }

    let failed = outcomes.iter().filter(|o| !o.mismatches.is_empty()).count();
    match format {
        Format::Json => {
            let results: Vec<Value> = outcomes.iter().map(outcome_json).collect();
            print_json(&json!({
                "char": field.characteristic(),
                "ok": failed == 0,
                "results": results,
            }));
        }
        Format::Text => print_report(&outcomes, field),
    }
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verify_one(n: u32, field: FieldKind, inject: bool) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome {
        n,
        ms: 0,
        entries: 0,
        mismatches: Vec::new(),
        skipped: None,
        certificate: None,
        error: None,
    };
    match check_table(n, field, inject) {
        Ok(Checked::Skipped(reason)) => out.skipped = Some(reason),
        Ok(Checked::Done { entries, mismatches, certificate }) => {
            out.entries = entries;
            out.mismatches = mismatches;
            out.certificate = certificate;
        }
        Err(e) => out.error = Some(e),
    }
    out.ms = start.elapsed().as_millis();
    out
}

fn check_table(n: u32, field: FieldKind, inject: bool) -> Result<Checked> {
    let fam = FamilyRegistry::standard().get(n)?;
    let spec = match fam.spec(field) {
        Ok(s) => s,
        Err(Error::BadCharacteristic(msg)) => return Ok(Checked::Skipped(msg)),
        Err(e) => return Err(e),
    };
    let computed = match fam.delta_table(field) {
        Ok(t) => t,
        Err(Error::BadCharacteristic(msg)) => return Ok(Checked::Skipped(msg)),
        Err(e) => return Err(e),
    };
    let mut reference = spec.fixture_table()?;
    if inject {
        // Multiplying a class by la always changes it, so this forces
        // exactly one disagreement per table.
        let la = PowerClass::of_ratfunc(&parse_ratfunc("la", field)?, n)?;
        let (m, class) = &reference.entries[0];
        reference.entries[0] = (*m, class.mul(&la)?);
    }
    let mut mismatches = Vec::new();
    for (m, want) in &reference.entries {
        match computed.entry(*m) {
            Some(got) if got == want => {}
            Some(got) => mismatches.push(format!("n={m}: computed {got}, reference {want}")),
            None => mismatches.push(format!("n={m}: missing from the computed table")),
        }
    }
    let certificate = computed
        .certificate
        .as_ref()
        .map(|c| (emit_ratfunc(&c.norm_constant), emit_ratfunc(&c.unit)));
    Ok(Checked::Done { entries: reference.entries.len(), mismatches, certificate })
}

fn outcome_json(o: &Outcome) -> Value {
    let mut doc = json!({ "N": o.n, "ms": o.ms as u64 });
    let obj = doc.as_object_mut().expect("document is an object");
    match (&o.skipped, o.mismatches.is_empty()) {
        (Some(reason), _) => {
            obj.insert("status".into(), "skipped".into());
            obj.insert("reason".into(), reason.as_str().into());
        }
        (None, true) => {
            obj.insert("status".into(), "matched".into());
            obj.insert("entries".into(), o.entries.into());
        }
        (None, false) => {
            obj.insert("status".into(), "mismatched".into());
            obj.insert("entries".into(), o.entries.into());
            obj.insert("mismatches".into(), o.mismatches.clone().into());
        }
    }
    if let Some((norm, unit)) = &o.certificate {
        obj.insert(
            "certificates".into(),
            json!({ "norm_constant": norm, "unit": unit }),
        );
    }
    doc
}

fn print_report(outcomes: &[Outcome], field: FieldKind) {
    let width = outcomes.iter().map(|o| o.n.to_string().len()).max().unwrap_or(1);
    for o in outcomes {
        let label = format!("N={:<width$}", o.n);
        if let Some(reason) = &o.skipped {
            println!("{label}  skipped  {reason}");
        } else if o.mismatches.is_empty() {
            let noun = if o.entries == 1 { "entry" } else { "entries" };
            println!(
                "{label}  ok       table matches the reference ({} {noun}, {} ms)",
                o.entries, o.ms
            );
        } else {
            println!(
                "{label}  FAIL     {} of {} entries disagree with the reference",
                o.mismatches.len(),
                o.entries
            );
            for line in &o.mismatches {
                println!("{:width$}             {line}", "", width = width + 2);
            }
        }
    }
    let failed = outcomes.iter().filter(|o| !o.mismatches.is_empty()).count();
    let skipped = outcomes.iter().filter(|o| o.skipped.is_some()).count();
    if failed > 0 {
        println!("{failed} of {} tables failed verification", outcomes.len());
    } else if skipped > 0 {
        println!(
            "verified {} of {} tables over {}(la), {skipped} skipped",
            outcomes.len() - skipped,
            outcomes.len(),
            field
        );
    } else {
        println!("verified all {} tables over {}(la)", outcomes.len(), field);
    }
}

// ---------------------------------------------------------------------------
// specialize
// ---------------------------------------------------------------------------

fn cmd_specialize(n: u32, lambda: &str, format: Format) -> Result<()> {
    let l0 = parse_rational(lambda)?;
    let (curve, point) = specialize(n, &l0)?;
    let entries: Vec<(u32, PowerClass)> = if n >= 4 {
        miller::delta_table(&curve, &point, n)?.entries
    } else {
        // The small tables are literature data over Q(la); evaluating the
        // class representatives is the specialization.
        let spec = FamilyRegistry::standard().get(n)?.spec(FieldKind::Q)?;
        let at = Coeff::Q(l0.clone());
        spec.fixture_table()?
            .entries
            .iter()
            .map(|(m, c)| Ok((*m, c.specialize(&at)?)))
            .collect::<Result<_>>()?
    };
    let mults = curve.multiples(&point, n - 1)?;

    match format {
        Format::Json => {
            let raw = curve.raw();
            let (px, py) = point.xy().expect("torsion point is affine");
            print_json(&json!({
                "N": n,
                "lambda": format_rational(&l0),
                "a": [raw.a1.render(), raw.a2.render(), raw.a3.render(), raw.a4.render(), raw.a6.render()],
                "P": [px.render(), py.render()],
                "disc": curve.discriminant().render(),
                "order": n,
                "delta": entries
                    .iter()
                    .map(|(m, c)| json!({ "n": m, "class": c.to_string() }))
                    .collect::<Vec<_>>(),
            }));
        }
        Format::Text => {
            println!("order-{n} family at la = {}", format_rational(&l0));
            println!("curve:  {}", curve_equation(curve.raw()));
            println!("disc:   {}", curve.discriminant().render());
            println!();
            let mut rows =
                vec![["nP".to_string(), "(x, y)".to_string(), "delta(nP)".to_string()]];
            for (m, q) in (1..n).zip(&mults) {
                let (x, y) = q.xy().expect("multiples below the order are affine");
                let class = entries
                    .iter()
                    .find(|(k, _)| *k == m)
                    .map(|(_, c)| c.to_string())
                    .expect("table covers n = 1..N-1");
                rows.push([point_label(m), format!("({}, {})", x.render(), y.render()), class]);
            }
            print_rows(&rows);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// choose-lambda
// ---------------------------------------------------------------------------

fn cmd_choose_lambda(
    n: u32,
    primes: &[u64],
    real: bool,
    budget: u32,
    format: Format,
) -> Result<()> {
    let mut places: Vec<Place> =
        primes.iter().map(|p| Place::finite(*p)).collect::<Result<_>>()?;
    if real {
        places.push(Place::Real);
    }
    let (l0, cert) = choose_lambda(n, &places, budget)?;
    match format {
        Format::Json => print_json(&cert.to_json()),
        Format::Text => {
            let at = format_rational(&l0);
            println!("lambda = {at}");
            for c in &cert.conditions {
                match c {
                    PlaceCondition::Finite { p, valuation } => println!(
                        "  v_{p}(delta(P)({at})) = {valuation}, a unit mod {n}"
                    ),
                    PlaceCondition::Real { sign } => {
                        debug_assert!(*sign < 0, "verified certificates carry negative signs");
                        println!("  delta(P)({at}) < 0 at the real place");
                    }
                }
            }
            println!("specialization at {at} is nonsingular with a point of exact order {n}");
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// hilbert
// ---------------------------------------------------------------------------

fn parse_place(s: &str) -> Result<Place> {
    if s == "real" {
        return Ok(Place::Real);
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("expected \"real\" or a prime, got \"{s}\"")))?;
    Place::finite(p)
}

fn cmd_hilbert(a: &str, b: &str, place: Option<&str>, format: Format) -> Result<()> {
    let a = parse_rational(a)?;
    let b = parse_rational(b)?;
    let pair = format!("({}, {})", format_rational(&a), format_rational(&b));
    if let Some(at) = place {
        let at = parse_place(at)?;
        let symbol = hilbert_symbol(&a, &b, at)?;
        match format {
            Format::Json => print_json(&json!({
                "a": format_rational(&a),
                "b": format_rational(&b),
                "place": at.to_string(),
                "symbol": symbol,
            })),
            Format::Text => println!("{pair}_{at} = {symbol}"),
        }
        return Ok(());
    }
    let (split, ramification) = quaternion_is_split(&a, &b)?;
    match format {
        Format::Json => print_json(&json!({
            "a": format_rational(&a),
            "b": format_rational(&b),
            "split": split,
            "ramification": ramification.iter().map(Place::to_string).collect::<Vec<_>>(),
        })),
        Format::Text => {
            if split {
                println!("the quaternion algebra {pair} over Q splits");
            } else {
                let places: Vec<String> = ramification.iter().map(Place::to_string).collect();
                println!(
                    "the quaternion algebra {pair} over Q is ramified exactly at {}",
                    places.join(", ")
                );
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// dump-fixtures
// ---------------------------------------------------------------------------

/// Emit the embedded reference data, each fixture built over its natural
/// field (F_2 for the characteristic-2 family, Q otherwise).  Always JSON:
/// the dump exists for audits and diffing.
fn cmd_dump_fixtures() -> Result<()> {
    let mut docs = Vec::new();
    for fx in FIXTURES {
        let field = match fx.chars {
            CharRule::OnlyTwo => FieldKind::fp(2)?,
            _ => FieldKind::Q,
        };
        let spec = FamilySpec::build(fx, field)?;
        let table = spec.fixture_table()?;
        docs.push(spec.to_json(&table));
    }
    print_json(&Value::Array(docs));
    Ok(())
}
