//! `betaint`: expansions, point sets, gap words and verification suites for
//! beta-integers and (-beta)-integers.
//!
//! Exit status: 0 on success, 1 when a checked property fails, 2 on usage
//! or input errors.

mod expr;
mod suites;

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use betaint::addition::addition_report;
use betaint::algebraic::InverseBasis;
use betaint::capset::{cap_points, three_gap_check, Scheme};
use betaint::integers::{brute_force_points, PointSequence};
use betaint::numeration::expansion_of;
use betaint::words::morphism::word_to_string;
use betaint::{make_base, Family, FieldElement, Mode, PisotBase};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use suites::Suite;

#[derive(Parser)]
#[command(name = "betaint", version, about = "Exact beta-integers and (-beta)-integers for Pisot bases")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Pos,
    Neg,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Pos => Mode::Pos,
            ModeArg::Neg => Mode::Neg,
        }
    }
}

#[derive(Args)]
struct BaseArgs {
    /// `plus:m,n` (x^2 - mx - n), `minus:m,n` (x^2 - mx + n) or
    /// `poly:c0,c1,...,1` (largest real root of a monic polynomial).
    #[arg(long, value_parser = parse_base)]
    base: PisotBase,
    /// `pos` for base β, `neg` for base -β.
    #[arg(long, value_enum, default_value_t = ModeArg::Neg)]
    mode: ModeArg,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a value such as `4+1/b` in the chosen base.
    Expand {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(allow_hyphen_values = true)]
        value: String,
    },
    /// List the points of the integer set in an interval.
    Points {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        from: String,
        #[arg(long, default_value = "20", allow_hyphen_values = true)]
        to: String,
        /// Cross-check against enumeration of admissible digit strings.
        #[arg(long)]
        oracle: bool,
    },
    /// Print the gap word u_0 u_1 ... (with --two-sided, u_{-n} ... u_{-1}|u_0 ...).
    Word {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(long, default_value_t = 40)]
        count: usize,
        #[arg(long)]
        two_sided: bool,
    },
    /// Run a named verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Restrict to one base; by default each suite runs its own grid.
        #[arg(long, value_parser = parse_base)]
        base: Option<PisotBase>,
        /// Longest factor length for language and complexity checks.
        #[arg(long)]
        maxlen: Option<usize>,
        /// Index or value bound for scans and windows.
        #[arg(long)]
        bound: Option<i64>,
        /// Gap-word prefix length used for factor sets.
        #[arg(long)]
        prefix: Option<usize>,
    },
    /// Compare t_j + t_k with t_j ⊕ t_k = t_{j+k}.
    Add {
        #[command(flatten)]
        base: BaseArgs,
        #[arg(allow_negative_numbers = true)]
        j: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Points a + bη with a + bε in the acceptance window Ω.
    Cap {
        /// Quadratic base fixing the field Q(β).
        #[arg(long, value_parser = parse_base)]
        base: PisotBase,
        /// Acceptance window, e.g. `[0,b)` or `(-1,b)`.
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
        /// Real interval to list.
        #[arg(long, default_value = "[0,20]", allow_hyphen_values = true)]
        window: String,
        /// Defaults to β.
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        /// Defaults to the conjugate of β.
        #[arg(long, allow_hyphen_values = true)]
        epsilon: Option<String>,
        /// Also check the gap structure of the first N points on each side of 0.
        #[arg(long)]
        gaps: Option<usize>,
    },
}

fn parse_base(s: &str) -> Result<PisotBase, String> {
    let (kind, rest) = s.split_once(':').ok_or("expected plus:m,n, minus:m,n or poly:c0,...")?;
    let nums: Vec<&str> = rest.split(',').map(str::trim).collect();
    match kind {
        "plus" | "minus" => {
            let [m, n] = nums[..] else {
                return Err(format!("{kind} takes two integers m,n"));
            };
            let m: u32 = m.parse().map_err(|_| format!("bad m '{m}'"))?;
            let n: u32 = n.parse().map_err(|_| format!("bad n '{n}'"))?;
            let family = if kind == "plus" { Family::Plus } else { Family::Minus };
            make_base(family, m, n).map_err(|e| e.to_string())
        }
        "poly" => {
            let cs = nums
                .iter()
                .map(|c| c.parse::<BigInt>().map_err(|_| format!("bad coefficient '{c}'")))
                .collect::<Result<Vec<_>, _>>()?;
            PisotBase::from_polynomial(cs).map_err(|e| e.to_string())
        }
        _ => Err(format!("unknown base kind '{kind}'")),
    }
}

/// Outcome of a command: its JSON payload, its text rendering, and whether
/// every checked property held.
struct Output {
    json: serde_json::Value,
    text: String,
    passed: bool,
}

fn output(payload: &impl Serialize, text: String, passed: bool) -> Result<Output, String> {
    let json = serde_json::to_value(payload).map_err(|e| e.to_string())?;
    Ok(Output { json, text, passed })
}

fn show(x: &FieldElement) -> String {
    InverseBasis(x).to_string()
}

fn sequence(b: &BaseArgs) -> Result<PointSequence, String> {
    PointSequence::new(&b.base, b.mode.into()).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ExpandReport {
    base: String,
    mode: Mode,
    value: FieldElement,
    expansion: String,
    integer: bool,
    digits: betaint::numeration::Expansion,
}

fn cmd_expand(b: &BaseArgs, value: &str) -> Result<Output, String> {
    let x = expr::parse_value(value, &b.base)?;
    let e = expansion_of(&b.base, b.mode.into(), &x).map_err(|e| e.to_string())?;
    let mut text = String::new();
    writeln!(text, "expansion  {e}").unwrap();
    writeln!(text, "value      {x}").unwrap();
    if b.base.family() != Family::General {
        writeln!(text, "           = {}", show(&x)).unwrap();
    }
    writeln!(text, "approx     {}", x.decimal(12)).unwrap();
    write!(text, "integer    {}", if e.is_integer() { "yes" } else { "no" }).unwrap();
    let r = ExpandReport {
        base: b.base.label(),
        mode: b.mode.into(),
        expansion: e.to_string(),
        integer: e.is_integer(),
        value: x,
        digits: e,
    };
    output(&r, text, true)
}

#[derive(Serialize)]
struct IndexedPoint {
    index: i64,
    value: FieldElement,
}

#[derive(Serialize)]
struct PointsReport {
    base: String,
    mode: Mode,
    points: Vec<IndexedPoint>,
    oracle_agrees: Option<bool>,
}

fn cmd_points(b: &BaseArgs, from: &str, to: &str, oracle: bool) -> Result<Output, String> {
    let lo = expr::parse_value(from, &b.base)?;
    let hi = expr::parse_value(to, &b.base)?;
    let s = sequence(b)?;
    let mut points = Vec::new();
    if lo <= hi {
        let mut j = s.bracket(&lo, 0);
        if s.point(j) < lo {
            j += 1;
        }
        while s.point(j) <= hi {
            points.push(IndexedPoint { index: j, value: s.point(j) });
            j += 1;
        }
    }
    let oracle_agrees = if oracle {
        let o = brute_force_points(&b.base, b.mode.into(), &lo, &hi, None).map_err(|e| e.to_string())?;
        Some(o.len() == points.len() && o.iter().zip(&points).all(|(a, p)| a.value == p.value))
    } else {
        None
    };
    let mut text = String::new();
    for p in &points {
        writeln!(text, "t_{:<5} {:<24} {}", p.index, show(&p.value), p.value.decimal(6)).unwrap();
    }
    write!(text, "{} points", points.len()).unwrap();
    match oracle_agrees {
        Some(true) => write!(text, "; digit-string enumeration agrees").unwrap(),
        Some(false) => write!(text, "; digit-string enumeration DISAGREES").unwrap(),
        None => {}
    }
    let r = PointsReport {
        base: b.base.label(),
        mode: b.mode.into(),
        points,
        oracle_agrees,
    };
    output(&r, text, oracle_agrees != Some(false))
}

#[derive(Serialize)]
struct WordReport {
    base: String,
    mode: Mode,
    negative: Option<String>,
    positive: String,
}

fn cmd_word(b: &BaseArgs, count: usize, two_sided: bool) -> Result<Output, String> {
    let s = sequence(b)?;
    let (negative, positive) = if two_sided {
        let w = s.window_word(count);
        (Some(word_to_string(&w.negative)), word_to_string(&w.positive))
    } else {
        (None, word_to_string(&s.positive_word(count)))
    };
    let text = match &negative {
        Some(n) => format!("{n}|{positive}"),
        None => positive.clone(),
    };
    let r = WordReport {
        base: b.base.label(),
        mode: b.mode.into(),
        negative,
        positive,
    };
    output(&r, text, true)
}

fn cmd_verify(suite: Suite, base: Option<&PisotBase>, opts: &suites::Options) -> Result<Output, String> {
    if let Some(b) = base {
        if let Some(why) = suites::not_applicable(suite, b) {
            return Err(format!("suite {} does not apply to {}: {why}", suite.name(), b.label()));
        }
    }
    let r = suites::run(suite, base, opts);
    let mut text = String::new();
    let width = r.checks.iter().map(|c| c.base.len()).max().unwrap_or(0);
    for c in &r.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        writeln!(text, "{tag}  {:<width$}  {}: {}", c.base, c.name, c.detail).unwrap();
    }
    let failed = r.checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        write!(text, "PASS {} ({} checks)", suite.name(), r.checks.len()).unwrap();
    } else {
        write!(text, "FAIL {} ({failed} of {} checks failed)", suite.name(), r.checks.len()).unwrap();
    }
    let passed = r.passed;
    output(&r, text, passed)
}

fn cmd_add(b: &BaseArgs, j: i64, k: i64) -> Result<Output, String> {
    let s = sequence(b)?;
    let r = addition_report(&s, j, k);
    let mut text = String::new();
    writeln!(text, "t_{j} + t_{k}      = {}  ({})", show(&r.sum), r.sum.decimal(6)).unwrap();
    writeln!(text, "t_{j} ⊕ t_{k}      = t_{} = {}", r.oplus_index, show(&r.oplus)).unwrap();
    writeln!(text, "difference     = {}  ({})", show(&r.diff), r.diff.decimal(6)).unwrap();
    writeln!(text, "closest point  = t_{} = {}", r.closest_index, show(&r.closest)).unwrap();
    let status = match r.sum_index {
        _ if r.is_compatible_instance => "sum is t_{j+k}".to_string(),
        Some(i) => format!("sum is the point t_{i}"),
        None => "sum is not a point".to_string(),
    };
    write!(text, "{status}").unwrap();
    output(&r, text, true)
}

#[derive(Serialize)]
struct CapReport {
    scheme: Scheme,
    omega: betaint::capset::Window,
    window: betaint::capset::Window,
    points: Vec<FieldElement>,
    three_gaps: Option<betaint::capset::ThreeGapReport>,
}

fn cmd_cap(
    base: &PisotBase,
    omega: &str,
    window: &str,
    eta: Option<&str>,
    epsilon: Option<&str>,
    gaps: Option<usize>,
) -> Result<Output, String> {
    let scheme = match (eta, epsilon) {
        (None, None) => Scheme::algebraic(base),
        _ => {
            let eta = eta.map_or(Ok(base.beta()), |s| expr::parse_value(s, base))?;
            let eps = match epsilon {
                Some(s) => expr::parse_value(s, base)?,
                None => base.beta_conjugate().map_err(|e| e.to_string())?,
            };
            Scheme::new(eta, eps)
        }
    }
    .map_err(|e| e.to_string())?;
    let omega = expr::parse_window(omega, base)?;
    let window = expr::parse_window(window, base)?;
    let points = cap_points(&scheme, &omega, &window);
    let three_gaps = gaps
        .map(|n| three_gap_check(&scheme, &omega, n))
        .transpose()
        .map_err(|e| e.to_string())?;
    let mut text = String::new();
    for p in &points {
        writeln!(text, "{:<24} {}", show(p), p.decimal(6)).unwrap();
    }
    write!(text, "{} points of Σ({omega}) in {window}", points.len()).unwrap();
    let mut passed = true;
    if let Some(g) = &three_gaps {
        let vals: Vec<String> = g.gaps.iter().map(show).collect();
        write!(text, "\ngaps {{{}}}: {}", vals.join(", "), if g.structure_ok { "three-gap structure holds" } else { "STRUCTURE FAILS" }).unwrap();
        if let Some(st) = g.sturmian {
            write!(text, "; coding {} Sturmian up to length {}", if st { "is" } else { "is NOT" }, g.checked_to).unwrap();
            passed &= st;
        }
        passed &= g.structure_ok;
    }
    let r = CapReport {
        scheme,
        omega,
        window,
        points,
        three_gaps,
    };
    output(&r, text, passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Expand { base, value } => cmd_expand(base, value),
        Command::Points { base, from, to, oracle } => cmd_points(base, from, to, *oracle),
        Command::Word { base, count, two_sided } => cmd_word(base, *count, *two_sided),
        Command::Verify {
            suite,
            base,
            maxlen,
            bound,
            prefix,
        } => {
            let opts = suites::Options {
                maxlen: *maxlen,
                bound: *bound,
                prefix: *prefix,
            };
            cmd_verify(*suite, base.as_ref(), &opts)
        }
        Command::Add { base, j, k } => cmd_add(base, *j, *k),
        Command::Cap {
            base,
            omega,
            window,
            eta,
            epsilon,
            gaps,
        } => cmd_cap(base, omega, window, eta.as_deref(), epsilon.as_deref(), *gaps),
    };
    match result {
        Ok(out) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&out.json).expect("serializable"),
                Format::Text => out.text,
            };
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_specs() {
        assert_eq!(parse_base("plus:2,1").unwrap().label(), "plus:2,1");
        assert_eq!(parse_base("minus:3, 1").unwrap().label(), "minus:3,1");
        assert!(parse_base("plus:1,2").unwrap_err().contains("constraint"));
        assert!(parse_base("minus:2,1").is_err());
        assert!(parse_base("plus:1").is_err());
        assert!(parse_base("poly:-1,-1,0,1").unwrap().degree() == 3);
        assert!(parse_base("cubic:1").is_err());
    }

    #[test]
    fn expressions() {
        let b = parse_base("plus:1,1").unwrap();
        let v = |s| expr::parse_value(s, &b).unwrap();
        assert_eq!(v("4+1/b"), v("3+b"));
        assert_eq!(v("b^2"), v("b+1"));
        assert_eq!(v("b^-1"), v("b-1"));
        assert_eq!(v("b^(-2)"), v("2-b"));
        assert_eq!(v("3b/2"), v("1.5*b"));
        assert_eq!(v("2(b+1)"), v("2b+2"));
        assert_eq!(v("-2^2"), v("-4"));
        assert_eq!(v("−1"), v("-1"));
        for bad in ["", "1+", "(1", "b^b", "1/0", "1..2", "x", "1 2)"] {
            assert!(expr::parse_value(bad, &b).is_err(), "{bad}");
        }
        let w = expr::parse_window("[0, b)", &b).unwrap();
        assert!(w.closed_lo && !w.closed_hi && w.hi == b.beta());
        for bad in ["[", "0,1", "[1,0]", "[0;1]", "(0,1"] {
            assert!(expr::parse_window(bad, &b).is_err(), "{bad}");
        }
    }
}
