//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid or degenerate input, 2 a verification
//! failure, 64 unusable command line.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::curve::{self, Certificate, GenerateOptions, Generation};
use crate::error::{Error, Result};
use crate::exact::{fraction_string, parse_rational, Integer, Rational};
use crate::families;
use crate::param3;
use crate::search::{self, SearchOptions};
use crate::verify::{self, Outcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "sierpinski", version, about = "Triangular-number systems: search, parametrizations and curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Write output to FILE (atomically) instead of standard output.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integer solutions with x < y < z < MAX (x <= y <= z with --four).
    Search(SearchArgs),
    /// Rows of one of the two polynomial families.
    Family(FamilyArgs),
    /// The three-parameter rational solution at (u, v, w).
    Param(ParamArgs),
    /// Rational solutions of all four equations from multiples of P.
    Curve(CurveArgs),
    /// Run the symbolic identity suite.
    Verify,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long = "max", value_name = "N")]
    max: u64,
    /// Also require t_x + t_y + t_z to be triangular.
    #[arg(long)]
    four: bool,
    /// Keep only tuples with seven distinct values (with --four).
    #[arg(long)]
    distinct: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    which: u8,
    #[arg(long = "u-from", default_value_t = 0)]
    u_from: u64,
    #[arg(long = "u-to")]
    u_to: u64,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    #[arg(long, allow_hyphen_values = true)]
    v: String,
    #[arg(long, value_name = "K")]
    multiples: u32,
    /// Also use kP + T.
    #[arg(long)]
    with_torsion: bool,
}

/// Parses `argv` (program name first) and runs, writing to the process's
/// standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, stderr) {
        Ok((text, code)) => match emit(&text, cli.out.as_deref(), stdout) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Verification(_) => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

fn emit(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> io::Result<()> {
    let Some(path) = out else {
        return stdout.write_all(text.as_bytes());
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<(String, i32)> {
    match &cli.command {
        Command::Search(a) => run_search(a, cli.format, stderr),
        Command::Family(a) => run_family(a, cli.format),
        Command::Param(a) => run_param(a, cli.format),
        Command::Curve(a) => run_curve(a, cli.format, stderr),
        Command::Verify => Ok(run_verify(cli.format)),
    }
}

fn run_search(a: &SearchArgs, format: Format, stderr: &mut dyn Write) -> Result<(String, i32)> {
    let opts = SearchOptions { workers: a.workers };
    if !a.four {
        let _ = writeln!(stderr, "searching x < y < z < {}", a.max);
        let rows = search::solve_system1_with(a.max, opts)?;
        let _ = writeln!(stderr, "{} solutions", rows.len());
        return Ok((
            match format {
                Format::Csv => search::solutions6_csv(&rows),
                Format::Json => search::to_json(&rows),
            },
            EXIT_OK,
        ));
    }
    let _ = writeln!(stderr, "searching x <= y <= z < {} with t_x + t_y + t_z triangular", a.max);
    let rows = search::solve_system3_with(a.max, a.distinct, opts)?;
    let _ = writeln!(stderr, "{} solutions", rows.len());
    for row in rows.iter().filter(|r| r.all_distinct() && !r.is_reference_row()) {
        let vals: Vec<String> = row.values().iter().map(|v| v.to_string()).collect();
        let _ = writeln!(stderr, "note: ({}) is not among the reference rows", vals.join(", "));
    }
    Ok((
        match format {
            Format::Csv => search::solutions7_csv(&rows),
            Format::Json => search::to_json(&rows),
        },
        EXIT_OK,
    ))
}

fn run_family(a: &FamilyArgs, format: Format) -> Result<(String, i32)> {
    if a.u_from > a.u_to {
        return Err(Error::Domain(format!("empty range {}..={}", a.u_from, a.u_to)));
    }
    let rows = (a.u_from..=a.u_to)
        .map(|u| {
            let u = Integer::from(u);
            families::family_eval(a.which, &u).map(|s| (u, s))
        })
        .collect::<Result<Vec<_>>>()?;
    let text = match format {
        Format::Csv => families::family_csv(&rows),
        Format::Json => {
            let items: Vec<Value> = rows
                .iter()
                .map(|(u, s)| {
                    let mut obj = serde_json::to_value(s).expect("solutions serialize");
                    obj["u"] = Value::String(u.to_string());
                    obj
                })
                .collect();
            pretty(&Value::Array(items))
        }
    };
    Ok((text, EXIT_OK))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn rationals(values: &[&Rational]) -> Vec<String> {
    values.iter().map(|q| fraction_string(q)).collect()
}

fn run_param(a: &ParamArgs, format: Format) -> Result<(String, i32)> {
    let (u, v, w) = (parse_rational(&a.u)?, parse_rational(&a.v)?, parse_rational(&a.w)?);
    let sol = param3::closed_form_eval(&u, &v, &w)?;
    let agrees = param3::eq2_linear_solve(&u, &v, &w).is_ok_and(|o| o == sol);
    let code = if agrees { EXIT_OK } else { EXIT_VERIFY };
    let vals = rationals(&sol.values());
    let text = match format {
        Format::Csv => format!("x,y,z,p,q,r,linear_solve_agrees\n{},{agrees}\n", vals.join(",")),
        Format::Json => {
            let keys = ["x", "y", "z", "p", "q", "r"];
            let solution: serde_json::Map<String, Value> =
                keys.iter().zip(&vals).map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
            pretty(&json!({
                "u": fraction_string(&u),
                "v": fraction_string(&v),
                "w": fraction_string(&w),
                "solution": solution,
                "satisfies_system": true,
                "linear_solve_agrees": agrees,
            }))
        }
    };
    Ok((text, code))
}

fn point_json(p: &curve::ECPoint) -> Value {
    serde_json::to_value(p).expect("points serialize")
}

fn curve_json(g: &Generation) -> Value {
    let s = &g.specialization;
    let solutions: Vec<Value> = g
        .solutions
        .iter()
        .map(|sol| {
            let keys = ["x", "y", "z", "p", "q", "r", "s"];
            let tuple: serde_json::Map<String, Value> = keys
                .iter()
                .zip(rationals(&sol.solution.values()))
                .map(|(k, v)| (k.to_string(), Value::String(v)))
                .collect();
            json!({
                "k": sol.k,
                "torsion": sol.torsion,
                "point": point_json(&sol.point),
                "w": fraction_string(&sol.w),
                "h": fraction_string(&sol.h),
                "s4_negated": sol.s4_negated,
                "solution": tuple,
                "verified": sol.verified,
            })
        })
        .collect();
    let skipped: Vec<Value> =
        g.skipped.iter().map(|k| json!({"k": k.k, "torsion": k.torsion, "reason": k.reason})).collect();
    json!({
        "u": fraction_string(&s.quartic.u),
        "v": fraction_string(&s.quartic.v),
        "A": fraction_string(&s.curve.a),
        "B": fraction_string(&s.curve.b),
        "P": point_json(&s.p),
        "T": point_json(&s.t),
        "certificate": g.certificate,
        "warning": g.warning,
        "solutions": solutions,
        "skipped": skipped,
    })
}

fn curve_csv(g: &Generation) -> String {
    let mut out = String::from("k,torsion,X,Y,w,h,x,y,z,p,q,r,s,verified\n");
    for sol in &g.solutions {
        let (x, y) = sol.point.coords().expect("generated points are affine");
        let mut fields = vec![sol.k.to_string(), sol.torsion.to_string()];
        fields.extend(rationals(&[x, y, &sol.w, &sol.h]));
        fields.extend(rationals(&sol.solution.values()));
        fields.push(sol.verified.to_string());
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

fn run_curve(a: &CurveArgs, format: Format, stderr: &mut dyn Write) -> Result<(String, i32)> {
    let (u, v) = (parse_rational(&a.u)?, parse_rational(&a.v)?);
    let g = curve::generate_solutions_with(&u, &v, a.multiples, GenerateOptions { with_torsion: a.with_torsion })?;
    match g.certificate {
        Certificate::Certified { k } => {
            let _ = writeln!(stderr, "P has infinite order ({k}P is not integral on the integral model)");
        }
        Certificate::Inconclusive => {}
    }
    if let Some(w) = &g.warning {
        let _ = writeln!(stderr, "warning: {w}");
    }
    for k in &g.skipped {
        let which = if k.torsion { "P+T" } else { "P" };
        let _ = writeln!(stderr, "skipped {}{which}: {}", k.k, k.reason);
    }
    let code = if g.solutions.iter().all(|s| s.verified) { EXIT_OK } else { EXIT_VERIFY };
    let text = match format {
        Format::Csv => curve_csv(&g),
        Format::Json => pretty(&curve_json(&g)),
    };
    Ok((text, code))
}

fn run_verify(format: Format) -> (String, i32) {
    let checks = verify::run_all();
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let code = if failed == 0 { EXIT_OK } else { EXIT_VERIFY };
    let text = match format {
        Format::Csv => {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            let passed = checks.iter().filter(|c| c.outcome == Outcome::Pass).count();
            let errata = checks.len() - passed - failed;
            s.push_str(&format!("{passed} passed, {failed} failed, {errata} errata\n"));
            s
        }
        Format::Json => {
            let items: Vec<Value> = checks
                .iter()
                .map(|c| match &c.outcome {
                    Outcome::Pass => json!({"name": c.name, "outcome": "pass"}),
                    Outcome::Fail(d) => json!({"name": c.name, "outcome": "fail", "detail": d}),
                    Outcome::Erratum(d) => json!({"name": c.name, "outcome": "erratum", "detail": d}),
                })
                .collect();
            pretty(&Value::Array(items))
        }
    };
    (text, code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("sierpinski").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&[]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["search"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["search", "--max", "ten"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["family", "--which", "3", "--u-to", "2"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn degenerate_param_exits_one() {
        let (code, out, err) = run_capture(&["param", "--u", "0", "--v", "2", "--w", "3"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.is_empty());
        assert!(err.contains("degenerate parameters"));
        assert_eq!(run_capture(&["param", "--u", "1/0", "--v", "2", "--w", "3"]).0, EXIT_INPUT);
    }

    #[test]
    fn param_negative_rationals() {
        let (code, out, _) = run_capture(&["param", "--u", "-3/2", "--v", "2", "--w", "5"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.ends_with(",true\n"));
    }

    #[test]
    fn small_search_csv() {
        let (code, out, _) = run_capture(&["search", "--max", "50"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("x,y,z,p,q,r\n9,13,44,16,46,45\n"));
    }

    #[test]
    fn search_has_44_rows() {
        let (code, out, err) = run_capture(&["search", "--max", "1000", "--format", "csv"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 45);
        assert!(err.contains("44 solutions"));
    }

    #[test]
    fn output_is_identical_across_worker_counts() {
        let one = run_capture(&["search", "--max", "700", "--workers", "1", "--format", "json"]).1;
        let many = run_capture(&["search", "--max", "700", "--workers", "8", "--format", "json"]).1;
        let again = run_capture(&["search", "--max", "700", "--workers", "8", "--format", "json"]).1;
        assert_eq!(one, many);
        assert_eq!(many, again);
    }

    #[test]
    fn more_usage_errors() {
        assert_eq!(run_capture(&["search", "--maximum", "3"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["--version"]).0, EXIT_OK);
        assert_eq!(run_capture(&["search", "--max", "2"]).0, EXIT_INPUT);
    }

    #[test]
    fn verify_passes() {
        let (code, out, _) = run_capture(&["verify"]);
        assert_eq!(code, EXIT_OK);
        assert!(!out.contains("FAIL"));
        assert!(out.contains("ERRATUM  printed f"));
    }

    #[test]
    fn out_file_is_written() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        let path_str = path.to_str().unwrap();
        let (code, out, _) = run_capture(&["family", "--which", "1", "--u-from", "0", "--u-to", "3", "--out", path_str]);
        assert_eq!(code, EXIT_OK);
        assert!(out.is_empty());
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("u,x,y,z,p,q,r\n0,5,14,14,15,20,15\n"));
        // no temporary file left behind
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn curve_json_uses_fraction_strings() {
        let args = ["curve", "--u", "2", "--v", "3", "--multiples", "3", "--with-torsion", "--format", "json"];
        let (code, out, _) = run_capture(&args);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["A"], "-28802736/1");
        assert_eq!(v["P"][1], "252720/1");
        assert_eq!(v["certificate"]["outcome"], "Certified");
        let sols = v["solutions"].as_array().unwrap();
        assert!(!sols.is_empty());
        for s in sols {
            assert_eq!(s["verified"], true);
            for key in ["x", "y", "z", "p", "q", "r", "s"] {
                assert!(s["solution"][key].as_str().unwrap().contains('/'));
            }
        }
    }

    #[test]
    fn curve_at_degenerate_specialization() {
        assert_eq!(run_capture(&["curve", "--u", "-1", "--v", "2", "--multiples", "2"]).0, EXIT_INPUT);
    }

    #[test]
    fn family_json_has_u() {
        let (code, out, _) = run_capture(&["family", "--which", "2", "--u-to", "0", "--format", "json"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v[0]["u"], "0");
        assert_eq!(v[0]["x"], "9");
    }
}
