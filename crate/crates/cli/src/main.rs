//! `companion`: construct companion matrix families for a monic polynomial,
//! compare exact condition numbers, and recommend the best-conditioned form.

use std::collections::BTreeMap;

use companion_cli::{
    analyze, emit_report, parse_poly_argument, verify_suite, AnalysisRequest, CliError,
    OutputFormat,
};
use companion_core::fiedler::{all_lattice_paths, initial_step_size, lattice_to_hessenberg};
use companion_core::{all_stripe_tuples, parse_rational, Family, MonicPolynomial, Rational};

const USAGE: &str = "\
usage:
  companion analyze --poly <file|c0,c1,...> [--families f1,f2] [--a-grid v1,v2]
                    [--ell-range lo..hi] [--format json|csv|table|plotdata] [--out path]
  companion enumerate --n N --family fiedler|striped
  companion verify [--seed S] [--n-max N] [--trials T]

exit codes: 0 success, 1 io/verification failure, 2 parse error, 3 infeasible request";

fn main() {
    std::process::exit(run(std::env::args().skip(1).collect()));
}

fn run(args: Vec<String>) -> i32 {
    let result = match args.first().map(String::as_str) {
        Some("analyze") => cmd_analyze(&args[1..]),
        Some("enumerate") => cmd_enumerate(&args[1..]),
        Some("verify") => cmd_verify(&args[1..]),
        Some("--help") | Some("-h") | Some("help") => {
            println!("{}", USAGE);
            return 0;
        }
        Some(other) => Err(CliError::Parse(format!("unknown subcommand {:?}", other))),
        None => Err(CliError::Parse("missing subcommand".to_string())),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}", e);
            if matches!(e, CliError::Parse(_)) {
                eprintln!("{}", USAGE);
            }
            e.exit_code()
        }
    }
}

/// Write to stdout, treating a closed pipe as a clean exit.
fn print_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match std::io::stdout().write_all(text.as_bytes()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(CliError::Io(e.to_string())),
    }
}

/// Collect `--name value` pairs, rejecting unknown or duplicated flags.
fn parse_flags(args: &[String], allowed: &[&str]) -> Result<BTreeMap<String, String>, CliError> {
    let mut flags = BTreeMap::new();
    let mut iter = args.iter();
    while let Some(flag) = iter.next() {
        let name = flag
            .strip_prefix("--")
            .ok_or_else(|| CliError::Parse(format!("unexpected argument {:?}", flag)))?;
        if !allowed.contains(&name) {
            return Err(CliError::Parse(format!("unknown flag --{}", name)));
        }
        let value = iter
            .next()
            .ok_or_else(|| CliError::Parse(format!("flag --{} needs a value", name)))?;
        if flags.insert(name.to_string(), value.clone()).is_some() {
            return Err(CliError::Parse(format!("flag --{} given twice", name)));
        }
    }
    Ok(flags)
}

fn cmd_analyze(args: &[String]) -> Result<i32, CliError> {
    let flags = parse_flags(
        args,
        &["poly", "families", "a-grid", "ell-range", "format", "out"],
    )?;
    let poly_arg = flags
        .get("poly")
        .ok_or_else(|| CliError::Parse("analyze needs --poly".to_string()))?;
    let polynomial = parse_poly_argument(poly_arg)?;

    let families = match flags.get("families") {
        Some(list) => list
            .split(',')
            .map(|name| {
                Family::from_name(name.trim())
                    .ok_or_else(|| CliError::Parse(format!("unknown family {:?}", name.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?,
        None => vec![Family::Frobenius, Family::Fiedler, Family::Striped, Family::Generalized],
    };
    let mut request = AnalysisRequest::new(polynomial, families)?;

    if let Some(grid) = flags.get("a-grid") {
        let values: Vec<Rational> = grid
            .split(',')
            .map(|v| parse_rational(v).map_err(CliError::Parse))
            .collect::<Result<_, _>>()?;
        request.a_grid = Some(values);
    }
    if let Some(range) = flags.get("ell-range") {
        let (lo, hi) = range
            .split_once("..")
            .ok_or_else(|| CliError::Parse(format!("bad --ell-range {:?}; use lo..hi", range)))?;
        let lo: usize = lo
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("bad ell bound {:?}", lo)))?;
        let hi: usize = hi
            .trim()
            .parse()
            .map_err(|_| CliError::Parse(format!("bad ell bound {:?}", hi)))?;
        request.ell_range = Some((lo, hi));
    }
    let format = match flags.get("format") {
        Some(name) => OutputFormat::from_name(name)?,
        None => OutputFormat::Table,
    };

    let analysis = analyze(&request)?;
    let rendered = emit_report(&analysis, format);
    match flags.get("out") {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Io(format!("cannot write {}: {}", path, e)))?,
        None => print_stdout(&rendered)?,
    }
    Ok(0)
}

/// Enumerations larger than this degree are refused rather than printed.
const ENUMERATE_CAP: usize = 16;

fn cmd_enumerate(args: &[String]) -> Result<i32, CliError> {
    let flags = parse_flags(args, &["n", "family"])?;
    let n: usize = flags
        .get("n")
        .ok_or_else(|| CliError::Parse("enumerate needs --n".to_string()))?
        .parse()
        .map_err(|_| CliError::Parse("bad --n value".to_string()))?;
    let family = flags
        .get("family")
        .ok_or_else(|| CliError::Parse("enumerate needs --family".to_string()))?;
    if n < 2 {
        return Err(CliError::Infeasible("enumeration needs n >= 2".to_string()));
    }
    if n > ENUMERATE_CAP {
        return Err(CliError::Infeasible(format!(
            "enumeration at n = {} exceeds the cap {}",
            n, ENUMERATE_CAP
        )));
    }
    let mut out = String::new();
    match family.as_str() {
        "fiedler" => {
            // Coefficient placement is structural; any monic polynomial of
            // degree n yields the same path census.
            let p = MonicPolynomial::power_plus_one(n)
                .map_err(|e| CliError::Infeasible(e.to_string()))?;
            out.push_str("path  m  initial_step\n");
            let paths = all_lattice_paths(n);
            let count = paths.len();
            for path in paths {
                let form = lattice_to_hessenberg(&path, &p);
                let t = initial_step_size(form.matrix()).expect("lattice forms have a step size");
                out.push_str(&format!("{}  {}  {}\n", path, form.m(), t));
            }
            out.push_str(&format!("total: {} lattice paths\n", count));
        }
        "striped" => {
            out.push_str("tuple  stripes  m\n");
            let tuples = all_stripe_tuples(n);
            let count = tuples.len();
            for tuple in tuples {
                out.push_str(&format!(
                    "{}  {}  {}\n",
                    tuple,
                    tuple.parts().len(),
                    tuple.parts()[0] - 1
                ));
            }
            out.push_str(&format!("total: {} stripe tuples\n", count));
        }
        other => {
            return Err(CliError::Parse(format!(
                "unknown family {:?}; enumerate supports fiedler and striped",
                other
            )))
        }
    }
    print_stdout(&out)?;
    Ok(0)
}

fn cmd_verify(args: &[String]) -> Result<i32, CliError> {
    let flags = parse_flags(args, &["seed", "n-max", "trials"])?;
    let parse_number = |name: &str, default: u64| -> Result<u64, CliError> {
        match flags.get(name) {
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Parse(format!("bad --{} value {:?}", name, v))),
            None => Ok(default),
        }
    };
    let seed = parse_number("seed", 1)?;
    let n_max = parse_number("n-max", 7)? as usize;
    let trials = parse_number("trials", 50)? as usize;
    let report = verify_suite(seed, n_max, trials)?;
    print_stdout(&report.render())?;
    Ok(if report.all_passed() { 0 } else { 1 })
}
