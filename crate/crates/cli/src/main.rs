//! `surgerylab` command-line front end.
//!
//! Every command writes one JSON report to stdout and a short summary to
//! stderr. Exit codes: 0 success, 1 a checked property failed, 2 invalid
//! input.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use surgerylab::invariants::{kp_report, KpReport};
use surgerylab::knots::{
    classify_surgery, toroidal_seifert_piece, ClassificationRecord, KpSign, SurgeryClassification,
};
use surgerylab::triangulation::solver::SolverReport;
use surgerylab::triangulation::{
    parse_triangulation, solve_geometric, verify_mpq_geometry, Agreement, FillingInstruction, SolverParams,
};
use surgerylab::Slope;

const TOL_ENV: &str = "SURGERYLAB_TOL";

#[derive(Parser, Debug)]
#[command(name = "surgerylab", version, about = "Exceptional surgeries on (-2,p,q)-pretzel knots")]
struct Cli {
    /// Print only the JSON report.
    #[arg(long, global = true)]
    json_only: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify r-surgery on P(-2,p,q).
    Classify(ClassifyArgs),
    /// Sweep the knot invariants of K_{p+} and K_{p-}.
    Invariants(InvariantsArgs),
    /// Solve the gluing equations of a `.tri` file.
    Solve(SolveArgs),
    /// Compare the solver with the table on M_{p,q}.
    Mpq(MpqArgs),
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(short, allow_negative_numbers = true)]
    p: i64,
    #[arg(short, allow_negative_numbers = true)]
    q: i64,
    /// Surgery slope, e.g. `20`, `-7/2` or `inf`.
    #[arg(short, allow_hyphen_values = true)]
    r: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Signs {
    Plus,
    Minus,
    Both,
}

#[derive(Args, Debug)]
struct InvariantsArgs {
    /// A single odd p or an inclusive range `a..b` (odd values are swept).
    #[arg(long = "p", allow_hyphen_values = true)]
    p: String,
    #[arg(long, value_enum, default_value = "both")]
    signs: Signs,
}

#[derive(Args, Debug)]
struct SolverOptions {
    /// Residual tolerance; overrides SURGERYLAB_TOL.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    file: PathBuf,
    /// Fill cusp `i` along `slope`; other cusps stay complete.
    #[arg(long = "fill", value_name = "I=SLOPE", allow_hyphen_values = true)]
    fills: Vec<String>,
    #[command(flatten)]
    solver: SolverOptions,
}

#[derive(Args, Debug)]
struct MpqArgs {
    #[arg(short, allow_negative_numbers = true)]
    p: i64,
    #[arg(short, allow_negative_numbers = true)]
    q: i64,
    #[command(flatten)]
    solver: SolverOptions,
}

struct Failure {
    code: u8,
    message: String,
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

/// A finished command: JSON parts, exit code and summary line.
struct Outcome {
    inputs: Value,
    verdicts: Value,
    payload: Value,
    code: u8,
    summary: String,
}

fn solver_params(opts: &SolverOptions) -> Result<SolverParams, Failure> {
    let mut params = SolverParams::default();
    if let Ok(raw) = std::env::var(TOL_ENV) {
        params.tol = raw.trim().parse().map_err(|_| invalid(format!("{TOL_ENV}={raw} is not a number")))?;
    }
    if let Some(t) = opts.tol {
        params.tol = t;
    }
    if let Some(m) = opts.max_iter {
        params.max_iter = m;
    }
    if !(params.tol > 0.0 && params.tol.is_finite()) {
        return Err(invalid(format!("tolerance must be positive, got {}", params.tol)));
    }
    Ok(params)
}

fn classify(args: &ClassifyArgs) -> Result<Outcome, Failure> {
    let r: Slope = args.r.parse().map_err(|e| invalid(format!("{e}")))?;
    let c = classify_surgery(args.p, args.q, &r).map_err(|e| invalid(e.to_string()))?;
    let verdict = c.verdict();
    let seifert_piece = toroidal_seifert_piece(&c).map(|d| d.to_string());
    let summary = match &c {
        SurgeryClassification::Toroidal { .. } => {
            let piece = c
                .magic_piece()
                .map(|m| m.filling.slopes().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "));
            format!(
                "P(-2,{},{})({r}): toroidal, pieces Klein-bottle I-bundle and N({})",
                args.p,
                args.q,
                piece.unwrap_or_default()
            )
        }
        _ => format!("P(-2,{},{})({r}): {}", args.p, args.q, json!(verdict).as_str().unwrap_or("?")),
    };
    Ok(Outcome {
        inputs: json!({ "p": args.p, "q": args.q, "r": r }),
        verdicts: json!({ "verdict": verdict, "seifert_piece": seifert_piece }),
        payload: json!(ClassificationRecord::from(c)),
        code: 0,
        summary,
    })
}

fn parse_p_range(spec: &str) -> Result<Vec<i64>, Failure> {
    let num = |s: &str| s.trim().parse::<i64>().map_err(|_| invalid(format!("bad p value `{s}`")));
    let (lo, hi, single) = match spec.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            (num(a)?, num(b)?, false)
        }
        None => {
            let p = num(spec)?;
            (p, p, true)
        }
    };
    if single && lo % 2 == 0 {
        return Err(invalid(format!("p must be odd (got {lo})")));
    }
    if lo < 5 {
        return Err(invalid(format!("p must be at least 5 (got {lo})")));
    }
    let ps: Vec<i64> = (lo..=hi).filter(|p| p % 2 != 0).collect();
    if ps.is_empty() {
        return Err(invalid(format!("empty range `{spec}`")));
    }
    Ok(ps)
}

fn sweep(ps: &[i64], signs: &[KpSign]) -> Result<Vec<KpReport>, Failure> {
    let jobs: Vec<(i64, KpSign)> = ps.iter().flat_map(|&p| signs.iter().map(move |&s| (p, s))).collect();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(jobs.len()).max(1);
    let chunk = jobs.len().div_ceil(workers);
    let mut records: Vec<KpReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(|&(p, s)| kp_report(p, s)).collect::<Result<Vec<_>, _>>()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect::<Result<Vec<_>, _>>()
    })
    .map_err(|e| invalid(e.to_string()))?
    .into_iter()
    .flatten()
    .collect();
    records.sort_by_key(|r| (r.p, r.sign != KpSign::Plus));
    Ok(records)
}

fn invariants(args: &InvariantsArgs) -> Result<Outcome, Failure> {
    let ps = parse_p_range(&args.p)?;
    let signs: &[KpSign] = match args.signs {
        Signs::Plus => &[KpSign::Plus],
        Signs::Minus => &[KpSign::Minus],
        Signs::Both => &[KpSign::Plus, KpSign::Minus],
    };
    let records = sweep(&ps, signs)?;
    let failing: Vec<String> = records
        .iter()
        .filter(|r| !(r.montesinos_excluded && r.torus_excluded))
        .map(|r| format!("{}{}", r.p, r.sign.symbol()))
        .collect();
    let all_ok = failing.is_empty();
    let line = |r: &KpReport| {
        format!(
            "K_{{{}{}}}: sigma = {}, s in [{}, {}], det = {}, montesinos excluded {}, torus excluded {}",
            r.p,
            r.sign.symbol(),
            r.sigma,
            r.s_lower,
            r.s_upper,
            r.det,
            r.montesinos_excluded,
            r.torus_excluded
        )
    };
    let summary = if records.len() <= 4 {
        records.iter().map(line).collect::<Vec<_>>().join("\n")
    } else if all_ok {
        format!("{} records, every obstruction holds", records.len())
    } else {
        format!("{} records, obstruction fails for {}", records.len(), failing.join(" "))
    };
    Ok(Outcome {
        inputs: json!({ "p": ps, "signs": signs.iter().map(|s| s.symbol().to_string()).collect::<Vec<_>>() }),
        verdicts: json!({ "all_excluded": all_ok, "failing": failing }),
        payload: json!(records),
        code: if all_ok { 0 } else { 1 },
        summary,
    })
}

fn parse_fill(spec: &str, cusps: usize) -> Result<(usize, Slope), Failure> {
    let (i, s) = spec.split_once('=').ok_or_else(|| invalid(format!("--fill expects I=SLOPE, got `{spec}`")))?;
    let i: usize = i.trim().parse().map_err(|_| invalid(format!("bad cusp index in `{spec}`")))?;
    if i >= cusps {
        return Err(invalid(format!("cusp {i} does not exist ({cusps} cusps)")));
    }
    let slope: Slope = s.parse().map_err(|e| invalid(format!("{e}")))?;
    Ok((i, slope))
}

fn solve(args: &SolveArgs) -> Result<Outcome, Failure> {
    let params = solver_params(&args.solver)?;
    let text = std::fs::read_to_string(&args.file).map_err(|e| invalid(format!("{}: {e}", args.file.display())))?;
    let tri = parse_triangulation(&text).map_err(|e| invalid(format!("{}: {e}", args.file.display())))?;
    let mut fillings = vec![FillingInstruction::Complete; tri.num_cusps()];
    for spec in &args.fills {
        let (i, slope) = parse_fill(spec, tri.num_cusps())?;
        fillings[i] = FillingInstruction::Filled(slope);
    }
    let solution = solve_geometric(&tri, &fillings, &params).map_err(|e| invalid(e.to_string()))?;
    let report = SolverReport::from(&solution);
    let fills_json: Vec<Value> = fillings
        .iter()
        .map(|f| match f {
            FillingInstruction::Complete => json!("complete"),
            FillingInstruction::Filled(s) => json!(s),
        })
        .collect();
    let summary = match report.volume {
        Some(v) => format!("{:?} in {} steps, volume {v:.10}", report.status, report.iterations),
        None => format!(
            "{:?} after {} steps{}",
            report.status,
            report.iterations,
            report.diagnostic.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
        ),
    };
    Ok(Outcome {
        inputs: json!({
            "file": args.file.display().to_string(),
            "tetrahedra": tri.num_tetrahedra(),
            "cusps": tri.num_cusps(),
            "fillings": fills_json,
            "solver": params,
        }),
        verdicts: json!({ "status": report.status, "geometric": solution.is_geometric() }),
        code: if solution.is_geometric() { 0 } else { 1 },
        payload: json!(report),
        summary,
    })
}

fn mpq(args: &MpqArgs) -> Result<Outcome, Failure> {
    let params = solver_params(&args.solver)?;
    let r = verify_mpq_geometry(args.p, args.q, &params).map_err(|e| match e {
        surgerylab::triangulation::MpqGeometryError::Param(p) => invalid(p.to_string()),
        other => Failure { code: 1, message: other.to_string() },
    })?;
    let summary = format!(
        "M_{{{},{}}} = N({}, {}): {:?}{}, table says {}, {:?}",
        r.p,
        r.q,
        r.fillings[0],
        r.fillings[1],
        r.status,
        r.volume.map(|v| format!(" volume {v:.10}")).unwrap_or_default(),
        if r.table_exceptional { "exceptional" } else { "hyperbolic" },
        r.agreement
    );
    Ok(Outcome {
        inputs: json!({ "p": r.p, "q": r.q, "solver": params }),
        verdicts: json!({ "status": r.status, "agreement": r.agreement }),
        code: if r.agreement == Agreement::Contradiction { 1 } else { 0 },
        payload: json!(r),
        summary,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let (name, result) = match &cli.command {
        Command::Classify(a) => ("classify", classify(a)),
        Command::Invariants(a) => ("invariants", invariants(a)),
        Command::Solve(a) => ("solve", solve(a)),
        Command::Mpq(a) => ("mpq", mpq(a)),
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (report, code, summary) = match result {
        Ok(o) => (
            json!({
                "command": name,
                "argv": argv,
                "inputs": o.inputs,
                "verdicts": o.verdicts,
                "payload": o.payload,
                "exit_code": o.code,
                "elapsed_ms": elapsed_ms,
            }),
            o.code,
            o.summary,
        ),
        Err(f) => (
            json!({
                "command": name,
                "argv": argv,
                "error": f.message,
                "exit_code": f.code,
                "elapsed_ms": elapsed_ms,
            }),
            f.code,
            format!("error: {}", f.message),
        ),
    };
    // a closed stdout is not an error of the computation
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    if !cli.json_only {
        eprintln!("{summary}");
    }
    ExitCode::from(code)
}
