//! Command-line front end for the toric intersection-theory engine.
//!
//! Fans travel as JSON objects `{dim, rays, max_cones}`, databases as JSON
//! lines with an optional "name" per line; `-` reads standard input. Output
//! is compact JSON by default, aligned text with `--pretty` (the two data
//! emitters `bundle` and `delpezzo` always write wire format). Exit codes:
//! 0 success, 1 usage error, 2 validation or input error. A scan that
//! collected per-line errors still prints its full report, then exits 2.

use std::fmt::Write as _;
use std::io::{Read as _, Write as _};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::Serialize;
use toric::chow::{Chow, CycleClass};
use toric::construct::{del_pezzo_database, kleinschmidt_bundle, BundleSpec};
use toric::fano::{analyze_fan, rank2_sweep};
use toric::report::{self, fano_report_json, rational_string, to_i64, FanRecordJson, ScanOptions};
use toric::{Cone, Error, Fan, Result};

#[derive(Parser)]
#[command(name = "toric", version, about = "Exact 2-Fano tests on smooth complete toric varieties")]
struct Cli {
    /// Aligned text output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fan and report its basic shape.
    Check { input: String },
    /// Intersection-number polynomial of an orbit closure.
    Class {
        input: String,
        /// Ray ids of the cone, e.g. 0,2; omit for the fundamental class.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        cone: Vec<usize>,
    },
    /// Curve class of a wall.
    Curve {
        input: String,
        /// Ray ids of the wall, e.g. 0,1.
        #[arg(long, value_delimiter = ',', required = true)]
        wall: Vec<usize>,
    },
    /// Classify an invariant surface and pair it against ch2.
    Surface {
        input: String,
        /// Ray ids of a (d-2)-cone; omit for the origin (d = 2).
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        cone: Vec<usize>,
    },
    /// Chern degree data: c1^d, c1^{d-2}c2, ch2 c1^{d-2}, euler number.
    Chern { input: String },
    /// Full Fano / 2-Fano analysis of one fan.
    TwoFano { input: String },
    /// Rank of the surface-against-divisor-pair intersection matrix.
    Ne2Rank { input: String },
    /// Analyze every fan in a JSON-lines database.
    Scan {
        input: String,
        /// Skip the surface sweep on fans the wall test or the degree
        /// filter already rules out; verdicts are unchanged.
        #[arg(long)]
        fast: bool,
        /// Worker threads; defaults to one per core.
        #[arg(long, env = "TORIC_JOBS")]
        jobs: Option<usize>,
    },
    /// Emit the fan of a projectivized split bundle over projective space.
    Bundle {
        /// Fiber dimension plus one (number of summands).
        #[arg(long)]
        m: usize,
        /// Base dimension plus one.
        #[arg(long)]
        n: usize,
        /// Twists a1 >= a2 >= ... >= a_{m-1} >= 0, e.g. 2,1,0.
        #[arg(long, value_delimiter = ',', required = true)]
        twists: Vec<i64>,
    },
    /// Emit the five smooth toric del Pezzo surfaces as a database.
    Delpezzo,
    /// Compare rank-two closed forms against the engine across a dimension.
    SweepRank2 {
        #[arg(long)]
        dim: usize,
        /// Largest twist sum to sweep.
        #[arg(long)]
        budget: i64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome { output, clean }) => {
            let code = if clean { ExitCode::SUCCESS } else { ExitCode::from(2) };
            match emit(&output) {
                Ok(()) => code,
                // Downstream closed the pipe (e.g. `| head`); not an error.
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(output: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(output.as_bytes())?;
    out.write_all(b"\n")?;
    out.flush()
}

struct Outcome {
    output: String,
    /// False only for a scan whose report collected per-line errors.
    clean: bool,
}

impl Outcome {
    fn clean(output: String) -> Outcome {
        Outcome { output, clean: true }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Check { input } => check(&load_fan(input)?, pretty),
        Command::Class { input, cone } => {
            let fan = load_fan(input)?;
            let class = Chow::new(&fan).class_polynomial(&Cone::new(cone.clone()))?;
            Ok(Outcome::clean(render_class(&class, pretty)?))
        }
        Command::Curve { input, wall } => {
            let fan = load_fan(input)?;
            let class = Chow::new(&fan).curve_class(&Cone::new(wall.clone()))?;
            Ok(Outcome::clean(render_class(&class, pretty)?))
        }
        Command::Surface { input, cone } => surface(&load_fan(input)?, cone, pretty),
        Command::Chern { input } => chern(&load_fan(input)?, pretty),
        Command::TwoFano { input } => two_fano(&load_fan(input)?, pretty),
        Command::Ne2Rank { input } => {
            let fan = load_fan(input)?;
            let rank = Chow::new(&fan).n2_rank()?;
            #[derive(Serialize)]
            struct RankJson {
                rank: usize,
            }
            if pretty {
                Ok(Outcome::clean(format!("rank  {rank}")))
            } else {
                Ok(Outcome::clean(to_json(&RankJson { rank })?))
            }
        }
        Command::Scan { input, fast, jobs } => scan(input, *fast, *jobs, pretty),
        Command::Bundle { m, n, twists } => {
            let spec = BundleSpec::new(*m, *n, twists.clone())?;
            let fan = kleinschmidt_bundle(spec)?;
            to_json(&fan.to_json()?).map(Outcome::clean)
        }
        Command::Delpezzo => {
            let mut lines = Vec::new();
            for (name, fan) in del_pezzo_database()? {
                lines.push(report::database_line(Some(&name), &fan)?);
            }
            Ok(Outcome::clean(lines.join("\n")))
        }
        Command::SweepRank2 { dim, budget } => sweep(*dim, *budget, pretty),
    }
}

fn load_fan(path: &str) -> Result<Fan> {
    Fan::from_json_str(&read_input(path)?)
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Io { detail: format!("stdin: {e}") })?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Io { detail: format!("{path}: {e}") })
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|e| Error::Json { detail: e.to_string() })
}

/// Two-column aligned text: keys padded to the widest one.
fn aligned(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:width$}  {v}");
    }
    out.pop();
    out
}

fn check(fan: &Fan, pretty: bool) -> Result<Outcome> {
    #[derive(Serialize)]
    struct CheckJson {
        smooth: bool,
        complete: bool,
        picard: usize,
    }
    // Validation already proved both properties; the fields restate them
    // for consumers that only look at this record.
    let record = CheckJson { smooth: true, complete: true, picard: fan.picard() };
    if pretty {
        Ok(Outcome::clean(aligned(&[
            ("smooth".into(), "true".into()),
            ("complete".into(), "true".into()),
            ("picard".into(), record.picard.to_string()),
        ])))
    } else {
        to_json(&record).map(Outcome::clean)
    }
}

fn render_class(class: &CycleClass, pretty: bool) -> Result<String> {
    if !pretty {
        return to_json(class);
    }
    let mut rows = vec![("degree".into(), class.degree().to_string())];
    for (rays, coeff) in class.coeffs() {
        let key: Vec<String> = rays.iter().map(usize::to_string).collect();
        rows.push((key.join(","), coeff.to_string()));
    }
    Ok(aligned(&rows))
}

fn surface(fan: &Fan, cone: &[usize], pretty: bool) -> Result<Outcome> {
    let tau = Cone::new(cone.to_vec());
    let mut chow = Chow::new(fan);
    let (kind, class) = toric::surface::surface_class(&mut chow, &tau)?;
    let pairing = toric::surface::ch2_pair(&class)?;
    #[derive(Serialize)]
    struct SurfaceJson {
        cone: Vec<usize>,
        kind: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        alpha: Option<i64>,
        ch2_pair: String,
        class: CycleClass,
    }
    let record = SurfaceJson {
        cone: tau.to_vec(),
        kind: kind.name().to_string(),
        alpha: kind.alpha().map(|a| to_i64(a)).transpose()?,
        ch2_pair: rational_string(&pairing),
        class,
    };
    if pretty {
        let mut rows = vec![
            ("cone".into(), format!("{tau}")),
            ("kind".into(), record.kind.clone()),
        ];
        if let Some(alpha) = record.alpha {
            rows.push(("alpha".into(), alpha.to_string()));
        }
        rows.push(("ch2_pair".into(), record.ch2_pair.clone()));
        let mut out = aligned(&rows);
        out.push('\n');
        out.push_str(&render_class(&record.class, true)?);
        Ok(Outcome::clean(out))
    } else {
        to_json(&record).map(Outcome::clean)
    }
}

fn chern(fan: &Fan, pretty: bool) -> Result<Outcome> {
    let degrees = Chow::new(fan).chern_degrees()?;
    #[derive(Serialize)]
    struct ChernJson {
        c1_top: i64,
        c1_c2: i64,
        ch2_c1: String,
        euler: i64,
    }
    let record = ChernJson {
        c1_top: to_i64(&degrees.c1_top)?,
        c1_c2: to_i64(&degrees.c1_c2)?,
        ch2_c1: rational_string(&degrees.ch2_c1),
        euler: to_i64(&degrees.euler)?,
    };
    if pretty {
        Ok(Outcome::clean(aligned(&[
            ("c1_top".into(), record.c1_top.to_string()),
            ("c1_c2".into(), record.c1_c2.to_string()),
            ("ch2_c1".into(), record.ch2_c1.clone()),
            ("euler".into(), record.euler.to_string()),
        ])))
    } else {
        to_json(&record).map(Outcome::clean)
    }
}

fn two_fano(fan: &Fan, pretty: bool) -> Result<Outcome> {
    let report = analyze_fan(fan, false)?;
    let record = fano_report_json(0, None, &report)?;
    if pretty {
        Ok(Outcome::clean(render_fan_record(&record)))
    } else {
        to_json(&record).map(Outcome::clean)
    }
}

fn render_fan_record(record: &FanRecordJson) -> String {
    let mut rows = vec![
        ("dim".to_string(), record.dim.to_string()),
        ("n_rays".into(), record.n_rays.to_string()),
        ("picard".into(), record.picard.to_string()),
        ("euler".into(), record.euler.to_string()),
        ("c1_top".into(), record.c1_top.to_string()),
        ("is_fano".into(), record.is_fano.to_string()),
    ];
    if let Some(w) = &record.fano_witness {
        rows.push(("fano_witness".into(), format!("wall {:?} degree {}", w.wall, w.degree)));
    }
    if let Some(v) = record.lemma_value {
        rows.push(("lemma_value".into(), v.to_string()));
    }
    rows.push(("lemma_pass".into(), record.lemma_pass.to_string()));
    rows.push(("surfaces_swept".into(), record.surfaces_swept.to_string()));
    for p in &record.pairings {
        let alpha = p.alpha.map(|a| format!(" alpha {a}")).unwrap_or_default();
        rows.push((format!("surface {:?}", p.cone), format!("{}{} ch2 {}", p.kind, alpha, p.pairing)));
    }
    rows.push(("is_two_fano".into(), record.is_two_fano.to_string()));
    if let Some(w) = &record.two_fano_witness {
        rows.push(("two_fano_witness".into(), format!("cone {:?} ch2 {}", w.cone, w.pairing)));
    }
    aligned(&rows)
}

fn scan(input: &str, fast: bool, jobs: Option<usize>, pretty: bool) -> Result<Outcome> {
    let data = read_input(input)?;
    let report = report::scan_database(&data, ScanOptions { fast, jobs });
    let clean = report.errors.is_empty();
    if pretty {
        let mut rows = vec![
            ("version".to_string(), report.version.clone()),
            ("input_digest".into(), report.input_digest.clone()),
            ("total".into(), report.aggregate.total.to_string()),
            ("fano".into(), report.aggregate.fano.to_string()),
            ("lemma_pass".into(), report.aggregate.lemma_pass.to_string()),
            ("two_fano".into(), report.aggregate.two_fano.to_string()),
            ("errors".into(), report.aggregate.errors.to_string()),
        ];
        for fan in &report.fans {
            let name = fan.name.clone().unwrap_or_else(|| format!("line {}", fan.index));
            rows.push((
                name,
                format!(
                    "d={} rays={} fano={} lemma={} two_fano={}",
                    fan.dim, fan.n_rays, fan.is_fano, fan.lemma_pass, fan.is_two_fano
                ),
            ));
        }
        for e in &report.errors {
            rows.push((format!("line {}", e.line), e.error.clone()));
        }
        Ok(Outcome { output: aligned(&rows), clean })
    } else {
        Ok(Outcome { output: to_json(&report)?, clean })
    }
}

fn sweep(dim: usize, budget: i64, pretty: bool) -> Result<Outcome> {
    let sweep = rank2_sweep(dim, budget)?;
    #[derive(Serialize)]
    struct SweepJson {
        discrepancies: Vec<BundleSpec>,
        two_fano_count: usize,
    }
    let record = SweepJson {
        discrepancies: sweep.discrepancies,
        two_fano_count: sweep.records.iter().filter(|r| r.two_fano).count(),
    };
    if pretty {
        let mut rows = vec![
            ("discrepancies".to_string(), record.discrepancies.len().to_string()),
            ("two_fano_count".into(), record.two_fano_count.to_string()),
        ];
        for r in sweep.records.iter().filter(|r| r.two_fano) {
            let spec = &r.spec;
            rows.push((
                format!("m={} n={}", spec.m, spec.n),
                format!("twists {:?} ch2_s2 {}", spec.twists, r.ch2_s2),
            ));
        }
        Ok(Outcome::clean(aligned(&rows)))
    } else {
        to_json(&record).map(Outcome::clean)
    }
}
