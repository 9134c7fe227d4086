use clap::{Args, Parser, Subcommand, ValueEnum};
use crsym::classalg::structure_table_csv;
use crsym::decompose::isotypic_table;
use crsym::{run_suite, Status, Suite, SuiteParams, VerificationReport};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact verification of CR sub-Laplacian symmetries and the commutant of S^k_0 sl(V).
#[derive(Parser)]
#[command(name = "crsym", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Record wall-clock timings in the report (breaks byte stability).
        #[arg(long)]
        timing: bool,
    },
    /// Emit a table.
    Table {
        #[command(subcommand)]
        table: TableCmd,
    },
}

#[derive(Subcommand)]
enum TableCmd {
    /// Class-algebra structure constants of Z(C[S_k]).
    Classalg {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Isotypic ranks of S^k_0 sl(N).
    Isotypic {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        dim: usize,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    dim: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    w1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    w2: Option<i64>,
    #[arg(long)]
    deg: Option<u32>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; defaults to `$CRSYM_OUT_DIR/<name>.<ext>` when that is set, else stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: crsym::Error| e.to_string())
}

fn write_output(out: &OutArgs, name: &str, format: Format, body: &str) -> Result<(), String> {
    let path = match (&out.out, std::env::var_os("CRSYM_OUT_DIR")) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => Some(Path::new(&dir).join(format!("{name}.{}", format.ext()))),
        (None, None) => None,
    };
    match path {
        Some(p) => {
            if let Some(parent) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent).map_err(|e| format!("{}: {e}", parent.display()))?;
            }
            std::fs::write(&p, body).map_err(|e| format!("{}: {e}", p.display()))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn report_csv(rep: &VerificationReport) -> Result<String, String> {
    fn walk(w: &mut csv::Writer<Vec<u8>>, r: &VerificationReport, path: &str) -> csv::Result<()> {
        let path = if path.is_empty() { r.name.clone() } else { format!("{path}/{}", r.name) };
        let status = serde_json::to_value(r.status).expect("serializable");
        let first = r.witnesses.first();
        w.write_record([
            path.as_str(),
            status.as_str().unwrap_or_default(),
            &r.checked.to_string(),
            &(r.witnesses.len() as u64 + r.dropped_witnesses).to_string(),
            first.map_or("", |x| x.at.as_str()),
            first.map_or("", |x| x.residual.as_str()),
        ])?;
        r.children.iter().try_for_each(|c| walk(w, c, &path))
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| e.to_string();
    w.write_record(["path", "status", "checked", "witnesses", "first_at", "first_residual"]).map_err(err)?;
    walk(&mut w, rep, "").map_err(err)?;
    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn exit_for(status: Status) -> ExitCode {
    match status {
        Status::Pass => ExitCode::SUCCESS,
        Status::Fail => ExitCode::from(1),
        Status::Finding => ExitCode::from(3),
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Command::Verify { suite, params: a, out, timing } => {
            let params = SuiteParams {
                n: a.n,
                d: a.d,
                s: a.s,
                k: a.k,
                dim: a.dim,
                w1: a.w1,
                w2: a.w2,
                deg: a.deg,
                seed: a.seed,
            };
            let mut rep = VerificationReport::timed(|| {
                run_suite(suite, &params).unwrap_or_else(|e| {
                    let mut r = VerificationReport::new(suite.name());
                    r.fail_with("parameters".into(), e.to_string());
                    r
                })
            });
            if !timing {
                rep.strip_timing();
            }
            let format = out.format.unwrap_or(Format::Json);
            let body = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&rep.to_json()).map_err(|e| e.to_string())? + "\n"
                }
                Format::Csv => report_csv(&rep)?,
            };
            write_output(&out, suite.name(), format, &body)?;
            eprintln!("{suite}: {:?} ({} checks)", rep.status, rep.checked);
            Ok(exit_for(rep.status))
        }
        Command::Table { table: TableCmd::Classalg { k, out } } => {
            let format = out.format.unwrap_or(Format::Csv);
            let body = match format {
                Format::Csv => structure_table_csv(k).map_err(|e| e.to_string())?,
                Format::Json => {
                    let csv = structure_table_csv(k).map_err(|e| e.to_string())?;
                    let mut rd = csv::Reader::from_reader(csv.as_bytes());
                    let header: Vec<String> =
                        rd.headers().map_err(|e| e.to_string())?.iter().map(String::from).collect();
                    let mut rows = serde_json::Map::new();
                    for rec in rd.records() {
                        let rec = rec.map_err(|e| e.to_string())?;
                        let cells: serde_json::Map<String, serde_json::Value> =
                            header.iter().zip(rec.iter()).skip(1).map(|(h, c)| (h.clone(), c.into())).collect();
                        rows.insert(rec[0].to_string(), cells.into());
                    }
                    let v = serde_json::json!({ "k": k, "products": rows });
                    serde_json::to_string_pretty(&v).map_err(|e| e.to_string())? + "\n"
                }
            };
            write_output(&out, &format!("classalg_k{k}"), format, &body)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { table: TableCmd::Isotypic { k, dim, out } } => {
            if k == 0 || k > 3 || !(2..=8).contains(&dim) {
                return Err(format!("isotypic table needs 1 ≤ k ≤ 3 and 2 ≤ dim ≤ 8, got k={k}, dim={dim}"));
            }
            let t = isotypic_table(k, dim).map_err(|e| e.to_string())?;
            let format = out.format.unwrap_or(Format::Json);
            let body = match format {
                Format::Json => serde_json::to_string_pretty(&t).map_err(|e| e.to_string())? + "\n",
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    let err = |e: csv::Error| e.to_string();
                    w.write_record(["k", "dim", "lambda", "rank", "highest_weight", "weyl_dim", "stable"]).map_err(err)?;
                    for r in &t.rows {
                        let join = |v: Vec<String>| v.join(" ");
                        w.write_record([
                            r.k.to_string(),
                            r.dim.to_string(),
                            join(r.lambda.iter().map(u32::to_string).collect()),
                            r.rank.to_string(),
                            join(r.highest_weight.iter().map(i64::to_string).collect()),
                            r.weyl_dim.to_string(),
                            r.stable.to_string(),
                        ])
                        .map_err(err)?;
                    }
                    String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
                }
            };
            write_output(&out, &format!("isotypic_k{k}_n{dim}"), format, &body)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
