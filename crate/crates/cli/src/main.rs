use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use nagata_cli::{run, Command, Options, Theorem};
use nagata_core::poly::Field;
use nagata_core::sequences::WprBounds;

#[derive(Parser)]
#[command(name = "nagata", version, about = "Exact commutative algebra workbench")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Args)]
struct Flags {
    /// Weak proregularity search bounds `n_max,defect_max`.
    #[arg(long, global = true, value_parser = parse_bounds, default_value = "3,4")]
    bounds: WprBounds,
    /// Maximum number of automatically generated pool sequences per module.
    #[arg(long, global = true, default_value_t = 256)]
    pool_budget: usize,
    /// Coefficient field for every ring block: `q` or `p:<prime>`.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Treat undetermined outcomes as failures.
    #[arg(long, global = true)]
    strict: bool,
    /// Restrict to modules with this name.
    #[arg(long, global = true)]
    module: Option<String>,
    /// Restrict to sequences with this name.
    #[arg(long, global = true)]
    seq: Option<String>,
    /// Add the automatic pool to the sequences of sequence commands.
    #[arg(long, global = true)]
    auto_pool: bool,
    /// Record wall-clock timings in the report (makes it run-dependent).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Krull dimension of each module.
    Dim { file: PathBuf },
    /// Height of each sequence's ideal on each module.
    Height { file: PathBuf },
    /// Grade via Koszul homology.
    Grade { file: PathBuf },
    /// Polynomial grade, confirmed over R[t].
    Pgrade { file: PathBuf },
    /// Koszul complex ranks, homology vanishing and d^2 = 0.
    Koszul { file: PathBuf },
    /// Regular sequence test.
    Regular { file: PathBuf },
    /// Bounded weak proregularity test.
    Wpr { file: PathBuf },
    /// Parameter sequence test.
    Param { file: PathBuf },
    /// Strong parameter sequence test.
    StrongParam { file: PathBuf },
    /// Cohen-Macaulay verdict for each module.
    Cm { file: PathBuf },
    /// Build R ⋉ M for each nonzero module and certify it.
    TrivialExt { file: PathBuf },
    /// Machine-check one of the supported statements over the input.
    Verify {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Th,
    Corollary,
    LemmaW,
    Thm62,
    Prop53,
    Prop54,
}

fn parse_bounds(s: &str) -> Result<WprBounds, String> {
    let (n, m) = s.split_once(',').ok_or("expected `n,m`")?;
    let n_max: u32 = n.trim().parse().map_err(|_| format!("bad n `{n}`"))?;
    let defect_max: u32 = m.trim().parse().map_err(|_| format!("bad m `{m}`"))?;
    if n_max == 0 || defect_max == 0 {
        return Err("bounds must be at least 1".into());
    }
    Ok(WprBounds { n_max, defect_max })
}

fn parse_field(s: &str) -> Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, file) = match cli.command {
        Cmd::Dim { file } => (Command::Dim, file),
        Cmd::Height { file } => (Command::Height, file),
        Cmd::Grade { file } => (Command::Grade, file),
        Cmd::Pgrade { file } => (Command::Pgrade, file),
        Cmd::Koszul { file } => (Command::Koszul, file),
        Cmd::Regular { file } => (Command::Regular, file),
        Cmd::Wpr { file } => (Command::Wpr, file),
        Cmd::Param { file } => (Command::Param, file),
        Cmd::StrongParam { file } => (Command::StrongParam, file),
        Cmd::Cm { file } => (Command::Cm, file),
        Cmd::TrivialExt { file } => (Command::TrivialExt, file),
        Cmd::Verify { theorem, file } => {
            let t = match theorem {
                TheoremArg::Th => Theorem::Th,
                TheoremArg::Corollary => Theorem::Corollary,
                TheoremArg::LemmaW => Theorem::LemmaW,
                TheoremArg::Thm62 => Theorem::Thm62,
                TheoremArg::Prop53 => Theorem::Prop53,
                TheoremArg::Prop54 => Theorem::Prop54,
            };
            (Command::Verify(t), file)
        }
    };
    let f = cli.flags;
    let opts = Options {
        bounds: f.bounds,
        pool_budget: f.pool_budget,
        strict: f.strict,
        field: f.field,
        module: f.module,
        seq: f.seq,
        auto_pool: f.auto_pool,
        timings: f.timings,
    };
    match execute(command, &file, f.json.as_deref(), &opts) {
        Ok(code) => ExitCode::from(code as u8),
        Err((code, e)) => {
            eprintln!("nagata: {e:#}");
            ExitCode::from(code as u8)
        }
    }
}

fn execute(
    command: Command,
    file: &std::path::Path,
    json: Option<&std::path::Path>,
    opts: &Options,
) -> Result<i32, (i32, anyhow::Error)> {
    let bytes = std::fs::read(file).with_context(|| format!("cannot read {}", file.display())).map_err(|e| (2, e))?;
    let report = run(command, &file.display().to_string(), &bytes, opts).map_err(|e| (e.exit_code(), e.into()))?;
    match json {
        Some(p) if p.as_os_str() == "-" => print!("{}", report.to_json()),
        Some(p) => {
            std::fs::write(p, report.to_json()).with_context(|| format!("cannot write {}", p.display())).map_err(|e| (2, e))?;
            print!("{}", report.to_text());
        }
        None => print!("{}", report.to_text()),
    }
    Ok(report.summary.exit_code)
}
