use std::path::PathBuf;
use std::process::ExitCode;

use aimage_cli::{commands, Options, Report, EXIT_ERROR};
use clap::{Args, Parser, Subcommand};

/// Construct and certify surjective polynomial maps.
#[derive(Parser, Debug)]
#[command(name = "aimage", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Seed for random slicing and point sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on S-pairs per Gröbner basis.
    #[arg(long, global = true)]
    max_pairs: Option<usize>,
    /// Rounds of fresh random slices before giving up.
    #[arg(long, global = true, default_value_t = 8)]
    max_retries: usize,
    /// Points sampled for the fiber-oracle consistency check.
    #[arg(long, global = true, default_value_t = 100)]
    samples: usize,
    /// Re-check every Gröbner basis with all S-pair reductions.
    #[arg(long, global = true)]
    verify: bool,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis of a polynomials file.
    Gb { file: PathBuf },
    /// Constructible image of a map file.
    Image { map: PathBuf },
    /// Check a map against a target set file or a fan file.
    Certify { map: PathBuf, target: PathBuf },
    /// Toric varieties given by fans.
    #[command(subcommand)]
    Toric(Toric),
    /// Factor an SL_n matrix into transvections.
    Slfactor { matrix: PathBuf },
    /// Orbit map of a word of locally nilpotent derivations.
    Gaword {
        word: PathBuf,
        /// Set file to certify the orbit map against.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Verify the charts of x1^2 - x2^k x3 - 1 = 0.
    Surface {
        #[arg(long, default_value_t = 1)]
        k: i64,
    },
    /// Interpolating curve through the rows of a matrix file.
    Curve { points: PathBuf },
}

#[derive(Subcommand, Debug)]
enum Toric {
    /// Class group, degrees and irrelevant locus.
    Cox { fan: PathBuf },
    /// Whether a map to the Cox space is onto the toric variety.
    Check { fan: PathBuf, map: PathBuf },
}

fn dispatch(cmd: &Command, opts: &Options) -> anyhow::Result<Report> {
    match cmd {
        Command::Gb { file } => commands::gb(file, opts),
        Command::Image { map } => commands::image(map, opts),
        Command::Certify { map, target } => commands::certify(map, target, opts),
        Command::Toric(Toric::Cox { fan }) => commands::toric_cox(fan, opts),
        Command::Toric(Toric::Check { fan, map }) => commands::toric_check_files(fan, map, opts),
        Command::Slfactor { matrix } => commands::slfactor(matrix, opts),
        Command::Gaword { word, target } => commands::gaword(word, target.as_deref(), opts),
        Command::Surface { k } => commands::surface(*k, opts),
        Command::Curve { points } => commands::curve(points, opts),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let opts = Options { seed: g.seed, max_pairs: g.max_pairs, max_retries: g.max_retries, samples: g.samples, verify: g.verify };
    match dispatch(&cli.command, &opts) {
        Ok(report) => {
            if g.json {
                println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            } else {
                print!("{}", report.render_text());
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            if g.json {
                println!("{}", serde_json::json!({ "verdict": "error", "exit_code": EXIT_ERROR, "error": format!("{e:#}") }));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(EXIT_ERROR as u8)
        }
    }
}
