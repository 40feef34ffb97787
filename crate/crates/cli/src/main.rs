use std::io;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use htsig_cli::commands::{self, BenchArgs, KeygenArgs, OutputFormat, SignArgs, VerifyArgs};
use htsig_cli::exit;

/// Stateless hash-based signatures over Streebog-256 or SHA-256.
///
/// Exit codes: 0 success / valid signature, 1 invalid signature, 2 usage
/// error, 3 I/O error, 4 malformed or mismatched file.
#[derive(Parser)]
#[command(name = "htsig", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Bin,
    Hex,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Bin => OutputFormat::Bin,
            Format::Hex => OutputFormat::Hex,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Generate a key pair, writing <out>.pk and <out>.sk.
    Keygen {
        #[arg(long, default_value = "128s")]
        paramset: String,
        #[arg(long, default_value = "streebog256")]
        backend: String,
        /// Output prefix.
        #[arg(long)]
        out: PathBuf,
        /// Hex seed of 3n bytes. Reproducible keys for testing only.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_enum, default_value = "bin")]
        format: Format,
        /// Allow the insecure toy parameter set.
        #[arg(long)]
        insecure_toy: bool,
    },
    /// Sign a file (or standard input).
    Sign {
        #[arg(long)]
        sk: PathBuf,
        /// Message file; omit or use `-` for standard input.
        #[arg(long)]
        msg: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        /// Mix fresh randomness into the signature.
        #[arg(long)]
        randomized: bool,
        #[arg(long, value_enum, default_value = "bin")]
        format: Format,
    },
    /// Verify a signature. Exits 0 if valid, 1 if not.
    Verify {
        #[arg(long)]
        pk: PathBuf,
        #[arg(long)]
        sig: PathBuf,
        /// Message file; omit or use `-` for standard input.
        #[arg(long)]
        msg: Option<PathBuf>,
    },
    /// Time keygen, sign and verify and print a comparison table.
    Bench {
        /// `all` or a comma-separated list of parameter sets.
        #[arg(long, default_value = "all")]
        paramset: String,
        /// `all` or a comma-separated list of backends.
        #[arg(long, default_value = "all")]
        backend: String,
        #[arg(long, default_value_t = 10)]
        iterations: u32,
        /// Also write the records as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() {
    let cli = Cli::parse();
    let verifying = matches!(cli.command, Command::Verify { .. });
    let mut stdout = io::stdout();
    let mut stderr = io::stderr();
    let result = match cli.command {
        Command::Keygen {
            paramset,
            backend,
            out,
            seed,
            format,
            insecure_toy,
        } => commands::keygen(
            &KeygenArgs {
                paramset,
                backend,
                out,
                seed,
                format: format.into(),
                insecure_toy,
            },
            &mut stderr,
        ),
        Command::Sign {
            sk,
            msg,
            out,
            randomized,
            format,
        } => commands::sign(&SignArgs {
            sk,
            msg,
            out,
            randomized,
            format: format.into(),
        }),
        Command::Verify { pk, sig, msg } => commands::verify(&VerifyArgs { pk, sig, msg }),
        Command::Bench {
            paramset,
            backend,
            iterations,
            csv,
            seed,
        } => commands::bench(
            &BenchArgs {
                paramset,
                backend,
                iterations,
                csv,
                seed,
            },
            &mut stdout,
            &mut stderr,
        ),
    };
    let code = match result {
        Ok(code) => {
            if verifying {
                eprintln!("signature {}", if code == exit::VALID { "valid" } else { "INVALID" });
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

