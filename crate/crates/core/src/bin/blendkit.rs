use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use blendkit::cli::{error_json, run_text, Command, Options, Status};
use blendkit::{Error, Result, RunConfig};
use clap::Parser;

/// Blending, partial morphisms and 3/2-institution checks over finite signatures.
#[derive(Parser, Debug)]
#[command(name = "blendkit", version)]
struct Args {
    /// validate, compose, factorize, pushout, blend, reduct, satisfy, entails,
    /// classify-theory-morphism, amalgamate, check-square or verify-laws
    command: String,
    /// Names of declarations in the document
    names: Vec<String>,
    /// Document in text or JSON form; `-` reads stdin
    #[arg(long)]
    file: Option<PathBuf>,
    /// TOML file with run bounds
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    iters: Option<usize>,
    /// Largest carrier for many-sorted model enumeration
    #[arg(long)]
    max_carrier: Option<usize>,
    /// Sentence depth for syntactic slices
    #[arg(long)]
    depth: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Print the blend diagram in Graphviz dot form
    #[arg(long)]
    dot: bool,
    /// Use the least admissible domain when amalgamating
    #[arg(long)]
    minimal: bool,
}

fn read(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn config(args: &Args) -> Result<RunConfig> {
    let mut cfg = match &args.config {
        Some(p) => RunConfig::from_toml(&read(p)?)?,
        None => RunConfig::default(),
    };
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.iters {
        cfg.iters = n;
    }
    if let Some(k) = args.max_carrier {
        cfg.max_carrier = k;
    }
    if let Some(d) = args.depth {
        cfg.depth = d;
    }
    Ok(cfg)
}

fn run(args: &Args) -> Result<(Status, String)> {
    let cmd: Command = args.command.parse()?;
    let cfg = config(args)?;
    let text = args.file.as_ref().map(read).transpose()?;
    let opts = Options {
        dot: args.dot,
        minimal: args.minimal,
    };
    let out = run_text(cmd, text.as_deref(), &args.names, opts, &cfg)?;
    Ok((out.status, out.render(args.json && !args.dot)))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { Status::InputError.code() } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    match run(&args) {
        Ok((status, out)) => {
            print!("{out}");
            ExitCode::from(status.code() as u8)
        }
        Err(e) => {
            if args.json {
                print!("{}", error_json(&e));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(Status::of_error(&e).code() as u8)
        }
    }
}
