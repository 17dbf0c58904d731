use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use corank_cli::{run, Command, Options};

/// Presentations and generating sets for ideals and subalgebras of finite
/// co-rank in free associative algebras.
#[derive(Parser)]
#[command(name = "corank", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generators and defining relations of a right ideal, or of its
    /// quotient by `parameters.i_generators`.
    Present(Common),
    /// A finite generating set of a subalgebra, plus rewrites of
    /// `parameters.rewrite`.
    Generate(Common),
    /// The largest two-sided ideal inside a subalgebra, as an algebra document.
    Reduce(Common),
    /// Generators of an ideal of `K⟨X⟩` rewritten as an ideal of the right ideal.
    Restrict(Common),
    /// Defining relations of an extension from the data in `parameters.extension`.
    Compose(Common),
    /// Soundness and completeness checks of a presentation.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Presentation to check; computed from the input when absent.
        #[arg(long)]
        presentation: Option<PathBuf>,
    },
    /// Validate a representation and classify it.
    CheckInput(Common),
}

#[derive(Args)]
struct Common {
    /// Problem document, or `-` for standard input.
    input: String,
    /// Write the result here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    deg_cap: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// Drop generators that are their own relation.
    #[arg(long)]
    simplify: bool,
    /// Record wall-clock timings (the output is then no longer reproducible).
    #[arg(long)]
    timings: bool,
    /// Print a human-readable summary instead of JSON.
    #[arg(long)]
    text: bool,
}

fn read_source(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, presentation) = match cli.command {
        Cmd::Present(c) => (Command::Present, c, None),
        Cmd::Generate(c) => (Command::Generate, c, None),
        Cmd::Reduce(c) => (Command::Reduce, c, None),
        Cmd::Restrict(c) => (Command::Restrict, c, None),
        Cmd::Compose(c) => (Command::Compose, c, None),
        Cmd::Verify { common, presentation } => (Command::Verify, common, presentation),
        Cmd::CheckInput(c) => (Command::CheckInput, c, None),
    };
    match drive(command, &common, presentation) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn drive(command: Command, common: &Common, presentation: Option<PathBuf>) -> anyhow::Result<i32> {
    let input = read_source(&common.input)?;
    let presentation = match presentation {
        Some(p) => Some(read_source(&p.to_string_lossy())?),
        None => None,
    };
    let opts = Options {
        deg_cap: common.deg_cap,
        samples: common.samples,
        seed: common.seed,
        simplify: common.simplify,
        timings: common.timings,
        presentation,
    };
    let outcome = run(command, &input, &opts);
    let mut rendered = if common.text { outcome.text.clone() } else { outcome.document.to_json() };
    if !rendered.ends_with('\n') {
        rendered.push('\n');
    }
    match &common.out {
        Some(path) => std::fs::write(path, &rendered).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{rendered}"),
    }
    if outcome.exit_code() != 0 && !common.text {
        eprintln!("{}", outcome.text.trim_end());
    }
    Ok(outcome.exit_code())
}
