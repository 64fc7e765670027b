use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::json;

use hopfva_cli::{run, Options, Status, Workspace, COMMANDS};

#[derive(Parser, Debug)]
#[command(name = "hopfva", version, about = "Exact checks for Hopf actions on commutative differential vertex algebras")]
struct Cli {
    #[arg(value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
    command: String,
    /// Workspace definition files.
    #[arg(long, num_args = 1.., required = true)]
    workspace: Vec<PathBuf>,
    #[arg(long)]
    object: Option<String>,
    /// Character table for the isotypic commands.
    #[arg(long)]
    table: Option<String>,
    #[arg(long)]
    character: Option<String>,
    /// Second character for `distinguish`.
    #[arg(long)]
    against: Option<String>,
    /// Seed polynomial for `reach`, sample for `commutant`.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    cap_d: Option<u32>,
    #[arg(long)]
    order_k: Option<usize>,
    #[arg(long)]
    conductor: Option<u32>,
    /// Tensor arity for `pin-check`.
    #[arg(long)]
    n: Option<usize>,
    /// Laurent bound B for `z2-kernel`.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long)]
    s_max: Option<usize>,
    #[arg(long)]
    budget: Option<usize>,
    /// Print only the machine block.
    #[arg(long)]
    json_only: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let opts = Options {
        object: cli.object.clone(),
        table: cli.table,
        character: cli.character,
        against: cli.against,
        seed: cli.seed,
        cap_d: cli.cap_d,
        order_k: cli.order_k,
        conductor: cli.conductor,
        n: cli.n,
        bound: cli.bound,
        s_max: cli.s_max,
        budget: cli.budget,
    };
    let (status, machine, human) = match Workspace::load(&cli.workspace) {
        Ok(ws) => {
            let r = run(&ws, &cli.command, &opts);
            (r.status, r.machine_text(), r.human)
        }
        Err(e) => {
            let machine = json!({
                "command": cli.command,
                "object": cli.object,
                "status": Status::Error,
                "result": { "error": e.to_string() },
            });
            (Status::Error, serde_json::to_string_pretty(&machine).expect("json"), format!("error: {e}"))
        }
    };
    println!("{machine}");
    if !cli.json_only {
        println!("---");
        println!("{human}");
        println!("elapsed: {} ms", start.elapsed().as_millis());
    }
    ExitCode::from(status.exit_code() as u8)
}
