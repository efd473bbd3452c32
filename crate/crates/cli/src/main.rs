use std::process::ExitCode;

use clap::Parser;
use hopfpi_cli::{commands, Args};
use serde_json::json;

fn main() -> ExitCode {
    let args = Args::parse();
    let out = commands::run(&args);
    println!("{}", serde_json::to_string_pretty(&out.json).unwrap_or_else(|e| json!({"error": e.to_string()}).to_string()));
    if let Some(msg) = &out.diagnostic {
        eprintln!("hopfpi: {msg}");
    }
    ExitCode::from(out.code)
}
