//! `sfwm` command-line front end: configuration loading, subcommands,
//! CSV/JSON/SVG emission and run manifests.

pub mod args;
pub mod commands;
pub mod error;
pub mod manifest;
pub mod stats;
pub mod svg;
pub mod table;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;

pub use args::Cli;
pub use error::CliError;

/// What a command produced: the primary document, an optional figure,
/// warnings for standard error and a non-fatal failure status.
#[derive(Debug, Default)]
pub struct Output {
    pub primary: Vec<u8>,
    pub svg: Option<String>,
    pub warnings: Vec<String>,
    pub status: Option<CliError>,
}

/// Runs the tool on a full argument vector and returns the process exit code.
pub fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    let config_path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config PATH is required".into()))?;
    let bytes = std::fs::read(config_path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", config_path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|_| CliError::Config("configuration is not UTF-8".into()))?;
    let config = sfwm_core::config::parse_config(text)?;
    if cli.svg && cli.out.is_none() {
        return Err(CliError::Config("--svg requires --out PATH".into()));
    }
    if !cli.quiet {
        for line in commands::summary(&config) {
            eprintln!("{line}");
        }
    }
    let output = commands::dispatch(&cli.command, config)?;
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    match &cli.out {
        Some(path) => {
            write_with_manifest(path, &output.primary, &bytes, argv)?;
            if let (true, Some(svg)) = (cli.svg, &output.svg) {
                write_with_manifest(&svg_path(path), svg.as_bytes(), &bytes, argv)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(&output.primary)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    match output.status {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

/// Figure path next to the primary output: `run.csv` → `run.svg`.
pub fn svg_path(out: &Path) -> PathBuf {
    out.with_extension("svg")
}

fn write_with_manifest(path: &Path, data: &[u8], config: &[u8], argv: &[String]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("{}: {e}", path.display()));
    std::fs::write(path, data).map_err(io)?;
    let manifest = manifest::RunManifest::new(config, path, argv);
    let sidecar = manifest::sidecar_path(path);
    std::fs::write(&sidecar, manifest.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", sidecar.display())))
}
