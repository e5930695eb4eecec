//! Driver for the `momentlab` binary. [`run`] takes argv and returns the exit
//! code: 0 success, 1 failed check or runtime error, 2 bad usage.

pub mod args;
mod commands;
pub mod config;

use std::ffi::OsString;
use std::path::Path;

use clap::error::ErrorKind;

pub use args::RunConfig;
pub use config::{Settings, Tolerances};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] momentlab::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.display().to_string(), source }
    }

    pub fn exit_code(&self) -> i32 {
        use momentlab::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Lib(E::Singular | E::Length { .. }) => 1,
            CliError::Lib(_) => 2,
            _ => 1,
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::parse_from_args(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    let env = std::env::var(config::THREADS_ENV).ok();
    match run_config(&cfg, env.as_deref()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Execute a parsed command. Work runs inside a private rayon pool sized from
/// the resolved settings.
pub fn run_config(cfg: &RunConfig, env_threads: Option<&str>) -> Result<i32, CliError> {
    let settings = Settings::resolve(cfg, env_threads)?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = settings.threads {
        pool = pool.num_threads(n);
    }
    pool.build()?.install(|| commands::execute(&cfg.command, &settings))
}
