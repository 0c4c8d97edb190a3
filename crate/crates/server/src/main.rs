use std::io::{self, BufReader};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::Parser;
use nliq_server::{http, repl, AppConfig};
use tracing_subscriber::EnvFilter;

const EXIT_CONFIG: u8 = 1;
const EXIT_IO: u8 = 2;

/// Ask questions about a CSV-backed database in plain English.
#[derive(Debug, Parser)]
#[command(name = "nliq", version)]
struct Cli {
    /// TOML file naming the schema, data directory and lexicon.
    #[arg(long, default_value = "data/nliq.toml")]
    config: PathBuf,
    /// Serve the HTTP API instead of starting the REPL.
    #[arg(long)]
    serve: bool,
    /// Port for --serve; overrides the config file.
    #[arg(long)]
    port: Option<u16>,
    /// Answer one question and exit.
    #[arg(long, short)]
    question: Option<String>,
    /// Print how each phrase of the question was mapped.
    #[arg(long)]
    trace: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let default_level = if cli.serve { "info" } else { "warn" };
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| EnvFilter::new(default_level)))
        .with_writer(io::stderr)
        .init();

    let mut config = match AppConfig::load(&cli.config) {
        Ok(c) => c,
        Err(e) => return fail(EXIT_CONFIG, e),
    };
    if let Some(port) = cli.port {
        config.port = port;
    }
    config.trace |= cli.trace;
    let engine = match config.engine() {
        Ok(e) => e,
        Err(e) => return fail(EXIT_CONFIG, e),
    };

    let result = if cli.serve {
        serve(&config, engine)
    } else if let Some(q) = &cli.question {
        repl::write_response(&mut io::stdout().lock(), &engine.answer_question(q), config.trace)
    } else {
        repl::run_repl(&engine, BufReader::new(io::stdin().lock()), io::stdout().lock(), config.trace)
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(EXIT_IO, e),
    }
}

fn fail(code: u8, err: impl std::fmt::Display) -> ExitCode {
    eprintln!("nliq: {err}");
    ExitCode::from(code)
}

fn serve(config: &AppConfig, engine: nliq_core::Engine) -> io::Result<()> {
    let mut app = http::router(Arc::new(engine));
    if let Some(origin) = &config.allow_origin {
        app = http::with_cors(app, origin).map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    }
    let addr: SocketAddr = format!("{}:{}", config.host, config.port)
        .parse()
        .map_err(|e| io::Error::new(io::ErrorKind::InvalidInput, e))?;
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        tracing::info!(%addr, "listening");
        axum::serve(listener, app)
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
    })
}
