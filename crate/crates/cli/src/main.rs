use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use chaincond_cli::{run, Cli};

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Ok(threads) = std::env::var("CHAINCOND_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global()
                    .expect("thread pool is configured once");
            }
            _ => {
                eprintln!("error: CHAINCOND_THREADS must be a positive integer, got {threads:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli, &argv[1..]) {
        Ok(report) => {
            let text = if cli.json {
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                report.to_text()
            };
            // a closed pipe is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
