use clap::Parser;

use qpca_cli::commands::{self, Cli, Command};
use qpca_cli::{exit_codes, report};

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze(args) => match commands::analyze::run(&args) {
            Ok(outcome) => {
                let text = report::to_string(&outcome.report);
                if let Err(e) = commands::emit(&args.common.out, &(text + "\n")) {
                    eprintln!("error: cannot write report: {e}");
                    exit_codes::CONFIG
                } else {
                    outcome.exit
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_codes::CONFIG
            }
        },
        Command::Compare(args) => match commands::compare::run(&args) {
            Ok(table) => {
                if let Err(e) = commands::emit(&args.common.out, &table) {
                    eprintln!("error: cannot write table: {e}");
                    exit_codes::CONFIG
                } else {
                    exit_codes::OK
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_codes::CONFIG
            }
        },
        Command::Bench(args) => match commands::bench::run(&args) {
            Ok((table, slope)) => {
                eprintln!("log-log slope of channel error vs steps: {slope:.4}");
                if let Err(e) = commands::emit(&args.common.out, &table) {
                    eprintln!("error: cannot write table: {e}");
                    exit_codes::CONFIG
                } else {
                    exit_codes::OK
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_codes::CONFIG
            }
        },
        Command::Validate(args) => {
            let (lines, all_passed) = commands::validate::run(&args);
            for line in lines {
                println!("{line}");
            }
            if all_passed {
                exit_codes::OK
            } else {
                exit_codes::VALIDATION_FAILED
            }
        }
    };
    std::process::exit(code);
}
