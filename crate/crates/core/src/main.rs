use clap::Parser;
use confrb::cli::{error_code, error_json, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
            } else {
                print!("{}", report.to_text());
            }
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            if cli.json {
                println!("{}", error_json(&e));
            } else {
                eprintln!("error: {e}");
            }
            std::process::exit(error_code(&e));
        }
    }
}
