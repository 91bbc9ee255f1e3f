use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = twocopy_cli::Cli::parse();
    match twocopy_cli::execute(cli) {
        Ok(rendered) => {
            if !rendered.wrote_file {
                print!("{}", rendered.text);
            }
            ExitCode::from(rendered.exit)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
