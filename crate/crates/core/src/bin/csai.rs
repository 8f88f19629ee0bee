use clap::error::ErrorKind;
use clap::Parser;

use csai::cli::{read_input, run_with, Cli};

fn main() {
    if let Err(e) = Cli::try_parse() {
        if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
            e.exit();
        }
    }
    let response = run_with(std::env::args_os(), read_input);
    print!("{}", response.render());
    std::process::exit(response.code);
}
