use clap::Parser;

fn main() {
    let cli = cfsl2::cli::Cli::parse();
    std::process::exit(cfsl2::cli::run(&cli));
}
