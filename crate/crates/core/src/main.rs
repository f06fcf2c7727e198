use clap::Parser;

fn main() {
    let cli = bggc::cli::Cli::parse();
    std::process::exit(bggc::cli::run(cli));
}
