use clap::Parser;

fn main() {
    let cli = confmod::cli::Cli::parse();
    let outcome = confmod::cli::run(&cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.status);
}
