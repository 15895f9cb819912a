use clap::Parser;

fn main() {
    let cli = repi::cli::Cli::parse();
    let code = repi::cli::run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
