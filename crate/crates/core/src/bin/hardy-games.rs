use clap::Parser;
use hardy_games::commands::{run, Cli};

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => print!("{out}"),
        Err(e) => {
            eprintln!("{}", e.to_json());
            std::process::exit(e.exit_code());
        }
    }
}
