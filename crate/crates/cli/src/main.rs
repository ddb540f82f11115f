use clap::Parser;

fn main() {
    let cli = faa_cli::Cli::parse();
    // keep the exit-code contract (0/2/3) even on an unexpected panic
    let code = match std::panic::catch_unwind(|| faa_cli::run(cli)) {
        Ok(Ok(())) => 0,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
        Err(_) => 3,
    };
    std::process::exit(code);
}
