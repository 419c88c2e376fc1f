use clap::Parser;

fn main() {
    let cli = jc_gqd_cli::Cli::parse();
    match jc_gqd_cli::run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(2);
        }
    }
}
