use std::io::Write;

fn main() {
    let result = k3cone::cli::dispatch(std::env::args());
    print!("{}", result.stdout);
    eprint!("{}", result.stderr);
    std::io::stdout().flush().ok();
    std::process::exit(result.exit_code);
}
