use std::io::stdout;
use std::process::exit;

fn main() {
    let code = sqroot_cli::run(std::env::args_os(), &mut stdout());
    exit(code);
}
