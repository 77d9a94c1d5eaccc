use std::io::{stderr, stdout};

fn main() {
    let code = minorforge::cli::cli_main(
        std::env::args_os(),
        &mut stdout().lock(),
        &mut stderr().lock(),
    );
    std::process::exit(code);
}
