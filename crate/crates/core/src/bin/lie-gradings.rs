//! Command-line front end; see `lie-gradings --help`.

fn main() {
    std::process::exit(lie_gradings::cli::main_with_args(std::env::args_os()));
}
