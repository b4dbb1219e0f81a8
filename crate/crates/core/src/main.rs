fn main() {
    std::process::exit(cohomforge::cli::main_with_args(std::env::args_os()));
}
