fn main() {
    std::process::exit(gwa_core::cli::main_with_args(std::env::args_os()));
}
