fn main() {
    std::process::exit(ancestral::cli::main_with_args(std::env::args_os()));
}
