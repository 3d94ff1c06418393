fn main() {
    std::process::exit(dhgc::cli::main_with_args(std::env::args_os()));
}
