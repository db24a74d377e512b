fn main() {
    std::process::exit(steinlab::cli::main_from_args(std::env::args_os()));
}
