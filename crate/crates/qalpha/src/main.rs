fn main() {
    std::process::exit(qalpha::cli::main_from_args(std::env::args_os()));
}
