fn main() {
    std::process::exit(a2count_cli::main_with_args(std::env::args_os()));
}
