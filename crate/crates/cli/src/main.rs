fn main() {
    std::process::exit(graphbound_cli::main_with_args(std::env::args_os()));
}
