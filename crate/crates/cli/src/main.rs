fn main() {
    std::process::exit(calvo_cli::args::main_with_args(std::env::args_os()));
}
