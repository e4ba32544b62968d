fn main() {
    std::process::exit(lcbv_cli::main_with_args(std::env::args_os()));
}
