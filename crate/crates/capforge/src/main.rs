fn main() {
    std::process::exit(capforge::cli::main_with_args(std::env::args_os()));
}
