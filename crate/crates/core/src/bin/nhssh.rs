fn main() {
    std::process::exit(nhssh::cli::main_with_args(std::env::args_os()));
}
