fn main() {
    std::process::exit(jetinv::cli::main_with_args(std::env::args_os()));
}
