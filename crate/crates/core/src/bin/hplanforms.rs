fn main() {
    std::process::exit(hplanforms::cli::main_with_args(std::env::args_os()));
}
