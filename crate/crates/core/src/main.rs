fn main() {
    std::process::exit(neutrix::cli::main_with_args(std::env::args_os()));
}
