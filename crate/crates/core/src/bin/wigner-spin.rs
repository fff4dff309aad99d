fn main() {
    std::process::exit(wigner_spin::cli::main_with_args(std::env::args_os()));
}
