fn main() {
    std::process::exit(maxcurve::cli::main_with_args(std::env::args_os()));
}
