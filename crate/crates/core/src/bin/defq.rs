fn main() {
    std::process::exit(defq::cli::main_with_args(std::env::args_os()));
}
