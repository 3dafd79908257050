fn main() {
    std::process::exit(nucleus_kit::cli::run_from(std::env::args_os()));
}
