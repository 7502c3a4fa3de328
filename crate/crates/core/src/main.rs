fn main() {
    std::process::exit(coves::cli::run(std::env::args_os()));
}
