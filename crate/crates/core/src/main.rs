fn main() {
    std::process::exit(api_evolve::cli::run(std::env::args_os()));
}
