fn main() {
    std::process::exit(geneuler::cli::run(std::env::args_os()));
}
