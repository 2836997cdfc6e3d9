fn main() {
    std::process::exit(loopstate::cli::run());
}
