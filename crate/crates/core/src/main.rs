fn main() {
    std::process::exit(lclkit::cli::run(std::env::args()));
}
