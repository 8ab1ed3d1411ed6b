fn main() {
    std::process::exit(quasisection::cli::run());
}
