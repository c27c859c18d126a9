fn main() {
    std::process::exit(operator_lens::cli::run());
}
