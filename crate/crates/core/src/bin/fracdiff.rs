fn main() {
    std::process::exit(fracdiff::harness::cli::main_with_std());
}
