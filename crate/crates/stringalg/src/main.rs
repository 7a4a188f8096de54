fn main() {
    std::process::exit(stringalg::cli::run());
}
