fn main() {
    std::process::exit(moddiv::cli::run());
}
