fn main() {
    std::process::exit(selcha::cli::main_from_env());
}
