fn main() {
    std::process::exit(cameral_cubic::cli::main_entry());
}
