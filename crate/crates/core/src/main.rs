fn main() {
    std::process::exit(chromacy::cli::main());
}
