fn main() {
    std::process::exit(qdiscord::cli::main());
}
