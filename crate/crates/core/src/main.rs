fn main() {
    std::process::exit(freenil::cli::main());
}
