fn main() {
    std::process::exit(gcx::cli::main());
}
