fn main() {
    std::process::exit(levelnf::cli::main_with_env());
}
