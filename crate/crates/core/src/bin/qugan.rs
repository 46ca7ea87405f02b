fn main() {
    std::process::exit(qugan::cli::run(std::env::args_os()));
}
