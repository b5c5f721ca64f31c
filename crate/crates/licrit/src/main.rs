fn main() {
    std::process::exit(licrit::cli::run(std::env::args_os()));
}
