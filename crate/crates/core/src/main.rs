fn main() {
    std::process::exit(aybe_core::cli::run(std::env::args_os()));
}
