fn main() {
    std::process::exit(topothin::cli::run(std::env::args_os()));
}
