fn main() {
    std::process::exit(almalt::cli::run(std::env::args_os()));
}
