fn main() {
    std::process::exit(hyperring_cli::run(std::env::args_os()));
}
