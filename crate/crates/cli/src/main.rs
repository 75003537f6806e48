fn main() {
    std::process::exit(ordnung_cli::run(std::env::args_os()));
}
