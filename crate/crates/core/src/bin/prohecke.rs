fn main() {
    std::process::exit(prohecke::cli::run(std::env::args_os()));
}
