fn main() {
    std::process::exit(juliahull::cli::run(std::env::args_os()));
}
