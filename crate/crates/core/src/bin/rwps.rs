fn main() {
    std::process::exit(rwps::cli::run(std::env::args_os()));
}
