fn main() {
    std::process::exit(radicals::cli::run(std::env::args_os()));
}
