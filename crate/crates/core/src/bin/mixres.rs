fn main() {
    std::process::exit(mixres::cli::run(std::env::args_os()));
}
