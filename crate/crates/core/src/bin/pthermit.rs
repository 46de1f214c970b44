fn main() {
    std::process::exit(pthermit::cli::run_from(std::env::args_os()));
}
