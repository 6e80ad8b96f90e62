fn main() {
    std::process::exit(kasami_lab::cli::run(std::env::args_os()));
}
