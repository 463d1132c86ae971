fn main() {
    std::process::exit(quietzone::cli::run(std::env::args_os()));
}
