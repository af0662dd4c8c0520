fn main() {
    std::process::exit(sierpinski::cli::run(std::env::args_os()));
}
