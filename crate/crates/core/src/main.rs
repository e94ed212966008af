fn main() {
    std::process::exit(rectified_lorentz::cli::run(std::env::args_os()));
}
