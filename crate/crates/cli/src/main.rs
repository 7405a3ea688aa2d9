fn main() {
    std::process::exit(sfwm_cli::run(std::env::args().collect()));
}
