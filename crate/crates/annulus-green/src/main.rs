fn main() {
    std::process::exit(annulus_green::cli::run(std::env::args_os()));
}
