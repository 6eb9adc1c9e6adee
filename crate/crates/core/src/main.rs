fn main() {
    std::process::exit(zn_schottky::cli::run(std::env::args_os()));
}
