fn main() {
    std::process::exit(sp1_kepler::cli::run(std::env::args_os()));
}
