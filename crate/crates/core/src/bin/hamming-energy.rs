fn main() {
    std::process::exit(hamming_energy::cli::run(std::env::args_os()));
}
