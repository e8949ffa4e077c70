fn main() {
    std::process::exit(jfft_cli::run(std::env::args_os()));
}
