fn main() {
    std::process::exit(moilfp::cli::run(std::env::args_os()));
}
