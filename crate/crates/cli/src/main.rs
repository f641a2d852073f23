fn main() {
    std::process::exit(lvphase_cli::run(std::env::args_os()));
}
