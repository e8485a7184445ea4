fn main() {
    std::process::exit(pdm_cli::run(std::env::args_os()).code());
}
