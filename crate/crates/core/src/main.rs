fn main() {
    std::process::exit(cartwreath::cli::run_cli(std::env::args_os()));
}
