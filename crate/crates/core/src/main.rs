fn main() {
    std::process::exit(gkz_umbrella::cli::run(std::env::args_os()));
}
