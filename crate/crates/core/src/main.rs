fn main() {
    std::process::exit(typerun::cli::cli_main(std::env::args_os()));
}
