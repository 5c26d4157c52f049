fn main() {
    std::process::exit(gqfi_cli::run(std::env::args_os()));
}
