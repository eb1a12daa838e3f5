fn main() {
    std::process::exit(kgrass::cli::main_with_args(std::env::args_os()));
}
