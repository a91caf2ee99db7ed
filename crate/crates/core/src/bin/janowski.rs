fn main() {
    std::process::exit(janowski::cli::main_with_args(std::env::args_os()));
}
