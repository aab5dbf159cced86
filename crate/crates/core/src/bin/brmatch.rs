fn main() {
    std::process::exit(brmatch::cli::main_with(std::env::args_os()));
}
