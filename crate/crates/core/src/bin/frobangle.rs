fn main() {
    std::process::exit(frobangle::cli::main_with_args(std::env::args_os()));
}
