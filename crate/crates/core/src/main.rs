fn main() {
    std::process::exit(tangle::cli::main_with_args(std::env::args_os()));
}
