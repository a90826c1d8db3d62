fn main() {
    std::process::exit(ioaco_bench::cli::main_with_args(std::env::args_os()));
}
