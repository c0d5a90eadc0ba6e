fn main() {
    std::process::exit(erastar_bench::cli::main(std::env::args_os()));
}
