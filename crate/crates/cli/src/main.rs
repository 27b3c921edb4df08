fn main() {
    std::process::exit(sparsepoly_cli::run(std::env::args_os()));
}
