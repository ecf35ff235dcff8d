fn main() {
    std::process::exit(geocvx::cli::run(std::env::args_os()));
}
