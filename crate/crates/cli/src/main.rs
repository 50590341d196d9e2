fn main() {
    std::process::exit(wilsonqs_cli::run(std::env::args_os()));
}
