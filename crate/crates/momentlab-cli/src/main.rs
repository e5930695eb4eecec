fn main() {
    let code = momentlab_cli::run(std::env::args_os());
    std::process::exit(code);
}
