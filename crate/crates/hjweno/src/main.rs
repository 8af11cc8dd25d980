fn main() {
    std::process::exit(hjweno::cli::run(std::env::args_os()));
}
