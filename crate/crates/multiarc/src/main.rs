fn main() {
    std::process::exit(multiarc::cli::main_with(std::env::args_os()));
}
