fn main() {
    std::process::exit(cfpq::cli::main_entry(std::env::args_os()));
}
