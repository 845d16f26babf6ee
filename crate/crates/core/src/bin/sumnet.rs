fn main() {
    std::process::exit(sumnet::cli::main_entry());
}
