fn main() {
    std::process::exit(jacmod::run_cli());
}
