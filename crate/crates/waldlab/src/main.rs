fn main() {
    std::process::exit(waldlab::cli_main());
}
