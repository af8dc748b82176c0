fn main() {
    std::process::exit(dqw_cli::run());
}
