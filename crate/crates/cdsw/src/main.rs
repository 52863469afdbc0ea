fn main() {
    std::process::exit(cdsw::cli::cli_main(std::env::args()));
}
