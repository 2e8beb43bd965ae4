fn main() {
    std::process::exit(occupancy::cli::run());
}
