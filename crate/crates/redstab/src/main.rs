fn main() {
    std::process::exit(redstab::run(std::env::args().collect()));
}
