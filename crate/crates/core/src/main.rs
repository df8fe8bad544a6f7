fn main() {
    std::process::exit(accel_cs::cli::main());
}
