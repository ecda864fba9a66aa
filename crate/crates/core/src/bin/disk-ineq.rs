fn main() {
    std::process::exit(disk_ineq::cli::main());
}
