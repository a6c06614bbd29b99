fn main() {
    std::process::exit(theta_lab::cli::main_from_env());
}
